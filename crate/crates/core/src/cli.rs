//! Command-line front end. Every verb produces a [`RunReport`]; JSON goes to
//! stdout and a one-line summary to stderr.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bitset::BitSet;
use crate::gf::{is_prime, prime_power, Field, Rational};
use crate::harmonic::{
    closure, closure_by_search, conjugate_sequence, find_configurations, verify_tecnico, ClosureOptions, WitnessScope,
};
use crate::incidence::{Incidence, IncidenceStructure};
use crate::lifts::{
    build_higher_reid, build_lift, build_reid, check_representation, embed_lift, higher_reid_points, search_representation,
    Representation,
};
use crate::projplane::FinitePlane;
use crate::rationals::{bounded_sequence, denominators_linear, enumerate, verify_shifted_collinearity};
use crate::rectangle::{
    assemble_pr, census, closed_form_points, coplanarity_exhaustive, coplanarity_sampled, enumerate_planes,
    internal_harmonic_report, verify_axioms, verify_labeling, ProjectiveRectangle, TripleClass, DEFAULT_MAX_ORDER,
};
use crate::report::{Check, RunReport, Status};
use crate::suite::{run_suite, Profile, SuiteOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "projrect", version, about = "Projective rectangles generated by harmonic conjugation")]
pub struct Cli {
    /// Prime (or group modulus for `lift`).
    #[arg(short = 'p', global = true, default_value_t = 3)]
    pub p: u32,
    /// Dimension of the group / degree of the field extension.
    #[arg(short = 'k', global = true, default_value_t = 2)]
    pub k: usize,
    /// Order of the host plane, a prime power.
    #[arg(long, global = true)]
    pub q: Option<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Node cap for searches, quadruple cap for A6, triple cap for coplanarity.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long = "witness-scope", global = true, default_value = "ambient")]
    pub witness_scope: WitnessScope,
    /// Record wall times in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Field GF(p^k): modulus, generator, elements.
    FieldInfo,
    /// The lift matroid L_m^k with m = p.
    Lift,
    /// The (higher) Reid cycle matroid.
    Reid {
        /// Test which single-point deletions still close to the rectangle.
        #[arg(long)]
        explore_minimal: bool,
    },
    /// Embed L_p^k in PG(2, p^k) and check the representation.
    Embed,
    /// Search for a representation in PG(2, q).
    Represent {
        /// Use the Reid cycle matroid of this modulus.
        #[arg(long)]
        reid: Option<u32>,
        /// Use L_p^k instead.
        #[arg(long, conflicts_with = "reid")]
        lift: bool,
    },
    /// Harmonic closure of the embedded L_p^k.
    Closure,
    /// The conjugate sequence a_0; b_0, c_0, … in PG(2, p^k).
    Sequence,
    /// Companion conjugacies of every configuration on a base line.
    Tecnico,
    /// Assemble the projective rectangle.
    Assemble {
        /// Write the incidence graph in Graphviz format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check the six axioms.
    Verify,
    /// Counting properties.
    Census,
    /// Planes and the coplanarity rule.
    Planes,
    /// The (t, λ) labeling.
    Labels,
    /// Conjugation with witnesses inside the rectangle.
    InternalHarmonic,
    /// Conjugate sequences over the rationals.
    Rationals {
        #[arg(long, default_value_t = 64)]
        depth: usize,
        /// Comma-separated list, e.g. 1,2,-2/3,7/5.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        epsilon: Vec<String>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        g: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        h: String,
    },
    /// Run the acceptance battery.
    Suite {
        #[arg(long, default_value = "quick")]
        profile: Profile,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

/// Parameter problems exit with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, UsageError>;

/// Parse `args`, run, print, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            eprintln!("{}", report.summary());
            report.exit_code()
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn params(cli: &Cli) -> serde_json::Value {
    json!({
        "p": cli.p,
        "k": cli.k,
        "q": cli.q,
        "seed": cli.seed,
        "budget": cli.budget,
        "witness_scope": cli.witness_scope,
    })
}

fn field_order(cli: &Cli) -> Result<(u32, usize)> {
    match cli.q {
        Some(q) => prime_power(q).ok_or_else(|| UsageError(format!("{q} is not a prime power"))),
        None => {
            if !is_prime(cli.p) {
                return Err(UsageError(format!("{} is not prime", cli.p)));
            }
            Ok((cli.p, cli.k))
        }
    }
}

fn rectangle(cli: &Cli) -> Result<ProjectiveRectangle> {
    Ok(assemble_pr(cli.p, cli.k, DEFAULT_MAX_ORDER, &ClosureOptions::default())?)
}

pub fn execute(cli: &Cli) -> Result<RunReport> {
    let name = command_name(&cli.command);
    let mut r = RunReport::new(name, params(cli), cli.timing);
    match &cli.command {
        Command::FieldInfo => field_info(cli, &mut r)?,
        Command::Lift => lift(cli, &mut r)?,
        Command::Reid { explore_minimal } => reid(cli, *explore_minimal, &mut r)?,
        Command::Embed => embed(cli, &mut r)?,
        Command::Represent { reid, lift } => represent(cli, *reid, *lift, &mut r)?,
        Command::Closure => closure_cmd(cli, &mut r)?,
        Command::Sequence => sequence(cli, &mut r)?,
        Command::Tecnico => tecnico(cli, &mut r)?,
        Command::Assemble { dot } => assemble(cli, dot.as_ref(), &mut r)?,
        Command::Verify => verify(cli, &mut r)?,
        Command::Census => census_cmd(cli, &mut r)?,
        Command::Planes => planes(cli, &mut r)?,
        Command::Labels => labels(cli, &mut r)?,
        Command::InternalHarmonic => internal(cli, &mut r)?,
        Command::Rationals { depth, epsilon, g, h } => rationals(*depth, epsilon, g, h, &mut r)?,
        Command::Suite { profile, inject_fault } => {
            let opts = SuiteOptions {
                profile: *profile,
                seed: cli.seed,
                budget: cli.budget.unwrap_or(SuiteOptions::default().budget),
                inject_fault: *inject_fault,
            };
            r = run_suite(&opts, cli.timing);
        }
    }
    Ok(r)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::FieldInfo => "field-info",
        Command::Lift => "lift",
        Command::Reid { .. } => "reid",
        Command::Embed => "embed",
        Command::Represent { .. } => "represent",
        Command::Closure => "closure",
        Command::Sequence => "sequence",
        Command::Tecnico => "tecnico",
        Command::Assemble { .. } => "assemble",
        Command::Verify => "verify",
        Command::Census => "census",
        Command::Planes => "planes",
        Command::Labels => "labels",
        Command::InternalHarmonic => "internal-harmonic",
        Command::Rationals { .. } => "rationals",
        Command::Suite { .. } => "suite",
    }
}

fn field_info(cli: &Cli, r: &mut RunReport) -> Result<()> {
    let (p, k) = field_order(cli)?;
    let f = Field::new(p, k)?;
    let g = f.generator();
    let q = f.cardinality();
    let mut x = g.clone();
    let mut order = 1u64;
    while x != f.one() {
        x = &x * &g;
        order += 1;
    }
    // Frobenius orbit of the generator has length k exactly when it generates GF(p^k).
    let mut y = g.clone();
    let mut degree = 0usize;
    loop {
        y = (0..p).skip(1).fold(y.clone(), |acc, _| &acc * &y);
        degree += 1;
        if y == g {
            break;
        }
    }
    r.push(Check::pass_if("generator-degree", degree == k, (degree != k).then(|| format!("degree {degree}"))));
    r.set("generator_order", order);
    r.set("q", q);
    r.set("irreducible", f.irreducible());
    r.set("generator", g.text());
    r.set("elements", f.elements().iter().map(|e| e.text()).collect::<Vec<_>>());
    Ok(())
}

fn structure_counts(r: &mut RunReport, s: &IncidenceStructure, points: usize, lines: usize) {
    let ok = s.point_count() == points && s.line_count() == lines;
    r.push(Check::pass_if(
        "counts",
        ok,
        (!ok).then(|| format!("{} points, {} lines", s.point_count(), s.line_count())),
    ));
    r.set("structure", s.to_json());
}

fn lift(cli: &Cli, r: &mut RunReport) -> Result<()> {
    let lift = build_lift(cli.p, cli.k)?;
    let n = lift.group().order();
    structure_counts(r, lift.structure(), 3 * n + 1, n * n + 3);
    Ok(())
}

fn reid(cli: &Cli, explore: bool, r: &mut RunReport) -> Result<()> {
    let s = if cli.k == 1 { build_reid(cli.p)? } else { build_higher_reid(cli.p, cli.k)? };
    let n = (cli.p as usize).pow(cli.k as u32);
    let c_points = if cli.k == 1 { 2 } else { cli.k + 1 };
    let lines = if cli.k == 1 { 2 * n + 3 } else { n * c_points + 3 };
    structure_counts(r, &s, 2 * n + c_points + 1, lines);
    if explore {
        let pr = rectangle(cli)?;
        let images = embed_lift(pr.lift(), pr.plane())?;
        let seed = higher_reid_points(pr.lift());
        let target: BitSet = BitSet::from_indices(pr.plane().point_count(), pr.ambient().iter().copied());
        let mut deletable = Vec::new();
        for &x in &seed {
            let rest: Vec<usize> = seed.iter().filter(|&&y| y != x).map(|&y| images[y]).collect();
            let closed = closure(pr.plane(), &rest, &ClosureOptions::default())?;
            if closed.points == target {
                deletable.push(pr.lift().structure().label(x).to_string());
            }
        }
        r.push(Check::observation(
            "single-deletions",
            format!("{} of {} points can be removed with the closure unchanged", deletable.len(), seed.len()),
        ));
        r.set("deletable", deletable);
    }
    Ok(())
}

fn coords_map(s: &IncidenceStructure, plane: &FinitePlane, images: &[usize]) -> serde_json::Map<String, serde_json::Value> {
    images
        .iter()
        .enumerate()
        .map(|(i, &x)| (s.label(i).to_string(), json!(plane.point(x).text())))
        .collect()
}

fn embed(cli: &Cli, r: &mut RunReport) -> Result<()> {
    let (p, k) = field_order(cli)?;
    let lift = build_lift(p, k)?;
    let plane = FinitePlane::with_order(p, k)?;
    let images = embed_lift(&lift, &plane)?;
    let ok = check_representation(lift.structure(), &plane, &images);
    r.push(Check::pass_if("representation", ok.is_ok(), ok.err()));
    r.set("images", coords_map(lift.structure(), &plane, &images));
    Ok(())
}

fn represent(cli: &Cli, reid: Option<u32>, use_lift: bool, r: &mut RunReport) -> Result<()> {
    let s = if use_lift { build_lift(cli.p, cli.k)?.structure().clone() } else { build_reid(reid.unwrap_or(cli.p))? };
    let q = cli.q.unwrap_or((cli.p as u64).pow(cli.k as u32));
    let (p, k) = prime_power(q).ok_or_else(|| UsageError(format!("{q} is not a prime power")))?;
    let plane = FinitePlane::with_order(p, k)?;
    let rep = search_representation(&s, &plane, cli.budget.unwrap_or(100_000_000));
    match &rep {
        Representation::Found { images, .. } => {
            let ok = check_representation(&s, &plane, images);
            r.push(Check::pass_if("search", ok.is_ok(), ok.err()));
            r.set("images", coords_map(&s, &plane, images));
        }
        Representation::None { .. } => r.push(Check::pass_if("search", true, None)),
        Representation::Timeout { nodes } => r.push(Check::new("search", Status::Timeout, Some(format!("{nodes} nodes")))),
    }
    r.set("verdict", rep.verdict());
    r.set("result", &rep);
    Ok(())
}

fn closure_cmd(cli: &Cli, r: &mut RunReport) -> Result<()> {
    let (p, k) = field_order(cli)?;
    let plane = FinitePlane::with_order(p, k)?;
    let lift = build_lift(p, k)?;
    let images = embed_lift(&lift, &plane)?;
    let coord = closure(&plane, &images, &ClosureOptions::default())?;
    let all = BitSet::full(plane.point_count());
    let search = closure_by_search(&plane, &all, &images, cli.witness_scope, None)?;
    let closed: Vec<usize> = coord.to_vec();
    let expected: Vec<usize> = closed_form_points(&plane).into_iter().collect();
    r.push(Check::pass_if(
        "closed-form",
        closed == expected,
        (closed != expected).then(|| format!("{} points, expected {}", closed.len(), expected.len())),
    ));
    match cli.witness_scope {
        WitnessScope::Ambient => r.push(Check::pass_if(
            "search-agrees",
            search.points == coord.points,
            (search.points != coord.points).then(|| format!("search found {} points", search.points.count())),
        )),
        WitnessScope::Internal => r.push(Check::observation(
            "internal-witnesses",
            format!("{} points with internal witnesses, {} with ambient", search.points.count(), coord.points.count()),
        )),
    }
    r.set("points", closed.len());
    r.set("rounds", coord.rounds);
    r.set("added_per_round", &coord.added_per_round);
    r.set("search_added_per_round", &search.added_per_round);
    r.set("coordinates", closed.iter().map(|&x| plane.point(x).text()).collect::<Vec<_>>());
    Ok(())
}

fn sequence(cli: &Cli, r: &mut RunReport) -> Result<()> {
    let (p, k) = field_order(cli)?;
    let plane = FinitePlane::with_order(p, k)?;
    let lift = build_lift(p, k)?;
    let images = embed_lift(&lift, &plane)?;
    let seq = conjugate_sequence(&plane, &images[lift.a(0)], &images[lift.b(0)], &images[lift.c(0)], 4 * p as usize + 4)?;
    let ok = seq.modular && seq.order == Some(p as usize);
    r.push(Check::pass_if("order-p", ok, (!ok).then(|| format!("order {}", seq.order.map_or("none".to_string(), |n| n.to_string())))));
    r.set("modular", seq.modular);
    r.set("order", seq.order);
    r.set("terms", seq.terms.iter().map(|&x| plane.point(x).text()).collect::<Vec<_>>());
    Ok(())
}

fn tecnico(cli: &Cli, r: &mut RunReport) -> Result<()> {
    let (p, k) = field_order(cli)?;
    let plane = FinitePlane::with_order(p, k)?;
    let lift = build_lift(p, k)?;
    let images = embed_lift(&lift, &plane)?;
    let (d, e, f) = (images[lift.a(0)], images[lift.b(0)], images[lift.c(0)]);
    let all = BitSet::full(plane.point_count());
    let limit = cli.budget.unwrap_or(u64::MAX) as usize;
    let configs = find_configurations(&plane, &all, d, e, f)?;
    let mut parts = [0usize; 3];
    let mut witness = None;
    let checked = configs.len().min(limit);
    for c in configs.iter().take(limit) {
        let rep = verify_tecnico(&plane, c)?;
        for (i, ok) in [rep.part_i, rep.part_ii, rep.part_iii].into_iter().enumerate() {
            if ok {
                parts[i] += 1;
            } else if witness.is_none() {
                witness = Some(format!("configuration {:?} fails part {}", c.points(), i + 1));
            }
        }
    }
    for (i, name) in ["part-i", "part-ii", "part-iii"].iter().enumerate() {
        r.push(Check::pass_if(*name, parts[i] == checked, (parts[i] != checked).then(|| witness.clone().unwrap_or_default())));
    }
    r.set("configurations", checked);
    Ok(())
}

fn assemble(cli: &Cli, dot: Option<&PathBuf>, r: &mut RunReport) -> Result<()> {
    let pr = rectangle(cli)?;
    let s = pr.structure();
    r.push(Check::pass_if("invariants", true, None));
    r.set("points", pr.point_count());
    r.set("order", pr.order());
    r.set("special_lines", pr.special_lines().len());
    r.set("ordinary_lines", pr.ordinary_lines().len());
    r.set("closure_rounds", pr.closure_stats().rounds);
    r.set("added_per_round", &pr.closure_stats().added_per_round);
    r.set(
        "coordinates",
        (0..pr.point_count())
            .map(|x| (s.label(x).to_string(), json!(pr.plane().point(pr.ambient()[x]).text())))
            .collect::<serde_json::Map<_, _>>(),
    );
    r.set("structure", s.to_json());
    if let Some(path) = dot {
        std::fs::write(path, pr.to_dot())?;
        r.set("dot", path.display().to_string());
    }
    Ok(())
}

fn verify(cli: &Cli, r: &mut RunReport) -> Result<()> {
    let pr = rectangle(cli)?;
    let report = verify_axioms(&pr.raw(), cli.budget.unwrap_or(10_000_000), cli.seed);
    for c in &report.checks {
        r.push(Check::pass_if(c.name.clone(), c.pass, c.witness.clone()));
    }
    r.set("a6_mode", report.a6_mode);
    r.set("a6_quadruples", report.a6_quadruples);
    r.set("seed", report.a6_seed);
    Ok(())
}

fn census_cmd(cli: &Cli, r: &mut RunReport) -> Result<()> {
    let pr = rectangle(cli)?;
    let c = census(&pr);
    for check in &c.checks {
        r.push(Check::pass_if(check.name.clone(), check.pass, check.witness.clone()));
    }
    r.set("m", c.m);
    r.set("n", c.n);
    r.set("points", c.point_count);
    r.set("special_lines", c.special_lines);
    r.set("ordinary_lines", c.ordinary_lines);
    Ok(())
}

fn planes(cli: &Cli, r: &mut RunReport) -> Result<()> {
    let pr = rectangle(cli)?;
    let set = enumerate_planes(&pr)?;
    let d = pr.d();
    r.push(Check::pass_if("contain-d", set.planes.iter().all(|p| p.points.contains(&d)), None));
    let counts = set.counts();
    let per: Vec<usize> = pr.ordinary_lines().iter().map(|&l| counts[l]).collect();
    let min = per.iter().copied().min().unwrap_or(0);
    r.push(Check::pass_if("three-planes-per-line", min >= 3, (min < 3).then(|| format!("minimum {min}"))));
    let lines = pr.structure().line_count() as u64;
    let triples = lines * (lines - 1) * (lines - 2) / 6;
    let summary = if triples <= cli.budget.unwrap_or(1_000_000) {
        coplanarity_exhaustive(&pr, &set)
    } else {
        coplanarity_sampled(&pr, &set, 100_000, cli.seed)
    };
    r.push(Check::pass_if("coplanar-or-concurrent", summary.counterexample.is_none(), summary.counterexample.clone()));
    r.set("planes", set.planes.len());
    r.set("plane_size", set.planes.first().map(|p| p.points.len()));
    r.set("planes_per_line", json!({"min": min, "max": per.iter().max()}));
    r.set("coplanarity", &summary);
    Ok(())
}

fn labels(cli: &Cli, r: &mut RunReport) -> Result<()> {
    let pr = rectangle(cli)?;
    let report = verify_labeling(&pr);
    for c in &report.checks {
        let status = if c.observation { Status::Observation } else { Status::from_pass(c.pass) };
        let witness = match (&c.witness, c.observation) {
            (Some(w), _) => Some(w.clone()),
            (None, true) => Some("no mismatch".to_string()),
            (None, false) => None,
        };
        r.push(Check::new(c.name.clone(), status, witness));
    }
    r.set("cases", report.checks.iter().map(|c| (c.name.clone(), json!(c.cases))).collect::<serde_json::Map<_, _>>());
    Ok(())
}

fn internal(cli: &Cli, r: &mut RunReport) -> Result<()> {
    let pr = rectangle(cli)?;
    let set = enumerate_planes(&pr)?;
    let report = internal_harmonic_report(&pr, &set);
    for (class, name) in [(TripleClass::Ordinary, "ordinary-triples"), (TripleClass::ThroughD, "d-triples")] {
        let c = report.class(class);
        let ok = c.unique == c.triples && c.matches_coordinates == c.triples;
        r.push(Check::pass_if(name, ok, c.witness.clone()));
    }
    r.push(Check::pass_if("configurations-in-one-plane", report.plane_violations == 0, report.plane_witness.clone()));
    let sp = report.class(TripleClass::SpecialWithoutD);
    r.push(Check::observation(
        "special-without-d",
        format!("{} of {} triples have a unique conjugate, {} have no configuration", sp.unique, sp.triples, sp.no_configuration),
    ));
    r.set("classes", &report.classes);
    Ok(())
}

fn rationals(depth: usize, epsilon: &[String], g: &str, h: &str, r: &mut RunReport) -> Result<()> {
    let g: Rational = g.parse()?;
    let h: Rational = h.parse()?;
    let eps: Vec<Rational> = if epsilon.is_empty() {
        ["1", "2", "-2/3", "7/5"].iter().map(|s| s.parse().expect("rational")).collect()
    } else {
        epsilon.iter().map(|s| s.parse()).collect::<std::result::Result<_, _>>()?
    };
    let seq = bounded_sequence(&g, &h, depth + 1)?;
    let bad_tau = (2..=depth).find(|&t| seq.tau[t] != Some(Rational::new(-1, t as i64 - 1).expect("nonzero")));
    r.push(Check::pass_if("tau-formula", bad_tau.is_none(), bad_tau.map(|t| format!("t = {t}"))));
    r.push(Check::pass_if("distinct", seq.all_distinct, None));
    let lemma = verify_shifted_collinearity(&g, &h, depth.saturating_sub(1), &eps)?;
    let bad = lemma.cases.iter().find(|c| !c.collinear);
    r.push(Check::pass_if("collinearity", bad.is_none(), bad.map(|c| format!("ε = {}, t = {}", c.epsilon, c.t))));
    r.push(Check::observation(
        "denominator-growth",
        if denominators_linear(&seq) { "linear: τ_t has denominator t - 1" } else { "not t - 1" },
    ));
    r.set("tau", seq.tau.iter().map(|t| t.as_ref().map_or("inf".to_string(), Rational::text)).collect::<Vec<_>>());
    r.set("terms", &seq.terms);
    r.set("collinearity_cases", lemma.cases.len());
    r.set("enumeration_prefix", enumerate(16));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(args: &[&str]) -> RunReport {
        let mut argv = vec!["projrect"];
        argv.extend_from_slice(args);
        let cli = Cli::try_parse_from(argv).unwrap();
        execute(&cli).map_err(|e| e.0).unwrap()
    }

    #[test]
    fn field_info_gf9() {
        let r = report(&["field-info", "-p", "3", "-k", "2"]);
        assert_eq!(r.exit_code(), 0);
        assert_eq!(r.data["q"], 9);
        assert_eq!(r.data["elements"].as_array().unwrap().len(), 9);
    }

    #[test]
    fn reid_counts() {
        for (p, k) in [("3", "1"), ("3", "2"), ("2", "2")] {
            let r = report(&["reid", "-p", p, "-k", k]);
            assert_eq!(r.exit_code(), 0, "{}", r.to_json());
        }
    }

    #[test]
    fn rationals_with_negative_epsilon() {
        let r = report(&["rationals", "--depth", "12", "--epsilon=1,-2/3"]);
        assert_eq!(r.exit_code(), 0, "{}", r.to_json());
        assert_eq!(r.data["tau"][2], "-1/1");
    }

    #[test]
    fn sequence_and_tecnico_in_small_planes() {
        for p in ["2", "3", "5"] {
            assert_eq!(report(&["sequence", "-p", p, "-k", "1"]).exit_code(), 0);
            assert_eq!(report(&["tecnico", "-p", p, "-k", "1"]).exit_code(), 0);
        }
    }

    #[test]
    fn closure_scopes() {
        assert_eq!(report(&["closure", "-p", "3", "-k", "1"]).exit_code(), 0);
        let r = report(&["closure", "-p", "3", "-k", "1", "--witness-scope", "internal"]);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn invalid_parameters() {
        let cli = Cli::try_parse_from(["projrect", "assemble", "-p", "4", "-k", "1"]).unwrap();
        assert!(execute(&cli).is_err());
        let cli = Cli::try_parse_from(["projrect", "represent", "--q", "6"]).unwrap();
        assert!(execute(&cli).is_err());
    }
}
