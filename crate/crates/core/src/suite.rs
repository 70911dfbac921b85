//! The acceptance battery: thirteen numbered criteria, each runnable alone.

use std::collections::BTreeSet;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Value};

use crate::bitset::BitSet;
use crate::gf::{prime_power, Rational};
use crate::harmonic::{closure, conjugate_abstract, conjugate_iterates, conjugate_sequence, ClosureOptions};
use crate::incidence::Incidence;
use crate::lifts::{
    build_lift, build_reid, check_representation, embed_lift, higher_reid_points, reid_submatroid_points, search_representation,
    ReidParams, Representation,
};
use crate::projplane::{harmonic_conjugate_coord, FinitePlane};
use crate::rationals::{bounded_sequence, denominators_linear, modular_shadow, verify_shifted_collinearity};
use crate::rectangle::{
    assemble_pr, census, coplanarity_exhaustive, coplanarity_sampled, enumerate_planes, internal_harmonic_report, plane_through,
    verify_axioms, verify_labeling, A6Mode, ProjectiveRectangle, TripleClass, DEFAULT_MAX_ORDER,
};
use crate::report::{Check, RunReport, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Full,
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            _ => Err(format!("unknown profile {s:?}")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub profile: Profile,
    pub seed: u64,
    /// Node cap for each representation search.
    pub budget: u64,
    /// Skip one conjugate in the closures behind the Reid-closure criterion.
    pub inject_fault: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            profile: Profile::Quick,
            seed: 0,
            budget: 200_000_000,
            inject_fault: false,
        }
    }
}

pub const CRITERIA: [(u8, &str); 13] = [
    (1, "closed-lift"),
    (2, "assembly-and-axioms"),
    (3, "census"),
    (4, "prime-planes"),
    (5, "sequence-order"),
    (6, "conjugate-oracles"),
    (7, "reid-closure"),
    (8, "representability"),
    (9, "planes"),
    (10, "internal-conjugation"),
    (11, "labeling"),
    (12, "rationals"),
    (13, "coplanarity"),
];

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub status: Status,
    pub witness: Option<String>,
    pub observations: Vec<Check>,
    pub data: Value,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let mut s = format!("criterion {:>2} {:<22} {}", self.id, self.name, self.status.label());
        if let Some(w) = &self.witness {
            s.push_str(&format!(": {w}"));
        }
        s
    }
}

/// Collects failed requirements.
struct Probe {
    failures: Vec<String>,
    observations: Vec<Check>,
    data: serde_json::Map<String, Value>,
}

impl Probe {
    fn new() -> Probe {
        Probe {
            failures: Vec::new(),
            observations: Vec::new(),
            data: Default::default(),
        }
    }

    fn require(&mut self, ok: bool, msg: impl FnOnce() -> String) -> bool {
        if !ok {
            self.failures.push(msg());
        }
        ok
    }

    fn within(&mut self, what: &str, start: Instant, bound: Duration) {
        let took = start.elapsed();
        self.require(took <= bound, || format!("{what} took {:.2} s, bound {} s", took.as_secs_f64(), bound.as_secs()));
    }

    fn set(&mut self, key: &str, v: impl Serialize) {
        self.data.insert(key.to_string(), serde_json::to_value(v).expect("serializable"));
    }

    fn observe(&mut self, name: &str, note: impl Into<String>) {
        self.observations.push(Check::observation(name, note));
    }
}

/// At most five failures, then a count of the rest.
fn summarize(failures: &[String]) -> String {
    let mut s = failures.iter().take(5).cloned().collect::<Vec<_>>().join("; ");
    if failures.len() > 5 {
        s.push_str(&format!("; and {} more", failures.len() - 5));
    }
    s
}

fn pr(p: u32, k: usize, probe: &mut Probe) -> Option<ProjectiveRectangle> {
    match assemble_pr(p, k, DEFAULT_MAX_ORDER, &ClosureOptions::default()) {
        Ok(pr) => Some(pr),
        Err(e) => {
            probe.require(false, || format!("PR({p},{k}): {e}"));
            None
        }
    }
}

pub fn run_criterion(id: u8, opts: &SuiteOptions) -> CriterionResult {
    let (_, name) = *CRITERIA.iter().find(|(i, _)| *i == id).expect("criterion id in 1..=13");
    let start = Instant::now();
    let mut probe = Probe::new();
    match id {
        1 => closed_lift(&mut probe),
        2 => assembly(&mut probe, opts),
        3 => census_criterion(&mut probe),
        4 => prime_planes(&mut probe),
        5 => sequence_order(&mut probe),
        6 => conjugate_oracles(&mut probe),
        7 => reid_closure(&mut probe, opts),
        8 => representability(&mut probe, opts),
        9 => planes(&mut probe),
        10 => internal(&mut probe, opts),
        11 => labeling(&mut probe),
        12 => rationals(&mut probe, opts),
        13 => coplanarity(&mut probe, opts),
        _ => unreachable!(),
    }
    CriterionResult {
        id,
        name,
        status: Status::from_pass(probe.failures.is_empty()),
        witness: (!probe.failures.is_empty()).then(|| summarize(&probe.failures)),
        observations: probe.observations,
        data: Value::Object(probe.data),
        elapsed: start.elapsed(),
    }
}

pub fn run_suite(opts: &SuiteOptions, timing: bool) -> RunReport {
    let params = json!({
        "profile": opts.profile,
        "seed": opts.seed,
        "budget": opts.budget,
        "inject_fault": opts.inject_fault,
    });
    let mut report = RunReport::new("suite", params, timing);
    let mut data = serde_json::Map::new();
    for (id, _) in CRITERIA {
        let r = run_criterion(id, opts);
        let mut check = Check::new(format!("criterion-{id}:{}", r.name), r.status, r.witness.clone());
        if timing {
            check.duration_ms = Some(r.elapsed.as_millis() as u64);
        }
        report.push(check);
        for o in &r.observations {
            let mut o = o.clone();
            o.name = format!("criterion-{id}/{}", o.name);
            report.push(o);
        }
        data.insert(format!("criterion-{id}"), r.data);
    }
    report.data = Value::Object(data);
    report
}

fn closed_lift(probe: &mut Probe) {
    let start = Instant::now();
    let (Ok(plane), Ok(lift)) = (FinitePlane::with_order(2, 2), build_lift(2, 2)) else {
        probe.require(false, || "cannot build PG(2,4) or L_2^2".into());
        return;
    };
    let images = embed_lift(&lift, &plane).expect("L_2^2 embeds in PG(2,4)");
    let result = closure(&plane, &images, &ClosureOptions::default()).expect("closure terminates");
    let input: BTreeSet<usize> = images.iter().copied().collect();
    let output: BTreeSet<usize> = result.points.iter().collect();
    probe.require(output == input, || format!("closure has {} points, input {}", output.len(), input.len()));
    probe.require(output.len() == 13, || format!("{} points", output.len()));
    probe.within("closure", start, Duration::from_secs(1));
    probe.set("points", output.len());
    probe.set("rounds", result.rounds);
}

fn assembly(probe: &mut Probe, opts: &SuiteOptions) {
    let start = Instant::now();
    let Some(pr) = pr(3, 2, probe) else { return };
    let s = pr.structure();
    let special_sizes: Vec<usize> = pr.special_lines().iter().map(|&l| s.line_points(l).len()).collect();
    let ordinary_ok = pr.ordinary_lines().iter().all(|&l| s.line_points(l).len() == 4);
    probe.require(pr.order() == (3, 9), || format!("order {:?}", pr.order()));
    probe.require(pr.point_count() == 37, || format!("{} points", pr.point_count()));
    probe.require(special_sizes == [10; 4], || format!("special line sizes {special_sizes:?}"));
    probe.require(pr.ordinary_lines().len() == 81 && ordinary_ok, || format!("{} ordinary lines", pr.ordinary_lines().len()));
    let axioms = verify_axioms(&pr.raw(), 10_000_000, opts.seed);
    probe.require(axioms.a6_mode == A6Mode::Exhaustive, || "A6 was sampled, not exhaustive".into());
    for c in &axioms.checks {
        probe.require(c.pass, || format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()));
    }
    probe.within("assembly and axioms", start, Duration::from_secs(10));
    probe.set("points", pr.point_count());
    probe.set("order", pr.order());
    probe.set("a6_quadruples", axioms.a6_quadruples);
}

fn census_criterion(probe: &mut Probe) {
    for (p, k) in [(2, 2), (3, 2)] {
        let Some(pr) = pr(p, k, probe) else { return };
        let c = census(&pr);
        for check in &c.checks {
            probe.require(check.pass, || format!("PR({p},{k}) {}: {}", check.name, check.witness.clone().unwrap_or_default()));
        }
        probe.set(&format!("PR({p},{k})"), json!({"m": c.m, "n": c.n, "points": c.point_count}));
    }
}

fn prime_planes(probe: &mut Probe) {
    for (p, expected) in [(3u32, 13usize), (5, 31)] {
        let Some(pr) = pr(p, 1, probe) else { return };
        let plane = pr.plane();
        let points: BTreeSet<usize> = pr.ambient().iter().copied().collect();
        probe.require(points.len() == expected && points.len() == plane.point_count(), || {
            format!("PR({p},1) has {} of {} points", points.len(), plane.point_count())
        });
        let pr_lines: BTreeSet<Vec<usize>> = pr
            .structure()
            .lines()
            .iter()
            .map(|l| {
                let mut v: Vec<usize> = l.iter().map(|&x| pr.ambient()[x]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        let plane_lines: BTreeSet<Vec<usize>> = (0..plane.line_count()).map(|l| plane.line_points(l).to_vec()).collect();
        probe.require(pr_lines == plane_lines, || format!("PR({p},1) lines differ from PG(2,{p})"));
    }
}

fn collinear_triples(plane: &FinitePlane) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for l in 0..plane.line_count() {
        let pts = plane.line_points(l);
        for &a in pts {
            for &b in pts {
                for &c in pts {
                    if a != b && a != c && b != c {
                        out.push([a, b, c]);
                    }
                }
            }
        }
    }
    out
}

fn sequence_order(probe: &mut Probe) {
    let start = Instant::now();
    let mut counts = serde_json::Map::new();
    for p in [2u32, 3, 5] {
        let plane = FinitePlane::with_order(p, 1).expect("prime plane");
        let pu = p as usize;
        let triples = collinear_triples(&plane);
        for &[base, a0, a1] in &triples {
            let seq = conjugate_sequence(&plane, &base, &a0, &a1, 4 * pu).expect("sequence");
            if !probe.require(seq.modular && seq.order == Some(pu), || {
                format!("PG(2,{p}) sequence ({base}; {a0}, {a1}) has order {}", seq.order.map_or("none".to_string(), |n| n.to_string()))
            }) {
                return;
            }
            let it = conjugate_iterates(&plane, &base, &a0, &a1, 3 * pu).expect("iterates");
            probe.require((0..2 * pu).all(|i| it[i + pu] == it[i]), || format!("PG(2,{p}) ({base}; {a0}, {a1}) is not {p}-periodic"));
        }
        counts.insert(p.to_string(), json!(triples.len()));
        if p == 5 {
            probe.require(triples.len() == 3720, || format!("{} sequences at p = 5", triples.len()));
        }
    }
    probe.within("sequences", start, Duration::from_secs(30));
    probe.set("sequences", counts);
}

fn conjugate_oracles(probe: &mut Probe) {
    let mut counts = serde_json::Map::new();
    for q in [2u64, 3, 4, 5] {
        let (p, k) = prime_power(q).expect("prime power");
        let plane = FinitePlane::with_order(p, k).expect("plane");
        let all = BitSet::full(plane.point_count());
        let triples = collinear_triples(&plane);
        let mut disagreements = 0u64;
        for &[d, e, f] in &triples {
            let coord = harmonic_conjugate_coord(plane.point(d), plane.point(f), plane.point(e))
                .ok()
                .and_then(|h| plane.index_of(&h));
            let search = conjugate_abstract(&plane, &all, d, f, e).ok();
            if coord.is_none() || coord != search {
                disagreements += 1;
                probe.require(false, || format!("PG(2,{q}) ({d}, {f}; {e}): coordinates {coord:?}, search {search:?}"));
            }
        }
        counts.insert(q.to_string(), json!({"triples": triples.len(), "disagreements": disagreements}));
    }
    probe.set("oracles", counts);
}

fn point_set(pr: &ProjectiveRectangle) -> BTreeSet<usize> {
    pr.ambient().iter().copied().collect()
}

fn reid_closure(probe: &mut Probe, opts: &SuiteOptions) {
    let copts = ClosureOptions {
        suppress_first_new: opts.inject_fault,
        ..Default::default()
    };
    for (p, k) in [(2u32, 2usize), (3, 1), (3, 2), (5, 1)] {
        let Some(pr) = pr(p, k, probe) else { return };
        let plane = pr.plane();
        let lift = pr.lift();
        let images = embed_lift(lift, plane).expect("embedding");
        let seed: Vec<usize> = higher_reid_points(lift).iter().map(|&x| images[x]).collect();
        let closed: BTreeSet<usize> = closure(plane, &seed, &copts).expect("closure").points.iter().collect();
        probe.require(closed == point_set(&pr), || {
            format!("higher Reid closure in PG(2,{}) has {} points, rectangle {}", plane.order(), closed.len(), pr.point_count())
        });
        probe.set(&format!("higher-reid({p},{k})"), json!({"seed": seed.len(), "closure": closed.len()}));
    }

    let Some(pr) = pr(3, 2, probe) else { return };
    let target = point_set(&pr);
    let plane = pr.plane();
    let lift = pr.lift();
    let group = *lift.group();
    let images = embed_lift(lift, plane).expect("embedding");
    let n = group.order();
    let (mut equal, mut subset, mut subplanes, mut total) = (0u64, 0u64, 0u64, 0u64);
    let mut sizes = BTreeSet::new();
    let mut union = BTreeSet::new();
    for alpha in 0..n {
        for delta in 1..n {
            for gamma in 0..n {
                let params = ReidParams { alpha, delta, gamma };
                let pts = reid_submatroid_points(lift, &params).expect("nonzero δ");
                let seed: Vec<usize> = pts.iter().map(|&x| images[x]).collect();
                union.extend(seed.iter().copied());
                let closed: BTreeSet<usize> = closure(plane, &seed, &copts).expect("closure").points.iter().collect();
                total += 1;
                sizes.insert(closed.len());
                equal += (closed == target) as u64;
                if closed.is_subset(&target) {
                    subset += 1;
                    subplanes += (closed.len() == 13 && is_subplane(plane, &closed, 3)) as u64;
                }
            }
        }
    }
    probe.require(equal == total, || {
        format!("{} of {total} Reid submatroid closures equal the 37-point rectangle; closure sizes {sizes:?}", equal)
    });
    let union: Vec<usize> = union.into_iter().collect();
    let union_closed: BTreeSet<usize> = closure(plane, &union, &copts).expect("closure").points.iter().collect();
    probe.observe(
        "submatroid-closures",
        format!("{subset} of {total} closures lie in the rectangle, {subplanes} are subplanes of order 3"),
    );
    probe.observe(
        "submatroid-family-union",
        format!("union of all submatroids closes to {} points (rectangle {})", union_closed.len(), target.len()),
    );
    probe.set(
        "reid-submatroids",
        json!({"choices": total, "equal_to_rectangle": equal, "closure_sizes": sizes, "subplanes": subplanes, "union_closure": union_closed.len()}),
    );
}

/// Whether `pts` with the traces of ambient lines is a projective plane of order `m`.
fn is_subplane(plane: &FinitePlane, pts: &BTreeSet<usize>, m: usize) -> bool {
    let set = BitSet::from_indices(plane.point_count(), pts.iter().copied());
    let traces: Vec<usize> = (0..plane.line_count())
        .map(|l| plane.line_set(l).intersection_count(&set))
        .filter(|&c| c >= 2)
        .collect();
    pts.len() == m * m + m + 1 && traces.len() == pts.len() && traces.iter().all(|&c| c == m + 1)
}

fn representability(probe: &mut Probe, opts: &SuiteOptions) {
    let bound = Duration::from_secs(60);
    let mut verdicts = serde_json::Map::new();
    for p in [2u32, 3, 5] {
        let s = build_reid(p).expect("Reid matroid");
        let plane = FinitePlane::with_order(p, 1).expect("plane");
        let start = Instant::now();
        let rep = search_representation(&s, &plane, opts.budget);
        probe.within(&format!("R_cycle[{p}] over GF({p})"), start, bound);
        match &rep {
            Representation::Found { images, .. } => {
                let ok = check_representation(&s, &plane, images);
                probe.require(ok.is_ok(), || format!("R_cycle[{p}] witness invalid: {}", ok.unwrap_err()));
            }
            other => {
                probe.require(false, || format!("R_cycle[{p}] over GF({p}): {}", other.verdict()));
            }
        }
        verdicts.insert(format!("reid{p}/q{p}"), json!(rep.verdict()));
    }
    let s = build_reid(4).expect("Reid matroid");
    for q in [2u64, 3, 4, 5, 7] {
        let (p, k) = prime_power(q).expect("prime power");
        let plane = FinitePlane::with_order(p, k).expect("plane");
        let start = Instant::now();
        let rep = search_representation(&s, &plane, opts.budget);
        probe.within(&format!("R_cycle[4] over GF({q})"), start, bound);
        probe.require(matches!(rep, Representation::None { .. }), || format!("R_cycle[4] over GF({q}): {}", rep.verdict()));
        verdicts.insert(format!("reid4/q{q}"), json!(rep.verdict()));
    }
    probe.set("verdicts", verdicts);
}

fn planes(probe: &mut Probe) {
    let Some(pr) = pr(3, 2, probe) else { return };
    let set = match enumerate_planes(&pr) {
        Ok(s) => s,
        Err(e) => {
            probe.require(false, || e.to_string());
            return;
        }
    };
    let s = pr.structure();
    let universe = pr.point_count();
    let sets: Vec<BitSet> = set.planes.iter().map(|p| p.point_set(universe)).collect();
    let ordinary = pr.ordinary_lines();
    let mut pairs = 0u64;
    for (i, &l1) in ordinary.iter().enumerate() {
        for &l2 in &ordinary[i + 1..] {
            if s.line_set(l1).intersection_count(s.line_set(l2)) != 1 {
                continue;
            }
            pairs += 1;
            let plane = match plane_through(&pr, l1, l2) {
                Ok(p) => p,
                Err(e) => {
                    probe.require(false, || e.to_string());
                    return;
                }
            };
            let pts = plane.point_set(universe);
            let holders = set.planes.iter().filter(|p| p.ordinary.contains(&l1) && p.ordinary.contains(&l2)).count();
            probe.require(holders == 1 && sets.contains(&pts), || format!("lines {l1}, {l2} lie in {holders} planes"));
            probe.require(plane.points.len() == 13 && pts.contains(pr.d()), || format!("plane of {l1}, {l2} has {} points", plane.points.len()));
            let full = ordinary.iter().all(|&l| matches!(s.line_set(l).intersection_count(&pts), 0 | 1 | 4));
            probe.require(full, || format!("plane of {l1}, {l2} is not full"));
        }
    }
    let counts = set.counts();
    let min = ordinary.iter().map(|&l| counts[l]).min().unwrap_or(0);
    probe.require(min >= 3, || format!("an ordinary line lies in only {min} planes"));
    probe.require(sets.iter().all(|p| p.contains(pr.d())), || "a plane misses D".into());
    let report = internal_harmonic_report(&pr, &set);
    probe.require(report.plane_violations == 0, || report.plane_witness.clone().unwrap_or_default());
    probe.set("planes", set.planes.len());
    probe.set("intersecting_pairs", pairs);
    probe.set("min_planes_per_line", min);
}

fn internal(probe: &mut Probe, opts: &SuiteOptions) {
    let mut cases = vec![(3u32, 2usize)];
    if opts.profile == Profile::Full {
        cases.push((5, 1));
    }
    for (p, k) in cases {
        let Some(pr) = pr(p, k, probe) else { return };
        let planes = match enumerate_planes(&pr) {
            Ok(s) => s,
            Err(e) => {
                probe.require(false, || e.to_string());
                return;
            }
        };
        let report = internal_harmonic_report(&pr, &planes);
        for class in [TripleClass::Ordinary, TripleClass::ThroughD] {
            let c = report.class(class);
            probe.require(c.unique == c.triples && c.matches_coordinates == c.triples, || {
                format!("PR({p},{k}) {class:?}: {}", c.witness.clone().unwrap_or_default())
            });
        }
        let sp = report.class(TripleClass::SpecialWithoutD);
        probe.observe(
            &format!("special-without-d({p},{k})"),
            format!(
                "{} triples: {} unique conjugate, {} without configuration, {} inconsistent",
                sp.triples, sp.unique, sp.no_configuration, sp.inconsistent
            ),
        );
        probe.set(&format!("PR({p},{k})"), &report.classes);
    }
}

fn labeling(probe: &mut Probe) {
    let Some(pr) = pr(3, 2, probe) else { return };
    let report = verify_labeling(&pr);
    for c in &report.checks {
        if c.observation {
            let note = match &c.witness {
                Some(w) => format!("{} cases, first mismatch {w}", c.cases),
                None => format!("{} cases, no mismatch", c.cases),
            };
            probe.observe(&c.name, note);
        } else {
            probe.require(c.pass && c.cases > 0, || format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()));
        }
    }
    probe.set("checks", report.checks.iter().map(|c| json!({"name": c.name, "cases": c.cases})).collect::<Vec<_>>());
}

fn rationals(probe: &mut Probe, opts: &SuiteOptions) {
    let start = Instant::now();
    let zero = Rational::zero();
    let seq = bounded_sequence(&zero, &zero, 65).expect("sequence");
    for t in 2..=64usize {
        let expected = Rational::new(-1, t as i64 - 1).expect("nonzero");
        probe.require(seq.tau[t].as_ref() == Some(&expected), || {
            format!("τ_{t} = {:?}", seq.tau[t].as_ref().map(Rational::text))
        });
    }
    probe.require(seq.all_distinct, || "repeated term within depth 64".into());
    let eps: Vec<Rational> = ["1", "2", "-2/3", "7/5"].iter().map(|s| s.parse().expect("rational")).collect();
    let depth = if opts.profile == Profile::Full { 64 } else { 32 };
    let lemma = verify_shifted_collinearity(&zero, &zero, depth, &eps).expect("valid ε");
    if let Some(c) = lemma.cases.iter().find(|c| !c.collinear) {
        probe.require(false, || format!("ε = {}, t = {}: not collinear", c.epsilon, c.t));
    }
    probe.within("rational checks", start, Duration::from_secs(5));
    probe.observe(
        "denominator-growth",
        if denominators_linear(&seq) {
            "denominator of τ_t is t - 1 through t = 64"
        } else {
            "denominators are not t - 1"
        },
    );
    let shadow: Vec<String> = [2u32, 3, 5, 7]
        .iter()
        .map(|&p| match modular_shadow(p).ok().flatten() {
            Some(n) => format!("p = {p}: order {n}"),
            None => format!("p = {p}: not periodic"),
        })
        .collect();
    probe.observe("reduction-mod-p", shadow.join(", "));
    probe.set("tau", seq.tau.iter().map(|t| t.as_ref().map_or("inf".to_string(), Rational::text)).collect::<Vec<_>>());
    probe.set("collinearity_cases", lemma.cases.len());
}

fn coplanarity(probe: &mut Probe, opts: &SuiteOptions) {
    let Some(small) = pr(2, 2, probe) else { return };
    let planes = enumerate_planes(&small).expect("planes of PR(2,2)");
    let ex = coplanarity_exhaustive(&small, &planes);
    probe.require(ex.counterexample.is_none(), || format!("PR(2,2): {}", ex.counterexample.clone().unwrap_or_default()));
    let Some(big) = pr(3, 2, probe) else { return };
    let planes = enumerate_planes(&big).expect("planes of PR(3,2)");
    let sampled = coplanarity_sampled(&big, &planes, 100_000, opts.seed);
    probe.require(sampled.counterexample.is_none(), || format!("PR(3,2): {}", sampled.counterexample.clone().unwrap_or_default()));
    probe.set("exhaustive", &ex);
    probe.set("sampled", &sampled);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criterion_lines_are_named() {
        let r = run_criterion(1, &SuiteOptions::default());
        assert_eq!(r.status, Status::Pass);
        assert!(r.line().contains("closed-lift"));
    }

    #[test]
    fn fault_injection_breaks_reid_closure() {
        let opts = SuiteOptions {
            inject_fault: true,
            ..Default::default()
        };
        let r = run_criterion(7, &opts);
        assert_eq!(r.status, Status::Fail);
        assert!(r.witness.unwrap().contains("higher Reid closure"));
    }

    #[test]
    fn profile_parses() {
        assert_eq!("full".parse::<Profile>(), Ok(Profile::Full));
        assert!("slow".parse::<Profile>().is_err());
    }
}
