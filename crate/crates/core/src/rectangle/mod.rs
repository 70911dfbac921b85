//! Projective rectangles generated by harmonic closure of an embedded
//! `L_p^k` inside PG(2, p^k): assembly, axiom and counting checks, planes,
//! the `(t, λ)` labeling, and conjugation restricted to the rectangle.

mod axioms;
mod internal;
mod labels;
mod planes;

pub use axioms::{census, verify_axioms, A6Mode, AxiomCheck, AxiomReport, CensusReport, RawRectangle};
pub use internal::{internal_harmonic_report, InternalReport, TripleClass};
pub use labels::{verify_labeling, LabelCheck, LabelingReport};
pub use planes::{
    check_coplanarity_rule, coplanarity_exhaustive, coplanarity_sampled, enumerate_planes, plane_through, CoplanaritySummary,
    CoplanarityVerdict, PlaneError, PlaneSet, PlaneSubstructure,
};

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::bitset::BitSet;
use crate::gf::is_prime;
use crate::harmonic::{closure, conjugate_iterates, ClosureOptions, ClosureResult, HarmonicError};
use crate::incidence::{Incidence, IncidenceError, IncidenceStructure};
use crate::lifts::{build_lift, embed_lift, Lift, LiftError, Tag};
use crate::projplane::{FinitePlane, PlaneError as GeometryError};

/// Default bound on `p^k` for assembly.
pub const DEFAULT_MAX_ORDER: u64 = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RectangleError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("p^k = {q} exceeds the configured bound {bound}")]
    TooLarge { q: u64, bound: u64 },
    #[error("construction invariant failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
}

/// Index of a special line: `R_∞` or `R_t` for `t` in `Z_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SpecialIndex {
    Infinity,
    Finite(u32),
}

impl SpecialIndex {
    pub fn text(&self) -> String {
        match self {
            SpecialIndex::Infinity => "inf".to_string(),
            SpecialIndex::Finite(t) => t.to_string(),
        }
    }
}

/// Position of a point in the labeling: `D`, or `(t, λ)` on special line `R_t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PointLabel {
    D,
    On { line: SpecialIndex, value: usize },
}

/// The assembled rectangle. Points are ordered `R_∞, R_0, R_1, …, R_{p-1}`
/// (each by label) followed by `D`, so `a_g`, `b_g`, `c_g` keep their
/// indices from `L_p^k`.
pub struct ProjectiveRectangle {
    p: u32,
    k: usize,
    plane: FinitePlane,
    lift: Lift,
    structure: IncidenceStructure,
    ambient: Vec<usize>,
    labels: Vec<PointLabel>,
    special: Vec<usize>,
    ordinary: Vec<usize>,
    ordinary_gh: Vec<(usize, usize)>,
    /// `terms[g][h][t]`: the `t`-th term of the conjugate sequence based at
    /// `a_g` starting `b_{g+h}, c_h`, for `t` in `0..=p`.
    terms: Vec<Vec<Vec<usize>>>,
    closure_stats: ClosureResult,
}

impl std::fmt::Debug for ProjectiveRectangle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PR({}, {}) of order {:?}", self.p, self.k, self.order())
    }
}

/// `{D} ∪ {[x:y:z] : y = 0 or x/y in the prime field}`, computed from
/// coordinates alone.
pub fn closed_form_points(plane: &FinitePlane) -> BTreeSet<usize> {
    plane
        .points()
        .iter()
        .enumerate()
        .filter(|(_, pt)| {
            let [x, y, _] = pt.coords();
            y.is_zero() || (x / y).in_prime_subfield()
        })
        .map(|(i, _)| i)
        .collect()
}

fn invariant(ok: bool, msg: impl FnOnce() -> String) -> Result<(), RectangleError> {
    if ok {
        Ok(())
    } else {
        Err(RectangleError::Invariant(msg()))
    }
}

/// Build `ĥ∞(L_p^k)` in PG(2, p^k) and validate it against its construction.
pub fn assemble_pr(p: u32, k: usize, bound: u64, opts: &ClosureOptions) -> Result<ProjectiveRectangle, RectangleError> {
    if !is_prime(p) {
        return Err(RectangleError::NotPrime(p));
    }
    let q = (p as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    if q > bound {
        return Err(RectangleError::TooLarge { q, bound });
    }
    let plane = FinitePlane::with_order(p, k)?;
    let lift = build_lift(p, k)?;
    let images = embed_lift(&lift, &plane)?;
    let n = lift.group().order();
    let closed = closure(&plane, &images, opts)?;
    let points: BTreeSet<usize> = closed.points.iter().collect();
    let expected = closed_form_points(&plane);
    invariant(points == expected, || {
        let missing: Vec<String> = expected.difference(&points).map(|&i| plane.point(i).text()).collect();
        let extra: Vec<String> = points.difference(&expected).map(|&i| plane.point(i).text()).collect();
        format!("closure differs from the subfield-slope set: missing {missing:?}, extra {extra:?}")
    })?;

    let d_amb = images[lift.d()];
    // Group points by their ambient line through D.
    let mut by_special: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &x in points.iter().filter(|&&x| x != d_amb) {
        let l = plane.join(d_amb, x).expect("distinct points");
        by_special.entry(l).or_default().push(x);
    }
    invariant(by_special.len() == p as usize + 1, || {
        format!("expected {} special lines, found {}", p + 1, by_special.len())
    })?;

    // R_t is the special line through the t-th term of the base sequence.
    let base = conjugate_iterates(&plane, &images[lift.a(0)], &images[lift.b(0)], &images[lift.c(0)], p as usize)?;
    let mut special_ambient = vec![plane.join(d_amb, images[lift.a(0)]).expect("a_0 differs from D")];
    for &x in &base {
        special_ambient.push(plane.join(d_amb, x).expect("term differs from D"));
    }
    invariant(special_ambient.iter().collect::<BTreeSet<_>>().len() == p as usize + 1, || {
        "base sequence does not visit every special line".to_string()
    })?;
    invariant(special_ambient.iter().all(|l| by_special.contains_key(l)), || {
        "a generated special line holds no closure points".to_string()
    })?;

    // Ordinary lines as closures of {a_g, b_{g+h}, c_h}.
    let group = *lift.group();
    let mut ordinary_sets = Vec::with_capacity(n * n);
    let mut ordinary_gh = Vec::with_capacity(n * n);
    for g in 0..n {
        for h in 0..n {
            let seed = [images[lift.a(g)], images[lift.b(group.add(g, h))], images[lift.c(h)]];
            let c = closure(&plane, &seed, &ClosureOptions::default())?;
            ordinary_sets.push(c.to_vec());
            ordinary_gh.push((g, h));
        }
    }
    // The same lines as traces of ambient lines avoiding D.
    let point_set = BitSet::from_indices(plane.point_count(), points.iter().copied());
    let traces: BTreeSet<Vec<usize>> = (0..plane.line_count())
        .filter(|&l| !plane.on_line(d_amb, l))
        .map(|l| plane.line_points(l).iter().copied().filter(|&x| point_set.contains(x)).collect::<Vec<_>>())
        .filter(|t| t.len() >= 2)
        .collect();
    let closures: BTreeSet<Vec<usize>> = ordinary_sets.iter().cloned().collect();
    invariant(closures.len() == n * n, || format!("{} distinct ordinary closures, expected {}", closures.len(), n * n))?;
    invariant(closures == traces, || "ordinary closures differ from ambient line traces".to_string())?;

    // Labels: a_g on R_∞ carries g; a point of R_t carries the h with the
    // point on the closure of {a_0, b_h, c_h}.
    let mut label_of: BTreeMap<usize, PointLabel> = BTreeMap::new();
    label_of.insert(d_amb, PointLabel::D);
    for g in 0..n {
        label_of.insert(
            images[lift.a(g)],
            PointLabel::On {
                line: SpecialIndex::Infinity,
                value: g,
            },
        );
    }
    let t_of_line: BTreeMap<usize, u32> = special_ambient[1..].iter().enumerate().map(|(t, &l)| (l, t as u32)).collect();
    for (idx, set) in ordinary_sets.iter().enumerate() {
        let (g, h) = ordinary_gh[idx];
        if g != 0 {
            continue;
        }
        for &x in set {
            let l = plane.join(d_amb, x).expect("ordinary point");
            if let Some(&t) = t_of_line.get(&l) {
                let prev = label_of.insert(
                    x,
                    PointLabel::On {
                        line: SpecialIndex::Finite(t),
                        value: h,
                    },
                );
                invariant(prev.is_none(), || format!("point {} labeled twice", plane.point(x).text()))?;
            }
        }
    }
    invariant(label_of.len() == points.len(), || {
        format!("{} of {} points labeled", label_of.len(), points.len())
    })?;

    // Order points: R_∞, R_0, …, R_{p-1} by label, then D.
    let mut ordered: Vec<(usize, PointLabel)> = label_of.into_iter().collect();
    let key = |l: &PointLabel| match l {
        PointLabel::On {
            line: SpecialIndex::Infinity,
            value,
        } => (0u32, *value),
        PointLabel::On {
            line: SpecialIndex::Finite(t),
            value,
        } => (1 + t, *value),
        PointLabel::D => (u32::MAX, 0),
    };
    ordered.sort_by_key(|(_, l)| key(l));
    let ambient: Vec<usize> = ordered.iter().map(|(x, _)| *x).collect();
    let labels: Vec<PointLabel> = ordered.iter().map(|(_, l)| *l).collect();
    let mut local = vec![usize::MAX; plane.point_count()];
    for (i, &x) in ambient.iter().enumerate() {
        local[x] = i;
    }
    for v in 0..3 * n {
        invariant(local[images[v]] == v, || format!("lift point {} moved", lift.structure().label(v)))?;
    }

    let text_labels: Vec<String> = labels.iter().map(|l| label_text(&group, l)).collect();
    let mut lines: Vec<Vec<usize>> = Vec::new();
    for &l in &special_ambient {
        let mut pts: Vec<usize> = by_special[&l].iter().map(|&x| local[x]).collect();
        pts.push(local[d_amb]);
        lines.push(pts);
    }
    for set in &ordinary_sets {
        lines.push(set.iter().map(|&x| local[x]).collect());
    }
    let structure = IncidenceStructure::build(text_labels, lines)?;
    let special: Vec<usize> = (0..=p as usize).collect();
    let ordinary: Vec<usize> = (p as usize + 1..structure.line_count()).collect();

    let mut terms = vec![vec![Vec::new(); n]; n];
    for g in 0..n {
        for h in 0..n {
            let seq = conjugate_iterates(
                &plane,
                &images[lift.a(g)],
                &images[lift.b(group.add(g, h))],
                &images[lift.c(h)],
                p as usize + 1,
            )?;
            terms[g][h] = seq.iter().map(|&x| local[x]).collect();
        }
    }

    Ok(ProjectiveRectangle {
        p,
        k,
        plane,
        lift,
        structure,
        ambient,
        labels,
        special,
        ordinary,
        ordinary_gh,
        terms,
        closure_stats: closed,
    })
}

/// Canonical text label: "a:g", "b:g", "c:g", "x:t:λ", or "D".
pub fn label_text(group: &crate::lifts::Group, label: &PointLabel) -> String {
    match label {
        PointLabel::D => "D".to_string(),
        PointLabel::On {
            line: SpecialIndex::Infinity,
            value,
        } => format!("a:{}", group.text(*value)),
        PointLabel::On {
            line: SpecialIndex::Finite(0),
            value,
        } => format!("b:{}", group.text(*value)),
        PointLabel::On {
            line: SpecialIndex::Finite(1),
            value,
        } => format!("c:{}", group.text(*value)),
        PointLabel::On {
            line: SpecialIndex::Finite(t),
            value,
        } => format!("x:{}:{}", t, group.text(*value)),
    }
}

impl ProjectiveRectangle {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `(m, n)`: `m + 1` special lines, `n + 1` points on each.
    pub fn order(&self) -> (usize, usize) {
        (self.special.len() - 1, self.structure.line_points(self.special[0]).len() - 1)
    }

    pub fn plane(&self) -> &FinitePlane {
        &self.plane
    }

    pub fn lift(&self) -> &Lift {
        &self.lift
    }

    pub fn structure(&self) -> &IncidenceStructure {
        &self.structure
    }

    pub fn point_count(&self) -> usize {
        self.structure.point_count()
    }

    pub fn d(&self) -> usize {
        self.structure.point_count() - 1
    }

    /// Ambient plane index of each rectangle point.
    pub fn ambient(&self) -> &[usize] {
        &self.ambient
    }

    pub fn labels(&self) -> &[PointLabel] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> PointLabel {
        self.labels[x]
    }

    /// Line indices of `R_∞, R_0, …, R_{p-1}`.
    pub fn special_lines(&self) -> &[usize] {
        &self.special
    }

    pub fn ordinary_lines(&self) -> &[usize] {
        &self.ordinary
    }

    pub fn is_special(&self, line: usize) -> bool {
        line < self.special.len()
    }

    pub fn group_order(&self) -> usize {
        self.lift.group().order()
    }

    /// Line index of `R_∞` (`None`) or `R_{t mod p}`.
    pub fn special_line(&self, t: Option<i64>) -> usize {
        match t {
            None => self.special[0],
            Some(t) => self.special[1 + t.rem_euclid(self.p as i64) as usize],
        }
    }

    /// The point `a_g` of `R_∞`.
    pub fn a(&self, g: usize) -> usize {
        g
    }

    /// The point `x_{t,f}` of `R_{t mod p}`.
    pub fn x(&self, t: i64, f: usize) -> usize {
        let n = self.group_order();
        (1 + t.rem_euclid(self.p as i64) as usize) * n + f
    }

    /// Line index of the ordinary line generated by `a_g` and `c_h`.
    pub fn ordinary_line(&self, g: usize, h: usize) -> usize {
        self.special.len() + g * self.group_order() + h
    }

    /// Generators `(g, h)` of an ordinary line.
    pub fn ordinary_generators(&self, line: usize) -> (usize, usize) {
        self.ordinary_gh[line - self.special.len()]
    }

    /// `t`-th conjugate-sequence term based at `a_g` from `b_{g+h}, c_h`, `t ≤ p`.
    pub fn term(&self, g: usize, h: usize, t: usize) -> usize {
        self.terms[g][h][t]
    }

    pub fn closure_stats(&self) -> &ClosureResult {
        &self.closure_stats
    }

    pub fn raw(&self) -> RawRectangle {
        RawRectangle {
            point_count: self.point_count(),
            d: self.d(),
            lines: self.structure.lines().to_vec(),
        }
    }

    /// Incidence graph in Graphviz format.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph rectangle {\n");
        for (i, l) in self.structure.labels().iter().enumerate() {
            out.push_str(&format!("  p{i} [label=\"{l}\", shape=circle];\n"));
        }
        for (li, pts) in self.structure.lines().iter().enumerate() {
            let shape = if self.is_special(li) { "box" } else { "diamond" };
            out.push_str(&format!("  l{li} [label=\"\", shape={shape}];\n"));
            for &x in pts {
                out.push_str(&format!("  l{li} -- p{x};\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Ambient plane indices of `L_p^k`'s image, the seed of the closure.
pub fn embedded_lift_points(pr: &ProjectiveRectangle) -> Vec<usize> {
    let n = pr.group_order();
    (0..3 * n).chain([pr.d()]).map(|x| pr.ambient[x]).collect()
}

/// Map ambient plane points into rectangle indices (`None` outside).
pub fn local_index(pr: &ProjectiveRectangle) -> Vec<Option<usize>> {
    let mut local = vec![None; pr.plane.point_count()];
    for (i, &x) in pr.ambient.iter().enumerate() {
        local[x] = Some(i);
    }
    local
}

/// Tag used when relating rectangle points back to the lift.
pub fn lift_tag(pr: &ProjectiveRectangle, x: usize) -> Option<(Tag, usize)> {
    match pr.labels[x] {
        PointLabel::D => Some((Tag::D, 0)),
        PointLabel::On {
            line: SpecialIndex::Infinity,
            value,
        } => Some((Tag::A, value)),
        PointLabel::On {
            line: SpecialIndex::Finite(0),
            value,
        } => Some((Tag::B, value)),
        PointLabel::On {
            line: SpecialIndex::Finite(1),
            value,
        } => Some((Tag::C, value)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pr_3_2_shape() {
        let pr = assemble_pr(3, 2, 9, &ClosureOptions::default()).unwrap();
        assert_eq!(pr.point_count(), 37);
        assert_eq!(pr.order(), (3, 9));
        assert_eq!(pr.special_lines().len(), 4);
        assert_eq!(pr.ordinary_lines().len(), 81);
        assert!(pr.ordinary_lines().iter().all(|&l| pr.structure().line_points(l).len() == 4));
        assert!(pr.special_lines().iter().all(|&l| pr.structure().line_points(l).len() == 10));
        assert_eq!(pr.structure().label(pr.x(2, 0)), "x:2:0,0");
    }

    #[test]
    fn pr_2_2_is_the_lift() {
        let pr = assemble_pr(2, 2, 9, &ClosureOptions::default()).unwrap();
        assert_eq!(pr.point_count(), 13);
        assert_eq!(pr.closure_stats().rounds, 0);
        let lift = build_lift(2, 2).unwrap();
        assert_eq!(pr.structure().labels(), lift.structure().labels());
    }

    #[test]
    fn prime_case_is_the_plane() {
        for p in [3u32, 5] {
            let pr = assemble_pr(p, 1, 9, &ClosureOptions::default()).unwrap();
            let q = p as usize;
            assert_eq!(pr.point_count(), q * q + q + 1);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let opts = ClosureOptions::default();
        assert_eq!(assemble_pr(4, 1, 9, &opts).unwrap_err(), RectangleError::NotPrime(4));
        assert!(matches!(assemble_pr(5, 2, 9, &opts), Err(RectangleError::TooLarge { .. })));
    }

    #[test]
    fn fault_injection_breaks_assembly() {
        let opts = ClosureOptions {
            suppress_first_new: true,
            ..Default::default()
        };
        assert!(matches!(assemble_pr(3, 1, 9, &opts), Err(RectangleError::Invariant(_))));
    }
}
