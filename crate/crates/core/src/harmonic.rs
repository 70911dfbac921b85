//! Harmonic conjugation: configuration search, conjugate sequences, and the
//! harmonic closure operator.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Debug;
use std::hash::Hash;
use std::marker::PhantomData;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::BitSet;
use crate::gf::Scalar;
use crate::incidence::Incidence;
use crate::projplane::{harmonic_conjugate_coord, line_through, meet, FinitePlane, PlaneError, ProjLine, ProjPoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarmonicError {
    #[error("base points are not pairwise distinct")]
    NotDistinct,
    #[error("base points are not collinear")]
    NotCollinear,
    #[error("no harmonic configuration on the given base")]
    NoConfiguration,
    #[error("configurations disagree on the conjugate ({0:?} vs {1:?})")]
    Inconsistent(Option<usize>, Option<usize>),
    #[error("closure did not stabilize within {0} rounds")]
    RoundLimit(usize),
    #[error("conjugate sequence needs at least 2 steps")]
    ShortSequence,
    #[error("configuration does not satisfy its collinearities")]
    Malformed,
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

/// Where configuration witnesses may be drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessScope {
    Ambient,
    Internal,
}

impl std::str::FromStr for WitnessScope {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ambient" => Ok(WitnessScope::Ambient),
            "internal" => Ok(WitnessScope::Internal),
            other => Err(format!("unknown witness scope {other:?}")),
        }
    }
}

/// `HP(d,e,f; a1,a2,a3,a4)` with the point `h = a1a3 ∩ df` when it exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct HarmonicConfiguration {
    pub d: usize,
    pub e: usize,
    pub f: usize,
    pub a1: usize,
    pub a2: usize,
    pub a3: usize,
    pub a4: usize,
    pub h: Option<usize>,
}

impl HarmonicConfiguration {
    pub fn points(&self) -> [usize; 7] {
        [self.d, self.e, self.f, self.a1, self.a2, self.a3, self.a4]
    }

    /// The five defining collinear triples.
    pub fn triples(&self) -> [[usize; 3]; 5] {
        [
            [self.d, self.a1, self.a2],
            [self.d, self.a4, self.a3],
            [self.e, self.a4, self.a2],
            [self.f, self.a4, self.a1],
            [self.f, self.a3, self.a2],
        ]
    }

    pub fn is_valid(&self, ambient: &impl Incidence) -> bool {
        let pts = self.points();
        let distinct = pts.iter().collect::<BTreeSet<_>>().len() == 7;
        distinct
            && ambient.collinear(self.d, self.e, self.f)
            && self.triples().iter().all(|t| ambient.collinear(t[0], t[1], t[2]))
    }
}

fn check_base(ambient: &impl Incidence, d: usize, e: usize, f: usize) -> Result<usize, HarmonicError> {
    if d == e || d == f || e == f {
        return Err(HarmonicError::NotDistinct);
    }
    match ambient.join(d, f) {
        Some(l) if ambient.on_line(e, l) => Ok(l),
        _ => Err(HarmonicError::NotCollinear),
    }
}

fn meet_of(ambient: &impl Incidence, p: usize, q: usize, r: usize, s: usize) -> Option<usize> {
    let l1 = ambient.join(p, q)?;
    let l2 = ambient.join(r, s)?;
    ambient.meet(l1, l2)
}

/// Every configuration on the base `(d, e, f)` whose four witnesses lie in
/// `within`, ordered by `(a2, a4)`.
pub fn find_configurations(
    ambient: &impl Incidence,
    within: &BitSet,
    d: usize,
    e: usize,
    f: usize,
) -> Result<Vec<HarmonicConfiguration>, HarmonicError> {
    let base = check_base(ambient, d, e, f)?;
    let mut out = Vec::new();
    for a2 in within.iter() {
        if ambient.on_line(a2, base) {
            continue;
        }
        let Some(ea2) = ambient.join(e, a2) else {
            continue;
        };
        for &a4 in ambient.line_points(ea2) {
            if a4 == e || a4 == a2 || !within.contains(a4) {
                continue;
            }
            let Some(a1) = meet_of(ambient, d, a2, f, a4) else {
                continue;
            };
            let Some(a3) = meet_of(ambient, d, a4, f, a2) else {
                continue;
            };
            if !within.contains(a1) || !within.contains(a3) {
                continue;
            }
            let h = if a1 == a3 {
                None
            } else {
                ambient.join(a1, a3).and_then(|l| ambient.meet(l, base))
            };
            let config = HarmonicConfiguration {
                d,
                e,
                f,
                a1,
                a2,
                a3,
                a4,
                h,
            };
            if config.is_valid(ambient) {
                out.push(config);
            }
        }
    }
    Ok(out)
}

/// The conjugate of `e` with respect to `d` and `f`, required to be the same
/// for every configuration with witnesses in `within`.
pub fn conjugate_abstract(
    ambient: &impl Incidence,
    within: &BitSet,
    d: usize,
    f: usize,
    e: usize,
) -> Result<usize, HarmonicError> {
    let configs = find_configurations(ambient, within, d, e, f)?;
    let first = configs.first().ok_or(HarmonicError::NoConfiguration)?.h;
    if let Some(other) = configs.iter().find(|c| c.h != first) {
        return Err(HarmonicError::Inconsistent(first, other.h));
    }
    first.ok_or(HarmonicError::Inconsistent(None, None))
}

/// A host in which conjugates can be computed and collinearity tested.
pub trait Conjugation {
    type Point: Clone + Eq + Hash + Ord + Debug;
    fn conjugate(&self, d: &Self::Point, f: &Self::Point, e: &Self::Point) -> Result<Self::Point, HarmonicError>;
    fn collinear(&self, a: &Self::Point, b: &Self::Point, c: &Self::Point) -> bool;
}

impl Conjugation for FinitePlane {
    type Point = usize;

    fn conjugate(&self, d: &usize, f: &usize, e: &usize) -> Result<usize, HarmonicError> {
        FinitePlane::conjugate(self, *d, *f, *e).map_err(|err| match err {
            PlaneError::NotDistinct => HarmonicError::NotDistinct,
            PlaneError::NotCollinear => HarmonicError::NotCollinear,
            other => HarmonicError::Plane(other),
        })
    }

    fn collinear(&self, a: &usize, b: &usize, c: &usize) -> bool {
        Incidence::collinear(self, *a, *b, *c)
    }
}

/// Coordinate conjugation in PG(2, F) for any exact scalar type.
#[derive(Debug, Clone, Copy, Default)]
pub struct CoordinateHost<S>(PhantomData<S>);

impl<S> CoordinateHost<S> {
    pub fn new() -> Self {
        CoordinateHost(PhantomData)
    }
}

impl<S: Scalar> Conjugation for CoordinateHost<S> {
    type Point = ProjPoint<S>;

    fn conjugate(&self, d: &ProjPoint<S>, f: &ProjPoint<S>, e: &ProjPoint<S>) -> Result<ProjPoint<S>, HarmonicError> {
        harmonic_conjugate_coord(d, f, e).map_err(|err| match err {
            PlaneError::NotDistinct => HarmonicError::NotDistinct,
            PlaneError::NotCollinear => HarmonicError::NotCollinear,
            other => HarmonicError::Plane(other),
        })
    }

    fn collinear(&self, a: &ProjPoint<S>, b: &ProjPoint<S>, c: &ProjPoint<S>) -> bool {
        crate::projplane::collinear(a, b, c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugateSequence<P> {
    pub base: P,
    /// `a_0, a_1, …`; for a modular sequence the last term repeats an earlier one.
    pub terms: Vec<P>,
    pub modular: bool,
    /// Index of the first term equal to a predecessor.
    pub order: Option<usize>,
    /// Index of the predecessor that term `order` repeats.
    pub repeats: Option<usize>,
}

/// Iterate `a_{i+1} = conj(a_{i-1}; A, a_i)` until a term repeats or
/// `max_steps` terms have been produced.
pub fn conjugate_sequence<H: Conjugation>(
    host: &H,
    base: &H::Point,
    a0: &H::Point,
    a1: &H::Point,
    max_steps: usize,
) -> Result<ConjugateSequence<H::Point>, HarmonicError> {
    if max_steps < 2 {
        return Err(HarmonicError::ShortSequence);
    }
    if base == a0 || base == a1 || a0 == a1 {
        return Err(HarmonicError::NotDistinct);
    }
    if !host.collinear(base, a0, a1) {
        return Err(HarmonicError::NotCollinear);
    }
    let mut terms = vec![a0.clone(), a1.clone()];
    let mut seen: HashMap<H::Point, usize> = HashMap::from([(a0.clone(), 0), (a1.clone(), 1)]);
    while terms.len() < max_steps {
        let i = terms.len() - 1;
        let next = host.conjugate(base, &terms[i], &terms[i - 1])?;
        let idx = terms.len();
        terms.push(next.clone());
        if let Some(&prev) = seen.get(&next) {
            return Ok(ConjugateSequence {
                base: base.clone(),
                terms,
                modular: true,
                order: Some(idx),
                repeats: Some(prev),
            });
        }
        seen.insert(next, idx);
    }
    Ok(ConjugateSequence {
        base: base.clone(),
        terms,
        modular: false,
        order: None,
        repeats: None,
    })
}

/// Continue the raw recurrence for `len` terms without stopping at repeats.
pub fn conjugate_iterates<H: Conjugation>(
    host: &H,
    base: &H::Point,
    a0: &H::Point,
    a1: &H::Point,
    len: usize,
) -> Result<Vec<H::Point>, HarmonicError> {
    let mut terms = vec![a0.clone(), a1.clone()];
    while terms.len() < len {
        let i = terms.len() - 1;
        let next = host.conjugate(base, &terms[i], &terms[i - 1])?;
        terms.push(next);
    }
    terms.truncate(len);
    Ok(terms)
}

#[derive(Debug, Clone, Default)]
pub struct ClosureOptions {
    pub max_rounds: Option<usize>,
    /// Fault injection: the first conjugate found in round one is never added.
    pub suppress_first_new: bool,
    /// Re-derive every conjugate by configuration search and require agreement.
    pub cross_check: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    pub points: BitSet,
    pub rounds: usize,
    pub added_per_round: Vec<usize>,
    pub suppressed: Option<usize>,
}

impl ClosureResult {
    pub fn to_vec(&self) -> Vec<usize> {
        self.points.to_vec()
    }
}

/// Least superset of `seed` closed under harmonic conjugation in PG(2, q),
/// using the tabulated coordinate conjugate. Each round evaluates all
/// collinear triples of the current set and commits the union at once.
pub fn closure(plane: &FinitePlane, seed: &[usize], opts: &ClosureOptions) -> Result<ClosureResult, HarmonicError> {
    let n = plane.point_count();
    let mut current = BitSet::from_indices(n, seed.iter().copied());
    let full = BitSet::full(n);
    let mut added_per_round = Vec::new();
    let mut suppressed = None;
    loop {
        if opts.max_rounds.is_some_and(|m| added_per_round.len() >= m) {
            return Err(HarmonicError::RoundLimit(added_per_round.len()));
        }
        let found: Vec<Vec<usize>> = (0..plane.line_count())
            .into_par_iter()
            .map(|l| {
                let on: Vec<usize> = plane.line_points(l).iter().copied().filter(|&p| current.contains(p)).collect();
                let mut fresh = Vec::new();
                if on.len() < 3 {
                    return Ok(fresh);
                }
                for &a in &on {
                    for &c in &on {
                        for &b in &on {
                            if a == c || a == b || b == c {
                                continue;
                            }
                            let x = plane.conjugate(a, c, b)?;
                            if opts.cross_check {
                                let y = conjugate_abstract(plane, &full, a, c, b)?;
                                if x != y {
                                    return Err(HarmonicError::Inconsistent(Some(x), Some(y)));
                                }
                            }
                            if !current.contains(x) {
                                fresh.push(x);
                            }
                        }
                    }
                }
                Ok(fresh)
            })
            .collect::<Result<_, HarmonicError>>()?;
        let mut new: BTreeSet<usize> = found.into_iter().flatten().collect();
        if opts.suppress_first_new && added_per_round.is_empty() {
            suppressed = new.iter().next().copied();
        }
        if let Some(s) = suppressed {
            new.remove(&s);
        }
        if new.is_empty() {
            break;
        }
        added_per_round.push(new.len());
        for p in new {
            current.insert(p);
        }
    }
    Ok(ClosureResult {
        points: current,
        rounds: added_per_round.len(),
        added_per_round,
        suppressed,
    })
}

/// Harmonic closure by configuration search. With `Ambient` scope witnesses
/// come from all of `within`; with `Internal` scope only from the current set.
/// Triples without a consistent conjugate contribute nothing.
pub fn closure_by_search(
    ambient: &impl Incidence,
    within: &BitSet,
    seed: &[usize],
    scope: WitnessScope,
    max_rounds: Option<usize>,
) -> Result<ClosureResult, HarmonicError> {
    let n = ambient.point_count();
    let mut current = BitSet::from_indices(n, seed.iter().copied());
    let mut added_per_round = Vec::new();
    loop {
        if max_rounds.is_some_and(|m| added_per_round.len() >= m) {
            return Err(HarmonicError::RoundLimit(added_per_round.len()));
        }
        let witnesses = match scope {
            WitnessScope::Ambient => within.clone(),
            WitnessScope::Internal => current.clone(),
        };
        let pts = current.to_vec();
        let mut new = BTreeSet::new();
        for (i, &a) in pts.iter().enumerate() {
            for &c in &pts[i + 1..] {
                let Some(l) = ambient.join(a, c) else {
                    continue;
                };
                for &b in ambient.line_points(l) {
                    if b == a || b == c || !current.contains(b) {
                        continue;
                    }
                    if let Ok(x) = conjugate_abstract(ambient, &witnesses, a, c, b) {
                        if within.contains(x) && !current.contains(x) {
                            new.insert(x);
                        }
                    }
                }
            }
        }
        if new.is_empty() {
            break;
        }
        added_per_round.push(new.len());
        for p in new {
            current.insert(p);
        }
    }
    Ok(ClosureResult {
        points: current,
        rounds: added_per_round.len(),
        added_per_round,
        suppressed: None,
    })
}

/// Harmonic closure of a finite point set in PG(2, F) over exact coordinates.
pub fn closure_coords<S: Scalar>(
    seed: &[ProjPoint<S>],
    max_rounds: usize,
) -> Result<BTreeSet<ProjPoint<S>>, HarmonicError> {
    let mut current: BTreeSet<ProjPoint<S>> = seed.iter().cloned().collect();
    for _ in 0..max_rounds {
        let pts: Vec<&ProjPoint<S>> = current.iter().collect();
        let mut by_line: HashMap<ProjLine<S>, BTreeSet<&ProjPoint<S>>> = HashMap::new();
        for (i, p) in pts.iter().enumerate() {
            for q in &pts[i + 1..] {
                let l = line_through(p, q)?;
                let entry = by_line.entry(l).or_default();
                entry.insert(p);
                entry.insert(q);
            }
        }
        let mut new = BTreeSet::new();
        for on in by_line.values().filter(|s| s.len() >= 3) {
            for a in on {
                for c in on {
                    for b in on {
                        if a == c || a == b || b == c {
                            continue;
                        }
                        let x = harmonic_conjugate_coord(a, c, b)?;
                        if !current.contains(&x) {
                            new.insert(x);
                        }
                    }
                }
            }
        }
        if new.is_empty() {
            return Ok(current);
        }
        current.extend(new);
    }
    Err(HarmonicError::RoundLimit(max_rounds))
}

/// Build one configuration on `(d, e, f)` from the free choices `a2` (off the
/// line) and `a4` (on line `e a2`), returning `(a1, a3, h)`.
pub fn construct_configuration<S: Scalar>(
    d: &ProjPoint<S>,
    e: &ProjPoint<S>,
    f: &ProjPoint<S>,
    a2: &ProjPoint<S>,
    a4: &ProjPoint<S>,
) -> Result<[ProjPoint<S>; 3], HarmonicError> {
    if !crate::projplane::collinear(d, e, f) {
        return Err(HarmonicError::NotCollinear);
    }
    if crate::projplane::collinear(d, f, a2) || !crate::projplane::collinear(e, a2, a4) || a4 == e || a4 == a2 {
        return Err(HarmonicError::Malformed);
    }
    let a1 = meet(&line_through(d, a2)?, &line_through(f, a4)?)?;
    let a3 = meet(&line_through(d, a4)?, &line_through(f, a2)?)?;
    let h = meet(&line_through(&a1, &a3)?, &line_through(d, f)?)?;
    Ok([a1, a3, h])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TecnicoReport {
    pub x_prime: usize,
    pub q1: usize,
    pub q2: usize,
    pub u: usize,
    pub t: usize,
    pub part_i: bool,
    pub part_ii: bool,
    pub part_iii: bool,
}

impl TecnicoReport {
    pub fn holds(&self) -> bool {
        self.part_i && self.part_ii && self.part_iii
    }
}

/// Check the three companion conjugacies of a configuration `HP(y,x,z; o,q,r,s)`
/// with `x'` the conjugate of `x` with respect to `y, z`. Every conjugate is
/// found by configuration search in the whole plane.
pub fn verify_tecnico(plane: &FinitePlane, config: &HarmonicConfiguration) -> Result<TecnicoReport, HarmonicError> {
    if !config.is_valid(plane) {
        return Err(HarmonicError::Malformed);
    }
    let all = BitSet::full(plane.point_count());
    let (y, x, z) = (config.d, config.e, config.f);
    let (o, q, r, s) = (config.a1, config.a2, config.a3, config.a4);
    let x_prime = conjugate_abstract(plane, &all, y, z, x)?;
    let q1 = conjugate_abstract(plane, &all, z, r, q)?;
    let q2 = conjugate_abstract(plane, &all, y, o, q)?;
    let u = conjugate_abstract(plane, &all, o, r, x_prime)?;
    let t = conjugate_abstract(plane, &all, y, r, s)?;
    // In characteristic 2 the points s and x' may coincide; then the line is any
    // line through s and the check reduces to q1 = q2 = s.
    let on_sx = |p: usize| s == x_prime || Incidence::collinear(plane, s, x_prime, p);
    Ok(TecnicoReport {
        x_prime,
        q1,
        q2,
        u,
        t,
        part_i: on_sx(q1) && on_sx(q2),
        part_ii: Incidence::collinear(plane, q, x, u),
        part_iii: Incidence::collinear(plane, q, x_prime, t),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Rational;

    fn plane(p: u32, k: usize) -> FinitePlane {
        FinitePlane::with_order(p, k).unwrap()
    }

    fn collinear_triples(pl: &FinitePlane) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for l in 0..pl.line_count() {
            let pts = pl.line_points(l);
            for &d in pts {
                for &e in pts {
                    for &f in pts {
                        if d != e && d != f && e != f {
                            out.push((d, e, f));
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn characteristic_two_fixes_every_point() {
        let pl = plane(2, 1);
        let all = BitSet::full(pl.point_count());
        for (d, e, f) in collinear_triples(&pl) {
            let configs = find_configurations(&pl, &all, d, e, f).unwrap();
            assert!(!configs.is_empty());
            assert!(configs.iter().all(|c| c.h == Some(e)));
        }
    }

    #[test]
    fn configurations_agree_and_match_coordinates() {
        for (p, k) in [(3, 1), (2, 2)] {
            let pl = plane(p, k);
            let all = BitSet::full(pl.point_count());
            for (d, e, f) in collinear_triples(&pl) {
                let h = conjugate_abstract(&pl, &all, d, f, e).unwrap();
                assert_eq!(h, pl.conjugate(d, f, e).unwrap());
            }
        }
    }

    #[test]
    fn empty_within_has_no_configurations() {
        let pl = plane(3, 1);
        let l = pl.line_points(0).to_vec();
        let within = BitSet::from_indices(pl.point_count(), l.iter().copied().chain(pl.line_points(1).iter().copied()));
        // two lines: every a2 off the base line lies on line 1 only, so no a4 works
        let cs = find_configurations(&pl, &within, l[0], l[1], l[2]).unwrap();
        assert!(cs.is_empty());
        assert_eq!(
            conjugate_abstract(&pl, &within, l[0], l[2], l[1]),
            Err(HarmonicError::NoConfiguration)
        );
    }

    #[test]
    fn bad_base_rejected() {
        let pl = plane(3, 1);
        let all = BitSet::full(pl.point_count());
        assert_eq!(find_configurations(&pl, &all, 0, 0, 1), Err(HarmonicError::NotDistinct));
        let l = pl.line_points(0);
        let off = (0..pl.point_count()).find(|p| !l.contains(p)).unwrap();
        assert_eq!(find_configurations(&pl, &all, l[0], l[1], off), Err(HarmonicError::NotCollinear));
    }

    #[test]
    fn sequence_orders_in_prime_planes() {
        for p in [2u32, 3, 5] {
            let pl = plane(p, 1);
            for (a, b, c) in collinear_triples(&pl).into_iter().step_by(7) {
                let seq = conjugate_sequence(&pl, &a, &b, &c, 100).unwrap();
                assert!(seq.modular);
                assert_eq!(seq.order, Some(p as usize));
                assert_eq!(seq.repeats, Some(0));
            }
        }
    }

    #[test]
    fn order_two_pattern() {
        let pl = plane(2, 1);
        let l = pl.line_points(0);
        let seq = conjugate_sequence(&pl, &l[0], &l[1], &l[2], 10).unwrap();
        assert_eq!(seq.terms, vec![l[1], l[2], l[1]]);
    }

    #[test]
    fn closure_of_line_triple_is_line() {
        for p in [3u32, 5] {
            let pl = plane(p, 1);
            let l = pl.line_points(4).to_vec();
            let c = closure(&pl, &l[..3], &ClosureOptions::default()).unwrap();
            assert_eq!(c.to_vec(), l);
            let again = closure(&pl, &c.to_vec(), &ClosureOptions::default()).unwrap();
            assert_eq!(again.points, c.points);
            assert_eq!(again.rounds, 0);
        }
    }

    #[test]
    fn closure_cross_check_and_search_agree() {
        let pl = plane(3, 1);
        let all = BitSet::full(pl.point_count());
        let seed = [0, 1, 2, 5, 9];
        let opts = ClosureOptions {
            cross_check: true,
            ..Default::default()
        };
        let fast = closure(&pl, &seed, &opts).unwrap();
        let slow = closure_by_search(&pl, &all, &seed, WitnessScope::Ambient, None).unwrap();
        assert_eq!(fast.points, slow.points);
    }

    #[test]
    fn suppression_drops_a_point() {
        let pl = plane(3, 1);
        let l = pl.line_points(4).to_vec();
        let opts = ClosureOptions {
            suppress_first_new: true,
            ..Default::default()
        };
        let c = closure(&pl, &l[..3], &opts).unwrap();
        assert_eq!(c.points.count(), 3);
        assert!(c.suppressed.is_some());
    }

    #[test]
    fn tecnico_in_pg23() {
        let pl = plane(3, 1);
        let all = BitSet::full(pl.point_count());
        for (d, e, f) in collinear_triples(&pl).into_iter().step_by(11) {
            for c in find_configurations(&pl, &all, d, e, f).unwrap() {
                assert!(verify_tecnico(&pl, &c).unwrap().holds());
            }
        }
    }

    #[test]
    fn rational_construction_matches_formula() {
        let r = |n, d| Rational::new(n, d).unwrap();
        let pt = |a: Rational, b: Rational, c: Rational| ProjPoint::new(a, b, c).unwrap();
        let d = pt(r(1, 1), r(0, 1), r(0, 1));
        let f = pt(r(0, 1), r(1, 1), r(0, 1));
        let e = pt(r(1, 1), r(3, 2), r(0, 1));
        let h = harmonic_conjugate_coord(&d, &f, &e).unwrap();
        for (a2, t) in [(pt(r(0, 1), r(0, 1), r(1, 1)), r(2, 1)), (pt(r(1, 1), r(5, 1), r(-7, 3)), r(1, 3))] {
            // a4 = e + t·a2 on line e a2
            let c = |i: usize| &e.coords()[i] + &(&t * &a2.coords()[i]);
            let a4 = pt(c(0), c(1), c(2));
            let [_, _, hh] = construct_configuration(&d, &e, &f, &a2, &a4).unwrap();
            assert_eq!(hh, h);
        }
        let host = CoordinateHost::<Rational>::new();
        let seq = conjugate_sequence(&host, &d, &e, &f, 20).unwrap();
        assert!(!seq.modular);
    }
}
