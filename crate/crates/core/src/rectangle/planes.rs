use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::BitSet;
use crate::incidence::Incidence;

use super::ProjectiveRectangle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaneError {
    #[error("line {0} is special")]
    Special(usize),
    #[error("lines {0} and {1} do not meet in one point")]
    NotIntersecting(usize, usize),
    #[error("closure of lines {0} and {1} is not a projective plane: {2}")]
    NotAPlane(usize, usize, String),
}

/// A plane of the rectangle: a point set closed under ordinary lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaneSubstructure {
    pub points: Vec<usize>,
    pub ordinary: Vec<usize>,
    /// `(special line, its trace)`.
    pub special_traces: Vec<(usize, Vec<usize>)>,
}

impl PlaneSubstructure {
    pub fn point_set(&self, universe: usize) -> BitSet {
        BitSet::from_indices(universe, self.points.iter().copied())
    }
}

/// Close `l1 ∪ l2 ∪ {D}` under ordinary lines with two points inside, then
/// check the result is a projective plane of order `m`.
pub fn plane_through(pr: &ProjectiveRectangle, l1: usize, l2: usize) -> Result<PlaneSubstructure, PlaneError> {
    let s = pr.structure();
    for l in [l1, l2] {
        if pr.is_special(l) {
            return Err(PlaneError::Special(l));
        }
    }
    if l1 == l2 || s.line_set(l1).intersection_count(s.line_set(l2)) != 1 {
        return Err(PlaneError::NotIntersecting(l1, l2));
    }
    let mut set = s.line_set(l1).clone();
    set.union_with(s.line_set(l2));
    set.insert(pr.d());
    loop {
        let mut grew = false;
        for &l in pr.ordinary_lines() {
            let ls = s.line_set(l);
            let inside = ls.intersection_count(&set);
            if inside >= 2 && inside < ls.count() {
                set.union_with(ls);
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    let ordinary: Vec<usize> = pr.ordinary_lines().iter().copied().filter(|&l| s.line_set(l).is_subset(&set)).collect();
    let special_traces: Vec<(usize, Vec<usize>)> = pr
        .special_lines()
        .iter()
        .map(|&l| (l, s.line_set(l).intersection(&set).to_vec()))
        .collect();
    let plane = PlaneSubstructure {
        points: set.to_vec(),
        ordinary,
        special_traces,
    };
    validate_plane(pr, &plane).map_err(|e| PlaneError::NotAPlane(l1, l2, e))?;
    Ok(plane)
}

fn validate_plane(pr: &ProjectiveRectangle, plane: &PlaneSubstructure) -> Result<(), String> {
    let m = pr.order().0;
    let size = m * m + m + 1;
    if plane.points.len() != size {
        return Err(format!("{} points, expected {size}", plane.points.len()));
    }
    let mut lines: Vec<Vec<usize>> = plane.ordinary.iter().map(|&l| pr.structure().line_points(l).to_vec()).collect();
    lines.extend(plane.special_traces.iter().map(|(_, t)| t.clone()));
    if lines.len() != size {
        return Err(format!("{} lines, expected {size}", lines.len()));
    }
    if let Some(l) = lines.iter().find(|l| l.len() != m + 1) {
        return Err(format!("a line has {} points", l.len()));
    }
    let n = pr.point_count();
    let mut seen = vec![false; n * n];
    for l in &lines {
        for (i, &x) in l.iter().enumerate() {
            for &y in &l[i + 1..] {
                if std::mem::replace(&mut seen[x * n + y], true) {
                    return Err(format!("points {x}, {y} on two lines"));
                }
            }
        }
    }
    Ok(())
}

/// Every plane of the rectangle, with how many contain each line.
#[derive(Debug, Clone, Serialize)]
pub struct PlaneSet {
    pub planes: Vec<PlaneSubstructure>,
    /// Planes containing each ordinary line, indexed by line.
    pub per_line: Vec<Vec<usize>>,
}

impl PlaneSet {
    pub fn counts(&self) -> Vec<usize> {
        self.per_line.iter().map(Vec::len).collect()
    }

    /// The plane containing two intersecting ordinary lines.
    pub fn containing(&self, l1: usize, l2: usize) -> Option<usize> {
        self.per_line[l1].iter().copied().find(|i| self.per_line[l2].contains(i))
    }
}

pub fn enumerate_planes(pr: &ProjectiveRectangle) -> Result<PlaneSet, PlaneError> {
    let s = pr.structure();
    let mut planes: Vec<PlaneSubstructure> = Vec::new();
    let mut per_line: Vec<Vec<usize>> = vec![Vec::new(); s.line_count()];
    let ordinary = pr.ordinary_lines();
    for (i, &l1) in ordinary.iter().enumerate() {
        for &l2 in &ordinary[i + 1..] {
            if s.line_set(l1).intersection_count(s.line_set(l2)) != 1 {
                continue;
            }
            if per_line[l1].iter().any(|p| per_line[l2].contains(p)) {
                continue;
            }
            let plane = plane_through(pr, l1, l2)?;
            let idx = planes.len();
            for &l in &plane.ordinary {
                per_line[l].push(idx);
            }
            planes.push(plane);
        }
    }
    Ok(PlaneSet { planes, per_line })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CoplanarityVerdict {
    NotPairwiseIntersecting,
    Concurrent { point: usize },
    Coplanar { plane: usize },
    Counterexample { reason: String },
}

/// Three pairwise intersecting lines are either concurrent or lie in a
/// common plane.
pub fn check_coplanarity_rule(pr: &ProjectiveRectangle, planes: &PlaneSet, lines: [usize; 3]) -> CoplanarityVerdict {
    let s = pr.structure();
    let [l1, l2, l3] = lines;
    let (Some(p12), Some(p13), Some(p23)) = (s.meet(l1, l2), s.meet(l1, l3), s.meet(l2, l3)) else {
        return CoplanarityVerdict::NotPairwiseIntersecting;
    };
    if l1 == l2 || l1 == l3 || l2 == l3 {
        return CoplanarityVerdict::NotPairwiseIntersecting;
    }
    if p12 == p13 || p12 == p23 {
        return CoplanarityVerdict::Concurrent { point: p12 };
    }
    let ordinary: Vec<usize> = lines.iter().copied().filter(|&l| !pr.is_special(l)).collect();
    let candidates: Vec<usize> = match ordinary.as_slice() {
        [] => return CoplanarityVerdict::Counterexample { reason: "three special lines with distinct meets".into() },
        [o] => planes.per_line[*o].clone(),
        [a, b, ..] => planes.containing(*a, *b).into_iter().collect(),
    };
    let m = pr.order().0;
    let lies_in = |pi: &PlaneSubstructure, l: usize| {
        if pr.is_special(l) {
            pi.special_traces.iter().any(|(sl, t)| *sl == l && t.len() == m + 1)
        } else {
            pi.ordinary.contains(&l)
        }
    };
    for idx in candidates {
        if lines.iter().all(|&l| lies_in(&planes.planes[idx], l)) {
            return CoplanarityVerdict::Coplanar { plane: idx };
        }
    }
    CoplanarityVerdict::Counterexample {
        reason: format!("lines {l1}, {l2}, {l3} meet in three points but share no plane"),
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CoplanaritySummary {
    pub triples: u64,
    pub pairwise_intersecting: u64,
    pub concurrent: u64,
    pub coplanar: u64,
    pub counterexample: Option<String>,
}

impl CoplanaritySummary {
    fn record(&mut self, v: CoplanarityVerdict) {
        self.triples += 1;
        match v {
            CoplanarityVerdict::NotPairwiseIntersecting => return,
            CoplanarityVerdict::Concurrent { .. } => self.concurrent += 1,
            CoplanarityVerdict::Coplanar { .. } => self.coplanar += 1,
            CoplanarityVerdict::Counterexample { reason } => {
                self.counterexample.get_or_insert(reason);
            }
        }
        self.pairwise_intersecting += 1;
    }
}

pub fn coplanarity_exhaustive(pr: &ProjectiveRectangle, planes: &PlaneSet) -> CoplanaritySummary {
    let n = pr.structure().line_count();
    let mut out = CoplanaritySummary::default();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                out.record(check_coplanarity_rule(pr, planes, [a, b, c]));
            }
        }
    }
    out
}

pub fn coplanarity_sampled(pr: &ProjectiveRectangle, planes: &PlaneSet, samples: u64, seed: u64) -> CoplanaritySummary {
    let n = pr.structure().line_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = CoplanaritySummary::default();
    for _ in 0..samples {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        let mut c = rng.gen_range(0..n);
        while c == a || c == b {
            c = rng.gen_range(0..n);
        }
        out.record(check_coplanarity_rule(pr, planes, [a, b, c]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::ClosureOptions;
    use crate::rectangle::assemble_pr;

    #[test]
    fn pr_3_2_planes() {
        let pr = assemble_pr(3, 2, 9, &ClosureOptions::default()).unwrap();
        let set = enumerate_planes(&pr).unwrap();
        assert_eq!(set.planes.len(), 36);
        assert!(set.planes.iter().all(|p| p.points.len() == 13 && p.points.contains(&pr.d())));
        for &l in pr.ordinary_lines() {
            assert_eq!(set.per_line[l].len(), 4);
        }
    }

    #[test]
    fn pr_2_2_coplanarity_exhaustive() {
        let pr = assemble_pr(2, 2, 9, &ClosureOptions::default()).unwrap();
        let set = enumerate_planes(&pr).unwrap();
        assert!(set.planes.iter().all(|p| p.points.len() == 7));
        let summary = coplanarity_exhaustive(&pr, &set);
        assert_eq!(summary.triples, 969);
        assert!(summary.counterexample.is_none(), "{summary:?}");
        assert!(summary.coplanar > 0 && summary.concurrent > 0);
    }

    #[test]
    fn rejects_special_and_parallel() {
        let pr = assemble_pr(3, 2, 9, &ClosureOptions::default()).unwrap();
        let o = pr.ordinary_lines()[0];
        assert_eq!(plane_through(&pr, 0, o), Err(PlaneError::Special(0)));
        // a_x with c_1 shares no point with the line through a_0, b_0, c_0.
        let parallel = pr.ordinary_line(1, 3);
        assert_eq!(plane_through(&pr, pr.ordinary_line(0, 0), parallel), Err(PlaneError::NotIntersecting(pr.ordinary_line(0, 0), parallel)));
    }
}
