//! Finite incidence structures presented as simple rank-3 matroids: a point
//! set plus the long lines (rank-2 flats with at least three points). Pairs of
//! points not covered by a long line form implicit two-point lines.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;

const NO_LINE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IncidenceError {
    #[error("line {line} has only {size} points")]
    ShortLine { line: usize, size: usize },
    #[error("line {line} references unknown point {point}")]
    UnknownPoint { line: usize, point: usize },
    #[error("line {line} lists point {point} more than once")]
    RepeatedPoint { line: usize, point: usize },
    #[error("lines {first} and {second} share the points {p} and {q}")]
    SharedPair {
        first: usize,
        second: usize,
        p: usize,
        q: usize,
    },
    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),
    #[error("a line needs two distinct points, got {0} twice")]
    SamePoint(usize),
    #[error("no point with index {0}")]
    NoSuchPoint(usize),
}

/// Read-only view shared by materialized planes and abstract structures.
/// Only long lines are addressed; `join` is `None` for implicit pairs.
pub trait Incidence {
    fn point_count(&self) -> usize;
    fn line_count(&self) -> usize;
    fn join(&self, p: usize, q: usize) -> Option<usize>;
    fn line_points(&self, line: usize) -> &[usize];
    fn on_line(&self, p: usize, line: usize) -> bool;

    fn collinear(&self, a: usize, b: usize, c: usize) -> bool {
        if a == b || a == c || b == c {
            return true;
        }
        self.join(a, b).is_some_and(|l| self.on_line(c, l))
    }

    fn meet(&self, l1: usize, l2: usize) -> Option<usize> {
        if l1 == l2 {
            return None;
        }
        self.line_points(l1).iter().copied().find(|&p| self.on_line(p, l2))
    }
}

/// The line spanned by two points of an [`IncidenceStructure`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LineRef {
    Long(usize),
    /// An implicit two-point line, stored with the smaller index first.
    Pair(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureJson {
    pub points: Vec<String>,
    pub lines: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct IncidenceStructure {
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    lines: Vec<Vec<usize>>,
    membership: Vec<BitSet>,
    point_lines: Vec<Vec<usize>>,
    /// Dense `n * n` table of the long line through each pair.
    pair_index: Vec<u32>,
}

impl PartialEq for IncidenceStructure {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.lines == other.lines
    }
}

impl Eq for IncidenceStructure {}

impl IncidenceStructure {
    /// Validate and index a structure. Each line is sorted; line order is kept.
    pub fn build(labels: Vec<String>, lines: Vec<Vec<usize>>) -> Result<Self, IncidenceError> {
        let n = labels.len();
        let mut label_index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if label_index.insert(l.clone(), i).is_some() {
                return Err(IncidenceError::DuplicateLabel(l.clone()));
            }
        }
        let mut pair_index = vec![NO_LINE; n * n];
        let mut membership = Vec::with_capacity(lines.len());
        let mut point_lines = vec![Vec::new(); n];
        let mut sorted_lines = Vec::with_capacity(lines.len());
        for (li, line) in lines.into_iter().enumerate() {
            let mut line = line;
            line.sort_unstable();
            if let Some(&bad) = line.iter().find(|&&p| p >= n) {
                return Err(IncidenceError::UnknownPoint { line: li, point: bad });
            }
            if let Some(w) = line.windows(2).find(|w| w[0] == w[1]) {
                return Err(IncidenceError::RepeatedPoint { line: li, point: w[0] });
            }
            if line.len() < 3 {
                return Err(IncidenceError::ShortLine {
                    line: li,
                    size: line.len(),
                });
            }
            for (i, &p) in line.iter().enumerate() {
                point_lines[p].push(li);
                for &q in &line[i + 1..] {
                    let slot = &mut pair_index[p * n + q];
                    if *slot != NO_LINE {
                        return Err(IncidenceError::SharedPair {
                            first: *slot as usize,
                            second: li,
                            p,
                            q,
                        });
                    }
                    *slot = li as u32;
                    pair_index[q * n + p] = li as u32;
                }
            }
            membership.push(BitSet::from_indices(n, line.iter().copied()));
            sorted_lines.push(line);
        }
        Ok(IncidenceStructure {
            labels,
            label_index,
            lines: sorted_lines,
            membership,
            point_lines,
            pair_index,
        })
    }

    pub fn from_json(json: &StructureJson) -> Result<Self, IncidenceError> {
        IncidenceStructure::build(json.points.clone(), json.lines.clone())
    }

    pub fn to_json(&self) -> StructureJson {
        StructureJson {
            points: self.labels.clone(),
            lines: self.lines.clone(),
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: usize) -> &str {
        &self.labels[p]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn line_set(&self, line: usize) -> &BitSet {
        &self.membership[line]
    }

    pub fn lines_through(&self, p: usize) -> &[usize] {
        &self.point_lines[p]
    }

    /// The line spanned by two distinct points.
    pub fn line_of(&self, p: usize, q: usize) -> Result<LineRef, IncidenceError> {
        let n = self.labels.len();
        for x in [p, q] {
            if x >= n {
                return Err(IncidenceError::NoSuchPoint(x));
            }
        }
        if p == q {
            return Err(IncidenceError::SamePoint(p));
        }
        Ok(match self.join(p, q) {
            Some(l) => LineRef::Long(l),
            None => LineRef::Pair(p.min(q), p.max(q)),
        })
    }

    /// Induced structure on `subset`; traces of size two or less become implicit.
    pub fn restrict(&self, subset: &[usize]) -> Result<IncidenceStructure, IncidenceError> {
        self.restrict_with_map(subset).map(|(s, _)| s)
    }

    /// Like [`restrict`](Self::restrict), also returning the original index of
    /// each retained point.
    pub fn restrict_with_map(
        &self,
        subset: &[usize],
    ) -> Result<(IncidenceStructure, Vec<usize>), IncidenceError> {
        let n = self.labels.len();
        let mut keep: Vec<usize> = subset.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&p| p >= n) {
            return Err(IncidenceError::NoSuchPoint(bad));
        }
        let mut new_index = vec![usize::MAX; n];
        for (i, &p) in keep.iter().enumerate() {
            new_index[p] = i;
        }
        let labels = keep.iter().map(|&p| self.labels[p].clone()).collect();
        let lines = self
            .lines
            .iter()
            .map(|line| {
                line.iter()
                    .filter(|&&p| new_index[p] != usize::MAX)
                    .map(|&p| new_index[p])
                    .collect::<Vec<_>>()
            })
            .filter(|trace| trace.len() >= 3)
            .collect();
        Ok((IncidenceStructure::build(labels, lines)?, keep))
    }

    /// Sorted sizes of the long lines through `p`.
    fn signature(&self, p: usize) -> Vec<usize> {
        let mut s: Vec<usize> = self.point_lines[p].iter().map(|&l| self.lines[l].len()).collect();
        s.sort_unstable();
        s
    }
}

impl Incidence for IncidenceStructure {
    fn point_count(&self) -> usize {
        self.labels.len()
    }

    fn line_count(&self) -> usize {
        self.lines.len()
    }

    fn join(&self, p: usize, q: usize) -> Option<usize> {
        let n = self.labels.len();
        match self.pair_index[p * n + q] {
            NO_LINE => None,
            l => Some(l as usize),
        }
    }

    fn line_points(&self, line: usize) -> &[usize] {
        &self.lines[line]
    }

    fn on_line(&self, p: usize, line: usize) -> bool {
        self.membership[line].contains(p)
    }
}

/// Convenience wrapper around [`isomorphism`].
pub fn isomorphic(a: &IncidenceStructure, b: &IncidenceStructure) -> bool {
    isomorphism(a, b).is_some()
}

/// Backtracking search for a point bijection carrying long lines onto long
/// lines. Returns `witness[p]` = image of point `p` of `a` in `b`.
///
/// Candidates are filtered by line-size signature; every assignment extends a
/// partial line map which must stay a bijection, so collinearity is preserved
/// in both directions.
pub fn isomorphism(a: &IncidenceStructure, b: &IncidenceStructure) -> Option<Vec<usize>> {
    let n = a.point_count();
    if n != b.point_count() || a.line_count() != b.line_count() {
        return None;
    }
    let sig_a: Vec<Vec<usize>> = (0..n).map(|p| a.signature(p)).collect();
    let sig_b: Vec<Vec<usize>> = (0..n).map(|p| b.signature(p)).collect();
    let mut sa = sig_a.clone();
    let mut sb = sig_b.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let mut la: Vec<usize> = a.lines.iter().map(Vec::len).collect();
    let mut lb: Vec<usize> = b.lines.iter().map(Vec::len).collect();
    la.sort_unstable();
    lb.sort_unstable();
    if la != lb {
        return None;
    }

    // Greedy order: each next point shares the most long lines with those placed.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    for _ in 0..n {
        let next = (0..n)
            .filter(|&p| !placed[p])
            .max_by_key(|&p| (links[p], sig_a[p].len(), std::cmp::Reverse(p)))
            .expect("unplaced point remains");
        placed[next] = true;
        order.push(next);
        for &l in &a.point_lines[next] {
            for &q in &a.lines[l] {
                links[q] += 1;
            }
        }
    }

    let mut search = IsoSearch {
        a,
        b,
        sig_a,
        sig_b,
        order,
        image: vec![usize::MAX; n],
        used: vec![false; n],
        line_fwd: vec![usize::MAX; a.line_count()],
        line_back: vec![usize::MAX; b.line_count()],
    };
    if search.extend(0) {
        Some(search.image)
    } else {
        None
    }
}

struct IsoSearch<'s> {
    a: &'s IncidenceStructure,
    b: &'s IncidenceStructure,
    sig_a: Vec<Vec<usize>>,
    sig_b: Vec<Vec<usize>>,
    order: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
    line_fwd: Vec<usize>,
    line_back: Vec<usize>,
}

impl IsoSearch<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        for y in 0..self.b.point_count() {
            if self.used[y] || self.sig_a[x] != self.sig_b[y] {
                continue;
            }
            let mut bound = Vec::new();
            if self.try_assign(x, y, depth, &mut bound) {
                self.image[x] = y;
                self.used[y] = true;
                if self.extend(depth + 1) {
                    return true;
                }
                self.image[x] = usize::MAX;
                self.used[y] = false;
            }
            for l in bound {
                let m = self.line_fwd[l];
                self.line_back[m] = usize::MAX;
                self.line_fwd[l] = usize::MAX;
            }
        }
        false
    }

    /// Check `x -> y` against every placed point, binding lines as it goes.
    /// Newly bound lines are recorded in `bound` for the caller to undo.
    fn try_assign(&mut self, x: usize, y: usize, depth: usize, bound: &mut Vec<usize>) -> bool {
        for i in 0..depth {
            let u = self.order[i];
            let v = self.image[u];
            match (self.a.join(x, u), self.b.join(y, v)) {
                (None, None) => {}
                (Some(la), Some(lb)) => {
                    let fwd = self.line_fwd[la];
                    let back = self.line_back[lb];
                    if fwd == usize::MAX && back == usize::MAX {
                        if self.a.lines[la].len() != self.b.lines[lb].len() {
                            return false;
                        }
                        self.line_fwd[la] = lb;
                        self.line_back[lb] = la;
                        bound.push(la);
                    } else if fwd != lb || back != la {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn single_line() {
        let s = IncidenceStructure::build(labels(3), vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(s.line_of(0, 2).unwrap(), LineRef::Long(0));
    }

    #[test]
    fn rejects_two_common_points() {
        let err = IncidenceStructure::build(labels(4), vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap_err();
        assert!(matches!(err, IncidenceError::SharedPair { p: 0, q: 1, .. }));
    }

    #[test]
    fn rejects_short_and_unknown() {
        assert!(matches!(
            IncidenceStructure::build(labels(3), vec![vec![0, 1]]),
            Err(IncidenceError::ShortLine { .. })
        ));
        assert!(matches!(
            IncidenceStructure::build(labels(3), vec![vec![0, 1, 7]]),
            Err(IncidenceError::UnknownPoint { point: 7, .. })
        ));
        assert!(matches!(
            IncidenceStructure::build(labels(3), vec![vec![0, 1, 1]]),
            Err(IncidenceError::RepeatedPoint { .. })
        ));
    }

    #[test]
    fn implicit_pairs_and_symmetry() {
        let s = IncidenceStructure::build(labels(5), vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(s.line_of(3, 4).unwrap(), LineRef::Pair(3, 4));
        assert_eq!(s.line_of(4, 3).unwrap(), s.line_of(3, 4).unwrap());
        assert_eq!(s.line_of(2, 0).unwrap(), s.line_of(0, 2).unwrap());
        assert_eq!(s.line_of(1, 1).unwrap_err(), IncidenceError::SamePoint(1));
    }

    fn fano() -> IncidenceStructure {
        let lines = vec![
            vec![0, 1, 2],
            vec![0, 3, 4],
            vec![0, 5, 6],
            vec![1, 3, 5],
            vec![1, 4, 6],
            vec![2, 3, 6],
            vec![2, 4, 5],
        ];
        IncidenceStructure::build(labels(7), lines).unwrap()
    }

    #[test]
    fn restrict_identity_and_traces() {
        let f = fano();
        assert_eq!(f.restrict(&(0..7).collect::<Vec<_>>()).unwrap(), f);
        let r = f.restrict(&[0, 1, 2, 3]).unwrap();
        assert_eq!(r.line_count(), 1);
        assert_eq!(r.point_count(), 4);
    }

    #[test]
    fn isomorphism_reflexive_and_relabelled() {
        let f = fano();
        let id = isomorphism(&f, &f).unwrap();
        let check = |w: &[usize], a: &IncidenceStructure, b: &IncidenceStructure| {
            for line in a.lines() {
                let img: Vec<usize> = line.iter().map(|&p| w[p]).collect();
                assert!(b.collinear(img[0], img[1], img[2]));
            }
        };
        check(&id, &f, &f);
        // permute labels
        let perm = [3, 6, 0, 2, 5, 1, 4];
        let lines: Vec<Vec<usize>> = f.lines().iter().map(|l| l.iter().map(|&p| perm[p]).collect()).collect();
        let g = IncidenceStructure::build(labels(7), lines).unwrap();
        let w = isomorphism(&f, &g).unwrap();
        check(&w, &f, &g);
        let w2 = isomorphism(&g, &f).unwrap();
        check(&w2, &g, &f);
    }

    #[test]
    fn non_isomorphic_same_counts() {
        // Two 3-point lines meeting vs. disjoint
        let meet = IncidenceStructure::build(labels(6), vec![vec![0, 1, 2], vec![0, 3, 4]]).unwrap();
        let apart = IncidenceStructure::build(labels(6), vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert!(!isomorphic(&meet, &apart));
    }

    #[test]
    fn json_round_trip() {
        let f = fano();
        let j = serde_json::to_string(&f.to_json()).unwrap();
        let back: StructureJson = serde_json::from_str(&j).unwrap();
        assert_eq!(IncidenceStructure::from_json(&back).unwrap(), f);
    }
}
