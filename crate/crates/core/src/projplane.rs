//! Homogeneous-coordinate geometry in PG(2, F) and the materialized finite
//! planes PG(2, q).

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::bitset::BitSet;
use crate::gf::{Field, FieldElement, GfError, Scalar};
use crate::incidence::Incidence;

/// Largest field order for which a plane is materialized.
pub const MAX_PLANE_ORDER: u64 = 32;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaneError {
    #[error("homogeneous coordinates cannot all be zero")]
    ZeroVector,
    #[error("the two points coincide")]
    SamePoint,
    #[error("the two lines coincide")]
    SameLine,
    #[error("points are not collinear")]
    NotCollinear,
    #[error("points are not pairwise distinct")]
    NotDistinct,
    #[error("PG(2,{0}) is too large to materialize")]
    TooLarge(u64),
    #[error("point is not in the plane")]
    UnknownPoint,
    #[error(transparent)]
    Field(#[from] GfError),
}

fn normalize<S: Scalar>(v: [S; 3]) -> Option<[S; 3]> {
    let lead = v.iter().find(|c| !c.is_zero())?.clone();
    Some(v.map(|c| c.div(&lead)))
}

fn cross<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

fn dot<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> S {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

/// A point with its first nonzero coordinate scaled to 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ProjPoint<S> {
    coords: [S; 3],
}

/// A line `a·x + b·y + c·z = 0`, normalized like a point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ProjLine<S> {
    coords: [S; 3],
}

impl<S: Scalar> ProjPoint<S> {
    pub fn new(x: S, y: S, z: S) -> Result<Self, PlaneError> {
        normalize([x, y, z])
            .map(|coords| ProjPoint { coords })
            .ok_or(PlaneError::ZeroVector)
    }

    pub fn coords(&self) -> &[S; 3] {
        &self.coords
    }

    pub fn text(&self) -> String {
        self.coords.iter().map(Scalar::to_text).collect::<Vec<_>>().join(":")
    }
}

impl<S: Scalar> ProjLine<S> {
    pub fn new(a: S, b: S, c: S) -> Result<Self, PlaneError> {
        normalize([a, b, c])
            .map(|coords| ProjLine { coords })
            .ok_or(PlaneError::ZeroVector)
    }

    pub fn coords(&self) -> &[S; 3] {
        &self.coords
    }

    pub fn text(&self) -> String {
        self.coords.iter().map(Scalar::to_text).collect::<Vec<_>>().join(":")
    }
}

impl<S: Scalar> serde::Serialize for ProjPoint<S> {
    fn serialize<T: serde::Serializer>(&self, s: T) -> Result<T::Ok, T::Error> {
        s.serialize_str(&self.text())
    }
}

impl<S: Scalar> fmt::Display for ProjPoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.text())
    }
}

impl<S: Scalar> fmt::Display for ProjLine<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.text())
    }
}

pub fn line_through<S: Scalar>(p: &ProjPoint<S>, q: &ProjPoint<S>) -> Result<ProjLine<S>, PlaneError> {
    normalize(cross(&p.coords, &q.coords))
        .map(|coords| ProjLine { coords })
        .ok_or(PlaneError::SamePoint)
}

pub fn meet<S: Scalar>(l1: &ProjLine<S>, l2: &ProjLine<S>) -> Result<ProjPoint<S>, PlaneError> {
    normalize(cross(&l1.coords, &l2.coords))
        .map(|coords| ProjPoint { coords })
        .ok_or(PlaneError::SameLine)
}

pub fn incident<S: Scalar>(p: &ProjPoint<S>, l: &ProjLine<S>) -> bool {
    dot(&p.coords, &l.coords).is_zero()
}

/// Zero determinant of the three coordinate rows.
pub fn collinear<S: Scalar>(p: &ProjPoint<S>, q: &ProjPoint<S>, r: &ProjPoint<S>) -> bool {
    dot(&p.coords, &cross(&q.coords, &r.coords)).is_zero()
}

/// Fourth harmonic point: with `e = μd + νf` for the fixed normalized
/// representatives, return `μd − νf`.
pub fn harmonic_conjugate_coord<S: Scalar>(
    d: &ProjPoint<S>,
    f: &ProjPoint<S>,
    e: &ProjPoint<S>,
) -> Result<ProjPoint<S>, PlaneError> {
    if d == f || d == e || e == f {
        return Err(PlaneError::NotDistinct);
    }
    if !collinear(d, f, e) {
        return Err(PlaneError::NotCollinear);
    }
    let (dv, fv, ev) = (&d.coords, &f.coords, &e.coords);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let det = dv[i].mul(&fv[j]).sub(&dv[j].mul(&fv[i]));
        if det.is_zero() {
            continue;
        }
        let mu = ev[i].mul(&fv[j]).sub(&ev[j].mul(&fv[i])).div(&det);
        let nu = dv[i].mul(&ev[j]).sub(&dv[j].mul(&ev[i])).div(&det);
        let h = [0, 1, 2].map(|c| mu.mul(&dv[c]).sub(&nu.mul(&fv[c])));
        return normalize(h)
            .map(|coords| ProjPoint { coords })
            .ok_or(PlaneError::NotDistinct);
    }
    unreachable!("distinct points have an independent coordinate pair")
}

#[derive(Debug, Clone, Serialize)]
pub struct PlaneJson {
    pub q: u64,
    pub points: Vec<String>,
    pub lines: Vec<Vec<usize>>,
}

/// PG(2, q) with every point and line enumerated and indexed.
///
/// Points and lines are listed in lexicographic order of their normalized
/// coordinates. Harmonic conjugates are tabulated per line on first use.
pub struct FinitePlane {
    field: Field,
    points: Vec<ProjPoint<FieldElement>>,
    point_index: HashMap<ProjPoint<FieldElement>, usize>,
    lines: Vec<ProjLine<FieldElement>>,
    line_index: HashMap<ProjLine<FieldElement>, usize>,
    line_points: Vec<Vec<usize>>,
    membership: Vec<BitSet>,
    point_lines: Vec<Vec<usize>>,
    join: Vec<u32>,
    /// Position of each point within each line, `line * n + point`.
    position: Vec<u16>,
    conjugates: Vec<OnceLock<Vec<u32>>>,
}

impl fmt::Debug for FinitePlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PG(2,{})", self.order())
    }
}

fn all_normalized(field: &Field) -> Vec<[FieldElement; 3]> {
    let elems = field.elements();
    let (zero, one) = (field.zero(), field.one());
    let mut out = vec![[zero.clone(), zero.clone(), one.clone()]];
    for z in &elems {
        out.push([zero.clone(), one.clone(), z.clone()]);
    }
    for y in &elems {
        for z in &elems {
            out.push([one.clone(), y.clone(), z.clone()]);
        }
    }
    out.sort();
    out
}

impl FinitePlane {
    pub fn new(field: Field) -> Result<FinitePlane, PlaneError> {
        let q = field.cardinality();
        if q > MAX_PLANE_ORDER {
            return Err(PlaneError::TooLarge(q));
        }
        let points: Vec<ProjPoint<FieldElement>> =
            all_normalized(&field).into_iter().map(|coords| ProjPoint { coords }).collect();
        let lines: Vec<ProjLine<FieldElement>> =
            all_normalized(&field).into_iter().map(|coords| ProjLine { coords }).collect();
        let n = points.len();
        let point_index = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let line_index = lines.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let mut line_points = vec![Vec::new(); n];
        let mut point_lines = vec![Vec::new(); n];
        for (li, l) in lines.iter().enumerate() {
            for (pi, p) in points.iter().enumerate() {
                if incident(p, l) {
                    line_points[li].push(pi);
                    point_lines[pi].push(li);
                }
            }
        }
        let mut join = vec![NONE; n * n];
        let mut position = vec![u16::MAX; n * n];
        for (li, pts) in line_points.iter().enumerate() {
            for (i, &a) in pts.iter().enumerate() {
                position[li * n + a] = i as u16;
                for &b in &pts[i + 1..] {
                    join[a * n + b] = li as u32;
                    join[b * n + a] = li as u32;
                }
            }
        }
        let membership = line_points
            .iter()
            .map(|pts| BitSet::from_indices(n, pts.iter().copied()))
            .collect();
        Ok(FinitePlane {
            field,
            points,
            point_index,
            lines,
            line_index,
            line_points,
            membership,
            point_lines,
            join,
            position,
            conjugates: (0..n).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn with_order(p: u32, k: usize) -> Result<FinitePlane, PlaneError> {
        FinitePlane::new(Field::new(p, k)?)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> u64 {
        self.field.cardinality()
    }

    pub fn point(&self, i: usize) -> &ProjPoint<FieldElement> {
        &self.points[i]
    }

    pub fn points(&self) -> &[ProjPoint<FieldElement>] {
        &self.points
    }

    pub fn line(&self, i: usize) -> &ProjLine<FieldElement> {
        &self.lines[i]
    }

    pub fn index_of(&self, p: &ProjPoint<FieldElement>) -> Option<usize> {
        self.point_index.get(p).copied()
    }

    pub fn line_index_of(&self, l: &ProjLine<FieldElement>) -> Option<usize> {
        self.line_index.get(l).copied()
    }

    /// Index of the point with the given coordinates (need not be normalized).
    pub fn locate(&self, x: &FieldElement, y: &FieldElement, z: &FieldElement) -> Result<usize, PlaneError> {
        let p = ProjPoint::new(x.clone(), y.clone(), z.clone())?;
        self.index_of(&p).ok_or(PlaneError::UnknownPoint)
    }

    pub fn lines_through(&self, p: usize) -> &[usize] {
        &self.point_lines[p]
    }

    pub fn line_set(&self, line: usize) -> &BitSet {
        &self.membership[line]
    }

    fn conjugate_table(&self, line: usize) -> &[u32] {
        self.conjugates[line].get_or_init(|| {
            let pts = &self.line_points[line];
            let m = pts.len();
            let mut table = vec![NONE; m * m * m];
            for (i, &d) in pts.iter().enumerate() {
                for (j, &f) in pts.iter().enumerate() {
                    for (l, &e) in pts.iter().enumerate() {
                        if i == j || i == l || j == l {
                            continue;
                        }
                        let h = harmonic_conjugate_coord(&self.points[d], &self.points[f], &self.points[e])
                            .expect("distinct collinear points");
                        table[(i * m + j) * m + l] = self.point_index[&h] as u32;
                    }
                }
            }
            table
        })
    }

    /// Harmonic conjugate of `e` with respect to `d` and `f`, by table lookup.
    pub fn conjugate(&self, d: usize, f: usize, e: usize) -> Result<usize, PlaneError> {
        if d == f || d == e || e == f {
            return Err(PlaneError::NotDistinct);
        }
        let n = self.points.len();
        let line = self.join[d * n + f] as usize;
        if !self.membership[line].contains(e) {
            return Err(PlaneError::NotCollinear);
        }
        let m = self.line_points[line].len();
        let pos = |x: usize| self.position[line * n + x] as usize;
        Ok(self.conjugate_table(line)[(pos(d) * m + pos(f)) * m + pos(e)] as usize)
    }

    pub fn to_json(&self) -> PlaneJson {
        PlaneJson {
            q: self.order(),
            points: self.points.iter().map(ProjPoint::text).collect(),
            lines: self.line_points.clone(),
        }
    }
}

impl Incidence for FinitePlane {
    fn point_count(&self) -> usize {
        self.points.len()
    }

    fn line_count(&self) -> usize {
        self.lines.len()
    }

    fn join(&self, p: usize, q: usize) -> Option<usize> {
        match self.join[p * self.points.len() + q] {
            NONE => None,
            l => Some(l as usize),
        }
    }

    fn line_points(&self, line: usize) -> &[usize] {
        &self.line_points[line]
    }

    fn on_line(&self, p: usize, line: usize) -> bool {
        self.membership[line].contains(p)
    }

    fn collinear(&self, a: usize, b: usize, c: usize) -> bool {
        if a == b || a == c || b == c {
            return true;
        }
        self.membership[self.join[a * self.points.len() + b] as usize].contains(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Rational;

    fn pt(f: &Field, c: [i64; 3]) -> ProjPoint<FieldElement> {
        ProjPoint::new(f.from_int(c[0]), f.from_int(c[1]), f.from_int(c[2])).unwrap()
    }

    #[test]
    fn axes_and_cross_product() {
        let f = Field::new(3, 1).unwrap();
        let l = line_through(&pt(&f, [1, 0, 0]), &pt(&f, [0, 1, 0])).unwrap();
        assert_eq!(l.text(), "0:0:1");
        let l = line_through(&pt(&f, [1, 0, 0]), &pt(&f, [1, 1, 1])).unwrap();
        assert_eq!(l.text(), "0:1:2");
        assert_eq!(line_through(&pt(&f, [1, 1, 1]), &pt(&f, [2, 2, 2])), Err(PlaneError::SamePoint));
    }

    #[test]
    fn meet_of_axes() {
        let f = Field::new(5, 1).unwrap();
        let z0 = ProjLine::new(f.zero(), f.zero(), f.one()).unwrap();
        let y0 = ProjLine::new(f.zero(), f.one(), f.zero()).unwrap();
        assert_eq!(meet(&z0, &y0).unwrap(), pt(&f, [1, 0, 0]));
        assert_eq!(meet(&z0, &z0), Err(PlaneError::SameLine));
    }

    #[test]
    fn small_conjugates() {
        let f3 = Field::new(3, 1).unwrap();
        let h = harmonic_conjugate_coord(&pt(&f3, [1, 0, 0]), &pt(&f3, [0, 1, 0]), &pt(&f3, [1, 1, 0])).unwrap();
        assert_eq!(h, pt(&f3, [1, 2, 0]));
        let f5 = Field::new(5, 1).unwrap();
        let h = harmonic_conjugate_coord(&pt(&f5, [1, 0, 0]), &pt(&f5, [0, 1, 0]), &pt(&f5, [1, 1, 0])).unwrap();
        assert_eq!(h, pt(&f5, [1, 4, 0]));
        assert_eq!(
            harmonic_conjugate_coord(&pt(&f5, [1, 0, 0]), &pt(&f5, [0, 1, 0]), &pt(&f5, [0, 0, 1])),
            Err(PlaneError::NotCollinear)
        );
    }

    #[test]
    fn rational_conjugate() {
        let r = |n| Rational::integer(n);
        let d = ProjPoint::new(r(1), r(0), r(0)).unwrap();
        let f = ProjPoint::new(r(0), r(1), r(0)).unwrap();
        let e = ProjPoint::new(r(1), r(1), r(0)).unwrap();
        let h = harmonic_conjugate_coord(&d, &f, &e).unwrap();
        assert_eq!(h.text(), "1/1:-1/1:0/1");
    }

    #[test]
    fn counts_and_duality() {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)] {
            let plane = FinitePlane::with_order(p, k).unwrap();
            let q = plane.order() as usize;
            let n = q * q + q + 1;
            assert_eq!(plane.point_count(), n);
            assert_eq!(plane.line_count(), n);
            for l in 0..n {
                assert_eq!(plane.line_points(l).len(), q + 1);
            }
            for p in 0..n {
                assert_eq!(plane.lines_through(p).len(), q + 1);
            }
            // meet of two lines through a point is that point
            for (i, point) in plane.points().iter().enumerate().step_by(3) {
                let ls = plane.lines_through(i);
                let m = meet(plane.line(ls[0]), plane.line(ls[1])).unwrap();
                assert_eq!(&m, point);
            }
        }
    }

    #[test]
    fn conjugation_involution_and_symmetry() {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)] {
            let plane = FinitePlane::with_order(p, k).unwrap();
            for l in 0..plane.line_count() {
                let pts = plane.line_points(l);
                for &d in pts {
                    for &f in pts {
                        for &e in pts {
                            if d == f || d == e || e == f {
                                continue;
                            }
                            let h = plane.conjugate(d, f, e).unwrap();
                            assert_eq!(h, plane.conjugate(f, d, e).unwrap());
                            if p == 2 {
                                assert_eq!(h, e);
                            } else {
                                assert_ne!(h, e);
                                assert_eq!(plane.conjugate(d, f, h).unwrap(), e);
                            }
                        }
                    }
                }
            }
        }
    }
}
