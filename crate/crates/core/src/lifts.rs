//! Complete lift matroids `L_m^k` over the group `(Z_m)^k`, Reid cycle
//! matroids and their higher analogues, the standard coordinate embedding,
//! and a backtracking search for linear representations in PG(2, q).

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::gf::{Rational, Scalar};
use crate::incidence::{Incidence, IncidenceError, IncidenceStructure};
use crate::projplane::FinitePlane;

/// Largest group order accepted by the constructors.
pub const MAX_GROUP_ORDER: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("group (Z_{m})^{k} needs m >= 2 and k >= 1")]
    BadGroup { m: u32, k: usize },
    #[error("group (Z_{m})^{k} is too large")]
    TooLarge { m: u32, k: usize },
    #[error("delta must be nonzero")]
    ZeroDelta,
    #[error("epsilon equals g, so phi is not injective")]
    DegeneratePhi,
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("plane PG(2,{q}) does not match the group (Z_{p})^{k}")]
    FieldMismatch { q: u64, p: u32, k: usize },
    #[error("embedding {0}")]
    BadEmbedding(String),
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
}

/// The additive group `(Z_m)^k`, elements indexed by their coefficient
/// vectors read as base-`m` numerals (first coefficient most significant).
/// For prime `m` this agrees with the element order of GF(m^k).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Group {
    m: u32,
    k: usize,
}

impl Group {
    pub fn new(m: u32, k: usize) -> Result<Group, LiftError> {
        if m < 2 || k < 1 {
            return Err(LiftError::BadGroup { m, k });
        }
        match (m as usize).checked_pow(k as u32) {
            Some(n) if n <= MAX_GROUP_ORDER => Ok(Group { m, k }),
            _ => Err(LiftError::TooLarge { m, k }),
        }
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        (self.m as usize).pow(self.k as u32)
    }

    pub fn coeffs(&self, g: usize) -> Vec<u32> {
        let m = self.m as usize;
        let mut out = vec![0u32; self.k];
        let mut rest = g;
        for slot in out.iter_mut().rev() {
            *slot = (rest % m) as u32;
            rest /= m;
        }
        out
    }

    pub fn index(&self, coeffs: &[u32]) -> usize {
        coeffs.iter().fold(0, |acc, &c| acc * self.m as usize + (c % self.m) as usize)
    }

    fn combine(&self, a: usize, b: usize, op: impl Fn(i64, i64) -> i64) -> usize {
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let m = self.m as i64;
        let c: Vec<u32> = ca
            .iter()
            .zip(&cb)
            .map(|(&x, &y)| op(x as i64, y as i64).rem_euclid(m) as u32)
            .collect();
        self.index(&c)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, |x, y| x + y)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, |x, y| x - y)
    }

    pub fn neg(&self, a: usize) -> usize {
        self.sub(0, a)
    }

    /// `t · a` for an integer `t`.
    pub fn scale(&self, t: i64, a: usize) -> usize {
        self.combine(a, a, |x, _| t * x)
    }

    /// The `j`-th standard basis vector.
    pub fn basis(&self, j: usize) -> usize {
        let mut c = vec![0u32; self.k];
        c[j] = 1;
        self.index(&c)
    }

    pub fn text(&self, g: usize) -> String {
        self.coeffs(g).iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn parse(&self, text: &str) -> Option<usize> {
        let c: Vec<u32> = text.split(',').map(|s| s.trim().parse().ok()).collect::<Option<_>>()?;
        (c.len() == self.k && c.iter().all(|&x| x < self.m)).then(|| self.index(&c))
    }
}

/// Which of the three special lines a lift point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Tag {
    A,
    B,
    C,
    D,
}

/// `L_m^k` with points `a_g = g`, `b_g = N + g`, `c_g = 2N + g`, `D = 3N`.
#[derive(Debug, Clone)]
pub struct Lift {
    group: Group,
    structure: IncidenceStructure,
}

impl Lift {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn structure(&self) -> &IncidenceStructure {
        &self.structure
    }

    pub fn a(&self, g: usize) -> usize {
        g
    }

    pub fn b(&self, g: usize) -> usize {
        self.group.order() + g
    }

    pub fn c(&self, g: usize) -> usize {
        2 * self.group.order() + g
    }

    pub fn d(&self) -> usize {
        3 * self.group.order()
    }

    /// Tag and group element of a point (`D` carries element 0).
    pub fn decode(&self, point: usize) -> (Tag, usize) {
        let n = self.group.order();
        match point / n {
            0 => (Tag::A, point),
            1 => (Tag::B, point - n),
            2 => (Tag::C, point - 2 * n),
            _ => (Tag::D, 0),
        }
    }

    pub fn encode(&self, tag: Tag, g: usize) -> usize {
        match tag {
            Tag::A => self.a(g),
            Tag::B => self.b(g),
            Tag::C => self.c(g),
            Tag::D => self.d(),
        }
    }
}

/// Point label in the canonical scheme ("a:1,0", "D", ...).
pub fn lift_label(group: &Group, tag: Tag, g: usize) -> String {
    match tag {
        Tag::A => format!("a:{}", group.text(g)),
        Tag::B => format!("b:{}", group.text(g)),
        Tag::C => format!("c:{}", group.text(g)),
        Tag::D => "D".to_string(),
    }
}

/// `L_m^k`: `3m^k + 1` points, long lines A, B, C and every `{a_g, b_{g+h}, c_h}`.
pub fn build_lift(m: u32, k: usize) -> Result<Lift, LiftError> {
    let group = Group::new(m, k)?;
    let n = group.order();
    let mut labels = Vec::with_capacity(3 * n + 1);
    for tag in [Tag::A, Tag::B, Tag::C] {
        labels.extend((0..n).map(|g| lift_label(&group, tag, g)));
    }
    labels.push("D".to_string());
    let d = 3 * n;
    let mut lines = Vec::with_capacity(n * n + 3);
    for off in 0..3 {
        lines.push((off * n..(off + 1) * n).chain([d]).collect::<Vec<_>>());
    }
    for g in 0..n {
        for h in 0..n {
            lines.push(vec![g, n + group.add(g, h), 2 * n + h]);
        }
    }
    let structure = IncidenceStructure::build(labels, lines)?;
    Ok(Lift { group, structure })
}

/// Point set of the Reid cycle matroid: `L_m` without `c_2, …, c_{m-1}`.
pub fn reid_points(lift: &Lift) -> Vec<usize> {
    let n = lift.group.order();
    (0..3 * n + 1)
        .filter(|&p| match lift.decode(p) {
            (Tag::C, g) => g < 2,
            _ => true,
        })
        .collect()
}

pub fn build_reid(m: u32) -> Result<IncidenceStructure, LiftError> {
    let lift = build_lift(m, 1)?;
    Ok(lift.structure.restrict(&reid_points(&lift))?)
}

/// Generator set `G = {0, e_1, …, e_k}`.
pub fn generator_set(group: &Group) -> Vec<usize> {
    std::iter::once(0).chain((0..group.rank()).map(|j| group.basis(j))).collect()
}

/// Point set of the higher Reid cycle matroid: `A ∪ B ∪ {c_f : f ∈ G}`.
pub fn higher_reid_points(lift: &Lift) -> Vec<usize> {
    let gens: BTreeSet<usize> = generator_set(&lift.group).into_iter().collect();
    let n = lift.group.order();
    (0..3 * n + 1)
        .filter(|&p| match lift.decode(p) {
            (Tag::C, g) => gens.contains(&g),
            _ => true,
        })
        .collect()
}

pub fn build_higher_reid(m: u32, k: usize) -> Result<IncidenceStructure, LiftError> {
    let lift = build_lift(m, k)?;
    Ok(lift.structure.restrict(&higher_reid_points(&lift))?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReidParams {
    pub alpha: usize,
    pub delta: usize,
    pub gamma: usize,
}

impl ReidParams {
    /// `α_i = α + iδ`.
    pub fn alpha_i(&self, group: &Group, i: i64) -> usize {
        group.add(self.alpha, group.scale(i, self.delta))
    }

    /// `β_i = α_i + γ`.
    pub fn beta_i(&self, group: &Group, i: i64) -> usize {
        group.add(self.alpha_i(group, i), self.gamma)
    }
}

/// Points `{a_{α+tδ}, b_{γ+α+tδ}} ∪ {c_γ, c_{γ+δ}, D}` of the Reid submatroid.
pub fn reid_submatroid_points(lift: &Lift, params: &ReidParams) -> Result<Vec<usize>, LiftError> {
    if params.delta == 0 {
        return Err(LiftError::ZeroDelta);
    }
    let g = &lift.group;
    let mut pts = BTreeSet::new();
    for t in 0..g.modulus() as i64 {
        pts.insert(lift.a(params.alpha_i(g, t)));
        pts.insert(lift.b(params.beta_i(g, t)));
    }
    pts.insert(lift.c(params.gamma));
    pts.insert(lift.c(g.add(params.gamma, params.delta)));
    pts.insert(lift.d());
    Ok(pts.into_iter().collect())
}

pub fn reid_submatroid(lift: &Lift, params: &ReidParams) -> Result<IncidenceStructure, LiftError> {
    Ok(lift.structure.restrict(&reid_submatroid_points(lift, params)?)?)
}

/// Images in PG(2, p^k): `a_g ↦ [1:0:g]`, `b_s ↦ [1:1:s]`, `c_h ↦ [0:1:h]`,
/// `D ↦ [0:0:1]`, as plane point indices.
pub fn embed_lift(lift: &Lift, plane: &FinitePlane) -> Result<Vec<usize>, LiftError> {
    let group = lift.group;
    let field = plane.field();
    if field.characteristic() != group.modulus() || field.degree() != group.rank() {
        return Err(LiftError::FieldMismatch {
            q: plane.order(),
            p: group.modulus(),
            k: group.rank(),
        });
    }
    let (zero, one) = (field.zero(), field.one());
    let n = group.order();
    let mut images = Vec::with_capacity(3 * n + 1);
    let locate = |x: &_, y: &_, z: &_| plane.locate(x, y, z).map_err(|e| LiftError::BadEmbedding(e.to_string()));
    for g in 0..n {
        images.push(locate(&one, &zero, &field.element_at(g))?);
    }
    for s in 0..n {
        images.push(locate(&one, &one, &field.element_at(s))?);
    }
    for h in 0..n {
        images.push(locate(&zero, &one, &field.element_at(h))?);
    }
    images.push(locate(&zero, &zero, &one)?);
    Ok(images)
}

/// A map from `structure` into `plane` is a representation when it is
/// injective and a triple is collinear in the plane exactly when it lies on
/// a long line of the structure.
pub fn check_representation(structure: &IncidenceStructure, plane: &FinitePlane, images: &[usize]) -> Result<(), String> {
    let n = structure.point_count();
    if images.len() != n {
        return Err(format!("{} images for {} points", images.len(), n));
    }
    let distinct: BTreeSet<_> = images.iter().collect();
    if distinct.len() != n {
        return Err("map is not injective".to_string());
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let abstract_line = structure.collinear(a, b, c);
                let image_line = plane.collinear(images[a], images[b], images[c]);
                if abstract_line != image_line {
                    return Err(format!(
                        "{{{}, {}, {}}} collinear in structure: {abstract_line}, in plane: {image_line}",
                        structure.label(a),
                        structure.label(b),
                        structure.label(c)
                    ));
                }
            }
        }
    }
    Ok(())
}

/// `a_g ↦ a_{g+α}`, `b_s ↦ b_{s+α+β}`, `c_h ↦ c_{h+β}`, `D ↦ D`.
pub fn lift_automorphism(lift: &Lift, alpha: usize, beta: usize) -> Vec<usize> {
    let g = &lift.group;
    (0..lift.structure.point_count())
        .map(|p| match lift.decode(p) {
            (Tag::A, x) => lift.a(g.add(x, alpha)),
            (Tag::B, x) => lift.b(g.add(x, g.add(alpha, beta))),
            (Tag::C, x) => lift.c(g.add(x, beta)),
            (Tag::D, _) => lift.d(),
        })
        .collect()
}

/// True when `perm` is a bijection mapping every long line onto a long line.
pub fn is_automorphism(structure: &IncidenceStructure, perm: &[usize]) -> bool {
    let n = structure.point_count();
    if perm.len() != n || perm.iter().collect::<BTreeSet<_>>().len() != n {
        return false;
    }
    let lines: BTreeSet<Vec<usize>> = structure.lines().iter().cloned().collect();
    structure.lines().iter().all(|l| {
        let mut img: Vec<usize> = l.iter().map(|&p| perm[p]).collect();
        img.sort_unstable();
        lines.contains(&img)
    })
}

/// `φ_ε(t) = tε − tg + h` in the group.
pub fn phi(group: &Group, epsilon: usize, g: usize, h: usize, t: i64) -> Result<usize, LiftError> {
    if epsilon == g {
        return Err(LiftError::DegeneratePhi);
    }
    Ok(group.add(group.sub(group.scale(t, epsilon), group.scale(t, g)), h))
}

/// `φ_ε(t) = tε − tg + h` over the rationals.
pub fn phi_rational(epsilon: &Rational, g: &Rational, h: &Rational, t: i64) -> Result<Rational, LiftError> {
    if epsilon == g {
        return Err(LiftError::DegeneratePhi);
    }
    let t = Rational::integer(t);
    Ok(t.mul(&epsilon.sub(g)).add(h))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Representation {
    Found { images: Vec<usize>, nodes: u64 },
    None { nodes: u64 },
    Timeout { nodes: u64 },
}

impl Representation {
    pub fn verdict(&self) -> &'static str {
        match self {
            Representation::Found { .. } => "found",
            Representation::None { .. } => "none",
            Representation::Timeout { .. } => "timeout",
        }
    }
}

/// Four points, no three on a common long line, chosen greedily by degree.
fn find_frame(s: &IncidenceStructure) -> Option<[usize; 4]> {
    let n = s.point_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&p| (std::cmp::Reverse(s.lines_through(p).len()), p));
    let ok = |pts: &[usize]| {
        (0..pts.len()).all(|i| {
            (i + 1..pts.len()).all(|j| (j + 1..pts.len()).all(|k| !s.collinear(pts[i], pts[j], pts[k])))
        })
    };
    fn pick(order: &[usize], chosen: &mut Vec<usize>, start: usize, ok: &dyn Fn(&[usize]) -> bool) -> bool {
        if chosen.len() == 4 {
            return true;
        }
        for i in start..order.len() {
            chosen.push(order[i]);
            if ok(chosen) && pick(order, chosen, i + 1, ok) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    pick(&order, &mut chosen, 0, &ok).then(|| [chosen[0], chosen[1], chosen[2], chosen[3]])
}

struct RepSearch<'a> {
    s: &'a IncidenceStructure,
    plane: &'a FinitePlane,
    order: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl RepSearch<'_> {
    fn consistent(&self, x: usize, y: usize, placed: &[usize]) -> bool {
        for (i, &u) in placed.iter().enumerate() {
            for &v in &placed[i + 1..] {
                let want = self.s.collinear(x, u, v);
                if want != self.plane.collinear(y, self.image[u], self.image[v]) {
                    return false;
                }
            }
        }
        true
    }

    fn candidates(&self, x: usize) -> Vec<usize> {
        for &l in self.s.lines_through(x) {
            let on: Vec<usize> = self.s.line_points(l).iter().copied().filter(|&p| self.image[p] != usize::MAX).collect();
            if on.len() >= 2 {
                let pl = self.plane.join(self.image[on[0]], self.image[on[1]]).expect("distinct images");
                return self.plane.line_points(pl).to_vec();
            }
        }
        (0..self.plane.point_count()).collect()
    }

    /// `Ok(true)` found, `Ok(false)` exhausted, `Err(())` budget exceeded.
    fn extend(&mut self, depth: usize) -> Result<bool, ()> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let x = self.order[depth];
        let placed: Vec<usize> = self.order[..depth].to_vec();
        for y in self.candidates(x) {
            if self.used[y] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(());
            }
            if !self.consistent(x, y, &placed) {
                continue;
            }
            self.image[x] = y;
            self.used[y] = true;
            if self.extend(depth + 1)? {
                return Ok(true);
            }
            self.image[x] = usize::MAX;
            self.used[y] = false;
        }
        Ok(false)
    }
}

/// Exhaustive search for a representation of `s` in `plane`, modulo the
/// projective group: a frame of `s` is pinned to the standard frame first.
/// `budget` caps the number of candidate assignments tried.
pub fn search_representation(s: &IncidenceStructure, plane: &FinitePlane, budget: u64) -> Representation {
    let n = s.point_count();
    let q = plane.order() as usize;
    if n > plane.point_count() || s.lines().iter().any(|l| l.len() > q + 1) {
        return Representation::None { nodes: 0 };
    }
    let mut search = RepSearch {
        s,
        plane,
        order: Vec::with_capacity(n),
        image: vec![usize::MAX; n],
        used: vec![false; plane.point_count()],
        nodes: 0,
        budget,
    };
    let mut placed = vec![false; n];
    let frame = find_frame(s);
    if let Some(frame) = frame {
        let f = plane.field();
        let (z, o) = (f.zero(), f.one());
        let std = [
            plane.locate(&o, &z, &z),
            plane.locate(&z, &o, &z),
            plane.locate(&z, &z, &o),
            plane.locate(&o, &o, &o),
        ];
        for (&x, y) in frame.iter().zip(std) {
            let y = y.expect("standard frame lies in the plane");
            search.image[x] = y;
            search.used[y] = true;
            placed[x] = true;
            search.order.push(x);
        }
    }
    // Remaining points: most long-line contacts with placed points first.
    while search.order.len() < n {
        let next = (0..n)
            .filter(|&p| !placed[p])
            .max_by_key(|&p| {
                let contacts: usize = s
                    .lines_through(p)
                    .iter()
                    .map(|&l| s.line_points(l).iter().filter(|&&u| placed[u]).count())
                    .sum();
                (contacts, std::cmp::Reverse(p))
            })
            .expect("unplaced point");
        placed[next] = true;
        search.order.push(next);
    }
    let start = if frame.is_some() { 4 } else { 0 };
    match search.extend(start) {
        Ok(true) => Representation::Found {
            images: search.image,
            nodes: search.nodes,
        },
        Ok(false) => Representation::None { nodes: search.nodes },
        Err(()) => Representation::Timeout { nodes: search.nodes },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::isomorphism;

    #[test]
    fn lift_sizes() {
        for (m, k, pts, lines) in [(2, 2, 13, 19), (3, 1, 10, 12), (3, 2, 28, 84), (4, 1, 13, 19)] {
            let l = build_lift(m, k).unwrap();
            assert_eq!(l.structure().point_count(), pts);
            assert_eq!(l.structure().line_count(), lines);
        }
        assert!(build_lift(1, 1).is_err());
        assert!(build_lift(3, 0).is_err());
    }

    #[test]
    fn lift_labels_and_line_of() {
        let l = build_lift(2, 2).unwrap();
        let s = l.structure();
        let (g, h) = (1, 2);
        let line = s.join(l.a(g), l.b(l.group().add(g, h))).unwrap();
        assert!(s.on_line(l.c(h), line));
        assert_eq!(s.label(l.a(2)), "a:1,0");
        assert_eq!(s.label(l.d()), "D");
    }

    #[test]
    fn reid_sizes() {
        assert_eq!(build_reid(3).unwrap().point_count(), 9);
        assert_eq!(build_reid(2).unwrap(), build_lift(2, 1).unwrap().structure().clone());
        assert_eq!(build_higher_reid(3, 2).unwrap().point_count(), 22);
    }

    #[test]
    fn reid_submatroid_is_reid() {
        let l = build_lift(3, 2).unwrap();
        let params = ReidParams {
            alpha: 0,
            delta: l.group().basis(0),
            gamma: 0,
        };
        let sub = reid_submatroid(&l, &params).unwrap();
        assert_eq!(sub.point_count(), 9);
        assert!(isomorphism(&sub, &build_reid(3).unwrap()).is_some());
        assert!(reid_submatroid(&l, &ReidParams { alpha: 0, delta: 0, gamma: 0 }).is_err());
    }

    #[test]
    fn automorphisms_compose() {
        let l = build_lift(3, 2).unwrap();
        let id = lift_automorphism(&l, 0, 0);
        assert_eq!(id, (0..28).collect::<Vec<_>>());
        let g = l.group();
        for (a1, b1, a2, b2) in [(1, 4, 7, 2), (3, 3, 5, 8)] {
            let f1 = lift_automorphism(&l, a1, b1);
            let f2 = lift_automorphism(&l, a2, b2);
            assert!(is_automorphism(l.structure(), &f1));
            let comp: Vec<usize> = f1.iter().map(|&p| f2[p]).collect();
            assert_eq!(comp, lift_automorphism(&l, g.add(a1, a2), g.add(b1, b2)));
        }
    }

    #[test]
    fn embedding_is_representation() {
        for (p, k) in [(2, 2), (3, 1), (3, 2), (5, 1)] {
            let l = build_lift(p, k).unwrap();
            let plane = FinitePlane::with_order(p, k).unwrap();
            let img = embed_lift(&l, &plane).unwrap();
            check_representation(l.structure(), &plane, &img).unwrap();
        }
    }

    #[test]
    fn phi_values() {
        let g = Group::new(5, 1).unwrap();
        assert_eq!(phi(&g, 2, 1, 3, 0).unwrap(), 3);
        assert_eq!(phi(&g, 2, 1, 3, 1).unwrap(), 4);
        assert_eq!(phi(&g, 2, 0, 0, 4).unwrap(), 3);
        assert!(phi(&g, 1, 1, 0, 2).is_err());
    }

    #[test]
    fn small_representations() {
        let gf3 = FinitePlane::with_order(3, 1).unwrap();
        let r3 = build_reid(3).unwrap();
        match search_representation(&r3, &gf3, 1_000_000) {
            Representation::Found { images, .. } => check_representation(&r3, &gf3, &images).unwrap(),
            other => panic!("expected a representation, got {other:?}"),
        }
        let gf2 = FinitePlane::with_order(2, 1).unwrap();
        let l3 = build_lift(3, 1).unwrap();
        assert_eq!(search_representation(l3.structure(), &gf2, 1_000_000).verdict(), "none");
        assert_eq!(search_representation(&r3, &gf3, 1).verdict(), "timeout");
    }
}
