use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::incidence::Incidence;

use super::ProjectiveRectangle;

/// A candidate rectangle given only by its lines; nothing is validated up
/// front so that malformed inputs reach the axiom checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRectangle {
    pub point_count: usize,
    pub d: usize,
    pub lines: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum A6Mode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
    pub a6_mode: A6Mode,
    pub a6_quadruples: u64,
    pub a6_seed: u64,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Tables {
    sets: Vec<BitSet>,
    /// First line through each pair, `usize::MAX` if none.
    pair_line: Vec<usize>,
    pair_count: Vec<u8>,
    n: usize,
}

impl Tables {
    fn new(raw: &RawRectangle) -> Tables {
        let n = raw.point_count;
        let mut pair_line = vec![usize::MAX; n * n];
        let mut pair_count = vec![0u8; n * n];
        let mut sets = Vec::with_capacity(raw.lines.len());
        for (li, line) in raw.lines.iter().enumerate() {
            let mut pts: Vec<usize> = line.iter().copied().filter(|&x| x < n).collect();
            pts.sort_unstable();
            pts.dedup();
            for (i, &x) in pts.iter().enumerate() {
                for &y in &pts[i + 1..] {
                    for (a, b) in [(x, y), (y, x)] {
                        pair_count[a * n + b] = pair_count[a * n + b].saturating_add(1);
                        if pair_line[a * n + b] == usize::MAX {
                            pair_line[a * n + b] = li;
                        }
                    }
                }
            }
            sets.push(BitSet::from_indices(n, pts));
        }
        Tables {
            sets,
            pair_line,
            pair_count,
            n,
        }
    }

    fn line(&self, x: usize, y: usize) -> Option<usize> {
        let l = self.pair_line[x * self.n + y];
        (l != usize::MAX).then_some(l)
    }

    fn collinear(&self, x: usize, y: usize, z: usize) -> bool {
        match self.line(x, y) {
            Some(l) => self.sets[l].contains(z),
            None => false,
        }
    }
}

fn check(name: &str, witness: Option<String>) -> AxiomCheck {
    AxiomCheck {
        name: name.to_string(),
        pass: witness.is_none(),
        witness,
    }
}

/// Check A1-A6. A6 is exhaustive when the number of quadruples is at most
/// `budget`, otherwise `budget` quadruples are sampled with `seed`.
pub fn verify_axioms(raw: &RawRectangle, budget: u64, seed: u64) -> AxiomReport {
    let t = Tables::new(raw);
    let n = raw.point_count;
    let mut checks = Vec::new();

    let a1 = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .find(|&(x, y)| t.pair_count[x * n + y] != 1)
        .map(|(x, y)| format!("points {x} and {y} lie on {} lines", t.pair_count[x * n + y]));
    checks.push(check("A1", a1));

    checks.push(check("A2", if find_quadrangle(&t).is_some() { None } else { Some("no four points in general position".into()) }));

    let a3 = t
        .sets
        .iter()
        .position(|s| s.count() < 3)
        .map(|l| format!("line {l} has {} points", t.sets[l].count()));
    checks.push(check("A3", a3));

    let a4 = (raw.d >= n).then(|| format!("D = {} is not a point", raw.d));
    checks.push(check("A4", a4));

    let special: Vec<usize> = (0..t.sets.len()).filter(|&l| raw.d < n && t.sets[l].contains(raw.d)).collect();
    let a5 = special.iter().find_map(|&s| {
        (0..t.sets.len()).filter(|&l| l != s).find_map(|l| {
            let c = t.sets[s].intersection_count(&t.sets[l]);
            (c != 1).then(|| format!("special line {s} meets line {l} in {c} points"))
        })
    });
    checks.push(check("A5", a5));

    let (a6, mode, count) = check_a6(raw, &t, budget, seed);
    checks.push(check("A6", a6));

    AxiomReport {
        checks,
        a6_mode: mode,
        a6_quadruples: count,
        a6_seed: seed,
    }
}

fn find_quadrangle(t: &Tables) -> Option<[usize; 4]> {
    let n = t.n;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if t.collinear(a, b, c) {
                    continue;
                }
                for d in c + 1..n {
                    if !t.collinear(a, b, d) && !t.collinear(a, c, d) && !t.collinear(b, c, d) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// Intersecting pairs of ordinary lines with their common point.
fn ordinary_pairs(raw: &RawRectangle, t: &Tables) -> Vec<(usize, usize, usize)> {
    let ordinary: Vec<usize> = (0..t.sets.len()).filter(|&l| raw.d >= t.n || !t.sets[l].contains(raw.d)).collect();
    let mut pairs = Vec::new();
    for (i, &l1) in ordinary.iter().enumerate() {
        for &l2 in &ordinary[i + 1..] {
            let common = t.sets[l1].intersection(&t.sets[l2]);
            if common.count() == 1 {
                pairs.push((l1, l2, common.iter().next().expect("one point")));
            }
        }
    }
    pairs
}

/// For ordinary lines meeting at `P`, pairs `{x1, x2}` on the first and
/// `{y1, y2}` on the second give lines `x1y1`, `x2y2` that must meet.
fn a6_violation(t: &Tables, l1: usize, l2: usize, x: [usize; 2], y: [usize; 2]) -> Option<String> {
    let m1 = t.line(x[0], y[0])?;
    let m2 = t.line(x[1], y[1])?;
    if t.sets[m1].intersection_count(&t.sets[m2]) == 0 {
        Some(format!(
            "lines {l1}, {l2}: line {m1} through {}, {} misses line {m2} through {}, {}",
            x[0], y[0], x[1], y[1]
        ))
    } else {
        None
    }
}

fn check_a6(raw: &RawRectangle, t: &Tables, budget: u64, seed: u64) -> (Option<String>, A6Mode, u64) {
    let pairs = ordinary_pairs(raw, t);
    let off: Vec<(Vec<usize>, Vec<usize>)> = pairs
        .iter()
        .map(|&(l1, l2, p)| {
            let a: Vec<usize> = t.sets[l1].iter().filter(|&x| x != p).collect();
            let b: Vec<usize> = t.sets[l2].iter().filter(|&x| x != p).collect();
            (a, b)
        })
        .collect();
    // Unordered {x1,x2} times ordered (y1,y2).
    let total: u64 = off
        .iter()
        .map(|(a, b)| {
            let (a, b) = (a.len() as u64, b.len() as u64);
            a * a.saturating_sub(1) / 2 * b * b.saturating_sub(1)
        })
        .sum();
    if total <= budget {
        let witness = pairs.par_iter().zip(off.par_iter()).find_map_first(|(&(l1, l2, _), (a, b))| {
            for (i, &x1) in a.iter().enumerate() {
                for &x2 in &a[i + 1..] {
                    for &y1 in b {
                        for &y2 in b {
                            if y1 != y2 {
                                if let Some(w) = a6_violation(t, l1, l2, [x1, x2], [y1, y2]) {
                                    return Some(w);
                                }
                            }
                        }
                    }
                }
            }
            None
        });
        (witness, A6Mode::Exhaustive, total)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut witness = None;
        let mut checked = 0;
        while checked < budget && witness.is_none() {
            let i = rng.gen_range(0..pairs.len());
            let (a, b) = &off[i];
            if a.len() < 2 || b.len() < 2 {
                checked += 1;
                continue;
            }
            let x1 = rng.gen_range(0..a.len());
            let x2 = (x1 + rng.gen_range(1..a.len())) % a.len();
            let y1 = rng.gen_range(0..b.len());
            let y2 = (y1 + rng.gen_range(1..b.len())) % b.len();
            witness = a6_violation(t, pairs[i].0, pairs[i].1, [a[x1], a[x2]], [b[y1], b[y2]]);
            checked += 1;
        }
        (witness, A6Mode::Sampled, checked)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub m: usize,
    pub n: usize,
    pub point_count: usize,
    pub special_lines: usize,
    pub ordinary_lines: usize,
    pub checks: Vec<AxiomCheck>,
}

impl CensusReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Counting properties of a rectangle of order `(m, n)`.
pub fn census(pr: &ProjectiveRectangle) -> CensusReport {
    let s = pr.structure();
    let (m, n) = pr.order();
    let d = pr.d();
    let special = pr.special_lines();
    let ordinary = pr.ordinary_lines();
    let points = pr.point_count();
    let mut checks = Vec::new();

    let a = (0..points).filter(|&x| x != d).find_map(|x| {
        let c = special.iter().filter(|&&l| s.line_set(l).contains(x)).count();
        (c != 1).then(|| format!("point {} lies on {c} special lines", s.label(x)))
    });
    checks.push(check("partition", a));

    checks.push(check("n>=m", (n < m).then(|| format!("n = {n} < m = {m}"))));

    let c = ordinary.iter().find_map(|&l| {
        let sz = s.line_points(l).len();
        (sz != m + 1).then(|| format!("ordinary line {l} has {sz} points"))
    });
    checks.push(check("ordinary-size", c));

    let dd = if special.len() != m + 1 || ordinary.len() != n * n {
        Some(format!("{} special and {} ordinary lines", special.len(), ordinary.len()))
    } else {
        None
    };
    checks.push(check("line-counts", dd));

    let e = (0..points).filter(|&x| x != d).find_map(|x| {
        let c = s.lines_through(x).len();
        (c != n + 1).then(|| format!("point {} lies on {c} lines", s.label(x)))
    });
    checks.push(check("lines-per-point", e));

    let f = special.iter().find_map(|&l| {
        let sz = s.line_points(l).len();
        (sz != n + 1).then(|| format!("special line {l} has {sz} points"))
    });
    checks.push(check("special-size", f));

    let g = (0..s.line_count()).into_par_iter().find_map_first(|l| {
        let set = s.line_set(l);
        (0..points).filter(|&x| !set.contains(x)).find_map(|x| {
            let meeting = s.lines_through(x).iter().filter(|&&l2| s.line_set(l2).intersection_count(set) > 0).count();
            (meeting != set.count()).then(|| format!("{meeting} lines through {} meet line {l} of size {}", s.label(x), set.count()))
        })
    });
    checks.push(check("lines-meeting", g));

    let h = ordinary.iter().find_map(|&l| {
        s.line_points(l).iter().find_map(|&x| {
            let c = s.lines_through(x).iter().filter(|&&l2| l2 != l && !pr.is_special(l2)).count();
            (c + 1 != n).then(|| format!("{c} other ordinary lines through {} on line {l}", s.label(x)))
        })
    });
    checks.push(check("ordinary-through-point", h));

    CensusReport {
        m,
        n,
        point_count: points,
        special_lines: special.len(),
        ordinary_lines: ordinary.len(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::ClosureOptions;
    use crate::rectangle::assemble_pr;

    #[test]
    fn pr_3_2_satisfies_axioms() {
        let pr = assemble_pr(3, 2, 9, &ClosureOptions::default()).unwrap();
        let report = verify_axioms(&pr.raw(), 10_000_000, 0);
        assert!(report.all_pass(), "{:?}", report.checks);
        assert_eq!(report.a6_mode, A6Mode::Exhaustive);
        let census = census(&pr);
        assert!(census.all_pass(), "{:?}", census.checks);
        assert_eq!((census.m, census.n), (3, 9));
    }

    #[test]
    fn sampled_a6_is_seeded() {
        let pr = assemble_pr(3, 2, 9, &ClosureOptions::default()).unwrap();
        let a = verify_axioms(&pr.raw(), 500, 7);
        let b = verify_axioms(&pr.raw(), 500, 7);
        assert_eq!(a.a6_mode, A6Mode::Sampled);
        assert_eq!(a.a6_quadruples, 500);
        assert_eq!(a.check("A6").unwrap().pass, b.check("A6").unwrap().pass);
    }

    #[test]
    fn swapped_point_breaks_a1() {
        let pr = assemble_pr(3, 2, 9, &ClosureOptions::default()).unwrap();
        let mut raw = pr.raw();
        let l = pr.ordinary_lines()[0];
        let victim = raw.lines[l][0];
        let replacement = (0..raw.point_count).find(|x| !raw.lines[l].contains(x) && *x != raw.d).unwrap();
        assert_ne!(victim, replacement);
        raw.lines[l][0] = replacement;
        let report = verify_axioms(&raw, 10_000_000, 0);
        assert!(!report.check("A1").unwrap().pass);
    }

    #[test]
    fn fano_plane_satisfies_a1_to_a5() {
        let raw = RawRectangle {
            point_count: 7,
            d: 0,
            lines: vec![vec![0, 1, 2], vec![0, 3, 4], vec![0, 5, 6], vec![1, 3, 5], vec![1, 4, 6], vec![2, 3, 6], vec![2, 4, 5]],
        };
        let report = verify_axioms(&raw, 1000, 0);
        assert!(report.check("A1").unwrap().pass);
        assert!(report.check("A2").unwrap().pass);
        assert!(report.check("A5").unwrap().pass);
    }
}
