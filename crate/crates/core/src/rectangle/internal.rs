use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::harmonic::find_configurations;
use crate::incidence::Incidence;

use super::{local_index, PlaneSet, ProjectiveRectangle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TripleClass {
    Ordinary,
    ThroughD,
    SpecialWithoutD,
}

/// Outcomes of conjugation with witnesses and lines taken from the
/// rectangle, for one class of base triples `(d, e, f)` with `d < f`.
#[derive(Debug, Clone, Serialize)]
pub struct ClassSummary {
    pub class: TripleClass,
    pub triples: u64,
    pub configurations: u64,
    /// Every configuration agrees on a conjugate.
    pub unique: u64,
    pub no_configuration: u64,
    pub inconsistent: u64,
    /// The agreed conjugate equals the coordinate conjugate in PG(2, q).
    pub matches_coordinates: u64,
    /// The coordinate conjugate lies outside the rectangle.
    pub coordinate_outside: u64,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InternalReport {
    pub classes: Vec<ClassSummary>,
    /// Configurations not contained in exactly one plane.
    pub plane_violations: u64,
    pub plane_witness: Option<String>,
}

impl InternalReport {
    pub fn class(&self, class: TripleClass) -> &ClassSummary {
        self.classes.iter().find(|c| c.class == class).expect("all classes reported")
    }

    /// Ordinary and D-containing triples have unique conjugates agreeing
    /// with coordinates, and each configuration lies in exactly one plane.
    pub fn asserted_pass(&self) -> bool {
        [TripleClass::Ordinary, TripleClass::ThroughD].iter().all(|&c| {
            let s = self.class(c);
            s.unique == s.triples && s.matches_coordinates == s.triples
        }) && self.plane_violations == 0
    }
}

struct Outcome {
    configs: u64,
    unique: bool,
    none: bool,
    matches: bool,
    outside: bool,
    plane_violations: u64,
    plane_witness: Option<String>,
}

pub fn internal_harmonic_report(pr: &ProjectiveRectangle, planes: &PlaneSet) -> InternalReport {
    let s = pr.structure();
    let plane = pr.plane();
    let local = local_index(pr);
    let all = BitSet::full(pr.point_count());
    let d_point = pr.d();
    let plane_sets: Vec<BitSet> = planes.planes.iter().map(|p| p.point_set(pr.point_count())).collect();

    let mut triples: Vec<(TripleClass, [usize; 3])> = Vec::new();
    for l in 0..s.line_count() {
        let pts = s.line_points(l);
        let special = pr.is_special(l);
        for (i, &d) in pts.iter().enumerate() {
            for &f in &pts[i + 1..] {
                for &e in pts {
                    if e == d || e == f {
                        continue;
                    }
                    let class = if !special {
                        TripleClass::Ordinary
                    } else if [d, e, f].contains(&d_point) {
                        TripleClass::ThroughD
                    } else {
                        TripleClass::SpecialWithoutD
                    };
                    triples.push((class, [d, e, f]));
                }
            }
        }
    }

    let outcomes: Vec<Outcome> = triples
        .par_iter()
        .map(|&(_, [d, e, f])| {
            let configs = find_configurations(s, &all, d, e, f).expect("collinear distinct base");
            let first = configs.first().and_then(|c| c.h);
            let unique = first.is_some() && configs.iter().all(|c| c.h == first);
            let amb = plane.conjugate(pr.ambient()[d], pr.ambient()[f], pr.ambient()[e]).expect("ambient conjugate");
            let mut plane_violations = 0;
            let mut plane_witness = None;
            for c in &configs {
                let pts = c.points();
                let holders = plane_sets.iter().filter(|ps| pts.iter().all(|&x| ps.contains(x))).count();
                if holders != 1 {
                    plane_violations += 1;
                    plane_witness.get_or_insert_with(|| format!("configuration {pts:?} lies in {holders} planes"));
                }
            }
            Outcome {
                configs: configs.len() as u64,
                unique,
                none: configs.is_empty(),
                matches: unique && local[amb] == first,
                outside: local[amb].is_none(),
                plane_violations,
                plane_witness,
            }
        })
        .collect();

    let mut classes = Vec::new();
    for class in [TripleClass::Ordinary, TripleClass::ThroughD, TripleClass::SpecialWithoutD] {
        let mut sum = ClassSummary {
            class,
            triples: 0,
            configurations: 0,
            unique: 0,
            no_configuration: 0,
            inconsistent: 0,
            matches_coordinates: 0,
            coordinate_outside: 0,
            witness: None,
        };
        for ((c, [d, e, f]), o) in triples.iter().zip(&outcomes) {
            if *c != class {
                continue;
            }
            sum.triples += 1;
            sum.configurations += o.configs;
            sum.unique += o.unique as u64;
            sum.no_configuration += o.none as u64;
            sum.inconsistent += (!o.unique && !o.none) as u64;
            sum.matches_coordinates += o.matches as u64;
            sum.coordinate_outside += o.outside as u64;
            if !o.matches && sum.witness.is_none() {
                let what = if o.none {
                    "no configuration"
                } else if !o.unique {
                    "configurations disagree"
                } else {
                    "differs from the coordinate conjugate"
                };
                sum.witness = Some(format!("({}, {}; {}): {what}", s.label(*d), s.label(*f), s.label(*e)));
            }
        }
        classes.push(sum);
    }
    let plane_violations = outcomes.iter().map(|o| o.plane_violations).sum();
    let plane_witness = outcomes.iter().find_map(|o| o.plane_witness.clone());
    InternalReport {
        classes,
        plane_violations,
        plane_witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::ClosureOptions;
    use crate::rectangle::{assemble_pr, enumerate_planes};

    #[test]
    fn pr_3_2_internal_conjugates() {
        let pr = assemble_pr(3, 2, 9, &ClosureOptions::default()).unwrap();
        let planes = enumerate_planes(&pr).unwrap();
        let report = internal_harmonic_report(&pr, &planes);
        assert!(report.asserted_pass(), "{report:?}");
        assert_eq!(report.class(TripleClass::Ordinary).triples, 81 * 12);
        assert_eq!(report.class(TripleClass::ThroughD).triples, 4 * 108);
        assert_eq!(report.class(TripleClass::SpecialWithoutD).triples, 4 * 36 * 7);
    }
}
