//! End-to-end checks that the two-term complex at a vertex is tilting, and
//! that its endomorphism algebra has the shape predicted by the tree
//! reflection.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Matrix, Subspace};
use crate::quiver::{quiver_of, tree_cycles, ArrowId, Cycle, IntMatrix, QuiverError, QuiverVertex};
use crate::reflection::{reflect_tree, ReflectionError};
use crate::tree::{EdgeId, PlanarTree};

use super::algebra::{build_algebra, AlgebraError, AlgebraTable, Element};
use super::complex::{ChainMap, ComplexError, HomSpace, ProjComplex};
use super::presentation::{tilting_complex, PresentationError, Summand, TiltingComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("multiplicity {0} > 1 unsupported")]
    MultiplicityUnsupported(u32),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Reflection(#[from] ReflectionError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingEntry {
    pub shift: i32,
    pub dim: usize,
}

/// `hom(X, E[shift])` against `hom(E, X[-shift])`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerreEntry {
    pub x: String,
    pub shift: i32,
    pub into_cone: usize,
    pub out_of_cone: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Zeta,
    Eta,
    Theta,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    /// Tree vertex whose cycle the witness comes from.
    pub cycle: u32,
    pub from: u32,
    pub to: u32,
    /// Not null-homotopic.
    pub nonzero: bool,
    /// Not a sum of composites of two radical maps between summands.
    pub irreducible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub e0: Vec<u32>,
    pub e1: Vec<u32>,
    pub minimal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub algebra_us: u64,
    pub homs_us: u64,
    pub witnesses_us: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    pub edge: u32,
    pub field: u32,
    /// Label given to the cone summand in `endo`.
    pub cone_label: u32,
    pub algebra_dim: usize,
    pub presentation: Presentation,
    pub vanishing: Vec<VanishingEntry>,
    pub vanishing_ok: bool,
    pub serre: Vec<SerreEntry>,
    pub serre_ok: bool,
    pub generation_ok: bool,
    /// `dim Hom(T_i, T_j)` in summand order, rows `i`.
    pub endo: IntMatrix,
    pub endo_symmetric: bool,
    pub predicted: Option<IntMatrix>,
    pub cartan_match: bool,
    pub witnesses: Vec<Witness>,
    pub witnesses_ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl VerificationReport {
    /// Every recorded claim holds.
    pub fn passed(&self) -> bool {
        self.vanishing_ok
            && self.serre_ok
            && self.generation_ok
            && self.presentation.minimal
            && (self.predicted.is_none() || self.cartan_match)
            && self.witnesses_ok
    }

    /// Compares `endo` with `predicted` after reordering the latter to the
    /// summand labels of `endo`.
    pub fn set_prediction(&mut self, predicted: IntMatrix) {
        let reordered = (|| {
            let entries = self
                .endo
                .labels
                .iter()
                .map(|&x| self.endo.labels.iter().map(|&y| predicted.get(x, y)).collect::<Option<Vec<_>>>())
                .collect::<Option<Vec<_>>>()?;
            (predicted.labels.len() == self.endo.labels.len())
                .then(|| IntMatrix { labels: self.endo.labels.clone(), entries })
        })();
        self.cartan_match = reordered.as_ref() == Some(&self.endo);
        self.predicted = Some(reordered.unwrap_or(predicted));
    }

    /// Every dimension in the report, for comparing runs over different
    /// fields.
    pub fn dimensions(&self) -> Vec<usize> {
        let mut out = vec![self.algebra_dim];
        out.extend(self.vanishing.iter().map(|v| v.dim));
        out.extend(self.serre.iter().flat_map(|s| [s.into_cone, s.out_of_cone]));
        out.extend(self.endo.entries.iter().flatten().map(|&x| x as usize));
        out
    }
}

fn label(s: Summand, cone_label: u32) -> u32 {
    match s {
        Summand::Projective(v) => v,
        Summand::Cone => cone_label,
    }
}

/// State shared by the checks on one algebra and vertex.
struct Lab<'a> {
    alg: &'a AlgebraTable,
    tc: TiltingComplex,
    // degree-zero Hom spaces between summands, keyed by summand positions
    homs: BTreeMap<(usize, usize), HomSpace>,
}

impl<'a> Lab<'a> {
    fn new(alg: &'a AlgebraTable, t: QuiverVertex) -> Result<Self, VerifyError> {
        let tc = tilting_complex(alg, t)?;
        let mut homs = BTreeMap::new();
        let n = tc.summands.len();
        for i in 0..n {
            for j in 0..n {
                homs.insert((i, j), HomSpace::new(alg, &tc.summands[i].1, &tc.summands[j].1, 0)?);
            }
        }
        Ok(Self { alg, tc, homs })
    }

    fn position(&self, s: Summand) -> usize {
        self.tc.summands.iter().position(|(x, _)| *x == s).expect("summand")
    }

    // representatives of a basis of rad(T_i, T_j) modulo homotopy
    fn radical_basis(&self, i: usize, j: usize) -> Vec<Vec<u32>> {
        let h = &self.homs[&(i, j)];
        if i != j {
            return h.class_basis();
        }
        // endomorphisms with no idempotent part on any diagonal component
        let c = &self.tc.summands[i].1;
        let probe = h.to_map(self.alg, &vec![0; h.unknowns()]);
        let mut functionals: Vec<Vec<u32>> = Vec::new();
        for (&d, m) in &probe.components {
            for k in 0..m.len().min(c.summands(d).len()) {
                let v = c.summands(d)[k];
                let local = self
                    .alg
                    .block(v, v)
                    .position(|g| self.alg.basis()[g].layer == 0)
                    .expect("idempotent");
                let mut marker = probe.clone();
                marker.components.get_mut(&d).expect("degree")[k][k].coeffs[local] = 1;
                functionals.push(h.from_map(&marker));
            }
        }
        let field = self.alg.field();
        let values: Vec<Vec<u32>> = functionals
            .iter()
            .map(|phi| {
                h.cycles()
                    .iter()
                    .map(|z| z.iter().zip(phi).fold(0, |acc, (&a, &b)| field.add(acc, field.mul(a, b))))
                    .collect()
            })
            .collect();
        let combos = Matrix::from_rows(h.cycles().len(), values).kernel(&field);
        let mut span = h.boundaries().clone();
        combos
            .into_iter()
            .map(|w| {
                let mut v = vec![0u32; h.unknowns()];
                for (z, &c) in h.cycles().iter().zip(&w) {
                    field.axpy(&mut v, c, z);
                }
                v
            })
            .filter(|v| span.insert(v))
            .collect()
    }

    // span of rad(T_k, T_j) ∘ rad(T_i, T_k) plus homotopies, in Hom(T_i, T_j)
    fn radical_squared(&self, i: usize, j: usize) -> Subspace {
        let target = &self.homs[&(i, j)];
        let mut span = target.boundaries().clone();
        for k in 0..self.tc.summands.len() {
            let first = self.radical_basis(i, k);
            let second = self.radical_basis(k, j);
            let (hf, hg) = (&self.homs[&(i, k)], &self.homs[&(k, j)]);
            for f in &first {
                let fm = hf.to_map(self.alg, f);
                for g in &second {
                    let gm = hg.to_map(self.alg, g);
                    let comp = ChainMap::compose(
                        self.alg,
                        &gm,
                        &fm,
                        &self.tc.summands[i].1,
                        &self.tc.summands[j].1,
                    );
                    span.insert(&target.from_map(&comp));
                }
            }
        }
        span
    }

    fn check_witness(&self, i: usize, j: usize, map: &ChainMap) -> (bool, bool) {
        let h = &self.homs[&(i, j)];
        let v = h.from_map(map);
        debug_assert!(h.is_cycle(&v), "witness is not a chain map");
        let nonzero = !h.is_null_homotopic(&v);
        let irreducible = nonzero && !self.radical_squared(i, j).contains(&v);
        (nonzero, irreducible)
    }
}

/// Checks vanishing, Serre symmetry, generation and records the endo-Hom
/// matrix for the reflection of `alg` at `t`. The cone is labelled
/// `cone_label` in `endo`.
pub fn verify_algebra(
    alg: &AlgebraTable,
    t: QuiverVertex,
    subject: &str,
    cone_label: u32,
) -> Result<VerificationReport, VerifyError> {
    let lab = Lab::new(alg, t)?;
    base_report(&lab, t, subject, cone_label)
}

fn base_report(lab: &Lab<'_>, t: QuiverVertex, subject: &str, cone_label: u32) -> Result<VerificationReport, VerifyError> {
    let alg = lab.alg;
    let tc = &lab.tc;
    let total = tc.total(alg);
    let vanishing: Vec<VanishingEntry> = [-2, -1, 1, 2]
        .into_iter()
        .map(|j| Ok(VanishingEntry { shift: j, dim: HomSpace::new(alg, &total, &total, j)?.dim() }))
        .collect::<Result<_, ComplexError>>()?;
    let vanishing_ok = vanishing.iter().all(|v| v.dim == 0);

    let mut serre = Vec::new();
    let mut others: Vec<(String, ProjComplex)> =
        alg.vertices().iter().map(|&v| (format!("P{v}"), ProjComplex::stalk(v, 0))).collect();
    others.push(("E".to_string(), tc.cone.clone()));
    for (name, x) in &others {
        for j in -2..=2 {
            serre.push(SerreEntry {
                x: name.clone(),
                shift: j,
                into_cone: HomSpace::new(alg, x, &tc.cone, j)?.dim(),
                out_of_cone: HomSpace::new(alg, &tc.cone, x, -j)?.dim(),
            });
        }
    }
    let serre_ok = serre.iter().all(|s| s.into_cone == s.out_of_cone);

    let labels: Vec<u32> = tc.summands.iter().map(|(s, _)| label(*s, cone_label)).collect();
    let n = labels.len();
    let entries: Vec<Vec<u32>> =
        (0..n).map(|i| (0..n).map(|j| lab.homs[&(i, j)].dim() as u32).collect()).collect();
    let endo = IntMatrix { labels, entries };
    let p = &tc.presentation;
    Ok(VerificationReport {
        subject: subject.to_string(),
        edge: t,
        field: alg.field().order(),
        cone_label,
        algebra_dim: alg.dim(),
        presentation: Presentation { e0: vec![p.e0], e1: p.e1.clone(), minimal: p.is_minimal(alg) },
        vanishing,
        vanishing_ok,
        serre,
        serre_ok,
        generation_ok: tc.generates(),
        endo_symmetric: endo.is_symmetric(),
        endo,
        predicted: None,
        cartan_match: false,
        witnesses: Vec::new(),
        witnesses_ok: true,
        timings: None,
    })
}

// arrow of `cycle` leaving `v`
fn arrow_out(alg: &AlgebraTable, cycle: &Cycle, v: QuiverVertex) -> ArrowId {
    let next = cycle.successor(v).expect("member");
    alg.arrows()
        .iter()
        .find(|a| a.cycle_tag == cycle.tag && a.source == v && a.target == next)
        .expect("cycle arrow")
        .id
}

fn stalk_map(alg: &AlgebraTable, from: &ProjComplex, to: &ProjComplex, at: (usize, usize), e: Element) -> ChainMap {
    let (rows, cols) = (to.summands(0), from.summands(0));
    let mut m: Vec<Vec<Element>> = rows.iter().map(|&y| cols.iter().map(|&x| alg.zero(x, y)).collect()).collect();
    m[at.0][at.1] = e;
    ChainMap { shift: 0, components: BTreeMap::from([(0, m)]) }
}

fn witnesses(lab: &Lab<'_>, tree: &PlanarTree, t: EdgeId) -> Vec<Witness> {
    let alg = lab.alg;
    let cone_pos = lab.position(Summand::Cone);
    let cone = &lab.tc.cone;
    let e1 = cone.summands(0);
    let mut out = Vec::new();
    for cycle in tree_cycles(tree).into_iter().filter(|c| c.members.contains(&t)) {
        let x = cycle.tag;
        let a_p = cycle.successor(t).expect("member");
        let a_1 = cycle.predecessor(t).expect("member");
        let p = cycle.members.len() - 1;
        let Some(slot) = e1.iter().position(|&v| v == a_p) else {
            continue;
        };
        let pos_ap = lab.position(Summand::Projective(a_p));
        let stalk_ap = &lab.tc.summands[pos_ap].1;

        let zeta = stalk_map(alg, stalk_ap, cone, (slot, 0), alg.identity(a_p));
        let (nonzero, irreducible) = lab.check_witness(pos_ap, cone_pos, &zeta);
        out.push(Witness { kind: WitnessKind::Zeta, cycle: x, from: a_p, to: t, nonzero, irreducible });

        // eta: along a_p's other cycle if it has one, else around this cycle
        let z = tree.other_end(a_p, x).expect("edge");
        let (to, e) = if tree.degree(z) >= 2 {
            let other = tree_cycles(tree).into_iter().find(|c| c.tag == z).expect("cycle at z");
            let id = arrow_out(alg, &other, a_p);
            (other.successor(a_p).expect("member"), alg.path(&[id]).expect("arrow"))
        } else {
            let mut ids = Vec::new();
            let mut v = a_p;
            loop {
                ids.push(arrow_out(alg, &cycle, v));
                v = cycle.successor(v).expect("member");
                if v == a_p {
                    break;
                }
            }
            ids.reverse();
            (a_p, alg.path(&ids).expect("cycle path"))
        };
        let pos_to = lab.position(Summand::Projective(to));
        let eta = stalk_map(alg, cone, &lab.tc.summands[pos_to].1, (0, slot), e);
        let (nonzero, irreducible) = lab.check_witness(cone_pos, pos_to, &eta);
        out.push(Witness { kind: WitnessKind::Eta, cycle: x, from: t, to, nonzero, irreducible });

        if p >= 2 {
            let path = [arrow_out(alg, &cycle, t), arrow_out(alg, &cycle, a_1)];
            let pos_a1 = lab.position(Summand::Projective(a_1));
            let theta = stalk_map(alg, &lab.tc.summands[pos_a1].1, stalk_ap, (0, 0), alg.path(&path).expect("path"));
            let (nonzero, irreducible) = lab.check_witness(pos_a1, pos_ap, &theta);
            out.push(Witness { kind: WitnessKind::Theta, cycle: x, from: a_1, to: a_p, nonzero, irreducible });
        }
    }
    out
}

fn micros(since: Instant) -> u64 {
    since.elapsed().as_micros() as u64
}

/// Full check of the reflection of the Brauer tree algebra of `tree` at edge
/// `t` over `GF(p)`. Claim failures are recorded in the report; only
/// malformed input is an error.
pub fn verify_reflection(tree: &PlanarTree, t: EdgeId, p: u32) -> Result<VerificationReport, VerifyError> {
    if tree.multiplicity() > 1 {
        return Err(VerifyError::MultiplicityUnsupported(tree.multiplicity()));
    }
    let reflected = reflect_tree(tree, t)?;
    let start = Instant::now();
    let alg = build_algebra(&quiver_of(tree)?, p)?;
    let algebra_us = micros(start);

    let start = Instant::now();
    let lab = Lab::new(&alg, t)?;
    let mut report = base_report(&lab, t, tree.canonical_code().as_str(), reflected.new_edge)?;
    report.set_prediction(crate::quiver::cartan_matrix(&reflected.tree)?);
    let homs_us = micros(start);

    let start = Instant::now();
    report.witnesses = witnesses(&lab, tree, t);
    report.witnesses_ok = !report.witnesses.is_empty() && report.witnesses.iter().all(|w| w.nonzero && w.irreducible);
    report.timings = Some(Timings { algebra_us, homs_us, witnesses_us: micros(start) });
    Ok(report)
}

/// [`verify_reflection`] over many `(tree, edge, field)` jobs; results come
/// back in job order. Runs on the rayon pool when the `parallel` feature is
/// enabled.
pub fn verify_many(jobs: &[(PlanarTree, EdgeId, u32)]) -> Vec<Result<VerificationReport, VerifyError>> {
    let run = |(tree, t, p): &(PlanarTree, EdgeId, u32)| verify_reflection(tree, *t, *p);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        jobs.par_iter().map(run).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        jobs.iter().map(run).collect()
    }
}

/// Sequential [`verify_many`], regardless of features.
pub fn verify_many_sequential(jobs: &[(PlanarTree, EdgeId, u32)]) -> Vec<Result<VerificationReport, VerifyError>> {
    jobs.iter().map(|(tree, t, p)| verify_reflection(tree, *t, *p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::samples::{square_algebra, square_algebra_reflected};
    use crate::quiver::cartan_matrix;

    fn star(n: u32) -> PlanarTree {
        let mut rot = vec![(0, (1..=n).collect::<Vec<_>>())];
        for v in 1..=n {
            rot.push((v, vec![v]));
        }
        PlanarTree::from_rotations(rot).unwrap()
    }

    #[test]
    fn star_reflection_passes() {
        let s = star(5);
        let r = verify_reflection(&s, 1, 2).unwrap();
        assert!(r.passed(), "{r:#?}");
        let expected = cartan_matrix(&reflect_tree(&s, 1).unwrap().tree).unwrap();
        assert_eq!(r.endo.get(6, 2), expected.get(6, 2));
        assert_eq!(r.endo.labels, vec![6, 2, 3, 4, 5]);
        assert!(r.witnesses.iter().any(|w| w.kind == WitnessKind::Theta));
    }

    #[test]
    fn middle_of_three_line_passes() {
        let line = PlanarTree::from_rotations([(0, vec![1]), (1, vec![1, 2]), (2, vec![2, 3]), (3, vec![3])]).unwrap();
        let r = verify_reflection(&line, 2, 3).unwrap();
        assert!(r.passed(), "{r:#?}");
        assert_eq!(r.presentation.e1, vec![1, 3]);
    }

    #[test]
    fn square_algebra_at_two() {
        let lambda = build_algebra(&square_algebra(), 2).unwrap();
        assert!(lambda.is_selfinjective());
        let mut r = verify_algebra(&lambda, 2, "square", 5).unwrap();
        assert!(r.vanishing_ok && r.serre_ok && r.generation_ok, "{r:#?}");
        let gamma = build_algebra(&square_algebra_reflected(), 2).unwrap();
        r.set_prediction(gamma.dim_matrix());
        assert!(r.cartan_match, "{:?} vs {:?}", r.endo, r.predicted);
    }

    #[test]
    fn report_round_trips_through_json() {
        let r = verify_reflection(&star(3), 2, 2).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
