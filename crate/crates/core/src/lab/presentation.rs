//! Minimal injective presentations of simples and the two-term tilting
//! complex built from them.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::field::{Matrix, Subspace};
use crate::quiver::QuiverVertex;

use super::algebra::{AlgebraTable, Element};
use super::complex::{ComplexError, ProjComplex};
use super::module::ModuleRep;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("unknown quiver vertex {0}")]
    UnknownVertex(QuiverVertex),
    #[error("Ext^1(S_{0}, S_{0}) is nonzero (loop at {0}); reflection undefined")]
    SelfExtension(QuiverVertex),
    #[error("algebra is not selfinjective")]
    NotSelfInjective,
    #[error("E(S_{t}) is not P(S_{t}): the socle of P_{t} is S_{socle}")]
    EnvelopeMismatch { t: QuiverVertex, socle: QuiverVertex },
    #[error("no radical map realizes the injective envelope of P_{0}/S_{0}")]
    NoEnvelopeMap(QuiverVertex),
    #[error("kernel of the presentation map is not the simple socle of P_{0}")]
    KernelMismatch(QuiverVertex),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// `0 -> S_t -> E0 -> E1` with `E0 = P_t` and `f: E0 -> E1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectivePresentation {
    pub t: QuiverVertex,
    pub e0: QuiverVertex,
    /// Summands of `E1`, sorted.
    pub e1: Vec<QuiverVertex>,
    /// `f[i]: P_t -> P_{e1[i]}`.
    pub f: Vec<Element>,
    /// Multiplicity of each simple in `soc(P_t / S_t)`.
    pub socle_quotient: BTreeMap<QuiverVertex, usize>,
}

impl InjectivePresentation {
    /// No component of `f` is an isomorphism.
    pub fn is_minimal(&self, alg: &AlgebraTable) -> bool {
        self.f.iter().all(|a| alg.in_radical(a))
    }
}

// coefficient c with e = c * base, if e is a multiple of base
fn ratio(alg: &AlgebraTable, e: &Element, base: &Element) -> Option<u32> {
    let field = alg.field();
    let k = base.coeffs.iter().position(|&c| c != 0)?;
    let c = field.mul(e.coeffs[k], field.inv(base.coeffs[k]));
    let mut scaled = base.clone();
    for x in scaled.coeffs.iter_mut() {
        *x = field.mul(*x, c);
    }
    (scaled == *e).then_some(c)
}

pub fn injective_presentation(
    alg: &AlgebraTable,
    t: QuiverVertex,
) -> Result<InjectivePresentation, PresentationError> {
    if !alg.has_vertex(t) {
        return Err(PresentationError::UnknownVertex(t));
    }
    if alg.arrows().iter().any(|a| a.source == t && a.target == t) {
        return Err(PresentationError::SelfExtension(t));
    }
    let nu = alg.nakayama().ok_or(PresentationError::NotSelfInjective)?;
    if nu[&t] != t {
        return Err(PresentationError::EnvelopeMismatch { t, socle: nu[&t] });
    }
    let field = alg.field();
    let sigma_t = alg.socle(t).expect("selfinjective");

    let pt = ModuleRep::projective(alg, t);
    let soc = pt.socle();
    let quotient = pt.quotient(&soc);
    let soc_q = quotient.module.socle();
    let socle_quotient: BTreeMap<QuiverVertex, usize> =
        soc_q.iter().filter(|(_, b)| !b.is_empty()).map(|(&v, b)| (v, b.len())).collect();

    let mut summands: Vec<(QuiverVertex, Element)> = Vec::new();
    for (&y, basis) in &soc_q {
        if basis.is_empty() {
            continue;
        }
        let w = *nu.iter().find(|(_, &s)| s == y).expect("permutation").0;
        let sigma_w = alg.socle(w).expect("selfinjective");
        let lifts: Vec<Element> = basis
            .iter()
            .map(|k| Element { source: y, target: t, coeffs: quotient.lift(y, k) })
            .collect();

        // radical maps P_t -> P_w killing the socle of P_t
        let block = alg.block(t, w);
        let radical: Vec<usize> = block.clone().filter(|&g| alg.basis()[g].layer > 0).collect();
        let images: Vec<Element> = radical.iter().map(|&g| alg.compose(&alg.unit(g), &sigma_t)).collect();
        let rows: Vec<Vec<u32>> = (0..alg.hom_len(t, w))
            .map(|r| images.iter().map(|e| e.coeffs[r]).collect())
            .collect();
        let candidates: Vec<Element> = Matrix::from_rows(radical.len(), rows)
            .kernel(&field)
            .into_iter()
            .map(|c| {
                let mut a = alg.zero(t, w);
                for (&g, &x) in radical.iter().zip(&c) {
                    a.coeffs[g - block.start] = x;
                }
                a
            })
            .collect();

        let mut chosen = Subspace::new(field, lifts.len());
        for a in candidates {
            let pairing: Option<Vec<u32>> = lifts.iter().map(|k| ratio(alg, &alg.compose(&a, k), &sigma_w)).collect();
            let Some(pairing) = pairing else { continue };
            if chosen.insert(&pairing) {
                summands.push((w, a));
            }
            if chosen.dim() == lifts.len() {
                break;
            }
        }
        if chosen.dim() < lifts.len() {
            return Err(PresentationError::NoEnvelopeMap(t));
        }
    }
    summands.sort_by_key(|(w, _)| *w);
    let (e1, f): (Vec<QuiverVertex>, Vec<Element>) = summands.into_iter().unzip();

    // ker f must be exactly the socle of P_t
    let mut kernel_dim = 0;
    for &y in alg.vertices() {
        let n = alg.hom_len(y, t);
        if n == 0 {
            continue;
        }
        let mut rows = Vec::new();
        for a in &f {
            let cols: Vec<Element> = alg.block(y, t).map(|g| alg.compose(a, &alg.unit(g))).collect();
            for r in 0..alg.hom_len(y, a.target) {
                rows.push(cols.iter().map(|e| e.coeffs[r]).collect());
            }
        }
        kernel_dim += Matrix::from_rows(n, rows).kernel(&field).len();
    }
    let kills_socle = f.iter().all(|a| alg.compose(a, &sigma_t).is_zero());
    if kernel_dim != 1 || !kills_socle {
        return Err(PresentationError::KernelMismatch(t));
    }

    Ok(InjectivePresentation { t, e0: t, e1, f, socle_quotient })
}

/// Which indecomposable summand of `T = T1 ⊕ E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Summand {
    Projective(QuiverVertex),
    Cone,
}

#[derive(Debug, Clone)]
pub struct TiltingComplex {
    pub presentation: InjectivePresentation,
    /// Mapping cone of `f`: `P_t` in degree -1, `E1` in degree 0.
    pub cone: ProjComplex,
    /// Indecomposable summands in vertex order, the cone standing at `t`.
    pub summands: Vec<(Summand, ProjComplex)>,
}

impl TiltingComplex {
    pub fn total(&self, alg: &AlgebraTable) -> ProjComplex {
        let parts: Vec<&ProjComplex> = self.summands.iter().map(|(_, c)| c).collect();
        ProjComplex::direct_sum(alg, &parts)
    }

    /// `E1` has no summand `P_t`, so `P_t` lies in the triangulated hull of
    /// the other summands and the cone.
    pub fn generates(&self) -> bool {
        let p = &self.presentation;
        self.cone.summands(-1) == [p.t] && !p.e1.contains(&p.t)
    }
}

pub fn tilting_complex(alg: &AlgebraTable, t: QuiverVertex) -> Result<TiltingComplex, PresentationError> {
    let presentation = injective_presentation(alg, t)?;
    let f: Vec<Vec<Element>> = presentation.f.iter().map(|a| vec![a.clone()]).collect();
    let cone = ProjComplex::cone(alg, vec![t], presentation.e1.clone(), f)?;
    let summands = alg
        .vertices()
        .iter()
        .map(|&v| {
            if v == t {
                (Summand::Cone, cone.clone())
            } else {
                (Summand::Projective(v), ProjComplex::stalk(v, 0))
            }
        })
        .collect();
    Ok(TiltingComplex { presentation, cone, summands })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::algebra::build_algebra;
    use crate::lab::complex::hom_dim;
    use crate::quiver::{brauer_line_presentation, quiver_of};
    use crate::tree::PlanarTree;

    #[test]
    fn two_line_presentation_is_the_arrow() {
        let alg = build_algebra(&brauer_line_presentation(2).unwrap(), 2).unwrap();
        let p = injective_presentation(&alg, 1).unwrap();
        assert_eq!(p.e1, vec![2]);
        assert_eq!(p.f, vec![alg.path(&[1]).unwrap()]);
        assert!(p.is_minimal(&alg));
        let tc = tilting_complex(&alg, 1).unwrap();
        assert_eq!(tc.summands.len(), 2);
        assert_eq!(tc.summands[1], (Summand::Projective(2), ProjComplex::stalk(2, 0)));
        assert!(tc.generates());
    }

    #[test]
    fn two_cycle_edge_has_two_summands() {
        // edges 1:a-b, 2:b-c, 3:c-d, 4:d-e, 5:c-f
        let tree = PlanarTree::from_rotations([
            (0, vec![1]),
            (1, vec![1, 2]),
            (2, vec![3, 5, 2]),
            (3, vec![3, 4]),
            (4, vec![4]),
            (5, vec![5]),
        ])
        .unwrap();
        let alg = build_algebra(&quiver_of(&tree).unwrap(), 3).unwrap();
        let p = injective_presentation(&alg, 3).unwrap();
        assert_eq!(p.e1, vec![4, 5]);
        assert_eq!(p.socle_quotient, BTreeMap::from([(4, 1), (5, 1)]));
    }

    #[test]
    fn cone_has_no_maps_to_other_cycle_members() {
        let star = PlanarTree::from_rotations([(0, vec![1, 2, 3, 4]), (1, vec![1]), (2, vec![2]), (3, vec![3]), (4, vec![4])]).unwrap();
        let alg = build_algebra(&quiver_of(&star).unwrap(), 2).unwrap();
        let tc = tilting_complex(&alg, 1).unwrap();
        assert_eq!(tc.presentation.e1, vec![2]);
        // a_p = 2; the others on the cycle receive nothing from the cone
        for v in [3, 4] {
            assert_eq!(hom_dim(&alg, &tc.cone, &ProjComplex::stalk(v, 0), 0).unwrap(), 0);
        }
        assert_eq!(hom_dim(&alg, &tc.cone, &ProjComplex::stalk(2, 0), 0).unwrap(), 1);
    }

    #[test]
    fn loops_block_reflection() {
        use crate::quiver::{Arrow, QuiverWithRelations, Relation};
        let q = QuiverWithRelations {
            vertices: vec![1],
            arrows: vec![Arrow { id: 1, source: 1, target: 1, cycle_tag: 0 }],
            relations: vec![Relation::zero(vec![1, 1])],
        };
        let alg = build_algebra(&q, 2).unwrap();
        assert_eq!(injective_presentation(&alg, 1).unwrap_err(), PresentationError::SelfExtension(1));
        assert_eq!(injective_presentation(&alg, 7).unwrap_err(), PresentationError::UnknownVertex(7));
    }
}
