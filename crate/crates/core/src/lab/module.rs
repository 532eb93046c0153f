//! Finite-dimensional right modules as quiver representations.
//!
//! A right module `M` has a space `M_v = M e_v` per vertex. An arrow
//! `α: u -> v` acts on the right, so it is stored as a linear map
//! `M_v -> M_u`.

use std::collections::BTreeMap;

use crate::field::{Matrix, PrimeField, Subspace};
use crate::quiver::QuiverVertex;

use super::algebra::AlgebraTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleRep {
    field: PrimeField,
    dims: BTreeMap<QuiverVertex, usize>,
    // indexed like AlgebraTable::arrows(); matrix is dims[source] x dims[target]
    maps: Vec<Matrix>,
    sources: Vec<QuiverVertex>,
    targets: Vec<QuiverVertex>,
}

/// A quotient `M / N` with coordinates on a complement of `N`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub module: ModuleRep,
    sub: BTreeMap<QuiverVertex, Subspace>,
    free: BTreeMap<QuiverVertex, Vec<usize>>,
}

impl Quotient {
    /// Image in the quotient of a vector of `M_v`.
    pub fn project(&self, v: QuiverVertex, x: &[u32]) -> Vec<u32> {
        let mut y = x.to_vec();
        self.sub[&v].reduce(&mut y);
        self.free[&v].iter().map(|&i| y[i]).collect()
    }

    /// A preimage in `M_v` of a quotient vector.
    pub fn lift(&self, v: QuiverVertex, x: &[u32]) -> Vec<u32> {
        let mut y = vec![0u32; self.sub[&v].ambient_dim()];
        for (&i, &c) in self.free[&v].iter().zip(x) {
            y[i] = c;
        }
        y
    }
}

impl ModuleRep {
    /// The indecomposable projective `P_w`, with `P_w e_y = Hom(P_y, P_w)`
    /// in block coordinates; arrows act by precomposition.
    pub fn projective(alg: &AlgebraTable, w: QuiverVertex) -> Self {
        let dims: BTreeMap<_, _> = alg.vertices().iter().map(|&y| (y, alg.hom_len(y, w))).collect();
        let mut maps = Vec::new();
        for a in alg.arrows() {
            let alpha = alg.path(&[a.id]).expect("arrow");
            let src = alg.block(a.target, w);
            let mut m = Matrix::zeros(dims[&a.source], dims[&a.target]);
            for (col, g) in src.enumerate() {
                let img = alg.compose(&alg.unit(g), &alpha);
                for (row, &c) in img.coeffs.iter().enumerate() {
                    m.set(row, col, c);
                }
            }
            maps.push(m);
        }
        Self {
            field: alg.field(),
            dims,
            maps,
            sources: alg.arrows().iter().map(|a| a.source).collect(),
            targets: alg.arrows().iter().map(|a| a.target).collect(),
        }
    }

    pub fn dim_at(&self, v: QuiverVertex) -> usize {
        self.dims.get(&v).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<QuiverVertex, usize> {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Right action of a path in traversal order (first arrow first,
    /// arrows as indices into the algebra's arrow list) on `x ∈ M_end`.
    pub fn act(&self, word: &[usize], x: &[u32]) -> Vec<u32> {
        word.iter().rev().fold(x.to_vec(), |v, &a| self.maps[a].apply(&self.field, &v))
    }

    /// Every relation of `alg` acts as zero.
    pub fn satisfies_relations(&self, alg: &AlgebraTable) -> bool {
        alg.relations().iter().all(|rel| {
            let Some(((s, w0), _)) = rel.first() else { return true };
            let end = w0.last().map(|&a| self.targets[a]).unwrap_or(*s);
            (0..self.dim_at(end)).all(|i| {
                let mut x = vec![0u32; self.dim_at(end)];
                x[i] = 1;
                let mut acc = vec![0u32; self.dim_at(*s)];
                for ((_, w), c) in rel {
                    self.field.axpy(&mut acc, *c, &self.act(w, &x));
                }
                acc.iter().all(|&c| c == 0)
            })
        })
    }

    /// Per-vertex basis of the socle: vectors killed by every arrow.
    pub fn socle(&self) -> BTreeMap<QuiverVertex, Vec<Vec<u32>>> {
        self.dims
            .iter()
            .map(|(&v, &d)| {
                let mut rows = Vec::new();
                for (a, m) in self.maps.iter().enumerate() {
                    if self.targets[a] == v {
                        rows.extend((0..m.rows()).map(|r| m.row(r).to_vec()));
                    }
                }
                (v, Matrix::from_rows(d, rows).kernel(&self.field))
            })
            .collect()
    }

    /// Quotient by the submodule spanned per vertex by `sub`; the caller
    /// guarantees `sub` is closed under the action.
    pub fn quotient(&self, sub: &BTreeMap<QuiverVertex, Vec<Vec<u32>>>) -> Quotient {
        let mut spaces = BTreeMap::new();
        let mut free = BTreeMap::new();
        for (&v, &d) in &self.dims {
            let mut s = Subspace::new(self.field, d);
            for x in sub.get(&v).into_iter().flatten() {
                s.insert(x);
            }
            let pivots = s.pivots().to_vec();
            free.insert(v, (0..d).filter(|i| !pivots.contains(i)).collect::<Vec<_>>());
            spaces.insert(v, s);
        }
        let mut q = Quotient {
            module: Self {
                field: self.field,
                dims: free.iter().map(|(&v, f): (&QuiverVertex, &Vec<usize>)| (v, f.len())).collect(),
                maps: Vec::new(),
                sources: self.sources.clone(),
                targets: self.targets.clone(),
            },
            sub: spaces,
            free,
        };
        let maps = (0..self.maps.len())
            .map(|a| {
                let (s, t) = (self.sources[a], self.targets[a]);
                let mut m = Matrix::zeros(q.module.dim_at(s), q.module.dim_at(t));
                for col in 0..q.module.dim_at(t) {
                    let mut e = vec![0u32; q.module.dim_at(t)];
                    e[col] = 1;
                    let img = self.maps[a].apply(&self.field, &q.lift(t, &e));
                    for (row, c) in q.project(s, &img).into_iter().enumerate() {
                        m.set(row, col, c);
                    }
                }
                m
            })
            .collect();
        q.module.maps = maps;
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::algebra::build_algebra;
    use crate::quiver::brauer_line_presentation;

    #[test]
    fn projectives_of_a_line_satisfy_relations() {
        let alg = build_algebra(&brauer_line_presentation(3).unwrap(), 2).unwrap();
        for &w in alg.vertices() {
            let p = ModuleRep::projective(&alg, w);
            assert!(p.satisfies_relations(&alg));
            let soc = p.socle();
            let total: usize = soc.values().map(Vec::len).sum();
            assert_eq!(total, 1);
            assert_eq!(soc[&w].len(), 1);
        }
    }

    #[test]
    fn quotient_by_socle_of_middle_projective() {
        let alg = build_algebra(&brauer_line_presentation(3).unwrap(), 3).unwrap();
        let p = ModuleRep::projective(&alg, 2);
        assert_eq!(p.total_dim(), 4);
        let q = p.quotient(&p.socle());
        assert_eq!(q.module.total_dim(), 3);
        assert!(q.module.satisfies_relations(&alg));
        // soc(P_2 / S_2) = S_1 + S_3
        let soc = q.module.socle();
        assert_eq!((soc[&1].len(), soc[&2].len(), soc[&3].len()), (1, 0, 1));
    }
}
