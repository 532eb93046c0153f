//! Bounded complexes of projectives and Hom spaces in the homotopy category.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::field::{Matrix, Subspace};
use crate::quiver::QuiverVertex;

use super::algebra::{AlgebraTable, Element};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("unknown quiver vertex {0}")]
    UnknownVertex(QuiverVertex),
    #[error("differential in degree {degree} has the wrong shape")]
    Shape { degree: i32 },
    #[error("differentials in degrees {degree} and {} do not compose to zero", degree + 1)]
    NotAComplex { degree: i32 },
    #[error("complex refers to vertices outside the algebra")]
    MismatchedAlgebra,
}

/// A bounded complex of finitely generated projectives.
///
/// `terms[d]` lists the indecomposable summands `P_v` in degree `d`. The
/// differential out of degree `d` is a matrix with one row per summand in
/// degree `d + 1` and one column per summand in degree `d`; entry `(k, i)`
/// lies in `Hom(P_{terms[d][i]}, P_{terms[d+1][k]})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjComplex {
    terms: BTreeMap<i32, Vec<QuiverVertex>>,
    diffs: BTreeMap<i32, Vec<Vec<Element>>>,
}

impl ProjComplex {
    /// `P_v` concentrated in `degree`.
    pub fn stalk(v: QuiverVertex, degree: i32) -> Self {
        Self { terms: BTreeMap::from([(degree, vec![v])]), diffs: BTreeMap::new() }
    }

    /// Assembles and validates a complex. Missing differentials are zero.
    pub fn new(
        alg: &AlgebraTable,
        terms: BTreeMap<i32, Vec<QuiverVertex>>,
        mut diffs: BTreeMap<i32, Vec<Vec<Element>>>,
    ) -> Result<Self, ComplexError> {
        let terms: BTreeMap<i32, Vec<QuiverVertex>> = terms.into_iter().filter(|(_, s)| !s.is_empty()).collect();
        for v in terms.values().flatten() {
            if !alg.has_vertex(*v) {
                return Err(ComplexError::UnknownVertex(*v));
            }
        }
        for (&d, m) in &diffs {
            let (from, to) = (terms.get(&d), terms.get(&(d + 1)));
            let (Some(from), Some(to)) = (from, to) else {
                if m.iter().flatten().all(Element::is_zero) {
                    continue;
                }
                return Err(ComplexError::Shape { degree: d });
            };
            if m.len() != to.len() {
                return Err(ComplexError::Shape { degree: d });
            }
            for (k, row) in m.iter().enumerate() {
                if row.len() != from.len() {
                    return Err(ComplexError::Shape { degree: d });
                }
                for (i, e) in row.iter().enumerate() {
                    if (e.source, e.target) != (from[i], to[k]) || e.coeffs.len() != alg.hom_len(from[i], to[k]) {
                        return Err(ComplexError::Shape { degree: d });
                    }
                }
            }
        }
        diffs.retain(|d, _| terms.contains_key(d) && terms.contains_key(&(d + 1)));
        let c = Self { terms, diffs };
        for &d in c.terms.keys() {
            if !c.terms.contains_key(&(d + 2)) {
                continue;
            }
            let lo = c.differential(alg, d);
            let hi = c.differential(alg, d + 1);
            let sq = mat_mul(alg, &hi, &lo, &c.terms[&d], &c.terms[&(d + 2)]);
            if sq.iter().flatten().any(|e| !e.is_zero()) {
                return Err(ComplexError::NotAComplex { degree: d });
            }
        }
        Ok(c)
    }

    /// Mapping cone of `f: P -> Q` (given as a matrix over summands), placed
    /// in degrees `-1` and `0`.
    pub fn cone(
        alg: &AlgebraTable,
        from: Vec<QuiverVertex>,
        to: Vec<QuiverVertex>,
        f: Vec<Vec<Element>>,
    ) -> Result<Self, ComplexError> {
        Self::new(alg, BTreeMap::from([(-1, from), (0, to)]), BTreeMap::from([(-1, f)]))
    }

    /// Direct sum, summands of each degree concatenated in argument order.
    pub fn direct_sum(alg: &AlgebraTable, parts: &[&ProjComplex]) -> Self {
        let mut terms: BTreeMap<i32, Vec<QuiverVertex>> = BTreeMap::new();
        for p in parts {
            for (&d, s) in &p.terms {
                terms.entry(d).or_default().extend(s);
            }
        }
        let mut diffs = BTreeMap::new();
        for (&d, from) in &terms {
            let Some(to) = terms.get(&(d + 1)) else { continue };
            let mut m: Vec<Vec<Element>> =
                to.iter().map(|&y| from.iter().map(|&x| alg.zero(x, y)).collect()).collect();
            let (mut r0, mut c0) = (0, 0);
            for p in parts {
                let (nf, nt) = (p.summands(d).len(), p.summands(d + 1).len());
                if let Some(block) = p.diffs.get(&d) {
                    for k in 0..nt {
                        for i in 0..nf {
                            m[r0 + k][c0 + i] = block[k][i].clone();
                        }
                    }
                }
                r0 += nt;
                c0 += nf;
            }
            diffs.insert(d, m);
        }
        Self { terms, diffs }
    }

    pub fn summands(&self, d: i32) -> &[QuiverVertex] {
        self.terms.get(&d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.terms.keys().copied()
    }

    pub fn terms(&self) -> &BTreeMap<i32, Vec<QuiverVertex>> {
        &self.terms
    }

    /// Differential out of degree `d`, with zeros filled in.
    pub fn differential(&self, alg: &AlgebraTable, d: i32) -> Vec<Vec<Element>> {
        if let Some(m) = self.diffs.get(&d) {
            return m.clone();
        }
        let from = self.summands(d);
        self.summands(d + 1).iter().map(|&y| from.iter().map(|&x| alg.zero(x, y)).collect()).collect()
    }

    /// The same complex with summands of each degree reordered by
    /// `perm[d]`, where new position `i` holds old summand `perm[d][i]`.
    pub fn permuted(&self, perm: &BTreeMap<i32, Vec<usize>>) -> Self {
        let pick = |d: i32| -> Vec<usize> {
            perm.get(&d).cloned().unwrap_or_else(|| (0..self.summands(d).len()).collect())
        };
        let terms = self
            .terms
            .iter()
            .map(|(&d, s)| (d, pick(d).iter().map(|&i| s[i]).collect()))
            .collect();
        let diffs = self
            .diffs
            .iter()
            .map(|(&d, m)| {
                let (cols, rows) = (pick(d), pick(d + 1));
                (d, rows.iter().map(|&k| cols.iter().map(|&i| m[k][i].clone()).collect()).collect())
            })
            .collect();
        Self { terms, diffs }
    }

    fn check_algebra(&self, alg: &AlgebraTable) -> Result<(), ComplexError> {
        if self.terms.values().flatten().all(|&v| alg.has_vertex(v)) {
            Ok(())
        } else {
            Err(ComplexError::MismatchedAlgebra)
        }
    }
}

// (b ∘ a) for matrices of elements: a is from -> mid, b is mid -> to
fn mat_mul(
    alg: &AlgebraTable,
    b: &[Vec<Element>],
    a: &[Vec<Element>],
    from: &[QuiverVertex],
    to: &[QuiverVertex],
) -> Vec<Vec<Element>> {
    to.iter()
        .enumerate()
        .map(|(k, &y)| {
            from.iter()
                .enumerate()
                .map(|(i, &x)| {
                    let mut acc = alg.zero(x, y);
                    for (m, row) in a.iter().enumerate() {
                        let h = alg.compose(&b[k][m], &row[i]);
                        alg.axpy(&mut acc, 1, &h);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// A family of maps `C^d -> D^{d+shift}`, one matrix per degree of `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    pub shift: i32,
    pub components: BTreeMap<i32, Vec<Vec<Element>>>,
}

impl ChainMap {
    /// Degreewise composition `g ∘ f` of degree-zero maps.
    pub fn compose(alg: &AlgebraTable, g: &ChainMap, f: &ChainMap, c: &ProjComplex, e: &ProjComplex) -> ChainMap {
        assert!(f.shift == 0 && g.shift == 0, "only degree-zero maps compose here");
        let components = c
            .degrees()
            .filter(|&d| !e.summands(d).is_empty())
            .filter_map(|d| {
                let (fd, gd) = (f.components.get(&d)?, g.components.get(&d)?);
                Some((d, mat_mul(alg, gd, fd, c.summands(d), e.summands(d))))
            })
            .collect();
        ChainMap { shift: 0, components }
    }
}

#[derive(Debug, Clone, Copy)]
struct Slot {
    degree: i32,
    row: usize,
    col: usize,
    offset: usize,
    len: usize,
}

/// `Hom(C, D[shift])` in the homotopy category: chain maps `C^d -> D^{d+shift}`
/// with `d_{D[shift]} f = f d_C`, modulo null-homotopic maps.
#[derive(Debug, Clone)]
pub struct HomSpace {
    shift: i32,
    slots: Vec<Slot>,
    unknowns: usize,
    cycles: Vec<Vec<u32>>,
    boundaries: Subspace,
    c: ProjComplex,
    d: ProjComplex,
}

fn layout(alg: &AlgebraTable, c: &ProjComplex, d: &ProjComplex, shift: i32) -> (Vec<Slot>, usize) {
    let mut slots = Vec::new();
    let mut offset = 0;
    for deg in c.degrees() {
        for (row, &y) in d.summands(deg + shift).iter().enumerate() {
            for (col, &x) in c.summands(deg).iter().enumerate() {
                let len = alg.hom_len(x, y);
                slots.push(Slot { degree: deg, row, col, offset, len });
                offset += len;
            }
        }
    }
    (slots, offset)
}

impl HomSpace {
    pub fn new(alg: &AlgebraTable, c: &ProjComplex, d: &ProjComplex, shift: i32) -> Result<Self, ComplexError> {
        c.check_algebra(alg)?;
        d.check_algebra(alg)?;
        let field = alg.field();
        let sign = if shift % 2 == 0 { 1 } else { field.neg(1) };
        let (slots, unknowns) = layout(alg, c, d, shift);

        // equations: sign * d_D f^deg - f^{deg+1} d_C = 0 as maps C^deg -> D^{deg+shift+1}
        let mut eq_offset: BTreeMap<(i32, usize, usize), usize> = BTreeMap::new();
        let mut eq_rows = 0;
        for deg in c.degrees() {
            for (l, &y) in d.summands(deg + shift + 1).iter().enumerate() {
                for (i, &x) in c.summands(deg).iter().enumerate() {
                    eq_offset.insert((deg, l, i), eq_rows);
                    eq_rows += alg.hom_len(x, y);
                }
            }
        }
        let mut system = Matrix::zeros(eq_rows, unknowns);
        for s in &slots {
            let x = c.summands(s.degree)[s.col];
            let y = d.summands(s.degree + shift)[s.row];
            let dd = d.differential(alg, s.degree + shift);
            let dc = c.differential(alg, s.degree - 1);
            let start = alg.block(x, y).start;
            for b in 0..s.len {
                let unit = alg.unit(start + b);
                let col = s.offset + b;
                // d_D after the unknown
                for (l, row) in dd.iter().enumerate() {
                    let img = alg.compose(&row[s.row], &unit);
                    let base = eq_offset[&(s.degree, l, s.col)];
                    for (k, &v) in img.coeffs.iter().enumerate() {
                        if v != 0 {
                            system.add_to(&field, base + k, col, field.mul(sign, v));
                        }
                    }
                }
                // the unknown as f^{deg}, after d_C out of deg - 1
                for (i, _) in c.summands(s.degree - 1).iter().enumerate() {
                    let img = alg.compose(&unit, &dc[s.col][i]);
                    let base = eq_offset[&(s.degree - 1, s.row, i)];
                    for (k, &v) in img.coeffs.iter().enumerate() {
                        if v != 0 {
                            system.add_to(&field, base + k, col, field.neg(v));
                        }
                    }
                }
            }
        }
        let cycles = system.kernel(&field);

        // boundaries: f^deg = sign * d_D h^deg + h^{deg+1} d_C
        let (hslots, _) = layout(alg, c, d, shift - 1);
        let slot_at: BTreeMap<(i32, usize, usize), Slot> =
            slots.iter().map(|s| ((s.degree, s.row, s.col), *s)).collect();
        let mut boundaries = Subspace::new(field, unknowns);
        for h in &hslots {
            let x = c.summands(h.degree)[h.col];
            let y = d.summands(h.degree + shift - 1)[h.row];
            let dd = d.differential(alg, h.degree + shift - 1);
            let dc = c.differential(alg, h.degree - 1);
            let start = alg.block(x, y).start;
            for b in 0..h.len {
                let unit = alg.unit(start + b);
                let mut v = vec![0u32; unknowns];
                for (k, row) in dd.iter().enumerate() {
                    let img = alg.compose(&row[h.row], &unit);
                    let s = slot_at[&(h.degree, k, h.col)];
                    for (j, &c0) in img.coeffs.iter().enumerate() {
                        let t = &mut v[s.offset + j];
                        *t = field.add(*t, field.mul(sign, c0));
                    }
                }
                for (i, _) in c.summands(h.degree - 1).iter().enumerate() {
                    let img = alg.compose(&unit, &dc[h.col][i]);
                    let s = slot_at[&(h.degree - 1, h.row, i)];
                    for (j, &c0) in img.coeffs.iter().enumerate() {
                        let t = &mut v[s.offset + j];
                        *t = field.add(*t, c0);
                    }
                }
                boundaries.insert(&v);
            }
        }
        Ok(Self { shift, slots, unknowns, cycles, boundaries, c: c.clone(), d: d.clone() })
    }

    pub fn dim(&self) -> usize {
        self.cycles.len() - self.boundaries.dim()
    }

    pub fn cycle_dim(&self) -> usize {
        self.cycles.len()
    }

    /// Chain maps whose classes form a basis of the Hom space.
    pub fn class_basis(&self) -> Vec<Vec<u32>> {
        let mut span = self.boundaries.clone();
        self.cycles.iter().filter(|z| span.insert(z)).cloned().collect()
    }

    /// All chain maps, as coordinate vectors.
    pub fn cycles(&self) -> &[Vec<u32>] {
        &self.cycles
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn is_null_homotopic(&self, v: &[u32]) -> bool {
        self.boundaries.contains(v)
    }

    pub fn boundaries(&self) -> &Subspace {
        &self.boundaries
    }

    pub fn to_map(&self, alg: &AlgebraTable, v: &[u32]) -> ChainMap {
        let mut components: BTreeMap<i32, Vec<Vec<Element>>> = BTreeMap::new();
        for deg in self.c.degrees() {
            let to = self.d.summands(deg + self.shift);
            if to.is_empty() {
                continue;
            }
            let from = self.c.summands(deg);
            components.insert(deg, to.iter().map(|&y| from.iter().map(|&x| alg.zero(x, y)).collect()).collect());
        }
        for s in &self.slots {
            let e = &mut components.get_mut(&s.degree).expect("slot degree")[s.row][s.col];
            e.coeffs.copy_from_slice(&v[s.offset..s.offset + s.len]);
        }
        ChainMap { shift: self.shift, components }
    }

    pub fn from_map(&self, f: &ChainMap) -> Vec<u32> {
        assert_eq!(f.shift, self.shift);
        let mut v = vec![0u32; self.unknowns];
        for s in &self.slots {
            if let Some(m) = f.components.get(&s.degree) {
                v[s.offset..s.offset + s.len].copy_from_slice(&m[s.row][s.col].coeffs);
            }
        }
        v
    }

    /// Whether `v` is a chain map.
    pub fn is_cycle(&self, v: &[u32]) -> bool {
        let mut span = Subspace::new(self.boundaries.field(), self.unknowns);
        for z in &self.cycles {
            span.insert(z);
        }
        span.contains(v)
    }
}

/// `dim Hom(C, D[j])` in the homotopy category.
pub fn hom_dim(alg: &AlgebraTable, c: &ProjComplex, d: &ProjComplex, j: i32) -> Result<usize, ComplexError> {
    Ok(HomSpace::new(alg, c, d, j)?.dim())
}
