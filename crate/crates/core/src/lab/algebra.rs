//! Finite-dimensional quotients of path algebras over `GF(p)`.
//!
//! The algebra is stored as the category of its indecomposable projectives:
//! the basis of `Hom(P_x, P_y)` is a set of path classes from `x` to `y`, and
//! products are compositions of maps (`a ∘ b` applies `b` first), matching the
//! right-to-left path notation of [`Relation`](crate::quiver::Relation).

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldError, PrimeField, Subspace};
use crate::quiver::{Arrow, ArrowId, IntMatrix, QuiverError, QuiverVertex, QuiverWithRelations, RelationKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("relation {0} is not admissible: every path in a relation needs length at least 2")]
    NotAdmissible(usize),
    #[error("paths of length {cap} survive the relations; infinite-dimensional?")]
    InfiniteDimensional { cap: usize },
    #[error("algebra invariant violated: {0}")]
    InvariantViolated(String),
    #[error("unknown quiver vertex {0}")]
    UnknownVertex(QuiverVertex),
    #[error("unknown arrow {0}")]
    UnknownArrow(ArrowId),
    #[error("path does not compose: {0:?}")]
    BadPath(Vec<ArrowId>),
}

/// A basis element: the class of a path, written right to left as in
/// relations. Trivial paths have an empty `word`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathClass {
    pub source: QuiverVertex,
    pub target: QuiverVertex,
    pub word: Vec<ArrowId>,
    /// Radical layer; equal to the path length.
    pub layer: usize,
}

/// An element of `Hom(P_source, P_target)`, in coordinates of that block of
/// the basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    pub source: QuiverVertex,
    pub target: QuiverVertex,
    pub coeffs: Vec<u32>,
}

impl Element {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

// a word in traversal order: first arrow first, arrows as indices
type Word = (QuiverVertex, Vec<usize>);

#[derive(Debug, Clone)]
pub struct AlgebraTable {
    field: PrimeField,
    vertices: Vec<QuiverVertex>,
    arrows: Vec<Arrow>,
    basis: Vec<PathClass>,
    blocks: BTreeMap<(QuiverVertex, QuiverVertex), Range<usize>>,
    // mult[i * dim + j] = basis[i] ∘ basis[j] as sparse global coordinates
    mult: Vec<Vec<(usize, u32)>>,
    // normal forms of all nonzero words below the length cap
    normal: HashMap<Word, Vec<(usize, u32)>>,
    // relations in traversal order as sparse word combinations
    relations: Vec<Vec<(Word, u32)>>,
    length_cap: usize,
    nakayama: Option<BTreeMap<QuiverVertex, QuiverVertex>>,
}

fn word_end(arrows: &[Arrow], w: &Word) -> QuiverVertex {
    w.1.last().map(|&a| arrows[a].target).unwrap_or(w.0)
}

/// Builds the algebra presented by `q` over `GF(p)`.
///
/// Paths are enumerated by length with zero relations removed, equality
/// relations are closed into a two-sided ideal, and the length cap grows
/// until every path of the top length lies in the ideal. The cap is bounded
/// by `2 * (number of vertices + 1)`.
pub fn build_algebra(q: &QuiverWithRelations, p: u32) -> Result<AlgebraTable, AlgebraError> {
    let field = PrimeField::new(p)?;
    q.check_relations()?;
    let arrows = q.arrows.clone();
    let index: HashMap<ArrowId, usize> = arrows.iter().enumerate().map(|(i, a)| (a.id, i)).collect();
    let to_word = |path: &[ArrowId]| -> Word {
        let w: Vec<usize> = path.iter().rev().map(|id| index[id]).collect();
        (arrows[w[0]].source, w)
    };

    let mut zero_words: HashSet<Vec<usize>> = HashSet::new();
    let mut relations = Vec::new();
    for (i, r) in q.relations.iter().enumerate() {
        let sides: Vec<&Vec<ArrowId>> = std::iter::once(&r.left).chain(r.right.as_ref()).collect();
        if sides.iter().any(|s| s.len() < 2) {
            return Err(AlgebraError::NotAdmissible(i));
        }
        match r.kind {
            RelationKind::Zero => {
                zero_words.insert(to_word(&r.left).1);
                relations.push(vec![(to_word(&r.left), 1)]);
            }
            RelationKind::Equality => {
                let right = r.right.as_ref().expect("checked");
                relations.push(vec![(to_word(&r.left), 1), (to_word(right), field.neg(1))]);
            }
        }
    }
    let max_zero = zero_words.iter().map(Vec::len).max().unwrap_or(0);

    let hard_cap = 2 * (q.vertices.len() + 1);
    let mut cap = 2;
    loop {
        if let Some(table) =
            try_build(field, q, &arrows, &zero_words, max_zero, &relations, cap)?
        {
            table.check_invariants()?;
            return Ok(table);
        }
        if cap > hard_cap {
            return Err(AlgebraError::InfiniteDimensional { cap: hard_cap });
        }
        cap += 1;
    }
}

// Builds KQ / (I + J^cap); returns None while paths of length cap - 1 survive.
fn try_build(
    field: PrimeField,
    q: &QuiverWithRelations,
    arrows: &[Arrow],
    zero_words: &HashSet<Vec<usize>>,
    max_zero: usize,
    relations: &[Vec<(Word, u32)>],
    cap: usize,
) -> Result<Option<AlgebraTable>, AlgebraError> {
    // clean words by increasing length
    let mut words: Vec<Word> = q.vertices.iter().map(|&v| (v, Vec::new())).collect();
    let mut start = 0;
    for _ in 1..cap {
        let end = words.len();
        for i in start..end {
            let w = words[i].clone();
            let at = word_end(arrows, &w);
            for (ai, a) in arrows.iter().enumerate() {
                if a.source != at {
                    continue;
                }
                let mut next = w.1.clone();
                next.push(ai);
                let n = next.len();
                let clean = (2..=max_zero.min(n)).all(|k| !zero_words.contains(&next[n - k..]));
                if clean {
                    words.push((w.0, next));
                }
            }
        }
        start = end;
    }
    let column: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let ncols = words.len();
    let vector_of = |terms: &[(Word, u32)]| -> Vec<u32> {
        let mut v = vec![0u32; ncols];
        for (w, c) in terms {
            if let Some(&i) = column.get(w) {
                v[i] = field.add(v[i], *c);
            }
        }
        v
    };

    // two-sided closure of the relations
    let mut ideal = Subspace::new(field, ncols);
    let mut queue: VecDeque<Vec<u32>> = relations.iter().map(|r| vector_of(r)).collect();
    while let Some(v) = queue.pop_front() {
        if !ideal.insert(&v) {
            continue;
        }
        let Some(lead) = v.iter().position(|&c| c != 0) else { continue };
        let (src, tgt) = (words[lead].0, word_end(arrows, &words[lead]));
        let terms: Vec<(usize, u32)> = v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect();
        for (ai, a) in arrows.iter().enumerate() {
            if a.source == tgt {
                let ext: Vec<(Word, u32)> = terms
                    .iter()
                    .map(|&(i, c)| {
                        let mut w = words[i].1.clone();
                        w.push(ai);
                        ((src, w), c)
                    })
                    .collect();
                queue.push_back(vector_of(&ext));
            }
            if a.target == src {
                let ext: Vec<(Word, u32)> = terms
                    .iter()
                    .map(|&(i, c)| {
                        let mut w = vec![ai];
                        w.extend_from_slice(&words[i].1);
                        ((a.source, w), c)
                    })
                    .collect();
                queue.push_back(vector_of(&ext));
            }
        }
    }

    let top = cap - 1;
    for (i, w) in words.iter().enumerate() {
        if w.1.len() == top {
            let mut e = vec![0u32; ncols];
            e[i] = 1;
            if !ideal.contains(&e) {
                return Ok(None);
            }
        }
    }

    // standard words are the non-pivot columns
    let mut is_pivot = vec![false; ncols];
    for &p in ideal.pivots() {
        is_pivot[p] = true;
    }
    let mut standard: Vec<usize> = (0..ncols).filter(|&i| !is_pivot[i]).collect();
    let key = |i: usize| {
        let w = &words[i];
        (w.0, word_end(arrows, w), w.1.len(), w.1.clone())
    };
    standard.sort_by_key(|&i| key(i));
    let mut global_of_column = vec![usize::MAX; ncols];
    let mut basis = Vec::new();
    let mut blocks: BTreeMap<(QuiverVertex, QuiverVertex), Range<usize>> = BTreeMap::new();
    for (g, &c) in standard.iter().enumerate() {
        global_of_column[c] = g;
        let w = &words[c];
        let (s, t) = (w.0, word_end(arrows, w));
        blocks.entry((s, t)).and_modify(|r| r.end = g + 1).or_insert(g..g + 1);
        basis.push(PathClass {
            source: s,
            target: t,
            word: w.1.iter().rev().map(|&a| arrows[a].id).collect(),
            layer: w.1.len(),
        });
    }

    let mut normal: HashMap<Word, Vec<(usize, u32)>> = HashMap::new();
    for (i, w) in words.iter().enumerate() {
        let mut e = vec![0u32; ncols];
        e[i] = 1;
        ideal.reduce(&mut e);
        let sparse: Vec<(usize, u32)> = e
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(c, &x)| (global_of_column[c], x))
            .collect();
        debug_assert!(sparse.iter().all(|&(g, _)| g != usize::MAX));
        if !sparse.is_empty() {
            normal.insert(w.clone(), sparse);
        }
    }

    let dim = basis.len();
    let mut mult = vec![Vec::new(); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            if basis[j].target != basis[i].source {
                continue;
            }
            // basis[i] after basis[j]: traverse j's word, then i's
            let wj = &words[standard[j]];
            let wi = &words[standard[i]];
            let mut w = wj.1.clone();
            w.extend_from_slice(&wi.1);
            if let Some(nf) = normal.get(&(wj.0, w)) {
                mult[i * dim + j] = nf.clone();
            }
        }
    }

    let mut table = AlgebraTable {
        field,
        vertices: q.vertices.clone(),
        arrows: arrows.to_vec(),
        basis,
        blocks,
        mult,
        normal,
        relations: relations.to_vec(),
        length_cap: cap,
        nakayama: None,
    };
    table.nakayama = table.compute_nakayama();
    Ok(Some(table))
}

impl AlgebraTable {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn vertices(&self) -> &[QuiverVertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[PathClass] {
        &self.basis
    }

    /// Paths of length at least this are zero.
    pub fn length_cap(&self) -> usize {
        self.length_cap
    }

    pub fn has_vertex(&self, v: QuiverVertex) -> bool {
        self.vertices.contains(&v)
    }

    /// Global basis indices of `Hom(P_x, P_y)`.
    pub fn block(&self, x: QuiverVertex, y: QuiverVertex) -> Range<usize> {
        self.blocks.get(&(x, y)).cloned().unwrap_or(0..0)
    }

    /// `dim Hom(P_x, P_y) = dim e_y Λ e_x`.
    pub fn hom_len(&self, x: QuiverVertex, y: QuiverVertex) -> usize {
        self.block(x, y).len()
    }

    /// Sparse expansion of `basis[i] ∘ basis[j]`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.mult[i * self.dim() + j]
    }

    pub fn zero(&self, x: QuiverVertex, y: QuiverVertex) -> Element {
        Element { source: x, target: y, coeffs: vec![0; self.hom_len(x, y)] }
    }

    pub fn identity(&self, v: QuiverVertex) -> Element {
        let mut e = self.zero(v, v);
        let r = self.block(v, v);
        let local = (r.clone()).position(|g| self.basis[g].layer == 0).expect("idempotent");
        e.coeffs[local] = 1;
        e
    }

    /// Basis element `g` as an element of its block.
    pub fn unit(&self, g: usize) -> Element {
        let b = &self.basis[g];
        let mut e = self.zero(b.source, b.target);
        e.coeffs[g - self.block(b.source, b.target).start] = 1;
        e
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &Element, f: &Element) -> Element {
        assert_eq!(f.target, g.source, "composition of non-composable elements");
        let mut out = self.zero(f.source, g.target);
        let (gr, fr, or) = (
            self.block(g.source, g.target),
            self.block(f.source, f.target),
            self.block(f.source, g.target),
        );
        for (gi, &gc) in g.coeffs.iter().enumerate() {
            if gc == 0 {
                continue;
            }
            for (fi, &fc) in f.coeffs.iter().enumerate() {
                if fc == 0 {
                    continue;
                }
                let c = self.field.mul(gc, fc);
                for &(k, x) in self.product(gr.start + gi, fr.start + fi) {
                    let slot = &mut out.coeffs[k - or.start];
                    *slot = self.field.add(*slot, self.field.mul(c, x));
                }
            }
        }
        out
    }

    /// `acc += c * e`.
    pub fn axpy(&self, acc: &mut Element, c: u32, e: &Element) {
        assert_eq!((acc.source, acc.target), (e.source, e.target));
        self.field.axpy(&mut acc.coeffs, c, &e.coeffs);
    }

    /// The class of a path written right to left (`[a2, a1]` applies `a1`
    /// first). The empty path is not accepted; use [`Self::identity`].
    pub fn path(&self, path: &[ArrowId]) -> Result<Element, AlgebraError> {
        let mut w = Vec::with_capacity(path.len());
        for id in path.iter().rev() {
            let i = self.arrows.iter().position(|a| a.id == *id).ok_or(AlgebraError::UnknownArrow(*id))?;
            w.push(i);
        }
        let Some(&first) = w.first() else {
            return Err(AlgebraError::BadPath(path.to_vec()));
        };
        for pair in w.windows(2) {
            if self.arrows[pair[0]].target != self.arrows[pair[1]].source {
                return Err(AlgebraError::BadPath(path.to_vec()));
            }
        }
        let source = self.arrows[first].source;
        let target = self.arrows[*w.last().expect("nonempty")].target;
        let mut e = self.zero(source, target);
        let start = self.block(source, target).start;
        if let Some(nf) = self.normal.get(&(source, w)) {
            for &(g, c) in nf {
                e.coeffs[g - start] = c;
            }
        }
        Ok(e)
    }

    /// Whether `e` lies in the radical, i.e. has no idempotent component.
    pub fn in_radical(&self, e: &Element) -> bool {
        let start = self.block(e.source, e.target).start;
        e.coeffs.iter().enumerate().all(|(i, &c)| c == 0 || self.basis[start + i].layer > 0)
    }

    /// Matrix of `dim Hom(P_x, P_y)`, rows `x`, columns `y`.
    pub fn dim_matrix(&self) -> IntMatrix {
        let labels = self.vertices.clone();
        let entries = labels
            .iter()
            .map(|&x| labels.iter().map(|&y| self.hom_len(x, y) as u32).collect())
            .collect();
        IntMatrix { labels, entries }
    }

    /// Relations in traversal order, for evaluating on representations.
    pub(crate) fn relations(&self) -> &[Vec<(Word, u32)>] {
        &self.relations
    }

    /// Basis of the socle of `P_w` restricted to `Hom(P_y, P_w)`: elements
    /// killed by precomposition with every arrow.
    pub fn socle_block(&self, y: QuiverVertex, w: QuiverVertex) -> Vec<Element> {
        let r = self.block(y, w);
        if r.is_empty() {
            return Vec::new();
        }
        let into_y: Vec<usize> = (0..self.arrows.len()).filter(|&a| self.arrows[a].target == y).collect();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for &a in &into_y {
            let alpha = self.path(&[self.arrows[a].id]).expect("arrow");
            let out = self.block(self.arrows[a].source, w);
            let mut m = vec![vec![0u32; r.len()]; out.len()];
            for (col, g) in r.clone().enumerate() {
                let img = self.compose(&self.unit(g), &alpha);
                for (row, &c) in img.coeffs.iter().enumerate() {
                    m[row][col] = c;
                }
            }
            rows.extend(m);
        }
        let kernel = crate::field::Matrix::from_rows(r.len(), rows).kernel(&self.field);
        kernel.into_iter().map(|coeffs| Element { source: y, target: w, coeffs }).collect()
    }

    fn compute_nakayama(&self) -> Option<BTreeMap<QuiverVertex, QuiverVertex>> {
        let mut nu = BTreeMap::new();
        for &w in &self.vertices {
            let mut found = None;
            for &y in &self.vertices {
                let k = self.socle_block(y, w).len();
                if k > 1 || (k == 1 && found.is_some()) {
                    return None;
                }
                if k == 1 {
                    found = Some(y);
                }
            }
            nu.insert(w, found?);
        }
        let mut image: Vec<_> = nu.values().copied().collect();
        image.sort_unstable();
        image.dedup();
        (image.len() == nu.len()).then_some(nu)
    }

    /// For a selfinjective algebra, maps `w` to the vertex of the simple
    /// socle of `P_w`. `None` when some socle is not simple or two
    /// projectives share a socle.
    pub fn nakayama(&self) -> Option<&BTreeMap<QuiverVertex, QuiverVertex>> {
        self.nakayama.as_ref()
    }

    pub fn is_selfinjective(&self) -> bool {
        self.nakayama.is_some()
    }

    /// Socle of every indecomposable projective is isomorphic to its top.
    pub fn is_weakly_symmetric(&self) -> bool {
        self.nakayama.as_ref().is_some_and(|nu| nu.iter().all(|(a, b)| a == b))
    }

    /// Spanning element of the simple socle of `P_w`.
    pub fn socle(&self, w: QuiverVertex) -> Option<Element> {
        let y = *self.nakayama.as_ref()?.get(&w)?;
        self.socle_block(y, w).into_iter().next()
    }

    /// Checks associativity on every composable basis triple and that the
    /// trivial paths are orthogonal idempotents summing to one.
    pub fn check_invariants(&self) -> Result<(), AlgebraError> {
        let dim = self.dim();
        let violated = |m: String| Err(AlgebraError::InvariantViolated(m));
        for (g, b) in self.basis.iter().enumerate() {
            for &v in &self.vertices {
                let e = self.identity(v);
                let left = self.compose_if(&e, &self.unit(g));
                let right = self.compose_if(&self.unit(g), &e);
                let expect = |hit: bool| if hit { Some(self.unit(g)) } else { None };
                if left != expect(b.target == v) || right != expect(b.source == v) {
                    return violated(format!("idempotent e_{v} acts wrongly on basis element {g}"));
                }
            }
        }
        for a in 0..dim {
            for b in 0..dim {
                if self.basis[b].target != self.basis[a].source {
                    continue;
                }
                let ab = self.compose(&self.unit(a), &self.unit(b));
                for c in 0..dim {
                    if self.basis[c].target != self.basis[b].source {
                        continue;
                    }
                    let lhs = self.compose(&ab, &self.unit(c));
                    let bc = self.compose(&self.unit(b), &self.unit(c));
                    let rhs = self.compose(&self.unit(a), &bc);
                    if lhs != rhs {
                        return violated(format!("associativity fails on basis triple ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(())
    }

    // composition, or None when the blocks do not meet or the result is zero
    fn compose_if(&self, g: &Element, f: &Element) -> Option<Element> {
        if f.target != g.source {
            return None;
        }
        let h = self.compose(g, f);
        (!h.is_zero()).then_some(h)
    }
}
