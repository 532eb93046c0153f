//! Quivers with relations presenting Brauer tree algebras.
//!
//! Quiver vertices are tree edges. Every tree vertex of degree at least two
//! contributes one oriented cycle through its incident edges, following the
//! anti-clockwise rotation. Paths in relations are arrow lists composed right
//! to left: `[a3, a2, a1]` is the path that applies `a1` first.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::{EdgeId, PlanarTree, VertexId};

pub type ArrowId = u32;
pub type QuiverVertex = EdgeId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("multiplicity {0} > 1 unsupported")]
    MultiplicityUnsupported(u32),
    #[error("need at least 2 edges, got {0}")]
    TooFewEdges(usize),
    #[error("unknown quiver vertex {0}")]
    UnknownVertex(QuiverVertex),
    #[error("quiver is not Brauer-tree shaped: {0}")]
    NotBrauerShaped(String),
    #[error("relation does not compose: {0}")]
    BadRelation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub id: ArrowId,
    #[serde(rename = "src")]
    pub source: QuiverVertex,
    #[serde(rename = "dst")]
    pub target: QuiverVertex,
    pub cycle_tag: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Zero,
    Equality,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Relation {
    pub kind: RelationKind,
    pub left: Vec<ArrowId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<Vec<ArrowId>>,
}

impl Relation {
    pub fn zero(path: Vec<ArrowId>) -> Self {
        Self { kind: RelationKind::Zero, left: path, right: None }
    }

    pub fn equality(left: Vec<ArrowId>, right: Vec<ArrowId>) -> Self {
        Self { kind: RelationKind::Equality, left, right: Some(right) }
    }
}

/// An oriented cycle of quiver vertices: `members[i] -> members[i + 1]`,
/// closing up at the end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cycle {
    pub tag: u32,
    pub members: Vec<QuiverVertex>,
}

impl Cycle {
    fn position(&self, v: QuiverVertex) -> Option<usize> {
        self.members.iter().position(|&m| m == v)
    }

    pub fn successor(&self, v: QuiverVertex) -> Option<QuiverVertex> {
        let i = self.position(v)?;
        Some(self.members[(i + 1) % self.members.len()])
    }

    pub fn predecessor(&self, v: QuiverVertex) -> Option<QuiverVertex> {
        let i = self.position(v)?;
        let k = self.members.len();
        Some(self.members[(i + k - 1) % k])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverWithRelations {
    pub vertices: Vec<QuiverVertex>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
}

/// Labeled comparison key: arrows and relations written as vertex sequences,
/// so arrow ids and cycle tags do not matter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverShape {
    pub vertices: BTreeSet<QuiverVertex>,
    pub arrows: BTreeSet<(QuiverVertex, QuiverVertex)>,
    pub relations: BTreeSet<(RelationKind, Vec<QuiverVertex>, Vec<QuiverVertex>)>,
}

impl QuiverWithRelations {
    /// Assembles the presentation determined by a family of cycles: one arrow
    /// per consecutive pair in each cycle, and the full Brauer relation set.
    pub fn from_cycles(
        vertices: impl IntoIterator<Item = QuiverVertex>,
        cycles: &[Cycle],
    ) -> Result<Self, QuiverError> {
        let vertices: BTreeSet<QuiverVertex> = vertices.into_iter().collect();
        let mut cycles: Vec<Cycle> = cycles.iter().filter(|c| c.members.len() >= 2).cloned().collect();
        cycles.sort_by_key(|c| c.tag);

        let mut membership: BTreeMap<QuiverVertex, Vec<usize>> = BTreeMap::new();
        for (ci, c) in cycles.iter().enumerate() {
            let distinct: BTreeSet<_> = c.members.iter().collect();
            if distinct.len() != c.members.len() {
                return Err(QuiverError::NotBrauerShaped(format!(
                    "cycle {} visits a vertex twice",
                    c.tag
                )));
            }
            for &m in &c.members {
                if !vertices.contains(&m) {
                    return Err(QuiverError::UnknownVertex(m));
                }
                membership.entry(m).or_default().push(ci);
            }
        }
        for v in &vertices {
            match membership.get(v).map(Vec::len).unwrap_or(0) {
                1 | 2 => {}
                k => {
                    return Err(QuiverError::NotBrauerShaped(format!(
                        "vertex {v} lies on {k} cycles"
                    )))
                }
            }
        }

        let mut arrows = Vec::new();
        // (cycle index, source vertex) -> arrow id
        let mut out_arrow: BTreeMap<(usize, QuiverVertex), ArrowId> = BTreeMap::new();
        for (ci, c) in cycles.iter().enumerate() {
            for (i, &src) in c.members.iter().enumerate() {
                let dst = c.members[(i + 1) % c.members.len()];
                let id = arrows.len() as ArrowId + 1;
                arrows.push(Arrow { id, source: src, target: dst, cycle_tag: c.tag });
                out_arrow.insert((ci, src), id);
            }
        }
        let into = |ci: usize, v: QuiverVertex| -> ArrowId {
            let pred = cycles[ci].predecessor(v).expect("member");
            out_arrow[&(ci, pred)]
        };
        // full cycle at v, right-to-left
        let around = |ci: usize, v: QuiverVertex| -> Vec<ArrowId> {
            let c = &cycles[ci];
            let start = c.position(v).expect("member");
            let k = c.members.len();
            let mut path: Vec<ArrowId> =
                (0..k).map(|j| out_arrow[&(ci, c.members[(start + j) % k])]).collect();
            path.reverse();
            path
        };

        let mut relations = Vec::new();
        for (&v, cs) in &membership {
            match *cs.as_slice() {
                [u, w] => {
                    relations.push(Relation::zero(vec![out_arrow[&(w, v)], into(u, v)]));
                    relations.push(Relation::zero(vec![out_arrow[&(u, v)], into(w, v)]));
                    relations.push(Relation::equality(around(u, v), around(w, v)));
                }
                [u] => {
                    let mut path = vec![out_arrow[&(u, v)]];
                    path.extend(around(u, v));
                    relations.push(Relation::zero(path));
                }
                _ => unreachable!("membership checked above"),
            }
        }

        Ok(Self { vertices: vertices.into_iter().collect(), arrows, relations })
    }

    pub fn arrow(&self, id: ArrowId) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.id == id)
    }

    /// Checks that every relation path composes and equality sides are parallel.
    pub fn check_relations(&self) -> Result<(), QuiverError> {
        let endpoints = |path: &[ArrowId]| -> Result<(QuiverVertex, QuiverVertex), QuiverError> {
            let mut it = path.iter().rev();
            let first = it
                .next()
                .ok_or_else(|| QuiverError::BadRelation("empty path".into()))?;
            let first = self
                .arrow(*first)
                .ok_or_else(|| QuiverError::BadRelation(format!("unknown arrow {first}")))?;
            let mut end = first.target;
            for id in it {
                let a = self
                    .arrow(*id)
                    .ok_or_else(|| QuiverError::BadRelation(format!("unknown arrow {id}")))?;
                if a.source != end {
                    return Err(QuiverError::BadRelation(format!(
                        "arrow {id} starts at {} but the path is at {end}",
                        a.source
                    )));
                }
                end = a.target;
            }
            Ok((first.source, end))
        };
        for r in &self.relations {
            let l = endpoints(&r.left)?;
            match (&r.kind, &r.right) {
                (RelationKind::Zero, None) => {}
                (RelationKind::Equality, Some(right)) => {
                    if endpoints(right)? != l {
                        return Err(QuiverError::BadRelation(format!(
                            "equality sides {:?} and {:?} are not parallel",
                            r.left, right
                        )));
                    }
                }
                _ => return Err(QuiverError::BadRelation("malformed relation".into())),
            }
        }
        Ok(())
    }

    /// Recovers the cycle structure from the arrows, checking the Brauer-tree
    /// shape invariants.
    pub fn cycles(&self) -> Result<Vec<Cycle>, QuiverError> {
        let vertex_set: BTreeSet<_> = self.vertices.iter().copied().collect();
        let mut by_tag: BTreeMap<u32, Vec<&Arrow>> = BTreeMap::new();
        for a in &self.arrows {
            if !vertex_set.contains(&a.source) {
                return Err(QuiverError::UnknownVertex(a.source));
            }
            if !vertex_set.contains(&a.target) {
                return Err(QuiverError::UnknownVertex(a.target));
            }
            by_tag.entry(a.cycle_tag).or_default().push(a);
        }
        let mut cycles = Vec::new();
        let mut count: BTreeMap<QuiverVertex, usize> = BTreeMap::new();
        for (tag, arrows) in by_tag {
            let mut next: BTreeMap<QuiverVertex, QuiverVertex> = BTreeMap::new();
            for a in &arrows {
                if next.insert(a.source, a.target).is_some() {
                    return Err(QuiverError::NotBrauerShaped(format!(
                        "vertex {} has two outgoing arrows in cycle {tag}",
                        a.source
                    )));
                }
            }
            let start = *next.keys().next().expect("nonempty group");
            let mut members = vec![start];
            let mut cur = next[&start];
            while cur != start {
                if members.len() > arrows.len() {
                    return Err(QuiverError::NotBrauerShaped(format!("cycle {tag} does not close")));
                }
                members.push(cur);
                cur = *next.get(&cur).ok_or_else(|| {
                    QuiverError::NotBrauerShaped(format!("cycle {tag} does not close at {cur}"))
                })?;
            }
            if members.len() != arrows.len() || members.len() < 2 {
                return Err(QuiverError::NotBrauerShaped(format!(
                    "arrows tagged {tag} do not form a single cycle of length >= 2"
                )));
            }
            for &m in &members {
                *count.entry(m).or_default() += 1;
            }
            cycles.push(Cycle { tag, members });
        }
        for v in &self.vertices {
            match count.get(v).copied().unwrap_or(0) {
                1 | 2 => {}
                k => {
                    return Err(QuiverError::NotBrauerShaped(format!(
                        "vertex {v} lies on {k} cycles"
                    )))
                }
            }
        }
        Ok(cycles)
    }

    /// Comparison key independent of arrow ids and cycle tags. Only
    /// meaningful when no two arrows are parallel, which holds for every
    /// Brauer tree quiver.
    pub fn shape(&self) -> QuiverShape {
        let by_id: BTreeMap<ArrowId, &Arrow> = self.arrows.iter().map(|a| (a.id, a)).collect();
        let walk = |path: &[ArrowId]| -> Vec<QuiverVertex> {
            let mut seq = Vec::with_capacity(path.len() + 1);
            for (i, id) in path.iter().rev().enumerate() {
                let a = by_id[id];
                if i == 0 {
                    seq.push(a.source);
                }
                seq.push(a.target);
            }
            seq
        };
        let relations = self
            .relations
            .iter()
            .map(|r| {
                let l = walk(&r.left);
                let rr = r.right.as_deref().map(walk).unwrap_or_default();
                if rr.is_empty() || l <= rr {
                    (r.kind, l, rr)
                } else {
                    (r.kind, rr, l)
                }
            })
            .collect();
        QuiverShape {
            vertices: self.vertices.iter().copied().collect(),
            arrows: self.arrows.iter().map(|a| (a.source, a.target)).collect(),
            relations,
        }
    }

    /// Graphviz digraph with one color per cycle tag.
    pub fn render_dot(&self) -> String {
        const PALETTE: [&str; 8] =
            ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "teal"];
        let tags: BTreeSet<u32> = self.arrows.iter().map(|a| a.cycle_tag).collect();
        let color: BTreeMap<u32, &str> =
            tags.iter().enumerate().map(|(i, &t)| (t, PALETTE[i % PALETTE.len()])).collect();
        let mut out = String::from("digraph brauer_quiver {\n");
        for v in &self.vertices {
            out.push_str(&format!("  q{v} [label=\"{v}\"];\n"));
        }
        for a in &self.arrows {
            out.push_str(&format!(
                "  q{} -> q{} [label=\"a{}\", color={}, cycle=\"{}\"];\n",
                a.source, a.target, a.id, color[&a.cycle_tag], a.cycle_tag
            ));
        }
        out.push_str("}\n");
        out
    }
}

fn require_brauer_input(tree: &PlanarTree) -> Result<(), QuiverError> {
    if tree.multiplicity() > 1 {
        return Err(QuiverError::MultiplicityUnsupported(tree.multiplicity()));
    }
    Ok(())
}

/// Cycles of the Brauer quiver: one per tree vertex of degree at least two,
/// tagged by that vertex.
pub fn tree_cycles(tree: &PlanarTree) -> Vec<Cycle> {
    tree.rotations()
        .iter()
        .filter(|(_, l)| l.len() >= 2)
        .map(|(&v, l)| Cycle { tag: v, members: l.clone() })
        .collect()
}

/// Quiver with relations of the Brauer tree algebra of `tree`.
pub fn quiver_of(tree: &PlanarTree) -> Result<QuiverWithRelations, QuiverError> {
    require_brauer_input(tree)?;
    if tree.edge_count() < 2 {
        return Err(QuiverError::TooFewEdges(tree.edge_count()));
    }
    QuiverWithRelations::from_cycles(tree.edges(), &tree_cycles(tree))
}

/// The Brauer line on `n` vertices: `alpha_i : i -> i+1` (arrow id `i`) and
/// `beta_i : i+1 -> i` (arrow id `n - 1 + i`), with `alpha_{i+1} alpha_i`,
/// `beta_i beta_{i+1}` zero, `alpha_i beta_i = beta_{i+1} alpha_{i+1}`, and the
/// cycle-plus-one relations at both ends.
pub fn brauer_line_presentation(n: usize) -> Result<QuiverWithRelations, QuiverError> {
    if n < 2 {
        return Err(QuiverError::TooFewEdges(n));
    }
    let n32 = n as u32;
    let alpha = |i: u32| i;
    let beta = |i: u32| n32 - 1 + i;
    let mut arrows = Vec::new();
    for i in 1..n32 {
        arrows.push(Arrow { id: alpha(i), source: i, target: i + 1, cycle_tag: i });
    }
    for i in 1..n32 {
        arrows.push(Arrow { id: beta(i), source: i + 1, target: i, cycle_tag: i });
    }
    let mut relations = Vec::new();
    for i in 1..n32 - 1 {
        relations.push(Relation::zero(vec![alpha(i + 1), alpha(i)]));
        relations.push(Relation::zero(vec![beta(i), beta(i + 1)]));
        relations.push(Relation::equality(vec![alpha(i), beta(i)], vec![beta(i + 1), alpha(i + 1)]));
    }
    relations.push(Relation::zero(vec![alpha(1), beta(1), alpha(1)]));
    relations.push(Relation::zero(vec![beta(n32 - 1), alpha(n32 - 1), beta(n32 - 1)]));
    Ok(QuiverWithRelations { vertices: (1..=n32).collect(), arrows, relations })
}

/// Square matrix indexed by a sorted label list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    pub labels: Vec<u32>,
    pub entries: Vec<Vec<u32>>,
}

impl IntMatrix {
    pub fn get(&self, x: u32, y: u32) -> Option<u32> {
        let i = self.labels.iter().position(|&l| l == x)?;
        let j = self.labels.iter().position(|&l| l == y)?;
        Some(self.entries[i][j])
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.labels.len();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }
}

/// Cartan matrix: 2 on the diagonal, 1 for distinct edges sharing a vertex.
pub fn cartan_matrix(tree: &PlanarTree) -> Result<IntMatrix, QuiverError> {
    require_brauer_input(tree)?;
    let labels: Vec<EdgeId> = tree.edges().collect();
    let share = |x: EdgeId, y: EdgeId| -> bool {
        let (a, b) = tree.ends(x).expect("edge");
        let (c, d) = tree.ends(y).expect("edge");
        let xs: [VertexId; 2] = [a, b];
        xs.contains(&c) || xs.contains(&d)
    };
    let entries = labels
        .iter()
        .map(|&x| {
            labels
                .iter()
                .map(|&y| if x == y { 2 } else if share(x, y) { 1 } else { 0 })
                .collect()
        })
        .collect();
    Ok(IntMatrix { labels, entries })
}
