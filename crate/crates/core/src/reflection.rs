//! Reflection of a Brauer tree at an edge.
//!
//! On trees the reflection slides the edge `t`: at each endpoint `x` of
//! degree at least two, `t` is detached and re-attached at the far end `z` of
//! its anti-clockwise successor `a_p`, immediately after `a_p`. On quivers the
//! same move removes `t` from its cycles and splices `t'` into the cycle at
//! `z` right after `a_p` (or opens a new two-cycle `a_p <-> t'` when `a_p` had
//! no second cycle).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::{Cycle, QuiverError, QuiverVertex, QuiverWithRelations};
use crate::tree::{EdgeId, PlanarTree, TreeError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReflectionError {
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("edge id {0} already in use")]
    EdgeIdInUse(EdgeId),
    #[error("multiplicity {0} > 1 unsupported")]
    MultiplicityUnsupported(u32),
    #[error("need at least 2 edges, got {0}")]
    TooFewEdges(usize),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionResult {
    pub tree: PlanarTree,
    pub new_edge: EdgeId,
    pub removed_edge: EdgeId,
    /// Successor of `t` at `x`.
    pub slide_a: EdgeId,
    /// Successor of `t` at `y`; absent when `t` is an end edge.
    pub slide_b: Option<EdgeId>,
    pub x: VertexId,
    pub y: VertexId,
    pub z: VertexId,
    pub w: Option<VertexId>,
}

/// JSON-friendly summary of a reflection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenameTable {
    pub removed: EdgeId,
    pub added: EdgeId,
}

impl ReflectionResult {
    pub fn rename(&self) -> RenameTable {
        RenameTable { removed: self.removed_edge, added: self.new_edge }
    }
}

fn check_reflectable(tree: &PlanarTree, t: EdgeId) -> Result<(VertexId, VertexId), ReflectionError> {
    if tree.multiplicity() > 1 {
        return Err(ReflectionError::MultiplicityUnsupported(tree.multiplicity()));
    }
    if tree.edge_count() < 2 {
        return Err(ReflectionError::TooFewEdges(tree.edge_count()));
    }
    tree.ends(t).ok_or(ReflectionError::UnknownEdge(t))
}

/// Reflects `tree` at edge `t`, naming the new edge `max edge id + 1`.
pub fn reflect_tree(tree: &PlanarTree, t: EdgeId) -> Result<ReflectionResult, ReflectionError> {
    reflect_tree_as(tree, t, tree.max_edge_id() + 1)
}

/// Reflects `tree` at edge `t`, naming the new edge `new_edge`.
pub fn reflect_tree_as(
    tree: &PlanarTree,
    t: EdgeId,
    new_edge: EdgeId,
) -> Result<ReflectionResult, ReflectionError> {
    let (u, v) = check_reflectable(tree, t)?;
    if tree.has_edge(new_edge) && new_edge != t {
        return Err(ReflectionError::EdgeIdInUse(new_edge));
    }
    // x carries the cycle of t; in the end-edge case y is the leaf
    let (x, y) = if tree.degree(u) == 1 { (v, u) } else { (u, v) };
    let end_edge = tree.degree(y) == 1;

    let mut rotation: BTreeMap<VertexId, Vec<EdgeId>> = tree.rotations().clone();
    let slide = |at: VertexId, rotation: &mut BTreeMap<VertexId, Vec<EdgeId>>| {
        let a = tree.successor(at, t).expect("t is incident");
        let far = tree.other_end(a, at).expect("a is incident");
        rotation.get_mut(&at).expect("vertex").retain(|&e| e != t);
        let list = rotation.get_mut(&far).expect("vertex");
        let pos = list.iter().position(|&e| e == a).expect("a at far end");
        list.insert(pos + 1, new_edge);
        (a, far)
    };

    let (slide_a, z) = slide(x, &mut rotation);
    let (slide_b, w) = if end_edge {
        rotation.insert(y, vec![new_edge]);
        (None, None)
    } else {
        let (b, w) = slide(y, &mut rotation);
        (Some(b), Some(w))
    };

    let tree = PlanarTree::new(rotation, 1, None)?;
    Ok(ReflectionResult { tree, new_edge, removed_edge: t, slide_a, slide_b, x, y, z, w })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverReflection {
    pub quiver: QuiverWithRelations,
    pub new_vertex: QuiverVertex,
}

/// Reflects a Brauer tree quiver at vertex `t`; the new vertex is
/// `max vertex + 1`, matching [`reflect_tree`]'s naming.
pub fn reflect_quiver(
    q: &QuiverWithRelations,
    t: QuiverVertex,
) -> Result<QuiverReflection, ReflectionError> {
    let new_vertex = q.vertices.iter().copied().max().unwrap_or(0) + 1;
    reflect_quiver_as(q, t, new_vertex)
}

pub fn reflect_quiver_as(
    q: &QuiverWithRelations,
    t: QuiverVertex,
    new_vertex: QuiverVertex,
) -> Result<QuiverReflection, ReflectionError> {
    if !q.vertices.contains(&t) {
        return Err(QuiverError::UnknownVertex(t).into());
    }
    if q.vertices.contains(&new_vertex) {
        return Err(QuiverError::NotBrauerShaped(format!("vertex {new_vertex} already exists")).into());
    }
    q.check_relations()?;
    let mut cycles = q.cycles()?;
    let mut next_tag = cycles.iter().map(|c| c.tag).max().unwrap_or(0) + 1;

    let through_t: Vec<usize> = (0..cycles.len()).filter(|&i| cycles[i].members.contains(&t)).collect();
    // (cycle index of a_p's second cycle or None, a_p)
    let mut splices = Vec::new();
    for &ci in &through_t {
        let a = cycles[ci].successor(t).expect("t on cycle");
        let other = (0..cycles.len()).find(|&j| j != ci && cycles[j].members.contains(&a));
        if let Some(j) = other {
            if through_t.contains(&j) {
                return Err(QuiverError::NotBrauerShaped(format!(
                    "vertices {t} and {a} share two cycles"
                ))
                .into());
            }
        }
        splices.push((other, a));
    }
    for &ci in &through_t {
        cycles[ci].members.retain(|&m| m != t);
    }
    for (other, a) in splices {
        match other {
            Some(j) => {
                let members = &mut cycles[j].members;
                let pos = members.iter().position(|&m| m == a).expect("a on cycle");
                members.insert(pos + 1, new_vertex);
            }
            None => {
                cycles.push(Cycle { tag: next_tag, members: vec![a, new_vertex] });
                next_tag += 1;
            }
        }
    }
    let cycles: Vec<Cycle> = cycles.into_iter().filter(|c| c.members.len() >= 2).collect();
    let vertices = q.vertices.iter().copied().filter(|&v| v != t).chain([new_vertex]);
    let quiver = QuiverWithRelations::from_cycles(vertices, &cycles)?;
    Ok(QuiverReflection { quiver, new_vertex })
}
