//! Plane trees carrying a Brauer-tree structure.
//!
//! A [`PlanarTree`] stores, for every vertex, the anti-clockwise cyclic order
//! of its incident edges. Rotation lists are normalized to start at their
//! smallest edge id, so two trees compare equal exactly when they have the
//! same labels and the same cyclic orders.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = u32;
pub type EdgeId = u32;

/// Largest edge count accepted by [`enumerate_plane_trees`].
pub const MAX_ENUMERATION_EDGES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("tree is disconnected")]
    Disconnected,
    #[error("cycle present")]
    CyclePresent,
    #[error("edge degree \u{2260} 2: edge {edge} appears in {count} rotation list(s)")]
    EdgeDegree { edge: EdgeId, count: usize },
    #[error("duplicate in rotation: edge {edge} listed twice at vertex v{vertex}")]
    DuplicateInRotation { vertex: VertexId, edge: EdgeId },
    #[error("duplicate vertex v{0}")]
    DuplicateVertex(VertexId),
    #[error("bad multiplicity: {0}")]
    BadMultiplicity(String),
    #[error("tree has no edges")]
    NoEdges,
    #[error("enumeration bound exceeded: {requested} edges requested, supported range is 1..={max}")]
    BoundExceeded { requested: usize, max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericalInvariants {
    pub edge_count: usize,
    pub multiplicity: u32,
}

/// Plane-isomorphism class of a tree: the lexicographically least contour
/// word over all corners (`1` = step away from the root, `0` = step back).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarTree {
    rotation: BTreeMap<VertexId, Vec<EdgeId>>,
    ends: BTreeMap<EdgeId, (VertexId, VertexId)>,
    multiplicity: u32,
    exceptional: Option<VertexId>,
}

fn normalize_cycle(list: &mut [EdgeId]) {
    if let Some(pos) = list.iter().enumerate().min_by_key(|(_, e)| **e).map(|(i, _)| i) {
        list.rotate_left(pos);
    }
}

impl PlanarTree {
    /// Builds a tree from per-vertex anti-clockwise rotations and checks
    /// every structural invariant.
    pub fn new(
        rotation: BTreeMap<VertexId, Vec<EdgeId>>,
        multiplicity: u32,
        exceptional: Option<VertexId>,
    ) -> Result<Self, TreeError> {
        if multiplicity == 0 {
            return Err(TreeError::BadMultiplicity("multiplicity must be at least 1".into()));
        }
        match (multiplicity > 1, exceptional) {
            (true, None) => {
                return Err(TreeError::BadMultiplicity(format!(
                    "multiplicity {multiplicity} requires an exceptional vertex"
                )))
            }
            (false, Some(v)) => {
                return Err(TreeError::BadMultiplicity(format!(
                    "exceptional vertex v{v} given with multiplicity 1"
                )))
            }
            (true, Some(v)) if !rotation.contains_key(&v) => {
                return Err(TreeError::BadMultiplicity(format!(
                    "exceptional vertex v{v} is not a vertex of the tree"
                )))
            }
            _ => {}
        }

        let mut seen: BTreeMap<EdgeId, Vec<VertexId>> = BTreeMap::new();
        for (&v, list) in &rotation {
            let mut local = BTreeSet::new();
            for &e in list {
                if !local.insert(e) {
                    return Err(TreeError::DuplicateInRotation { vertex: v, edge: e });
                }
                seen.entry(e).or_default().push(v);
            }
        }
        if seen.is_empty() {
            return Err(TreeError::NoEdges);
        }
        let mut ends = BTreeMap::new();
        for (&e, vs) in &seen {
            if vs.len() != 2 {
                return Err(TreeError::EdgeDegree { edge: e, count: vs.len() });
            }
            ends.insert(e, (vs[0], vs[1]));
        }

        // connectivity by union-find over vertices
        let index: BTreeMap<VertexId, usize> =
            rotation.keys().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..index.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = index.len();
        let mut has_cycle = false;
        for &(a, b) in ends.values() {
            let (ra, rb) = (find(&mut parent, index[&a]), find(&mut parent, index[&b]));
            if ra == rb {
                has_cycle = true;
            } else {
                parent[ra] = rb;
                components -= 1;
            }
        }
        if components > 1 {
            return Err(TreeError::Disconnected);
        }
        if has_cycle {
            return Err(TreeError::CyclePresent);
        }

        let mut rotation = rotation;
        for list in rotation.values_mut() {
            normalize_cycle(list);
        }
        Ok(Self { rotation, ends, multiplicity, exceptional })
    }

    /// Convenience constructor for multiplicity-one trees.
    pub fn from_rotations<I, L>(rotations: I) -> Result<Self, TreeError>
    where
        I: IntoIterator<Item = (VertexId, L)>,
        L: AsRef<[EdgeId]>,
    {
        let mut map = BTreeMap::new();
        for (v, list) in rotations {
            if map.insert(v, list.as_ref().to_vec()).is_some() {
                return Err(TreeError::DuplicateVertex(v));
            }
        }
        Self::new(map, 1, None)
    }

    /// Rooted plane tree described by a contour word: `1` descends to a new
    /// child, `0` returns to the parent. Vertex 0 is the root; edges are
    /// numbered 1, 2, ... in order of creation.
    pub fn from_contour(word: &[u8]) -> Result<Self, TreeError> {
        let mut rotation: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
        rotation.insert(0, Vec::new());
        let mut stack: Vec<VertexId> = vec![0];
        let mut next_vertex = 1;
        let mut next_edge = 1;
        for (i, &c) in word.iter().enumerate() {
            match c {
                b'1' => {
                    let parent = *stack.last().expect("stack holds the root");
                    let (v, e) = (next_vertex, next_edge);
                    next_vertex += 1;
                    next_edge += 1;
                    rotation.get_mut(&parent).expect("parent exists").push(e);
                    rotation.insert(v, vec![e]);
                    stack.push(v);
                }
                b'0' if stack.len() > 1 => {
                    stack.pop();
                }
                _ => {
                    return Err(TreeError::Syntax {
                        line: 1,
                        column: i + 1,
                        message: format!("invalid contour symbol {:?}", c as char),
                    })
                }
            }
        }
        if stack.len() != 1 {
            return Err(TreeError::Syntax {
                line: 1,
                column: word.len() + 1,
                message: "unbalanced contour word".into(),
            });
        }
        Self::new(rotation, 1, None)
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn exceptional(&self) -> Option<VertexId> {
        self.exceptional
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.rotation.keys().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.ends.keys().copied()
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.ends.contains_key(&e)
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.rotation.contains_key(&v)
    }

    pub fn ends(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.ends.get(&e).copied()
    }

    pub fn rotation(&self, v: VertexId) -> &[EdgeId] {
        self.rotation.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn rotations(&self) -> &BTreeMap<VertexId, Vec<EdgeId>> {
        &self.rotation
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation(v).len()
    }

    pub fn max_edge_id(&self) -> EdgeId {
        self.ends.keys().next_back().copied().unwrap_or(0)
    }

    pub fn max_vertex_id(&self) -> VertexId {
        self.rotation.keys().next_back().copied().unwrap_or(0)
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> Option<VertexId> {
        let (a, b) = self.ends(e)?;
        if a == v {
            Some(b)
        } else if b == v {
            Some(a)
        } else {
            None
        }
    }

    /// Anti-clockwise successor of `e` in the rotation at `v`.
    pub fn successor(&self, v: VertexId, e: EdgeId) -> Option<EdgeId> {
        let list = self.rotation(v);
        let pos = list.iter().position(|&x| x == e)?;
        Some(list[(pos + 1) % list.len()])
    }

    pub fn numerical_invariants(&self) -> NumericalInvariants {
        NumericalInvariants { edge_count: self.edge_count(), multiplicity: self.multiplicity }
    }

    /// True iff every vertex has degree at most two.
    pub fn is_line(&self) -> bool {
        self.rotation.values().all(|l| l.len() <= 2)
    }

    fn contour_from(&self, root: VertexId, first: EdgeId) -> Vec<u8> {
        let mut word = Vec::with_capacity(2 * self.edge_count());
        let root_list = self.rotation(root);
        let start = root_list.iter().position(|&e| e == first).unwrap_or(0);
        let root_order: Vec<EdgeId> =
            (0..root_list.len()).map(|k| root_list[(start + k) % root_list.len()]).collect();
        // frame: (vertex, children in visiting order, next child index)
        let mut stack: Vec<(VertexId, Vec<EdgeId>, usize)> = vec![(root, root_order, 0)];
        while let Some(frame) = stack.last_mut() {
            if frame.2 == frame.1.len() {
                stack.pop();
                if !stack.is_empty() {
                    word.push(b'0');
                }
                continue;
            }
            let e = frame.1[frame.2];
            frame.2 += 1;
            let v = frame.0;
            let child = self.other_end(e, v).expect("incident edge");
            let list = self.rotation(child);
            let pos = list.iter().position(|&x| x == e).expect("edge in rotation");
            let order: Vec<EdgeId> =
                (1..list.len()).map(|k| list[(pos + k) % list.len()]).collect();
            word.push(b'1');
            stack.push((child, order, 0));
        }
        word
    }

    /// Canonical code of the plane-isomorphism class (orientation preserving,
    /// no mirror identification). For multiplicity above one the exceptional
    /// vertex must be preserved, so only its corners serve as roots.
    pub fn canonical_code(&self) -> CanonicalCode {
        let roots: Vec<VertexId> = match self.exceptional {
            Some(v) if self.multiplicity > 1 => vec![v],
            _ => self.vertices().collect(),
        };
        let best = roots
            .iter()
            .flat_map(|&v| self.rotation(v).iter().map(move |&e| (v, e)))
            .map(|(v, e)| self.contour_from(v, e))
            .min()
            .unwrap_or_default();
        let mut code = String::from_utf8(best).expect("contour words are ASCII");
        if self.multiplicity > 1 {
            code = format!("m{}:{}", self.multiplicity, code);
        }
        CanonicalCode(code)
    }

    /// Serializes to the line-oriented tree format.
    pub fn to_text(&self) -> String {
        let mut out = format!("multiplicity {}\n", self.multiplicity);
        if let Some(v) = self.exceptional {
            out.push_str(&format!("exceptional v{v}\n"));
        }
        for (v, list) in &self.rotation {
            let edges: Vec<String> = list.iter().map(|e| e.to_string()).collect();
            out.push_str(&format!("vertex v{v}: {}\n", edges.join(" ")));
        }
        out
    }

    /// Graphviz description. Edges carry their ids as labels; each node lists
    /// its anti-clockwise rotation in a `rotation` attribute.
    pub fn render_dot(&self) -> String {
        let mut out = String::from("graph brauer_tree {\n");
        out.push_str(&format!("  multiplicity=\"{}\";\n", self.multiplicity));
        out.push_str("  node [shape=circle, width=0.3];\n");
        for (v, list) in &self.rotation {
            let rot: Vec<String> = list.iter().map(|e| e.to_string()).collect();
            let style = if Some(*v) == self.exceptional { ", style=filled" } else { "" };
            out.push_str(&format!(
                "  v{v} [label=\"v{v}\", rotation=\"{}\"{style}];\n",
                rot.join(" ")
            ));
        }
        for (e, (a, b)) in &self.ends {
            out.push_str(&format!("  v{a} -- v{b} [label=\"{e}\"];\n"));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> TreeError {
    TreeError::Syntax { line, column, message: message.into() }
}

/// 1-based column of `sub`, which must be a subslice of `line`.
fn column_of(line: &str, sub: &str) -> usize {
    sub.as_ptr() as usize - line.as_ptr() as usize + 1
}

fn parse_vertex_id(token: &str, line: usize, column: usize) -> Result<VertexId, TreeError> {
    let digits = token.strip_prefix('v').unwrap_or(token);
    digits
        .parse::<VertexId>()
        .map_err(|_| syntax(line, column, format!("invalid vertex id {token:?}")))
}

/// Parses the tree file format.
pub fn parse_tree(text: &str) -> Result<PlanarTree, TreeError> {
    let mut multiplicity: Option<(u32, usize)> = None;
    let mut exceptional: Option<VertexId> = None;
    let mut rotation: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(keyword) = tokens.next() else {
            continue;
        };
        let col = |sub: &str| column_of(raw, sub);
        match keyword {
            "multiplicity" => {
                if multiplicity.is_some() {
                    return Err(syntax(line_no, col(keyword), "duplicate multiplicity line"));
                }
                let value = tokens
                    .next()
                    .ok_or_else(|| syntax(line_no, raw.len() + 1, "missing multiplicity value"))?;
                let m = value.parse::<u32>().map_err(|_| {
                    syntax(line_no, col(value), format!("invalid multiplicity {value:?}"))
                })?;
                if let Some(extra) = tokens.next() {
                    return Err(syntax(line_no, col(extra), "unexpected token"));
                }
                multiplicity = Some((m, line_no));
            }
            "exceptional" => {
                if exceptional.is_some() {
                    return Err(syntax(line_no, col(keyword), "duplicate exceptional line"));
                }
                let value = tokens
                    .next()
                    .ok_or_else(|| syntax(line_no, raw.len() + 1, "missing vertex id"))?;
                exceptional = Some(parse_vertex_id(value, line_no, col(value))?);
                if let Some(extra) = tokens.next() {
                    return Err(syntax(line_no, col(extra), "unexpected token"));
                }
            }
            "vertex" => {
                let after = &content[col(keyword) - 1 + keyword.len()..];
                let Some(colon) = after.find(':') else {
                    return Err(syntax(line_no, raw.len() + 1, "expected ':' after vertex id"));
                };
                let id_text = after[..colon].trim();
                if id_text.is_empty() {
                    return Err(syntax(line_no, col(&after[colon..]), "missing vertex id"));
                }
                let id = parse_vertex_id(id_text, line_no, col(id_text))?;
                let mut edges = Vec::new();
                for tok in after[colon + 1..].split_whitespace() {
                    let e = tok.parse::<EdgeId>().ok().filter(|&e| e > 0).ok_or_else(|| {
                        syntax(line_no, col(tok), format!("invalid edge id {tok:?}"))
                    })?;
                    edges.push(e);
                }
                if rotation.insert(id, edges).is_some() {
                    return Err(TreeError::DuplicateVertex(id));
                }
            }
            other => {
                return Err(syntax(line_no, col(other), format!("unknown keyword {other:?}")))
            }
        }
    }

    let Some((m, _)) = multiplicity else {
        return Err(syntax(1, 1, "missing multiplicity line"));
    };
    PlanarTree::new(rotation, m, exceptional)
}

/// One representative per plane-isomorphism class of trees with `n` edges
/// and multiplicity one, sorted by canonical code.
pub fn enumerate_plane_trees(n: usize) -> Result<Vec<PlanarTree>, TreeError> {
    if n == 0 || n > MAX_ENUMERATION_EDGES {
        return Err(TreeError::BoundExceeded { requested: n, max: MAX_ENUMERATION_EDGES });
    }
    fn dyck(open: usize, close: usize, buf: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if open == 0 && close == 0 {
            out.push(buf.clone());
            return;
        }
        if open > 0 {
            buf.push(b'1');
            dyck(open - 1, close + 1, buf, out);
            buf.pop();
        }
        if close > 0 {
            buf.push(b'0');
            dyck(open, close - 1, buf, out);
            buf.pop();
        }
    }
    let mut words = Vec::new();
    dyck(n, 0, &mut Vec::with_capacity(2 * n), &mut words);

    let mut classes: BTreeSet<CanonicalCode> = BTreeSet::new();
    for w in &words {
        let tree = PlanarTree::from_contour(w).expect("Dyck words are valid contours");
        classes.insert(tree.canonical_code());
    }
    // the canonical word is itself a contour, which gives a stable labeling
    Ok(classes
        .into_iter()
        .map(|code| PlanarTree::from_contour(code.as_bytes()).expect("canonical contour"))
        .collect())
}

/// All trees with up to `max_edges` edges, starting at `min_edges`.
pub fn enumerate_up_to(min_edges: usize, max_edges: usize) -> Result<Vec<PlanarTree>, TreeError> {
    let mut all = Vec::new();
    for n in min_edges.max(1)..=max_edges {
        all.extend(enumerate_plane_trees(n)?);
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const STAR5: &str = "multiplicity 1\n\
        vertex v0: 1 2 3 4 5\n\
        vertex v1: 1\nvertex v2: 2\nvertex v3: 3\nvertex v4: 4\nvertex v5: 5\n";

    #[test]
    fn parses_star() {
        let t = parse_tree(STAR5).unwrap();
        assert_eq!(t.vertex_count(), 6);
        assert_eq!(t.edge_count(), 5);
        assert_eq!(t.multiplicity(), 1);
        assert_eq!(t.rotation(0), &[1, 2, 3, 4, 5]);
        assert_eq!(t.numerical_invariants(), NumericalInvariants { edge_count: 5, multiplicity: 1 });
    }

    #[test]
    fn parses_single_edge() {
        let t = parse_tree("multiplicity 1\nvertex v0: 1\nvertex v1: 1\n").unwrap();
        assert_eq!((t.vertex_count(), t.edge_count()), (2, 1));
        assert_eq!(t.numerical_invariants(), NumericalInvariants { edge_count: 1, multiplicity: 1 });
        assert!(t.is_line());
    }

    #[test]
    fn invariants_copy_multiplicity() {
        let t = parse_tree(
            "multiplicity 4\nexceptional v1\nvertex v0: 1\nvertex v1: 1 2\nvertex v2: 2 3\nvertex v3: 3\n",
        )
        .unwrap();
        assert_eq!(t.numerical_invariants(), NumericalInvariants { edge_count: 3, multiplicity: 4 });
    }

    #[test]
    fn rejects_edge_in_three_lists() {
        let err = parse_tree(
            "multiplicity 1\nvertex v0: 1 2 3\nvertex v1: 1\nvertex v2: 2 3\nvertex v3: 3\n",
        )
        .unwrap_err();
        assert_eq!(err, TreeError::EdgeDegree { edge: 3, count: 3 });
        assert!(err.to_string().contains("edge degree \u{2260} 2"));
    }

    #[test]
    fn named_invariant_violations() {
        let dup = parse_tree("multiplicity 1\nvertex v0: 1 1\nvertex v1: 1\n").unwrap_err();
        assert!(matches!(dup, TreeError::DuplicateInRotation { vertex: 0, edge: 1 }));

        let disc = parse_tree(
            "multiplicity 1\nvertex v0: 1\nvertex v1: 1\nvertex v2: 2\nvertex v3: 2\n",
        )
        .unwrap_err();
        assert_eq!(disc, TreeError::Disconnected);

        let cyc = parse_tree(
            "multiplicity 1\nvertex v0: 1 3\nvertex v1: 1 2\nvertex v2: 2 3\n",
        )
        .unwrap_err();
        assert_eq!(cyc, TreeError::CyclePresent);

        let m0 = parse_tree("multiplicity 0\nvertex v0: 1\nvertex v1: 1\n").unwrap_err();
        assert!(matches!(m0, TreeError::BadMultiplicity(_)));
        let m2 = parse_tree("multiplicity 2\nvertex v0: 1\nvertex v1: 1\n").unwrap_err();
        assert!(matches!(m2, TreeError::BadMultiplicity(_)));
        let ex = parse_tree("multiplicity 1\nexceptional v0\nvertex v0: 1\nvertex v1: 1\n")
            .unwrap_err();
        assert!(matches!(ex, TreeError::BadMultiplicity(_)));
    }

    #[test]
    fn syntax_errors_report_position() {
        let err = parse_tree("multiplicity 1\nvertex v0: 1 x\nvertex v1: 1\n").unwrap_err();
        assert_eq!(
            err,
            TreeError::Syntax { line: 2, column: 14, message: "invalid edge id \"x\"".into() }
        );
        let err = parse_tree("multiplicity 1\n  bogus 3\n").unwrap_err();
        assert!(matches!(err, TreeError::Syntax { line: 2, column: 3, .. }));
        let err = parse_tree("vertex v0: 1\nvertex v1: 1\n").unwrap_err();
        assert!(matches!(err, TreeError::Syntax { .. }));
    }

    #[test]
    fn comments_and_blank_lines() {
        let t = parse_tree("# a comment\nmultiplicity 1 # trailing\n\nvertex v7: 4\nvertex 3: 4\n")
            .unwrap();
        assert_eq!(t.ends(4), Some((3, 7)));
    }

    #[test]
    fn serialization_normalizes_rotation_start() {
        let t = PlanarTree::from_rotations([(0, vec![3, 1, 2]), (1, vec![1]), (2, vec![2]), (3, vec![3])])
            .unwrap();
        assert_eq!(
            t.to_text(),
            "multiplicity 1\nvertex v0: 1 2 3\nvertex v1: 1\nvertex v2: 2\nvertex v3: 3\n"
        );
        assert_eq!(parse_tree(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn canonical_code_relabeling() {
        let a = PlanarTree::from_rotations([(0, vec![1, 2, 3]), (1, vec![1]), (2, vec![2]), (3, vec![3])])
            .unwrap();
        let b = PlanarTree::from_rotations([
            (10, vec![9, 8, 7]),
            (11, vec![7]),
            (12, vec![9]),
            (13, vec![8]),
        ])
        .unwrap();
        assert_eq!(a.canonical_code(), b.canonical_code());

        let path = PlanarTree::from_rotations([(0, vec![1]), (1, vec![1, 2]), (2, vec![2, 3]), (3, vec![3])])
            .unwrap();
        assert_ne!(a.canonical_code(), path.canonical_code());
    }

    #[test]
    fn canonical_code_of_t_shape() {
        // degree-3 vertex 0 with arms: long (edges 1,4), short (2), short (3)
        let long_first = PlanarTree::from_rotations([
            (0, vec![1, 2, 3]),
            (1, vec![1, 4]),
            (2, vec![2]),
            (3, vec![3]),
            (4, vec![4]),
        ])
        .unwrap();
        let short_first = PlanarTree::from_rotations([
            (0, vec![2, 1, 3]),
            (1, vec![1, 4]),
            (2, vec![2]),
            (3, vec![3]),
            (4, vec![4]),
        ])
        .unwrap();
        assert_eq!(long_first.canonical_code(), short_first.canonical_code());
    }

    #[test]
    fn chirality_is_distinguished() {
        // two arms of length 2 and one of length 1 vs. its mirror image would
        // coincide; use three distinct arm lengths to get a chiral pair
        let build = |order: [u32; 3]| {
            PlanarTree::from_rotations([
                (0, order.to_vec()),
                (1, vec![1]),
                (2, vec![2, 4]),
                (4, vec![4]),
                (3, vec![3, 5]),
                (5, vec![5, 6]),
                (6, vec![6]),
            ])
            .unwrap()
        };
        let a = build([1, 2, 3]);
        let b = build([1, 3, 2]);
        assert_ne!(a.canonical_code(), b.canonical_code());
    }

    #[test]
    fn small_enumeration_counts() {
        assert_eq!(enumerate_plane_trees(1).unwrap().len(), 1);
        let two = enumerate_plane_trees(2).unwrap();
        assert_eq!(two.len(), 1);
        assert!(two[0].is_line());
        assert!(matches!(enumerate_plane_trees(0), Err(TreeError::BoundExceeded { .. })));
        assert!(matches!(enumerate_plane_trees(11), Err(TreeError::BoundExceeded { .. })));
    }

    #[test]
    fn contour_round_trip() {
        let t = PlanarTree::from_contour(b"110100").unwrap();
        assert_eq!(t.edge_count(), 3);
        assert_eq!(t.contour_from(0, t.rotation(0)[0]), b"110100".to_vec());
        assert!(PlanarTree::from_contour(b"10").is_ok());
        assert!(PlanarTree::from_contour(b"1").is_err());
        assert!(PlanarTree::from_contour(b"100").is_err());
    }

    #[test]
    fn dot_rendering() {
        let single = parse_tree("multiplicity 1\nvertex v0: 1\nvertex v1: 1\n").unwrap();
        let dot = single.render_dot();
        assert_eq!(dot.matches("[label=\"v").count(), 2);
        assert_eq!(dot.matches(" -- ").count(), 1);
        assert!(dot.contains("v0 -- v1 [label=\"1\"]"));

        let star = parse_tree(STAR5).unwrap();
        let dot = star.render_dot();
        assert_eq!(dot.matches(" -- ").count(), 5);
        for e in 1..=5 {
            assert!(dot.contains(&format!("[label=\"{e}\"]")));
        }
        assert!(dot.contains("rotation=\"1 2 3 4 5\""));
        assert_eq!(dot, star.render_dot());
    }

    #[test]
    fn successor_and_other_end() {
        let t = parse_tree(STAR5).unwrap();
        assert_eq!(t.successor(0, 1), Some(2));
        assert_eq!(t.successor(0, 5), Some(1));
        assert_eq!(t.successor(3, 3), Some(3));
        assert_eq!(t.other_end(3, 0), Some(3));
        assert_eq!(t.other_end(3, 1), None);
    }

    #[test]
    fn is_line_cases() {
        let path = PlanarTree::from_contour(b"11110000").unwrap();
        assert!(path.is_line());
        let star = PlanarTree::from_contour(b"101010").unwrap();
        assert!(!star.is_line());
    }
}
