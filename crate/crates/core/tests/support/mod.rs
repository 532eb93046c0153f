//! Trees transcribed from drawings, and helpers shared by the integration
//! tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use brauer_core::{EdgeId, PlanarTree};

/// Label used for the primed (reflected) edge in the drawings. With edges
/// 1..5 this is the id `reflect_tree` hands out.
pub const PRIMED: EdgeId = 6;

/// A tree from a drawing: vertex `i` sits at `points[i]` (y pointing up) and
/// `edges` lists `(label, i, j)`. The rotation at each vertex is read off by
/// sorting incident edges by angle, anti-clockwise.
pub fn drawn(points: &[(f64, f64)], edges: &[(EdgeId, usize, usize)]) -> PlanarTree {
    let mut around: BTreeMap<usize, Vec<(f64, EdgeId)>> = BTreeMap::new();
    for &(e, i, j) in edges {
        for (a, b) in [(i, j), (j, i)] {
            let (dx, dy) = (points[b].0 - points[a].0, points[b].1 - points[a].1);
            around.entry(a).or_default().push((dy.atan2(dx), e));
        }
    }
    let rotations = around.into_iter().map(|(v, mut l)| {
        l.sort_by(|x, y| x.0.total_cmp(&y.0));
        (v as u32, l.into_iter().map(|(_, e)| e).collect::<Vec<_>>())
    });
    PlanarTree::from_rotations(rotations).expect("drawing is a tree")
}

/// Edge-labelled plane tree up to renaming vertices: the set of cyclic edge
/// orders, each rotated to start at its smallest edge.
pub fn labelled_form(tree: &PlanarTree) -> BTreeSet<Vec<EdgeId>> {
    tree.rotations()
        .values()
        .map(|l| {
            let k = l.iter().enumerate().min_by_key(|(_, &e)| e).map_or(0, |(k, _)| k);
            l[k..].iter().chain(&l[..k]).copied().collect()
        })
        .collect()
}

pub struct GoldenRow {
    pub before: PlanarTree,
    pub edge: EdgeId,
    /// Drawn with the vertex positions of `before`.
    pub slid: PlanarTree,
    /// The same tree redrawn.
    pub redrawn: PlanarTree,
}

/// The five transformations of the worked reflection example.
pub fn golden_rows() -> Vec<GoldenRow> {
    const P: EdgeId = PRIMED;
    let star = [(0.0, 0.0), (-10.0, -7.0), (-6.0, -18.0), (6.0, -18.0), (10.0, -7.0), (0.0, -10.0)];
    let cross = [(-8.0, -7.0), (0.0, -7.0), (8.0, -7.0), (16.0, -7.0), (8.0, 1.0), (8.0, -15.0)];
    let cross2 = [(-10.0, -7.0), (0.0, -7.0), (10.0, -7.0), (20.0, -7.0), (10.0, 3.0), (10.0, -17.0)];
    let bowtie = [(-8.0, 0.0), (-8.0, -14.0), (-1.0, -7.0), (9.0, -7.0), (16.0, 0.0), (16.0, -14.0)];
    let fork = |h: f64| [(-7.0, -7.0), (0.0, -7.0), (7.0, -7.0), (14.0, -7.0), (21.0, -7.0), (h, 1.0)];
    let fork_a = [(-6.5, -7.0), (0.0, -7.0), (6.5, -7.0), (13.0, -7.0), (19.6, -7.0), (13.0, 1.0)];
    let fork_b = [(-6.5, -7.0), (0.0, -7.0), (6.5, -7.0), (13.0, -7.0), (19.5, -7.0), (6.5, 1.0)];
    let line = [(-6.0, -7.0), (0.0, -7.0), (6.0, -7.0), (12.0, -7.0), (18.0, -7.0), (24.0, -7.0)];

    vec![
        GoldenRow {
            before: drawn(&star, &[(1, 0, 5), (2, 1, 5), (3, 2, 5), (4, 3, 5), (5, 4, 5)]),
            edge: 1,
            slid: drawn(&star, &[(P, 0, 1), (2, 1, 5), (3, 2, 5), (4, 3, 5), (5, 4, 5)]),
            redrawn: drawn(&cross2, &[(P, 0, 1), (2, 1, 2), (5, 2, 4), (4, 2, 3), (3, 2, 5)]),
        },
        GoldenRow {
            before: drawn(&cross, &[(1, 0, 1), (2, 1, 2), (3, 2, 4), (4, 2, 3), (5, 2, 5)]),
            edge: 3,
            slid: drawn(&cross, &[(1, 0, 1), (2, 1, 2), (P, 1, 4), (4, 2, 3), (5, 2, 5)]),
            redrawn: drawn(&bowtie, &[(P, 0, 2), (1, 1, 2), (2, 2, 3), (4, 3, 4), (5, 3, 5)]),
        },
        GoldenRow {
            before: drawn(&bowtie, &[(1, 0, 2), (2, 1, 2), (3, 2, 3), (4, 3, 4), (5, 3, 5)]),
            edge: 1,
            slid: drawn(&bowtie, &[(P, 0, 1), (2, 1, 2), (3, 2, 3), (4, 3, 4), (5, 3, 5)]),
            redrawn: drawn(&fork(14.0), &[(P, 0, 1), (2, 1, 2), (3, 2, 3), (5, 3, 4), (4, 3, 5)]),
        },
        GoldenRow {
            before: drawn(&fork_a, &[(1, 0, 1), (2, 1, 2), (3, 2, 3), (5, 3, 4), (4, 3, 5)]),
            edge: 4,
            slid: drawn(&fork(14.0), &[(1, 0, 1), (2, 1, 2), (3, 2, 3), (P, 2, 5), (5, 3, 4)]),
            redrawn: drawn(&fork(7.0), &[(1, 0, 1), (2, 1, 2), (3, 2, 3), (5, 3, 4), (P, 2, 5)]),
        },
        GoldenRow {
            before: drawn(&fork_b, &[(1, 0, 1), (2, 1, 2), (3, 2, 3), (4, 3, 4), (5, 2, 5)]),
            edge: 3,
            slid: drawn(&fork_b, &[(1, 0, 1), (2, 1, 2), (P, 5, 4), (4, 3, 4), (5, 2, 5)]),
            redrawn: drawn(&line, &[(1, 0, 1), (2, 1, 2), (5, 2, 3), (P, 3, 4), (4, 4, 5)]),
        },
    ]
}

/// `(tree, edge)` for every edge of every plane tree with `lo..=hi` edges.
pub fn all_pairs(lo: usize, hi: usize) -> Vec<(PlanarTree, EdgeId)> {
    brauer_core::tree::enumerate_up_to(lo, hi)
        .unwrap()
        .into_iter()
        .flat_map(|t| t.edges().collect::<Vec<_>>().into_iter().map(move |e| (t.clone(), e)))
        .collect()
}
