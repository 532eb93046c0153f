//! A selfinjective algebra on a square quiver that is not a Brauer tree
//! algebra, and the presentation of its reflection at vertex 2.

use crate::quiver::{Arrow, QuiverWithRelations, Relation};

fn arrow(id: u32, source: u32, target: u32, cycle_tag: u32) -> Arrow {
    Arrow { id, source, target, cycle_tag }
}

/// Vertices 1..4 with `alpha_1..alpha_4` (ids 1..4) running
/// `1 -> 4 -> 3 -> 2 -> 1` and `beta_1..beta_4` (ids 5..8) running
/// `1 -> 2 -> 3 -> 4 -> 1`.
pub fn square_algebra() -> QuiverWithRelations {
    let arrows = vec![
        arrow(1, 2, 1, 1),
        arrow(2, 3, 2, 1),
        arrow(3, 4, 3, 1),
        arrow(4, 1, 4, 1),
        arrow(5, 1, 2, 2),
        arrow(6, 2, 3, 2),
        arrow(7, 3, 4, 2),
        arrow(8, 4, 1, 2),
    ];
    let relations = vec![
        Relation::equality(vec![6, 5], vec![3, 4]),
        Relation::equality(vec![8, 7], vec![1, 2]),
        Relation::equality(vec![5, 1], vec![2, 6]),
        Relation::equality(vec![7, 3], vec![4, 8]),
        Relation::zero(vec![4, 1]),
        Relation::zero(vec![2, 3]),
        Relation::zero(vec![5, 8]),
        Relation::zero(vec![7, 6]),
        Relation::zero(vec![1, 5]),
        Relation::zero(vec![6, 2]),
        Relation::zero(vec![3, 7]),
        Relation::zero(vec![8, 4]),
    ];
    QuiverWithRelations { vertices: vec![1, 2, 3, 4], arrows, relations }
}

/// Reflection of [`square_algebra`] at 2. The vertex standing for the cone
/// is labelled 5. Arrows: `gamma_1..gamma_3` (ids 1..3) run
/// `1 -> 5 -> 4 -> 1`, `delta_1..delta_3` (ids 4..6) run `3 -> 5 -> 4 -> 3`.
pub fn square_algebra_reflected() -> QuiverWithRelations {
    let arrows = vec![
        arrow(1, 1, 5, 1),
        arrow(2, 4, 1, 1),
        arrow(3, 5, 4, 1),
        arrow(4, 3, 5, 2),
        arrow(5, 4, 3, 2),
        arrow(6, 5, 4, 2),
    ];
    let relations = vec![
        Relation::equality(vec![1, 2, 3], vec![4, 5, 6]),
        Relation::equality(vec![6, 1, 2], vec![3, 4, 5]),
        Relation::zero(vec![3, 1]),
        Relation::zero(vec![6, 4]),
        Relation::zero(vec![2, 6]),
        Relation::zero(vec![5, 3]),
        Relation::zero(vec![3, 4, 5, 6]),
        Relation::zero(vec![6, 1, 2, 3]),
    ];
    QuiverWithRelations { vertices: vec![1, 3, 4, 5], arrows, relations }
}
