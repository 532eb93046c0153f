mod support;

use std::collections::{BTreeMap, BTreeSet};

use brauer_core::lab::{build_algebra, hom_dim, tilting_complex, verify_many, verify_many_sequential, verify_reflection, ProjComplex};
use brauer_core::quiver::{cartan_matrix, quiver_of, QuiverWithRelations};

use support::all_pairs;

#[derive(Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Class {
    Idempotent(u32),
    Socle(u32),
    Word(Vec<u32>),
}

// Path classes by rewriting alone: a word survives iff it runs inside one
// cycle and is no longer than that cycle; the full turns at a vertex are
// identified.
fn rewrite_classes(q: &QuiverWithRelations) -> BTreeMap<(u32, u32), BTreeSet<Class>> {
    let mut cycle_len: BTreeMap<u32, usize> = BTreeMap::new();
    for a in &q.arrows {
        *cycle_len.entry(a.cycle_tag).or_default() += 1;
    }
    let mut out: BTreeMap<(u32, u32), BTreeSet<Class>> = BTreeMap::new();
    for &v in &q.vertices {
        out.entry((v, v)).or_default().insert(Class::Idempotent(v));
    }
    let mut frontier: Vec<(u32, u32, Vec<u32>)> = q.arrows.iter().map(|a| (a.source, a.target, vec![a.id])).collect();
    let longest = cycle_len.values().max().copied().unwrap_or(0);
    for len in 1..=longest + 1 {
        let mut next = Vec::new();
        for (s, t, word) in frontier {
            let tags: BTreeSet<u32> = word.iter().map(|&id| q.arrow(id).unwrap().cycle_tag).collect();
            let tag = *tags.iter().next().unwrap();
            if tags.len() > 1 || len > cycle_len[&tag] {
                continue;
            }
            let class = if len == cycle_len[&tag] { Class::Socle(s) } else { Class::Word(word.clone()) };
            out.entry((s, t)).or_default().insert(class);
            for a in q.arrows.iter().filter(|a| a.source == t) {
                next.push((s, a.target, [word.clone(), vec![a.id]].concat()));
            }
        }
        frontier = next;
    }
    out
}

#[test]
fn algebra_dimensions_match_rewriting() {
    for tree in brauer_core::tree::enumerate_up_to(2, 6).unwrap() {
        let q = quiver_of(&tree).unwrap();
        let classes = rewrite_classes(&q);
        let alg = build_algebra(&q, 2).unwrap();
        let total: usize = classes.values().map(BTreeSet::len).sum();
        assert_eq!(alg.dim(), total, "{}", tree.canonical_code());
        let by_degree: usize = tree.vertices().map(|v| tree.degree(v).pow(2)).sum();
        assert_eq!(alg.dim(), by_degree);
        let m = alg.dim_matrix();
        for &x in &q.vertices {
            for &y in &q.vertices {
                let n = classes.get(&(x, y)).map_or(0, BTreeSet::len);
                assert_eq!(m.get(x, y), Some(n as u32), "{} ({x}, {y})", tree.canonical_code());
            }
        }
        assert_eq!(m, cartan_matrix(&tree).unwrap());
    }
}

#[test]
fn brauer_tree_algebras_are_weakly_symmetric() {
    for tree in brauer_core::tree::enumerate_up_to(2, 5).unwrap() {
        for p in [2, 3] {
            let alg = build_algebra(&quiver_of(&tree).unwrap(), p).unwrap();
            let nu = alg.nakayama().expect("selfinjective");
            assert!(nu.iter().all(|(a, b)| a == b));
            assert!(alg.is_weakly_symmetric());
        }
    }
}

#[test]
fn stalk_homs_are_cartan_entries() {
    for tree in brauer_core::tree::enumerate_up_to(2, 4).unwrap() {
        let alg = build_algebra(&quiver_of(&tree).unwrap(), 3).unwrap();
        let cartan = cartan_matrix(&tree).unwrap();
        for x in tree.edges() {
            for y in tree.edges() {
                let (px, py) = (ProjComplex::stalk(x, 0), ProjComplex::stalk(y, 0));
                assert_eq!(hom_dim(&alg, &px, &py, 0).unwrap() as u32, cartan.get(x, y).unwrap());
                assert_eq!(hom_dim(&alg, &px, &py, 1).unwrap(), 0);
                assert_eq!(hom_dim(&alg, &px, &py, -1).unwrap(), 0);
            }
        }
    }
}

#[test]
fn hom_dims_ignore_summand_order() {
    for (tree, t) in all_pairs(3, 4) {
        let alg = build_algebra(&quiver_of(&tree).unwrap(), 2).unwrap();
        let total = tilting_complex(&alg, t).unwrap().total(&alg);
        let reversed: BTreeMap<i32, Vec<usize>> =
            total.degrees().map(|d| (d, (0..total.summands(d).len()).rev().collect())).collect();
        let shuffled = total.permuted(&reversed);
        for j in -1..=1 {
            let want = hom_dim(&alg, &total, &total, j).unwrap();
            assert_eq!(hom_dim(&alg, &shuffled, &total, j).unwrap(), want);
            assert_eq!(hom_dim(&alg, &total, &shuffled, j).unwrap(), want);
        }
    }
}

#[test]
fn ranks_agree_across_fields() {
    for (tree, t) in all_pairs(3, 4) {
        let small = verify_reflection(&tree, t, 2).unwrap();
        let large = verify_reflection(&tree, t, 7).unwrap();
        assert_eq!(small.dimensions(), large.dimensions());
        assert!(large.passed());
    }
}

#[test]
fn parallel_and_sequential_sweeps_agree() {
    let jobs: Vec<_> = all_pairs(2, 4).into_iter().map(|(tree, t)| (tree, t, 3)).collect();
    let strip = |rs: Vec<Result<brauer_core::lab::VerificationReport, _>>| {
        rs.into_iter()
            .map(|r| {
                let mut r = r.unwrap();
                r.timings = None;
                r
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(verify_many(&jobs)), strip(verify_many_sequential(&jobs)));
}
