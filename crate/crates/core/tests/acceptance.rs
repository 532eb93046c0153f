//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

mod support;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use brauer_core::lab::samples::{square_algebra, square_algebra_reflected};
use brauer_core::lab::{build_algebra, verify_algebra, verify_many, VerificationReport};
use brauer_core::planner::reduce_to_line;
use brauer_core::quiver::quiver_of;
use brauer_core::reflection::{reflect_quiver, reflect_tree};
use brauer_core::tree::enumerate_up_to;
use brauer_core::EdgeId;

use support::{all_pairs, golden_rows, labelled_form, PRIMED};

type Outcome = Result<String, String>;

fn golden() -> Outcome {
    for (i, row) in golden_rows().into_iter().enumerate() {
        let r = reflect_tree(&row.before, row.edge).map_err(|e| format!("row {}: {e}", i + 1))?;
        if r.new_edge != PRIMED {
            return Err(format!("row {}: new edge {}", i + 1, r.new_edge));
        }
        if r.tree != row.slid {
            return Err(format!("row {}: got\n{}expected\n{}", i + 1, r.tree.to_text(), row.slid.to_text()));
        }
        if labelled_form(&r.tree) != labelled_form(&row.redrawn) {
            return Err(format!("row {}: redrawn tree differs", i + 1));
        }
    }
    Ok("5 rows".into())
}

fn commutation() -> (Outcome, Outcome) {
    let pairs = all_pairs(2, 8);
    let mut bad_quiver = Vec::new();
    let mut bad_invariants = Vec::new();
    for (tree, t) in &pairs {
        let r = reflect_tree(tree, *t).expect("reflectable");
        let via_tree = quiver_of(&r.tree).expect("quiver").shape();
        let via_quiver = reflect_quiver(&quiver_of(tree).expect("quiver"), *t).map(|q| q.quiver.shape());
        if via_quiver.as_ref() != Ok(&via_tree) {
            bad_quiver.push(format!("{} at {t}", tree.canonical_code()));
        }
        if r.tree.numerical_invariants() != tree.numerical_invariants() {
            bad_invariants.push(format!("{} at {t}", tree.canonical_code()));
        }
    }
    let summarize = |bad: Vec<String>| {
        if bad.is_empty() {
            Ok(format!("{} (tree, edge) pairs", pairs.len()))
        } else {
            Err(format!("{} failures, first {}", bad.len(), bad[0]))
        }
    };
    (summarize(bad_quiver), summarize(bad_invariants))
}

fn reduction() -> Outcome {
    let trees = enumerate_up_to(1, 9).map_err(|e| e.to_string())?;
    let mut longest = 0;
    for tree in &trees {
        let plan = reduce_to_line(tree, 40).map_err(|e| format!("{}: {e}", tree.canonical_code()))?;
        let states = plan.replay(tree).map_err(|e| format!("{}: {e}", tree.canonical_code()))?;
        if plan.len() > 40 || !states.last().is_some_and(|s| s.is_line()) {
            return Err(format!("{}: plan does not end in a line", tree.canonical_code()));
        }
        longest = longest.max(plan.len());
    }
    Ok(format!("{} trees, longest plan {longest}", trees.len()))
}

fn tilting_sweep() -> (Outcome, Outcome, Vec<VerificationReport>) {
    let pairs = all_pairs(2, 6);
    let jobs: Vec<_> = pairs.iter().flat_map(|(t, e)| [2, 3].map(|p| (t.clone(), *e, p))).collect();
    let mut reports = Vec::new();
    let mut tilting_bad = Vec::new();
    let mut cartan_bad = Vec::new();
    for ((tree, t, p), r) in jobs.iter().zip(verify_many(&jobs)) {
        let name = format!("{} at {t} over GF({p})", tree.canonical_code());
        let r = match r {
            Ok(r) => r,
            Err(e) => {
                tilting_bad.push(format!("{name}: {e}"));
                continue;
            }
        };
        let zero = r.vanishing.len() == 4 && r.vanishing.iter().all(|v| v.dim == 0);
        if !(zero && r.vanishing_ok && r.serre_ok && r.generation_ok) {
            tilting_bad.push(name.clone());
        }
        let diagonal = r.endo.entries.iter().enumerate().all(|(i, row)| row[i] == 2);
        if !(r.cartan_match && diagonal) {
            cartan_bad.push(name);
        }
        reports.push(r);
    }
    // ranks must not depend on the field
    let mut by_pair: BTreeMap<(String, EdgeId), Vec<Vec<usize>>> = BTreeMap::new();
    for r in &reports {
        by_pair.entry((r.subject.clone(), r.edge)).or_default().push(r.dimensions());
    }
    for ((code, t), dims) in &by_pair {
        if dims.windows(2).any(|w| w[0] != w[1]) {
            tilting_bad.push(format!("{code} at {t}: dimensions depend on the field"));
        }
    }
    let summarize = |bad: Vec<String>| {
        if bad.is_empty() {
            Ok(format!("{} jobs over {} (tree, edge) pairs", jobs.len(), pairs.len()))
        } else {
            Err(format!("{} failures, first {}", bad.len(), bad[0]))
        }
    };
    (summarize(tilting_bad), summarize(cartan_bad), reports)
}

fn square_example() -> Outcome {
    for p in [2, 3] {
        let lambda = build_algebra(&square_algebra(), p).map_err(|e| e.to_string())?;
        let gamma = build_algebra(&square_algebra_reflected(), p).map_err(|e| e.to_string())?;
        let mut r = verify_algebra(&lambda, 2, "square", 5).map_err(|e| e.to_string())?;
        r.set_prediction(gamma.dim_matrix());
        if !(r.vanishing_ok && r.serre_ok && r.generation_ok && r.cartan_match) {
            return Err(format!("GF({p}): {r:?}"));
        }
    }
    Ok("endo matrix equals dim e_y Gamma e_x over GF(2), GF(3)".into())
}

fn witnesses(reports: &[VerificationReport]) -> Outcome {
    // every k-th GF(3) report, spread over all sizes
    let pool: Vec<&VerificationReport> = reports.iter().filter(|r| r.field == 3).collect();
    let step = (pool.len() / 20).max(1);
    let sample: Vec<&VerificationReport> = pool.iter().step_by(step).take(20).copied().collect();
    if sample.len() < 20 {
        return Err(format!("only {} pairs available", sample.len()));
    }
    let mut count = 0;
    for r in &sample {
        if r.witnesses.is_empty() {
            return Err(format!("{} at {}: no witnesses", r.subject, r.edge));
        }
        for w in &r.witnesses {
            if !(w.nonzero && w.irreducible) {
                return Err(format!("{} at {}: {:?}", r.subject, r.edge, w));
            }
            count += 1;
        }
    }
    Ok(format!("{count} witnesses over {} pairs", sample.len()))
}

fn main() -> ExitCode {
    let mut all = true;
    let mut line = |n: u32, what: &str, out: Outcome, since: Instant| {
        let secs = since.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("PASS {n} {what}: {detail} ({secs:.2}s)"),
            Err(why) => {
                all = false;
                println!("FAIL {n} {what}: {why}");
            }
        }
    };

    let start = Instant::now();
    line(1, "golden transformations", golden(), start);

    let start = Instant::now();
    let (quivers, invariants) = commutation();
    line(2, "quiver commutation, <= 8 edges", quivers, start);
    line(3, "invariants preserved, <= 8 edges", invariants, start);

    let start = Instant::now();
    line(4, "reduction to a line, <= 9 edges", reduction(), start);

    let start = Instant::now();
    let (tilting, cartan, reports) = tilting_sweep();
    line(5, "tilting verification, <= 6 edges", tilting, start);
    line(6, "cartan prediction, <= 6 edges", cartan, start);

    let start = Instant::now();
    line(7, "square algebra example", square_example(), start);

    let start = Instant::now();
    line(8, "witnesses, 20 sampled pairs", witnesses(&reports), start);

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
