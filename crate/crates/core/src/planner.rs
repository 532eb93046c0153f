//! Sequences of reflections that turn a Brauer tree into a Brauer line.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::reflection::{reflect_tree, ReflectionError};
use crate::tree::{CanonicalCode, EdgeId, PlanarTree, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("multiplicity {0} > 1 unsupported")]
    MultiplicityUnsupported(u32),
    #[error("step budget of {max_steps} exhausted; best intermediate state {best} (max degree {best_max_degree})")]
    BudgetExhausted {
        max_steps: usize,
        best: CanonicalCode,
        best_max_degree: usize,
    },
    #[error("replay diverged at step {step}: expected {expected}, got {actual}")]
    ReplayMismatch {
        step: usize,
        expected: CanonicalCode,
        actual: CanonicalCode,
    },
    #[error(transparent)]
    Reflection(#[from] ReflectionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanStep {
    /// Edge reflected at this step.
    pub edge: EdgeId,
    /// Id given to the reflected edge.
    pub new_edge: EdgeId,
    /// Canonical code of the tree after the step.
    pub code: CanonicalCode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Greedy,
    Bfs,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectionPlan {
    pub initial: CanonicalCode,
    pub steps: Vec<PlanStep>,
    #[serde(rename = "final")]
    pub final_code: CanonicalCode,
    pub strategy: Strategy,
}

impl ReflectionPlan {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays the plan from `tree`, checking every recorded code. Returns
    /// the trees visited, starting with `tree` itself.
    pub fn replay(&self, tree: &PlanarTree) -> Result<Vec<PlanarTree>, PlanError> {
        let check = |step: usize, expected: &CanonicalCode, t: &PlanarTree| {
            let actual = t.canonical_code();
            if &actual == expected {
                Ok(())
            } else {
                Err(PlanError::ReplayMismatch { step, expected: expected.clone(), actual })
            }
        };
        check(0, &self.initial, tree)?;
        let mut trail = vec![tree.clone()];
        for (i, s) in self.steps.iter().enumerate() {
            let next = reflect_tree(trail.last().expect("nonempty"), s.edge)?.tree;
            check(i + 1, &s.code, &next)?;
            trail.push(next);
        }
        check(self.steps.len(), &self.final_code, trail.last().expect("nonempty"))?;
        Ok(trail)
    }
}

pub fn is_line(tree: &PlanarTree) -> bool {
    tree.is_line()
}

pub fn default_max_steps(tree: &PlanarTree) -> usize {
    10 * tree.edge_count()
}

fn max_degree(tree: &PlanarTree) -> usize {
    tree.vertices().map(|v| tree.degree(v)).max().unwrap_or(0)
}

// lower is closer to a line
fn badness(tree: &PlanarTree) -> (usize, usize) {
    let excess = tree.vertices().map(|v| tree.degree(v).saturating_sub(2)).sum();
    (max_degree(tree), excess)
}

fn greedy_choice(tree: &PlanarTree) -> Option<EdgeId> {
    let top = max_degree(tree);
    if top < 3 {
        return None;
    }
    let x: VertexId = tree.vertices().find(|&v| tree.degree(v) == top)?;
    tree.rotation(x)
        .iter()
        .map(|&t| {
            let a = tree.successor(x, t).expect("incident");
            let z = tree.other_end(a, x).expect("incident");
            (tree.degree(z), t)
        })
        .min()
        .map(|(_, t)| t)
}

fn greedy(tree: &PlanarTree, max_steps: usize) -> Result<Option<Vec<PlanStep>>, PlanError> {
    let mut cur = tree.clone();
    let mut visited: BTreeSet<CanonicalCode> = BTreeSet::from([cur.canonical_code()]);
    let mut steps = Vec::new();
    while !cur.is_line() {
        if steps.len() == max_steps {
            return Ok(None);
        }
        let Some(t) = greedy_choice(&cur) else {
            return Ok(None);
        };
        let r = reflect_tree(&cur, t)?;
        let code = r.tree.canonical_code();
        if !visited.insert(code.clone()) {
            return Ok(None);
        }
        steps.push(PlanStep { edge: t, new_edge: r.new_edge, code });
        cur = r.tree;
    }
    Ok(Some(steps))
}

struct Node {
    tree: PlanarTree,
    parent: Option<usize>,
    step: Option<PlanStep>,
}

fn expand(tree: &PlanarTree) -> Result<Vec<(PlanarTree, PlanStep)>, PlanError> {
    tree.edges()
        .map(|t| {
            let r = reflect_tree(tree, t)?;
            let code = r.tree.canonical_code();
            Ok((r.tree, PlanStep { edge: t, new_edge: r.new_edge, code }))
        })
        .collect()
}

fn expand_frontier(
    nodes: &[Node],
    frontier: &[usize],
) -> Result<Vec<Vec<(PlanarTree, PlanStep)>>, PlanError> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        frontier.par_iter().map(|&i| expand(&nodes[i].tree)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        frontier.iter().map(|&i| expand(&nodes[i].tree)).collect()
    }
}

/// Level-synchronous breadth-first search over plane-isomorphism classes.
/// Children are merged in frontier order, then edge order, so the result
/// does not depend on how the expansion is scheduled.
fn bfs(tree: &PlanarTree, max_steps: usize) -> Result<Result<Vec<PlanStep>, PlanError>, PlanError> {
    let mut nodes = vec![Node { tree: tree.clone(), parent: None, step: None }];
    let mut seen: HashMap<CanonicalCode, usize> = HashMap::from([(tree.canonical_code(), 0)]);
    let mut frontier = vec![0usize];
    let mut best = 0usize;
    let mut depth = 0;
    let found = loop {
        if let Some(&hit) = frontier.iter().find(|&&i| nodes[i].tree.is_line()) {
            break Some(hit);
        }
        if depth == max_steps || frontier.is_empty() {
            break None;
        }
        let children = expand_frontier(&nodes, &frontier)?;
        let mut next = Vec::new();
        for (&parent, kids) in frontier.iter().zip(children) {
            for (child, step) in kids {
                if seen.contains_key(&step.code) {
                    continue;
                }
                let idx = nodes.len();
                seen.insert(step.code.clone(), idx);
                if badness(&child) < badness(&nodes[best].tree) {
                    best = idx;
                }
                nodes.push(Node { tree: child, parent: Some(parent), step: Some(step) });
                next.push(idx);
            }
        }
        frontier = next;
        depth += 1;
    };
    match found {
        Some(mut i) => {
            let mut steps = Vec::new();
            while let Some(p) = nodes[i].parent {
                steps.push(nodes[i].step.clone().expect("non-root node has a step"));
                i = p;
            }
            steps.reverse();
            Ok(Ok(steps))
        }
        None => Ok(Err(PlanError::BudgetExhausted {
            max_steps,
            best: nodes[best].tree.canonical_code(),
            best_max_degree: max_degree(&nodes[best].tree),
        })),
    }
}

/// Finds reflections turning `tree` into a Brauer line within `max_steps`.
/// Deterministic for a fixed input.
pub fn reduce_to_line(tree: &PlanarTree, max_steps: usize) -> Result<ReflectionPlan, PlanError> {
    if tree.multiplicity() > 1 {
        return Err(PlanError::MultiplicityUnsupported(tree.multiplicity()));
    }
    let initial = tree.canonical_code();
    let (steps, strategy) = match greedy(tree, max_steps)? {
        Some(steps) => (steps, Strategy::Greedy),
        None => (bfs(tree, max_steps)??, Strategy::Bfs),
    };
    let final_code = steps.last().map(|s| s.code.clone()).unwrap_or_else(|| initial.clone());
    Ok(ReflectionPlan { initial, steps, final_code, strategy })
}
