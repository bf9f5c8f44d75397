//! Totally cyclic orientations and their compatibility with flows.
//!
//! An orientation is totally cyclic exactly when it carries a flow that is
//! strictly positive on every edge. Each circuit of the bias matroid supports
//! a flow with values in `{0, 1, 2}` directed along any cycle through it, so
//! summing one such flow per edge gives a witness bounded by `2|E|`.

use std::collections::BTreeSet;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::flows::engine::{is_flow, negative_edges, support, FlowSpace};
use crate::signed_graph::{EdgeSet, Orientation, SignedGraph};

fn witness_bound(g: &SignedGraph) -> i64 {
    2 * g.n_edges() as i64
}

/// Searches for a flow `y` in orientation `o` with `1 <= y(e) <= 2|E|`.
pub fn is_totally_cyclic(g: &SignedGraph, o: &Orientation, budget: &Budget) -> Result<bool> {
    let space = FlowSpace::new(g)?;
    let w = witness_bound(g);
    let bounds: Vec<(i64, i64)> = (0..g.n_edges())
        .map(|e| if o.sign(e) > 0 { (1, w) } else { (-w, -1) })
        .collect();
    space.fold_box(&bounds, budget, || false, |found, _| *found = true, |a, b| a || b)
}

/// All totally cyclic orientations, read off as the sign patterns of
/// nowhere-zero flows bounded by `2|E|`.
pub fn totally_cyclic_orientations(g: &SignedGraph, budget: &Budget) -> Result<Vec<Orientation>> {
    let space = FlowSpace::new(g)?;
    let w = witness_bound(g);
    let patterns = space.fold_box(
        &vec![(-w, w); g.n_edges()],
        budget,
        BTreeSet::new,
        |acc: &mut BTreeSet<EdgeSet>, x| {
            if x.iter().all(|&v| v != 0) {
                acc.insert(negative_edges(x));
            }
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    )?;
    Ok(patterns
        .into_iter()
        .map(|reversed| Orientation { reversed })
        .collect())
}

pub fn count_totally_cyclic(g: &SignedGraph, budget: &Budget) -> Result<u64> {
    Ok(totally_cyclic_orientations(g, budget)?.len() as u64)
}

fn compatible_among(tc: &[Orientation], x: &[i64]) -> u64 {
    let supp = support(x);
    let neg = negative_edges(x);
    tc.iter()
        .filter(|o| o.reversed.intersection(supp) == neg)
        .count() as u64
}

/// Number of totally cyclic orientations in which `x` is nonnegative.
pub fn compatible_tc_count(g: &SignedGraph, x: &[i64], budget: &Budget) -> Result<u64> {
    if !is_flow(g, x) {
        return Err(Error::NotAFlow);
    }
    let tc = totally_cyclic_orientations(g, budget)?;
    Ok(compatible_among(&tc, x))
}

/// Number of `(k+1)`-flows, each counted with its number of compatible
/// totally cyclic orientations.
pub fn reciprocity_rhs(g: &SignedGraph, k: u32, budget: &Budget) -> Result<u64> {
    let tc = totally_cyclic_orientations(g, budget)?;
    let space = FlowSpace::new(g)?;
    let b = k as i64;
    space.fold_box(
        &vec![(-b, b); g.n_edges()],
        budget,
        || 0u64,
        |acc, x| *acc += compatible_among(&tc, x),
        |a, b| a + b,
    )
}
