#![allow(dead_code)]

use flowcount::{Edge, Sign, SignedGraph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_f10e;

fn random_sign(rng: &mut impl Rng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// One random signed graph with 1..=4 nodes and 0..=max_edges edges.
pub fn random_graph(rng: &mut impl Rng, max_edges: usize) -> SignedGraph {
    let n = rng.gen_range(1..=4usize);
    let m = rng.gen_range(0..=max_edges);
    let edges = (0..m)
        .map(|_| {
            let roll = rng.gen_range(0..100);
            if n >= 2 && roll < 60 {
                let u = rng.gen_range(0..n);
                let mut v = rng.gen_range(0..n - 1);
                if v >= u {
                    v += 1;
                }
                Edge::Link(u, v, random_sign(rng))
            } else if roll < 80 {
                Edge::Loop(rng.gen_range(0..n), random_sign(rng))
            } else if roll < 95 {
                Edge::Half(rng.gen_range(0..n))
            } else {
                Edge::Loose
            }
        })
        .collect();
    SignedGraph::new(n, edges).unwrap()
}

/// The fixed random corpus: 50 signed graphs with at most 5 edges.
pub fn random_corpus() -> Vec<SignedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..50).map(|_| random_graph(&mut rng, 5)).collect()
}

pub fn arb_sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Positive), Just(Sign::Negative)]
}

pub fn arb_graph(max_nodes: usize, max_edges: usize) -> impl Strategy<Value = SignedGraph> {
    (1..=max_nodes).prop_flat_map(move |n| {
        let node = 0..n;
        let others = prop_oneof![
            2 => (node.clone(), arb_sign()).prop_map(|(v, s)| Edge::Loop(v, s)),
            2 => node.clone().prop_map(Edge::Half),
            1 => Just(Edge::Loose),
        ];
        let edge = if n > 1 {
            // second endpoint drawn from the other n - 1 nodes
            let link = (node.clone(), 0..n - 1, arb_sign())
                .prop_map(|(u, v, s)| Edge::Link(u, if v >= u { v + 1 } else { v }, s));
            prop_oneof![6 => link, 5 => others].boxed()
        } else {
            others.boxed()
        };
        proptest::collection::vec(edge, 0..=max_edges)
            .prop_map(move |edges| SignedGraph::new(n, edges).unwrap())
    })
}

/// Counts `(weak, strict)` `k`-flows by checking every vector in the box
/// `|x(e)| < k` against the incidence matrix.
pub fn brute_counts(g: &SignedGraph, k: u32) -> (u64, u64) {
    let h = g.incidence_matrix();
    let m = g.n_edges();
    let b = k as i64 - 1;
    if b < 0 {
        return (0, 0);
    }
    let mut x = vec![-b; m];
    let (mut weak, mut strict) = (0, 0);
    loop {
        if h.mul_vec(&x).iter().all(|&v| v == 0) {
            weak += 1;
            if x.iter().all(|&v| v != 0) {
                strict += 1;
            }
        }
        let mut i = 0;
        loop {
            if i == m {
                return (weak, strict);
            }
            if x[i] < b {
                x[i] += 1;
                break;
            }
            x[i] = -b;
            i += 1;
        }
    }
}
