//! Checkable identities linking the flow counts, the Tutte polynomial and the
//! dual flats lattice. Every check compares two exactly computed values.
//!
//! Sign conventions used throughout (both confirmed by brute force):
//! the number of totally cyclic orientations is `(-1)^xi * strict(0)`, and
//! the Möbius expansions read
//! `strict(k) = sum_T mu(0, T^c) weak_T(k)` and
//! `(-1)^xi strict(-k) = sum_T |mu(0, T^c)| weak_T(k + 1)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::flows::{
    count_group_flows, count_totally_cyclic, enumerate_int_flows, flow_count_table,
    groups_of_order, reciprocity_rhs,
};
use crate::matroid::{dual_flats_lattice, modular_flow_value, tutte};
use crate::quasipoly::{fit_flow_quasipolynomial, FlowMode};
use crate::signed_graph::{EdgeSet, SignedGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub params: String,
    pub left: BigRational,
    pub right: BigRational,
    pub pass: bool,
}

impl Record {
    fn new(params: impl Into<String>, left: BigRational, right: BigRational) -> Self {
        let pass = left == right;
        Record {
            params: params.into(),
            left,
            right,
            pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub graph: String,
    pub check: Check,
    pub records: Vec<Record>,
}

impl VerificationReport {
    fn new(check: Check, records: Vec<Record>) -> Self {
        VerificationReport {
            graph: String::new(),
            check,
            records,
        }
    }

    pub fn with_graph(mut self, graph: impl Into<String>) -> Self {
        self.graph = graph.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.pass)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    Reciprocity,
    ModularTutte,
    Mobius,
    Contraction,
    TotallyCyclic,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::Reciprocity,
        Check::ModularTutte,
        Check::Mobius,
        Check::Contraction,
        Check::TotallyCyclic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Reciprocity => "reciprocity",
            Check::ModularTutte => "tutte",
            Check::Mobius => "mobius",
            Check::Contraction => "contraction",
            Check::TotallyCyclic => "tc",
        }
    }
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

fn signed(xi: usize, v: BigRational) -> BigRational {
    if xi % 2 == 0 {
        v
    } else {
        -v
    }
}

/// `(-1)^xi * strict(-k)` against the orientation-weighted flow count, for
/// `k = 0..=k_max`.
pub fn verify_reciprocity(g: &SignedGraph, k_max: u32, budget: &Budget) -> Result<VerificationReport> {
    let strict = fit_flow_quasipolynomial(g, FlowMode::Strict, budget)?;
    let xi = g.cyclomatic();
    let records = (0..=k_max)
        .map(|k| {
            let left = signed(xi, strict.evaluate(-(k as i64)));
            let right = int(reciprocity_rhs(g, k, budget)?);
            Ok(Record::new(format!("k={k}"), left, right))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new(Check::Reciprocity, records))
}

/// Nowhere-zero flow counts over every abelian group of each odd order
/// against the Tutte evaluation `(-1)^xi t(0, 1 - k)`.
pub fn verify_modular_tutte(g: &SignedGraph, odd_orders: &[u64], budget: &Budget) -> Result<VerificationReport> {
    if let Some(&even) = odd_orders.iter().find(|&&k| k % 2 == 0) {
        return Err(Error::EvenOrder(even));
    }
    let t = tutte(g, budget)?;
    let xi = g.cyclomatic();
    let mut records = Vec::new();
    for &k in odd_orders {
        let expected = int(modular_flow_value(&t, xi, k as i64));
        for group in groups_of_order(k) {
            let counts = count_group_flows(g, &group, budget)?;
            records.push(Record::new(
                format!("k={k} A={group}"),
                int(counts.nowhere_zero),
                expected.clone(),
            ));
        }
    }
    Ok(VerificationReport::new(Check::ModularTutte, records))
}

/// Both Möbius expansions over the flats of the dual bias matroid, with the
/// weak counts of each `Σ|T` computed by direct enumeration.
pub fn verify_mobius_expansion(g: &SignedGraph, k_max: u32, budget: &Budget) -> Result<VerificationReport> {
    let lattice = dual_flats_lattice(g, budget)?;
    let m = g.n_edges();
    let xi = g.cyclomatic();
    let strict_q = fit_flow_quasipolynomial(g, FlowMode::Strict, budget)?;
    let strict = flow_count_table(g, k_max, budget)?;
    // Each flat collects the inclusion-exclusion signs of the sets closing to
    // it. Those sum to mu(0, F) when the bottom flat is empty, and cancel to
    // zero for every flat otherwise (a coloop forces strict = 0).
    let coloop_free = lattice.bottom().is_empty();
    let mut terms = Vec::with_capacity(lattice.len());
    for (flat, mu) in lattice.iter() {
        let mu = if coloop_free { mu } else { 0 };
        let sub = g.restrict(flat.complement(m));
        terms.push((mu, flow_count_table(&sub, k_max + 1, budget)?));
    }
    let mut records = Vec::new();
    for k in 1..=k_max as usize {
        let open: i128 = terms.iter().map(|(mu, t)| *mu as i128 * t[k - 1].weak as i128).sum();
        records.push(Record::new(format!("open k={k}"), int(strict[k - 1].strict), int(open)));
        let closed: i128 = terms.iter().map(|(mu, t)| mu.abs() as i128 * t[k].weak as i128).sum();
        records.push(Record::new(
            format!("closed k={k}"),
            signed(xi, strict_q.evaluate(-(k as i64))),
            int(closed),
        ));
    }
    Ok(VerificationReport::new(Check::Mobius, records))
}

/// `|strict(-k)|` against the sum over `(k+1)`-flows `x` of the number of
/// totally cyclic orientations of the contraction by `supp x`.
pub fn verify_contraction_formula(g: &SignedGraph, k_max: u32, budget: &Budget) -> Result<VerificationReport> {
    if !g.is_all_positive() {
        return Err(Error::NotAllPositive);
    }
    let strict = fit_flow_quasipolynomial(g, FlowMode::Strict, budget)?;
    let mut by_support: HashMap<EdgeSet, BigInt> = HashMap::new();
    let mut records = Vec::new();
    for k in 1..=k_max {
        let mut sum = BigInt::from(0);
        for x in enumerate_int_flows(g, k, budget)? {
            let supp = EdgeSet::from_edges((0..x.len()).filter(|&e| x[e] != 0));
            if !by_support.contains_key(&supp) {
                let c = g.contract_edge_set(supp)?;
                let value = modular_flow_value(&tutte(&c, budget)?, c.cyclomatic(), -1).abs();
                by_support.insert(supp, value);
            }
            sum += &by_support[&supp];
        }
        records.push(Record::new(
            format!("k={k}"),
            strict.evaluate(-(k as i64)).abs(),
            int(sum),
        ));
    }
    Ok(VerificationReport::new(Check::Contraction, records))
}

/// Totally cyclic orientation count against `t(0, 2)`, against
/// `(-1)^xi strict(0)`, and against `(-1)^xi` times the modular flow
/// polynomial at `-1`.
pub fn verify_tc_identities(g: &SignedGraph, budget: &Budget) -> Result<VerificationReport> {
    let tc = int(count_totally_cyclic(g, budget)?);
    let t = tutte(g, budget)?;
    let xi = g.cyclomatic();
    let strict = fit_flow_quasipolynomial(g, FlowMode::Strict, budget)?;
    let records = vec![
        Record::new("t(0,2)", tc.clone(), int(t.eval(&BigInt::from(0), &BigInt::from(2)))),
        Record::new("strict(0)", tc.clone(), signed(xi, strict.evaluate(0))),
        Record::new("modular(-1)", tc, signed(xi, int(modular_flow_value(&t, xi, -1)))),
    ];
    Ok(VerificationReport::new(Check::TotallyCyclic, records))
}

/// Parameters for [`run_check`].
#[derive(Clone, Debug)]
pub struct CheckParams {
    pub k_max: u32,
    pub odd_orders: Vec<u64>,
}

impl Default for CheckParams {
    fn default() -> Self {
        CheckParams {
            k_max: 2,
            odd_orders: vec![3, 5, 7],
        }
    }
}

pub fn run_check(g: &SignedGraph, check: Check, params: &CheckParams, budget: &Budget) -> Result<VerificationReport> {
    match check {
        Check::Reciprocity => verify_reciprocity(g, params.k_max, budget),
        Check::ModularTutte => verify_modular_tutte(g, &params.odd_orders, budget),
        Check::Mobius => verify_mobius_expansion(g, params.k_max, budget),
        Check::Contraction => verify_contraction_formula(g, params.k_max, budget),
        Check::TotallyCyclic => verify_tc_identities(g, budget),
    }
}
