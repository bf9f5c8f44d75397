//! The bias matroid of a signed graph: rank, coloops, Tutte polynomial, and
//! the lattice of flats of its dual with Möbius values.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::signed_graph::{EdgeSet, SignedGraph};

/// `r(T) = |V| - b(Σ|T)`.
pub fn rank(g: &SignedGraph, set: EdgeSet) -> usize {
    g.n_nodes() - g.balanced_components_in(set)
}

pub fn is_coloop(g: &SignedGraph, e: usize) -> Result<bool> {
    g.edge(e)?;
    let all = g.all_edges();
    Ok(rank(g, all.without(e)) + 1 == rank(g, all))
}

/// Edges that are loops of the bias matroid (rank-zero singletons).
pub fn is_matroid_loop(g: &SignedGraph, e: usize) -> Result<bool> {
    g.edge(e)?;
    Ok(rank(g, EdgeSet::singleton(e)) == 0)
}

pub fn coloops(g: &SignedGraph) -> EdgeSet {
    let all = g.all_edges();
    let full = rank(g, all);
    EdgeSet::from_edges((0..g.n_edges()).filter(|&e| rank(g, all.without(e)) + 1 == full))
}

/// Rank of every edge subset, indexed by mask.
pub fn rank_table(g: &SignedGraph, budget: &Budget) -> Result<Vec<usize>> {
    budget.check_power("edge subsets", 2, g.n_edges())?;
    Ok(EdgeSet::all_subsets(g.n_edges())
        .map(|s| rank(g, s))
        .collect())
}

/// Integer polynomial `sum c_ij x^i y^j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariatePolynomial {
    coeffs: BTreeMap<(usize, usize), i64>,
}

impl BivariatePolynomial {
    pub fn from_terms(terms: impl IntoIterator<Item = ((usize, usize), i64)>) -> Self {
        let mut p = BivariatePolynomial::default();
        for (exp, c) in terms {
            p.add_term(exp, c);
        }
        p
    }

    fn add_term(&mut self, exp: (usize, usize), c: i64) {
        let entry = self.coeffs.entry(exp).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> i64 {
        self.coeffs.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero terms as `((x_exp, y_exp), coeff)`, highest x power first,
    /// then ascending y power.
    pub fn terms(&self) -> Vec<((usize, usize), i64)> {
        let mut t: Vec<_> = self.coeffs.iter().map(|(&k, &v)| (k, v)).collect();
        t.sort_by(|a, b| b.0 .0.cmp(&a.0 .0).then(a.0 .1.cmp(&b.0 .1)));
        t
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, (&(i, j), &c)| {
            acc + BigInt::from(c) * x.pow(i as u32) * y.pow(j as u32)
        })
    }

    pub fn add(&self, other: &BivariatePolynomial) -> BivariatePolynomial {
        let mut p = self.clone();
        for (&exp, &c) in &other.coeffs {
            p.add_term(exp, c);
        }
        p
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, ((i, j), c)) in terms.into_iter().enumerate() {
            if n > 0 {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            let mag = c.unsigned_abs();
            let mut parts = Vec::new();
            if mag != 1 || (i == 0 && j == 0) {
                parts.push(mag.to_string());
            }
            match i {
                0 => {}
                1 => parts.push("x".into()),
                _ => parts.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => parts.push("y".into()),
                _ => parts.push(format!("y^{j}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

fn binomial_row(n: usize) -> Vec<i64> {
    let mut row = vec![1i64];
    for k in 0..n {
        let next = row[k] * (n - k) as i64 / (k as i64 + 1);
        row.push(next);
    }
    row
}

/// Tutte polynomial of the bias matroid by corank-nullity subset expansion.
pub fn tutte(g: &SignedGraph, budget: &Budget) -> Result<BivariatePolynomial> {
    let ranks = rank_table(g, budget)?;
    let full = *ranks.last().unwrap_or(&0);
    // counts[(corank, nullity)]
    let mut counts: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for (mask, &r) in ranks.iter().enumerate() {
        let size = (mask as u64).count_ones() as usize;
        *counts.entry((full - r, size - r)).or_insert(0) += 1;
    }
    let mut p = BivariatePolynomial::default();
    for ((a, b), n) in counts {
        let ca = binomial_row(a);
        let cb = binomial_row(b);
        for i in 0..=a {
            let sx = if (a - i) % 2 == 0 { 1 } else { -1 };
            for j in 0..=b {
                let sy = if (b - j) % 2 == 0 { 1 } else { -1 };
                p.add_term((i, j), n * sx * sy * ca[i] * cb[j]);
            }
        }
    }
    Ok(p)
}

/// `(-1)^xi * t(0, 1 - k)` for an already computed Tutte polynomial.
pub fn modular_flow_value(t: &BivariatePolynomial, cyclomatic: usize, k: i64) -> BigInt {
    let v = t.eval(&BigInt::zero(), &(BigInt::one() - BigInt::from(k)));
    if cyclomatic % 2 == 0 {
        v
    } else {
        -v
    }
}

/// Modular nowhere-zero flow polynomial evaluated at any integer `k`.
pub fn modular_flow_poly_via_tutte(g: &SignedGraph, k: i64, budget: &Budget) -> Result<BigInt> {
    let t = tutte(g, budget)?;
    Ok(modular_flow_value(&t, g.cyclomatic(), k))
}

/// Flats of the dual bias matroid, ordered by size, with `mu(bottom, F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualFlatsLattice {
    flats: Vec<EdgeSet>,
    mobius: Vec<i64>,
}

impl DualFlatsLattice {
    pub fn flats(&self) -> &[EdgeSet] {
        &self.flats
    }

    /// The least flat: the coloops of the bias matroid.
    pub fn bottom(&self) -> EdgeSet {
        self.flats[0]
    }

    pub fn mobius(&self, flat: EdgeSet) -> Option<i64> {
        self.flats
            .iter()
            .position(|&f| f == flat)
            .map(|i| self.mobius[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeSet, i64)> + '_ {
        self.flats.iter().copied().zip(self.mobius.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }
}

pub fn dual_flats_lattice(g: &SignedGraph, budget: &Budget) -> Result<DualFlatsLattice> {
    let ranks = rank_table(g, budget)?;
    let m = g.n_edges();
    let all = EdgeSet::full(m);
    let full = ranks[all.0 as usize];
    // r*(S) = |S| - r(E) + r(E \ S)
    let dual_rank = |s: EdgeSet| s.len() + ranks[s.complement(m).0 as usize] - full;
    let closure = |s: EdgeSet| {
        let r = dual_rank(s);
        EdgeSet::from_edges((0..m).filter(|&e| s.contains(e) || dual_rank(s.with(e)) == r))
    };
    let mut flats: Vec<EdgeSet> = EdgeSet::all_subsets(m).map(closure).collect();
    flats.sort_by_key(|f| (f.len(), f.0));
    flats.dedup();

    let bottom = closure(EdgeSet::EMPTY);
    if flats.first() != Some(&bottom) {
        return Err(Error::Internal("closure of the empty set is not the least flat".into()));
    }
    let mut mobius = vec![0i64; flats.len()];
    mobius[0] = 1;
    for i in 1..flats.len() {
        let f = flats[i];
        let below: i64 = (0..i)
            .filter(|&j| flats[j] != f && flats[j].is_subset_of(f))
            .map(|j| mobius[j])
            .sum();
        mobius[i] = -below;
    }
    Ok(DualFlatsLattice { flats, mobius })
}
