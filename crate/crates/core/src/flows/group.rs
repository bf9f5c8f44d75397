//! Flows with values in a finite abelian group `Z_n1 x ... x Z_nr`.

use std::fmt;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::signed_graph::SignedGraph;

/// Product of cyclic groups, canonicalized by sorting the cyclic orders.
/// Elements are encoded as mixed-radix indices in `0..order()`, with `0`
/// the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    cyclic_orders: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(mut cyclic_orders: Vec<u64>) -> Result<Self> {
        if cyclic_orders.is_empty() {
            return Err(Error::InvalidGroup("no cyclic factors".into()));
        }
        if let Some(n) = cyclic_orders.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidGroup(format!("cyclic factor of order {n}")));
        }
        cyclic_orders
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::InvalidGroup("order overflows".into()))?;
        cyclic_orders.sort_unstable();
        Ok(FiniteAbelianGroup { cyclic_orders })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        FiniteAbelianGroup::new(vec![n])
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.cyclic_orders
    }

    pub fn order(&self) -> u64 {
        self.cyclic_orders.iter().product()
    }

    pub fn decode(&self, mut index: u64) -> Vec<u64> {
        self.cyclic_orders
            .iter()
            .map(|&n| {
                let r = index % n;
                index /= n;
                r
            })
            .collect()
    }

    pub fn encode(&self, residues: &[u64]) -> u64 {
        self.cyclic_orders
            .iter()
            .zip(residues)
            .rev()
            .fold(0, |acc, (&n, &r)| acc * n + r % n)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (ra, rb) = (self.decode(a), self.decode(b));
        let sum: Vec<u64> = self
            .cyclic_orders
            .iter()
            .zip(ra.iter().zip(&rb))
            .map(|(&n, (&x, &y))| (x + y) % n)
            .collect();
        self.encode(&sum)
    }

    /// Integer multiple `c * a`, componentwise.
    pub fn scale(&self, a: u64, c: i64) -> u64 {
        let scaled: Vec<u64> = self
            .cyclic_orders
            .iter()
            .zip(self.decode(a))
            .map(|(&n, x)| (c as i128 * x as i128).rem_euclid(n as i128) as u64)
            .collect();
        self.encode(&scaled)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.cyclic_orders.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// All ways to write a group of order `n` as a product of cyclic factors,
/// one per unordered factorization of `n` into parts `>= 2`.
pub fn groups_of_order(n: u64) -> Vec<FiniteAbelianGroup> {
    fn rec(rest: u64, max: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(current.clone());
            return;
        }
        for d in (2..=max.min(rest)).rev() {
            if rest % d == 0 {
                current.push(d);
                rec(rest / d, d, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n >= 2 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out.into_iter()
        .map(|orders| FiniteAbelianGroup::new(orders).expect("factors are >= 2"))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupFlowCounts {
    pub total: u128,
    pub nowhere_zero: u128,
}

/// Counts all `A`-flows and nowhere-zero `A`-flows by a sweep over edges
/// whose state is the vector of partial net inflows at the nodes.
pub fn count_group_flows(
    g: &SignedGraph,
    group: &FiniteAbelianGroup,
    budget: &Budget,
) -> Result<GroupFlowCounts> {
    let order = group.order();
    budget.check_power("group flow states", order as u128, g.n_nodes() + 1)?;
    let n_states = (order as usize).pow(g.n_nodes() as u32);
    let place: Vec<usize> = (0..g.n_nodes()).map(|v| (order as usize).pow(v as u32)).collect();
    let h = g.incidence_matrix();

    let mut all = vec![0u128; n_states];
    let mut nz = vec![0u128; n_states];
    all[0] = 1;
    nz[0] = 1;
    for e in 0..g.n_edges() {
        let column: Vec<(usize, i64)> = (0..g.n_nodes())
            .map(|v| (v, h.get(v, e)))
            .filter(|&(_, c)| c != 0)
            .collect();
        if column.is_empty() {
            for s in 0..n_states {
                all[s] *= order as u128;
                nz[s] *= order as u128 - 1;
            }
            continue;
        }
        let mut next_all = vec![0u128; n_states];
        let mut next_nz = vec![0u128; n_states];
        let shifts: Vec<Vec<u64>> = column
            .iter()
            .map(|&(_, c)| (0..order).map(|a| group.scale(a, c)).collect())
            .collect();
        for s in 0..n_states {
            if all[s] == 0 {
                continue;
            }
            for a in 0..order {
                let mut target = s;
                for (&(v, _), shift) in column.iter().zip(&shifts) {
                    let digit = (target / place[v]) % order as usize;
                    let moved = group.add(digit as u64, shift[a as usize]) as usize;
                    target = target - digit * place[v] + moved * place[v];
                }
                next_all[target] += all[s];
                if a != 0 {
                    next_nz[target] += nz[s];
                }
            }
        }
        all = next_all;
        nz = next_nz;
    }
    Ok(GroupFlowCounts {
        total: all[0],
        nowhere_zero: nz[0],
    })
}
