//! Integer points of the flow lattice inside a box.
//!
//! A basis `B` of the bias matroid is chosen greedily. The coordinates on
//! `E \ B` are free; for every choice of them the coordinates on `B` are the
//! unique rational solution of `H_B x_B = -H_N x_N`. That solution is
//! precomputed as an integer matrix over a common denominator, so the inner
//! loop is integer additions and one divisibility test per basis edge.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::matroid::rank;
use crate::signed_graph::{EdgeSet, SignedGraph};

#[derive(Clone, Debug)]
pub struct FlowSpace {
    n_edges: usize,
    basis: Vec<usize>,
    free: Vec<usize>,
    /// `x_B[i] = sum_j coeffs[i][j] * x_free[j] / denom`
    coeffs: Vec<Vec<i64>>,
    denom: i64,
}

impl FlowSpace {
    pub fn new(g: &SignedGraph) -> Result<Self> {
        let m = g.n_edges();
        let mut basis_set = EdgeSet::EMPTY;
        let mut r = 0;
        for e in 0..m {
            let next = rank(g, basis_set.with(e));
            if next > r {
                basis_set = basis_set.with(e);
                r = next;
            }
        }
        let basis: Vec<usize> = basis_set.iter().collect();
        let free: Vec<usize> = basis_set.complement(m).iter().collect();
        let h = g.incidence_matrix();
        let q = |v: i64| BigRational::from_integer(BigInt::from(v));

        // Pick r rows on which H_B is invertible.
        let mut work: Vec<Vec<BigRational>> = (0..h.n_rows())
            .map(|row| basis.iter().map(|&c| q(h.get(row, c))).collect())
            .collect();
        let mut rows = Vec::with_capacity(r);
        let mut used = vec![false; work.len()];
        for col in 0..basis.len() {
            let pivot = (0..work.len()).find(|&i| !used[i] && !work[i][col].is_zero());
            let Some(p) = pivot else {
                return Err(Error::Internal(format!(
                    "incidence columns of basis {basis_set} are linearly dependent"
                )));
            };
            used[p] = true;
            rows.push(p);
            let pivot_row = work[p].clone();
            for (i, row) in work.iter_mut().enumerate() {
                if i != p && !row[col].is_zero() {
                    let factor = &row[col] / &pivot_row[col];
                    for (c, v) in row.iter_mut().enumerate() {
                        *v -= &factor * &pivot_row[c];
                    }
                }
            }
        }

        // Solve H[rows, B] X = -H[rows, free] by Gauss-Jordan.
        let width = basis.len() + free.len();
        let mut aug: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|&row| {
                let mut line: Vec<BigRational> = basis.iter().map(|&c| q(h.get(row, c))).collect();
                line.extend(free.iter().map(|&c| q(-h.get(row, c))));
                line
            })
            .collect();
        for col in 0..basis.len() {
            let p = (col..aug.len())
                .find(|&i| !aug[i][col].is_zero())
                .ok_or_else(|| Error::Internal("singular basis submatrix".into()))?;
            aug.swap(col, p);
            let inv = BigRational::one() / &aug[col][col];
            for v in aug[col].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = aug[col].clone();
            for (i, row) in aug.iter_mut().enumerate() {
                if i != col && !row[col].is_zero() {
                    let factor = row[col].clone();
                    for c in 0..width {
                        row[c] -= &factor * &pivot_row[c];
                    }
                }
            }
        }
        let solution: Vec<Vec<BigRational>> =
            aug.into_iter().map(|row| row[basis.len()..].to_vec()).collect();
        let denom = solution
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let to_i64 = |v: &BigInt| {
            v.to_i64()
                .ok_or_else(|| Error::Internal("flow solution coefficient overflow".into()))
        };
        let coeffs = solution
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| to_i64(&(v * BigRational::from_integer(denom.clone())).to_integer()))
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FlowSpace {
            n_edges: m,
            basis,
            free,
            coeffs,
            denom: to_i64(&denom)?,
        })
    }

    /// Number of free coordinates, the cyclomatic number.
    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    /// Folds `visit` over every flow `x` with `bounds[e].0 <= x[e] <= bounds[e].1`.
    /// Work is split over the values of the first free coordinate.
    pub fn fold_box<T, I, V, C>(
        &self,
        bounds: &[(i64, i64)],
        budget: &Budget,
        init: I,
        visit: V,
        combine: C,
    ) -> Result<T>
    where
        T: Send,
        I: Fn() -> T + Sync + Send,
        V: Fn(&mut T, &[i64]) + Sync + Send,
        C: Fn(T, T) -> T + Sync + Send,
    {
        assert_eq!(bounds.len(), self.n_edges);
        let ranges: Vec<(i64, i64)> = self.free.iter().map(|&e| bounds[e]).collect();
        if ranges.iter().any(|&(lo, hi)| lo > hi) {
            return Ok(init());
        }
        let volume = ranges
            .iter()
            .fold(1u128, |acc, &(lo, hi)| acc.saturating_mul((hi - lo + 1) as u128));
        budget.check("flow lattice box", volume)?;

        if ranges.is_empty() {
            let mut acc = init();
            let mut x = vec![0i64; self.n_edges];
            if self.complete(&vec![0; self.basis.len()], bounds, &mut x) {
                visit(&mut acc, &x);
            }
            return Ok(acc);
        }

        let (lo0, hi0) = ranges[0];
        let result = (lo0..=hi0)
            .into_par_iter()
            .map(|first| {
                let mut acc = init();
                let mut point: Vec<i64> = ranges.iter().map(|&(lo, _)| lo).collect();
                point[0] = first;
                let mut sums: Vec<i64> = self
                    .coeffs
                    .iter()
                    .map(|row| row.iter().zip(&point).map(|(c, v)| c * v).sum())
                    .collect();
                let mut x = vec![0i64; self.n_edges];
                for (j, &e) in self.free.iter().enumerate() {
                    x[e] = point[j];
                }
                loop {
                    if self.complete(&sums, bounds, &mut x) {
                        visit(&mut acc, &x);
                    }
                    // odometer over free coordinates 1..
                    let mut j = 1;
                    loop {
                        if j == ranges.len() {
                            return acc;
                        }
                        let (lo, hi) = ranges[j];
                        if point[j] < hi {
                            point[j] += 1;
                            for (s, row) in sums.iter_mut().zip(&self.coeffs) {
                                *s += row[j];
                            }
                            x[self.free[j]] = point[j];
                            break;
                        }
                        let back = hi - lo;
                        point[j] = lo;
                        for (s, row) in sums.iter_mut().zip(&self.coeffs) {
                            *s -= row[j] * back;
                        }
                        x[self.free[j]] = lo;
                        j += 1;
                    }
                }
            })
            .reduce(&init, &combine);
        Ok(result)
    }

    /// Fills the basis coordinates of `x` from the scaled sums; false if they
    /// are fractional or out of bounds.
    fn complete(&self, sums: &[i64], bounds: &[(i64, i64)], x: &mut [i64]) -> bool {
        for (&e, &s) in self.basis.iter().zip(sums) {
            if s % self.denom != 0 {
                return false;
            }
            let v = s / self.denom;
            let (lo, hi) = bounds[e];
            if v < lo || v > hi {
                return false;
            }
            x[e] = v;
        }
        true
    }
}

/// Every integer flow with `|x(e)| <= bound`, in lexicographic-free order.
pub fn enumerate_int_flows(g: &SignedGraph, bound: u32, budget: &Budget) -> Result<Vec<Vec<i64>>> {
    let space = FlowSpace::new(g)?;
    let b = bound as i64;
    let mut flows = space.fold_box(
        &vec![(-b, b); g.n_edges()],
        budget,
        Vec::new,
        |acc: &mut Vec<Vec<i64>>, x| acc.push(x.to_vec()),
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    )?;
    flows.sort();
    Ok(flows)
}

pub fn is_flow(g: &SignedGraph, x: &[i64]) -> bool {
    x.len() == g.n_edges() && g.incidence_matrix().mul_vec(x).iter().all(|&v| v == 0)
}

/// Weak and nowhere-zero `k`-flow counts for one `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct FlowCounts {
    pub weak: u64,
    pub strict: u64,
}

/// Counts for every `k` in `1..=k_max` from a single enumeration with bound
/// `k_max - 1`, bucketing each flow by its largest absolute value.
/// Entry `i` of the result holds the counts for `k = i + 1`.
pub fn flow_count_table(g: &SignedGraph, k_max: u32, budget: &Budget) -> Result<Vec<FlowCounts>> {
    if k_max == 0 {
        return Ok(Vec::new());
    }
    let space = FlowSpace::new(g)?;
    let b = (k_max - 1) as i64;
    let len = k_max as usize;
    let (weak_hist, strict_hist) = space.fold_box(
        &vec![(-b, b); g.n_edges()],
        budget,
        || (vec![0u64; len], vec![0u64; len]),
        |acc, x| {
            let norm = x.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0) as usize;
            acc.0[norm] += 1;
            if x.iter().all(|&v| v != 0) {
                acc.1[norm] += 1;
            }
        },
        |mut a, b| {
            for i in 0..len {
                a.0[i] += b.0[i];
                a.1[i] += b.1[i];
            }
            a
        },
    )?;
    let mut table = Vec::with_capacity(len);
    let (mut weak, mut strict) = (0u64, 0u64);
    for i in 0..len {
        weak += weak_hist[i];
        strict += strict_hist[i];
        table.push(FlowCounts { weak, strict });
    }
    Ok(table)
}

pub fn count_flows(g: &SignedGraph, k: u32, budget: &Budget) -> Result<FlowCounts> {
    if k == 0 {
        return Ok(FlowCounts::default());
    }
    Ok(flow_count_table(g, k, budget)?[k as usize - 1])
}

/// Number of `k`-flows, `φ⁰(k)`.
pub fn count_weak(g: &SignedGraph, k: u32, budget: &Budget) -> Result<u64> {
    Ok(count_flows(g, k, budget)?.weak)
}

/// Number of nowhere-zero `k`-flows, `φ(k)`.
pub fn count_nowhere_zero(g: &SignedGraph, k: u32, budget: &Budget) -> Result<u64> {
    Ok(count_flows(g, k, budget)?.strict)
}

/// Reference-orientation sign pattern of a flow, as the set of edges carrying
/// negative values.
pub(crate) fn negative_edges(x: &[i64]) -> EdgeSet {
    EdgeSet::from_edges(x.iter().enumerate().filter(|(_, v)| **v < 0).map(|(e, _)| e))
}

pub(crate) fn support(x: &[i64]) -> EdgeSet {
    EdgeSet::from_edges(x.iter().enumerate().filter(|(_, v)| **v != 0).map(|(e, _)| e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed_graph::{Edge, Sign};

    fn parallel(m: usize) -> SignedGraph {
        SignedGraph::all_positive(2, &vec![(0, 1); m]).unwrap()
    }

    fn s1() -> SignedGraph {
        SignedGraph::new(1, vec![Edge::Loop(0, Sign::Negative); 2]).unwrap()
    }

    fn pm_k2_11() -> SignedGraph {
        SignedGraph::new(
            2,
            vec![
                Edge::Link(0, 1, Sign::Positive),
                Edge::Link(0, 1, Sign::Negative),
                Edge::Half(0),
                Edge::Loop(1, Sign::Negative),
            ],
        )
        .unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let b = Budget::default();
        assert_eq!(
            enumerate_int_flows(&parallel(2), 1, &b).unwrap(),
            vec![vec![-1, 1], vec![0, 0], vec![1, -1]]
        );
        assert_eq!(
            enumerate_int_flows(&s1(), 1, &b).unwrap(),
            vec![vec![-1, 1], vec![0, 0], vec![1, -1]]
        );
        assert_eq!(
            enumerate_int_flows(&pm_k2_11(), 1, &b).unwrap(),
            vec![vec![-1, 1, 0, -1], vec![0, 0, 0, 0], vec![1, -1, 0, 1]]
        );
    }

    #[test]
    fn count_examples() {
        let b = Budget::default();
        assert_eq!(count_nowhere_zero(&parallel(3), 3, &b).unwrap(), 6);
        assert_eq!(count_nowhere_zero(&parallel(4), 2, &b).unwrap(), 6);
        let path = SignedGraph::all_positive(3, &[(0, 1), (1, 2)]).unwrap();
        for k in 1..6 {
            assert_eq!(count_nowhere_zero(&path, k, &b).unwrap(), 0);
            assert_eq!(count_weak(&path, k, &b).unwrap(), 1);
        }
    }

    #[test]
    fn table_matches_single_counts() {
        let b = Budget::default();
        let g = pm_k2_11();
        let table = flow_count_table(&g, 6, &b).unwrap();
        for k in 1..=6u32 {
            let direct = enumerate_int_flows(&g, k - 1, &b).unwrap();
            let strict = direct.iter().filter(|x| x.iter().all(|&v| v != 0)).count() as u64;
            assert_eq!(table[k as usize - 1], FlowCounts { weak: direct.len() as u64, strict });
        }
    }

    #[test]
    fn empty_graph_has_the_empty_flow() {
        let g = SignedGraph::new(3, vec![]).unwrap();
        let t = flow_count_table(&g, 3, &Budget::default()).unwrap();
        assert!(t.iter().all(|c| *c == FlowCounts { weak: 1, strict: 1 }));
    }

    #[test]
    fn loose_edges_are_free() {
        let g = SignedGraph::new(0, vec![Edge::Loose, Edge::Loose]).unwrap();
        assert_eq!(count_flows(&g, 3, &Budget::default()).unwrap(), FlowCounts { weak: 25, strict: 16 });
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_int_flows(&parallel(6), 10, &Budget::new(1000)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { needed: 4084101, .. }));
    }

    #[test]
    fn half_integral_basis_solutions_are_filtered() {
        // a single negative loop and a halfedge at one node: 2y + x = 0
        let g = SignedGraph::new(1, vec![Edge::Loop(0, Sign::Negative), Edge::Half(0)]).unwrap();
        let flows = enumerate_int_flows(&g, 2, &Budget::default()).unwrap();
        assert_eq!(flows, vec![vec![-1, 2], vec![0, 0], vec![1, -2]]);
        assert!(flows.iter().all(|x| is_flow(&g, x)));
    }
}
