//! Exact rational quasipolynomials of period 1 or 2, fitted from flow counts.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::flows::flow_count_table;
use crate::signed_graph::SignedGraph;

/// Polynomial with rational coefficients, constant term first, no trailing
/// zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_int(&self, t: i64) -> BigRational {
        self.eval(&int(t))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    /// `p(1 - k)` as a polynomial in `k`.
    pub fn reflect(&self) -> Polynomial {
        let one_minus_k = Polynomial::from_integers(&[1, -1]);
        self.coeffs.iter().rev().fold(Polynomial::zero(), |acc, c| {
            acc.mul(&one_minus_k).add(&Polynomial::new(vec![c.clone()]))
        })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigRational::zero();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = if neg { -c.clone() } else { c.clone() };
            let show_mag = !mag.is_one() || i == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}k", if show_mag { "*" } else { "" })?,
                _ => write!(f, "{}k^{i}", if show_mag { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// A function of an integer `t` given by one polynomial per residue class of
/// `t` modulo the period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalQuasipolynomial {
    degree: usize,
    constituents: Vec<Polynomial>,
}

impl RationalQuasipolynomial {
    pub fn new(degree: usize, constituents: Vec<Polynomial>) -> Self {
        assert!(!constituents.is_empty(), "a quasipolynomial needs a constituent");
        RationalQuasipolynomial {
            degree,
            constituents,
        }
    }

    pub fn period(&self) -> usize {
        self.constituents.len()
    }

    /// Nominal degree; the coefficient lists have this length minus one.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn constituent(&self, class: usize) -> &Polynomial {
        &self.constituents[class % self.period()]
    }

    pub fn constituent_for(&self, t: i64) -> &Polynomial {
        &self.constituents[t.rem_euclid(self.period() as i64) as usize]
    }

    /// Coefficients of one constituent padded to `degree + 1`, constant first.
    pub fn coefficients(&self, class: usize) -> Vec<BigRational> {
        let p = self.constituent(class);
        (0..=self.degree.max(p.degree().unwrap_or(0)))
            .map(|i| p.coeff(i))
            .collect()
    }

    pub fn evaluate(&self, t: i64) -> BigRational {
        self.constituent_for(t).eval_int(t)
    }

    /// Leading coefficient when every constituent shares it.
    pub fn leading_coefficient(&self) -> Option<BigRational> {
        let lead = self.constituents[0].coeff(self.degree);
        self.constituents
            .iter()
            .all(|p| p.coeff(self.degree) == lead)
            .then_some(lead)
    }

    /// Replaces identical constituents by a single one.
    pub fn collapsed(self) -> Self {
        if self.constituents.iter().all(|p| p == &self.constituents[0]) {
            RationalQuasipolynomial {
                degree: self.degree,
                constituents: vec![self.constituents[0].clone()],
            }
        } else {
            self
        }
    }

    /// `sign * Q(1 - t)` as a quasipolynomial in `t`.
    pub fn reflected(&self, negate: bool) -> Self {
        let p = self.period();
        let sign = if negate { int(-1) } else { int(1) };
        let constituents = (0..p)
            .map(|c| {
                let other = (1 + p - c) % p;
                self.constituents[other].reflect().scale(&sign)
            })
            .collect();
        RationalQuasipolynomial {
            degree: self.degree,
            constituents,
        }
    }
}

/// Exact interpolation of one polynomial of the given degree per residue
/// class. Each class uses its first `degree + 1` samples; any further samples
/// in that class must agree with the fit.
pub fn interpolate(
    samples: &[(i64, BigRational)],
    degree: usize,
    period: usize,
) -> Result<RationalQuasipolynomial> {
    assert!(period > 0, "period must be positive");
    let mut seen = BTreeSet::new();
    for &(k, _) in samples {
        if !seen.insert(k) {
            return Err(Error::DuplicateAbscissa(k));
        }
    }
    let mut constituents = Vec::with_capacity(period);
    for class in 0..period {
        let pts: Vec<&(i64, BigRational)> = samples
            .iter()
            .filter(|(k, _)| k.rem_euclid(period as i64) as usize == class)
            .collect();
        if pts.len() < degree + 1 {
            return Err(Error::InsufficientSamples {
                class,
                got: pts.len(),
                needed: degree + 1,
            });
        }
        let (fit, rest) = pts.split_at(degree + 1);
        let poly = newton(fit);
        if let Some((k, _)) = rest.iter().find(|(k, v)| &poly.eval_int(*k) != v) {
            return Err(Error::InconsistentSamples { degree, k: *k });
        }
        constituents.push(poly);
    }
    Ok(RationalQuasipolynomial::new(degree, constituents))
}

/// Newton divided differences, expanded into monomial coefficients.
fn newton(points: &[&(i64, BigRational)]) -> Polynomial {
    let xs: Vec<BigRational> = points.iter().map(|(k, _)| int(*k)).collect();
    let mut table: Vec<BigRational> = points.iter().map(|(_, v)| v.clone()).collect();
    let n = points.len();
    for level in 1..n {
        for i in (level..n).rev() {
            table[i] = (&table[i] - &table[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut poly = Polynomial::zero();
    for i in (0..n).rev() {
        let linear = Polynomial::new(vec![-xs[i].clone(), BigRational::one()]);
        poly = poly.mul(&linear).add(&Polynomial::new(vec![table[i].clone()]));
    }
    poly
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowMode {
    /// Nowhere-zero `k`-flows.
    Strict,
    /// All `k`-flows.
    Weak,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowQuasipolynomials {
    pub strict: RationalQuasipolynomial,
    pub weak: RationalQuasipolynomial,
}

impl FlowQuasipolynomials {
    pub fn get(&self, mode: FlowMode) -> &RationalQuasipolynomial {
        match mode {
            FlowMode::Strict => &self.strict,
            FlowMode::Weak => &self.weak,
        }
    }
}

/// Fits both flow quasipolynomials of `g` from one count table.
///
/// Counts are taken for `k = 1..=2(xi + 2)`, giving `xi + 2` samples in each
/// residue class mod 2. The first `xi + 1` determine the constituent and the
/// last one is held out as a check.
pub fn fit_flow_quasipolynomials(g: &SignedGraph, budget: &Budget) -> Result<FlowQuasipolynomials> {
    let xi = g.cyclomatic();
    let horizon = 2 * (xi + 2);
    let table = flow_count_table(g, horizon as u32, budget)?;
    let fit = |pick: fn(&crate::flows::FlowCounts) -> u64| -> Result<RationalQuasipolynomial> {
        let samples: Vec<(i64, BigRational)> = table
            .iter()
            .enumerate()
            .map(|(i, c)| ((i + 1) as i64, int(pick(c) as i64)))
            .collect();
        let (held_out, used): (Vec<_>, Vec<_>) = samples
            .iter()
            .cloned()
            .partition(|(k, _)| *k as usize > horizon - 2);
        let q = interpolate(&used, xi, 2)?;
        for (k, counted) in held_out {
            let fitted = q.evaluate(k);
            if fitted != counted {
                return Err(Error::HeldOutMismatch {
                    k,
                    fitted: fitted.to_string(),
                    counted: counted.to_string(),
                });
            }
        }
        let q = q.collapsed();
        if q.period() != 1 && g.is_balanced() {
            return Err(Error::Internal("balanced graph gave a period-2 fit".into()));
        }
        Ok(q)
    };
    Ok(FlowQuasipolynomials {
        strict: fit(|c| c.strict)?,
        weak: fit(|c| c.weak)?,
    })
}

pub fn fit_flow_quasipolynomial(
    g: &SignedGraph,
    mode: FlowMode,
    budget: &Budget,
) -> Result<RationalQuasipolynomial> {
    let both = fit_flow_quasipolynomials(g, budget)?;
    Ok(match mode {
        FlowMode::Strict => both.strict,
        FlowMode::Weak => both.weak,
    })
}
