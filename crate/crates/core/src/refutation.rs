//! Degree lower bounds are tight: a colouring table with few colours would
//! project to an independent-set table whose objective is too large, and the
//! squared-power chain on `f = sum_i x_i` rules that out.

use std::collections::HashMap;
use std::f64::consts::E;

use num::{BigInt, BigUint, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pe::PseudoExpectation;
use crate::poly::{ColorMonomial, Monomial, Polynomial};
use crate::reduction::ColoringTable;
use crate::scalar::Scalar;

/// A colouring table stored entry by entry; absent monomials read as zero.
#[derive(Clone, Debug)]
pub struct ExplicitTable<T> {
    n: usize,
    k: usize,
    limit: usize,
    values: HashMap<ColorMonomial, T>,
}

impl<T: Scalar> ExplicitTable<T> {
    pub fn new(n: usize, k: usize, limit: usize) -> Self {
        ExplicitTable {
            n,
            k,
            limit,
            values: HashMap::new(),
        }
    }

    pub fn set(&mut self, m: ColorMonomial, value: T) -> Result<()> {
        for (c, s) in m.parts() {
            if *c == 0 || *c > self.k {
                return Err(Error::ColorOutOfRange { color: *c, k: self.k });
            }
            if let Some(&v) = s.vars().iter().find(|&&v| v == 0 || v > self.n) {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        self.values.insert(m, value);
        Ok(())
    }
}

impl<T: Scalar> ColoringTable<T> for ExplicitTable<T> {
    fn n(&self) -> usize {
        self.n
    }

    fn k(&self) -> usize {
        self.k
    }

    fn cdeg_limit(&self) -> usize {
        self.limit
    }

    fn value(&self, m: &ColorMonomial) -> Result<T> {
        if m.cdeg() > self.limit {
            return Err(Error::ColoringDegreeExceeded {
                cdeg: m.cdeg(),
                limit: self.limit,
            });
        }
        Ok(self.values.get(m).cloned().unwrap_or_else(T::zero))
    }
}

/// Averages the table over colour permutations and reads off colour 1:
/// `pE[x_S] = (1/k) sum_c table[x_{S,c}]` for `|S| <= degree`.
pub fn symmetrize_and_project<T: Scalar, C: ColoringTable<T>>(
    table: &C,
    degree: usize,
    budget: &Budget,
) -> Result<PseudoExpectation<T>> {
    let n = table.n();
    let degree = degree.min(n);
    if degree > table.cdeg_limit() {
        return Err(Error::DegreeExceeded {
            needed: degree,
            available: table.cdeg_limit(),
        });
    }
    let count: u128 = (0..=degree).map(|j| binomial(n, j)).sum();
    if count > budget.max_enumeration as u128 {
        return Err(Error::limit("projected table size", count, budget.max_enumeration as u128));
    }
    let k = table.k();
    let inv_k = T::one() / T::from_i64(k as i64);
    let mut out = PseudoExpectation::new(n, degree)?;
    for s in Graph::empty(n)?.enumerate_independent_sets(degree) {
        let s = Monomial::new(s);
        let mut acc = T::zero();
        for c in 1..=k {
            acc = acc + table.value(&ColorMonomial::new([(c, s.clone())]))?;
        }
        out.set(&s, acc * inv_k.clone())?;
    }
    Ok(out)
}

fn binomial(n: usize, j: usize) -> u128 {
    (0..j).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Ordered sequences of `len` picks from `s` items that use every item:
/// `sum_j (-1)^j C(s, j) (s - j)^len`.
pub fn surjections(len: u32, s: u32) -> BigUint {
    let mut acc = BigInt::zero();
    let mut choose = BigInt::one();
    for j in 0..=s {
        let term = &choose * BigInt::from(s - j).pow(len);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        choose = choose * BigInt::from(s - j) / BigInt::from(j + 1);
    }
    acc.to_biguint().expect("surjection count is nonnegative")
}

fn factorial(s: u32) -> BigUint {
    (1..=s).fold(BigUint::one(), |acc, i| acc * i)
}

fn ratio_f64(a: &BigUint, b: &BigUint) -> f64 {
    if b.is_zero() {
        return f64::INFINITY;
    }
    let shift = a.bits().max(b.bits()).saturating_sub(900);
    let (a, b) = (a >> shift, b >> shift);
    a.to_f64().unwrap_or(f64::INFINITY) / b.to_f64().unwrap_or(f64::INFINITY)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientAudit {
    pub s: u32,
    pub ell: u32,
    /// Coefficient of `x_S` in `f^(2^(ell-1))` after booleanity reduction.
    pub c: String,
    /// Coefficient of `x_S` in `f^(2^ell)`.
    pub c_prime: String,
    /// Both coefficients agree with the surjection count.
    pub closed_form_agrees: bool,
    /// `c' <= s^(2^ell)`.
    pub upper_holds: bool,
    /// `c >= s^(2^(ell-1) - s) s!`.
    pub lower_holds: bool,
    pub ratio: f64,
    /// `s^(2^(ell-1) + s) / s!`, the ratio of the two analytic bounds.
    pub analytic_ratio: f64,
    /// `(e s)^(2^(ell-1))`.
    pub stirling_bound: f64,
    /// `analytic_ratio <= stirling_bound`, with exact factorials.
    pub analytic_chain_holds: bool,
    pub omega: f64,
    pub omega_power: f64,
    /// `omega >= e s`.
    pub hypothesis: bool,
    /// `c'/c <= omega^(2^(ell-1))`; only claimed under the hypothesis.
    pub ratio_holds: bool,
}

/// Exact coefficients of `x_1 ... x_s` in `f^(2^(ell-1))` and `f^(2^ell)` for
/// `f = x_1 + ... + x_s`, by repeated multilinear squaring, checked against
/// the analytic bounds. Other variables of `f` never reach `x_S`, so `s`
/// variables suffice.
pub fn coefficient_audit(s: u32, ell: u32, omega: f64) -> Result<CoefficientAudit> {
    if s == 0 || ell == 0 {
        return Err(Error::InvalidParameter("s and ell must be at least 1".into()));
    }
    if ell > 10 {
        return Err(Error::limit("chain exponent", ell as u128, 10u128));
    }
    let half = 1u32 << (ell - 1);
    if s > half {
        return Err(Error::InvalidParameter(format!("audit needs s <= 2^(ell-1) = {half}, got s = {s}")));
    }
    if s > 16 {
        return Err(Error::limit("audited set size", s as u128, 16u128));
    }
    type Q = crate::scalar::Rational;
    let n = s as usize;
    let f = Polynomial::<Q>::from_terms(n, (1..=n).map(|i| (Monomial::var(i), Q::one())))?;
    let mut power = f;
    for _ in 1..ell {
        power = power.multiply(&power)?;
    }
    let top = Monomial::new((1..=n).collect());
    let read = |p: &Polynomial<Q>| -> BigUint {
        p.coeff(&top).to_integer().to_biguint().expect("coefficients are nonnegative integers")
    };
    let c = read(&power);
    let c_prime = read(&power.multiply(&power)?);
    let closed_form_agrees = c == surjections(half, s) && c_prime == surjections(2 * half, s);

    let su = BigUint::from(s);
    let upper = su.pow(2 * half);
    let lower = su.pow(half - s) * factorial(s);
    let analytic_num = su.pow(half + s);
    let analytic_ratio = ratio_f64(&analytic_num, &factorial(s));
    let stirling_bound = (E * s as f64).powi(half as i32);
    let ratio = ratio_f64(&c_prime, &c);
    let omega_power = omega.powi(half as i32);
    Ok(CoefficientAudit {
        s,
        ell,
        c: c.to_string(),
        c_prime: c_prime.to_string(),
        closed_form_agrees,
        upper_holds: c_prime <= upper,
        lower_holds: c >= lower,
        ratio,
        analytic_ratio,
        stirling_bound,
        analytic_chain_holds: analytic_ratio <= stirling_bound,
        omega,
        omega_power,
        hypothesis: omega >= E * s as f64,
        ratio_holds: ratio <= omega_power,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainVerdict {
    /// Every squaring step holds and the objective is below `e t`.
    Consistent,
    /// Some `pE[f^(2^(j+1))] < pE[f^(2^j)]^2`: the table is not PSD.
    ChainViolation,
    /// The chain holds, `omega >= e t`, yet the final gap is negative.
    Contradiction,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainStep {
    pub j: u32,
    /// `pE[f^(2^(j+1))]`.
    pub lhs: f64,
    /// `pE[f^(2^j)]^2`.
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerChainReport {
    pub t: usize,
    pub witness: Vec<usize>,
    pub omega: f64,
    pub ell: u32,
    /// `pE[f^(2^j)]` for `j = 0..=ell`, rendered in the table's arithmetic.
    pub values: Vec<String>,
    pub steps: Vec<ChainStep>,
    /// `pE[f^(2^ell)] - pE[f^(2^(ell-1))] omega^(2^(ell-1))`.
    pub gap: f64,
    /// `omega >= e t`.
    pub hypothesis: bool,
    pub coefficient_audit: Vec<CoefficientAudit>,
    pub verdict: ChainVerdict,
}

/// Smallest `ell` with `2^ell >= 2t`.
pub fn chain_length(t: usize) -> u32 {
    let mut ell = 0;
    while (1usize << ell) < 2 * t {
        ell += 1;
    }
    ell
}

/// Evaluates `pE[f^(2^j)]` for `f = sum_i x_i` by repeated squaring, dropping
/// monomials that are not independent in `g` after each step.
pub fn power_chain_refute<T: Scalar>(
    pe: &PseudoExpectation<T>,
    g: &Graph,
    tol: f64,
    budget: &Budget,
) -> Result<PowerChainReport> {
    pe.check_graph(g)?;
    let n = g.n();
    let (t, witness) = g.max_independent_set(budget.exact_limit)?;
    if t == 0 {
        return Err(Error::InvalidParameter("graph has no vertices".into()));
    }
    let needed = (4 * t).min(n);
    if pe.d() < needed {
        return Err(Error::DegreeExceeded {
            needed,
            available: pe.d(),
        });
    }
    let ell = chain_length(t);
    let f = Polynomial::<T>::from_terms(n, (1..=n).map(|i| (Monomial::var(i), T::one())))?;
    let mut power = f;
    let mut values = vec![pe.eval(&power)?];
    for _ in 0..ell {
        power = power.multiply(&power)?.project_indep(g)?;
        values.push(pe.eval(&power)?);
    }
    let omega = values[0].clone();
    let steps: Vec<ChainStep> = (0..ell as usize)
        .map(|j| {
            let lhs = values[j + 1].clone();
            let rhs = values[j].clone() * values[j].clone();
            let holds = if T::is_exact() { lhs >= rhs } else { lhs.to_f64() >= rhs.to_f64() - tol };
            ChainStep {
                j: j as u32,
                lhs: lhs.to_f64(),
                rhs: rhs.to_f64(),
                holds,
            }
        })
        .collect();
    let half = 1u32 << (ell - 1);
    let gap = values[ell as usize].clone() - values[ell as usize - 1].clone() * Scalar::pow(&omega, half);
    let omega_f = omega.to_f64();
    let hypothesis = omega_f >= E * t as f64;
    let coefficient_audit = (1..=t as u32)
        .map(|s| coefficient_audit(s, ell, omega_f))
        .collect::<Result<Vec<_>>>()?;
    let verdict = if steps.iter().any(|s| !s.holds) {
        ChainVerdict::ChainViolation
    } else if hypothesis && gap < T::zero() {
        ChainVerdict::Contradiction
    } else {
        ChainVerdict::Consistent
    };
    Ok(PowerChainReport {
        t,
        witness,
        omega: omega_f,
        ell,
        values: values.iter().map(Scalar::render).collect(),
        steps,
        gap: gap.to_f64(),
        hypothesis,
        coefficient_audit,
        verdict,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Refutation {
    Refuted,
    NotRefuted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RefutationReport {
    pub n: usize,
    pub k: usize,
    pub degree: usize,
    pub t: usize,
    pub witness: Vec<usize>,
    /// `n / (e t)`.
    pub threshold: f64,
    pub required_degree: usize,
    pub ell: u32,
    pub verdict: Refutation,
}

/// Parameter check: no degree-`4t` colouring table with `k <= n/(e t)`
/// colours exists, where `t` is the exact independence number.
pub fn refute_coloring_existence(g: &Graph, k: usize, degree: usize, budget: &Budget) -> Result<RefutationReport> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let (t, witness) = g.max_independent_set(budget.exact_limit)?;
    if t == 0 {
        return Err(Error::InvalidParameter("graph has no vertices".into()));
    }
    let required_degree = 4 * t;
    if degree < required_degree {
        return Err(Error::DegreeExceeded {
            needed: required_degree,
            available: degree,
        });
    }
    let threshold = g.n() as f64 / (E * t as f64);
    let verdict = if (k as f64) <= threshold {
        Refutation::Refuted
    } else {
        Refutation::NotRefuted
    };
    Ok(RefutationReport {
        n: g.n(),
        k,
        degree,
        t,
        witness,
        threshold,
        required_degree,
        ell: chain_length(t),
        verdict,
    })
}
