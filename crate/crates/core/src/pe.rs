//! Pseudo-expectations for independent set.
//!
//! A [`PseudoExpectation`] is a table from vertex sets `S` with `|S| <= d` to
//! values `pE[x_S]`; unset entries read as zero. Two constructors exist:
//! expectations of genuine distributions over independent sets, and the
//! pseudo-calibrated operator built from the Fourier characters of the
//! complement graph.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::graph::{bit, Graph};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct PseudoExpectation<T> {
    n: usize,
    d: usize,
    values: HashMap<u128, T>,
    graph_hash: Option<String>,
}

impl<T: Scalar> std::fmt::Debug for PseudoExpectation<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PseudoExpectation")
            .field("n", &self.n)
            .field("d", &self.d)
            .field("values", &self.entries())
            .finish()
    }
}

impl<T: Scalar> PseudoExpectation<T> {
    /// Empty table. A degree `d >= n` covers every subset.
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n == 0 || n > crate::graph::MAX_VERTICES {
            return Err(Error::InvalidParameter(format!("unsupported vertex count {n}")));
        }
        Ok(PseudoExpectation {
            n,
            d: d.min(n),
            values: HashMap::new(),
            graph_hash: None,
        })
    }

    pub fn with_graph(mut self, g: &Graph) -> Self {
        self.graph_hash = Some(g.graph_hash());
        self
    }

    pub fn set_graph_hash(&mut self, hash: Option<String>) {
        self.graph_hash = hash;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn graph_hash(&self) -> Option<&str> {
        self.graph_hash.as_deref()
    }

    /// Fails when the table was built for a different graph.
    pub fn check_graph(&self, g: &Graph) -> Result<()> {
        if g.n() != self.n {
            return Err(Error::UniverseMismatch(format!("graph n = {} vs table n = {}", g.n(), self.n)));
        }
        match &self.graph_hash {
            Some(h) if *h != g.graph_hash() => {
                Err(Error::UniverseMismatch("table was built for a different graph".into()))
            }
            _ => Ok(()),
        }
    }

    fn check_set(&self, s: &Monomial) -> Result<()> {
        if let Some(&v) = s.vars().iter().find(|&&v| v == 0 || v > self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        if s.degree() > self.d {
            return Err(Error::DegreeExceeded {
                needed: s.degree(),
                available: self.d,
            });
        }
        Ok(())
    }

    pub fn get(&self, s: &Monomial) -> Result<T> {
        self.check_set(s)?;
        Ok(self.get_mask(s.mask()))
    }

    /// Unchecked lookup by 0-based vertex mask.
    pub(crate) fn get_mask(&self, mask: u128) -> T {
        self.values.get(&mask).cloned().unwrap_or_else(T::zero)
    }

    pub fn set(&mut self, s: &Monomial, value: T) -> Result<()> {
        self.check_set(s)?;
        self.set_mask(s.mask(), value);
        Ok(())
    }

    pub(crate) fn set_mask(&mut self, mask: u128, value: T) {
        if value.is_zero() {
            self.values.remove(&mask);
        } else {
            self.values.insert(mask, value);
        }
    }

    /// Nonzero entries in graded-lexicographic order.
    pub fn entries(&self) -> Vec<(Monomial, T)> {
        let mut out: Vec<(Monomial, T)> = self
            .values
            .iter()
            .map(|(&m, v)| (Monomial::from_mask(m), v.clone()))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// `pE[f]` by linearity; needs `deg f <= d`.
    pub fn eval(&self, f: &Polynomial<T>) -> Result<T> {
        if f.n() != self.n {
            return Err(Error::UniverseMismatch(format!("polynomial n = {} vs table n = {}", f.n(), self.n)));
        }
        let mut acc = T::zero();
        for (m, c) in f.terms() {
            acc = acc + c.clone() * self.get(m)?;
        }
        Ok(acc)
    }

    /// Singleton values `pE[x_1], ..., pE[x_n]`.
    pub fn singletons(&self) -> Vec<T> {
        (0..self.n).map(|v| self.get_mask(bit(v))).collect()
    }

    pub fn check_normalized(&self, tol: f64) -> Result<()> {
        let one = self.get_mask(0);
        if (one.clone() - T::one()).near_zero(tol) {
            Ok(())
        } else {
            Err(Error::Unnormalized(one.render()))
        }
    }

    /// Every stored set must be independent in `g`.
    pub fn check_edge_constraints(&self, g: &Graph, tol: f64) -> Result<()> {
        self.check_graph(g)?;
        let mut bad: Vec<u128> = self
            .values
            .iter()
            .filter(|(&m, v)| !g.is_independent_mask(m) && !v.near_zero(tol))
            .map(|(&m, _)| m)
            .collect();
        bad.sort_unstable_by_key(|&m| Monomial::from_mask(m));
        match bad.first() {
            Some(&m) => Err(Error::NotIndependent(Monomial::from_mask(m).vars().to_vec())),
            None => Ok(()),
        }
    }

    /// Every entry divided by `pE[1]`.
    pub fn normalized(&self) -> Result<Self> {
        let one = self.get_mask(0);
        if one <= T::zero() {
            return Err(Error::Degenerate(format!("value of the empty set is {}", one.render())));
        }
        let mut out = self.clone();
        for v in out.values.values_mut() {
            *v = v.clone() / one.clone();
        }
        Ok(out)
    }

    /// Same table in another arithmetic (floats become their shortest
    /// decimal, rationals are rounded to the nearest double).
    pub fn convert<U: Scalar>(&self) -> Result<PseudoExpectation<U>> {
        let mut values = HashMap::with_capacity(self.values.len());
        for (&m, v) in &self.values {
            let u = if T::MODE == U::MODE || U::is_exact() {
                U::parse(&v.render())?
            } else {
                U::from_f64(v.to_f64())
            };
            if !u.is_zero() {
                values.insert(m, u);
            }
        }
        Ok(PseudoExpectation {
            n: self.n,
            d: self.d,
            values,
            graph_hash: self.graph_hash.clone(),
        })
    }
}

/// Moments `pE[x_S] = Pr[S ⊆ T]` of a distribution over independent sets.
pub fn pe_from_distribution<T: Scalar>(
    g: &Graph,
    d: usize,
    weights: &[(Vec<usize>, T)],
) -> Result<PseudoExpectation<T>> {
    let mut total = T::zero();
    for (set, w) in weights {
        if !g.is_independent_set(set)? {
            return Err(Error::NotIndependent(Monomial::new(set.clone()).vars().to_vec()));
        }
        if *w < T::zero() {
            return Err(Error::InvalidParameter(format!("negative weight {}", w.render())));
        }
        total = total + w.clone();
    }
    if !(total.clone() - T::one()).near_zero(1e-12) {
        return Err(Error::WeightsNotNormalized(total.render()));
    }
    let mut pe = PseudoExpectation::new(g.n(), d)?.with_graph(g);
    let mut acc: HashMap<u128, T> = HashMap::new();
    for (set, w) in weights {
        let support = Monomial::new(set.clone()).mask();
        let mut sub = support;
        loop {
            if sub.count_ones() as usize <= pe.d {
                let e = acc.entry(sub).or_insert_with(T::zero);
                *e = e.clone() + w.clone();
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & support;
        }
    }
    for (m, v) in acc {
        pe.set_mask(m, v);
    }
    Ok(pe)
}

/// Uniform weights on every independent set of `g` (the empty set included).
pub fn uniform_independent_distribution<T: Scalar>(g: &Graph) -> Vec<(Vec<usize>, T)> {
    let sets = g.enumerate_independent_sets(g.n());
    let w = T::one() / T::from_i64(sets.len() as i64);
    sets.into_iter().map(|s| (s, w.clone())).collect()
}

/// `chi_T(g)`: the product over edges of `T` of `+1` (edge of `g`) or `-1`.
pub fn chi(g: &Graph, t: &[(usize, usize)]) -> Result<i8> {
    let mut sign = 1;
    for &(i, j) in t {
        g.check_vertex(i)?;
        g.check_vertex(j)?;
        if i == j {
            return Err(Error::InvalidParameter(format!("self-loop ({i},{i}) in edge set")));
        }
        if !g.has_edge(i, j) {
            sign = -sign;
        }
    }
    Ok(sign)
}

/// Singleton values and the covering bound `k0 = ceil(1 / min_i pE[x_i])`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingletonProfile<T> {
    pub values: Vec<T>,
    pub k0: u64,
}

pub fn pe_values_vector<T: Scalar>(pe: &PseudoExpectation<T>) -> Result<SingletonProfile<T>> {
    if pe.d() < 1 {
        return Err(Error::DegreeExceeded { needed: 1, available: 0 });
    }
    let values = pe.singletons();
    let (argmin, min) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal))
        .expect("at least one vertex");
    if *min <= T::zero() {
        return Err(Error::CoveringFailure(format!(
            "value of vertex {} is {}",
            argmin + 1,
            min.render()
        )));
    }
    let k0 = (T::one() / min.clone())
        .ceil_u64()
        .ok_or_else(|| Error::CoveringFailure("singleton value too small".into()))?;
    Ok(SingletonProfile { values, k0 })
}

/// Which edge sets `T` enter the calibrated sum for a target `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TruncationRule {
    /// `|V(T) ∪ S| <= tau + |S|`.
    #[default]
    Union,
    /// `|V(T)| <= tau`.
    Strict,
}

impl std::str::FromStr for TruncationRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "union" => Ok(TruncationRule::Union),
            "strict" => Ok(TruncationRule::Strict),
            other => Err(Error::Parse(format!("unknown truncation rule `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationParams {
    /// Planted set size.
    pub omega: f64,
    pub tau: usize,
    pub d: usize,
    pub epsilon: f64,
    pub c: f64,
    pub k: f64,
    #[serde(default)]
    pub rule: TruncationRule,
}

impl CalibrationParams {
    pub fn new(omega: f64, tau: usize, d: usize) -> Self {
        CalibrationParams {
            omega,
            tau,
            d,
            epsilon: 0.0,
            c: 16.0,
            k: 32.0,
            rule: TruncationRule::Union,
        }
    }

    /// `omega = n^(1/2 - epsilon)`, with degree `(epsilon/C)^2 ln n` and
    /// truncation `(epsilon/C) ln n`, floored and clamped to `d >= 1`.
    /// At desk-scale `n` both formulas round to their minimum.
    pub fn from_epsilon(n: usize, epsilon: f64) -> Self {
        let c = 16.0;
        let ln = (n as f64).ln();
        let mut p = CalibrationParams::new(
            (n as f64).powf(0.5 - epsilon),
            ((epsilon / c) * ln).floor().max(0.0) as usize,
            ((epsilon / c).powi(2) * ln).floor().max(1.0) as usize,
        );
        p.epsilon = epsilon;
        p
    }

    pub fn with_rule(mut self, rule: TruncationRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.omega, self.epsilon, self.c, self.k].iter().all(|v| v.is_finite());
        if !finite || self.omega <= 0.0 {
            return Err(Error::InvalidParameter(format!("omega must be positive and finite, got {}", self.omega)));
        }
        if self.d < 1 {
            return Err(Error::InvalidParameter("degree must be at least 1".into()));
        }
        Ok(())
    }
}

/// Raw (unnormalised) and normalised calibrated tables.
#[derive(Clone, Debug)]
pub struct Calibrated<T: Scalar> {
    pub raw: PseudoExpectation<T>,
    pub normalized: PseudoExpectation<T>,
}

/// Sum of `chi_T` over edge sets on exactly the vertex set `w`, with the
/// characters taken in the complement of `g`. Computed by inclusion and
/// exclusion: over all edge sets inside `u` the sum is `2^C(|u|,2)` when `u`
/// is independent in `g` and 0 otherwise.
pub(crate) fn support_sum(g: &Graph, w: u128) -> i128 {
    let size = w.count_ones();
    let mut total = 0i128;
    let mut u = w;
    loop {
        if g.is_independent_mask(u) {
            let k = u.count_ones();
            let term = 1i128 << (k * k.saturating_sub(1) / 2);
            if (size - k) % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        if u == 0 {
            break;
        }
        u = (u - 1) & w;
    }
    total
}

/// Visits every subset of `pool` with at most `max` elements.
fn for_each_subset(pool: &[usize], max: usize, f: &mut dyn FnMut(u128)) {
    fn rec(pool: &[usize], from: usize, left: usize, acc: u128, f: &mut dyn FnMut(u128)) {
        f(acc);
        if left == 0 {
            return;
        }
        for idx in from..pool.len() {
            rec(pool, idx + 1, left - 1, acc | bit(pool[idx]), f);
        }
    }
    rec(pool, 0, max, 0, f);
}

fn binomial_prefix(n: usize, max: usize) -> u64 {
    let mut total = 0u64;
    let mut c = 1u64;
    for j in 0..=max.min(n) {
        total = total.saturating_add(c);
        c = c.saturating_mul((n - j) as u64) / (j as u64 + 1);
    }
    total
}

/// Raw calibrated values for the given targets (0-based masks). Targets that
/// are not independent get 0.
pub(crate) fn calibrated_values<T: Scalar>(
    g: &Graph,
    params: &CalibrationParams,
    targets: &[u128],
) -> Vec<T> {
    let n = g.n();
    let q = T::from_f64(params.omega) / T::from_i64(n as i64);
    let powers: Vec<T> = (0..=n as u32).map(|e| q.pow(e)).collect();
    let vertices: Vec<usize> = (0..n).collect();
    targets
        .par_iter()
        .map_init(HashMap::<u128, i128>::new, |cache, &s| {
            if !g.is_independent_mask(s) {
                return T::zero();
            }
            let mut sums: HashMap<u32, i128> = HashMap::new();
            let mut visit = |w: u128| {
                let f = *cache.entry(w).or_insert_with(|| support_sum(g, w));
                if f != 0 {
                    *sums.entry((w | s).count_ones()).or_insert(0) += f;
                }
            };
            match params.rule {
                TruncationRule::Strict => for_each_subset(&vertices, params.tau, &mut visit),
                TruncationRule::Union => {
                    let outside: Vec<usize> = vertices.iter().copied().filter(|&v| s & bit(v) == 0).collect();
                    for_each_subset(&outside, params.tau, &mut |r| {
                        let mut sub = s;
                        loop {
                            visit(r | sub);
                            if sub == 0 {
                                break;
                            }
                            sub = (sub - 1) & s;
                        }
                    });
                }
            }
            let mut exps: Vec<_> = sums.into_iter().collect();
            exps.sort_unstable();
            exps.into_iter().fold(T::zero(), |acc, (e, f)| {
                acc + T::from_i128(f) * powers[e as usize].clone()
            })
        })
        .collect()
}

/// The pseudo-calibrated table over all independent `S` with `|S| <= d`,
/// and its normalisation by the value at the empty set.
pub fn pe_calibrated<T: Scalar>(g: &Graph, params: &CalibrationParams, budget: &Budget) -> Result<Calibrated<T>> {
    let raw = pe_calibrated_raw(g, params, budget)?;
    let normalized = raw.normalized()?;
    Ok(Calibrated { raw, normalized })
}

/// The raw table alone; unlike [`pe_calibrated`] it does not fail when the
/// value at the empty set is not positive.
pub fn pe_calibrated_raw<T: Scalar>(g: &Graph, params: &CalibrationParams, budget: &Budget) -> Result<PseudoExpectation<T>> {
    params.validate()?;
    let n = g.n();
    if n > budget.calib_max_n {
        return Err(Error::limit("calibration vertex count", n as u128, budget.calib_max_n as u128));
    }
    if params.tau > budget.calib_max_tau {
        return Err(Error::limit("calibration truncation", params.tau as u128, budget.calib_max_tau as u128));
    }
    if params.d > budget.calib_max_d {
        return Err(Error::limit("calibration degree", params.d as u128, budget.calib_max_d as u128));
    }
    let d = params.d.min(n);
    let targets: Vec<u128> = g
        .enumerate_independent_sets(d)
        .iter()
        .map(|s| Monomial::new(s.clone()).mask())
        .collect();
    let per_target = match params.rule {
        TruncationRule::Strict => binomial_prefix(n, params.tau),
        TruncationRule::Union => binomial_prefix(n, params.tau) << d,
    };
    let work = per_target.saturating_mul(targets.len() as u64);
    if work > budget.calib_max_work {
        return Err(Error::limit("calibration work", work as u128, budget.calib_max_work as u128));
    }
    let values = calibrated_values::<T>(g, params, &targets);
    let mut raw = PseudoExpectation::new(n, d)?.with_graph(g);
    for (&m, v) in targets.iter().zip(values) {
        raw.set_mask(m, v);
    }
    Ok(raw)
}

/// Raw calibrated singleton values `pE_G[x_1], ..., pE_G[x_n]` alone. Only
/// the work cap applies, so this reaches far larger `n` than the full table.
pub fn calibrated_singletons<T: Scalar>(g: &Graph, params: &CalibrationParams, budget: &Budget) -> Result<Vec<T>> {
    params.validate()?;
    let n = g.n();
    let per_target = match params.rule {
        TruncationRule::Strict => binomial_prefix(n, params.tau),
        TruncationRule::Union => binomial_prefix(n, params.tau) << 1,
    };
    let work = per_target.saturating_mul(n as u64);
    if work > budget.calib_max_work {
        return Err(Error::limit("calibration work", work as u128, budget.calib_max_work as u128));
    }
    let targets: Vec<u128> = (0..n).map(bit).collect();
    Ok(calibrated_values(g, params, &targets))
}
