//! From an independent-set pseudo-expectation to a colouring one.
//!
//! The colouring operator is the `k`-fold tensor power of the base table:
//! a colour monomial `prod_c x_{S_c, c}` evaluates to `prod_c pE[x_{S_c}]`.
//! Nothing of size `k^n` is ever stored; every entry is a product of at most
//! `k` lookups.
//!
//! Matrices indexed by `{1} ∪ {x_{j,c}}` are invariant under permuting
//! colours, so they split into one symmetric block of size `n + 1` and `k - 1`
//! copies of an `n × n` contrast block. Large instances use that split.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::graph::{bit, Graph};
use crate::pe::{PseudoExpectation, SingletonProfile};
use crate::poly::{indicator_h, ColorMonomial, ColorPolynomial, Monomial};
use crate::scalar::Scalar;
use crate::spectral::{
    certify_psd, covering_certificate_at, eigenvalues, exact_definiteness, tensor_index, tensor_moment_matrix,
    tensor_restricted_min_eig, CoveringCertificate, Definiteness, SymMatrix, PSD_TOL,
};

/// `prod_c pE[x_{S_c}]`, empty colours contributing 1. Unchecked.
pub fn tensor_eval<T: Scalar>(pe: &PseudoExpectation<T>, m: &ColorMonomial) -> T {
    let mut acc = T::one();
    for (_, s) in m.parts() {
        let v = pe.get_mask(s.mask());
        if v.is_zero() {
            return T::zero();
        }
        acc = acc * v;
    }
    acc
}

/// Anything that assigns values to colour monomials.
pub trait ColoringTable<T: Scalar> {
    fn n(&self) -> usize;
    fn k(&self) -> usize;
    /// Largest colouring degree the table is defined on.
    fn cdeg_limit(&self) -> usize;
    fn value(&self, m: &ColorMonomial) -> Result<T>;

    fn eval(&self, f: &ColorPolynomial<T>) -> Result<T> {
        if f.n() != self.n() || f.k() != self.k() {
            return Err(Error::UniverseMismatch(format!(
                "polynomial (n, k) = ({}, {}) vs table ({}, {})",
                f.n(),
                f.k(),
                self.n(),
                self.k()
            )));
        }
        let mut acc = T::zero();
        for (m, c) in f.terms() {
            acc = acc + c.clone() * self.value(m)?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug)]
pub struct ColoringPE<T: Scalar> {
    base: PseudoExpectation<T>,
    k: usize,
    d: usize,
    d_prime: usize,
}

impl<T: Scalar> ColoringPE<T> {
    /// Colouring operator at the base table's own degree. A table defined on
    /// every subset (`d = n`) is valid at any degree, so an odd `n` is rounded
    /// up.
    pub fn new(base: PseudoExpectation<T>, k: usize) -> Result<Self> {
        let d = base.d() + (base.d() == base.n() && base.d() % 2 == 1) as usize;
        Self::with_degree(base, k, d)
    }

    /// Needs an even `d >= 2` not above the base degree (unless the base
    /// table is complete); the colouring degree is `1 + d/2`.
    pub fn with_degree(base: PseudoExpectation<T>, k: usize, d: usize) -> Result<Self> {
        if d < 2 || d % 2 != 0 {
            return Err(Error::InvalidParameter(format!("base degree must be even and at least 2, got {d}")));
        }
        if d > base.d() && base.d() < base.n() {
            return Err(Error::DegreeExceeded {
                needed: d,
                available: base.d(),
            });
        }
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        Ok(ColoringPE {
            base,
            k,
            d,
            d_prime: 1 + d / 2,
        })
    }

    pub fn base(&self) -> &PseudoExpectation<T> {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn d_prime(&self) -> usize {
        self.d_prime
    }

    fn check_monomial(&self, m: &ColorMonomial) -> Result<()> {
        for (c, s) in m.parts() {
            if *c == 0 || *c > self.k {
                return Err(Error::ColorOutOfRange { color: *c, k: self.k });
            }
            if let Some(&v) = s.vars().iter().find(|&&v| v == 0 || v > self.base.n()) {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.base.n() });
            }
        }
        if m.cdeg() > self.d {
            return Err(Error::ColoringDegreeExceeded {
                cdeg: m.cdeg(),
                limit: self.d,
            });
        }
        Ok(())
    }

    fn p(&self, i: usize) -> T {
        self.base.get_mask(bit(i - 1))
    }

    /// `sum_c pE⊗[u · x_{i,c}]`: colours used by `u` explicitly, every unused
    /// colour contributing `pE⊗[u] · pE[x_i]`.
    fn colour_sum_with(&self, u: &ColorMonomial, i: usize) -> T {
        let mut acc = T::zero();
        for (c, _) in u.parts() {
            acc = acc + tensor_eval(&self.base, &u.union(&ColorMonomial::var(i, *c)));
        }
        let unused = self.k - u.parts().len();
        if unused > 0 {
            acc = acc + T::from_i64(unused as i64) * tensor_eval(&self.base, u) * self.p(i);
        }
        acc
    }
}

impl<T: Scalar> ColoringTable<T> for ColoringPE<T> {
    fn n(&self) -> usize {
        self.base.n()
    }

    fn k(&self) -> usize {
        self.k
    }

    fn cdeg_limit(&self) -> usize {
        self.d
    }

    fn value(&self, m: &ColorMonomial) -> Result<T> {
        self.check_monomial(m)?;
        Ok(tensor_eval(&self.base, m))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChosenK {
    pub k: usize,
    /// Value of the formula before rounding and clamping.
    pub formula: f64,
    pub lambda_clamped: bool,
    pub raised_to_k0: bool,
}

/// `k = ceil(c_k · k0 · d · ln(n^d / min(lambda, 1)))`, raised to at least
/// `max(k0, 1)`.
pub fn choose_k(k0: u64, d: usize, lambda: f64, n: usize, c_k: f64) -> Result<ChosenK> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!("lambda must be positive, got {lambda}")));
    }
    if k0 == 0 || d == 0 || n == 0 {
        return Err(Error::InvalidParameter("k0, d and n must be at least 1".into()));
    }
    if !(c_k > 0.0) || !c_k.is_finite() {
        return Err(Error::InvalidParameter(format!("c_k must be positive, got {c_k}")));
    }
    let lambda_clamped = lambda > 1.0;
    let lam = lambda.min(1.0);
    let formula = c_k * k0 as f64 * d as f64 * (d as f64 * (n as f64).ln() - lam.ln());
    let raw = formula.ceil().max(0.0);
    if raw > 1e12 {
        return Err(Error::limit("chosen colour count", raw as u128, 1_000_000_000_000u128));
    }
    let floor = k0.max(1) as usize;
    let k = (raw as usize).max(floor);
    Ok(ChosenK {
        k,
        formula,
        lambda_clamped,
        raised_to_k0: (raw as usize) < floor,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub mode: CheckMode,
    pub checked: u64,
    pub nonzero: u64,
    pub max_abs_residual: f64,
    pub pass: bool,
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, k: usize, part_max: usize) -> ColorMonomial {
    let parts = rng.gen_range(0..=3usize.min(k));
    let colours = rand::seq::index::sample(rng, k, parts);
    ColorMonomial::new(colours.into_iter().map(|c0| {
        let c = c0 + 1;
        let size = rng.gen_range(1..=part_max.max(1).min(n));
        let vs: Vec<usize> = (0..size).map(|_| rng.gen_range(1..=n)).collect();
        (c, Monomial::new(vs))
    }))
}

/// Every colour monomial whose parts have size at most `part_max`, by
/// choosing a subset for each colour.
fn all_colour_monomials(n: usize, k: usize, part_max: usize) -> Vec<ColorMonomial> {
    let subsets: Vec<Monomial> = Graph::empty(n)
        .expect("valid order")
        .enumerate_independent_sets(part_max)
        .into_iter()
        .map(Monomial::new)
        .collect();
    let mut out = vec![ColorMonomial::one()];
    for c in 1..=k {
        let mut next = Vec::with_capacity(out.len() * subsets.len());
        for m in &out {
            for s in &subsets {
                next.push(m.union(&ColorMonomial::new([(c, s.clone())])));
            }
        }
        out = next;
    }
    out
}

fn count_colour_monomials(n: usize, k: usize, part_max: usize) -> u128 {
    let per: u128 = (0..=part_max.min(n)).map(|j| binom(n, j)).sum();
    per.checked_pow(k as u32).unwrap_or(u128::MAX)
}

fn binom(n: usize, j: usize) -> u128 {
    (0..j).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Checks `pE⊗[m · x_{i,c} · x_{i,c}] = pE⊗[m · x_{i,c}]` through the
/// reduction path. Exhaustive over monomials of colouring degree at most 1
/// when the budget allows, otherwise `samples` seeded draws.
pub fn check_booleanity<T: Scalar>(cpe: &ColoringPE<T>, samples: u64, seed: u64, budget: &Budget) -> Result<ResidualReport> {
    let (n, k) = (cpe.n(), cpe.k);
    let count = count_colour_monomials(n, k, 1).saturating_mul((n * k) as u128);
    let compare = |m: &ColorMonomial, i: usize, c: usize| -> Result<T> {
        let x = ColorMonomial::var(i, c);
        let twice = m.union(&x).union(&x);
        Ok(cpe.value(&twice)? - cpe.value(&m.union(&x))?)
    };
    let mut residuals = Vec::new();
    let mode = if count <= budget.max_enumeration as u128 {
        for m in all_colour_monomials(n, k, 1) {
            for i in 1..=n {
                for c in 1..=k {
                    residuals.push(compare(&m, i, c)?);
                }
            }
        }
        CheckMode::Exhaustive
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let m = random_monomial(&mut rng, n, k, cpe.d - 1);
            let (i, c) = (rng.gen_range(1..=n), rng.gen_range(1..=k));
            residuals.push(compare(&m, i, c)?);
        }
        CheckMode::Sampled
    };
    Ok(residual_report(mode, residuals))
}

fn residual_report<T: Scalar>(mode: CheckMode, residuals: Vec<T>) -> ResidualReport {
    let nonzero = residuals.iter().filter(|r| !r.is_zero()).count() as u64;
    let max_abs_residual = residuals.iter().map(|r| r.to_f64().abs()).fold(0.0, f64::max);
    ResidualReport {
        mode,
        checked: residuals.len() as u64,
        nonzero,
        max_abs_residual,
        pass: nonzero == 0,
    }
}

/// Checks `pE⊗[x_{i,c} x_{j,c} · m] = 0` exactly for edges `{i, j}`.
pub fn check_edges<T: Scalar>(cpe: &ColoringPE<T>, g: &Graph, samples: u64, seed: u64, budget: &Budget) -> Result<ResidualReport> {
    cpe.base.check_graph(g)?;
    let (n, k, d) = (cpe.n(), cpe.k, cpe.d);
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let count = count_colour_monomials(n, k, d).saturating_mul((edges.len() * k).max(1) as u128);
    let product = |m: &ColorMonomial, (i, j): (usize, usize), c: usize| -> Option<ColorMonomial> {
        let e = ColorMonomial::new([(c, Monomial::new(vec![i, j]))]);
        let full = m.union(&e);
        (full.cdeg() <= d).then_some(full)
    };
    let mut residuals = Vec::new();
    let mode = if count <= budget.max_enumeration as u128 {
        let all = all_colour_monomials(n, k, d);
        for &e in &edges {
            for c in 1..=k {
                for m in &all {
                    if let Some(full) = product(m, e, c) {
                        residuals.push(cpe.value(&full)?);
                    }
                }
            }
        }
        CheckMode::Exhaustive
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if !edges.is_empty() {
            for _ in 0..samples {
                let e = edges[rng.gen_range(0..edges.len())];
                let c = rng.gen_range(1..=k);
                let m = random_monomial(&mut rng, n, k, d.saturating_sub(2).max(1));
                if let Some(full) = product(&m, e, c) {
                    residuals.push(cpe.value(&full)?);
                }
            }
        }
        CheckMode::Sampled
    };
    Ok(residual_report(mode, residuals))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixMethod {
    Explicit,
    ColourSymmetric,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsdOutcome {
    /// Dimension of the full (unreduced) matrix.
    pub dim: usize,
    pub min_eig: f64,
    pub is_psd: bool,
    pub exact: Option<Definiteness>,
    pub method: MatrixMethod,
}

/// Which colour monomials index a matrix: independent ones with every part
/// of size at most `max_cdeg` and total degree at most `max_total`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSpec {
    pub max_cdeg: usize,
    pub max_total: Option<usize>,
}

impl IndexSpec {
    fn total(&self, k: usize) -> usize {
        self.max_total.unwrap_or(self.max_cdeg * k)
    }
}

/// Invariant structure of a colour-symmetric matrix on `{1} ∪ {x_{j,c}}`:
/// corner `a`, border `b_j`, same-colour block `D`, cross-colour block `E`.
struct SymmetricBlocks<T: Scalar> {
    k: usize,
    a: T,
    b: Vec<T>,
    same: SymMatrix<T>,
    cross: SymMatrix<T>,
}

impl<T: Scalar> SymmetricBlocks<T> {
    fn build(n: usize, k: usize, entry: impl Fn(&ColorMonomial) -> T) -> Self {
        let a = entry(&ColorMonomial::one());
        let b = (1..=n).map(|j| entry(&ColorMonomial::var(j, 1))).collect();
        let mut same = SymMatrix::zeros(n);
        let mut cross = SymMatrix::zeros(n);
        for j in 1..=n {
            for l in j..=n {
                let x = ColorMonomial::var(j, 1);
                same.set(j - 1, l - 1, entry(&x.union(&ColorMonomial::var(l, 1))));
                if k >= 2 {
                    cross.set(j - 1, l - 1, entry(&x.union(&ColorMonomial::var(l, 2))));
                }
            }
        }
        SymmetricBlocks { k, a, b, same, cross }
    }

    fn symmetric_block_f64(&self) -> nalgebra::DMatrix<f64> {
        let n = self.b.len();
        let root = (self.k as f64).sqrt();
        let km1 = (self.k - 1) as f64;
        nalgebra::DMatrix::from_fn(n + 1, n + 1, |r, c| match (r, c) {
            (0, 0) => self.a.to_f64(),
            (0, j) | (j, 0) => root * self.b[j - 1].to_f64(),
            (i, j) => self.same.get(i - 1, j - 1).to_f64() + km1 * self.cross.get(i - 1, j - 1).to_f64(),
        })
    }

    /// Congruent to the symmetric block, free of square roots.
    fn symmetric_block_exact(&self) -> SymMatrix<T> {
        let n = self.b.len();
        let kk = T::from_i64(self.k as i64);
        let km1 = T::from_i64(self.k as i64 - 1);
        let mut m = SymMatrix::zeros(n + 1);
        m.set(0, 0, self.a.clone());
        for j in 0..n {
            m.set(0, j + 1, kk.clone() * self.b[j].clone());
            for l in j..n {
                let v = self.same.get(j, l).clone() + km1.clone() * self.cross.get(j, l).clone();
                m.set(j + 1, l + 1, kk.clone() * v);
            }
        }
        m
    }

    fn contrast_block(&self) -> SymMatrix<T> {
        let n = self.b.len();
        let mut m = SymMatrix::zeros(n);
        for j in 0..n {
            for l in j..n {
                m.set(j, l, self.same.get(j, l).clone() - self.cross.get(j, l).clone());
            }
        }
        m
    }

    fn assess(&self) -> PsdOutcome {
        let n = self.b.len();
        let mut min_eig = eigenvalues(&self.symmetric_block_f64())[0];
        let contrast = (self.k >= 2).then(|| self.contrast_block());
        if let Some(c) = &contrast {
            min_eig = min_eig.min(eigenvalues(&c.to_f64())[0]);
        }
        let exact = T::is_exact().then(|| {
            let mut verdicts = vec![exact_definiteness(&self.symmetric_block_exact())];
            if let Some(c) = &contrast {
                verdicts.push(exact_definiteness(c));
            }
            combine(&verdicts)
        });
        let is_psd = match exact {
            Some(d) => d != Definiteness::Indefinite,
            None => min_eig >= -PSD_TOL,
        };
        PsdOutcome {
            dim: 1 + n * self.k,
            min_eig,
            is_psd,
            exact,
            method: MatrixMethod::ColourSymmetric,
        }
    }
}

fn combine(verdicts: &[Definiteness]) -> Definiteness {
    if verdicts.contains(&Definiteness::Indefinite) {
        Definiteness::Indefinite
    } else if verdicts.contains(&Definiteness::PositiveSemidefinite) {
        Definiteness::PositiveSemidefinite
    } else {
        Definiteness::PositiveDefinite
    }
}

/// PSD test of `(m, m') ↦ entry(m ∪ m')` over the index, choosing the
/// colour-symmetric split when it applies and the matrix is large.
fn assess_form<T: Scalar>(
    cpe: &ColoringPE<T>,
    g: &Graph,
    spec: IndexSpec,
    budget: &Budget,
    force_explicit: bool,
    entry: &(dyn Fn(&ColorMonomial) -> T + Sync),
) -> Result<PsdOutcome> {
    let (n, k) = (cpe.n(), cpe.k);
    let total = spec.total(k);
    let linear = total <= 1 && spec.max_cdeg >= 1;
    let dim_linear = 1 + n * k;
    if linear && !force_explicit && dim_linear > budget.symmetric_above {
        return Ok(SymmetricBlocks::build(n, k, entry).assess());
    }
    let index = tensor_index(g, k, spec.max_cdeg, total, budget.max_matrix_dim)?;
    if index.len() > budget.explicit_dim_limit {
        return Err(Error::limit("explicit matrix dimension", index.len() as u128, budget.explicit_dim_limit as u128));
    }
    let rows: Vec<Vec<T>> = index
        .par_iter()
        .map(|a| index.iter().map(|b| entry(&a.union(b))).collect())
        .collect();
    let matrix = SymMatrix::from_rows(rows)?;
    let r = certify_psd(&matrix, PSD_TOL)?;
    Ok(PsdOutcome {
        dim: index.len(),
        min_eig: r.min_eig,
        is_psd: r.is_psd,
        exact: r.exact,
        method: MatrixMethod::Explicit,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositivityReport {
    pub outcome: PsdOutcome,
    /// Rows of non-independent monomials vanish (checked on a sample).
    pub nonindependent_rows_zero: bool,
}

/// Coloring moment matrix `N(m, m') = pE⊗[m m']` over the index.
pub fn check_positivity<T: Scalar>(
    cpe: &ColoringPE<T>,
    g: &Graph,
    spec: IndexSpec,
    budget: &Budget,
) -> Result<PositivityReport> {
    positivity_with(cpe, g, spec, budget, false)
}

pub(crate) fn positivity_with<T: Scalar>(
    cpe: &ColoringPE<T>,
    g: &Graph,
    spec: IndexSpec,
    budget: &Budget,
    force_explicit: bool,
) -> Result<PositivityReport> {
    cpe.base.check_graph(g)?;
    if 2 * spec.max_cdeg.min(spec.total(cpe.k)) > cpe.d {
        return Err(Error::ColoringDegreeExceeded {
            cdeg: 2 * spec.max_cdeg,
            limit: cpe.d,
        });
    }
    let outcome = assess_form(cpe, g, spec, budget, force_explicit, &|m| tensor_eval(&cpe.base, m))?;
    // A non-independent row: some colour class spans an edge.
    let mut zero = true;
    if spec.max_cdeg >= 2 && spec.total(cpe.k) >= 2 {
        let partners = tensor_index(g, cpe.k.min(2), 1, 1, budget.max_matrix_dim)?;
        for (i, j) in g.edges().take(64) {
            let bad = ColorMonomial::new([(1, Monomial::new(vec![i, j]))]);
            zero &= partners.iter().all(|p| tensor_eval(&cpe.base, &bad.union(p)).is_zero());
        }
    }
    Ok(PositivityReport {
        outcome,
        nonindependent_rows_zero: zero,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexVerdict {
    pub vertex: usize,
    pub corner: f64,
    pub outcome: PsdOutcome,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SumConstraintReport {
    pub half_degree: usize,
    pub vertices: Vec<VertexVerdict>,
    pub pass: bool,
}

/// Localised matrices `N_i(m, m') = pE⊗[m m' (sum_c x_{i,c} - 1)]` over
/// independent monomials of total degree at most `half_degree`. The proof
/// covers `half_degree <= d/4`; `widen` lifts that restriction.
pub fn check_sum_constraints<T: Scalar>(
    cpe: &ColoringPE<T>,
    g: &Graph,
    half_degree: usize,
    widen: bool,
    budget: &Budget,
) -> Result<SumConstraintReport> {
    sum_constraints_with(cpe, g, half_degree, widen, budget, false)
}

pub(crate) fn sum_constraints_with<T: Scalar>(
    cpe: &ColoringPE<T>,
    g: &Graph,
    half_degree: usize,
    widen: bool,
    budget: &Budget,
    force_explicit: bool,
) -> Result<SumConstraintReport> {
    cpe.base.check_graph(g)?;
    if !widen && half_degree > cpe.d / 4 {
        return Err(Error::InvalidParameter(format!(
            "sum-constraint half degree {half_degree} exceeds d/4 = {}",
            cpe.d / 4
        )));
    }
    if 2 * half_degree + 1 > cpe.d {
        return Err(Error::ColoringDegreeExceeded {
            cdeg: 2 * half_degree + 1,
            limit: cpe.d,
        });
    }
    let spec = IndexSpec {
        max_cdeg: half_degree,
        max_total: Some(half_degree),
    };
    let vertices = (1..=cpe.n())
        .map(|i| {
            let entry = |u: &ColorMonomial| cpe.colour_sum_with(u, i) - tensor_eval(&cpe.base, u);
            let outcome = assess_form(cpe, g, spec, budget, force_explicit, &entry)?;
            Ok(VertexVerdict {
                vertex: i,
                corner: entry(&ColorMonomial::one()).to_f64(),
                outcome,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pass = vertices.iter().all(|v| v.outcome.is_psd);
    Ok(SumConstraintReport {
        half_degree,
        vertices,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndicatorReport {
    pub vertex: usize,
    /// `pE⊗[f² (1 - h_i)(sum_c x_{i,c} - 2)]` per test polynomial.
    pub values: Vec<String>,
    pub min_value: f64,
    pub all_nonnegative: bool,
    /// Same quantity with two colours, which vanishes identically.
    pub base_identity_zero: Option<bool>,
    /// Localising matrix on `{1} ∪ {x_{j,c}}`.
    pub localizer: Option<PsdOutcome>,
    pub pass: bool,
}

fn colour_sum_minus<T: Scalar>(n: usize, k: usize, i: usize, colours: &[usize], shift: i64) -> Result<ColorPolynomial<T>> {
    let mut terms: Vec<(ColorMonomial, T)> = colours.iter().map(|&c| (ColorMonomial::var(i, c), T::one())).collect();
    terms.push((ColorMonomial::one(), T::from_i64(-shift)));
    ColorPolynomial::from_terms(n, k, terms)
}

/// `(1 - h_i)(sum_c x_{i,c} - 2)` over all `k` colours.
pub fn indicator_lemma_polynomial<T: Scalar>(n: usize, k: usize, i: usize, budget: &Budget) -> Result<ColorPolynomial<T>> {
    let h = indicator_h::<T>(n, i, k, budget.indicator_limit)?;
    let one_minus_h = ColorPolynomial::constant(n, k, T::one()).add(&h.scale(&-T::one()))?;
    let colours: Vec<usize> = (1..=k).collect();
    one_minus_h.multiply(&colour_sum_minus(n, k, i, &colours, 2)?)
}

/// Checks `pE⊗[f² (1 - h_i)(sum_c x_{i,c} - 2)] >= 0` for each test `f`.
pub fn check_indicator_lemma<T: Scalar>(
    cpe: &ColoringPE<T>,
    i: usize,
    test_fs: &[ColorPolynomial<T>],
    budget: &Budget,
) -> Result<IndicatorReport> {
    let (n, k) = (cpe.n(), cpe.k);
    if i == 0 || i > n {
        return Err(Error::VertexOutOfRange { vertex: i, n });
    }
    let limit = (cpe.d - 2) / 2;
    if let Some(f) = test_fs.iter().find(|f| f.cdeg() > limit) {
        return Err(Error::ColoringDegreeExceeded { cdeg: f.cdeg(), limit });
    }
    let gi = indicator_lemma_polynomial::<T>(n, k, i, budget)?;
    let mut values = Vec::with_capacity(test_fs.len());
    for f in test_fs {
        let f2 = f.multiply(f)?;
        values.push(cpe.eval(&f2.multiply(&gi)?)?);
    }
    let tol = if T::is_exact() { 0.0 } else { PSD_TOL };
    let all_nonnegative = values.iter().all(|v| v.to_f64() >= -tol && (!T::is_exact() || *v >= T::zero()));
    let min_value = values.iter().map(Scalar::to_f64).fold(f64::INFINITY, f64::min);

    let base_identity_zero = if k >= 2 {
        let h2 = indicator_h::<T>(n, i, 2, budget.indicator_limit)?;
        // Re-home the two-colour indicator into the k-colour universe.
        let h2 = ColorPolynomial::from_terms(n, k, h2.terms().map(|(m, c)| (m.clone(), c.clone())))?;
        let one_minus = ColorPolynomial::constant(n, k, T::one()).add(&h2.scale(&-T::one()))?;
        let g2 = one_minus.multiply(&colour_sum_minus(n, k, i, &[1, 2], 2)?)?;
        let mut zero = true;
        for f in test_fs {
            let v = cpe.eval(&f.multiply(f)?.multiply(&g2)?)?;
            zero &= v.near_zero(1e-12);
        }
        Some(zero)
    } else {
        None
    };

    let localizer = if limit >= 1 && 1 + n * k <= budget.explicit_dim_limit {
        let index: Vec<ColorMonomial> = std::iter::once(ColorMonomial::one())
            .chain((1..=k).flat_map(|c| (1..=n).map(move |j| ColorMonomial::var(j, c))))
            .collect();
        let rows: Vec<Vec<T>> = index
            .iter()
            .map(|a| {
                index
                    .iter()
                    .map(|b| {
                        let u = a.union(b);
                        gi.terms()
                            .fold(T::zero(), |acc, (m, c)| acc + c.clone() * tensor_eval(&cpe.base, &u.union(m)))
                    })
                    .collect()
            })
            .collect();
        let r = certify_psd(&SymMatrix::from_rows(rows)?, PSD_TOL)?;
        Some(PsdOutcome {
            dim: index.len(),
            min_eig: r.min_eig,
            is_psd: r.is_psd,
            exact: r.exact,
            method: MatrixMethod::Explicit,
        })
    } else {
        None
    };

    let pass = all_nonnegative && base_identity_zero.unwrap_or(true) && localizer.as_ref().is_none_or(|l| l.is_psd);
    Ok(IndicatorReport {
        vertex: i,
        values: values.iter().map(Scalar::render).collect(),
        min_value,
        all_nonnegative,
        base_identity_zero,
        localizer,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperTrial {
    pub trial: u64,
    pub terms: usize,
    /// `pE⊗[f²] / ‖f‖²`.
    pub quad_ratio: f64,
    /// `pE⊗[f⁴] / ‖f²‖²`.
    pub quartic_ratio: f64,
    /// `‖f²‖² / ‖f‖⁴`.
    pub norm_ratio: f64,
    /// `pE⊗[f⁴] / pE⊗[f²]²`.
    pub composite: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperReport {
    pub lambda1: f64,
    pub lambda2: f64,
    pub c_measured: f64,
    pub bound: f64,
    pub max_composite: f64,
    pub violations: u64,
    pub trials: Vec<HyperTrial>,
    pub pass: bool,
}

/// Random sparse `f` in the span of independent colour monomials with
/// colouring degree at most `d/4` and total degree at most `max_total`;
/// checks `pE⊗[f⁴] <= (λ₂ C / λ₁²) pE⊗[f²]²` with `λ₁` the restricted
/// minimum eigenvalue and `λ₂`, `C` the per-trial maxima.
pub fn check_hypercontractivity(
    cpe: &ColoringPE<f64>,
    g: &Graph,
    trials: u64,
    seed: u64,
    max_total: usize,
    tol: f64,
    budget: &Budget,
) -> Result<HyperReport> {
    cpe.base.check_graph(g)?;
    let (n, k) = (cpe.n(), cpe.k);
    let cdeg = cpe.d / 4;
    if cdeg == 0 {
        return Err(Error::ColoringDegreeExceeded { cdeg: 1, limit: cpe.d / 4 });
    }
    let lambda1 = tensor_restricted_min_eig(&cpe.base, g, k, max_total, budget)?;
    let index: Vec<ColorMonomial> = tensor_index(g, k, cdeg, max_total, budget.max_matrix_dim)?;
    let results: Vec<HyperTrial> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            let terms = rng.gen_range(1..=8usize.min(index.len()));
            let f = ColorPolynomial::from_terms(
                n,
                k,
                (0..terms).map(|_| (index[rng.gen_range(0..index.len())].clone(), rng.gen_range(-1.0..=1.0))),
            )?;
            let f2 = f.multiply(&f)?;
            let f4 = f2.multiply(&f2)?;
            let (e2, e4) = (cpe.eval(&f2)?, cpe.eval(&f4)?);
            let (n1, n2) = (f.l2_norm_sq(), f2.l2_norm_sq());
            Ok(HyperTrial {
                trial,
                terms: f.len(),
                quad_ratio: e2 / n1,
                quartic_ratio: e4 / n2,
                norm_ratio: n2 / (n1 * n1),
                composite: e4 / (e2 * e2),
            })
        })
        .filter(|r: &Result<HyperTrial>| r.as_ref().map_or(true, |t| t.quad_ratio.is_finite()))
        .collect::<Result<Vec<_>>>()?;
    let lambda2 = results.iter().map(|t| t.quartic_ratio).fold(0.0, f64::max);
    let c_measured = results.iter().map(|t| t.norm_ratio).fold(0.0, f64::max);
    let bound = lambda2 * c_measured / (lambda1 * lambda1);
    let violations = results
        .iter()
        .filter(|t| !(t.composite <= bound * (1.0 + tol) + tol))
        .count() as u64;
    let max_composite = results.iter().map(|t| t.composite).fold(0.0, f64::max);
    Ok(HyperReport {
        lambda1,
        lambda2,
        c_measured,
        bound,
        max_composite,
        violations,
        pass: lambda1 > 0.0 && violations == 0,
        trials: results,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CauchySchwarzReport {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

/// `pE⊗[fg]² <= pE⊗[f²] pE⊗[g²]`.
pub fn cauchy_schwarz_check<T: Scalar>(
    cpe: &ColoringPE<T>,
    f: &ColorPolynomial<T>,
    g: &ColorPolynomial<T>,
    tol: f64,
) -> Result<CauchySchwarzReport> {
    let limit = cpe.d / 2;
    for p in [f, g] {
        if p.cdeg() > limit {
            return Err(Error::ColoringDegreeExceeded { cdeg: p.cdeg(), limit });
        }
    }
    let fg = cpe.eval(&f.multiply(g)?)?;
    let ff = cpe.eval(&f.multiply(f)?)?;
    let gg = cpe.eval(&g.multiply(g)?)?;
    let lhs = fg.clone() * fg;
    let rhs = ff * gg;
    let pass = if T::is_exact() { lhs <= rhs } else { lhs.to_f64() <= rhs.to_f64() + tol };
    Ok(CauchySchwarzReport {
        lhs: lhs.to_f64(),
        rhs: rhs.to_f64(),
        pass,
    })
}

/// `(1 - p)^k + k p (1 - p)^(k-1)`.
pub fn h_closed_form<T: Scalar>(p: &T, k: usize) -> T {
    let q = T::one() - p.clone();
    let k_t = T::from_i64(k as i64);
    q.pow(k as u32) + k_t * p.clone() * q.pow(k as u32 - 1)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HBound {
    pub k0: u64,
    pub bound: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HReport {
    pub vertex: usize,
    pub k: usize,
    pub p: String,
    pub brute: String,
    pub closed: String,
    pub agree: bool,
    /// `pE⊗[h_i] <= k e^(-k/k0)` with the smallest `k0` satisfying `p >= 1/k0`.
    pub bound: Option<HBound>,
}

/// `pE⊗[h_i]` by evaluating the expanded indicator term by term, compared
/// with the closed form.
pub fn h_expectation<T: Scalar>(cpe: &ColoringPE<T>, i: usize, budget: &Budget) -> Result<HReport> {
    let n = cpe.n();
    let h = indicator_h::<T>(n, i, cpe.k, budget.indicator_limit)?;
    let brute = cpe.eval(&h)?;
    let p = cpe.p(i);
    let closed = h_closed_form(&p, cpe.k);
    let agree = (brute.clone() - closed.clone()).near_zero(1e-12);
    let bound = if p > T::zero() {
        let k0 = (T::one() / p.clone()).ceil_u64().unwrap_or(u64::MAX);
        let b = cpe.k as f64 * (-(cpe.k as f64) / k0 as f64).exp();
        Some(HBound {
            k0,
            bound: b,
            holds: brute.to_f64() <= b,
        })
    } else {
        None
    };
    Ok(HReport {
        vertex: i,
        k: cpe.k,
        p: p.render(),
        brute: brute.render(),
        closed: closed.render(),
        agree,
        bound,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub certificate: CoveringCertificate,
    pub chosen: ChosenK,
    pub k: usize,
    pub d: usize,
    pub d_prime: usize,
    pub booleanity: ResidualReport,
    pub edges: ResidualReport,
    pub positivity: PositivityReport,
    pub sum_constraints: SumConstraintReport,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionOptions {
    pub c_k: f64,
    /// Operator degree; defaults to the base table's.
    pub degree: Option<usize>,
    /// Overrides the chosen `k`.
    pub k: Option<usize>,
    /// Defaults to `d/4`.
    pub sum_half_degree: Option<usize>,
    pub widen: bool,
    pub samples: u64,
    pub seed: u64,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions {
            c_k: 1.0,
            degree: None,
            k: None,
            sum_half_degree: None,
            widen: false,
            samples: 2_000,
            seed: 0,
        }
    }
}

/// The full pipeline: covering certificate, choice of `k`, the tensor
/// operator, and every constraint check.
pub fn run_reduction<T: Scalar>(
    g: &Graph,
    pe: &PseudoExpectation<T>,
    options: &ReductionOptions,
    budget: &Budget,
) -> Result<(ColoringPE<T>, ReductionReport)> {
    let d = options.degree.unwrap_or(pe.d());
    let certificate = covering_certificate_at(pe, g, d / 2, budget)?;
    if !certificate.passed {
        return Err(Error::CoveringFailure(
            certificate.failure.clone().unwrap_or_else(|| "certificate failed".into()),
        ));
    }
    let k0 = certificate.k0.expect("passed certificate carries k0");
    let chosen = choose_k(k0, d, certificate.lambda, g.n(), options.c_k)?;
    let k = options.k.unwrap_or(chosen.k);
    let cpe = match options.degree {
        Some(d) => ColoringPE::with_degree(pe.clone(), k, d)?,
        None => ColoringPE::new(pe.clone(), k)?,
    };
    let booleanity = check_booleanity(&cpe, options.samples, options.seed, budget)?;
    let edges = check_edges(&cpe, g, options.samples, options.seed.wrapping_add(1), budget)?;
    let half = cpe.d_prime / 2;
    let positivity = check_positivity(
        &cpe,
        g,
        IndexSpec {
            max_cdeg: half,
            max_total: Some(half),
        },
        budget,
    )?;
    let sum_half = options.sum_half_degree.unwrap_or(cpe.d / 4);
    let sum_constraints = check_sum_constraints(&cpe, g, sum_half, options.widen, budget)?;
    let pass = booleanity.pass && edges.pass && positivity.outcome.is_psd && sum_constraints.pass;
    let report = ReductionReport {
        certificate,
        chosen,
        k,
        d: cpe.d,
        d_prime: cpe.d_prime,
        booleanity,
        edges,
        positivity,
        sum_constraints,
        pass,
    };
    Ok((cpe, report))
}

/// Singleton marginals as seen through the tensor operator in colour 1.
pub fn colour_one_singletons<T: Scalar>(cpe: &ColoringPE<T>) -> SingletonProfile<T> {
    let values: Vec<T> = (1..=cpe.n()).map(|i| tensor_eval(&cpe.base, &ColorMonomial::var(i, 1))).collect();
    let min = values.iter().cloned().fold(None, |m: Option<T>, v| match m {
        Some(x) if x <= v => Some(x),
        _ => Some(v),
    });
    let k0 = min
        .filter(|m| *m > T::zero())
        .and_then(|m| (T::one() / m).ceil_u64())
        .unwrap_or(0);
    SingletonProfile { values, k0 }
}

/// Explicit moment matrix over `tensor_index`, for cross-checks.
pub fn explicit_tensor_matrix<T: Scalar>(cpe: &ColoringPE<T>, g: &Graph, spec: IndexSpec, budget: &Budget) -> Result<(Vec<ColorMonomial>, SymMatrix<T>)> {
    let index = tensor_index(g, cpe.k, spec.max_cdeg, spec.total(cpe.k), budget.max_matrix_dim)?;
    let m = tensor_moment_matrix(&cpe.base, &index);
    Ok((index, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pe::{pe_from_distribution, uniform_independent_distribution};
    use crate::scalar::Rational;
    use num::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn uniform(g: &Graph, d: usize) -> PseudoExpectation<Rational> {
        pe_from_distribution(g, d, &uniform_independent_distribution(g)).unwrap()
    }

    #[test]
    fn tensor_eval_examples() {
        let g = Graph::complete(3).unwrap();
        let cpe = ColoringPE::new(uniform(&g, 2), 2).unwrap();
        assert_eq!(cpe.value(&ColorMonomial::one()).unwrap(), q(1, 1));
        let split = ColorMonomial::var(1, 1).union(&ColorMonomial::var(2, 2));
        assert_eq!(cpe.value(&split).unwrap(), q(1, 16));
        let same = ColorMonomial::var(1, 1).union(&ColorMonomial::var(2, 1));
        assert_eq!(cpe.value(&same).unwrap(), q(0, 1));
        assert!(matches!(cpe.value(&ColorMonomial::var(1, 3)), Err(Error::ColorOutOfRange { .. })));
        let deep = ColorMonomial::new([(1, Monomial::new(vec![1, 2, 3]))]);
        assert!(matches!(cpe.value(&deep), Err(Error::ColoringDegreeExceeded { .. })));
    }

    #[test]
    fn choose_k_examples() {
        let c = choose_k(4, 2, 1.0, 1, 1.0).unwrap();
        assert_eq!(c.k, 4);
        assert!(c.raised_to_k0);
        assert_eq!(choose_k(4, 2, 1.0 / 16.0, 3, 1.0).unwrap().k, 40);
        assert!(choose_k(4, 2, 0.0, 3, 1.0).is_err());
        assert!(choose_k(4, 2, 2.0, 3, 1.0).unwrap().lambda_clamped);
        // Monotonicity.
        let base = choose_k(4, 2, 0.1, 5, 1.0).unwrap().k;
        assert!(choose_k(5, 2, 0.1, 5, 1.0).unwrap().k >= base);
        assert!(choose_k(4, 4, 0.1, 5, 1.0).unwrap().k >= base);
        assert!(choose_k(4, 2, 0.1, 9, 1.0).unwrap().k >= base);
        assert!(choose_k(4, 2, 0.2, 5, 1.0).unwrap().k <= base);
    }

    #[test]
    fn booleanity_and_edges_small_exhaustive() {
        let g = Graph::complete(3).unwrap();
        let cpe = ColoringPE::new(uniform(&g, 2), 2).unwrap();
        let b = check_booleanity(&cpe, 10, 1, &Budget::default()).unwrap();
        assert_eq!(b.mode, CheckMode::Exhaustive);
        assert_eq!(b.checked, 16 * 6);
        assert!(b.pass);
        let p4 = Graph::path(4).unwrap();
        let cpe = ColoringPE::new(uniform(&p4, 4), 2).unwrap();
        let e = check_edges(&cpe, &p4, 10, 1, &Budget::default()).unwrap();
        assert_eq!(e.mode, CheckMode::Exhaustive);
        assert!(e.pass && e.checked > 0);
    }

    #[test]
    fn positivity_examples() {
        let g = Graph::complete(3).unwrap();
        let cpe = ColoringPE::new(uniform(&g, 2), 2).unwrap();
        let zero = check_positivity(&cpe, &g, IndexSpec { max_cdeg: 0, max_total: Some(0) }, &Budget::default()).unwrap();
        assert_eq!(zero.outcome.dim, 1);
        assert!((zero.outcome.min_eig - 1.0).abs() < 1e-12);
        let one = check_positivity(&cpe, &g, IndexSpec { max_cdeg: 1, max_total: None }, &Budget::default()).unwrap();
        assert!(one.outcome.is_psd);
        assert_eq!(one.outcome.exact.map(|d| d != Definiteness::Indefinite), Some(true));
    }

    #[test]
    fn symmetric_split_matches_explicit() {
        let budget = Budget::default();
        for seed in 0..8u64 {
            let g = crate::graph::gen_gnp(5, 0.4, seed).unwrap();
            let pe = uniform(&g, 4);
            for k in [1usize, 2, 3, 5] {
                let cpe = ColoringPE::new(pe.clone(), k).unwrap();
                let spec = IndexSpec { max_cdeg: 1, max_total: Some(1) };
                let explicit = positivity_with(&cpe, &g, spec, &budget, true).unwrap().outcome;
                let blocks = SymmetricBlocks::build(5, k, |m| tensor_eval(&cpe.base, m)).assess();
                assert!((explicit.min_eig - blocks.min_eig).abs() < 1e-10, "k = {k}");
                assert_eq!(explicit.exact, blocks.exact);
                let ex = sum_constraints_with(&cpe, &g, 1, false, &budget, true).unwrap();
                let fast = {
                    let mut b = budget.clone();
                    b.symmetric_above = 0;
                    sum_constraints_with(&cpe, &g, 1, false, &b, false).unwrap()
                };
                for (a, b) in ex.vertices.iter().zip(&fast.vertices) {
                    assert_eq!(b.outcome.method, MatrixMethod::ColourSymmetric);
                    assert!((a.outcome.min_eig - b.outcome.min_eig).abs() < 1e-10);
                    assert_eq!(a.outcome.exact, b.outcome.exact);
                }
            }
        }
    }

    #[test]
    fn sum_constraint_examples() {
        let g = Graph::complete(3).unwrap();
        let pe = uniform(&g, 4);
        let cpe = ColoringPE::new(pe.clone(), 1).unwrap();
        let r = check_sum_constraints(&cpe, &g, 0, false, &Budget::default()).unwrap();
        assert!(!r.pass);
        assert!((r.vertices[0].corner - (0.25 - 1.0)).abs() < 1e-12);
        let cpe = ColoringPE::new(pe, 5).unwrap();
        let r = check_sum_constraints(&cpe, &g, 0, false, &Budget::default()).unwrap();
        assert!((r.vertices[0].corner - 0.25).abs() < 1e-12);
        assert!(r.pass);
    }

    #[test]
    fn indicator_lemma_examples() {
        let g = Graph::path(3).unwrap();
        let pe = uniform(&g, 4);
        let budget = Budget::default();
        let one = |k| ColorPolynomial::constant(3, k, q(1, 1));
        let cpe = ColoringPE::new(pe.clone(), 2).unwrap();
        let r = check_indicator_lemma(&cpe, 1, &[one(2)], &budget).unwrap();
        assert_eq!(r.values, vec!["0".to_string()]);
        assert_eq!(r.base_identity_zero, Some(true));
        let cpe = ColoringPE::new(pe.clone(), 3).unwrap();
        let f = ColorPolynomial::from_terms(3, 3, [(ColorMonomial::var(3, 1), q(1, 1))]).unwrap();
        let r = check_indicator_lemma(&cpe, 1, &[one(3), f], &budget).unwrap();
        assert!(r.pass, "{r:?}");
        // Oracle for f = 1, k = 3: the colour-i variables are independent
        // Bernoulli(p); sum over the 8 assignments.
        let p = pe.get(&Monomial::var(1)).unwrap();
        let mut oracle = q(0, 1);
        for a in 0u32..8 {
            let ones = a.count_ones() as i64;
            let weight = (0..3).fold(q(1, 1), |w, c| w * if a >> c & 1 == 1 { p.clone() } else { q(1, 1) - p.clone() });
            let h = if ones <= 1 { 1 } else { 0 };
            oracle = oracle + weight * Rational::from_i64((1 - h) * (ones - 2));
        }
        assert_eq!(Rational::parse(&r.values[0]).unwrap(), oracle);
    }

    #[test]
    fn h_expectation_examples() {
        let g = Graph::complete(3).unwrap();
        let pe = uniform(&g, 2);
        let budget = Budget::default();
        let r = h_expectation(&ColoringPE::new(pe.clone(), 1).unwrap(), 1, &budget).unwrap();
        assert_eq!(r.brute, "1");
        let r = h_expectation(&ColoringPE::new(pe.clone(), 2).unwrap(), 1, &budget).unwrap();
        assert_eq!(r.brute, "15/16");
        assert!(r.agree);
        let point = pe_from_distribution(&g, 2, &[(vec![], q(1, 1))]).unwrap();
        for k in 1..6 {
            let r = h_expectation(&ColoringPE::new(point.clone(), k).unwrap(), 2, &budget).unwrap();
            assert_eq!(r.brute, "1");
            assert!(r.bound.is_none());
        }
    }

    #[test]
    fn cauchy_schwarz_examples() {
        let g = Graph::complete(3).unwrap();
        let cpe = ColoringPE::new(uniform(&g, 2), 2).unwrap();
        let f = ColorPolynomial::from_terms(3, 2, [(ColorMonomial::var(1, 1), q(2, 1)), (ColorMonomial::var(2, 2), q(-1, 1))]).unwrap();
        let r = cauchy_schwarz_check(&cpe, &f, &f, 0.0).unwrap();
        assert_eq!(r.lhs, r.rhs);
        let one = ColorPolynomial::constant(3, 2, q(1, 1));
        assert!(cauchy_schwarz_check(&cpe, &f, &one, 0.0).unwrap().pass);
    }

    #[test]
    fn pipeline_examples() {
        let budget = Budget::default();
        let k3 = Graph::complete(3).unwrap();
        let (_, r) = run_reduction(&k3, &uniform(&k3, 2), &ReductionOptions::default(), &budget).unwrap();
        assert!(r.pass, "{r:?}");
        let expected = choose_k(4, 2, r.certificate.lambda, 3, 1.0).unwrap().k;
        assert_eq!(r.k, expected);
        let e2 = Graph::empty(2).unwrap();
        let (_, r) = run_reduction(&e2, &uniform(&e2, 2), &ReductionOptions::default(), &budget).unwrap();
        assert!(r.pass);
        let point = pe_from_distribution(&k3, 2, &[(vec![], q(1, 1))]).unwrap();
        assert!(matches!(
            run_reduction(&k3, &point, &ReductionOptions::default(), &budget),
            Err(Error::CoveringFailure(_))
        ));
    }

    #[test]
    fn hypercontractivity_on_k3() {
        let g = Graph::complete(3).unwrap();
        let pe: PseudoExpectation<f64> = uniform(&g, 4).convert().unwrap();
        let cpe = ColoringPE::new(pe, 2).unwrap();
        let r = check_hypercontractivity(&cpe, &g, 50, 3, 1, 1e-8, &Budget::default()).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.trials.len(), 50);
    }
}
