//! Moment matrices and positive-semidefiniteness certificates.
//!
//! Float runs use a dense symmetric eigensolver. Rational runs decide PSD
//! exactly with a pivoted LDLᵀ elimination and use the float solver only to
//! report eigenvalue magnitudes.


use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pe::{pe_values_vector, PseudoExpectation};
use crate::poly::{ColorMonomial, Monomial, Polynomial};
use crate::reduction::tensor_eval;
use crate::scalar::Scalar;

/// Default absolute tolerance on the minimum eigenvalue in float mode.
pub const PSD_TOL: f64 = 1e-9;

const SYMMETRY_TOL: f64 = 1e-12;

/// Dense symmetric matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Scalar> SymMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        SymMatrix {
            dim,
            data: vec![T::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = T::one();
        }
        m
    }

    /// From rows; symmetry is not checked here (see [`certify_psd`]).
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidParameter("matrix rows must form a square".into()));
        }
        Ok(SymMatrix {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.dim + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.dim + j] = v.clone();
        self.data[j * self.dim + i] = v;
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.dim.max(1)).map(|r| r.to_vec()).take(self.dim).collect()
    }

    pub fn principal(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out.data[a * idx.len() + b] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| self.get(i, j).to_f64())
    }

    /// `vᵀ M v`.
    pub fn quadratic_form(&self, v: &[T]) -> T {
        let mut acc = T::zero();
        for i in 0..self.dim {
            if v[i].is_zero() {
                continue;
            }
            let mut row = T::zero();
            for j in 0..self.dim {
                if !v[j].is_zero() {
                    row = row + self.get(i, j).clone() * v[j].clone();
                }
            }
            acc = acc + v[i].clone() * row;
        }
        acc
    }

    pub fn check_symmetric(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let gap = self.get(i, j).clone() - self.get(j, i).clone();
                if !gap.near_zero(SYMMETRY_TOL) {
                    return Err(Error::NonSymmetric {
                        row: i,
                        col: j,
                        gap: gap.to_f64().abs(),
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Standard,
    Primed,
}

/// Moment matrix with entry `(S, T) = pE[x_{S ∪ T}]`.
#[derive(Clone, Debug)]
pub struct MomentMatrix<T> {
    pub index: Vec<Monomial>,
    pub matrix: SymMatrix<T>,
    pub basis: Basis,
}

impl<T: Scalar> MomentMatrix<T> {
    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.binary_search(m).ok()
    }

    /// Coefficient vector of `f` over the index (standard coordinates).
    pub fn coordinates(&self, f: &Polynomial<T>) -> Result<Vec<T>> {
        let mut v = vec![T::zero(); self.index.len()];
        for (m, c) in f.terms() {
            let pos = self.position(m).ok_or(Error::DegreeExceeded {
                needed: m.degree(),
                available: self.index.last().map_or(0, Monomial::degree),
            })?;
            v[pos] = c.clone();
        }
        Ok(v)
    }
}

fn subsets_up_to(n: usize, max: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, from: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Monomial>) {
        out.push(Monomial::new(cur.clone()));
        if cur.len() == max {
            return;
        }
        for v in from..=n {
            cur.push(v);
            rec(n, v + 1, max, cur, out);
            cur.pop();
        }
    }
    rec(n, 1, max, &mut cur, &mut out);
    out.sort();
    out
}

fn assemble<T: Scalar, I: Sync>(index: &[I], entry: impl Fn(&I, &I) -> T + Sync) -> SymMatrix<T> {
    let dim = index.len();
    let rows: Vec<Vec<T>> = (0..dim)
        .into_par_iter()
        .map(|i| (0..dim).map(|j| if j < i { T::zero() } else { entry(&index[i], &index[j]) }).collect())
        .collect();
    let mut m = SymMatrix::zeros(dim);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate().skip(i) {
            m.set(i, j, v);
        }
    }
    m
}

/// Moment matrix over every vertex set of size at most `half_degree`.
pub fn build_moment_matrix<T: Scalar>(
    pe: &PseudoExpectation<T>,
    half_degree: usize,
    budget: &Budget,
) -> Result<MomentMatrix<T>> {
    if (2 * half_degree).min(pe.n()) > pe.d() {
        return Err(Error::DegreeExceeded {
            needed: 2 * half_degree,
            available: pe.d(),
        });
    }
    let half = half_degree.min(pe.n());
    let index = subsets_up_to(pe.n(), half);
    if index.len() > budget.explicit_dim_limit {
        return Err(Error::limit("moment matrix dimension", index.len() as u128, budget.explicit_dim_limit as u128));
    }
    let masks: Vec<u128> = index.iter().map(Monomial::mask).collect();
    let matrix = assemble(&masks, |&a, &b| pe.get_mask(a | b));
    Ok(MomentMatrix {
        index,
        matrix,
        basis: Basis::Standard,
    })
}

/// Rewrites the matrix in the basis `e'_S = e_S - pE[x_S] e_∅`.
pub fn to_primed_basis<T: Scalar>(m: &MomentMatrix<T>, pe: &PseudoExpectation<T>) -> Result<MomentMatrix<T>> {
    if m.basis != Basis::Standard {
        return Err(Error::InvalidParameter("matrix is already in the primed basis".into()));
    }
    pe.check_normalized(SYMMETRY_TOL)?;
    let means: Vec<T> = m.index.iter().map(|s| pe.get_mask(s.mask())).collect();
    let dim = m.index.len();
    let mut out = SymMatrix::zeros(dim);
    for i in 0..dim {
        for j in i..dim {
            let v = if m.index[i].is_one() && m.index[j].is_one() {
                T::one()
            } else if m.index[i].is_one() || m.index[j].is_one() {
                T::zero()
            } else {
                m.matrix.get(i, j).clone() - means[i].clone() * means[j].clone()
            };
            out.set(i, j, v);
        }
    }
    Ok(MomentMatrix {
        index: m.index.clone(),
        matrix: out,
        basis: Basis::Primed,
    })
}

/// Primed coordinates of `f`: unchanged off the constant, and `pE[f]` on it.
pub fn primed_coordinates<T: Scalar>(m: &MomentMatrix<T>, f: &Polynomial<T>, pe: &PseudoExpectation<T>) -> Result<Vec<T>> {
    let mut v = m.coordinates(f)?;
    if let Some(pos) = m.position(&Monomial::one()) {
        v[pos] = pe.eval(f)?;
    }
    Ok(v)
}

/// Outcome of the exact LDLᵀ test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
}

/// Exact definiteness by symmetric elimination, pivoting on a positive
/// diagonal entry. A negative diagonal, or a zero diagonal with a nonzero
/// row, rules out PSD.
pub fn exact_definiteness<T: Scalar>(m: &SymMatrix<T>) -> Definiteness {
    let n = m.dim();
    let mut a: Vec<Vec<T>> = m.rows();
    let mut alive: Vec<usize> = (0..n).collect();
    while !alive.is_empty() {
        if alive.iter().any(|&i| a[i][i] < T::zero()) {
            return Definiteness::Indefinite;
        }
        let zero_diag_coupled = alive
            .iter()
            .any(|&i| a[i][i].is_zero() && alive.iter().any(|&j| !a[i][j].is_zero()));
        if zero_diag_coupled {
            return Definiteness::Indefinite;
        }
        let pivot = alive.iter().position(|&i| a[i][i] > T::zero());
        let Some(pos) = pivot else {
            // Every remaining row is zero.
            return Definiteness::PositiveSemidefinite;
        };
        let p = alive.swap_remove(pos);
        let d = a[p][p].clone();
        let col: Vec<(usize, T)> = alive
            .iter()
            .filter(|&&j| !a[j][p].is_zero())
            .map(|&j| (j, a[j][p].clone()))
            .collect();
        for (x, &(j, ref ajp)) in col.iter().enumerate() {
            let factor = ajp.clone() / d.clone();
            for &(l, ref alp) in &col[x..] {
                let v = a[j][l].clone() - factor.clone() * alp.clone();
                a[j][l] = v.clone();
                a[l][j] = v;
            }
        }
    }
    Definiteness::PositiveDefinite
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsdReport {
    pub is_psd: bool,
    pub min_eig: f64,
    pub max_eig: f64,
    pub dim: usize,
    /// Present in rational mode.
    pub exact: Option<Definiteness>,
}

/// Sorted eigenvalues of a symmetric matrix. Identically zero rows are split
/// off as exact zero eigenvalues first: the QR iteration can return NaN on
/// matrices with many of them.
pub fn eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let live: Vec<usize> = (0..m.nrows()).filter(|&i| m.row(i).iter().any(|&x| x != 0.0)).collect();
    let mut ev = vec![0.0; m.nrows() - live.len()];
    if !live.is_empty() {
        let block = m.select_rows(&live).select_columns(&live);
        ev.extend(SymmetricEigen::new(block).eigenvalues.iter().copied());
    }
    ev.sort_by(f64::total_cmp);
    ev
}

/// Symmetric eigensolve; `is_psd` is `min_eig >= -tol` in float mode and
/// the exact LDLᵀ verdict in rational mode.
pub fn certify_psd<T: Scalar>(m: &SymMatrix<T>, tol: f64) -> Result<PsdReport> {
    m.check_symmetric()?;
    let ev = eigenvalues(&m.to_f64());
    let (min_eig, max_eig) = match (ev.first(), ev.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => (0.0, 0.0),
    };
    let exact = T::is_exact().then(|| exact_definiteness(m));
    let is_psd = match exact {
        Some(d) => d != Definiteness::Indefinite,
        None => min_eig >= -tol,
    };
    Ok(PsdReport {
        is_psd,
        min_eig,
        max_eig,
        dim: m.dim(),
        exact,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoveringCertificate {
    pub k0: Option<u64>,
    pub lambda: f64,
    pub min_xi: f64,
    pub spectrum: (f64, f64),
    pub half_degree: usize,
    pub dim: usize,
    /// Exact positive-definiteness of the independent block (rational mode).
    pub exact: Option<Definiteness>,
    pub passed: bool,
    pub failure: Option<String>,
}

/// `lambda` is the minimum eigenvalue of the moment matrix block indexed by
/// independent sets of size at most `d/2`; `k0` comes from the singletons.
pub fn covering_certificate<T: Scalar>(pe: &PseudoExpectation<T>, g: &Graph, budget: &Budget) -> Result<CoveringCertificate> {
    covering_certificate_at(pe, g, pe.d() / 2, budget)
}

/// As [`covering_certificate`] with an explicit half degree; a complete
/// table (`d = n`) accepts any.
pub fn covering_certificate_at<T: Scalar>(
    pe: &PseudoExpectation<T>,
    g: &Graph,
    half: usize,
    budget: &Budget,
) -> Result<CoveringCertificate> {
    pe.check_graph(g)?;
    pe.check_normalized(SYMMETRY_TOL)?;
    if 2 * half > pe.d() && pe.d() < pe.n() {
        return Err(Error::DegreeExceeded {
            needed: 2 * half,
            available: pe.d(),
        });
    }
    let index: Vec<u128> = g
        .enumerate_independent_sets(half)
        .iter()
        .map(|s| Monomial::new(s.clone()).mask())
        .collect();
    if index.len() > budget.explicit_dim_limit {
        return Err(Error::limit("independent index size", index.len() as u128, budget.explicit_dim_limit as u128));
    }
    let block = assemble(&index, |&a, &b| pe.get_mask(a | b));
    let report = certify_psd(&block, PSD_TOL)?;
    let exact = T::is_exact().then(|| exact_definiteness(&block));
    let min_xi = pe.singletons().iter().map(Scalar::to_f64).fold(f64::INFINITY, f64::min);
    let mut failure = None;
    let k0 = match pe_values_vector(pe) {
        Ok(p) => Some(p.k0),
        Err(e) => {
            failure = Some(e.to_string());
            None
        }
    };
    let positive = match exact {
        Some(d) => d == Definiteness::PositiveDefinite,
        None => report.min_eig > 0.0,
    };
    if !positive && failure.is_none() {
        failure = Some(format!("minimum eigenvalue {:e} is not positive", report.min_eig));
    }
    Ok(CoveringCertificate {
        k0,
        lambda: report.min_eig,
        min_xi,
        spectrum: (report.min_eig, report.max_eig),
        half_degree: half,
        dim: index.len(),
        exact,
        passed: failure.is_none(),
        failure,
    })
}

/// Independent colour monomials with every part of size at most `part_max`
/// and total degree at most `total`, in graded-lex order.
pub fn tensor_index(g: &Graph, k: usize, part_max: usize, total: usize, limit: usize) -> Result<Vec<ColorMonomial>> {
    let count = tensor_index_size(g, k, part_max, total);
    if count > limit as u128 {
        return Err(Error::limit("tensor index size", count, limit as u128));
    }
    let sets: Vec<Monomial> = g
        .enumerate_independent_sets(part_max.min(total))
        .into_iter()
        .skip(1)
        .map(Monomial::new)
        .collect();
    let mut out = Vec::with_capacity(count as usize);
    let mut parts: Vec<(usize, Monomial)> = Vec::new();
    fn rec(
        colour: usize,
        k: usize,
        left: usize,
        sets: &[Monomial],
        parts: &mut Vec<(usize, Monomial)>,
        out: &mut Vec<ColorMonomial>,
    ) {
        if colour > k || left == 0 {
            out.push(ColorMonomial::new(parts.iter().cloned()));
            return;
        }
        rec(colour + 1, k, left, sets, parts, out);
        for s in sets.iter().filter(|s| s.degree() <= left) {
            parts.push((colour, s.clone()));
            rec(colour + 1, k, left - s.degree(), sets, parts, out);
            parts.pop();
        }
    }
    rec(1, k, total, &sets, &mut parts, &mut out);
    out.sort();
    Ok(out)
}

/// Size of [`tensor_index`], by convolving the per-colour size profile.
pub fn tensor_index_size(g: &Graph, k: usize, part_max: usize, total: usize) -> u128 {
    let cap = part_max.min(total);
    let mut per_size = vec![0u128; cap + 1];
    for s in g.enumerate_independent_sets(cap) {
        per_size[s.len()] += 1;
    }
    let mut acc = vec![0u128; total + 1];
    acc[0] = 1;
    for _ in 0..k {
        let mut next = vec![0u128; total + 1];
        for (a, &x) in acc.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (b, &y) in per_size.iter().enumerate() {
                if a + b <= total {
                    next[a + b] = next[a + b].saturating_add(x.saturating_mul(y));
                }
            }
        }
        acc = next;
    }
    acc.iter().fold(0u128, |s, &x| s.saturating_add(x))
}

/// Moment matrix of the colour-tensored expectation over [`tensor_index`].
pub fn tensor_moment_matrix<T: Scalar>(
    pe: &PseudoExpectation<T>,
    index: &[ColorMonomial],
) -> SymMatrix<T> {
    assemble(index, |a, b| tensor_eval(pe, &a.union(b)))
}

/// Minimum eigenvalue of `f ↦ pE^{⊗k}[f²]` on independent colour monomials
/// of total degree at most `total_degree` (parts capped at `d/2`).
pub fn tensor_restricted_min_eig<T: Scalar>(
    pe: &PseudoExpectation<T>,
    g: &Graph,
    k: usize,
    total_degree: usize,
    budget: &Budget,
) -> Result<f64> {
    pe.check_graph(g)?;
    let index = tensor_index(g, k, pe.d() / 2, total_degree, budget.max_matrix_dim)?;
    if index.len() > budget.explicit_dim_limit {
        return Err(Error::limit("explicit tensor matrix dimension", index.len() as u128, budget.explicit_dim_limit as u128));
    }
    let m = tensor_moment_matrix(pe, &index);
    Ok(eigenvalues(&m.to_f64()).first().copied().unwrap_or(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pe::{pe_from_distribution, uniform_independent_distribution};
    use crate::scalar::Rational;
    use num::{BigInt, Zero};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn k3_pe() -> (Graph, PseudoExpectation<Rational>) {
        let g = Graph::complete(3).unwrap();
        let pe = pe_from_distribution(&g, 2, &uniform_independent_distribution(&g)).unwrap();
        (g, pe)
    }

    #[test]
    fn k3_moment_matrix() {
        let (_, pe) = k3_pe();
        let m = build_moment_matrix(&pe, 1, &Budget::default()).unwrap();
        let a = q(1, 4);
        let z = q(0, 1);
        let expected = vec![
            vec![q(1, 1), a.clone(), a.clone(), a.clone()],
            vec![a.clone(), a.clone(), z.clone(), z.clone()],
            vec![a.clone(), z.clone(), a.clone(), z.clone()],
            vec![a.clone(), z.clone(), z.clone(), a.clone()],
        ];
        assert_eq!(m.matrix.rows(), expected);
        let f = Polynomial::from_terms(3, [(Monomial::var(1), q(1, 1)), (Monomial::var(2), q(-1, 1))]).unwrap();
        let v = m.coordinates(&f).unwrap();
        assert_eq!(m.matrix.quadratic_form(&v), q(1, 2));
    }

    #[test]
    fn point_mass_matrix() {
        let g = Graph::complete(3).unwrap();
        let pe = pe_from_distribution(&g, 2, &[(vec![], q(1, 1))]).unwrap();
        let m = build_moment_matrix(&pe, 1, &Budget::default()).unwrap();
        let nonzero: Vec<_> = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| !m.matrix.get(i, j).is_zero())
            .collect();
        assert_eq!(nonzero, vec![(0, 0)]);
        let cert = covering_certificate(&pe, &g, &Budget::default()).unwrap();
        assert!(!cert.passed);
        assert_eq!(cert.k0, None);
    }

    #[test]
    fn k3_primed_basis() {
        let (_, pe) = k3_pe();
        let m = build_moment_matrix(&pe, 1, &Budget::default()).unwrap();
        let p = to_primed_basis(&m, &pe).unwrap();
        let rows = p.matrix.rows();
        assert_eq!(rows[0], vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1)]);
        for i in 1..4 {
            for j in 1..4 {
                let expected = if i == j { q(1, 4) - q(1, 16) } else { -q(1, 16) };
                assert_eq!(rows[i][j], expected);
            }
        }
    }

    #[test]
    fn certify_examples() {
        let r = certify_psd(&SymMatrix::<f64>::identity(3), PSD_TOL).unwrap();
        assert!(r.is_psd);
        assert!((r.min_eig - 1.0).abs() < 1e-12);
        let d = SymMatrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, -0.5]]).unwrap();
        let r = certify_psd(&d, PSD_TOL).unwrap();
        assert!(!r.is_psd);
        assert!((r.min_eig + 0.5).abs() < 1e-12);
        let asym = SymMatrix::from_rows(vec![vec![1.0, 0.1], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(certify_psd(&asym, PSD_TOL), Err(Error::NonSymmetric { .. })));
    }

    #[test]
    fn k3_certificate_matches_closed_form() {
        // Characteristic polynomial of the 4x4 K3 matrix: the contrast
        // directions give 1/4 twice, the symmetric block [[1, √3/4], [√3/4, 1/4]]
        // gives (5 ± √21)/8.
        let (g, pe) = k3_pe();
        let m = build_moment_matrix(&pe, 1, &Budget::default()).unwrap();
        let r = certify_psd(&m.matrix, PSD_TOL).unwrap();
        assert!(r.is_psd);
        assert_eq!(r.exact, Some(Definiteness::PositiveDefinite));
        let expected = (5.0 - 21f64.sqrt()) / 8.0;
        assert!((r.min_eig - expected).abs() < 1e-12);
        let cert = covering_certificate(&pe, &g, &Budget::default()).unwrap();
        assert!(cert.passed);
        assert_eq!(cert.k0, Some(4));
        assert!((cert.lambda - expected).abs() < 1e-12);
    }

    #[test]
    fn exact_ldl_agrees_with_eigenvalues() {
        let cases: Vec<(Vec<Vec<i64>>, Definiteness)> = vec![
            (vec![vec![1, 1], vec![1, 1]], Definiteness::PositiveSemidefinite),
            (vec![vec![0, 1], vec![1, 0]], Definiteness::Indefinite),
            (vec![vec![0, 0], vec![0, 0]], Definiteness::PositiveSemidefinite),
            (vec![vec![2, 1], vec![1, 2]], Definiteness::PositiveDefinite),
            (vec![vec![1, 2], vec![2, 1]], Definiteness::Indefinite),
            (vec![vec![1, 1, 0], vec![1, 1, 0], vec![0, 0, 0]], Definiteness::PositiveSemidefinite),
            (vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 0]], Definiteness::Indefinite),
        ];
        for (rows, expected) in cases {
            let m = SymMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v, 1)).collect()).collect()).unwrap();
            assert_eq!(exact_definiteness(&m), expected, "{rows:?}");
        }
    }

    #[test]
    fn tensor_degree_zero_and_k1() {
        let (g, pe) = k3_pe();
        let b = Budget::default();
        assert!((tensor_restricted_min_eig(&pe, &g, 3, 0, &b).unwrap() - 1.0).abs() < 1e-12);
        let cert = covering_certificate(&pe, &g, &b).unwrap();
        let k1 = tensor_restricted_min_eig(&pe, &g, 1, 1, &b).unwrap();
        assert!((k1 - cert.lambda).abs() < 1e-12);
    }

    #[test]
    fn tensor_index_counts() {
        let g = Graph::complete(3).unwrap();
        // Constant plus one singleton in one of two colours.
        assert_eq!(tensor_index(&g, 2, 1, 1, 100).unwrap().len(), 7);
        assert_eq!(tensor_index_size(&g, 2, 1, 2), 1 + 6 + 9);
        assert_eq!(tensor_index(&g, 2, 1, 2, 100).unwrap().len(), 16);
        assert!(tensor_index(&g, 2, 1, 2, 10).is_err());
    }

    #[test]
    fn zero_rows_give_finite_spectrum() {
        // A dense graph whose full moment matrix is mostly zero rows.
        let edges = [
            (1, 7), (1, 8), (2, 6), (2, 7), (2, 8), (3, 4), (3, 5), (3, 6), (3, 7), (3, 8),
            (4, 5), (4, 6), (4, 7), (4, 8), (5, 6), (5, 7), (5, 8), (6, 8),
        ];
        let g = Graph::from_edges(8, &edges).unwrap();
        let pe: PseudoExpectation<f64> = pe_from_distribution(&g, 4, &uniform_independent_distribution(&g)).unwrap();
        let b = Budget::default();
        let m = build_moment_matrix(&pe, 2, &b).unwrap();
        let ev = eigenvalues(&m.matrix.to_f64());
        assert!(ev.iter().all(|x| x.is_finite()));
        let cert = covering_certificate(&pe, &g, &b).unwrap();
        let positive: Vec<f64> = ev.into_iter().filter(|&x| x > 1e-12).collect();
        assert_eq!(positive.len(), cert.dim);
        assert!((positive[0] - cert.lambda).abs() < 1e-12);
    }
}
