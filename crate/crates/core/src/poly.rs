//! Multilinear polynomials over 0/1 variables.
//!
//! Booleanity (`x^2 = x`) is structural: a monomial is a sorted vertex set and
//! multiplication is set union. Two variable families exist: `x_i` indexed by
//! vertices and `x_{i,c}` indexed by (vertex, colour). Monomials are ordered
//! graded-lexicographically, which fixes every matrix row order downstream.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;

/// Default cap on `k` for [`indicator_h`] (the expansion has `2^k` terms).
pub const DEFAULT_INDICATOR_LIMIT: usize = 20;

/// Sorted, duplicate-free set of 1-based vertices.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<usize>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        Monomial(vars)
    }

    pub fn var(i: usize) -> Self {
        Monomial(vec![i])
    }

    pub fn vars(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn union(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn is_subset(&self, other: &Monomial) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }

    pub fn eval(&self, point: &dyn Fn(usize) -> bool) -> bool {
        self.0.iter().all(|&v| point(v))
    }

    pub(crate) fn mask(&self) -> u128 {
        self.0.iter().fold(0u128, |m, &v| m | 1u128 << (v - 1))
    }

    pub(crate) fn from_mask(mask: u128) -> Self {
        Monomial(crate::graph::bits(mask).map(|v| v + 1).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|v| format!("x{v}")).collect();
        f.write_str(&parts.join("*"))
    }
}

/// Product of `x_{S_c, c}` over the colours present; absent colours have
/// `S_c` empty. Parts are sorted by colour and never empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ColorMonomial(Vec<(usize, Monomial)>);

impl ColorMonomial {
    pub fn one() -> Self {
        ColorMonomial(Vec::new())
    }

    pub fn new(parts: impl IntoIterator<Item = (usize, Monomial)>) -> Self {
        let mut map: BTreeMap<usize, Monomial> = BTreeMap::new();
        for (c, s) in parts {
            let entry = map.entry(c).or_default();
            *entry = entry.union(&s);
        }
        ColorMonomial(map.into_iter().filter(|(_, s)| !s.is_one()).collect())
    }

    pub fn var(i: usize, c: usize) -> Self {
        ColorMonomial(vec![(c, Monomial::var(i))])
    }

    pub fn parts(&self) -> &[(usize, Monomial)] {
        &self.0
    }

    pub fn part(&self, c: usize) -> Option<&Monomial> {
        self.0.iter().find(|(col, _)| *col == c).map(|(_, s)| s)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|(_, s)| s.degree()).sum()
    }

    /// Largest single-colour part.
    pub fn cdeg(&self) -> usize {
        self.0.iter().map(|(_, s)| s.degree()).max().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn union(&self, other: &ColorMonomial) -> ColorMonomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1.union(&b[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        ColorMonomial(out)
    }

    pub fn eval(&self, point: &dyn Fn(usize, usize) -> bool) -> bool {
        self.0
            .iter()
            .all(|(c, s)| s.vars().iter().all(|&v| point(v, *c)))
    }

    pub fn is_independent_in(&self, g: &Graph) -> bool {
        self.0.iter().all(|(_, s)| g.is_independent_mask(s.mask()))
    }
}

impl Ord for ColorMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ColorMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ColorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .flat_map(|(c, s)| s.vars().iter().map(move |v| format!("x{v},{c}")))
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Shared term-map behaviour of the two polynomial families.
#[derive(Clone, PartialEq)]
struct Terms<M: Ord, T>(BTreeMap<M, T>);

impl<M: Ord + Clone, T: Scalar> Terms<M, T> {
    fn add_term(&mut self, m: M, coeff: T) {
        if coeff.is_zero() {
            return;
        }
        match self.0.get_mut(&m) {
            Some(c) => {
                let sum = c.clone() + coeff;
                if sum.is_zero() {
                    self.0.remove(&m);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.0.insert(m, coeff);
            }
        }
    }

    fn product(&self, other: &Self, union: impl Fn(&M, &M) -> M) -> Self {
        let mut out = Terms(BTreeMap::new());
        for (ma, ca) in &self.0 {
            for (mb, cb) in &other.0 {
                out.add_term(union(ma, mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    fn l2_norm_sq(&self) -> T {
        self.0
            .values()
            .fold(T::zero(), |acc, c| acc + c.clone() * c.clone())
    }
}

#[derive(Clone, PartialEq)]
pub struct Polynomial<T> {
    n: usize,
    terms: Terms<Monomial, T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: Terms(BTreeMap::new()),
        }
    }

    pub fn constant(n: usize, c: T) -> Self {
        Self::from_terms(n, [(Monomial::one(), c)]).expect("constant is always in range")
    }

    pub fn var(n: usize, i: usize) -> Result<Self> {
        Self::from_terms(n, [(Monomial::var(i), T::one())])
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, T)>) -> Result<Self> {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            if let Some(&v) = m.vars().iter().find(|&&v| v == 0 || v > n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            p.terms.add_term(m, c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.0.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> T {
        self.terms.0.get(m).cloned().unwrap_or_else(T::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.0.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn check_universe(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::UniverseMismatch(format!("n = {} vs n = {}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_universe(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.terms.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in self.terms() {
            out.terms.add_term(m.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_universe(other)?;
        Ok(Polynomial {
            n: self.n,
            terms: self.terms.product(&other.terms, Monomial::union),
        })
    }

    /// Value at the 0/1 point where `x_i = point(i)`.
    pub fn eval(&self, point: &dyn Fn(usize) -> bool) -> T {
        self.terms()
            .filter(|(m, _)| m.eval(point))
            .fold(T::zero(), |acc, (_, c)| acc + c.clone())
    }

    pub fn l2_norm_sq(&self) -> T {
        self.terms.l2_norm_sq()
    }

    /// Drops every monomial that is not an independent set of `g`.
    pub fn project_indep(&self, g: &Graph) -> Result<Self> {
        if g.n() != self.n {
            return Err(Error::UniverseMismatch(format!("graph n = {} vs n = {}", g.n(), self.n)));
        }
        let mut out = Self::zero(self.n);
        for (m, c) in self.terms() {
            if g.is_independent_mask(m.mask()) {
                out.terms.add_term(m.clone(), c.clone());
            }
        }
        Ok(out)
    }
}

impl<T: Scalar> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms()).finish()
    }
}

#[derive(Clone, PartialEq)]
pub struct ColorPolynomial<T> {
    n: usize,
    k: usize,
    terms: Terms<ColorMonomial, T>,
}

impl<T: Scalar> ColorPolynomial<T> {
    pub fn zero(n: usize, k: usize) -> Self {
        ColorPolynomial {
            n,
            k,
            terms: Terms(BTreeMap::new()),
        }
    }

    pub fn constant(n: usize, k: usize, c: T) -> Self {
        let mut p = Self::zero(n, k);
        p.terms.add_term(ColorMonomial::one(), c);
        p
    }

    pub fn from_terms(
        n: usize,
        k: usize,
        terms: impl IntoIterator<Item = (ColorMonomial, T)>,
    ) -> Result<Self> {
        let mut p = Self::zero(n, k);
        for (m, c) in terms {
            for (col, s) in m.parts() {
                if *col == 0 || *col > k {
                    return Err(Error::ColorOutOfRange { color: *col, k });
                }
                if let Some(&v) = s.vars().iter().find(|&&v| v == 0 || v > n) {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            p.terms.add_term(m, c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ColorMonomial, &T)> {
        self.terms.0.iter()
    }

    pub fn coeff(&self, m: &ColorMonomial) -> T {
        self.terms.0.get(m).cloned().unwrap_or_else(T::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.0.keys().map(ColorMonomial::degree).max().unwrap_or(0)
    }

    pub fn cdeg(&self) -> usize {
        self.terms.0.keys().map(ColorMonomial::cdeg).max().unwrap_or(0)
    }

    fn check_universe(&self, other: &Self) -> Result<()> {
        if (self.n, self.k) != (other.n, other.k) {
            return Err(Error::UniverseMismatch(format!(
                "(n, k) = ({}, {}) vs ({}, {})",
                self.n, self.k, other.n, other.k
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_universe(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.terms.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero(self.n, self.k);
        for (m, c) in self.terms() {
            out.terms.add_term(m.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_universe(other)?;
        Ok(ColorPolynomial {
            n: self.n,
            k: self.k,
            terms: self.terms.product(&other.terms, ColorMonomial::union),
        })
    }

    /// Value at the 0/1 point where `x_{i,c} = point(i, c)`.
    pub fn eval(&self, point: &dyn Fn(usize, usize) -> bool) -> T {
        self.terms()
            .filter(|(m, _)| m.eval(point))
            .fold(T::zero(), |acc, (_, c)| acc + c.clone())
    }

    pub fn l2_norm_sq(&self) -> T {
        self.terms.l2_norm_sq()
    }

    /// Drops every monomial with some colour class that is not independent.
    pub fn project_indep_tensor(&self, g: &Graph) -> Result<Self> {
        if g.n() != self.n {
            return Err(Error::UniverseMismatch(format!("graph n = {} vs n = {}", g.n(), self.n)));
        }
        let mut out = Self::zero(self.n, self.k);
        for (m, c) in self.terms() {
            if m.is_independent_in(g) {
                out.terms.add_term(m.clone(), c.clone());
            }
        }
        Ok(out)
    }
}

impl<T: Scalar> fmt::Debug for ColorPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms()).finish()
    }
}

/// The indicator that vertex `i` receives at most one colour, expanded:
/// `sum over colour sets C of (-1)^|C| (1 - |C|) prod_{c in C} x_{i,c}`.
pub fn indicator_h<T: Scalar>(n: usize, i: usize, k: usize, limit: usize) -> Result<ColorPolynomial<T>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if k > limit {
        return Err(Error::limit("colour count for indicator expansion", k as u128, limit as u128));
    }
    if i == 0 || i > n {
        return Err(Error::VertexOutOfRange { vertex: i, n });
    }
    let mut out = ColorPolynomial::zero(n, k);
    for set in 0u64..1 << k {
        let size = set.count_ones() as i64;
        let coeff = if size % 2 == 0 { 1 - size } else { size - 1 };
        let m = ColorMonomial::new((0..k).filter(|c| set >> c & 1 == 1).map(|c| (c + 1, Monomial::var(i))));
        out.terms.add_term(m, T::from_i64(coeff));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    type P = Polynomial<Rational>;

    fn r(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn x(n: usize, i: usize) -> P {
        P::var(n, i).unwrap()
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(x(3, 1).multiply(&x(3, 1)).unwrap(), x(3, 1));
        let x12 = P::from_terms(3, [(Monomial::new(vec![1, 2]), r(1))]).unwrap();
        assert_eq!(x(3, 1).multiply(&x(3, 2)).unwrap(), x12);
        let s = x(3, 1).add(&x(3, 2)).unwrap();
        let expected = P::from_terms(
            3,
            [
                (Monomial::var(1), r(1)),
                (Monomial::var(2), r(1)),
                (Monomial::new(vec![1, 2]), r(2)),
            ],
        )
        .unwrap();
        assert_eq!(s.multiply(&s).unwrap(), expected);
        assert!(matches!(x(3, 1).multiply(&x(4, 1)), Err(Error::UniverseMismatch(_))));
    }

    #[test]
    fn graded_lex_order() {
        let mut ms = vec![
            Monomial::new(vec![1, 2]),
            Monomial::var(3),
            Monomial::one(),
            Monomial::new(vec![1, 3]),
            Monomial::var(1),
        ];
        ms.sort();
        let got: Vec<_> = ms.iter().map(|m| m.vars().to_vec()).collect();
        assert_eq!(got, vec![vec![], vec![1], vec![3], vec![1, 2], vec![1, 3]]);
    }

    #[test]
    fn cdeg_examples() {
        let a = ColorMonomial::new([(1, Monomial::var(1)), (2, Monomial::var(1))]);
        assert_eq!((a.degree(), a.cdeg()), (2, 1));
        let b = ColorMonomial::new([(1, Monomial::var(1)), (1, Monomial::var(2))]);
        assert_eq!((b.degree(), b.cdeg()), (2, 2));
        assert_eq!(ColorPolynomial::constant(3, 2, r(5)).cdeg(), 0);
    }

    #[test]
    fn projection_examples() {
        let k3 = Graph::complete(3).unwrap();
        let x12 = P::from_terms(3, [(Monomial::new(vec![1, 2]), r(1))]).unwrap();
        assert!(x12.project_indep(&k3).unwrap().is_zero());
        assert_eq!(x(3, 1).project_indep(&k3).unwrap(), x(3, 1));
        let p3 = Graph::path(3).unwrap();
        let f = P::from_terms(3, [(Monomial::new(vec![1, 3]), r(2)), (Monomial::new(vec![1, 2]), r(3))]).unwrap();
        let expected = P::from_terms(3, [(Monomial::new(vec![1, 3]), r(2))]).unwrap();
        assert_eq!(f.project_indep(&p3).unwrap(), expected);

        let same = ColorMonomial::new([(1, Monomial::var(1)), (1, Monomial::var(2))]);
        let split = ColorMonomial::new([(1, Monomial::var(1)), (2, Monomial::var(2))]);
        let f = ColorPolynomial::from_terms(3, 2, [(same, r(1))]).unwrap();
        assert!(f.project_indep_tensor(&k3).unwrap().is_zero());
        let f = ColorPolynomial::from_terms(3, 2, [(split, r(1))]).unwrap();
        assert_eq!(f.project_indep_tensor(&k3).unwrap(), f);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(P::zero(3).l2_norm_sq(), r(0));
        assert_eq!(x(3, 1).scale(&r(3)).l2_norm_sq(), r(9));
        let f = P::from_terms(3, [(Monomial::var(1), r(1)), (Monomial::new(vec![2, 3]), r(2))]).unwrap();
        assert_eq!(f.l2_norm_sq(), r(5));
    }

    #[test]
    fn indicator_examples() {
        let h1 = indicator_h::<Rational>(3, 2, 1, 20).unwrap();
        assert_eq!(h1, ColorPolynomial::constant(3, 1, r(1)));
        let h2 = indicator_h::<Rational>(3, 2, 2, 20).unwrap();
        assert_eq!(h2.eval(&|_, _| true), r(0));
        assert_eq!(h2.eval(&|_, c| c == 1), r(1));
        assert_eq!(h2.cdeg(), 1);
        assert!(indicator_h::<f64>(3, 1, 21, 20).is_err());
    }

    #[test]
    fn indicator_matches_product_form_and_truth_table() {
        for k in 1..=8usize {
            let n = 2;
            let i = 1;
            let one = ColorPolynomial::<Rational>::constant(n, k, r(1));
            let var = |c| ColorPolynomial::from_terms(n, k, [(ColorMonomial::var(i, c), r(1))]).unwrap();
            let not = |c| one.add(&var(c).scale(&r(-1))).unwrap();
            // Direct product form.
            let mut oracle = (1..=k).fold(one.clone(), |acc, c| acc.multiply(&not(c)).unwrap());
            for c in 1..=k {
                let term = (1..=k)
                    .filter(|&c2| c2 != c)
                    .fold(var(c), |acc, c2| acc.multiply(&not(c2)).unwrap());
                oracle = oracle.add(&term).unwrap();
            }
            let h = indicator_h::<Rational>(n, i, k, 20).unwrap();
            assert_eq!(h, oracle, "k = {k}");
        }
        for k in 1..=10usize {
            let h = indicator_h::<Rational>(1, 1, k, 20).unwrap();
            for point in 0u32..1 << k {
                let expected = if point.count_ones() <= 1 { 1 } else { 0 };
                assert_eq!(h.eval(&|_, c| point >> (c - 1) & 1 == 1), r(expected));
            }
        }
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = P> {
        prop::collection::vec((prop::collection::vec(1..=n, 0..4), -5i64..=5), 0..6).prop_map(move |terms| {
            P::from_terms(n, terms.into_iter().map(|(vs, c)| (Monomial::new(vs), r(c)))).unwrap()
        })
    }

    fn arb_color_poly(n: usize, k: usize) -> impl Strategy<Value = ColorPolynomial<Rational>> {
        let part = (1..=k, prop::collection::vec(1..=n, 1..3));
        prop::collection::vec((prop::collection::vec(part, 0..3), -5i64..=5), 0..6).prop_map(move |terms| {
            ColorPolynomial::from_terms(
                n,
                k,
                terms
                    .into_iter()
                    .map(|(parts, c)| (ColorMonomial::new(parts.into_iter().map(|(col, vs)| (col, Monomial::new(vs)))), r(c))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn multiply_is_commutative_associative_and_evaluates(
            a in arb_poly(8), b in arb_poly(8), c in arb_poly(8), point in 0u32..256
        ) {
            let ab = a.multiply(&b).unwrap();
            prop_assert_eq!(&ab, &b.multiply(&a).unwrap());
            prop_assert_eq!(ab.multiply(&c).unwrap(), a.multiply(&b.multiply(&c).unwrap()).unwrap());
            let pt = |i: usize| point >> (i - 1) & 1 == 1;
            prop_assert_eq!(ab.eval(&pt), a.eval(&pt) * b.eval(&pt));
        }

        #[test]
        fn projections_are_idempotent_linear(a in arb_poly(6), b in arb_poly(6), seed in 0u64..1000) {
            let g = crate::graph::gen_gnp(6, 0.5, seed).unwrap();
            let pa = a.project_indep(&g).unwrap();
            prop_assert_eq!(pa.project_indep(&g).unwrap(), pa.clone());
            let sum = a.add(&b).unwrap().project_indep(&g).unwrap();
            prop_assert_eq!(sum, pa.add(&b.project_indep(&g).unwrap()).unwrap());
        }

        #[test]
        fn tensor_projection_is_idempotent_and_lowers_cdeg(f in arb_color_poly(6, 3), seed in 0u64..1000) {
            let g = crate::graph::gen_gnp(6, 0.5, seed).unwrap();
            let pf = f.project_indep_tensor(&g).unwrap();
            prop_assert_eq!(pf.project_indep_tensor(&g).unwrap(), pf.clone());
            prop_assert!(pf.cdeg() <= f.cdeg());
        }
    }
}
