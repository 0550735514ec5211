//! Calibrated tables against a naive sum over explicit edge sets.

use colorsos::config::Budget;
use colorsos::graph::gen_gnp;
use colorsos::pe::{chi, pe_calibrated, CalibrationParams, TruncationRule};
use colorsos::poly::Monomial;
use colorsos::{Graph, Rational, Scalar};

/// Sum over every edge set `T` of `(omega/n)^|V(T) ∪ S| chi_T(complement)`
/// subject to the truncation rule, by depth-first search over the edge list.
fn naive(g: &Graph, s: &[usize], omega: &Rational, tau: usize, rule: TruncationRule) -> Rational {
    let n = g.n();
    let h = g.complement();
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let ratio = omega.clone() / Rational::from_i64(n as i64);
    let mut total = Rational::from_i64(0);
    let mut chosen = Vec::new();
    let in_s = |v: usize| s.contains(&v);

    fn admissible(covered: &[bool], s: &dyn Fn(usize) -> bool, tau: usize, rule: TruncationRule) -> bool {
        let count = covered
            .iter()
            .enumerate()
            .filter(|(v, &c)| c && (rule == TruncationRule::Strict || !s(*v)))
            .count();
        count <= tau
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        idx: usize,
        pairs: &[(usize, usize)],
        covered: &mut Vec<bool>,
        chosen: &mut Vec<(usize, usize)>,
        s: &dyn Fn(usize) -> bool,
        tau: usize,
        rule: TruncationRule,
        leaf: &mut dyn FnMut(&[(usize, usize)], &[bool]),
    ) {
        if idx == pairs.len() {
            leaf(chosen, covered);
            return;
        }
        rec(idx + 1, pairs, covered, chosen, s, tau, rule, leaf);
        let (i, j) = pairs[idx];
        let saved = (covered[i], covered[j]);
        covered[i] = true;
        covered[j] = true;
        if admissible(covered, s, tau, rule) {
            chosen.push((i, j));
            rec(idx + 1, pairs, covered, chosen, s, tau, rule, leaf);
            chosen.pop();
        }
        covered[i] = saved.0;
        covered[j] = saved.1;
    }

    let mut covered = vec![false; n + 1];
    rec(0, &pairs, &mut covered, &mut chosen, &in_s, tau, rule, &mut |t, cov| {
        let size = (1..=n).filter(|&v| cov[v] || s.contains(&v)).count();
        let sign = chi(&h, t).unwrap() as i64;
        total = total.clone() + Rational::from_i64(sign) * Scalar::pow(&ratio, size as u32);
    });
    total
}

#[test]
fn matches_naive_sum_strict_rule() {
    for seed in 0..4u64 {
        let g = gen_gnp(8, 0.5, seed).unwrap();
        for tau in 0..=3 {
            let params = CalibrationParams::new(2.5, tau, 2).with_rule(TruncationRule::Strict);
            let cal = pe_calibrated::<Rational>(&g, &params, &Budget::default()).unwrap();
            let omega = Rational::from_f64(2.5);
            for s in g.enumerate_independent_sets(2) {
                let expected = naive(&g, &s, &omega, tau, TruncationRule::Strict);
                assert_eq!(cal.raw.get(&Monomial::new(s.clone())).unwrap(), expected, "seed {seed} tau {tau} S {s:?}");
            }
        }
    }
}

#[test]
fn matches_naive_sum_union_rule() {
    for seed in 0..3u64 {
        let g = gen_gnp(7, 0.5, seed).unwrap();
        for tau in 0..=2 {
            let params = CalibrationParams::new(2.0, tau, 2);
            let cal = pe_calibrated::<Rational>(&g, &params, &Budget::default()).unwrap();
            let omega = Rational::from_f64(2.0);
            for s in g.enumerate_independent_sets(2) {
                let expected = naive(&g, &s, &omega, tau, TruncationRule::Union);
                assert_eq!(cal.raw.get(&Monomial::new(s.clone())).unwrap(), expected, "seed {seed} tau {tau} S {s:?}");
            }
        }
    }
}

#[test]
fn six_vertex_singleton_example() {
    // omega = sqrt(6) in floating point; the oracle uses the same double.
    let omega = 6f64.sqrt();
    for seed in 0..5u64 {
        let g = gen_gnp(6, 0.5, seed).unwrap();
        let params = CalibrationParams::new(omega, 2, 2).with_rule(TruncationRule::Strict);
        let cal = pe_calibrated::<Rational>(&g, &params, &Budget::default()).unwrap();
        let expected = naive(&g, &[1], &Rational::from_f64(omega), 2, TruncationRule::Strict);
        assert_eq!(cal.raw.get(&Monomial::var(1)).unwrap(), expected);
        let f = pe_calibrated::<f64>(&g, &params, &Budget::default()).unwrap();
        assert!((f.raw.get(&Monomial::var(1)).unwrap() - expected.to_f64()).abs() < 1e-12);
    }
}

#[test]
fn empty_edge_set_contributes_ratio() {
    // With only T = ∅ admitted the singleton value is exactly omega / n.
    let g = gen_gnp(6, 0.5, 9).unwrap();
    let params = CalibrationParams::new(3.0, 0, 1).with_rule(TruncationRule::Strict);
    let cal = pe_calibrated::<Rational>(&g, &params, &Budget::default()).unwrap();
    let half = Rational::from_i64(1) / Rational::from_i64(2);
    for v in 1..=6 {
        assert_eq!(cal.raw.get(&Monomial::var(v)).unwrap(), half);
    }
}
