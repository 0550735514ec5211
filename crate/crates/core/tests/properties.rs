//! Property tests across modules on small random graphs.

use colorsos::config::Budget;
use colorsos::graph::gen_gnp;
use colorsos::pe::{pe_from_distribution, uniform_independent_distribution, PseudoExpectation};
use colorsos::poly::{ColorMonomial, ColorPolynomial, Monomial, Polynomial};
use colorsos::reduction::{cauchy_schwarz_check, check_positivity, tensor_eval, ColoringPE, IndexSpec};
use colorsos::spectral::{
    build_moment_matrix, certify_psd, covering_certificate, primed_coordinates, tensor_index, tensor_restricted_min_eig,
    to_primed_basis, PSD_TOL,
};
use colorsos::{Graph, Rational, Scalar};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..=7, 0u32..=10, any::<u64>()).prop_map(|(n, p, seed)| gen_gnp(n, p as f64 / 10.0, seed).unwrap())
}

fn weighted(g: &Graph, seed: u64) -> PseudoExpectation<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sets = g.enumerate_independent_sets(g.n());
    let raw: Vec<i64> = sets.iter().map(|_| rng.gen_range(0..=4)).collect();
    let total = raw.iter().sum::<i64>().max(1);
    let mut dist: Vec<(Vec<usize>, Rational)> =
        sets.into_iter().zip(&raw).map(|(s, &w)| (s, Rational::from_i64(w) / Rational::from_i64(total))).collect();
    if raw.iter().all(|&w| w == 0) {
        dist[0].1 = Rational::from_i64(1);
    }
    pe_from_distribution(g, g.n().min(4), &dist).unwrap()
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_degree: usize) -> Polynomial<Rational> {
    let terms = (0..rng.gen_range(1..=5)).map(|_| {
        let size = rng.gen_range(0..=max_degree.min(n));
        let vars = rand::seq::index::sample(rng, n, size).into_iter().map(|v| v + 1).collect();
        (Monomial::new(vars), Rational::from_i64(rng.gen_range(-4..=4)))
    });
    Polynomial::from_terms(n, terms).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn complement_is_an_involution(g in graph()) {
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn distribution_tables_are_psd_at_every_degree(g in graph(), seed in any::<u64>()) {
        let pe = weighted(&g, seed);
        for half in 0..=pe.d() / 2 {
            let m = build_moment_matrix(&pe, half, &Budget::default()).unwrap();
            prop_assert!(certify_psd(&m.matrix, PSD_TOL).unwrap().is_psd);
        }
    }

    #[test]
    fn singleton_sum_is_at_most_independence_number(g in graph(), seed in any::<u64>()) {
        let pe = weighted(&g, seed);
        let total = pe.singletons().into_iter().fold(Rational::from_i64(0), |a, b| a + b);
        let t = g.max_independent_set(40).unwrap().0;
        prop_assert!(total <= Rational::from_i64(t as i64));
    }

    #[test]
    fn quadratic_form_is_the_square_in_both_bases(g in graph(), seed in any::<u64>()) {
        let pe = weighted(&g, seed);
        let half = pe.d() / 2;
        let m = build_moment_matrix(&pe, half, &Budget::default()).unwrap();
        let primed = to_primed_basis(&m, &pe).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let f = random_poly(&mut rng, g.n(), half);
        let square = pe.eval(&f.multiply(&f).unwrap()).unwrap();
        prop_assert_eq!(m.matrix.quadratic_form(&m.coordinates(&f).unwrap()), square.clone());
        let v = primed_coordinates(&primed, &f, &pe).unwrap();
        prop_assert_eq!(primed.matrix.quadratic_form(&v), square);
    }

    #[test]
    fn tensor_factorises_over_colours(g in graph(), seed in any::<u64>(), k in 1usize..=3) {
        let pe = weighted(&g, seed);
        let n = g.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let mut product = ColorPolynomial::constant(n, k, Rational::from_i64(1));
        let mut expected = Rational::from_i64(1);
        for c in 1..=k {
            let f = random_poly(&mut rng, n, pe.d() / 2);
            let lifted = ColorPolynomial::from_terms(
                n,
                k,
                f.terms().map(|(m, v)| (ColorMonomial::new([(c, m.clone())]), v.clone())),
            ).unwrap();
            product = product.multiply(&lifted).unwrap();
            expected = expected * pe.eval(&f).unwrap();
        }
        let got = product.terms().fold(Rational::from_i64(0), |a, (m, v)| a + v.clone() * tensor_eval(&pe, m));
        prop_assert_eq!(got, expected);
        prop_assert_eq!(tensor_eval(&pe, &ColorMonomial::one()), Rational::from_i64(1));
    }

    #[test]
    fn restricted_eigenvalue_bounds_random_squares(g in graph(), seed in any::<u64>(), k in 1usize..=2) {
        let pe = weighted(&g, seed).convert::<f64>().unwrap();
        let budget = Budget::default();
        let cert = covering_certificate(&pe, &g, &budget).unwrap();
        let lambda = tensor_restricted_min_eig(&pe, &g, k, 2, &budget).unwrap();
        if cert.lambda > 0.0 {
            prop_assert!(lambda >= -1e-9);
        }
        let index = tensor_index(&g, k, pe.d() / 2, 2, budget.max_matrix_dim).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 3);
        let f = ColorPolynomial::from_terms(
            g.n(),
            k,
            (0..4).map(|_| (index[rng.gen_range(0..index.len())].clone(), rng.gen_range(-1.0..1.0))),
        ).unwrap();
        // Brute force: expand f² term by term and evaluate each monomial.
        let mut square = 0.0;
        for (a, x) in f.terms() {
            for (b, y) in f.terms() {
                square += x * y * tensor_eval(&pe, &a.union(b));
            }
        }
        prop_assert!(square >= lambda * f.l2_norm_sq() - 1e-9);
    }

    #[test]
    fn cauchy_schwarz_holds_where_positivity_does(g in graph(), seed in any::<u64>()) {
        let pe = weighted(&g, seed);
        if pe.d() < 2 {
            return Ok(());
        }
        let budget = Budget::default();
        let d = pe.d() - pe.d() % 2;
        let cpe = ColoringPE::with_degree(pe, 2, d).unwrap();
        let report = check_positivity(&cpe, &g, IndexSpec { max_cdeg: 1, max_total: Some(2) }, &budget).unwrap();
        prop_assume!(report.outcome.is_psd);
        let index = tensor_index(&g, 2, 1, 2, budget.max_matrix_dim).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 4);
        let mut pick = || ColorPolynomial::from_terms(
            g.n(),
            2,
            (0..3).map(|_| (index[rng.gen_range(0..index.len())].clone(), Rational::from_i64(rng.gen_range(-3..=3)))),
        ).unwrap();
        let (f, h) = (pick(), pick());
        prop_assert!(cauchy_schwarz_check(&cpe, &f, &h, 0.0).unwrap().pass);
    }
}

#[test]
fn uniform_tables_are_psd_on_all_small_classes() {
    for n in 1..=6 {
        for g in colorsos::graph::iso::nonisomorphic_graphs(n).unwrap() {
            let pe: PseudoExpectation<Rational> = pe_from_distribution(&g, n.min(4), &uniform_independent_distribution(&g)).unwrap();
            let m = build_moment_matrix(&pe, pe.d() / 2, &Budget::default()).unwrap();
            assert!(certify_psd(&m.matrix, PSD_TOL).unwrap().is_psd);
        }
    }
}
