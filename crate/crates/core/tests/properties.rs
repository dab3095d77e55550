use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

use jade::baselines::cumulants::cumulants_to_moments;
use jade::characteristic::characteristic_function;
use jade::estimator::{chebyshev_sum, jade_density_grid_with, Summation};
use jade::moments::{moments_to_chebyshev_f64, restore_moments};
use jade::spectral::spectral_decomposition;
use jade::{
    chebyshev_coefficient_matrix, gram_charlier, hamiltonian_chebyshev_expectations, hamiltonian_moments,
    jade_density, jade_density_grid, moments_from_pdf, moments_to_chebyshev, moments_to_cumulants,
    rescale_moments, uniform_moments, AffineDomainMap, Bandwidth, ChebyshevExpectations, CumulantVector, Grid, Kde,
    MomentVector, QuadratureConfig, SpectralProblem,
};
use jade::corpus::GaussianMixture;

fn expectations(values: Vec<f64>) -> ChebyshevExpectations {
    ChebyshevExpectations::new(values)
}

/// Chebyshev expectations of a random distribution: `<T_0>` positive,
/// the rest bounded by one.
fn arb_expectations(max_order: usize) -> impl Strategy<Value = ChebyshevExpectations> {
    (0.5f64..2.0, prop::collection::vec(-1.0f64..1.0, 0..=max_order))
        .prop_map(|(c0, rest)| expectations(std::iter::once(c0).chain(rest).collect()))
}

fn arb_problem() -> impl Strategy<Value = SpectralProblem> {
    (2usize..=12, any::<u64>()).prop_map(|(dim, seed)| SpectralProblem::random(dim, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn coefficient_rows_reproduce_cosines(n in 0usize..=64, theta in 0.0f64..PI) {
        let rows = chebyshev_coefficient_matrix(64);
        let x = theta.cos();
        let xr = BigRational::from_float(x).unwrap();
        let mut acc = BigRational::zero();
        for c in rows.row(n).iter().rev() {
            acc = acc * &xr + BigRational::from_integer(c.clone());
        }
        // the rounded cosine moves T_n by at most n^2 ulps
        let expected = (n as f64 * x.acos()).cos();
        prop_assert!((acc.to_f64().unwrap() - expected).abs() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalization_equals_zeroth_expectation(c in arb_expectations(200)) {
        let grid = Grid::chebyshev(2001);
        let est = jade_density_grid(&c, &grid, &AffineDomainMap::identity());
        prop_assert!((est.mass() - c.values()[0]).abs() <= 1e-10 * c.values()[0].max(1.0));
    }

    #[test]
    fn chebyshev_sum_is_continuous_at_the_endpoints(c in arb_expectations(60)) {
        let coeffs = c.series_coefficients();
        let at_one: f64 = coeffs.iter().sum();
        let at_minus_one: f64 = coeffs.iter().enumerate().map(|(n, v)| if n % 2 == 0 { *v } else { -v }).sum();
        // Markov's inequality bounds |S'| by N^2 sum |a_n| on [-1, 1]
        let n = coeffs.len() as f64 - 1.0;
        let total: f64 = coeffs.iter().map(|v| v.abs()).sum();
        for k in 1..=12 {
            let gap = 10f64.powi(-k);
            let x = 1.0 - gap;
            let bound = gap * n * n * total + 1e-13 * total;
            prop_assert!((chebyshev_sum(&c, x) - at_one).abs() <= bound);
            prop_assert!((chebyshev_sum(&c, -x) - at_minus_one).abs() <= bound);
        }
        // the density itself times sqrt(1 - x^2) is the same bounded sum
        let x = 0.999_999;
        let scaled = jade_density(&c, x).unwrap() * PI * (1.0 - x * x).sqrt();
        prop_assert!((scaled - chebyshev_sum(&c, x)).abs() < 1e-9);
    }

    #[test]
    fn clenshaw_matches_naive_summation(values in prop::collection::vec(-1.0f64..1.0, 101)) {
        let c = expectations(values);
        let grid = Grid::uniform(1000);
        let map = AffineDomainMap::identity();
        let a = jade_density_grid_with(&c, &grid, &map, Summation::Clenshaw);
        let b = jade_density_grid_with(&c, &grid, &map, Summation::Naive);
        for ((x, u), v) in grid.points().iter().zip(&a.values).zip(&b.values) {
            let w = (1.0 - x * x).sqrt();
            prop_assert!((u - v).abs() * w < 1e-11, "x={x}");
        }
    }

    #[test]
    fn grid_matches_pointwise(c in arb_expectations(100)) {
        let grid = Grid::chebyshev(257);
        let est = jade_density_grid(&c, &grid, &AffineDomainMap::identity());
        for (&x, v) in grid.points().iter().zip(&est.values) {
            let p = jade_density(&c, x).unwrap();
            prop_assert!((v - p).abs() <= 1e-13 * p.abs().max(1.0));
        }
    }

    #[test]
    fn characteristic_function_is_hermitian(c in arb_expectations(40), t in -60.0f64..60.0) {
        let plus = characteristic_function(&c, t);
        let minus = characteristic_function(&c, -t);
        prop_assert!((minus - plus.conj()).norm() < 1e-14);
    }

    #[test]
    fn rescale_round_trip_is_exact(
        nums in prop::collection::vec(-1000i64..1000, 1..12),
        a in -5.0f64..5.0,
        width in 0.01f64..10.0,
    ) {
        let b = a + width;
        let values: Vec<BigRational> = nums
            .iter()
            .enumerate()
            .map(|(k, &p)| BigRational::new(BigInt::from(p), BigInt::from(k as i64 + 7)))
            .collect();
        let m = MomentVector::exact(values.clone(), (a, b)).unwrap();
        let map = AffineDomainMap::new(a, b).unwrap();
        let back = restore_moments(&rescale_moments(&m, &map).unwrap(), &map).unwrap();
        prop_assert_eq!(back.values(), values.as_slice());
        prop_assert_eq!(back.domain(), (a, b));
    }

    #[test]
    fn cumulants_invert_to_moments(
        atoms in prop::collection::vec((-1.0f64..1.0, 0.1f64..1.0), 2..6),
        count in 2usize..=12,
    ) {
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        let moments: Vec<f64> = (0..=count)
            .map(|n| atoms.iter().map(|(x, w)| w / total * x.powi(n as i32)).sum())
            .collect();
        let m = MomentVector::from_f64(&moments, (-1.0, 1.0)).unwrap();
        let k = moments_to_cumulants(&m, count).unwrap();
        let back = cumulants_to_moments(&k);
        for (x, y) in back.iter().zip(&moments) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn gram_charlier_without_corrections_is_gaussian(
        mean in -3.0f64..3.0,
        var in 0.05f64..4.0,
        x in -6.0f64..6.0,
        extra in 0usize..8,
    ) {
        let mut kappa = vec![mean, var];
        kappa.resize(2 + extra, 0.0);
        let k = CumulantVector::new(kappa).unwrap();
        let z = (x - mean) / var.sqrt();
        let phi = (-0.5 * z * z).exp() / (2.0 * PI * var).sqrt();
        prop_assert!((gram_charlier(&k, x).unwrap() - phi).abs() <= 1e-14);
    }

    #[test]
    fn kde_is_non_negative_and_lipschitz(
        samples in prop::collection::vec(-1.0f64..1.0, 2..200),
        xs in prop::collection::vec(-1.5f64..1.5, 20),
    ) {
        prop_assume!(samples.iter().any(|s| (s - samples[0]).abs() > 1e-3));
        let kde = Kde::new(&samples, Bandwidth::Silverman).unwrap();
        let h = kde.bandwidth();
        // |phi'| <= 1/sqrt(2 pi e), so the estimate is Lipschitz with this constant
        let lip = 1.0 / (h * h * (2.0 * PI * std::f64::consts::E).sqrt());
        for &x in &xs {
            let (v, w) = (kde.value(x), kde.value(x + 1e-4));
            prop_assert!(v >= 0.0 && w >= 0.0);
            prop_assert!((v - w).abs() <= lip * 1e-4 * (1.0 + 1e-9) + 1e-15);
        }
    }

    #[test]
    fn hamiltonian_moments_are_real(p in arb_problem(), order in 0usize..=40) {
        // hamiltonian_moments rejects any imaginary residue above 1e-10
        prop_assert!(hamiltonian_moments(&p, order).is_ok());
    }

    /// Corpus-scale problems: levels spread over the whole interval, so the
    /// monomial path is still well conditioned at order 20.
    #[test]
    fn monomial_and_recurrence_paths_agree(dim in 16usize..=64, seed in any::<u64>(), order in 0usize..=20) {
        let p = SpectralProblem::random(dim, seed).unwrap();
        let m = hamiltonian_moments(&p, order).unwrap();
        let map = AffineDomainMap::new(m.domain().0, m.domain().1).unwrap();
        let monomial = moments_to_chebyshev(&rescale_moments(&m, &map).unwrap(), order).unwrap();
        let recurrence = hamiltonian_chebyshev_expectations(&p, &map, order).unwrap();
        for (a, b) in monomial.values().iter().zip(recurrence.values()) {
            prop_assert!((a - b).abs() < 1e-6);
        }
    }

    #[test]
    fn eigenbasis_weights_sum_to_one(p in arb_problem()) {
        let (_, weights) = spectral_decomposition(&p).unwrap();
        prop_assert!((weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn quadrature_moments_give_bounded_expectations(
        means in prop::collection::vec(-0.9f64..0.9, 1..4),
        sigma in 0.05f64..0.4,
        order in 1usize..=16,
    ) {
        let weights = vec![1.0 / means.len() as f64; means.len()];
        let g = GaussianMixture::truncated(weights, means, sigma).unwrap();
        let config = QuadratureConfig { digits: 2 * order as u32 + 16, use_closed_form: false };
        let m = moments_from_pdf(&g, (-1.0, 1.0), order, config).unwrap();
        let c = moments_to_chebyshev(&m, order).unwrap();
        for v in c.values() {
            prop_assert!(v.abs() <= 1.0 + 1e-9);
        }
    }
}

#[test]
fn double_and_exact_transforms_agree_at_low_order() {
    for order in 0..=15 {
        let m = uniform_moments(order);
        let exact = moments_to_chebyshev(&m, order).unwrap();
        let double = moments_to_chebyshev_f64(&m.values_f64(), order).unwrap();
        for (a, b) in exact.values().iter().zip(&double) {
            assert!((a - b).abs() < 1e-8, "order {order}");
        }
    }
}
