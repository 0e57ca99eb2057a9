use std::f64::consts::PI;

use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qgk_core::bilinear::{antisymmetry_residual, pairing_first, pairing_second};
use qgk_core::decay::{moment_integral, RadialProfile};
use qgk_core::diagnostics::{energy_first, energy_second};
use qgk_core::lp::DyadicPartition;
use qgk_core::spectral::random::{band_limited, BandSpec};
use qgk_core::spectral::{
    forward_transform, inner_product, inverse_transform, project_jn, GridSpec, SpectralField,
};

fn field(n: usize, seed: u64, k_max: f64) -> SpectralField {
    let grid = GridSpec::new(n, 2.0 * PI).unwrap();
    let band = BandSpec {
        k_min: 1.0,
        k_max,
        s: 3.0,
        hs_norm: 1.0,
    };
    band_limited(grid, &band, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pairings_cancel(seed in any::<u64>(), k_max in 2.0f64..10.0) {
        let rho = field(32, seed, k_max);
        let zeta = field(32, seed ^ 0x9e37, k_max);
        prop_assert!(pairing_first(&rho, &zeta).unwrap().relative() <= 1e-12);
        prop_assert!(pairing_second(&rho, &zeta).unwrap().relative() <= 1e-12);
        prop_assert!(antisymmetry_residual(&rho, &zeta).unwrap() <= 1e-12);
    }

    #[test]
    fn transform_round_trip(seed in any::<u64>()) {
        let u = field(16, seed, 7.0);
        let back = forward_transform(&inverse_transform(&u)).unwrap();
        prop_assert!((&back - &u).max_abs() <= 1e-13 * u.max_abs());
    }

    #[test]
    fn energies_are_quadratic(seed in any::<u64>()) {
        let u = field(16, seed, 6.0);
        let two = u.scaled(2.0);
        prop_assert_eq!(energy_first(&two), 4.0 * energy_first(&u));
        prop_assert_eq!(energy_second(&two), 4.0 * energy_second(&u));
        prop_assert!(energy_first(&u) <= energy_second(&u));
    }

    #[test]
    fn blocks_reconstruct(seed in any::<u64>()) {
        let u = field(32, seed, 15.0);
        let lp = DyadicPartition::new(*u.grid());
        let mut sum = SpectralField::zeros(*u.grid());
        for j in lp.indices() {
            sum.axpy(1.0, &lp.dyadic_block(&u, j).unwrap()).unwrap();
        }
        prop_assert!((&sum - &u).max_abs() <= 1e-13 * u.max_abs());
    }

    #[test]
    fn projection_is_idempotent_and_self_adjoint(seed in any::<u64>(), cut in 0.5f64..120.0) {
        let u = field(16, seed, 7.0);
        let v = field(16, !seed, 7.0);
        let pu = project_jn(&u, cut);
        let twice = project_jn(&pu, cut);
        prop_assert_eq!(twice.coeffs(), pu.coeffs());
        let a = inner_product(&pu, &v).unwrap();
        let b = inner_product(&u, &project_jn(&v, cut)).unwrap();
        prop_assert!((a - b).abs() <= 1e-13 * (1.0 + a.abs()));
    }

    #[test]
    fn moments_decrease_in_time(width in 0.3f64..3.0, k in 0u32..4, t in 0.0f64..1e3) {
        let p = RadialProfile::gaussian(width).unwrap();
        let now = moment_integral(&p, k, 1.0, t).unwrap();
        let later = moment_integral(&p, k, 1.0, 2.0 * t + 1.0).unwrap();
        prop_assert!(later <= now);
    }
}
