mod common;

use common::*;
use dirichlet_hardy::norms;
use dirichlet_hardy::translations::{self, TwistPoint};
use dirichlet_hardy::{CoeffSpaceSpec, DirichletPoly, NormTag, SamplerConfig};
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn twist_rejects_short_points_and_non_unimodular_coordinates() {
    let d = DirichletPoly::from_reals([(1, 1.0), (5, 1.0)]).unwrap();
    assert!(translations::twist(&d, &TwistPoint::from_angles(&[0.1, 0.2])).is_err());
    assert!(TwistPoint::new(vec![Complex64::new(0.5, 0.0)]).is_err());
}

#[test]
fn mc_profile_is_monotone_and_below_hp_norm() {
    let d = DirichletPoly::from_reals([(1, 1.0), (2, 1.0), (6, -0.5)]).unwrap();
    let cfg = SamplerConfig::iid(20_000, 9).unwrap();
    let rows = translations::eps_norm_profile(&d, 4.0, &translations::default_eps_grid(), &cfg).unwrap();
    let h4 = h4_exact(&d);
    for w in rows.windows(2) {
        assert!(w[1].1.value >= w[0].1.value);
    }
    let last = &rows.last().unwrap().1;
    assert!((last.value - h4).abs() <= 4.0 * last.std_error + 1e-4);
}

#[test]
fn hplus_matches_plain_norm() {
    let d = dense_scalar(&mut rng(3), 25);
    let plus = translations::hplus_norm(&d, 2.0, &SamplerConfig::default()).unwrap();
    assert_eq!(plus, norms::norm_h2_exact(&d).unwrap());
    let mc = translations::hplus_norm(&d, 3.0, &SamplerConfig::iid(5000, 1).unwrap()).unwrap();
    assert!(mc.value > 0.0);
}

proptest! {
    #[test]
    fn lattice_twist_preserves_grid_sup(seed in any::<u64>(), steps in prop::collection::vec(0u32..8, 5)) {
        let mut rng = rng(seed);
        let d = { let space = random_space(&mut rng, 3); random_dirichlet(&mut rng, 12, space, 6) };
        // rotating by multiples of 2 pi / 8 maps the 8-point lattice onto itself
        let angles: Vec<f64> = steps.iter().map(|&k| std::f64::consts::TAU * k as f64 / 8.0).collect();
        let twisted = translations::twist(&d, &TwistPoint::from_angles(&angles)).unwrap();
        let a = norms::norm_hinf_grid(&d, 8).unwrap().value;
        let b = norms::norm_hinf_grid(&twisted, 8).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
    }

    #[test]
    fn translation_composes_additively(seed in any::<u64>(), a in 0.0f64..2.0, b in 0.0f64..2.0, t in -50.0f64..50.0) {
        let mut rng = rng(seed);
        let d = random_dirichlet(&mut rng, 200, CoeffSpaceSpec::new(2, NormTag::L2).unwrap(), 10);
        let two = translations::translate(&translations::translate(&d, Complex64::new(a, t)), b.into());
        let one = translations::translate(&d, Complex64::new(a + b, t));
        for ((_, x), (_, y)) in two.iter().zip(one.iter()) {
            prop_assert!(x.sub(y).unwrap().norm() <= 1e-13 * (1.0 + x.norm()));
        }
    }
}
