mod common;

use common::*;
use dirichlet_hardy::poisson::{self, RadiusVector};
use dirichlet_hardy::{CoeffSpaceSpec, MultiIndex, NormTag, PowerPoly, SamplerConfig};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

#[test]
fn kernel_is_positive_with_unit_mass() {
    let mut rng = rng(1);
    for m in 1..=3 {
        let z: Vec<Complex64> = (0..m)
            .map(|_| Complex64::cis(rng.gen_range(0.0..std::f64::consts::TAU)))
            .collect();
        let r = RadiusVector::new((0..m).map(|_| rng.gen_range(0.0..0.95)).collect()).unwrap();
        let n = 100_000;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..n {
            let w: Vec<Complex64> = (0..m)
                .map(|_| Complex64::cis(rng.gen_range(0.0..std::f64::consts::TAU)))
                .collect();
            let k = poisson::kernel_m(&w, &z, &r).unwrap();
            assert!(k >= 0.0);
            sum += k;
            sum_sq += k * k;
        }
        let mean = sum / n as f64;
        let se = ((sum_sq / n as f64 - mean * mean) / n as f64).sqrt();
        assert!((mean - 1.0).abs() <= 4.0 * se, "m = {m}: mean {mean} se {se}");
    }
}

#[test]
fn numeric_convolution_requires_fine_grid_and_small_width() {
    let p = PowerPoly::from_scalars([(MultiIndex::new(vec![3]), Complex64::new(1.0, 0.0))]).unwrap();
    let r = RadiusVector::uniform(0.5, 1).unwrap();
    assert!(poisson::poisson_convolve_numeric(&p, &r, 7).is_err());
    assert!(poisson::poisson_convolve_numeric(&p, &r, 64).is_ok());
    let wide = PowerPoly::from_scalars([(MultiIndex::new(vec![0, 0, 0, 0, 1]), Complex64::new(1.0, 0.0))]).unwrap();
    assert!(poisson::poisson_convolve_numeric(&wide, &RadiusVector::uniform(0.5, 5).unwrap(), 8).is_err());
}

#[test]
fn zero_radius_keeps_constant_term() {
    let mut rng = rng(2);
    let p = random_power(&mut rng, 3, 3, CoeffSpaceSpec::new(2, NormTag::L2).unwrap(), 10, true);
    let r = RadiusVector::uniform(0.0, p.width()).unwrap();
    let conv = poisson::poisson_convolve_exact(&p, &r).unwrap();
    for (a, v) in conv.iter() {
        if a.is_zero() {
            assert_eq!(v, &p.constant_term());
        } else {
            assert!(v.is_zero());
        }
    }
}

#[test]
fn numeric_matches_exact_for_vector_coefficients() {
    let mut rng = rng(3);
    for width in 1..=3 {
        let space = CoeffSpaceSpec::new(3, NormTag::Linf).unwrap();
        let p = random_power(&mut rng, width, 4, space, 12, true);
        let r = RadiusVector::new((0..p.width()).map(|_| rng.gen_range(0.0..0.7)).collect()).unwrap();
        let exact = poisson::poisson_convolve_exact(&p, &r).unwrap();
        let numeric = poisson::poisson_convolve_numeric(&p, &r, 128).unwrap();
        let diff = exact.add_scaled((-1.0).into(), &numeric).unwrap();
        assert!(diff.iter().all(|(_, v)| v.norm() < 1e-10));
    }
}

#[test]
fn aliasing_bound_covers_coarse_grid_error() {
    let mut rng = rng(11);
    for width in 1..=3 {
        let p = random_power(&mut rng, width, 3, CoeffSpaceSpec::scalar(), 10, true);
        let r = RadiusVector::new((0..p.width()).map(|_| rng.gen_range(0.3..0.8)).collect()).unwrap();
        let exact = poisson::poisson_convolve_exact(&p, &r).unwrap();
        for grid in [8, 12, 16, 24] {
            let numeric = poisson::poisson_convolve_numeric(&p, &r, grid).unwrap();
            let gap = exact
                .add_scaled((-1.0).into(), &numeric)
                .unwrap()
                .iter()
                .map(|(_, v)| v.norm())
                .fold(0.0, f64::max);
            let bound = poisson::aliasing_bound(&p, &r, grid).unwrap();
            assert!(
                gap <= bound + 1e-12,
                "width {width} grid {grid}: gap {gap} > bound {bound}"
            );
        }
    }
}

#[test]
fn aliasing_bound_is_attained_by_a_monomial() {
    // z^1 with G = 8: the sampled weight at frequency 1 is r + (r^9 + r^7) / (1 - r^8).
    let p = PowerPoly::from_scalars([(MultiIndex::new(vec![1]), Complex64::new(1.0, 0.0))]).unwrap();
    let r = RadiusVector::uniform(0.6, 1).unwrap();
    let numeric = poisson::poisson_convolve_numeric(&p, &r, 8).unwrap();
    let got = numeric.get(&MultiIndex::new(vec![1])).unwrap().norm();
    let expected = 0.6 + (0.6f64.powi(9) + 0.6f64.powi(7)) / (1.0 - 0.6f64.powi(8));
    assert!((got - expected).abs() < 1e-12, "{got} vs {expected}");
    assert!(got - 0.6 <= poisson::aliasing_bound(&p, &r, 8).unwrap());
}

proptest! {
    #[test]
    fn l2_contraction_is_exact(seed in any::<u64>(), r in 0.0f64..1.0) {
        let mut rng = rng(seed);
        let p = random_power(&mut rng, 4, 3, CoeffSpaceSpec::new(2, NormTag::L2).unwrap(), 10, true);
        let radii = RadiusVector::uniform(r, p.width()).unwrap();
        let check = poisson::contraction_check(&p, &radii, 2.0, &SamplerConfig::default()).unwrap();
        prop_assert!(check.lhs.value <= check.rhs.value);
    }

    #[test]
    fn radii_outside_unit_interval_are_rejected(r in prop_oneof![-10.0f64..0.0, 1.0f64..10.0]) {
        prop_assert!(RadiusVector::new(vec![0.5, r]).is_err());
    }
}
