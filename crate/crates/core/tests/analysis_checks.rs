mod common;

use common::*;
use dirichlet_hardy::analysis::{self, AllLinear, C0Family, CriterionOptions, UnitLinear, Verdict};
use dirichlet_hardy::{gallery, norms, CoeffSpaceSpec, Method, NormTag, SamplerConfig};
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn c0_gallery_lifts_to_c0_family() {
    let d = gallery::gallery("c0", 8).unwrap();
    let lifted = dirichlet_hardy::bohr_lift(&d).unwrap();
    let family = analysis::materialize(&C0Family { dim: 8 }, 8, 12).unwrap();
    assert_eq!(lifted, family);
    assert!(d.iter().all(|(_, a)| a.norm() == 1.0));
    assert!((norms::norm_hinf_grid(&d, 8).unwrap().value - 1.0).abs() < 1e-12);
}

#[test]
fn criterion_with_monte_carlo_norms() {
    let cfg = SamplerConfig::iid(4000, 5).unwrap();
    let r = analysis::hilbert_criterion(&UnitLinear { k_max: 3 }, 4.0, 6, &cfg, &CriterionOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::BoundedSoFar);
    // f_1 is a single monomial and is evaluated exactly
    assert_eq!(r.per_m[0].norm.method, Method::ExactParseval);
    assert!(r.per_m[1..]
        .iter()
        .all(|row| row.norm.method == Method::TorusMc && row.norm.seed == 5));
}

#[test]
fn all_linear_grows_like_square_root() {
    let r = analysis::hilbert_criterion(
        &AllLinear,
        2.0,
        30,
        &SamplerConfig::default(),
        &CriterionOptions::default(),
    )
    .unwrap();
    assert_eq!(r.verdict, Verdict::DivergentTrend);
    for row in &r.per_m {
        assert!((row.norm.value - (row.m as f64).sqrt()).abs() < 1e-12);
    }
}

#[test]
fn pointwise_bound_rejects_non_euclidean() {
    let p = random_power(
        &mut rng(1),
        2,
        2,
        CoeffSpaceSpec::new(2, NormTag::Linf).unwrap(),
        4,
        true,
    );
    assert!(analysis::pointwise_eval_bound_h2(&p, &[Complex64::new(0.1, 0.0); 2]).is_err());
}

proptest! {
    #[test]
    fn stolz_identity_on_random_points(eps in 1e-9f64..1e3, t in -1e4f64..1e4) {
        let (lhs, rhs) = analysis::stolz_ratio(eps, t).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs);
        prop_assert!(rhs >= 1.0 - 1e-15);
    }

    #[test]
    fn cayley_maps_disc_to_half_plane(re in -0.999f64..0.999, im in -0.999f64..0.999) {
        let z = Complex64::new(re, im);
        prop_assume!(z.norm() < 0.999);
        let s = analysis::cayley(z).unwrap();
        prop_assert!(s.re > 0.0);
        prop_assert!((analysis::cayley_inv(s).unwrap() - z).norm() <= 1e-12);
    }

    #[test]
    fn pointwise_bound_holds(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let p = random_power(&mut rng, 3, 4, CoeffSpaceSpec::new(2, NormTag::L2).unwrap(), 10, true);
        let z = disc_point(&mut rng, 3, 0.99);
        let (v, b) = analysis::pointwise_eval_bound_h2(&p, &z).unwrap();
        prop_assert!(v <= b * (1.0 + 1e-12));
    }

    #[test]
    fn khintchine_increments_are_tails(seed in any::<u64>(), n in 1usize..30, extra in 1usize..30) {
        let mut rng = rng(seed);
        let xi: Vec<Complex64> = (0..60).map(|_| complex(&mut rng)).collect();
        let m = n + extra;
        let inc = analysis::khintchine_increment(&xi, n, m).unwrap();
        let tail = xi[n..m].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        prop_assert!((inc - tail).abs() <= 1e-12 * tail.max(1e-300));
    }
}
