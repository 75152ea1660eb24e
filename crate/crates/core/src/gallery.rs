//! Named example series and polynomial families.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{CoeffSpaceSpec, CoeffVector, NormTag};
use crate::dirichlet::DirichletPoly;
use crate::error::{Error, Result};

/// A rule producing a Dirichlet polynomial of a requested size.
pub trait PolyFamily: Sync {
    fn build(&self, size: u64) -> Result<DirichletPoly>;

    fn label(&self) -> String;
}

/// A fixed polynomial, independent of the requested size.
impl PolyFamily for DirichletPoly {
    fn build(&self, _size: u64) -> Result<DirichletPoly> {
        Ok(self.clone())
    }

    fn label(&self) -> String {
        "fixed".into()
    }
}

pub const GALLERY_NAMES: [&str; 4] = ["c0", "zeta_shift", "random_pm1", "random_unimodular"];

/// Default abscissa of the `zeta_shift` entry.
pub const DEFAULT_ZETA_SIGMA: f64 = 0.51;

/// Entries of the gallery. Every builder is deterministic; the random
/// entries draw `a_1, a_2, ...` in order from a ChaCha8 stream, so the
/// member of size `N` is the `N`-th partial sum of every larger member.
#[derive(Clone, Debug, PartialEq)]
pub enum GalleryEntry {
    /// `sum_{n <= N} e_n n^{-s}` in `(C^N, l_inf)`: every coefficient has
    /// norm one, yet the sup norm on the torus is one as well.
    C0,
    /// `a_n = n^{-sigma}`.
    ZetaShift { sigma: f64 },
    /// IID signs `a_n = +-1`.
    RandomPm1 { seed: u64 },
    /// IID `a_n = e^{i theta_n}`, `theta_n` uniform.
    RandomUnimodular { seed: u64 },
}

impl GalleryEntry {
    pub fn from_name(name: &str, seed: u64, sigma: f64) -> Result<Self> {
        match name {
            "c0" => Ok(Self::C0),
            "zeta_shift" => {
                if !sigma.is_finite() {
                    return Err(Error::InvalidParameter(format!("sigma must be finite, got {sigma}")));
                }
                Ok(Self::ZetaShift { sigma })
            }
            "random_pm1" => Ok(Self::RandomPm1 { seed }),
            "random_unimodular" => Ok(Self::RandomUnimodular { seed }),
            other => Err(Error::InvalidParameter(format!(
                "unknown gallery entry {other:?}; expected one of {GALLERY_NAMES:?}"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::C0 => "c0",
            Self::ZetaShift { .. } => "zeta_shift",
            Self::RandomPm1 { .. } => "random_pm1",
            Self::RandomUnimodular { .. } => "random_unimodular",
        }
    }
}

impl fmt::Display for GalleryEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ZetaShift { sigma } => write!(f, "zeta_shift(sigma={sigma})"),
            Self::RandomPm1 { seed } | Self::RandomUnimodular { seed } => write!(f, "{}(seed={seed})", self.name()),
            Self::C0 => f.write_str("c0"),
        }
    }
}

impl PolyFamily for GalleryEntry {
    fn build(&self, size: u64) -> Result<DirichletPoly> {
        if size == 0 {
            return Err(Error::InvalidParameter("gallery size must be >= 1".into()));
        }
        match *self {
            Self::C0 => {
                let dim = usize::try_from(size).map_err(|_| Error::InvalidParameter("c0 size too large".into()))?;
                let space = CoeffSpaceSpec::new(dim, NormTag::Linf)?;
                DirichletPoly::from_coeffs(
                    space,
                    (1..=size)
                        .map(|n| Ok((n, CoeffVector::basis(space, n as usize - 1)?)))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            Self::ZetaShift { sigma } => DirichletPoly::from_reals((1..=size).map(|n| (n, (n as f64).powf(-sigma)))),
            Self::RandomPm1 { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                DirichletPoly::from_reals((1..=size).map(|n| (n, if rng.gen::<bool>() { 1.0 } else { -1.0 })))
            }
            Self::RandomUnimodular { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                DirichletPoly::from_scalars(
                    (1..=size).map(|n| (n, Complex64::cis(std::f64::consts::TAU * rng.gen::<f64>()))),
                )
            }
        }
    }

    fn label(&self) -> String {
        self.to_string()
    }
}

/// Gallery entry by name with seed 0 and the default `sigma`.
pub fn gallery(name: &str, size: u64) -> Result<DirichletPoly> {
    GalleryEntry::from_name(name, 0, DEFAULT_ZETA_SIGMA)?.build(size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::norm_hinf_grid;

    #[test]
    fn c0_entry() {
        let d = gallery("c0", 3).unwrap();
        let space = CoeffSpaceSpec::new(3, NormTag::Linf).unwrap();
        assert_eq!(d.space(), space);
        for n in 1..=3u64 {
            assert_eq!(d.get(n).unwrap(), &CoeffVector::basis(space, n as usize - 1).unwrap());
        }
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn c0_sup_norm_is_one() {
        for size in 1..=10 {
            let d = gallery("c0", size).unwrap();
            assert!(d.iter().all(|(_, v)| v.norm() == 1.0));
            assert_eq!(norm_hinf_grid(&d, 4).unwrap().value, 1.0);
        }
    }

    #[test]
    fn zeta_shift_entry() {
        let d = GalleryEntry::from_name("zeta_shift", 0, 0.51)
            .unwrap()
            .build(5)
            .unwrap();
        for n in 1..=5u64 {
            assert_eq!(d.get(n).unwrap().entries()[0].re, (n as f64).powf(-0.51));
        }
    }

    #[test]
    fn random_entries_are_reproducible_and_nested() {
        let a = GalleryEntry::RandomPm1 { seed: 9 }.build(50).unwrap();
        let b = GalleryEntry::RandomPm1 { seed: 9 }.build(50).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|(_, v)| v.entries()[0].re.abs() == 1.0));
        let c = GalleryEntry::RandomPm1 { seed: 9 }.build(20).unwrap();
        assert_eq!(crate::partial_sum(&a, 20), c);
        assert_ne!(GalleryEntry::RandomPm1 { seed: 10 }.build(50).unwrap(), a);
        let u = GalleryEntry::RandomUnimodular { seed: 1 }.build(30).unwrap();
        assert!(u.iter().all(|(_, v)| (v.norm() - 1.0).abs() < 1e-15));
    }

    #[test]
    fn unknown_name_and_zero_size() {
        assert!(gallery("zeta", 3).is_err());
        assert!(gallery("c0", 0).is_err());
    }
}
