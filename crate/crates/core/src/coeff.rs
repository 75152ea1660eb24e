//! Finite-dimensional coefficient spaces `(C^d, norm)`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Norm placed on `C^d`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormTag {
    L1,
    L2,
    Linf,
}

impl NormTag {
    pub fn apply(self, entries: &[Complex64]) -> f64 {
        match self {
            NormTag::L1 => entries.iter().map(|z| z.norm()).sum(),
            NormTag::L2 => {
                // scaled to avoid overflow for huge entries
                let scale = entries.iter().fold(0.0f64, |m, z| m.max(z.re.abs()).max(z.im.abs()));
                if scale == 0.0 || !scale.is_finite() {
                    return scale;
                }
                let s: f64 = entries.iter().map(|z| (z / scale).norm_sqr()).sum();
                scale * s.sqrt()
            }
            NormTag::Linf => entries.iter().fold(0.0, |m, z| m.max(z.norm())),
        }
    }
}

impl fmt::Display for NormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormTag::L1 => "l1",
            NormTag::L2 => "l2",
            NormTag::Linf => "linf",
        })
    }
}

impl FromStr for NormTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(NormTag::L1),
            "l2" => Ok(NormTag::L2),
            "linf" => Ok(NormTag::Linf),
            other => Err(Error::Parse(format!("unknown norm tag {other:?}"))),
        }
    }
}

/// The space `(C^d, norm)` standing in for a Banach space of coefficients.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffSpaceSpec {
    dim: usize,
    norm: NormTag,
}

impl CoeffSpaceSpec {
    pub fn new(dim: usize, norm: NormTag) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("coefficient dimension must be >= 1".into()));
        }
        Ok(Self { dim, norm })
    }

    /// Scalars, `C` with its modulus.
    pub fn scalar() -> Self {
        Self {
            dim: 1,
            norm: NormTag::L2,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm_tag(&self) -> NormTag {
        self.norm
    }

    /// Whether the norm comes from an inner product (Parseval applies).
    pub fn is_euclidean(&self) -> bool {
        self.norm == NormTag::L2 || self.dim == 1
    }

    pub fn norm_of(&self, entries: &[Complex64]) -> f64 {
        self.norm.apply(entries)
    }
}

/// An element of a [`CoeffSpaceSpec`].
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffVector {
    entries: Vec<Complex64>,
    space: CoeffSpaceSpec,
}

impl CoeffVector {
    pub fn new(entries: Vec<Complex64>, space: CoeffSpaceSpec) -> Result<Self> {
        if entries.len() != space.dim {
            return Err(Error::DimMismatch {
                expected: space.dim,
                got: entries.len(),
            });
        }
        Ok(Self { entries, space })
    }

    pub fn scalar(c: Complex64) -> Self {
        Self {
            entries: vec![c],
            space: CoeffSpaceSpec::scalar(),
        }
    }

    pub fn zeros(space: CoeffSpaceSpec) -> Self {
        Self {
            entries: vec![Complex64::new(0.0, 0.0); space.dim],
            space,
        }
    }

    /// Canonical basis vector `e_k` (0-based).
    pub fn basis(space: CoeffSpaceSpec, k: usize) -> Result<Self> {
        if k >= space.dim {
            return Err(Error::InvalidParameter(format!(
                "basis index {k} out of range for dimension {}",
                space.dim
            )));
        }
        let mut v = Self::zeros(space);
        v.entries[k] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn space(&self) -> CoeffSpaceSpec {
        self.space
    }

    pub fn norm(&self) -> f64 {
        self.space.norm_of(&self.entries)
    }

    /// Sum of squared moduli of the entries (the Euclidean norm squared).
    pub fn norm_sqr_l2(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            entries: self.entries.iter().map(|z| z * c).collect(),
            space: self.space,
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: Complex64, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += c * b;
        }
        Ok(())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(Complex64::new(-1.0, 0.0), other)?;
        Ok(out)
    }
}
