use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::coeff::{CoeffSpaceSpec, CoeffVector};
use crate::error::{Error, Result};

/// A Dirichlet polynomial `sum_n a_n n^{-s}` with coefficients in `C^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct DirichletPoly {
    space: CoeffSpaceSpec,
    coeffs: BTreeMap<u64, CoeffVector>,
}

impl DirichletPoly {
    pub fn new(space: CoeffSpaceSpec) -> Self {
        Self {
            space,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_coeffs<I>(space: CoeffSpaceSpec, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, CoeffVector)>,
    {
        let mut d = Self::new(space);
        for (n, v) in coeffs {
            if d.insert(n, v)?.is_some() {
                return Err(Error::InvalidParameter(format!("duplicate coefficient index {n}")));
            }
        }
        Ok(d)
    }

    /// Scalar polynomial from `(n, a_n)` pairs.
    pub fn from_scalars<I>(coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, Complex64)>,
    {
        Self::from_coeffs(
            CoeffSpaceSpec::scalar(),
            coeffs.into_iter().map(|(n, c)| (n, CoeffVector::scalar(c))),
        )
    }

    /// Scalar polynomial with real coefficients.
    pub fn from_reals<I>(coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, f64)>,
    {
        Self::from_scalars(coeffs.into_iter().map(|(n, c)| (n, Complex64::new(c, 0.0))))
    }

    /// Sets `a_n`, returning the previous value.
    pub fn insert(&mut self, n: u64, value: CoeffVector) -> Result<Option<CoeffVector>> {
        if n == 0 {
            return Err(Error::ZeroIndex);
        }
        if value.space() != self.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.coeffs.insert(n, value))
    }

    pub fn space(&self) -> CoeffSpaceSpec {
        self.space
    }

    pub fn get(&self, n: u64) -> Option<&CoeffVector> {
        self.coeffs.get(&n)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &CoeffVector)> + '_ {
        self.coeffs.iter().map(|(&n, v)| (n, v))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest stored index `N` (0 for the empty polynomial).
    pub fn max_index(&self) -> u64 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    /// `sum_n a_n n^{-s}`.
    pub fn eval(&self, s: Complex64) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.space.dim()];
        for (&n, v) in &self.coeffs {
            let w = (-s * (n as f64).ln()).exp();
            for (o, a) in out.iter_mut().zip(v.entries()) {
                *o += a * w;
            }
        }
        out
    }

    /// `D(it)`, the value on the imaginary axis.
    pub fn eval_vertical(&self, t: f64) -> Vec<Complex64> {
        self.eval(Complex64::new(0.0, t))
    }

    /// Replaces every coefficient by `f(n, a_n)`.
    pub fn map_coeffs<F>(&self, mut f: F) -> Self
    where
        F: FnMut(u64, &CoeffVector) -> CoeffVector,
    {
        Self {
            space: self.space,
            coeffs: self.coeffs.iter().map(|(&n, v)| (n, f(n, v))).collect(),
        }
    }

    /// `self + c * other`, keeping the union of supports.
    pub fn add_scaled(&self, c: Complex64, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let mut out = self.clone();
        for (&n, v) in &other.coeffs {
            out.coeffs
                .entry(n)
                .or_insert_with(|| CoeffVector::zeros(self.space))
                .add_scaled(c, v)?;
        }
        Ok(out)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        self.map_coeffs(|_, v| v.scaled(c))
    }

    /// Keeps only the coefficients with `n` in `range`.
    pub fn filtered<F: Fn(u64) -> bool>(&self, keep: F) -> Self {
        Self {
            space: self.space,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&n, _)| keep(n))
                .map(|(&n, v)| (n, v.clone()))
                .collect(),
        }
    }
}
