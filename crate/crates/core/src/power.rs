use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::coeff::{CoeffSpaceSpec, CoeffVector};
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;

/// A polynomial `sum_alpha c_alpha z^alpha` in finitely many variables with
/// coefficients in `C^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerPoly {
    space: CoeffSpaceSpec,
    coeffs: BTreeMap<MultiIndex, CoeffVector>,
    width: usize,
}

impl PowerPoly {
    pub fn new(space: CoeffSpaceSpec) -> Self {
        Self {
            space,
            coeffs: BTreeMap::new(),
            width: 0,
        }
    }

    pub fn from_coeffs<I>(space: CoeffSpaceSpec, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, CoeffVector)>,
    {
        let mut p = Self::new(space);
        for (a, v) in coeffs {
            let shown = a.to_string();
            if p.insert(a, v)?.is_some() {
                return Err(Error::InvalidParameter(format!("duplicate multi-index {shown}")));
            }
        }
        Ok(p)
    }

    pub fn from_scalars<I>(coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Complex64)>,
    {
        Self::from_coeffs(
            CoeffSpaceSpec::scalar(),
            coeffs.into_iter().map(|(a, c)| (a, CoeffVector::scalar(c))),
        )
    }

    pub fn insert(&mut self, alpha: MultiIndex, value: CoeffVector) -> Result<Option<CoeffVector>> {
        if value.space() != self.space {
            return Err(Error::SpaceMismatch);
        }
        self.width = self.width.max(alpha.len());
        Ok(self.coeffs.insert(alpha, value))
    }

    pub fn space(&self) -> CoeffSpaceSpec {
        self.space
    }

    /// Number of variables the polynomial actually depends on.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, alpha: &MultiIndex) -> Option<&CoeffVector> {
        self.coeffs.get(alpha)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &CoeffVector)> + '_ {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constant_term(&self) -> CoeffVector {
        self.coeffs
            .get(&MultiIndex::zero())
            .cloned()
            .unwrap_or_else(|| CoeffVector::zeros(self.space))
    }

    /// Largest exponent of each of the `width` coordinates.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.width];
        for a in self.coeffs.keys() {
            for (j, e) in a.support() {
                out[j] = out[j].max(e);
            }
        }
        out
    }

    /// Largest total degree among stored monomials.
    pub fn degree(&self) -> u64 {
        self.coeffs.keys().map(|a| a.degree()).max().unwrap_or(0)
    }

    /// `P(z)`; `z` must have at least `width` coordinates.
    pub fn eval(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        if z.len() < self.width {
            return Err(Error::LengthMismatch {
                expected: self.width,
                got: z.len(),
            });
        }
        let plan = EvalPlan::new(self);
        let mut scratch = plan.scratch();
        Ok(plan.eval(z, &mut scratch).to_vec())
    }

    pub fn map_coeffs<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&MultiIndex, &CoeffVector) -> CoeffVector,
    {
        Self {
            space: self.space,
            coeffs: self.coeffs.iter().map(|(a, v)| (a.clone(), f(a, v))).collect(),
            width: self.width,
        }
    }

    /// Keeps the monomials accepted by `keep`; width is recomputed.
    pub fn filtered<F: Fn(&MultiIndex) -> bool>(&self, keep: F) -> Self {
        let coeffs: BTreeMap<_, _> = self
            .coeffs
            .iter()
            .filter(|(a, _)| keep(a))
            .map(|(a, v)| (a.clone(), v.clone()))
            .collect();
        let width = coeffs.keys().map(|a| a.len()).max().unwrap_or(0);
        Self {
            space: self.space,
            coeffs,
            width,
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: Complex64, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let mut out = self.clone();
        for (a, v) in &other.coeffs {
            out.width = out.width.max(a.len());
            out.coeffs
                .entry(a.clone())
                .or_insert_with(|| CoeffVector::zeros(self.space))
                .add_scaled(c, v)?;
        }
        Ok(out)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        self.map_coeffs(|_, v| v.scaled(c))
    }
}

/// Precomputed layout for evaluating one polynomial at many points.
#[derive(Debug, Clone)]
pub(crate) struct EvalPlan {
    dim: usize,
    width: usize,
    max_exp: Vec<u32>,
    offsets: Vec<usize>,
    terms: Vec<(Vec<(usize, u32)>, Vec<Complex64>)>,
}

#[derive(Debug, Clone)]
pub(crate) struct EvalScratch {
    pows: Vec<Complex64>,
    out: Vec<Complex64>,
}

impl EvalPlan {
    pub(crate) fn new(p: &PowerPoly) -> Self {
        let max_exp = p.max_exponents();
        let mut offsets = Vec::with_capacity(max_exp.len());
        let mut acc = 0;
        for &e in &max_exp {
            offsets.push(acc);
            acc += e as usize + 1;
        }
        let terms = p
            .iter()
            .map(|(a, v)| (a.support().collect(), v.entries().to_vec()))
            .collect();
        Self {
            dim: p.space().dim(),
            width: p.width(),
            max_exp,
            offsets,
            terms,
        }
    }

    pub(crate) fn width(&self) -> usize {
        self.width
    }

    pub(crate) fn scratch(&self) -> EvalScratch {
        let n = self
            .offsets
            .last()
            .map_or(0, |o| o + *self.max_exp.last().unwrap() as usize + 1);
        EvalScratch {
            pows: vec![Complex64::new(0.0, 0.0); n],
            out: vec![Complex64::new(0.0, 0.0); self.dim],
        }
    }

    /// Evaluates at `z` (at least `width` coordinates) into the scratch buffer.
    pub(crate) fn eval<'s>(&self, z: &[Complex64], scratch: &'s mut EvalScratch) -> &'s [Complex64] {
        for j in 0..self.width {
            let off = self.offsets[j];
            let mut w = Complex64::new(1.0, 0.0);
            for k in 0..=self.max_exp[j] as usize {
                scratch.pows[off + k] = w;
                w *= z[j];
            }
        }
        scratch.out.iter_mut().for_each(|o| *o = Complex64::new(0.0, 0.0));
        for (support, c) in &self.terms {
            let mut m = Complex64::new(1.0, 0.0);
            for &(j, e) in support {
                m *= scratch.pows[self.offsets[j] + e as usize];
            }
            for (o, a) in scratch.out.iter_mut().zip(c) {
                *o += a * m;
            }
        }
        &scratch.out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn width_tracks_longest_index() {
        let p = PowerPoly::from_scalars([(mi(&[1]), 1.0.into()), (mi(&[0, 0, 2]), 1.0.into())]).unwrap();
        assert_eq!(p.width(), 3);
        assert_eq!(p.max_exponents(), vec![1, 0, 2]);
        assert_eq!(PowerPoly::new(CoeffSpaceSpec::scalar()).width(), 0);
        assert_eq!(p.filtered(|a| a.within(2)).width(), 1);
    }

    #[test]
    fn eval_matches_direct_product() {
        let p = PowerPoly::from_scalars([
            (mi(&[]), Complex64::new(1.0, 0.0)),
            (mi(&[2, 1]), Complex64::new(0.5, -1.0)),
            (mi(&[0, 3]), Complex64::new(0.0, 2.0)),
        ])
        .unwrap();
        let z = [Complex64::new(0.3, 0.4), Complex64::new(-0.2, 0.7)];
        let direct = 1.0 + Complex64::new(0.5, -1.0) * z[0] * z[0] * z[1] + Complex64::new(0.0, 2.0) * z[1].powu(3);
        assert!((p.eval(&z).unwrap()[0] - direct).norm() < 1e-14);
        assert!(p.eval(&z[..1]).is_err());
    }
}
