//! The Bohr correspondence `n = p^alpha` between Dirichlet polynomials and
//! polynomials on the polytorus.

use std::sync::Arc;

use crate::dirichlet::DirichletPoly;
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::power::PowerPoly;
use crate::sieve::{self, PrimeTable};

/// Factorizes integers up to a fixed bound against one prime-table snapshot.
#[derive(Debug, Clone)]
pub struct Factorizer {
    table: Arc<PrimeTable>,
    bound: u64,
}

impl Factorizer {
    /// A factorizer valid for every `n <= bound`.
    pub fn new(bound: u64) -> Result<Self> {
        Ok(Self {
            table: sieve::covering(bound.max(2))?,
            bound,
        })
    }

    pub fn factorize(&self, n: u64) -> Result<MultiIndex> {
        if n == 0 {
            return Err(Error::ZeroIndex);
        }
        if n > self.bound {
            return Err(Error::InvalidParameter(format!(
                "{n} exceeds the factorizer bound {}",
                self.bound
            )));
        }
        let mut exps: Vec<u32> = Vec::new();
        let mut rem = n;
        for (j, &p) in self.table.primes().iter().enumerate() {
            if p * p > rem {
                break;
            }
            if rem % p == 0 {
                let mut e = 0;
                while rem % p == 0 {
                    rem /= p;
                    e += 1;
                }
                if exps.len() <= j {
                    exps.resize(j + 1, 0);
                }
                exps[j] = e;
            }
        }
        if rem > 1 {
            let j = self
                .table
                .position(rem)
                .expect("cofactor above sqrt(n) is a prime below the sieve limit");
            if exps.len() <= j {
                exps.resize(j + 1, 0);
            }
            exps[j] += 1;
        }
        Ok(MultiIndex::new(exps))
    }
}

/// The exponent vector `alpha` with `p^alpha = n`.
pub fn factorize(n: u64) -> Result<MultiIndex> {
    Factorizer::new(n)?.factorize(n)
}

/// `p^alpha`, failing on u64 overflow.
pub fn index_of(alpha: &MultiIndex) -> Result<u64> {
    let table = sieve::with_count(alpha.len())?;
    let overflow = || Error::IndexOverflow(alpha.to_string());
    let mut n: u64 = 1;
    for (j, e) in alpha.support() {
        let pe = table.primes()[j].checked_pow(e).ok_or_else(overflow)?;
        n = n.checked_mul(pe).ok_or_else(overflow)?;
    }
    Ok(n)
}

/// Direction Dirichlet polynomial -> power polynomial: `c_{alpha(n)} = a_n`.
pub fn bohr_lift(d: &DirichletPoly) -> Result<PowerPoly> {
    let f = Factorizer::new(d.max_index())?;
    PowerPoly::from_coeffs(
        d.space(),
        d.iter()
            .map(|(n, v)| Ok((f.factorize(n)?, v.clone())))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// Inverse of [`bohr_lift`]: `a_{p^alpha} = c_alpha`.
pub fn bohr_transform(p: &PowerPoly) -> Result<DirichletPoly> {
    DirichletPoly::from_coeffs(
        p.space(),
        p.iter()
            .map(|(a, v)| Ok((index_of(a)?, v.clone())))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// Averages out every variable past the first `m`: monomials touching
/// `z_{m+1}, z_{m+2}, ...` integrate to zero and are dropped.
pub fn restrict(p: &PowerPoly, m: usize) -> PowerPoly {
    p.filtered(|a| a.within(m))
}

/// `S_N D = sum_{n <= N} a_n n^{-s}`.
pub fn partial_sum(d: &DirichletPoly, n_max: u64) -> DirichletPoly {
    d.filtered(|n| n <= n_max)
}
