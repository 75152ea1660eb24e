use std::fmt;

/// Finitely supported exponent vector over the primes: `alpha_j` is the
/// exponent of the `j`-th prime (0-based, so coordinate 0 is the prime 2).
///
/// Stored without trailing zeros, so two indices are equal exactly when
/// their stored vectors are.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Self(exponents)
    }

    /// The empty index, i.e. the constant monomial.
    pub fn zero() -> Self {
        Self(Vec::new())
    }

    /// `e_k`: the monomial `z_k` (0-based coordinate).
    pub fn unit(k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = 1;
        Self(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Exponent of coordinate `j` (zero past the stored length).
    pub fn get(&self, j: usize) -> u32 {
        self.0.get(j).copied().unwrap_or(0)
    }

    /// Number of leading coordinates the index reaches into, i.e. the
    /// smallest `m` such that the monomial only involves `z_1, ..., z_m`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `|alpha|`, the total degree.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }

    /// Number of non-zero exponents (distinct prime factors).
    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|&&a| a != 0).count()
    }

    /// `(coordinate, exponent)` pairs with non-zero exponent.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().enumerate().filter(|(_, &a)| a != 0).map(|(j, &a)| (j, a))
    }

    /// Exponent-wise sum; the index of a product of monomials.
    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.0.len() >= other.0.len() {
            (&self.0, &other.0)
        } else {
            (&other.0, &self.0)
        };
        let mut v = long.clone();
        for (a, b) in v.iter_mut().zip(short) {
            *a += b;
        }
        Self(v)
    }

    /// True if every coordinate used is among the first `m`.
    pub fn within(&self, m: usize) -> bool {
        self.0.len() <= m
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        Self::new(v)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}
