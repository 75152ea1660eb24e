//! Process-wide prime table, grown on demand with a segmented sieve.
//!
//! The table only ever grows. Readers take a cheap `Arc` snapshot, so
//! concurrent factorization never blocks on a writer once the table covers
//! the range being worked on.

use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

/// Environment variable holding the maximum sieve limit.
pub const SIEVE_CAP_ENV: &str = "DHARDY_SIEVE_CAP";

const DEFAULT_CAP: u64 = 100_000_000;
const INITIAL_LIMIT: u64 = 1 << 12;
const SEGMENT: u64 = 1 << 18;

/// All primes strictly below `limit`.
#[derive(Debug)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    /// Exclusive upper bound of the sieved range.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// The `j`-th prime, 0-based (`prime(0) == 2`).
    pub fn prime(&self, j: usize) -> Option<u64> {
        self.primes.get(j).copied()
    }

    /// Position of `p` in the table if it is a sieved prime.
    pub fn position(&self, p: u64) -> Option<usize> {
        self.primes.binary_search(&p).ok()
    }

    /// Number of primes `<= n`; `n` must be below the limit.
    pub fn count_up_to(&self, n: u64) -> usize {
        debug_assert!(n < self.limit);
        self.primes.partition_point(|&p| p <= n)
    }

    fn small(limit: u64) -> Self {
        let n = limit as usize;
        let mut composite = vec![false; n];
        let mut primes = Vec::new();
        for i in 2..n {
            if !composite[i] {
                primes.push(i as u64);
                let mut k = i * i;
                while k < n {
                    composite[k] = true;
                    k += i;
                }
            }
        }
        Self { limit, primes }
    }

    /// Sieve `[self.limit, new_limit)` segment by segment.
    /// Requires `new_limit <= self.limit^2`.
    fn extended(&self, new_limit: u64) -> Self {
        debug_assert!(new_limit <= self.limit.saturating_mul(self.limit));
        let mut primes = self.primes.clone();
        let mut lo = self.limit;
        let mut marks = Vec::new();
        while lo < new_limit {
            let hi = (lo + SEGMENT).min(new_limit);
            marks.clear();
            marks.resize((hi - lo) as usize, false);
            for &p in &self.primes {
                if p * p >= hi {
                    break;
                }
                let start = (p * p).max(lo.div_ceil(p) * p);
                let mut k = start;
                while k < hi {
                    marks[(k - lo) as usize] = true;
                    k += p;
                }
            }
            primes.extend(
                marks
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| !c)
                    .map(|(i, _)| lo + i as u64),
            );
            lo = hi;
        }
        Self {
            limit: new_limit,
            primes,
        }
    }
}

fn cache() -> &'static RwLock<Arc<PrimeTable>> {
    static CACHE: OnceLock<RwLock<Arc<PrimeTable>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(Arc::new(PrimeTable::small(INITIAL_LIMIT))))
}

/// Largest sieve limit the cache may grow to.
pub fn sieve_cap() -> u64 {
    static CAP: OnceLock<u64> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(SIEVE_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .filter(|&v| v >= INITIAL_LIMIT)
            .unwrap_or(DEFAULT_CAP)
    })
}

fn snapshot() -> Arc<PrimeTable> {
    Arc::clone(&cache().read().unwrap_or_else(|e| e.into_inner()))
}

/// Snapshot of the table covering every integer `<= n`.
pub fn covering(n: u64) -> Result<Arc<PrimeTable>> {
    let table = snapshot();
    if n < table.limit {
        return Ok(table);
    }
    let cap = sieve_cap();
    if n >= cap {
        return Err(Error::SieveCap { requested: n + 1, cap });
    }
    let mut guard = cache().write().unwrap_or_else(|e| e.into_inner());
    while n >= guard.limit {
        let cur = guard.limit;
        let target = (n + 1).max(cur.saturating_mul(2)).min(cap);
        let next = target.min(cur.saturating_mul(cur));
        *guard = Arc::new(guard.extended(next));
    }
    Ok(Arc::clone(&guard))
}

/// Snapshot of a table holding at least the first `k` primes.
pub fn with_count(k: usize) -> Result<Arc<PrimeTable>> {
    let mut table = snapshot();
    while table.primes.len() < k {
        table = covering(table.limit.saturating_mul(2))?;
    }
    Ok(table)
}

/// The `j`-th prime (0-based).
pub fn nth_prime(j: usize) -> Result<u64> {
    Ok(with_count(j + 1)?.primes[j])
}

/// First `k` primes.
pub fn first_primes(k: usize) -> Result<Vec<u64>> {
    Ok(with_count(k)?.primes[..k].to_vec())
}

/// Number of primes `<= n`.
pub fn prime_count(n: u64) -> Result<usize> {
    Ok(covering(n)?.count_up_to(n))
}
