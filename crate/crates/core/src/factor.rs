//! Prime sieve, canonical factorizations and divisor enumeration.
//!
//! Everything downstream works on [`Factorization`] values rather than raw
//! integers: divisors of `n` are produced as factorizations too, so no
//! arithmetic function ever has to re-factor a divisor.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Default sieve limit used by the command line front end.
pub const DEFAULT_SIEVE_LIMIT: u64 = 1_000_000;

/// Largest accepted sieve limit (the smallest-prime-factor table is 4 bytes per entry).
pub const MAX_SIEVE_LIMIT: u64 = 200_000_000;

/// Smallest-prime-factor table and prime list up to `limit`.
#[derive(Debug, Clone)]
pub struct Sieve {
    limit: u64,
    spf: Vec<u32>,
    primes: Vec<u64>,
}

impl Sieve {
    /// Linear sieve: every composite is struck exactly once, by its smallest prime factor.
    pub fn new(limit: u64) -> Result<Self> {
        if !(2..=MAX_SIEVE_LIMIT).contains(&limit) {
            return Err(Error::SieveLimit {
                limit,
                max: MAX_SIEVE_LIMIT,
            });
        }
        let size = limit as usize + 1;
        let mut spf = vec![0u32; size];
        let mut primes: Vec<u64> = Vec::new();
        for i in 2..size {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u64);
            }
            let si = spf[i] as u64;
            for &p in &primes {
                if p > si {
                    break;
                }
                let m = i as u64 * p;
                if m > limit {
                    break;
                }
                spf[m as usize] = p as u32;
            }
        }
        Ok(Sieve { limit, spf, primes })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Largest integer [`Sieve::factorize`] accepts.
    pub fn factor_bound(&self) -> u64 {
        self.limit.saturating_mul(self.limit)
    }

    /// Smallest prime factor of `m`, for `2 <= m <= limit`.
    pub fn spf(&self, m: u64) -> Option<u64> {
        if m < 2 || m > self.limit {
            None
        } else {
            Some(self.spf[m as usize] as u64)
        }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Primes `<= bound` (bound clamped to the sieve limit).
    pub fn primes_up_to(&self, bound: u64) -> &[u64] {
        let end = self.primes.partition_point(|&p| p <= bound);
        &self.primes[..end]
    }

    pub fn is_prime(&self, m: u64) -> bool {
        self.spf(m) == Some(m)
    }

    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        if n == 0 {
            return Err(Error::InvalidInput("cannot factorize 0".into()));
        }
        if n > self.factor_bound() {
            return Err(Error::OutOfRange {
                n,
                bound: self.factor_bound(),
            });
        }
        let mut factors: Vec<(u64, u32)> = Vec::new();
        let mut push = |p: u64| match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        };
        let mut m = n;
        if m <= self.limit {
            while m > 1 {
                let p = self.spf[m as usize] as u64;
                push(p);
                m /= p;
            }
        } else {
            for &p in &self.primes {
                if p * p > m {
                    break;
                }
                while m % p == 0 {
                    push(p);
                    m /= p;
                }
            }
            // whatever survives trial division up to sqrt is prime
            if m > 1 {
                push(m);
            }
        }
        Ok(Factorization { n, factors })
    }
}

/// Canonical prime-power decomposition `n = p_1^a_1 ... p_s^a_s`, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization {
            n: 1,
            factors: Vec::new(),
        }
    }

    /// `p^k` for a prime `p` (primality is the caller's responsibility).
    pub fn prime_power(p: u64, k: u32) -> Self {
        if k == 0 {
            return Self::one();
        }
        Factorization {
            n: p.pow(k),
            factors: vec![(p, k)],
        }
    }

    /// Builds a factorization from `(prime, exponent)` pairs.
    ///
    /// Pairs are sorted; zero exponents dropped. Repeated primes and
    /// overflow of the product are rejected. Primality is not checked.
    pub fn from_prime_powers(mut pairs: Vec<(u64, u32)>) -> Result<Self> {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_unstable();
        let mut n: u64 = 1;
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidInput(format!("prime {} repeated", w[0].0)));
            }
        }
        for &(p, e) in &pairs {
            if p < 2 {
                return Err(Error::InvalidInput(format!("{p} is not a prime")));
            }
            let pe = p
                .checked_pow(e)
                .ok_or_else(|| Error::InvalidInput("factorization overflows u64".into()))?;
            n = n
                .checked_mul(pe)
                .ok_or_else(|| Error::InvalidInput("factorization overflows u64".into()))?;
        }
        Ok(Factorization { n, factors: pairs })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// `Some((p, k))` iff `n = p^k` with `k >= 1`.
    pub fn as_prime_power(&self) -> Option<(u64, u32)> {
        match self.factors.as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    /// Number of prime factors with multiplicity.
    pub fn big_omega(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn tau(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64 + 1).product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Exponent vectors of every divisor, in mixed-radix counting order.
    fn exponent_vectors(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::with_capacity(self.tau() as usize);
        let mut digits = vec![0u32; self.factors.len()];
        loop {
            out.push(digits.clone());
            let mut i = 0;
            loop {
                if i == digits.len() {
                    return out;
                }
                if digits[i] < self.factors[i].1 {
                    digits[i] += 1;
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    fn with_exponents(&self, exps: &[u32]) -> Factorization {
        let mut n = 1u64;
        let mut factors = Vec::with_capacity(exps.len());
        for (&(p, _), &e) in self.factors.iter().zip(exps) {
            if e > 0 {
                n *= p.pow(e);
                factors.push((p, e));
            }
        }
        Factorization { n, factors }
    }

    /// Ascending list of the positive divisors of `n`.
    pub fn divisors(&self) -> Vec<u64> {
        let mut ds: Vec<u64> = self
            .exponent_vectors()
            .iter()
            .map(|e| self.with_exponents(e).n)
            .collect();
        ds.sort_unstable();
        ds
    }

    /// Pairs `(d, n/d)` as factorizations, ascending in `d`.
    pub fn divisor_pairs(&self) -> Vec<(Factorization, Factorization)> {
        let mut pairs: Vec<_> = self
            .exponent_vectors()
            .iter()
            .map(|e| {
                let rest: Vec<u32> = self
                    .factors
                    .iter()
                    .zip(e)
                    .map(|(&(_, a), &b)| a - b)
                    .collect();
                (self.with_exponents(e), self.with_exponents(&rest))
            })
            .collect();
        pairs.sort_unstable_by_key(|(d, _)| d.n);
        pairs
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
struct FactorPair {
    p: u64,
    alpha: u32,
}

impl Serialize for Factorization {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<FactorPair> = self
            .factors
            .iter()
            .map(|&(p, alpha)| FactorPair { p, alpha })
            .collect();
        pairs.serialize(s)
    }
}
