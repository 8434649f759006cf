//! Factorization infrastructure: smallest-prime-factor sieve, trial
//! division, divisor enumeration and coprimality.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Sieve size used when nothing else is configured.
pub const DEFAULT_SIEVE_LIMIT: u64 = 1_000_000;

/// Hard ceiling on sieve size (four bytes per entry).
pub const SIEVE_MEMORY_CAP: u64 = 100_000_000;

/// Canonical prime-power decomposition of a positive integer.
///
/// Primes are strictly increasing and every exponent is at least one; the
/// factorization of 1 has no parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    n: u64,
    parts: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factorization of 1.
    pub fn one() -> Self {
        Factorization { n: 1, parts: Vec::new() }
    }

    /// Builds a factorization from `(prime, exponent)` pairs, checking the
    /// canonical-form invariants and that the product fits in a `u64`.
    pub fn from_parts(parts: Vec<(u64, u32)>) -> Result<Self> {
        let mut n: u64 = 1;
        let mut last = 1;
        for &(p, a) in &parts {
            if p <= last {
                return Err(Error::Domain(format!("primes must be strictly increasing, got {p} after {last}")));
            }
            if a == 0 {
                return Err(Error::Domain(format!("zero exponent for prime {p}")));
            }
            if !is_prime_trial(p) {
                return Err(Error::Domain(format!("{p} is not prime")));
            }
            let pp = checked_pow(p, a)?;
            n = n
                .checked_mul(pp)
                .ok_or_else(|| Error::Resource("factorization product exceeds u64".into()))?;
            last = p;
        }
        Ok(Factorization { n, parts })
    }

    /// `p^alpha` for a prime `p`.
    pub fn prime_power(p: u64, alpha: u32) -> Result<Self> {
        if alpha == 0 {
            return Ok(Factorization::one());
        }
        Factorization::from_parts(vec![(p, alpha)])
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn parts(&self) -> &[(u64, u32)] {
        &self.parts
    }

    pub fn is_one(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of divisors, `prod (alpha_i + 1)`.
    pub fn divisor_count(&self) -> u64 {
        self.parts.iter().map(|&(_, a)| u64::from(a) + 1).product()
    }

    /// All divisors together with their factorizations, in increasing order.
    pub fn divisors_factored(&self) -> Vec<Factorization> {
        let mut out = vec![Factorization::one()];
        for &(p, a) in &self.parts {
            let mut next = Vec::with_capacity(out.len() * (a as usize + 1));
            for d in &out {
                let mut value = d.n;
                next.push(d.clone());
                for e in 1..=a {
                    value *= p;
                    let mut parts = d.parts.clone();
                    parts.push((p, e));
                    next.push(Factorization { n: value, parts });
                }
            }
            out = next;
        }
        out.sort_by_key(|d| d.n);
        out
    }

    /// The factorization of `self.n / d.n`; `d` must divide `self`.
    pub fn cofactor(&self, d: &Factorization) -> Factorization {
        let mut parts = Vec::with_capacity(self.parts.len());
        let mut j = 0;
        for &(p, a) in &self.parts {
            let mut e = a;
            if j < d.parts.len() && d.parts[j].0 == p {
                e -= d.parts[j].1;
                j += 1;
            }
            if e > 0 {
                parts.push((p, e));
            }
        }
        debug_assert_eq!(j, d.parts.len(), "cofactor of a non-divisor");
        Factorization { n: self.n / d.n, parts }
    }
}

/// Smallest-prime-factor table for `2..=limit`. Immutable once built.
#[derive(Debug, Clone)]
pub struct SieveTable {
    limit: u64,
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl SieveTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Smallest prime factor of `k`, for `2 <= k <= limit`.
    pub fn spf(&self, k: u64) -> Option<u64> {
        if k < 2 || k > self.limit {
            None
        } else {
            Some(u64::from(self.spf[k as usize]))
        }
    }

    /// Primes up to the limit, ascending.
    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn is_prime(&self, k: u64) -> Option<bool> {
        self.spf(k).map(|p| p == k).or((k == 1).then_some(false))
    }

    pub(crate) fn spf_slice(&self) -> &[u32] {
        &self.spf
    }

    /// Factorizes `k <= limit` by repeated smallest-prime-factor division.
    fn factorize(&self, mut k: u64) -> Factorization {
        let n = k;
        let mut parts: Vec<(u64, u32)> = Vec::new();
        while k > 1 {
            let p = u64::from(self.spf[k as usize]);
            let mut a = 0;
            while k.is_multiple_of(p) {
                k /= p;
                a += 1;
            }
            parts.push((p, a));
        }
        Factorization { n, parts }
    }
}

/// Builds the smallest-prime-factor table up to `limit` with a linear sieve.
pub fn build_sieve(limit: u64) -> Result<SieveTable> {
    build_sieve_capped(limit, SIEVE_MEMORY_CAP)
}

/// As [`build_sieve`], refusing limits above `cap`.
pub fn build_sieve_capped(limit: u64, cap: u64) -> Result<SieveTable> {
    if limit < 2 {
        return Err(Error::Usage(format!("sieve limit must be at least 2, got {limit}")));
    }
    let cap = cap.min(SIEVE_MEMORY_CAP);
    if limit > cap {
        return Err(Error::Resource(format!("sieve limit {limit} exceeds the configured cap {cap}")));
    }
    let len = limit as usize + 1;
    let mut spf = vec![0u32; len];
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..len {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        let si = spf[i];
        for &p in &primes {
            let m = i * p as usize;
            if p > si || m >= len {
                break;
            }
            spf[m] = p;
        }
    }
    Ok(SieveTable { limit, spf, primes })
}

/// Prime factorization of `n`, through the sieve when it covers `n` and by
/// trial division otherwise.
pub fn factorize(n: u64, sieve: Option<&SieveTable>) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Domain("0 has no prime factorization; inputs must be positive".into()));
    }
    match sieve {
        Some(s) if n <= s.limit => Ok(s.factorize(n)),
        _ => Ok(factorize_trial(n)),
    }
}

fn factorize_trial(mut k: u64) -> Factorization {
    let n = k;
    let mut parts = Vec::new();
    let mut push = |k: &mut u64, p: u64| {
        let mut a = 0;
        while (*k).is_multiple_of(p) {
            *k /= p;
            a += 1;
        }
        if a > 0 {
            parts.push((p, a));
        }
    };
    push(&mut k, 2);
    let mut d = 3u64;
    while d.saturating_mul(d) <= k {
        push(&mut k, d);
        d += 2;
    }
    if k > 1 {
        parts.push((k, 1));
    }
    Factorization { n, parts }
}

/// Divisors of `f.n()` in strictly increasing order.
pub fn divisors(f: &Factorization) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, a) in f.parts() {
        let len = out.len();
        let mut pp = 1u64;
        for _ in 0..a {
            pp *= p;
            for i in 0..len {
                out.push(out[i] * pp);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn coprime(a: u64, b: u64) -> Result<bool> {
    if a == 0 || b == 0 {
        return Err(Error::Domain("coprimality is defined on positive integers".into()));
    }
    Ok(a.gcd(&b) == 1)
}

pub fn is_prime(n: u64, sieve: Option<&SieveTable>) -> Result<bool> {
    if n == 0 {
        return Err(Error::Domain("0 is outside the positive integers".into()));
    }
    if let Some(answer) = sieve.and_then(|s| s.is_prime(n)) {
        return Ok(answer);
    }
    Ok(is_prime_trial(n))
}

fn is_prime_trial(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn checked_pow(p: u64, a: u32) -> Result<u64> {
    p.checked_pow(a)
        .ok_or_else(|| Error::Resource(format!("{p}^{a} exceeds u64")))
}
