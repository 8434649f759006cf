//! The catalog of arithmetic functions and their evaluators.
//!
//! Every function is evaluated exactly. Three routes exist: from a
//! factorization (works for every catalog entry), from a single prime power
//! (multiplicative entries and the derivative), and a batch pass over
//! `1..=limit` driven by the smallest-prime-factor sieve.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::factorint::{self, Factorization, SieveTable};
use crate::qvalue::QValue;

/// A function from the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArithFnId {
    /// Arithmetic derivative: `delta(p) = 1`, Leibniz rule on products.
    Delta,
    /// `id(n) = n`.
    Id,
    /// Constant 1.
    One,
    /// Convolution unit: 1 at 1, 0 elsewhere.
    Eps,
    /// Euler totient.
    Phi,
    /// Number of distinct prime divisors.
    Omega,
    /// Möbius function.
    Mu,
    /// Number of divisors.
    Tau,
    /// Sum of divisors.
    Sigma,
    /// `B(n) = sum alpha * p` over the prime powers exactly dividing `n`.
    B,
    /// `n * sum_{p | n} (1 - 1/p)`, the additive counterpart of the totient.
    PhiEn,
}

/// Structural class of a catalog function; decides which fast paths apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FnClass {
    Derivative,
    CompletelyMultiplicative,
    Multiplicative,
    AdditiveLike,
    Unit,
}

impl FnClass {
    pub fn name(self) -> &'static str {
        match self {
            FnClass::Derivative => "derivative",
            FnClass::CompletelyMultiplicative => "completely-multiplicative",
            FnClass::Multiplicative => "multiplicative",
            FnClass::AdditiveLike => "additive-like",
            FnClass::Unit => "unit",
        }
    }
}

impl ArithFnId {
    pub const ALL: [ArithFnId; 11] = [
        ArithFnId::Delta,
        ArithFnId::Id,
        ArithFnId::One,
        ArithFnId::Eps,
        ArithFnId::Phi,
        ArithFnId::Omega,
        ArithFnId::Mu,
        ArithFnId::Tau,
        ArithFnId::Sigma,
        ArithFnId::B,
        ArithFnId::PhiEn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ArithFnId::Delta => "delta",
            ArithFnId::Id => "id",
            ArithFnId::One => "one",
            ArithFnId::Eps => "eps",
            ArithFnId::Phi => "phi",
            ArithFnId::Omega => "omega",
            ArithFnId::Mu => "mu",
            ArithFnId::Tau => "tau",
            ArithFnId::Sigma => "sigma",
            ArithFnId::B => "B",
            ArithFnId::PhiEn => "phi_en",
        }
    }

    pub fn class(self) -> FnClass {
        match self {
            ArithFnId::Delta => FnClass::Derivative,
            ArithFnId::Id | ArithFnId::One => FnClass::CompletelyMultiplicative,
            ArithFnId::Phi | ArithFnId::Mu | ArithFnId::Tau | ArithFnId::Sigma => FnClass::Multiplicative,
            ArithFnId::Omega | ArithFnId::B | ArithFnId::PhiEn => FnClass::AdditiveLike,
            ArithFnId::Eps => FnClass::Unit,
        }
    }

    /// Whether `f(nm) = f(n) f(m)` for coprime `n, m` (and `f(1) = 1`).
    pub fn is_multiplicative(self) -> bool {
        matches!(
            self.class(),
            FnClass::Multiplicative | FnClass::CompletelyMultiplicative | FnClass::Unit
        )
    }

    /// The catalog functions with a multiplicative class.
    pub fn multiplicative() -> impl Iterator<Item = ArithFnId> {
        ArithFnId::ALL.into_iter().filter(|f| f.is_multiplicative())
    }
}

impl fmt::Display for ArithFnId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ArithFnId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "b" => Ok(ArithFnId::B),
            "phi-en" | "phien" => Ok(ArithFnId::PhiEn),
            _ => ArithFnId::ALL
                .into_iter()
                .find(|f| f.name() == s)
                .ok_or_else(|| {
                    let names: Vec<_> = ArithFnId::ALL.iter().map(|f| f.name()).collect();
                    Error::Usage(format!("unknown function {s:?}; expected one of {}", names.join(", ")))
                }),
        }
    }
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::Domain("arithmetic functions are defined on n >= 1".into()))
    } else {
        Ok(())
    }
}

/// `delta(n) = n * sum alpha_i / p_i`.
pub fn delta(n: u64) -> Result<QValue> {
    check_n(n)?;
    Ok(eval_factored(ArithFnId::Delta, &factorint::factorize(n, None)?))
}

/// `delta(p^alpha) = alpha * p^(alpha - 1)`.
pub fn delta_prime_power(p: u64, alpha: u32) -> Result<QValue> {
    check_prime_power(p, alpha)?;
    Ok(QValue::from(BigInt::from(alpha) * big_pow(p, alpha - 1)))
}

/// Evaluates `f(n)`, factoring `n` by trial division.
pub fn eval(f: ArithFnId, n: u64) -> Result<QValue> {
    eval_with(f, n, None)
}

/// Evaluates `f(n)`, factoring through `sieve` when it covers `n`.
pub fn eval_with(f: ArithFnId, n: u64, sieve: Option<&SieveTable>) -> Result<QValue> {
    check_n(n)?;
    Ok(eval_factored(f, &factorint::factorize(n, sieve)?))
}

/// Evaluates `f` at an already factored argument.
pub fn eval_factored(f: ArithFnId, fact: &Factorization) -> QValue {
    let n = || BigInt::from(fact.n());
    let parts = fact.parts();
    match f {
        ArithFnId::Delta => {
            let n = n();
            parts
                .iter()
                .map(|&(p, a)| &n / p * a)
                .sum::<BigInt>()
                .into()
        }
        ArithFnId::Omega => QValue::from(parts.len()),
        ArithFnId::B => parts
            .iter()
            .map(|&(p, a)| BigInt::from(p) * a)
            .sum::<BigInt>()
            .into(),
        ArithFnId::PhiEn => {
            let n = n();
            parts
                .iter()
                .map(|&(p, _)| &n / p * (p - 1))
                .sum::<BigInt>()
                .into()
        }
        _ => parts
            .iter()
            .map(|&(p, a)| prime_power_rule(f, p, a))
            .product::<BigInt>()
            .into(),
    }
}

/// Value of a multiplicative catalog function at `p^alpha`, `alpha >= 1`.
fn prime_power_rule(f: ArithFnId, p: u64, alpha: u32) -> BigInt {
    debug_assert!(f.is_multiplicative() && alpha >= 1);
    match f {
        ArithFnId::One => BigInt::one(),
        ArithFnId::Eps => BigInt::zero(),
        ArithFnId::Id => big_pow(p, alpha),
        ArithFnId::Phi => big_pow(p, alpha - 1) * (p - 1),
        ArithFnId::Mu => {
            if alpha == 1 {
                -BigInt::one()
            } else {
                BigInt::zero()
            }
        }
        ArithFnId::Tau => BigInt::from(alpha) + 1,
        ArithFnId::Sigma => (big_pow(p, alpha + 1) - 1) / (p - 1),
        _ => unreachable!("{f} has no prime-power rule"),
    }
}

fn big_pow(p: u64, e: u32) -> BigInt {
    Pow::pow(BigInt::from(p), e)
}

fn check_prime_power(p: u64, alpha: u32) -> Result<()> {
    if !factorint::is_prime(p.max(1), None)? {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if alpha == 0 {
        return Err(Error::Domain("prime-power exponent must be at least 1".into()));
    }
    Ok(())
}

/// `f(p^alpha)` without factoring. Defined for multiplicative functions and
/// the derivative.
pub fn eval_prime_power(f: ArithFnId, p: u64, alpha: u32) -> Result<QValue> {
    if f == ArithFnId::Delta {
        return delta_prime_power(p, alpha);
    }
    if !f.is_multiplicative() {
        return Err(Error::Unsupported(format!(
            "{f} is {} and has no prime-power rule",
            f.class().name()
        )));
    }
    check_prime_power(p, alpha)?;
    Ok(prime_power_rule(f, p, alpha).into())
}

/// `prod f(p_i^alpha_i)` over the parts of `fact`; rejects functions that
/// are not multiplicative.
pub fn eval_multiplicative(f: ArithFnId, fact: &Factorization) -> Result<QValue> {
    if !f.is_multiplicative() {
        return Err(Error::Unsupported(format!(
            "{f} is {}, not multiplicative",
            f.class().name()
        )));
    }
    Ok(fact
        .parts()
        .iter()
        .map(|&(p, a)| prime_power_rule(f, p, a))
        .product::<BigInt>()
        .into())
}

/// `[f(1), f(2), ..., f(limit)]` computed in one pass over the sieve.
pub fn sieve_range(f: ArithFnId, limit: u64) -> Result<Vec<QValue>> {
    sieve_range_capped(f, limit, factorint::SIEVE_MEMORY_CAP)
}

/// As [`sieve_range`], refusing limits above `cap`.
pub fn sieve_range_capped(f: ArithFnId, limit: u64, cap: u64) -> Result<Vec<QValue>> {
    Ok(sieve_values(f, limit, cap)?.into_iter().map(QValue::from).collect())
}

/// Integer-valued batch evaluation; index 0 holds `f(1)`.
///
/// Every catalog function is integer-valued and bounded by
/// `limit * (1 + ln limit)`, so `i128` cannot overflow below the sieve cap.
pub(crate) fn sieve_values(f: ArithFnId, limit: u64, cap: u64) -> Result<Vec<i128>> {
    if limit == 0 {
        return Err(Error::Usage("range limit must be at least 1".into()));
    }
    if limit > cap.min(factorint::SIEVE_MEMORY_CAP) {
        return Err(Error::Resource(format!("range limit {limit} exceeds the configured cap {cap}")));
    }
    let at_one: i128 = match f {
        ArithFnId::Delta | ArithFnId::Omega | ArithFnId::B | ArithFnId::PhiEn => 0,
        _ => 1,
    };
    if limit == 1 {
        return Ok(vec![at_one]);
    }
    let sieve = factorint::build_sieve_capped(limit, cap)?;
    Ok(sieve_values_with(f, &sieve, at_one))
}

fn sieve_values_with(f: ArithFnId, sieve: &SieveTable, at_one: i128) -> Vec<i128> {
    let len = sieve.limit() as usize + 1;
    let spf = sieve.spf_slice();
    // v[k] holds f(k); slot 0 is unused until the final shift.
    let mut v = vec![0i128; len];
    v[1] = at_one;

    let linear = matches!(f, ArithFnId::Delta | ArithFnId::B);
    if linear {
        for k in 2..len {
            let p = spf[k] as usize;
            let m = k / p;
            v[k] = match f {
                // Leibniz with delta(p) = 1
                ArithFnId::Delta => m as i128 + p as i128 * v[m],
                _ => v[m] + p as i128,
            };
        }
    } else {
        // k = p^alpha * rest with p = spf(k) and gcd(p, rest) = 1
        let mut exp = vec![0u8; len];
        let mut rest = vec![0u32; len];
        let mut ppow = vec![0u32; len];
        for k in 2..len {
            let p = spf[k] as usize;
            let m = k / p;
            if m > 1 && spf[m] as usize == p {
                exp[k] = exp[m] + 1;
                rest[k] = rest[m];
                ppow[k] = ppow[m] * p as u32;
            } else {
                exp[k] = 1;
                rest[k] = m as u32;
                ppow[k] = p as u32;
            }
            let (a, r, q) = (exp[k] as i128, rest[k] as usize, ppow[k] as i128);
            let p = p as i128;
            v[k] = match f {
                ArithFnId::Omega => v[r] + 1,
                ArithFnId::PhiEn => q * v[r] + r as i128 * (q / p) * (p - 1),
                ArithFnId::One => 1,
                ArithFnId::Eps => 0,
                ArithFnId::Id => k as i128,
                ArithFnId::Phi => v[r] * (q / p) * (p - 1),
                ArithFnId::Mu => {
                    if a == 1 {
                        -v[r]
                    } else {
                        0
                    }
                }
                ArithFnId::Tau => v[r] * (a + 1),
                ArithFnId::Sigma => v[r] * ((q * p - 1) / (p - 1)),
                ArithFnId::Delta | ArithFnId::B => unreachable!(),
            };
        }
    }
    v.remove(0);
    v
}
