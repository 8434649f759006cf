//! Dirichlet convolution.
//!
//! [`convolve_at`] sums over every divisor and is the reference for all
//! other routes: the prime-power route, the multiplicative product route and
//! the derivative route [`f_star_delta_at`] must agree with it exactly.

mod series;

pub use series::{series_partial_sum, zeta_partial, SeriesSum, SeriesTerm};

use crate::arithfn::{self, ArithFnId};
use crate::error::{Error, Result};
use crate::factorint::{self, Factorization};
use crate::qvalue::QValue;

/// `(f*g)(n) = sum_{d | n} f(d) g(n/d)` by explicit divisor enumeration.
pub fn convolve_at(f: ArithFnId, g: ArithFnId, n: u64) -> Result<QValue> {
    if n == 0 {
        return Err(Error::Domain("convolution is defined on n >= 1".into()));
    }
    Ok(convolve_factored(f, g, &factorint::factorize(n, None)?))
}

pub(crate) fn convolve_factored(f: ArithFnId, g: ArithFnId, n: &Factorization) -> QValue {
    n.divisors_factored()
        .iter()
        .map(|d| arithfn::eval_factored(f, d) * arithfn::eval_factored(g, &n.cofactor(d)))
        .sum()
}

/// `(f*g)(p^m) = sum_{j=0..m} f(p^j) g(p^(m-j))`.
pub fn convolve_prime_power(f: ArithFnId, g: ArithFnId, p: u64, m: u32) -> Result<QValue> {
    if !factorint::is_prime(p.max(1), None)? {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let powers: Vec<Factorization> = (0..=m)
        .map(|j| Factorization::prime_power(p, j))
        .collect::<Result<_>>()?;
    Ok((0..=m as usize)
        .map(|j| arithfn::eval_factored(f, &powers[j]) * arithfn::eval_factored(g, &powers[m as usize - j]))
        .sum())
}

/// `(f*g)(n)` for multiplicative `f` and `g`, as the product of the
/// convolution at each prime power of `n`.
pub fn convolve_multiplicative_at(f: ArithFnId, g: ArithFnId, n: u64) -> Result<QValue> {
    for h in [f, g] {
        if !h.is_multiplicative() {
            return Err(Error::Unsupported(format!(
                "{h} is {}, so {f}*{g} has no multiplicative fast path",
                h.class().name()
            )));
        }
    }
    if n == 0 {
        return Err(Error::Domain("convolution is defined on n >= 1".into()));
    }
    factorint::factorize(n, None)?
        .parts()
        .iter()
        .map(|&(p, a)| convolve_prime_power(f, g, p, a))
        .product()
}

/// `(f*delta)(n)` for multiplicative `f` through the prime-power sum
///
/// ```text
/// (f*delta)(n) = (Id*f)(n) * sum_i (f*delta)(p_i^a_i) / (Id*f)(p_i^a_i)
/// ```
///
/// Returns [`Error::FastPathUnavailable`] when some `(Id*f)(p^a)` vanishes;
/// the caller should then use [`convolve_at`].
pub fn f_star_delta_at(f: ArithFnId, n: u64) -> Result<QValue> {
    if !f.is_multiplicative() {
        return Err(Error::Unsupported(format!(
            "{f} is {}; the derivative fast path needs a multiplicative function",
            f.class().name()
        )));
    }
    if n == 0 {
        return Err(Error::Domain("convolution is defined on n >= 1".into()));
    }
    let local = factorint::factorize(n, None)?
        .parts()
        .iter()
        .map(|&(p, a)| {
            Ok(LocalFactor {
                prime: p,
                exponent: a,
                id_star_f: convolve_prime_power(ArithFnId::Id, f, p, a)?,
                f_star_delta: convolve_prime_power(f, ArithFnId::Delta, p, a)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    combine_local(&local)
}

/// The two convolutions at one prime power `p^a` of `n`.
#[derive(Debug, Clone)]
pub(crate) struct LocalFactor {
    pub prime: u64,
    pub exponent: u32,
    pub id_star_f: QValue,
    pub f_star_delta: QValue,
}

pub(crate) fn combine_local(local: &[LocalFactor]) -> Result<QValue> {
    let mut sum = QValue::zero();
    let mut id_star_f = QValue::one();
    for l in local {
        let ratio = l.f_star_delta.checked_div(&l.id_star_f).ok_or_else(|| {
            Error::FastPathUnavailable(format!(
                "(Id*f)({}^{}) = 0, the prime-power quotient is undefined",
                l.prime, l.exponent
            ))
        })?;
        sum += ratio;
        id_star_f = id_star_f * &l.id_star_f;
    }
    Ok(id_star_f * sum)
}

/// `[(f*g)(1), ..., (f*g)(limit)]` from the divisor-sum definition, visiting
/// each pair `(d, k)` with `d | k <= limit` once.
pub fn convolve_range(f: ArithFnId, g: ArithFnId, limit: u64) -> Result<Vec<QValue>> {
    convolve_range_capped(f, g, limit, factorint::SIEVE_MEMORY_CAP)
}

/// As [`convolve_range`], refusing limits above `cap`.
pub fn convolve_range_capped(f: ArithFnId, g: ArithFnId, limit: u64, cap: u64) -> Result<Vec<QValue>> {
    let fv = arithfn::sieve_values(f, limit, cap)?;
    let gv = if g == f { fv.clone() } else { arithfn::sieve_values(g, limit, cap)? };
    Ok(convolve_int_tables(&fv, &gv)?.into_iter().map(QValue::from).collect())
}

/// Divisor-sum convolution of two tables indexed from 1 (slot 0 is `n = 1`).
pub fn convolve_tables(f: &[QValue], g: &[QValue]) -> Vec<QValue> {
    let len = f.len().min(g.len());
    let mut out = vec![QValue::zero(); len];
    for d in 1..=len {
        if f[d - 1].is_zero() {
            continue;
        }
        for (e, k) in (d..=len).step_by(d).enumerate() {
            out[k - 1] += &f[d - 1] * &g[e];
        }
    }
    out
}

pub(crate) fn convolve_int_tables(f: &[i128], g: &[i128]) -> Result<Vec<i128>> {
    let len = f.len().min(g.len());
    let mut out = vec![0i128; len];
    let overflow = || Error::Resource("convolution value exceeds 128 bits".into());
    for d in 1..=len {
        let fd = f[d - 1];
        if fd == 0 {
            continue;
        }
        for (e, k) in (d..=len).step_by(d).enumerate() {
            let term = fd.checked_mul(g[e]).ok_or_else(overflow)?;
            out[k - 1] = out[k - 1].checked_add(term).ok_or_else(overflow)?;
        }
    }
    Ok(out)
}
