//! Truncated Dirichlet series `sum_{n <= N} a(n) / n^s` with tail bounds.
//!
//! Tail bounds come from an explicit majorant
//! `|a(n)| <= C * n^k * (1 + log2 n)^l` valid for every `n >= 1`, compared
//! against `integral_M^inf C x^(k - s) (1 + log2 x)^l dx` once the integrand
//! is decreasing (terms between `N` and `M` are added explicitly).
//!
//! Majorants used:
//!
//! | function              | bound                        |
//! |-----------------------|------------------------------|
//! | one, mu               | 1                            |
//! | omega                 | 1 + log2 n                   |
//! | id, phi, B            | n                            |
//! | delta                 | n (1 + log2 n) / 2           |
//! | phi_en                | n (1 + log2 n)               |
//! | sigma                 | 2 n (1 + log2 n)             |
//! | tau                   | C(t) n^t for any t > 0       |
//!
//! with `C(t) = prod_{p < 2^(1/t)} max_a (a + 1) p^(-a t)`. A convolution
//! `f*g` is bounded by `tau(n)` times the product of the two majorants.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arithfn::{self, ArithFnId};
use crate::error::{Error, Result};
use crate::factorint;

use super::convolve_int_tables;

/// Coefficient sequence of a Dirichlet series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesTerm {
    /// `f(n)`.
    Fn(ArithFnId),
    /// `(f*g)(n)`.
    Convolution(ArithFnId, ArithFnId),
    /// `f(n) g(n)`.
    Pointwise(ArithFnId, ArithFnId),
}

impl fmt::Display for SeriesTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesTerm::Fn(a) => write!(f, "{a}"),
            SeriesTerm::Convolution(a, b) => write!(f, "{a}*{b}"),
            SeriesTerm::Pointwise(ArithFnId::Delta, ArithFnId::Tau) => f.write_str("delta_tau"),
            SeriesTerm::Pointwise(a, b) => write!(f, "{a}.{b}"),
        }
    }
}

/// Accepts `f`, `f*g` (convolution), `f.g` (pointwise product) and the
/// alias `delta_tau`.
impl FromStr for SeriesTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "delta_tau" {
            return Ok(SeriesTerm::Pointwise(ArithFnId::Delta, ArithFnId::Tau));
        }
        if let Some((a, b)) = s.split_once('*') {
            return Ok(SeriesTerm::Convolution(a.parse()?, b.parse()?));
        }
        if let Some((a, b)) = s.split_once('.') {
            return Ok(SeriesTerm::Pointwise(a.parse()?, b.parse()?));
        }
        Ok(SeriesTerm::Fn(s.parse()?))
    }
}

/// A truncated series value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesSum {
    pub value: f64,
    pub terms: u64,
    pub s: f64,
    /// Upper bound on `|full series - value|`; infinite when no bound
    /// could be derived for this `s`.
    pub tail_bound: f64,
}

/// Growth description `coeff * n^power * (1 + log2 n)^log_power * tau(n)^taus`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Growth {
    coeff: f64,
    power: f64,
    log_power: u32,
    taus: u32,
    /// Coefficients vanish for `n >= 2`.
    unit: bool,
}

impl Growth {
    fn of(f: ArithFnId) -> Growth {
        let g = |coeff, power, log_power| Growth { coeff, power, log_power, taus: 0, unit: false };
        match f {
            ArithFnId::Eps => Growth { unit: true, ..g(1.0, 0.0, 0) },
            ArithFnId::One | ArithFnId::Mu => g(1.0, 0.0, 0),
            ArithFnId::Omega => g(1.0, 0.0, 1),
            ArithFnId::Id | ArithFnId::Phi | ArithFnId::B => g(1.0, 1.0, 0),
            ArithFnId::Delta => g(0.5, 1.0, 1),
            ArithFnId::PhiEn => g(1.0, 1.0, 1),
            ArithFnId::Sigma => g(2.0, 1.0, 1),
            ArithFnId::Tau => Growth { taus: 1, ..g(1.0, 0.0, 0) },
        }
    }

    fn of_term(term: SeriesTerm) -> Growth {
        match term {
            SeriesTerm::Fn(f) => Growth::of(f),
            SeriesTerm::Pointwise(a, b) => {
                let (a, b) = (Growth::of(a), Growth::of(b));
                Growth {
                    coeff: a.coeff * b.coeff,
                    power: a.power + b.power,
                    log_power: a.log_power + b.log_power,
                    taus: a.taus + b.taus,
                    unit: a.unit || b.unit,
                }
            }
            SeriesTerm::Convolution(a, b) => {
                let (a, b) = (Growth::of(a), Growth::of(b));
                if a.unit {
                    return b;
                }
                if b.unit {
                    return a;
                }
                Growth {
                    coeff: a.coeff * b.coeff,
                    power: a.power.max(b.power),
                    log_power: a.log_power + b.log_power,
                    taus: a.taus + b.taus + 1,
                    unit: false,
                }
            }
        }
    }

    /// The series converges absolutely for `s` strictly above this.
    fn abscissa(&self) -> f64 {
        if self.unit {
            f64::NEG_INFINITY
        } else {
            self.power + 1.0
        }
    }
}

/// Smallest per-divisor-function exponent used in tail bounds; below this
/// the constant `C(t)` needs primes past 2^16 and the bound is reported as
/// infinite instead.
const MIN_TAU_EXPONENT: f64 = 1.0 / 16.0;

/// `C(t)` with `tau(n) <= C(t) n^t` for all `n >= 1`.
fn tau_constant(t: f64) -> f64 {
    let bound = 2f64.powf(1.0 / t).ceil() as u64;
    let primes = factorint::build_sieve(bound.max(2)).expect("bound below 2^16 + 1");
    primes
        .primes()
        .iter()
        .map(|&p| f64::from(p))
        .filter(|&p| p.powf(t) < 2.0)
        .map(|p| {
            let mut best: f64 = 1.0;
            let mut a = 1.0;
            loop {
                let v = (a + 1.0) * p.powf(-a * t);
                if v < best {
                    break;
                }
                best = v;
                a += 1.0;
            }
            best
        })
        .product()
}

/// `integral_M^inf x^(-u-1) (1 + log2 x)^l dx`. With `x = e^y` this is
/// `integral_{ln M}^inf exp(-u y) (1 + c y)^l dy`, `c = 1/ln 2`, evaluated by
/// repeated integration by parts.
fn power_log_tail(u: f64, m: f64, l: u32) -> f64 {
    let y = m.ln();
    let c = std::f64::consts::LOG2_E;
    let mut total = 0.0;
    let mut falling = 1.0; // l! / (l - j)!
    for j in 0..=l {
        total += falling * c.powi(j as i32) * (1.0 + c * y).powi((l - j) as i32) / u.powi(j as i32 + 1);
        falling *= f64::from(l - j);
    }
    m.powf(-u) * total
}

/// Tail bound for `sum_{n > terms} |a(n)| / n^s` given its growth.
fn tail_bound(growth: &Growth, s: f64, terms: u64) -> f64 {
    if growth.unit {
        return 0.0;
    }
    let mut coeff = growth.coeff;
    let mut power = growth.power;
    if growth.taus > 0 {
        let slack = s - 1.0 - growth.power;
        let t = (slack / (2.0 * f64::from(growth.taus))).min(0.5);
        if t < MIN_TAU_EXPONENT {
            return f64::INFINITY;
        }
        coeff *= tau_constant(t).powi(growth.taus as i32);
        power += t * f64::from(growth.taus);
    }
    let e = s - power;
    debug_assert!(e > 1.0);
    let l = growth.log_power;
    let term = |n: f64| coeff * n.powf(-e) * (1.0 + n.log2()).powi(l as i32);
    // x^-e (1 + log2 x)^l decreases once 1 + log2 x > l / (e ln 2)
    let turn = 2f64.powf(f64::from(l) / (e * std::f64::consts::LN_2) - 1.0).ceil();
    let start = (terms as f64).max(turn);
    let mut bound = 0.0;
    let mut n = terms as f64 + 1.0;
    while n <= start {
        bound += term(n);
        n += 1.0;
    }
    bound + coeff * power_log_tail(e - 1.0, start, l)
}

/// `sum_{n=1..terms} a(n) / n^s` for the coefficient sequence `term`.
pub fn series_partial_sum(term: SeriesTerm, s: f64, terms: u64) -> Result<SeriesSum> {
    if terms == 0 {
        return Err(Error::Usage("a partial sum needs at least one term".into()));
    }
    let growth = Growth::of_term(term);
    let abscissa = growth.abscissa();
    if !s.is_finite() || s <= abscissa {
        return Err(Error::Domain(format!(
            "the series of {term} converges absolutely only for s > {abscissa}, got s = {s}"
        )));
    }
    let cap = factorint::SIEVE_MEMORY_CAP;
    let coeffs = match term {
        SeriesTerm::Fn(f) => arithfn::sieve_values(f, terms, cap)?,
        SeriesTerm::Convolution(a, b) => {
            convolve_int_tables(&arithfn::sieve_values(a, terms, cap)?, &arithfn::sieve_values(b, terms, cap)?)?
        }
        SeriesTerm::Pointwise(a, b) => {
            let av = arithfn::sieve_values(a, terms, cap)?;
            let bv = arithfn::sieve_values(b, terms, cap)?;
            av.iter().zip(&bv).map(|(x, y)| x * y).collect()
        }
    };
    // smallest terms first
    let value = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| c as f64 * ((i + 1) as f64).powf(-s))
        .sum();
    Ok(SeriesSum { value, terms, s, tail_bound: tail_bound(&growth, s, terms) })
}

/// Partial sum of `zeta(s) = sum 1/n^s`, `s > 1`.
pub fn zeta_partial(s: f64, terms: u64) -> Result<SeriesSum> {
    if !s.is_finite() || s <= 1.0 {
        return Err(Error::Domain(format!("zeta(s) needs s > 1, got s = {s}")));
    }
    if terms == 0 {
        return Err(Error::Usage("a partial sum needs at least one term".into()));
    }
    let value = (1..=terms).rev().map(|n| (n as f64).powf(-s)).sum();
    let growth = Growth::of(ArithFnId::One);
    Ok(SeriesSum { value, terms, s, tail_bound: tail_bound(&growth, s, terms) })
}
