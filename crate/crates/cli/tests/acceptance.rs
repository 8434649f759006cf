//! Acceptance criteria, one line per criterion.
//!
//! Run with `cargo test -p arithderiv-cli --test acceptance`. Every oracle
//! below is written from scratch with trial division and direct divisor
//! sums; none of it calls the library's convolution code.

use std::collections::HashMap;
use std::process::Command;
use std::time::{Duration, Instant};

use arithderiv::dirichlet::{convolve_at, convolve_multiplicative_at, f_star_delta_at};
use arithderiv::identities::{self, Status};
use arithderiv::{arithfn, factorint, ArithFnId, QValue};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};

use ArithFnId::*;

const SIX: [ArithFnId; 6] = [One, Id, Mu, Phi, Tau, Sigma];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_arithderiv"))
        .args(args)
        .env_remove("ARITHDERIV_SIEVE_LIMIT")
        .output()
        .expect("binary runs")
}

// ---- from-scratch oracles ------------------------------------------------

fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut a = 0;
        while n.is_multiple_of(p) {
            n /= p;
            a += 1;
        }
        if a > 0 {
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn divisors_of(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// delta(1) = 0, delta(p) = 1, delta(ab) = a delta(b) + b delta(a) on the
/// first nontrivial split.
struct RecursiveDelta(HashMap<u64, i128>);

impl RecursiveDelta {
    fn get(&mut self, n: u64) -> i128 {
        if n == 1 {
            return 0;
        }
        if let Some(&v) = self.0.get(&n) {
            return v;
        }
        let v = match (2..n).take_while(|d| d * d <= n).find(|d| n.is_multiple_of(*d)) {
            None => 1,
            Some(a) => {
                let b = n / a;
                a as i128 * self.get(b) + b as i128 * self.get(a)
            }
        };
        self.0.insert(n, v);
        v
    }
}

/// Each catalog function from its defining formula.
fn naive(f: ArithFnId, n: u64) -> i128 {
    let parts = trial_factor(n);
    match f {
        Delta => parts.iter().map(|&(p, a)| (n / p) as i128 * a as i128).sum(),
        Id => n as i128,
        One => 1,
        Eps => (n == 1) as i128,
        Phi => (1..=n).filter(|&k| gcd(k, n) == 1).count() as i128,
        Omega => parts.len() as i128,
        Mu => {
            if parts.iter().any(|&(_, a)| a > 1) {
                0
            } else if parts.len().is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        Tau => divisors_of(n).len() as i128,
        Sigma => divisors_of(n).iter().map(|&d| d as i128).sum(),
        B => parts.iter().map(|&(p, a)| p as i128 * a as i128).sum(),
        PhiEn => parts.iter().map(|&(p, _)| (n / p * (p - 1)) as i128).sum(),
    }
}

fn naive_conv(f: ArithFnId, g: ArithFnId, n: u64) -> i128 {
    divisors_of(n).iter().map(|&d| naive(f, d) * naive(g, n / d)).sum()
}

fn eq11_from_scratch(n: u64) -> (QValue, QValue) {
    let q = |v: i128| QValue::from(v);
    let lhs = q(naive_conv(Mu, Delta, n));
    let inner = q(naive(Delta, n)) - q(2 * naive(Omega, n))
        + q(naive(B, n))
        + QValue::ratio(naive(PhiEn, n), n).unwrap()
        + QValue::ratio(naive_conv(B, Id, n), naive(Sigma, n)).unwrap();
    (lhs, q(naive(Phi, n)) * inner)
}

// ---- criteria ------------------------------------------------------------

fn leibniz() -> Outcome {
    let start = Instant::now();
    let r = identities::check_leibniz(1000).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(r.checked == 1_000_000, || format!("checked {}", r.checked))?;
    ensure(r.status == Status::Holds, || format!("status {} ({} mismatches)", r.status, r.mismatches))?;
    ensure(took < Duration::from_secs(10), || format!("took {took:?}"))?;
    Ok(format!("10^6 pairs exact in {took:.2?}"))
}

fn derivative_closed_form() -> Outcome {
    let mut oracle = RecursiveDelta(HashMap::new());
    for n in 1..=10_000u64 {
        let got = arithfn::delta(n).map_err(|e| e.to_string())?;
        let want = QValue::from(oracle.get(n));
        ensure(got == want, || format!("delta({n}) = {got}, recursion gives {want}"))?;
    }
    Ok("n <= 10^4 equal to the recursive oracle".into())
}

fn theorem1() -> Outcome {
    for f in SIX {
        let r = identities::check_theorem1(f, 300).map_err(|e| e.to_string())?;
        ensure(r.status == Status::Holds, || format!("{f}: {} mismatches", r.mismatches))?;
        let out = cli(&["verify", "theorem1", "--f", f.name(), "--max", "300"]);
        ensure(out.status.code() == Some(0), || format!("verify theorem1 --f {f} exited {:?}", out.status.code()))?;
    }
    // independent spot checks of individual pairs
    for f in SIX {
        for (n, m) in [(2u64, 3u64), (4, 9), (12, 35), (8, 27), (299, 300)] {
            let fd = |k| naive_conv(f, Delta, k);
            let idf = |k| naive_conv(Id, f, k);
            ensure(fd(n * m) == idf(n) * fd(m) + idf(m) * fd(n), || format!("{f} at ({n},{m})"))?;
        }
    }
    Ok("six functions, all coprime pairs 2..=300, CLI exit 0".into())
}

fn lemma2() -> Outcome {
    for f in SIX {
        let r = identities::check_lemma2(f, 10_000).map_err(|e| e.to_string())?;
        ensure(r.status == Status::Holds, || format!("{f}: {} mismatches", r.mismatches))?;
        let zeros = r.extra.get("zero_denominators").copied().unwrap_or(u64::MAX);
        if matches!(f, Mu | Id) {
            ensure(zeros == 0, || format!("{f}: {zeros} zero-denominator fallbacks"))?;
        }
        ensure(r.checked + zeros == 10_000, || format!("{f}: coverage {} + {zeros}", r.checked))?;
    }
    for f in SIX {
        for n in [1u64, 2, 12, 360, 9240] {
            let fast = f_star_delta_at(f, n).map_err(|e| e.to_string())?;
            ensure(fast == QValue::from(naive_conv(f, Delta, n)), || format!("{f} at {n}"))?;
        }
    }
    Ok("fast path = oracle for six functions, n <= 10^4, no fallbacks".into())
}

fn prop6() -> Outcome {
    let start = Instant::now();
    let r = identities::check_prop6(100_000).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(r.status == Status::Holds, || format!("{} mismatches", r.mismatches))?;
    ensure(r.checked == 100_000, || format!("checked {}", r.checked))?;
    ensure(r.extra.get("odd_tau_delta") == Some(&0), || "tau*delta odd somewhere".into())?;
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    for n in [1u64, 4, 12, 720, 99_991, 100_000] {
        let lhs = naive_conv(Id, Delta, n);
        ensure(2 * lhs == naive(Tau, n) * naive(Delta, n), || format!("oracle at {n}"))?;
    }
    let out = cli(&["verify", "prop6", "--max", "100000"]);
    ensure(out.status.code() == Some(0), || format!("CLI exit {:?}", out.status.code()))?;
    Ok(format!("n <= 10^5 exact, all tau*delta even, {took:.2?}"))
}

fn series_relation() -> Outcome {
    let check = identities::check_series_identity(4.0, 10_000, 10_000).map_err(|e| e.to_string())?;
    ensure(check.coefficients.status == Status::Holds, || {
        format!("{} coefficient mismatches", check.coefficients.mismatches)
    })?;
    ensure(check.coefficients.checked == 10_000, || "coverage".into())?;
    let fl = &check.floating;
    let plain_sum = fl.zeta_shifted.tail_bound + fl.delta.tail_bound + fl.delta_tau.tail_bound;
    ensure(fl.difference <= fl.bound, || format!("|diff| {} > bound {}", fl.difference, fl.bound))?;
    ensure(fl.difference <= plain_sum, || format!("|diff| {} > sum of tails {plain_sum}", fl.difference))?;
    Ok(format!("coefficients exact; |diff| {:.3e} <= {:.3e}", fl.difference, fl.bound))
}

fn eq11_probe() -> Outcome {
    let out = cli(&["verify", "eq11", "--max", "10000", "--format", "json"]);
    let code = out.status.code();
    ensure(matches!(code, Some(0) | Some(1)), || format!("exit {code:?}"))?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let report = identities::IdentityReport::from_json(&text).map_err(|e| e.to_string())?;
    ensure(report.checked == 10_000, || format!("checked {}", report.checked))?;
    ensure((code == Some(0)) == (report.status == Status::Holds), || "exit code vs status".into())?;
    for c in &report.counterexamples {
        let n = c.input[0];
        let (lhs, rhs) = eq11_from_scratch(n);
        ensure(c.lhs == lhs && c.rhs == rhs, || format!("n={n}: report {} vs {}, scratch {lhs} vs {rhs}", c.lhs, c.rhs))?;
        ensure(lhs != rhs, || format!("n={n} listed but equal"))?;
    }
    // the mismatch count must match a from-scratch sweep
    let mut mismatches = 0u64;
    for n in 1..=10_000u64 {
        let parts = trial_factor(n);
        let phi: i128 = parts.iter().map(|&(p, a)| ((p - 1) * p.pow(a - 1)) as i128).product();
        let q = |v: i128| QValue::from(v);
        let inner = q(naive(Delta, n)) - q(2 * naive(Omega, n))
            + q(naive(B, n))
            + QValue::ratio(naive(PhiEn, n), n).unwrap()
            + QValue::ratio(
                divisors_of_fast(n).iter().map(|&d| naive(B, d) * (n / d) as i128).sum::<i128>(),
                divisors_of_fast(n).iter().map(|&d| d as i128).sum::<i128>(),
            )
            .unwrap();
        let lhs: i128 = divisors_of_fast(n).iter().map(|&d| naive(Mu, n / d) * naive(Delta, d)).sum();
        if q(lhs) != q(phi) * inner {
            mismatches += 1;
        }
    }
    ensure(mismatches == report.mismatches, || format!("scratch {mismatches} vs report {}", report.mismatches))?;
    Ok(format!(
        "report consistent with scratch oracle: status {}, {} of {} instances differ",
        report.status, report.mismatches, report.checked
    ))
}

fn divisors_of_fast(n: u64) -> Vec<u64> {
    let mut small: Vec<u64> = (1..).take_while(|d| d * d <= n).filter(|d| n.is_multiple_of(*d)).collect();
    let large: Vec<u64> = small.iter().rev().map(|d| n / d).filter(|&e| e * e != n).collect();
    small.extend(large);
    small
}

fn oracle_equivalence() -> Outcome {
    let mult: Vec<ArithFnId> = ArithFnId::multiplicative().collect();
    for &f in &mult {
        for &g in &mult {
            for n in 1..=10_000u64 {
                let fast = convolve_multiplicative_at(f, g, n).map_err(|e| e.to_string())?;
                let slow = convolve_at(f, g, n).map_err(|e| e.to_string())?;
                ensure(fast == slow, || format!("({f}*{g})({n}): {fast} vs {slow}"))?;
            }
        }
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(20261016);
    for f in [Delta, Mu, Phi, Tau] {
        let table = arithfn::sieve_range(f, 1_000_000).map_err(|e| e.to_string())?;
        for _ in 0..1000 {
            let k = rng.gen_range(1..=1_000_000u64);
            let want = arithfn::eval(f, k).map_err(|e| e.to_string())?;
            ensure(table[k as usize - 1] == want, || format!("{f}({k})"))?;
        }
    }
    let start = Instant::now();
    let sieve = factorint::build_sieve(1_000_000).map_err(|e| e.to_string())?;
    let deltas = arithfn::sieve_range(Delta, 1_000_000).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(sieve.limit() == 1_000_000 && deltas.len() == 1_000_000, || "sizes".into())?;
    ensure(took < Duration::from_secs(10), || format!("sieve + delta batch took {took:?}"))?;
    Ok(format!("{} multiplicative pairs to 10^4; sieve + delta batch {took:.2?}", mult.len() * mult.len()))
}

fn nested(f: ArithFnId, g: ArithFnId, h: ArithFnId, n: u64, left: bool) -> Result<QValue, String> {
    let e = |e: arithderiv::Error| e.to_string();
    let mut acc = QValue::zero();
    for d in factorint::divisors(&factorint::factorize(n, None).map_err(e)?) {
        let term = if left {
            convolve_at(f, g, d).map_err(e)? * arithfn::eval(h, n / d).map_err(e)?
        } else {
            arithfn::eval(f, d).map_err(e)? * convolve_at(g, h, n / d).map_err(e)?
        };
        acc += term;
    }
    Ok(acc)
}

fn convolution_algebra() -> Outcome {
    for f in ArithFnId::ALL {
        for g in ArithFnId::ALL {
            for n in 1..=500u64 {
                let a = convolve_at(f, g, n).map_err(|e| e.to_string())?;
                let b = convolve_at(g, f, n).map_err(|e| e.to_string())?;
                ensure(a == b, || format!("({f}*{g})({n})"))?;
            }
        }
        for n in 1..=500u64 {
            let unit = convolve_at(Eps, f, n).map_err(|e| e.to_string())?;
            ensure(unit == arithfn::eval(f, n).map_err(|e| e.to_string())?, || format!("eps*{f} at {n}"))?;
        }
    }
    let four = [One, Id, Mu, Delta];
    for f in four {
        for g in four {
            for h in four {
                for n in 1..=200u64 {
                    let l = nested(f, g, h, n, true)?;
                    let r = nested(f, g, h, n, false)?;
                    ensure(l == r, || format!("(({f}*{g})*{h})({n}) = {l} but ({f}*({g}*{h}))({n}) = {r}"))?;
                }
            }
        }
    }
    // spot values against the scratch oracle
    for (f, g, n) in [(Id, Delta, 4u64), (Mu, One, 6), (Sigma, Phi, 360)] {
        let v = convolve_at(f, g, n).map_err(|e| e.to_string())?;
        ensure(v == QValue::from(BigInt::from(naive_conv(f, g, n))), || format!("({f}*{g})({n})"))?;
    }
    Ok("commutativity n <= 500, associativity n <= 200, eps unit n <= 500".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC1 Leibniz rule", leibniz),
        ("AC2 derivative closed form", derivative_closed_form),
        ("AC3 product rule for f*delta", theorem1),
        ("AC4 prime-power formula for f*delta", lemma2),
        ("AC5 (Id*delta) = tau delta / 2", prop6),
        ("AC6 series relation", series_relation),
        ("AC7 eight-function probe", eq11_probe),
        ("AC8 oracle equivalence", oracle_equivalence),
        ("AC9 convolution algebra", convolution_algebra),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail} [{:.2?}]", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why} [{:.2?}]", start.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
