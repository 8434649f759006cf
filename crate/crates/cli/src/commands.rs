use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use arithderiv::dirichlet::{self, SeriesSum, SeriesTerm};
use arithderiv::identities::{self, IdentityReport, OutputFormat, SeriesIdentityCheck, Status};
use arithderiv::{arithfn, ArithFnId, Error, QValue, Result};

use crate::args::{Cli, Command, Format, VerifyArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_COUNTEREXAMPLE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

pub struct Outcome {
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: EXIT_OK }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let limit = cli.sieve_limit;
    match &cli.command {
        Command::Eval { function, n } => {
            let f: ArithFnId = function.parse()?;
            let v = arithfn::eval(f, parse_n(n)?)?;
            Ok(Outcome::ok(format!("{v}\n")))
        }
        Command::Table { functions, max, format } => table(functions, *max, *format, limit),
        Command::Convolve { f, g, n, fast } => convolve(f.parse()?, g.parse()?, parse_n(n)?, *fast),
        Command::Verify(args) => verify(args, limit),
        Command::Series { term, s, terms, format } => {
            let term: SeriesTerm = term.parse()?;
            within_limit("terms", *terms, limit)?;
            let sum = dirichlet::series_partial_sum(term, *s, *terms)?;
            Ok(Outcome::ok(render_series(&term.to_string(), &sum, *format)))
        }
    }
}

fn parse_n(s: &str) -> Result<u64> {
    match s.trim().parse::<i128>() {
        Ok(v) if v >= 1 && v <= u64::MAX as i128 => Ok(v as u64),
        Ok(v) => Err(Error::Domain(format!("n must be a positive integer, got {v}"))),
        Err(_) => Err(Error::Usage(format!("not an integer: {s:?}"))),
    }
}

fn within_limit(what: &str, needed: u64, limit: u64) -> Result<()> {
    if needed > limit {
        Err(Error::Resource(format!(
            "{what} needs tables up to {needed}, above the sieve limit {limit}; raise --sieve-limit"
        )))
    } else {
        Ok(())
    }
}

fn table(names: &[String], max: u64, format: Format, limit: u64) -> Result<Outcome> {
    let fns = names.iter().map(|s| s.parse()).collect::<Result<Vec<ArithFnId>>>()?;
    if max < 1 {
        return Err(Error::Usage("--max must be at least 1".into()));
    }
    within_limit("table", max, limit)?;
    let columns = fns
        .iter()
        .map(|&f| arithfn::sieve_range_capped(f, max, limit))
        .collect::<Result<Vec<_>>>()?;
    let header: Vec<&str> = std::iter::once("n").chain(fns.iter().map(|f| f.name())).collect();
    let rows = (0..max as usize).map(|i| {
        std::iter::once((i + 1).to_string())
            .chain(columns.iter().map(|c| c[i].to_string()))
            .collect::<Vec<_>>()
    });
    let text = match format {
        Format::Plain | Format::Csv => {
            let sep = if format == Format::Csv { "," } else { "\t" };
            let mut out = header.join(sep) + "\n";
            for row in rows {
                out += &row.join(sep);
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .map(|row| {
                    let mut obj = Map::new();
                    obj.insert("n".into(), json!(row[0].parse::<u64>().expect("index")));
                    for (name, v) in header[1..].iter().zip(&row[1..]) {
                        obj.insert((*name).into(), json!(v));
                    }
                    Value::Object(obj)
                })
                .collect();
            let doc = json!({ "functions": &header[1..], "max": max, "rows": rows });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
    };
    Ok(Outcome::ok(text))
}

fn convolve(f: ArithFnId, g: ArithFnId, n: u64, fast: bool) -> Result<Outcome> {
    let oracle = dirichlet::convolve_at(f, g, n)?;
    if !fast {
        return Ok(Outcome::ok(format!("{oracle}\n")));
    }
    let value: QValue = if f.is_multiplicative() && g.is_multiplicative() {
        dirichlet::convolve_multiplicative_at(f, g, n)?
    } else if g == ArithFnId::Delta && f.is_multiplicative() {
        dirichlet::f_star_delta_at(f, n)?
    } else if f == ArithFnId::Delta && g.is_multiplicative() {
        dirichlet::f_star_delta_at(g, n)?
    } else {
        return Err(Error::FastPathUnavailable(format!(
            "{f}*{g}: a fast path needs both functions multiplicative, or one multiplicative and the other delta"
        )));
    };
    let code = if value == oracle { EXIT_OK } else { EXIT_COUNTEREXAMPLE };
    Ok(Outcome { text: format!("{value}\noracle: {oracle}\n"), code })
}

fn report_outcome(report: &IdentityReport, format: Format) -> Outcome {
    Outcome {
        text: report.render(format.into()),
        code: if report.status == Status::Holds { EXIT_OK } else { EXIT_COUNTEREXAMPLE },
    }
}

fn verify(args: &VerifyArgs, limit: u64) -> Result<Outcome> {
    let function = || -> Result<ArithFnId> {
        args.function
            .as_deref()
            .ok_or_else(|| Error::Usage(format!("{} needs --f <function>", args.identity)))?
            .parse()
    };
    let squared = |max: u64| max.saturating_mul(max);
    match args.identity.as_str() {
        "theorem1" => {
            let f = function()?;
            let max = args.max.unwrap_or(300);
            within_limit("theorem1", squared(max), limit)?;
            Ok(report_outcome(&identities::check_theorem1(f, max)?, args.format))
        }
        "lemma2" => {
            let f = function()?;
            let max = args.max.unwrap_or(10_000);
            within_limit("lemma2", max, limit)?;
            Ok(report_outcome(&identities::check_lemma2(f, max)?, args.format))
        }
        "prop6" => {
            let max = args.max.unwrap_or(100_000);
            within_limit("prop6", max, limit)?;
            Ok(report_outcome(&identities::check_prop6(max)?, args.format))
        }
        "eq11" => {
            let max = args.max.unwrap_or(10_000);
            within_limit("eq11", max, limit)?;
            Ok(report_outcome(&identities::check_conjecture_eq11(max)?, args.format))
        }
        "leibniz" => {
            let max = args.max.unwrap_or(1000);
            within_limit("leibniz", squared(max), limit)?;
            Ok(report_outcome(&identities::check_leibniz(max)?, args.format))
        }
        "series" => {
            let s = args.s.unwrap_or(4.0);
            let terms = args.terms.unwrap_or(10_000);
            let coeff_max = args.coeff_max.or(args.max).unwrap_or(10_000);
            within_limit("series", terms.max(coeff_max), limit)?;
            let check = identities::check_series_identity(s, terms, coeff_max)?;
            Ok(Outcome {
                text: render_series_check(&check, args.format),
                code: if check.holds() { EXIT_OK } else { EXIT_COUNTEREXAMPLE },
            })
        }
        other => Err(Error::Usage(format!(
            "unknown identity {other:?}; expected theorem1, lemma2, prop6, series, eq11 or leibniz"
        ))),
    }
}

fn render_series(name: &str, sum: &SeriesSum, format: Format) -> String {
    match format {
        Format::Plain => format!(
            "series: {name}\ns: {}\nterms: {}\nvalue: {}\ntail_bound: {:e}\n",
            sum.s, sum.terms, sum.value, sum.tail_bound
        ),
        Format::Csv => format!(
            "series,s,terms,value,tail_bound\n{name},{},{},{},{}\n",
            sum.s, sum.terms, sum.value, sum.tail_bound
        ),
        Format::Json => {
            let mut v = serde_json::to_value(sum).expect("serializable");
            v["series"] = json!(name);
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
    }
}

fn render_series_check(check: &SeriesIdentityCheck, format: Format) -> String {
    let fl = &check.floating;
    match format {
        Format::Json => serde_json::to_string_pretty(check).expect("serializable") + "\n",
        Format::Csv => check.coefficients.to_csv(),
        Format::Plain => {
            let mut s = check.coefficients.render(OutputFormat::Plain);
            let _ = writeln!(s, "series at s = {} with {} terms:", fl.delta.s, fl.delta.terms);
            let _ = writeln!(s, "  2 zeta(s-1) D(s) = {}", fl.lhs);
            let _ = writeln!(s, "  T(s)             = {}", fl.rhs);
            let _ = writeln!(s, "  difference       = {:e}", fl.difference);
            let _ = writeln!(s, "  bound            = {:e}", fl.bound);
            let _ = writeln!(s, "  within bound: {}", fl.within);
            s
        }
    }
}
