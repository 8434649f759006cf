use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arithfn::ArithFnId;
use crate::error::{Error, Result};
use crate::qvalue::QValue;

/// Maximum number of counterexamples kept in a report.
pub const COUNTEREXAMPLE_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityKind {
    Theorem1,
    Lemma2,
    Prop6,
    SeriesCoeff,
    Eq11,
    Leibniz,
}

impl IdentityKind {
    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::Theorem1 => "theorem1",
            IdentityKind::Lemma2 => "lemma2",
            IdentityKind::Prop6 => "prop6",
            IdentityKind::SeriesCoeff => "series_coeff",
            IdentityKind::Eq11 => "eq11",
            IdentityKind::Leibniz => "leibniz",
        }
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// No instance failed.
    Holds,
    /// Every instance failed.
    Fails,
    /// Some instances failed.
    Mixed,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Mixed => "mixed",
        })
    }
}

/// One failing instance with both sides evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub input: Vec<u64>,
    pub lhs: QValue,
    pub rhs: QValue,
}

/// Outcome of sweeping one identity over a finite range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: IdentityKind,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "fn_name")]
    pub function: Option<ArithFnId>,
    pub range: String,
    pub checked: u64,
    pub status: Status,
    /// Total failing instances; `counterexamples` keeps the first
    /// [`COUNTEREXAMPLE_CAP`] in input order.
    pub mismatches: u64,
    pub counterexamples: Vec<Counterexample>,
    /// Named side counts (skipped instances, parity failures, ...).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, u64>,
    /// Inputs excluded from the comparison, e.g. where a fast path had no
    /// defined value. Capped like `counterexamples`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

mod fn_name {
    use super::ArithFnId;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(f: &Option<ArithFnId>, s: S) -> Result<S::Ok, S::Error> {
        match f {
            Some(f) => s.serialize_str(f.name()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<ArithFnId>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Accumulates comparisons in input order.
pub(crate) struct Collector {
    checked: u64,
    mismatches: u64,
    counterexamples: Vec<Counterexample>,
}

impl Collector {
    pub fn new() -> Self {
        Collector { checked: 0, mismatches: 0, counterexamples: Vec::new() }
    }

    pub fn check(&mut self, input: &[u64], lhs: impl FnOnce() -> QValue, rhs: impl FnOnce() -> QValue) {
        let (lhs, rhs) = (lhs(), rhs());
        self.record(input, lhs == rhs, || (lhs, rhs));
    }

    /// Records an instance whose equality was decided cheaply; the exact
    /// sides are only materialized on failure.
    pub fn record(&mut self, input: &[u64], equal: bool, sides: impl FnOnce() -> (QValue, QValue)) {
        self.checked += 1;
        if !equal {
            self.mismatches += 1;
            if self.counterexamples.len() < COUNTEREXAMPLE_CAP {
                let (lhs, rhs) = sides();
                self.counterexamples.push(Counterexample { input: input.to_vec(), lhs, rhs });
            }
        }
    }

    pub fn finish(mut self, identity: IdentityKind, function: Option<ArithFnId>, range: String) -> IdentityReport {
        self.counterexamples.sort();
        let status = if self.mismatches == 0 {
            Status::Holds
        } else if self.mismatches == self.checked {
            Status::Fails
        } else {
            Status::Mixed
        };
        IdentityReport {
            identity,
            function,
            range,
            checked: self.checked,
            status,
            mismatches: self.mismatches,
            counterexamples: self.counterexamples,
            extra: BTreeMap::new(),
            skipped: Vec::new(),
            notes: Vec::new(),
        }
    }
}

/// Report renderings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Plain,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(OutputFormat::Plain),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Usage(format!("unknown format {s:?}; expected plain, csv or json"))),
        }
    }
}

/// Renders a counterexample input tuple, e.g. `2;3`.
pub fn format_input(input: &[u64]) -> String {
    input.iter().map(u64::to_string).collect::<Vec<_>>().join(";")
}

pub fn parse_input(s: &str) -> Result<Vec<u64>> {
    s.split(';')
        .map(|p| p.trim().parse().map_err(|_| Error::Usage(format!("bad input tuple {s:?}"))))
        .collect()
}

impl IdentityReport {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Plain => self.to_plain(),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    /// A single JSON object, pretty-printed, with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Usage(format!("bad report JSON: {e}")))
    }

    /// Header `input,lhs,rhs` and one row per listed counterexample.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["input", "lhs", "rhs"]).expect("in-memory write");
        for c in &self.counterexamples {
            w.write_record([format_input(&c.input), c.lhs.to_string(), c.rhs.to_string()])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn counterexamples_from_csv(text: &str) -> Result<Vec<Counterexample>> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        r.records()
            .map(|rec| {
                let rec = rec.map_err(|e| Error::Usage(format!("bad CSV: {e}")))?;
                let field = |i: usize| rec.get(i).ok_or_else(|| Error::Usage("short CSV row".into()));
                Ok(Counterexample {
                    input: parse_input(field(0)?)?,
                    lhs: field(1)?.parse()?,
                    rhs: field(2)?.parse()?,
                })
            })
            .collect()
    }

    pub fn to_plain(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "identity: {}", self.identity);
        if let Some(f) = self.function {
            let _ = write!(s, " (f = {f})");
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "range: {}", self.range);
        let _ = writeln!(s, "checked: {}", self.checked);
        let _ = writeln!(s, "status: {}", self.status);
        let _ = writeln!(s, "mismatches: {}", self.mismatches);
        for (k, v) in &self.extra {
            let _ = writeln!(s, "{k}: {v}");
        }
        if !self.skipped.is_empty() {
            let _ = writeln!(s, "skipped: {}", format_input(&self.skipped));
        }
        for note in &self.notes {
            let _ = writeln!(s, "note: {note}");
        }
        for c in &self.counterexamples {
            let _ = writeln!(s, "  [{}] lhs = {}  rhs = {}", format_input(&c.input), c.lhs, c.rhs);
        }
        if (self.counterexamples.len() as u64) < self.mismatches {
            let _ = writeln!(s, "  ... {} more", self.mismatches - self.counterexamples.len() as u64);
        }
        s
    }
}
