//! Report documents and their JSON / CSV encodings.
//!
//! Floats are written in scientific notation with 17 significant digits so
//! that every `f64` round-trips exactly and identical runs produce identical
//! bytes. Non-finite values become `null`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

pub const SCHEMA_VERSION: &str = "1.0";

/// An `f64` with fixed 17-significant-digit encoding.
#[derive(Clone, Copy, Debug, Default)]
pub struct Num(pub f64);

impl PartialEq for Num {
    fn eq(&self, other: &Self) -> bool {
        self.0.to_bits() == other.0.to_bits() || (self.0.is_nan() && other.0.is_nan())
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_finite() {
            write!(f, "{:.16e}", self.0)
        } else {
            Ok(())
        }
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(self.to_string()).map_err(serde::ser::Error::custom)?;
            raw.serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Num(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN)))
    }
}

/// A complex number encoded as `[re, im]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cplx(pub Num, pub Num);

impl From<Complex64> for Cplx {
    fn from(z: Complex64) -> Self {
        Cplx(Num(z.re), Num(z.im))
    }
}

/// One result row. Fields irrelevant to a row's kind are `null` or empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub index: usize,
    pub context: String,
    pub convention: String,
    pub tau: Option<Cplx>,
    pub z: Option<Cplx>,
    pub residual: Option<Num>,
    pub tol: Option<Num>,
    pub pass: bool,
    /// Stable error code when the evaluation raised.
    pub error: Option<String>,
    pub values: Vec<Cplx>,
    pub metrics: BTreeMap<String, Num>,
    pub detail: Option<String>,
}

impl Row {
    pub fn new(context: impl Into<String>, convention: impl Into<String>) -> Self {
        Row {
            index: 0,
            context: context.into(),
            convention: convention.into(),
            tau: None,
            z: None,
            residual: None,
            tol: None,
            pass: false,
            error: None,
            values: Vec::new(),
            metrics: BTreeMap::new(),
            detail: None,
        }
    }

    pub fn at(mut self, tau: Complex64) -> Self {
        self.tau = Some(tau.into());
        self
    }

    pub fn with_z(mut self, z: Complex64) -> Self {
        self.z = Some(z.into());
        self
    }

    /// Sets residual and tolerance; `pass` becomes `residual <= tol`.
    pub fn judged(mut self, residual: f64, tol: f64) -> Self {
        self.residual = Some(Num(residual));
        self.tol = Some(Num(tol));
        self.pass = residual <= tol;
        self
    }

    pub fn failed(mut self, err: &p6_core::Error) -> Self {
        self.pass = false;
        self.error = Some(err.code().to_string());
        self.detail = Some(err.to_string());
        self
    }

    pub fn metric(mut self, key: &str, v: f64) -> Self {
        self.metrics.insert(key.to_string(), Num(v));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub subcommand: String,
    pub args: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub pass_count: usize,
    pub fail_count: usize,
    /// Largest finite residual over all rows, `null` if none.
    pub max_residual: Option<Num>,
}

impl Summary {
    pub fn of(rows: &[Row]) -> Self {
        let pass_count = rows.iter().filter(|r| r.pass).count();
        let max_residual = rows
            .iter()
            .filter_map(|r| r.residual)
            .map(|n| n.0)
            .filter(|v| v.is_finite())
            .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))))
            .map(Num);
        Summary {
            pass_count,
            fail_count: rows.len() - pass_count,
            max_residual,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub command: CommandEcho,
    /// Calibration identifiers, e.g. `{"period": "double/z"}`.
    pub convention: BTreeMap<String, String>,
    pub results: Vec<Row>,
    pub summary: Summary,
}

impl ReportDocument {
    pub fn new(command: CommandEcho, convention: BTreeMap<String, String>, mut results: Vec<Row>) -> Self {
        for (i, r) in results.iter_mut().enumerate() {
            r.index = i;
        }
        let summary = Summary::of(&results);
        ReportDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            command,
            convention,
            results,
            summary,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail_count == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER)?;
        for r in &self.results {
            let cplx = |c: &Option<Cplx>| match c {
                Some(Cplx(re, im)) => (re.to_string(), im.to_string()),
                None => (String::new(), String::new()),
            };
            let (tr, ti) = cplx(&r.tau);
            let (zr, zi) = cplx(&r.z);
            let num = |n: &Option<Num>| n.map(|v| v.to_string()).unwrap_or_default();
            let values = r
                .values
                .iter()
                .map(|Cplx(a, b)| format!("{a} {b}"))
                .collect::<Vec<_>>()
                .join(";");
            let metrics = r
                .metrics
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(";");
            w.write_record([
                r.index.to_string(),
                r.context.clone(),
                r.convention.clone(),
                tr,
                ti,
                zr,
                zi,
                num(&r.residual),
                num(&r.tol),
                r.pass.to_string(),
                r.error.clone().unwrap_or_default(),
                values,
                metrics,
                r.detail.clone().unwrap_or_default(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

pub const CSV_HEADER: [&str; 14] = [
    "index",
    "context",
    "convention",
    "tau_re",
    "tau_im",
    "z_re",
    "z_im",
    "residual",
    "tol",
    "pass",
    "error",
    "values",
    "metrics",
    "detail",
];
