//! Machine-readable verification reports.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::rational::rational_to_string;
use crate::arith::QuadExtElem;
use crate::elliptic::EllipticPoint;
use crate::hyper::WPPoint;
use crate::Rational;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "TRUSTED-INPUT")]
    TrustedInput,
    #[serde(rename = "PARTIAL")]
    Partial,
    #[serde(rename = "FAIL")]
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::TrustedInput => "TRUSTED-INPUT",
            Status::Partial => "PARTIAL",
            Status::Fail => "FAIL",
        })
    }
}

/// One recorded assertion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub operands: Value,
}

/// A claim together with the checks that support it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Claim {
    pub id: String,
    pub status: Status,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<Check>,
    pub witnesses: BTreeMap<String, Value>,
    pub parameters: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(skip)]
    partial: bool,
}

impl Claim {
    pub fn new(id: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            status: Status::Pass,
            checks: Vec::new(),
            first_failure: None,
            witnesses: BTreeMap::new(),
            parameters: BTreeMap::new(),
            notes: Vec::new(),
            source: None,
            partial: false,
        }
    }

    /// An input taken on trust, naming where it comes from.
    pub fn trusted(id: impl Into<String>, source: impl Into<String>) -> Self {
        let mut c = Self::new(id);
        c.source = Some(source.into());
        c.refresh();
        c
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, operands: Value) -> bool {
        let c = Check { name: name.into(), passed, operands };
        if !passed && self.first_failure.is_none() {
            self.first_failure = Some(c.clone());
        }
        self.checks.push(c);
        self.refresh();
        passed
    }

    /// Records an error as a failed check.
    pub fn check_result<T>(&mut self, name: impl Into<String>, r: crate::Result<T>) -> Option<T> {
        match r {
            Ok(v) => {
                self.check(name, true, Value::Null);
                Some(v)
            }
            Err(e) => {
                self.check(name, false, json!({ "error": e.to_string() }));
                None
            }
        }
    }

    pub fn witness(&mut self, key: impl Into<String>, v: Value) -> &mut Self {
        self.witnesses.insert(key.into(), v);
        self
    }

    pub fn param(&mut self, key: impl Into<String>, v: Value) -> &mut Self {
        self.parameters.insert(key.into(), v);
        self
    }

    pub fn note(&mut self, s: impl Into<String>) -> &mut Self {
        self.notes.push(s.into());
        self
    }

    /// Marks the claim as only partly established.
    pub fn mark_partial(&mut self, reason: impl Into<String>) -> &mut Self {
        self.partial = true;
        self.notes.push(reason.into());
        self.refresh();
        self
    }

    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }

    fn refresh(&mut self) {
        self.status = if self.first_failure.is_some() {
            Status::Fail
        } else if self.partial {
            Status::Partial
        } else if self.source.is_some() {
            Status::TrustedInput
        } else {
            Status::Pass
        };
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema_version: &'static str,
    pub claims: Vec<Claim>,
}

impl Default for VerificationReport {
    fn default() -> Self {
        Self::new()
    }
}

impl VerificationReport {
    pub fn new() -> Self {
        Self { schema_version: SCHEMA_VERSION, claims: Vec::new() }
    }

    pub fn push(&mut self, c: Claim) {
        self.claims.push(c);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.claims.extend(other.claims);
    }

    /// The worst status present; an empty report passes.
    pub fn status(&self) -> Status {
        self.claims.iter().map(|c| c.status).max().unwrap_or(Status::Pass)
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// 0 when everything passed or was trusted, 2 on any failure, 3 when the
    /// worst outcome is partial.
    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Pass | Status::TrustedInput => 0,
            Status::Fail => 2,
            Status::Partial => 3,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            out.push_str(&format!("{:<14} {}\n", c.status.to_string(), c.id));
            if let Some(f) = &c.first_failure {
                out.push_str(&format!("    first failure: {} {}\n", f.name, f.operands));
            }
            for n in &c.notes {
                out.push_str(&format!("    note: {n}\n"));
            }
            if let Some(s) = &c.source {
                out.push_str(&format!("    source: {s}\n"));
            }
        }
        out.push_str(&format!("overall: {}\n", self.status()));
        out
    }
}

/// JSON encodings used across reports.
pub trait ToJson {
    fn to_json(&self) -> Value;
}

impl ToJson for Rational {
    fn to_json(&self) -> Value {
        Value::String(rational_to_string(self))
    }
}

impl ToJson for QuadExtElem {
    fn to_json(&self) -> Value {
        json!({ "a": rational_to_string(self.a()), "b": rational_to_string(self.b()), "d": self.d() })
    }
}

impl ToJson for WPPoint {
    fn to_json(&self) -> Value {
        json!(self.to_strings())
    }
}

impl<F: ToJson> ToJson for EllipticPoint<F> {
    fn to_json(&self) -> Value {
        match self {
            EllipticPoint::Infinity => Value::String("infinity".into()),
            EllipticPoint::Affine { x, y } => json!([x.to_json(), y.to_json()]),
        }
    }
}

impl<T: ToJson> ToJson for [T] {
    fn to_json(&self) -> Value {
        Value::Array(self.iter().map(ToJson::to_json).collect())
    }
}

impl<T: ToJson> ToJson for Vec<T> {
    fn to_json(&self) -> Value {
        self.as_slice().to_json()
    }
}
