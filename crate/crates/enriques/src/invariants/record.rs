//! Uniform records for exporting invariants as CSV rows or JSON.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::lattice::{CurveClass, MukaiVector};
use crate::rational::{fmt_rational, Rational};
use crate::series::PLaurent;

/// Which invariant a record holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InvariantKind {
    /// `N_{g,β}`.
    #[serde(rename = "GW-N")]
    GwN,
    /// `n_{g,β}`.
    #[serde(rename = "GW-n")]
    GwSmallN,
    /// `DT(v)`.
    #[serde(rename = "DT")]
    Dt,
    /// `dt(v)`.
    #[serde(rename = "dt")]
    DtPrimitive,
    /// `VW(v)`.
    #[serde(rename = "VW")]
    Vw,
    /// `f_β`.
    #[serde(rename = "PT-f")]
    PtF,
}

impl InvariantKind {
    /// Display name.
    pub fn name(self) -> &'static str {
        match self {
            InvariantKind::GwN => "GW-N",
            InvariantKind::GwSmallN => "GW-n",
            InvariantKind::Dt => "DT",
            InvariantKind::DtPrimitive => "dt",
            InvariantKind::Vw => "VW",
            InvariantKind::PtF => "PT-f",
        }
    }
}

/// Arguments of an invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecordArgs {
    /// A genus and a curve class.
    Curve { g: Option<i64>, beta: CurveClass },
    /// A Mukai vector.
    Mukai(MukaiVector),
}

/// The value of an invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecordValue {
    /// A rational number.
    Number(Rational),
    /// A Laurent polynomial in `p`.
    Laurent(PLaurent),
}

/// One computed invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantRecord {
    /// Which invariant.
    pub kind: InvariantKind,
    /// Its arguments.
    pub args: RecordArgs,
    /// Its value.
    pub value: RecordValue,
}

/// Header of [`InvariantRecord::csv_fields`].
pub const CSV_HEADER: [&str; 7] = [
    "g",
    "beta_k",
    "beta_d",
    "alpha_norm",
    "divisibility",
    "value_num",
    "value_den",
];

impl InvariantRecord {
    /// The curve class the record refers to (the `β` of a Mukai vector).
    pub fn beta(&self) -> CurveClass {
        match &self.args {
            RecordArgs::Curve { beta, .. } => *beta,
            RecordArgs::Mukai(v) => v.beta,
        }
    }

    /// Fields in the order of [`CSV_HEADER`]; `None` for Laurent values.
    /// The genus column is empty when absent, and the divisibility column
    /// holds the divisibility of `β` or of the Mukai vector.
    pub fn csv_fields(&self) -> Option<[String; 7]> {
        let RecordValue::Number(x) = &self.value else {
            return None;
        };
        let (g, div) = match &self.args {
            RecordArgs::Curve { g, beta } => (g.map(|g| g.to_string()).unwrap_or_default(), beta.divisibility()),
            RecordArgs::Mukai(v) => (String::new(), v.divisibility()),
        };
        let beta = self.beta();
        Some([
            g,
            beta.k.to_string(),
            beta.d.to_string(),
            beta.alpha.norm().to_string(),
            div.to_string(),
            x.numer().to_string(),
            x.denom().to_string(),
        ])
    }

    /// JSON mirror.
    pub fn to_json(&self) -> serde_json::Value {
        let args = match &self.args {
            RecordArgs::Curve { g, beta } => json!({"g": g, "beta": beta}),
            RecordArgs::Mukai(v) => json!({"v": v.to_json()}),
        };
        let value = match &self.value {
            RecordValue::Number(x) => json!(fmt_rational(x)),
            RecordValue::Laurent(f) => f.to_json(),
        };
        json!({"kind": self.kind, "args": args, "value": value})
    }
}
