//! Versioned output records.
//!
//! Exact integers are serialized losslessly as decimal strings (they
//! outgrow 64-bit machine words immediately), approximations as a
//! decimal value plus error bound plus the rigorous flag. Records
//! re-parse to identical structures, and the default output carries no
//! timing so byte-for-byte determinism holds for fixed inputs.

use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "bellnum.record/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Param {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResultItem {
    /// Exact integer as a decimal string.
    Integer {
        label: String,
        value: String,
    },
    /// Plain high-precision value without an attached bound.
    Value {
        label: String,
        value: String,
    },
    /// Value with error bound and rigor flag.
    Approx {
        label: String,
        value: String,
        error_bound: String,
        rigorous: bool,
    },
    /// Complex value with a bound on the modulus of the error.
    Complex {
        label: String,
        re: String,
        im: String,
        error_bound: String,
        rigorous: bool,
    },
    Flag {
        label: String,
        value: bool,
    },
    Note {
        label: String,
        text: String,
    },
}

impl ResultItem {
    pub fn label(&self) -> &str {
        match self {
            ResultItem::Integer { label, .. }
            | ResultItem::Value { label, .. }
            | ResultItem::Approx { label, .. }
            | ResultItem::Complex { label, .. }
            | ResultItem::Flag { label, .. }
            | ResultItem::Note { label, .. } => label,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema: String,
    pub command: String,
    pub parameters: Vec<Param>,
    pub results: Vec<ResultItem>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<u64>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        OutputRecord {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            parameters: Vec::new(),
            results: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn param(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.parameters.push(Param {
            name: name.into(),
            value: value.to_string(),
        });
        self
    }

    pub fn push(&mut self, item: ResultItem) -> &mut Self {
        self.results.push(item);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<OutputRecord, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// CSV rendering: a header line, one comment-free row per result.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("command,label,kind,value,extra,error_bound,rigorous\n");
        for item in &self.results {
            let (kind, value, extra, bound, rigorous) = match item {
                ResultItem::Integer { value, .. } => (
                    "integer",
                    value.clone(),
                    String::new(),
                    String::new(),
                    String::new(),
                ),
                ResultItem::Value { value, .. } => (
                    "value",
                    value.clone(),
                    String::new(),
                    String::new(),
                    String::new(),
                ),
                ResultItem::Approx {
                    value,
                    error_bound,
                    rigorous,
                    ..
                } => (
                    "approx",
                    value.clone(),
                    String::new(),
                    error_bound.clone(),
                    rigorous.to_string(),
                ),
                ResultItem::Complex {
                    re,
                    im,
                    error_bound,
                    rigorous,
                    ..
                } => (
                    "complex",
                    re.clone(),
                    im.clone(),
                    error_bound.clone(),
                    rigorous.to_string(),
                ),
                ResultItem::Flag { value, .. } => (
                    "flag",
                    value.to_string(),
                    String::new(),
                    String::new(),
                    String::new(),
                ),
                ResultItem::Note { text, .. } => (
                    "note",
                    text.clone(),
                    String::new(),
                    String::new(),
                    String::new(),
                ),
            };
            out.push_str(&format!(
                "{},{},{kind},{},{},{},{}\n",
                csv_field(&self.command),
                csv_field(item.label()),
                csv_field(&value),
                csv_field(&extra),
                csv_field(&bound),
                rigorous
            ));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
