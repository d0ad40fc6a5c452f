//! Record formatting: `key=value` lines or one JSON object per line.

use std::io::{self, Write};

use crate::affine::{theta_wall_reflection, AffineWeylElement, Level};
use crate::rootsys::RootSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Records,
    JsonLines,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Text(String),
    Int(String),
    Bool(bool),
}

impl Value {
    pub fn text(s: impl ToString) -> Self {
        Value::Text(s.to_string())
    }

    pub fn int(n: impl ToString) -> Self {
        Value::Int(n.to_string())
    }
}

pub type Record = Vec<(&'static str, Value)>;

pub fn write_record(out: &mut dyn Write, format: Format, record: &Record) -> io::Result<()> {
    match format {
        Format::Records => {
            let line: Vec<String> = record
                .iter()
                .map(|(k, v)| match v {
                    Value::Text(s) | Value::Int(s) => format!("{k}={s}"),
                    Value::Bool(b) => format!("{k}={b}"),
                })
                .collect();
            writeln!(out, "{}", line.join(" "))
        }
        Format::JsonLines => {
            let fields: Vec<String> = record
                .iter()
                .map(|(k, v)| {
                    let v = match v {
                        Value::Text(s) => serde_json::to_string(s).expect("string serializes"),
                        Value::Int(s) => s.clone(),
                        Value::Bool(b) => b.to_string(),
                    };
                    format!("{}:{v}", serde_json::to_string(k).expect("string serializes"))
                })
                .collect();
            writeln!(out, "{{{}}}", fields.join(","))
        }
    }
}

/// Sort key for group elements: translation in root coordinates, then word.
pub fn element_key(rs: &RootSystem, g: &AffineWeylElement) -> (Vec<num_rational::BigRational>, Vec<usize>) {
    (g.translation_root_coords(rs), g.finite().word().to_vec())
}

/// Like [`AffineWeylElement::display`], with `e` and `saff` for the identity
/// and the theta-wall reflection.
pub fn element_alias(rs: &RootSystem, level: Level, g: &AffineWeylElement) -> String {
    if g.is_identity() {
        "e".into()
    } else if *g == theta_wall_reflection(rs, level) {
        "saff".into()
    } else {
        g.display(rs)
    }
}
