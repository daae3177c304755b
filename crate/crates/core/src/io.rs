//! File loading and the canonical JSON layout.
//!
//! Canonical text puts every object key on its own line, prints arrays of
//! scalars inline and arrays of arrays one element per line. Key order is
//! the declaration order of the serialized type. Files end with a newline.

use std::fmt::Write as _;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::biordered::BiorderedCategory;
use crate::cpc::ChainedProjectionCategory;
use crate::error::{DrcError, Result};
use crate::projection_algebra::ProjectionAlgebra;
use crate::semigroup::FiniteSemigroup;

/// Kind of a structure file, recognised from its keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Semigroup,
    Pa,
    Category,
    Cpc,
    Morphism,
    Model,
}

pub fn detect_kind(v: &Value) -> Result<FileKind> {
    let Value::Object(o) = v else {
        return Err(DrcError::Malformed("top level is not an object".into()));
    };
    let has = |k: &str| o.contains_key(k);
    Ok(if has("mul") {
        FileKind::Semigroup
    } else if has("dom") && has("pa") {
        FileKind::Cpc
    } else if has("dom") {
        FileKind::Category
    } else if has("theta") {
        FileKind::Pa
    } else if has("map") {
        FileKind::Morphism
    } else if has("violate") {
        FileKind::Model
    } else {
        return Err(DrcError::Malformed("unrecognised structure file".into()));
    })
}

pub fn to_canonical_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    let mut out = String::new();
    write_value(&mut out, &v, 0);
    out.push('\n');
    Ok(out)
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn indent(out: &mut String, level: usize) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn write_value(out: &mut String, v: &Value, level: usize) {
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write!(out, "{x}").expect("string write");
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                indent(out, level + 1);
                write_value(out, x, level + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            indent(out, level);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                indent(out, level + 1);
                write!(out, "{}: ", Value::String(k.clone())).expect("string write");
                write_value(out, x, level + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            indent(out, level);
            out.push('}');
        }
        scalar => write!(out, "{scalar}").expect("string write"),
    }
}

pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

/// Ranges are validated by deserialization; associativity is re-verified.
pub fn parse_semigroup(text: &str) -> Result<FiniteSemigroup> {
    let s: FiniteSemigroup = parse(text)?;
    s.verify_associative()?;
    Ok(s)
}

pub fn parse_pa(text: &str) -> Result<ProjectionAlgebra> {
    parse(text)
}

pub fn parse_category(text: &str) -> Result<BiorderedCategory> {
    parse(text)
}

pub fn parse_cpc(text: &str) -> Result<ChainedProjectionCategory> {
    parse(text)
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| DrcError::Malformed(format!("{}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| DrcError::Malformed(format!("{}: {e}", path.display())))
}

pub fn load_semigroup(path: &Path) -> Result<FiniteSemigroup> {
    parse_semigroup(&read_text(path)?)
}

pub fn load_pa(path: &Path) -> Result<ProjectionAlgebra> {
    parse_pa(&read_text(path)?)
}

pub fn load_cpc(path: &Path) -> Result<ChainedProjectionCategory> {
    parse_cpc(&read_text(path)?)
}

/// Parses `text` as `T` and prints it back; canonical input is returned unchanged.
pub fn reserialize<T: Serialize + DeserializeOwned>(text: &str) -> Result<String> {
    let v: T = parse(text)?;
    to_canonical_json(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn layout_of_a_small_semigroup() {
        let text = to_canonical_json(&corpus::chain_semilattice(2)).unwrap();
        assert_eq!(text, "{\n  \"n\": 2,\n  \"mul\": [\n    [0, 0],\n    [0, 1]\n  ],\n  \"D\": [0, 1],\n  \"R\": [0, 1]\n}\n");
        assert_eq!(reserialize::<FiniteSemigroup>(&text).unwrap(), text);
    }

    #[test]
    fn out_of_range_and_non_associative_files_are_rejected() {
        let bad_range = r#"{"n": 2, "mul": [[0, 2], [0, 1]], "D": [0, 1], "R": [0, 1]}"#;
        assert!(matches!(parse_semigroup(bad_range), Err(DrcError::Malformed(_))));
        // (0·0)·1 = 0 but 0·(0·1) = 1
        let bad_assoc = r#"{"n": 2, "mul": [[1, 0], [0, 0]], "D": [0, 0], "R": [0, 0]}"#;
        assert!(matches!(parse_semigroup(bad_assoc), Err(DrcError::AxiomFailure { .. })));
    }

    #[test]
    fn kinds_are_detected() {
        let s = serde_json::to_value(corpus::brandt_b2()).unwrap();
        assert_eq!(detect_kind(&s).unwrap(), FileKind::Semigroup);
        let p = serde_json::to_value(corpus::diamond_pa()).unwrap();
        assert_eq!(detect_kind(&p).unwrap(), FileKind::Pa);
        let c = serde_json::to_value(crate::functors::c_of(&corpus::brandt_b2()).unwrap()).unwrap();
        assert_eq!(detect_kind(&c).unwrap(), FileKind::Cpc);
        assert!(detect_kind(&serde_json::json!([1])).is_err());
    }
}
