//! Reproducible JSON output: keys sorted, floats printed with 17 significant
//! digits in exponent form, one object per line.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Value;

use crate::error::{PlgError, Result};

pub const SCHEMA: &str = "plg-report/1";

struct FixedFloat;

impl Formatter for FixedFloat {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Serializes through [`Value`] so map keys come out sorted, then prints
/// compactly with fixed float formatting and a trailing newline.
pub fn to_string<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| PlgError::Internal(e.to_string()))?;
    Ok(value_to_string(&v))
}

pub fn value_to_string(v: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedFloat);
    v.serialize(&mut ser).expect("writing to a Vec cannot fail");
    let mut s = String::from_utf8(out).expect("serde_json emits UTF-8");
    s.push('\n');
    s
}

/// Inserts `"schema": "plg-report/1"` into a JSON object.
pub fn with_schema(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), Value::String(SCHEMA.into()));
    }
    v
}
