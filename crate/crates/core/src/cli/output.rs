//! Output records and their table, JSON and CSV renderings.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{Map, Number, Value};

/// Significant digits of every printed float.
pub const SIG_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Ints(Vec<BigInt>),
    Null,
}

impl Field {
    fn render(&self) -> String {
        match self {
            Field::Num(v) => format_sig(*v),
            Field::Int(n) => n.to_string(),
            Field::Bool(b) => b.to_string(),
            Field::Text(s) => s.clone(),
            Field::Ints(v) => {
                let items: Vec<String> = v.iter().map(|n| n.to_string()).collect();
                format!("[{}]", items.join(", "))
            }
            Field::Null => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Field::Num(v) => {
                let s = format_sig(*v);
                match s.parse::<f64>().ok().and_then(Number::from_f64) {
                    Some(n) if v.is_finite() => Value::Number(n),
                    _ => Value::String(s),
                }
            }
            Field::Int(n) => Value::from(*n),
            Field::Bool(b) => Value::Bool(*b),
            Field::Text(s) => Value::String(s.clone()),
            Field::Ints(v) => Value::Array(
                v.iter()
                    .map(|n| {
                        n.to_i64()
                            .map(Value::from)
                            .unwrap_or_else(|| Value::String(n.to_string()))
                    })
                    .collect(),
            ),
            Field::Null => Value::Null,
        }
    }
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Num(v)
    }
}

impl From<bool> for Field {
    fn from(b: bool) -> Self {
        Field::Bool(b)
    }
}

impl From<&str> for Field {
    fn from(s: &str) -> Self {
        Field::Text(s.to_string())
    }
}

impl From<String> for Field {
    fn from(s: String) -> Self {
        Field::Text(s)
    }
}

impl From<usize> for Field {
    fn from(n: usize) -> Self {
        Field::Int(n as i64)
    }
}

impl From<u64> for Field {
    fn from(n: u64) -> Self {
        Field::Int(n as i64)
    }
}

impl From<Option<f64>> for Field {
    fn from(v: Option<f64>) -> Self {
        v.map(Field::Num).unwrap_or(Field::Null)
    }
}

/// Ordered key/value pairs. Keys keep insertion order in every format.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputRecord {
    fields: Vec<(String, Field)>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        OutputRecord::default().with("command", command)
    }

    /// A record without the leading `command` key.
    pub fn bare() -> Self {
        OutputRecord::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Field>) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Field>) {
        self.fields.push((key.to_string(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.fields.iter().map(|(k, _)| k.as_str())
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (k, v) in &self.fields {
            map.insert(k.clone(), v.to_json());
        }
        Value::Object(map)
    }
}

/// Formats `v` to [`SIG_DIGITS`] significant digits without trailing zeros.
/// Plain notation for exponents in `[-4, 12)`, scientific otherwise;
/// infinities print as `inf` / `-inf`.
pub fn format_sig(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, v.abs());
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let sign = if v < 0.0 { "-" } else { "" };
    if (-4..SIG_DIGITS as i32).contains(&exp) {
        let body = if exp < 0 {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
        } else {
            let int_len = exp as usize + 1;
            if digits.len() <= int_len {
                format!("{}{}", digits, "0".repeat(int_len - digits.len()))
            } else {
                format!("{}.{}", &digits[..int_len], &digits[int_len..])
            }
        };
        format!("{sign}{body}")
    } else {
        let (head, tail) = digits.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        }
    }
}

/// Renders records. A single table record prints vertically as
/// `key  value` lines; several print as columns under a header row.
pub fn render(records: &[OutputRecord], format: Format) -> String {
    match format {
        Format::Table => render_table(records),
        Format::Json => {
            let mut out = String::new();
            for r in records {
                out.push_str(&r.to_json().to_string());
                out.push('\n');
            }
            out
        }
        Format::Csv => render_csv(records),
    }
}

fn render_table(records: &[OutputRecord]) -> String {
    let mut out = String::new();
    if let [single] = records {
        let width = single.keys().map(str::len).max().unwrap_or(0);
        for (k, v) in &single.fields {
            let _ = writeln!(out, "{k:<width$}  {}", v.render());
        }
        return out;
    }
    let Some(first) = records.first() else {
        return out;
    };
    let header: Vec<&str> = first.keys().collect();
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            header
                .iter()
                .map(|k| r.get(k).map(Field::render).unwrap_or_default())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = header
        .iter()
        .enumerate()
        .map(|(i, h)| {
            rows.iter()
                .map(|r| r[i].chars().count())
                .chain([h.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    let _ = writeln!(out, "{}", line(header.clone()));
    for r in &rows {
        let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
    }
    out
}

fn render_csv(records: &[OutputRecord]) -> String {
    let Some(first) = records.first() else {
        return String::new();
    };
    let header: Vec<&str> = first.keys().collect();
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for r in records {
        let row: Vec<String> = header
            .iter()
            .map(|k| r.get(k).map(Field::render).unwrap_or_default())
            .collect();
        w.write_record(&row).expect("in-memory write");
    }
    let bytes = w.into_inner().expect("in-memory flush");
    String::from_utf8(bytes).expect("utf-8 fields")
}
