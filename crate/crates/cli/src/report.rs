//! Tabular reports rendered as JSON or CSV.
//!
//! Floats are rounded to 12 significant digits once, in [`Cell::float`]; both
//! renderings print the rounded value with the same shortest representation.

use serde_json::{Map, Value};

use kq_core::scalar::format_rational;
use kq_core::{Rational, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float")
}

pub fn float_value(x: f64) -> Value {
    let r = round12(x);
    match serde_json::Number::from_f64(r) {
        Some(n) => Value::Number(n),
        None => Value::String(
            if r.is_nan() {
                "nan"
            } else if r > 0.0 {
                "inf"
            } else {
                "-inf"
            }
            .into(),
        ),
    }
}

/// Text of a float as it appears in both renderings.
pub fn format_float(x: f64) -> String {
    match float_value(x) {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s,
        _ => unreachable!(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell(Value);

impl Cell {
    pub fn float(x: f64) -> Cell {
        Cell(float_value(x))
    }

    pub fn int(x: impl Into<i128>) -> Cell {
        let x: i128 = x.into();
        Cell(match i64::try_from(x) {
            Ok(v) => Value::from(v),
            Err(_) => Value::String(x.to_string()),
        })
    }

    pub fn rational(r: &Rational) -> Cell {
        Cell(Value::String(format_rational(r)))
    }

    pub fn weight(w: &Weight) -> Cell {
        Cell(Value::from(w.coords().to_vec()))
    }

    pub fn text(s: impl Into<String>) -> Cell {
        Cell(Value::String(s.into()))
    }

    pub fn bool(b: bool) -> Cell {
        Cell(Value::Bool(b))
    }

    pub fn json(v: Value) -> Cell {
        Cell(v)
    }

    pub fn null() -> Cell {
        Cell(Value::Null)
    }

    fn csv_text(&self) -> String {
        match &self.0 {
            Value::Null => String::new(),
            Value::String(s) => s.clone(),
            Value::Array(items) if items.iter().all(Value::is_i64) => items
                .iter()
                .map(Value::to_string)
                .collect::<Vec<_>>()
                .join(","),
            other => other.to_string(),
        }
    }
}

impl From<Cell> for Value {
    fn from(c: Cell) -> Value {
        c.0
    }
}

/// A report: echoed inputs, scalar summary fields and one table.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub input: Map<String, Value>,
    pub summary: Vec<(String, Cell)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(command: &str, columns: &[&str]) -> Report {
        Report {
            command: command.into(),
            input: Map::new(),
            summary: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.input.insert(key.into(), value.into());
    }

    pub fn summary(&mut self, key: &str, value: Cell) {
        self.summary.push((key.into(), value));
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), Value::String(self.command.clone()));
        out.insert("input".into(), Value::Object(self.input.clone()));
        let mut summary = Map::new();
        for (k, v) in &self.summary {
            summary.insert(k.clone(), v.clone().into());
        }
        out.insert("summary".into(), Value::Object(summary));
        out.insert("columns".into(), Value::from(self.columns.clone()));
        let rows = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .cloned()
                        .zip(r.iter().cloned().map(Value::from))
                        .collect(),
                )
            })
            .collect();
        out.insert("rows".into(), Value::Array(rows));
        Value::Object(out)
    }

    /// Summary fields as `# key: value` comment lines, then the table.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# command: {}\n", self.command));
        for (k, v) in &self.summary {
            out.push_str(&format!("# {k}: {}\n", v.csv_text()));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::csv_text))
                .expect("in-memory write");
        }
        out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8"));
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv(),
        }
    }
}
