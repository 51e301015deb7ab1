//! Row rendering: CSV with a header row, or JSON-lines.

use std::io::{self, Write};

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Text(&'static str),
    /// Column with no value for this row.
    Missing,
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<Option<f64>> for Value {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Value::Missing, Value::Num)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<u32> for Value {
    fn from(x: u32) -> Self {
        Value::Int(x as i64)
    }
}

impl From<&'static str> for Value {
    fn from(x: &'static str) -> Self {
        Value::Text(x)
    }
}

/// Seventeen significant digits, enough to round-trip any binary64.
pub fn number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// One output row, columns in emission order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(Vec<(&'static str, Value)>);

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.0.push((key, value.into()));
        self
    }

    pub fn push(&mut self, key: &'static str, value: impl Into<Value>) {
        self.0.push((key, value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }

    fn keys(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.0.iter().map(|(k, _)| *k)
    }
}

/// Streams records in the chosen format. The CSV header is taken from the
/// first record; later records must carry the same columns.
pub struct RowWriter<'a> {
    out: &'a mut dyn Write,
    format: Format,
    header_done: bool,
}

impl<'a> RowWriter<'a> {
    pub fn new(out: &'a mut dyn Write, format: Format) -> Self {
        Self {
            out,
            format,
            header_done: false,
        }
    }

    pub fn write(&mut self, record: &Record) -> io::Result<()> {
        match self.format {
            Format::Csv => self.write_csv(record),
            Format::Json => self.write_json(record),
        }
    }

    fn write_csv(&mut self, record: &Record) -> io::Result<()> {
        if !self.header_done {
            let header: Vec<_> = record.keys().collect();
            writeln!(self.out, "{}", header.join(","))?;
            self.header_done = true;
        }
        let cells: Vec<String> = record
            .0
            .iter()
            .map(|(_, v)| match v {
                Value::Num(x) => number(*x),
                Value::Int(i) => i.to_string(),
                Value::Text(s) => (*s).to_string(),
                Value::Missing => String::new(),
            })
            .collect();
        writeln!(self.out, "{}", cells.join(","))
    }

    fn write_json(&mut self, record: &Record) -> io::Result<()> {
        let fields: Vec<String> = record
            .0
            .iter()
            .map(|(k, v)| {
                let value = match v {
                    Value::Num(x) if x.is_finite() => number(*x),
                    Value::Num(_) | Value::Missing => "null".into(),
                    Value::Int(i) => i.to_string(),
                    Value::Text(s) => serde_json::Value::from(*s).to_string(),
                };
                format!("{}:{}", serde_json::Value::from(*k), value)
            })
            .collect();
        writeln!(self.out, "{{{}}}", fields.join(","))
    }
}
