use clap::ValueEnum;
use serde_json::{json, Value};

use crate::arith::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// A CSV table: header plus rows.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// Everything one command produced, renderable in every output format.
#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub tables: Vec<Table>,
    pub exit_code: i32,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => render_json(&self.json),
            Format::Csv => {
                let blocks: Vec<String> = self.tables.iter().map(render_csv).collect();
                blocks.join("\n")
            }
        }
    }
}

pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

fn render_csv(table: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.header).expect("in-memory write");
    for row in &table.rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

/// Exact and decimal renderings of a rational.
#[derive(Debug, Clone, Copy)]
pub struct Fmt {
    pub digits: usize,
}

impl Fmt {
    pub fn text(&self, r: &Rational) -> String {
        format!("{} ({})", r, r.to_decimal(self.digits))
    }

    pub fn json(&self, r: &Rational) -> Value {
        json!({
            "num": r.numer().to_string(),
            "den": r.denom().to_string(),
            "decimal": r.to_decimal(self.digits),
        })
    }

    pub fn cells(&self, r: &Rational) -> [String; 3] {
        [
            r.numer().to_string(),
            r.denom().to_string(),
            r.to_decimal(self.digits),
        ]
    }
}

pub fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}
