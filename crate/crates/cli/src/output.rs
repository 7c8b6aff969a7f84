//! Rendering of command results as JSON, CSV or a plain table.
//!
//! Floats use a fixed format so that identical inputs give byte-identical
//! output: 17 significant digits in JSON, 12 in CSV and tables. Echoed
//! inputs use the shortest representation that parses back to the same
//! value.

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Computed value.
    F(f64),
    /// User-supplied value, echoed as given.
    Input(f64),
    I(i64),
    S(String),
    B(bool),
    Null,
    List(Vec<Cell>),
    Obj(Vec<(String, Cell)>),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::F(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Null, Cell::F)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::I(i64::from(x))
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::I(x as i64)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::I(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::B(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::S(x.to_owned())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::S(x)
    }
}

/// Result of one command: named fields plus an optional table of rows.
#[derive(Debug, Default)]
pub struct Report {
    pub fields: Vec<(String, Cell)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn field(&mut self, key: &str, value: impl Into<Cell>) -> &mut Self {
        self.fields.push((key.to_owned(), value.into()));
        self
    }

    pub fn table(&mut self, columns: &[&str], rows: Vec<Vec<Cell>>) -> &mut Self {
        self.columns = columns.iter().map(|c| (*c).to_owned()).collect();
        self.rows = rows;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json(),
            Format::Csv => self.csv(),
            Format::Table => self.plain(),
        }
    }

    fn json(&self) -> String {
        let mut map = Map::new();
        for (k, v) in &self.fields {
            map.insert(k.clone(), json_value(v));
        }
        if !self.columns.is_empty() {
            let rows = self
                .rows
                .iter()
                .map(|row| {
                    let obj = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.clone(), json_value(v)))
                        .collect::<Map<_, _>>();
                    Value::Object(obj)
                })
                .collect();
            map.insert("rows".into(), Value::Array(rows));
        }
        let mut out = serde_json::to_string_pretty(&Value::Object(map)).expect("serializable");
        out.push('\n');
        out
    }

    fn csv(&self) -> String {
        let (header, rows): (Vec<String>, Vec<Vec<String>>) = if self.columns.is_empty() {
            let mut flat = Vec::new();
            for (k, v) in &self.fields {
                flatten(k, v, &mut flat);
            }
            let (h, r): (Vec<_>, Vec<_>) = flat.into_iter().unzip();
            (h, vec![r])
        } else {
            let rows = self
                .rows
                .iter()
                .map(|row| row.iter().map(|c| short_text(c, true)).collect())
                .collect();
            (self.columns.clone(), rows)
        };
        let mut out = header
            .iter()
            .map(|h| csv_escape(h))
            .collect::<Vec<_>>()
            .join(",");
        out.push('\n');
        for row in rows {
            out.push_str(
                &row.iter()
                    .map(|c| csv_escape(c))
                    .collect::<Vec<_>>()
                    .join(","),
            );
            out.push('\n');
        }
        out
    }

    fn plain(&self) -> String {
        let mut flat = Vec::new();
        for (k, v) in &self.fields {
            flatten(k, v, &mut flat);
        }
        let width = flat
            .iter()
            .map(|(k, _)| k.chars().count())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &flat {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        if !self.columns.is_empty() {
            if !flat.is_empty() {
                out.push('\n');
            }
            let cells: Vec<Vec<String>> = self
                .rows
                .iter()
                .map(|row| row.iter().map(|c| short_text(c, false)).collect())
                .collect();
            let widths: Vec<usize> = self
                .columns
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    cells
                        .iter()
                        .map(|r| r[i].chars().count())
                        .chain(std::iter::once(c.chars().count()))
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |items: &[String]| {
                items
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_owned()
            };
            out.push_str(&line(&self.columns));
            out.push('\n');
            for row in &cells {
                out.push_str(&line(row));
                out.push('\n');
            }
        }
        out
    }
}

fn number(text: &str) -> Value {
    serde_json::from_str::<Number>(text).map_or(Value::Null, Value::Number)
}

fn json_value(cell: &Cell) -> Value {
    match cell {
        Cell::F(x) if x.is_finite() => number(&format!("{x:.16e}")),
        Cell::Input(x) if x.is_finite() => number(&format!("{x}")),
        Cell::F(_) | Cell::Input(_) | Cell::Null => Value::Null,
        Cell::I(i) => Value::from(*i),
        Cell::S(s) => Value::String(s.clone()),
        Cell::B(b) => Value::Bool(*b),
        Cell::List(items) => Value::Array(items.iter().map(json_value).collect()),
        Cell::Obj(entries) => Value::Object(
            entries
                .iter()
                .map(|(k, v)| (k.clone(), json_value(v)))
                .collect(),
        ),
    }
}

/// Text with 12 significant digits; lists are joined with `;`.
fn short_text(cell: &Cell, csv: bool) -> String {
    match cell {
        Cell::F(x) if x.is_finite() => format!("{x:.11e}"),
        Cell::F(x) => format!("{x}"),
        Cell::Input(x) => format!("{x}"),
        Cell::I(i) => i.to_string(),
        Cell::S(s) => s.clone(),
        Cell::B(b) => b.to_string(),
        Cell::Null => {
            if csv {
                String::new()
            } else {
                "-".into()
            }
        }
        Cell::List(items) => items
            .iter()
            .map(|c| short_text(c, csv))
            .collect::<Vec<_>>()
            .join(";"),
        Cell::Obj(entries) => entries
            .iter()
            .map(|(k, v)| format!("{k}={}", short_text(v, csv)))
            .collect::<Vec<_>>()
            .join(";"),
    }
}

fn flatten(prefix: &str, cell: &Cell, out: &mut Vec<(String, String)>) {
    match cell {
        Cell::Obj(entries) => {
            for (k, v) in entries {
                flatten(&format!("{prefix}.{k}"), v, out);
            }
        }
        other => out.push((prefix.to_owned(), short_text(other, true))),
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}
