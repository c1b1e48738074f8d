//! Ordered output tables rendered as CSV or JSON with identical numbers.

use std::io::{self, Write};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// Seventeen significant digits.
pub fn format_num(v: f64) -> String {
    format!("{v:.16e}")
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format_num(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Num(v) if v.is_finite() => format_num(*v),
            Cell::Num(_) => "null".to_string(),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => serde_json::Value::from(s.as_str()).to_string(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, format: Format, out: W) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()
    }

    /// `{"columns": [...], "rows": [[...], ...]}`, one row per line.
    fn write_json<W: Write>(&self, mut out: W) -> io::Result<()> {
        let columns: Vec<String> = self
            .columns
            .iter()
            .map(|c| serde_json::Value::from(*c).to_string())
            .collect();
        writeln!(out, "{{\"columns\": [{}],", columns.join(", "))?;
        writeln!(out, " \"rows\": [")?;
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(Cell::json).collect();
            let sep = if i + 1 < self.rows.len() { "," } else { "" };
            writeln!(out, "  [{}]{sep}", cells.join(", "))?;
        }
        writeln!(out, " ]}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["name", "x", "ok"]);
        t.push(vec!["a,b".into(), 0.1.into(), true.into()]);
        t.push(vec!["c".into(), f64::NAN.into(), false.into()]);
        t
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        sample().write(Format::Csv, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(
            s,
            "name,x,ok\n\"a,b\",1.0000000000000001e-1,true\nc,NaN,false\n"
        );
    }

    #[test]
    fn json_is_valid_and_matches_csv_digits() {
        let mut buf = Vec::new();
        sample().write(Format::Json, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.contains("1.0000000000000001e-1"));
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["rows"][0][0], "a,b");
        assert_eq!(v["rows"][0][1].as_f64().unwrap(), 0.1);
        assert!(v["rows"][1][1].is_null());
    }
}
