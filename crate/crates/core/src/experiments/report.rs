use std::collections::BTreeMap;
use std::io::Write;

use serde_json::{json, Map, Value};

use super::config::Format;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:?}"),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(v) => json!(format!("{v:?}")),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i32> for Cell {
    fn from(v: i32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
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

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

/// Measurements of one run. Rows depend only on the configuration; run
/// metadata lives in `summary`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: BTreeMap<String, Value>,
    /// Number of invariant violations observed.
    pub violations: u64,
}

impl RunReport {
    pub fn new(command: &str, config: BTreeMap<String, String>, columns: &[&str]) -> Self {
        Self {
            command: command.to_string(),
            config,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: BTreeMap::new(),
            violations: 0,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }

    /// Config as `# key=value` comment lines (minus the output path), then
    /// the header and one line per row.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# command={}", self.command)?;
        for (k, v) in self.config.iter().filter(|(k, _)| *k != "out") {
            writeln!(w, "# {k}={v}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn rows_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .cloned()
                        .zip(row.iter().map(Cell::to_json))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> Result<()> {
        let mut summary: Map<String, Value> = self.summary.clone().into_iter().collect();
        summary.insert("command".into(), json!(self.command));
        summary.insert("violations".into(), json!(self.violations));
        let doc = json!({ "config": self.config, "rows": self.rows_json(), "summary": summary });
        serde_json::to_writer_pretty(&mut w, &doc)?;
        writeln!(w)?;
        Ok(())
    }

    /// The last column of every row, one per line.
    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        let i = self.columns.len().saturating_sub(1);
        for row in &self.rows {
            writeln!(w, "{}", row[i].render())?;
        }
        Ok(())
    }

    pub fn write<W: Write>(&self, format: Format, w: W) -> Result<()> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => self.write_json(w),
            Format::Text => self.write_text(w),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json_shapes() {
        let mut r = RunReport::new("demo", BTreeMap::new(), &["s", "ratio"]);
        r.push(vec![1u32.into(), 0.5.into()]);
        let mut csv = Vec::new();
        r.write_csv(&mut csv).unwrap();
        assert_eq!(String::from_utf8(csv).unwrap(), "# command=demo\ns,ratio\n1,0.5\n");
        let mut js = Vec::new();
        r.write_json(&mut js).unwrap();
        let v: Value = serde_json::from_slice(&js).unwrap();
        assert_eq!(v["rows"][0]["ratio"], json!(0.5));
        assert!(v.get("config").is_some() && v.get("summary").is_some());
    }
}
