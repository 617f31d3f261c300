//! Plain CSV tables: `#` metadata lines, one header row, numbers printed
//! with 17 significant digits so that they parse back to the same double.

use std::io::Write;

use serde_json::{Map, Value};

use crate::CliError;

pub fn fmt_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub metadata: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            metadata: Vec::new(),
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(mut self, line: impl Into<String>) -> Self {
        self.metadata.push(line.into());
        self
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> Result<(), CliError> {
        for line in &self.metadata {
            writeln!(out, "# {line}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|&x| fmt_num(x)))?;
        }
        w.flush()?;
        Ok(())
    }

    /// An array of objects keyed by column name. Non-finite values become `null`.
    pub fn to_json(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, &x)| {
                        (
                            c.clone(),
                            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number),
                        )
                    })
                    .collect();
                Value::Object(obj)
            })
            .collect();
        Value::Array(rows)
    }

    /// Reads back the CSV written by [`Table::write_csv`].
    pub fn read_csv(text: &str) -> Result<Table, CliError> {
        let metadata = text
            .lines()
            .take_while(|l| l.starts_with('#'))
            .map(|l| l.trim_start_matches('#').trim().to_string())
            .collect();
        let mut r = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let columns = r.headers()?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for record in r.records() {
            let record = record?;
            let row = record
                .iter()
                .map(|f| {
                    f.parse::<f64>()
                        .map_err(|_| CliError::Usage(format!("not a number: `{f}`")))
                })
                .collect::<Result<_, _>>()?;
            rows.push(row);
        }
        Ok(Table {
            metadata,
            columns,
            rows,
        })
    }
}
