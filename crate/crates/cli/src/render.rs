//! Output formats: aligned text tables, JSON and CSV.

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub title: Option<String>,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Table {
        Table { title: None, headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn titled(mut self, title: impl Into<String>) -> Table {
        self.title = Some(title.into());
        self
    }

    /// A two-column field/value table.
    pub fn fields(pairs: Vec<(&str, String)>) -> Table {
        let mut t = Table::new(&["field", "value"]);
        for (k, v) in pairs {
            t.push(vec![k.to_string(), v]);
        }
        t
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn human(&self, out: &mut String) {
        if let Some(t) = &self.title {
            out.push_str(t);
            out.push('\n');
        }
        let cols = self.headers.len();
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, cell) in cells.iter().enumerate().take(cols) {
                if i + 1 == cols {
                    s.push_str(cell);
                } else {
                    let pad = widths[i] - cell.chars().count();
                    s.push_str(cell);
                    s.push_str(&" ".repeat(pad + 2));
                }
            }
            s.trim_end().to_string()
        };
        out.push_str(&line(&self.headers));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&line(row));
            out.push('\n');
        }
    }

    fn csv(&self, out: &mut String) {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        let bytes = w.into_inner().expect("in-memory flush");
        out.push_str(&String::from_utf8(bytes).expect("utf-8 input"));
    }
}

/// One command's result in every format.
#[derive(Clone, Debug)]
pub struct Rendered {
    pub json: Value,
    pub tables: Vec<Table>,
    /// Replaces the table rendering in human format.
    pub document: Option<String>,
}

impl Rendered {
    pub fn new(json: Value, tables: Vec<Table>) -> Rendered {
        Rendered { json, tables, document: None }
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Json => {
                out = serde_json::to_string_pretty(&self.json).expect("serialisable");
                out.push('\n');
            }
            Format::Human => {
                if let Some(doc) = &self.document {
                    return doc.clone();
                }
                for (i, t) in self.tables.iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    t.human(&mut out);
                }
            }
            Format::Csv => {
                for (i, t) in self.tables.iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    t.csv(&mut out);
                }
            }
        }
        out
    }
}
