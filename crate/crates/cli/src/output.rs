use clap::ValueEnum;
use gammalab_core::BivarPoly;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A command result in all three renderings.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub text: Vec<(String, String)>,
    pub csv_header: Vec<String>,
    pub csv_rows: Vec<Vec<String>>,
}

impl Report {
    /// Key/value record; CSV is a two-column `field,value` table.
    pub fn record(json: Value, fields: Vec<(&str, String)>) -> Self {
        let text: Vec<(String, String)> = fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        Report {
            json,
            csv_header: vec!["field".into(), "value".into()],
            csv_rows: text.iter().map(|(k, v)| vec![k.clone(), v.clone()]).collect(),
            text,
        }
    }

    /// Replaces the CSV table with polynomial rows `(s_degree, t_degree, coefficient)`.
    pub fn with_poly_csv(mut self, p: &BivarPoly) -> Self {
        self.csv_header = vec!["s_degree".into(), "t_degree".into(), "coefficient".into()];
        self.csv_rows = p.terms().map(|(a, b, c)| vec![a.to_string(), b.to_string(), c.to_string()]).collect();
        self
    }

    pub fn with_table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.csv_header = header.iter().map(|s| s.to_string()).collect();
        self.csv_rows = rows;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let width = self.text.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                self.text
                    .iter()
                    .map(|(k, v)| format!("{}\n", format!("{k:<width$}  {v}").trim_end()))
                    .collect()
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
                w.write_record(&self.csv_header).expect("in-memory write");
                for row in &self.csv_rows {
                    w.write_record(row).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 fields")
            }
        }
    }
}
