use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Ordered `(field, value)` pairs shared by the text and CSV renderings.
pub struct Table(pub Vec<(&'static str, String)>);

impl Table {
    pub fn text(&self) -> String {
        let width = self.0.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        self.0
            .iter()
            .map(|(k, v)| format!("{k:<width$}  {v}\n"))
            .collect()
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("field,value\n");
        for (k, v) in &self.0 {
            out.push_str(&format!("{k},{}\n", csv_cell(v)));
        }
        out
    }
}

pub fn csv_cell(v: &str) -> String {
    if v.contains([',', '"', '\n']) {
        format!("\"{}\"", v.replace('"', "\"\""))
    } else {
        v.to_string()
    }
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn render<T: Serialize>(format: Format, value: &T, table: impl FnOnce() -> Table) -> String {
    match format {
        Format::Json => json(value),
        Format::Text => table().text(),
        Format::Csv => table().csv(),
    }
}

pub fn floats(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

pub fn emit(text: &str, out: Option<&std::path::Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
