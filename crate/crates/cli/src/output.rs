//! Deterministic CSV and JSON writers.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::CliError;

/// One CSV field.
pub enum Cell {
    Num(f64),
    Opt(Option<f64>),
    Flag(bool),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        Cell::Opt(x)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Flag(x)
    }
}

/// 17 significant digits in scientific notation.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn cell(c: &Cell) -> String {
    match c {
        Cell::Num(x) => float(*x),
        Cell::Opt(Some(x)) => float(*x),
        Cell::Opt(None) => String::new(),
        Cell::Flag(b) => (if *b { "1" } else { "0" }).to_string(),
        Cell::Text(t) => t.clone(),
    }
}

pub fn csv(header: &[&str], rows: &[Vec<Cell>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let fields: Vec<String> = row.iter().map(cell).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Pretty JSON with object keys sorted.
pub fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let v = serde_json::to_value(value).map_err(|e| CliError::Numerical(e.to_string()))?;
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| CliError::Numerical(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Where command output goes: a directory of named files, or stdout.
pub struct Sink {
    dir: Option<PathBuf>,
    pub written: Vec<PathBuf>,
}

impl Sink {
    pub fn new(dir: Option<&Path>) -> Result<Sink, CliError> {
        if let Some(d) = dir {
            fs::create_dir_all(d).map_err(|e| CliError::io("--out", e))?;
        }
        Ok(Sink {
            dir: dir.map(Path::to_path_buf),
            written: Vec::new(),
        })
    }

    pub fn to_dir(&self) -> bool {
        self.dir.is_some()
    }

    /// Write `name` into the output directory, or print it when there is none.
    pub fn emit(&mut self, name: &str, contents: &str) -> Result<(), CliError> {
        match &self.dir {
            Some(d) => {
                let path = d.join(name);
                fs::write(&path, contents).map_err(|e| CliError::io("--out", e))?;
                self.written.push(path);
            }
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(contents.as_bytes())
                    .map_err(|e| CliError::io("stdout", e))?;
            }
        }
        Ok(())
    }

    /// Write only when an output directory was given.
    pub fn file(&mut self, name: &str, contents: &str) -> Result<(), CliError> {
        if self.to_dir() {
            self.emit(name, contents)?;
        }
        Ok(())
    }
}

/// `key: value` lines for the human-readable summaries.
#[derive(Default)]
pub struct Summary(String);

impl Summary {
    pub fn line(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.0, "{key}: {value}");
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_is_fixed_format() {
        let text = csv(
            &["s", "x", "y", "ok"],
            &[vec![
                1.0.into(),
                Cell::Opt(None),
                (-0.1).into(),
                true.into(),
            ]],
        );
        assert_eq!(
            text,
            "s,x,y,ok\n1.0000000000000000e0,,-1.0000000000000001e-1,1\n"
        );
    }

    #[test]
    fn json_keys_are_sorted() {
        #[derive(Serialize)]
        struct T {
            b: f64,
            a: f64,
        }
        let text = json(&T { b: 1.0, a: 2.0 }).unwrap();
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
    }
}
