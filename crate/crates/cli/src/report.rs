use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

#[derive(Serialize)]
pub struct Inputs {
    pub model: String,
    pub digest: String,
    pub pi: String,
}

#[derive(Serialize)]
pub struct BudgetReport {
    pub cap: u64,
    pub used: u64,
}

/// Rows for `--format table`.
#[derive(Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn render(&self, out: &mut String) {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String], out: &mut String| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            writeln!(out, "{}", padded.join("  ").trim_end()).unwrap();
        };
        line(&self.headers, out);
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        line(&rule, out);
        for row in &self.rows {
            line(row, out);
        }
    }
}

pub struct Outcome {
    pub counts: BTreeMap<&'static str, usize>,
    pub result: Value,
    pub table: Table,
}

#[derive(Serialize)]
pub struct RunReport {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inputs: Option<Inputs>,
    pub counts: BTreeMap<&'static str, usize>,
    pub result: Value,
    #[serde(skip)]
    pub table: Table,
    pub budget: BudgetReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl RunReport {
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        write!(out, "{}", self.command).unwrap();
        if let Some(i) = &self.inputs {
            write!(out, "  model={}  pi={}  digest={}", i.model, i.pi, &i.digest[..16]).unwrap();
        }
        out.push('\n');
        let counts: Vec<String> = self.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if !counts.is_empty() {
            writeln!(out, "{}", counts.join("  ")).unwrap();
        }
        out.push('\n');
        self.table.render(&mut out);
        write!(out, "\nbudget {}/{}", self.budget.used, self.budget.cap).unwrap();
        if let Some(t) = self.timing_ms {
            write!(out, "  time {t:.1} ms").unwrap();
        }
        out.push('\n');
        out
    }
}
