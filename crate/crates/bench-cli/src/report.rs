//! Report rows and document emission.

use serde::{Deserialize, Serialize};

/// Fixed CSV column set; absent flags serialize as empty fields.
pub const CSV_HEADER: &str =
    "instance,algo,level,var,sym,mac,score,solved,seconds,playout_steps,terminated_by";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    #[default]
    Table,
}

/// One completed (or failed) run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub instance: String,
    pub algo: String,
    pub level: u32,
    pub var: Option<String>,
    pub sym: Option<bool>,
    pub mac: Option<bool>,
    pub score: Option<f64>,
    pub solved: Option<bool>,
    pub seconds: f64,
    pub playout_steps: Option<u64>,
    pub terminated_by: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ReportRow {
    pub fn is_error(&self) -> bool {
        self.error.is_some()
    }

    /// Paper-style result cell: a bare time when solved, `score in time`
    /// otherwise.
    pub fn result_cell(&self) -> String {
        if self.is_error() {
            return "error".into();
        }
        match (self.solved, self.score) {
            (Some(true), _) => format!("{:.2}s", self.seconds),
            (_, Some(score)) => format!("{} in {:.2}s", format_score(score), self.seconds),
            _ => format!("{:.2}s", self.seconds),
        }
    }
}

/// Scores print without decimals when integral, else with two.
pub fn format_score(score: f64) -> String {
    if score.fract() == 0.0 && score.abs() < 1e15 {
        format!("{score:.0}")
    } else {
        format!("{score:.2}")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<ReportRow>,
}

impl BenchReport {
    pub fn has_errors(&self) -> bool {
        self.rows.iter().any(ReportRow::is_error)
    }
}

/// Render a report as CSV, a JSON array, or an aligned text table.
pub fn emit(report: &BenchReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => emit_csv(report),
        OutputFormat::Json => {
            serde_json::to_string_pretty(&report.rows).expect("report rows serialize")
        }
        OutputFormat::Table => emit_table(report),
    }
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn emit_csv(report: &BenchReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in &report.rows {
        let fields = [
            csv_field(&row.instance),
            row.algo.clone(),
            row.level.to_string(),
            row.var.clone().unwrap_or_default(),
            row.sym.map(|b| b.to_string()).unwrap_or_default(),
            row.mac.map(|b| b.to_string()).unwrap_or_default(),
            row.score.map(format_score).unwrap_or_default(),
            row.solved.map(|b| b.to_string()).unwrap_or_default(),
            format!("{:.2}", row.seconds),
            row.playout_steps.map(|s| s.to_string()).unwrap_or_default(),
            row.terminated_by.clone(),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

fn emit_table(report: &BenchReport) -> String {
    let header = ["instance", "algo", "level", "var", "sym", "mac", "result", "steps"];
    let mut cells: Vec<[String; 8]> = vec![header.map(str::to_string)];
    for row in &report.rows {
        cells.push([
            row.instance.clone(),
            row.algo.clone(),
            row.level.to_string(),
            row.var.clone().unwrap_or_default(),
            row.sym.map(|b| if b { "on" } else { "off" }.to_string()).unwrap_or_default(),
            row.mac.map(|b| if b { "on" } else { "off" }.to_string()).unwrap_or_default(),
            row.result_cell(),
            row.playout_steps.map(|s| s.to_string()).unwrap_or_default(),
        ]);
    }
    let mut widths = [0usize; 8];
    for row in &cells {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    cells
        .iter()
        .map(|row| {
            row.iter()
                .zip(widths)
                .map(|(cell, w)| format!("{cell:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_row() -> ReportRow {
        ReportRow {
            instance: "order-5".into(),
            algo: "ns".into(),
            level: 3,
            var: Some("deg".into()),
            sym: Some(false),
            mac: Some(false),
            score: Some(0.0),
            solved: Some(true),
            seconds: 0.01,
            playout_steps: Some(42),
            terminated_by: "completed".into(),
            error: None,
        }
    }

    #[test]
    fn empty_report_is_just_the_header() {
        assert_eq!(emit(&BenchReport::default(), OutputFormat::Csv), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn solved_row_renders_expected_fields() {
        let report = BenchReport { rows: vec![sample_row()] };
        let csv = emit(&report, OutputFormat::Csv);
        assert!(csv.lines().nth(1).unwrap().contains("order-5,ns,3,deg,false,false,0,true,0.01,42,completed"));
    }

    #[test]
    fn unsolved_cell_uses_score_in_time_convention() {
        let mut row = sample_row();
        row.solved = Some(false);
        row.score = Some(-12.0);
        row.seconds = 557.21;
        assert_eq!(row.result_cell(), "-12 in 557.21s");
        row.score = Some(-445.38);
        assert_eq!(row.result_cell(), "-445.38 in 557.21s");
    }

    #[test]
    fn json_roundtrip_is_byte_identical() {
        let mut other = sample_row();
        other.error = Some("boom".into());
        other.score = None;
        let report = BenchReport { rows: vec![sample_row(), other] };
        let json = emit(&report, OutputFormat::Json);
        let parsed: Vec<ReportRow> = serde_json::from_str(&json).unwrap();
        let again = emit(&BenchReport { rows: parsed }, OutputFormat::Json);
        assert_eq!(json, again);
    }

    #[test]
    fn csv_quotes_awkward_fields() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn table_aligns_and_includes_header() {
        let report = BenchReport { rows: vec![sample_row()] };
        let table = emit(&report, OutputFormat::Table);
        let mut lines = table.lines();
        assert!(lines.next().unwrap().starts_with("instance"));
        assert!(lines.next().unwrap().contains("0.01s"));
    }
}
