//! Output formatting for reports, tables and verification summaries.

use std::fmt::Write as _;

use energy_bounds::bounds::BoundReport;
use serde::Serialize;

use crate::verify::Summary;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Markdown,
}

const NA: &str = "N/A";

fn real(x: Option<f64>) -> String {
    x.map_or_else(|| NA.to_string(), |v| format!("{v:.6}"))
}

fn ratio(x: Option<f64>) -> String {
    x.map_or_else(|| NA.to_string(), |v| format!("{v:.5}"))
}

fn int(x: Option<usize>) -> String {
    x.map_or_else(|| NA.to_string(), |v| v.to_string())
}

fn missing(r: &BoundReport) -> String {
    r.missing.iter().map(|(k, v)| format!("{k}={}", v.as_str())).collect::<Vec<_>>().join(";")
}

const REPORT_COLUMNS: [&str; 21] = [
    "name",
    "n",
    "m",
    "alpha",
    "half_energy",
    "chi_bar",
    "chi_f_bar",
    "hoffman_ratio",
    "bound_simple",
    "bound_chi_f",
    "bound_scaled_complement",
    "bound_sdp_adjacency",
    "bound_nikiforov",
    "theta_minus",
    "positive_energy_sdp",
    "ratio_simple",
    "ratio_chi_f",
    "ratio_sdp_adjacency",
    "ratio_half_energy",
    "verdict",
    "missing",
];

fn report_row(r: &BoundReport) -> Vec<String> {
    vec![
        r.name.clone(),
        r.n.to_string(),
        r.m.to_string(),
        int(r.alpha),
        format!("{:.6}", r.half_energy),
        int(r.chi_bar),
        real(r.chi_f_bar),
        real(r.hoffman_ratio),
        real(r.bound_simple),
        real(r.bound_chi_f),
        real(r.bound_scaled_complement),
        real(r.bound_sdp_adjacency),
        real(r.bound_nikiforov),
        real(r.theta_minus),
        real(r.positive_energy_sdp),
        ratio(r.ratios.simple),
        ratio(r.ratios.chi_f),
        ratio(r.ratios.sdp_adjacency),
        ratio(r.ratios.half_energy),
        r.verdict.as_str().to_string(),
        missing(r),
    ]
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    command: &'a str,
    #[serde(flatten)]
    body: T,
}

fn json<T: Serialize>(command: &str, body: T) -> String {
    let mut s = serde_json::to_string_pretty(&Envelope { schema: 1, command, body }).expect("serialisable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct Reports<'a> {
    reports: &'a [BoundReport],
}

fn verdict_line(r: &BoundReport) -> String {
    match r.n_minus_alpha() {
        Some(t) => format!(
            "verdict: {} (E/2 = {:.6}, n - alpha = {t})",
            r.verdict.as_str(),
            r.half_energy
        ),
        None => format!("verdict: {}", r.verdict.as_str()),
    }
}

pub fn report(reports: &[BoundReport], format: Format) -> String {
    match format {
        Format::Json => json("report", Reports { reports }),
        Format::Csv => csv_string(&REPORT_COLUMNS, reports.iter().map(report_row)),
        Format::Markdown => {
            let mut s = String::new();
            for r in reports {
                let _ = writeln!(s, "## {}\n\n| field | value |\n|---|---|", r.name);
                for (k, v) in REPORT_COLUMNS.iter().zip(report_row(r)).skip(1) {
                    if *k == "verdict" || *k == "missing" {
                        continue;
                    }
                    let _ = writeln!(s, "| {k} | {v} |");
                }
                for (k, v) in &r.missing {
                    let _ = writeln!(s, "| absent: {k} | {} |", v.as_str());
                }
                let _ = writeln!(s, "\n{}\n", verdict_line(r));
            }
            s
        }
    }
}

const TABLE_COLUMNS: [&str; 9] =
    ["graph", "n", "alpha", "b=0", "chi_f", "SDP(4)", "E/2", "verdict", "absent"];

fn table_row(r: &BoundReport) -> Vec<String> {
    let q = &r.ratios;
    let notes: Vec<String> = r
        .missing
        .iter()
        .filter(|(k, _)| k.starts_with("ratio_"))
        .map(|(k, v)| format!("{}={}", &k["ratio_".len()..], v.as_str()))
        .collect();
    vec![
        r.name.clone(),
        r.n.to_string(),
        int(r.alpha),
        ratio(q.simple),
        ratio(q.chi_f),
        ratio(q.sdp_adjacency),
        ratio(q.half_energy),
        r.verdict.as_str().to_string(),
        notes.join(";"),
    ]
}

pub fn table(reports: &[BoundReport], format: Format) -> String {
    match format {
        Format::Json => json("table", Reports { reports }),
        Format::Csv => csv_string(&REPORT_COLUMNS, reports.iter().map(report_row)),
        Format::Markdown => {
            let mut s = format!("| {} |\n|{}\n", TABLE_COLUMNS.join(" | "), "---|".repeat(TABLE_COLUMNS.len()));
            for r in reports {
                let _ = writeln!(s, "| {} |", table_row(r).join(" | "));
            }
            s
        }
    }
}

const VERIFY_COLUMNS: [&str; 7] = ["n", "graphs", "b=0", "chi_f", "SDP(4)", "total", "violations"];

pub fn summary(sum: &Summary, format: Format) -> String {
    let rows: Vec<Vec<String>> = sum
        .rows
        .iter()
        .map(|row| {
            let p = row.tally.percentages();
            vec![
                row.label(),
                row.tally.graphs.to_string(),
                format!("{:.1}", p[0]),
                format!("{:.1}", p[1]),
                format!("{:.1}", p[2]),
                format!("{:.1}", p[3]),
                row.tally.violations.to_string(),
            ]
        })
        .collect();
    match format {
        Format::Json => json("verify", sum),
        Format::Csv => csv_string(&VERIFY_COLUMNS, rows),
        Format::Markdown => {
            let mut s = format!("| {} |\n|{}\n", VERIFY_COLUMNS.join(" | "), "---|".repeat(VERIFY_COLUMNS.len()));
            for row in rows {
                let cells: Vec<String> = row
                    .iter()
                    .enumerate()
                    .map(|(i, c)| if (2..6).contains(&i) { format!("{c}%") } else { c.clone() })
                    .collect();
                let _ = writeln!(s, "| {} |", cells.join(" | "));
            }
            let _ = writeln!(s, "\nconjecture violations: {}", sum.violations.len());
            for v in &sum.violations {
                let _ = writeln!(s, "  {v}");
            }
            if sum.unknown > 0 {
                let _ = writeln!(s, "graphs with alpha not computed: {}", sum.unknown);
            }
            if !sum.unsound.is_empty() {
                let _ = writeln!(s, "soundness violations: {}", sum.unsound.len());
                for v in &sum.unsound {
                    let _ = writeln!(s, "  {v}");
                }
            }
            if sum.malformed > 0 {
                let _ = writeln!(s, "malformed lines skipped: {}", sum.malformed);
            }
            s
        }
    }
}
