//! Rendering of analysis results: CSV tables, SVG bar charts, a markdown
//! report, and the machine-readable `run.json`.
//!
//! Everything here is a pure function of its inputs; rerunning a report on
//! unchanged inputs produces byte-identical files. The report is always
//! regenerated wholesale, never appended.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats::{ChiSquareResult, ContingencyTable};

/// One crosstab analysis: the full table, the top-k filtered table the
/// test runs on, and the test outcome (or the reason it was skipped).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrosstabReport {
    pub full: ContingencyTable,
    pub filtered: ContingencyTable,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_square: Option<ChiSquareResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

/// Components excluded from categorization, by reason.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ExclusionCounts {
    pub agent_other_bucket: u64,
    pub object_other_bucket: u64,
    pub agent_noise: u64,
    pub object_noise: u64,
}

/// The consolidated, machine-readable result of one pipeline run. Every
/// count here is reconstructible from the extraction and records artifacts
/// the run wrote.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// Resolved configuration, sufficient to repeat the run exactly.
    pub settings: BTreeMap<String, String>,
    pub corpus_digest: String,
    pub statement_count: usize,
    /// Extracted component counts per label (A, B, C, D, I, O).
    pub label_counts: BTreeMap<String, u64>,
    pub agent_histogram: Vec<(String, u64)>,
    pub object_histogram: Vec<(String, u64)>,
    pub deontic_histogram: Vec<(String, u64)>,
    pub agent_deontic: CrosstabReport,
    pub object_deontic: CrosstabReport,
    pub exclusions: ExclusionCounts,
}

const BAR_WIDTH: f64 = 60.0;
const BAR_GAP: f64 = 20.0;
const PLOT_HEIGHT: f64 = 300.0;
const MARGIN_LEFT: f64 = 50.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 50.0;

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders a histogram as an SVG bar chart. Bar heights are proportional
/// to counts; byte output is deterministic for identical input.
pub fn render_histogram(histogram: &[(String, u64)], title: &str) -> Result<String> {
    if histogram.is_empty() {
        return Err(Error::EmptyHistogram);
    }
    let max = histogram.iter().map(|(_, c)| *c).max().expect("non-empty") as f64;
    let width = MARGIN_LEFT + histogram.len() as f64 * (BAR_WIDTH + BAR_GAP) + BAR_GAP;
    let height = MARGIN_TOP + PLOT_HEIGHT + MARGIN_BOTTOM;
    let baseline = MARGIN_TOP + PLOT_HEIGHT;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\">\n"
    ));
    svg.push_str(&format!("  <title>{}</title>\n", xml_escape(title)));
    svg.push_str(&format!(
        "  <text x=\"{:.1}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" \
         text-anchor=\"middle\">{}</text>\n",
        width / 2.0,
        xml_escape(title)
    ));
    svg.push_str(&format!(
        "  <line x1=\"{MARGIN_LEFT:.1}\" y1=\"{baseline:.1}\" x2=\"{:.1}\" y2=\"{baseline:.1}\" \
         stroke=\"#333333\"/>\n",
        width - BAR_GAP
    ));
    svg.push_str(&format!(
        "  <line x1=\"{MARGIN_LEFT:.1}\" y1=\"{MARGIN_TOP:.1}\" x2=\"{MARGIN_LEFT:.1}\" \
         y2=\"{baseline:.1}\" stroke=\"#333333\"/>\n"
    ));
    for (i, (label, count)) in histogram.iter().enumerate() {
        let bar_height = if max > 0.0 {
            *count as f64 / max * PLOT_HEIGHT
        } else {
            0.0
        };
        let x = MARGIN_LEFT + BAR_GAP + i as f64 * (BAR_WIDTH + BAR_GAP);
        let y = baseline - bar_height;
        svg.push_str(&format!(
            "  <rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{BAR_WIDTH:.2}\" height=\"{bar_height:.2}\" \
             fill=\"#4878a8\"/>\n"
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"middle\">{}</text>\n",
            x + BAR_WIDTH / 2.0,
            y - 6.0,
            count
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"middle\">{}</text>\n",
            x + BAR_WIDTH / 2.0,
            baseline + 18.0,
            xml_escape(label)
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Renders a contingency table as an aligned text table with row/column
/// totals appended, plus the raw-count CSV from the stats module.
pub fn render_crosstab(table: &ContingencyTable) -> (String, String) {
    let csv = table.to_csv();
    let row_totals = table.row_totals();
    let col_totals = table.col_totals();

    let mut header: Vec<String> = vec![String::new()];
    header.extend(table.col_labels.iter().cloned());
    header.push("total".to_string());
    let mut rows: Vec<Vec<String>> = vec![header];
    for ((label, counts), total) in table.row_labels.iter().zip(&table.counts).zip(&row_totals) {
        let mut row = vec![label.clone()];
        row.extend(counts.iter().map(|c| c.to_string()));
        row.push(total.to_string());
        rows.push(row);
    }
    let mut totals_row = vec!["total".to_string()];
    totals_row.extend(col_totals.iter().map(|c| c.to_string()));
    totals_row.push(table.n.to_string());
    rows.push(totals_row);

    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|j| {
            rows.iter()
                .filter_map(|r| r.get(j))
                .map(String::len)
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut text = String::new();
    for row in &rows {
        let mut line = String::new();
        for (j, cell) in row.iter().enumerate() {
            if j > 0 {
                line.push_str("  ");
            }
            if j == 0 {
                line.push_str(&format!("{cell:<width$}", width = widths[j]));
            } else {
                line.push_str(&format!("{cell:>width$}", width = widths[j]));
            }
        }
        text.push_str(line.trim_end());
        text.push('\n');
    }
    (text, csv)
}

/// Histogram CSV: a `label,count` header and one row per bar.
pub fn histogram_to_csv(histogram: &[(String, u64)]) -> String {
    let mut out = String::from("label,count\n");
    for (label, count) in histogram {
        out.push_str(&format!("{label},{count}\n"));
    }
    out
}

/// Parses the [`histogram_to_csv`] format.
pub fn histogram_from_csv(csv: &str) -> Result<Vec<(String, u64)>> {
    let mut lines = csv.lines();
    match lines.next() {
        Some("label,count") => {}
        other => {
            return Err(Error::MalformedCsv(format!(
                "expected `label,count` header, got {other:?}"
            )));
        }
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|line| {
            let (label, count) = line
                .rsplit_once(',')
                .ok_or_else(|| Error::MalformedCsv(format!("bad histogram row `{line}`")))?;
            let count: u64 = count
                .parse()
                .map_err(|_| Error::MalformedCsv(format!("bad count `{count}`")))?;
            Ok((label.to_string(), count))
        })
        .collect()
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).map_err(|e| Error::io(path, e))
}

fn crosstab_section(out: &mut String, name: &str, report: &CrosstabReport) {
    out.push_str(&format!("## Crosstab: {name}\n\n"));
    if report.full.n == 0 {
        out.push_str("No co-present records.\n\n");
    } else {
        let (text, _) = render_crosstab(&report.full);
        out.push_str("Full table:\n\n```\n");
        out.push_str(&text);
        out.push_str("```\n\n");
        if report.filtered != report.full {
            let (text, _) = render_crosstab(&report.filtered);
            out.push_str("Top-k filtered table (tested):\n\n```\n");
            out.push_str(&text);
            out.push_str("```\n\n");
        }
    }
    match (&report.chi_square, &report.skipped) {
        (Some(result), _) => {
            out.push_str(&format!(
                "Independence test: `{}`\n\n",
                result.result_line()
            ));
        }
        (None, Some(reason)) => {
            out.push_str(&format!("Independence test skipped: {reason}\n\n"));
        }
        (None, None) => out.push_str("Independence test skipped.\n\n"),
    }
}

/// Writes the full report tree under `out_dir`:
/// `report.md`, `tables/*.csv`, `charts/*.svg`, and `run.json`.
pub fn write_report(report: &RunReport, out_dir: impl AsRef<Path>) -> Result<()> {
    let out_dir = out_dir.as_ref();
    let tables = out_dir.join("tables");
    let charts = out_dir.join("charts");
    fs::create_dir_all(&tables).map_err(|e| Error::io(&tables, e))?;
    fs::create_dir_all(&charts).map_err(|e| Error::io(&charts, e))?;

    let label_histogram: Vec<(String, u64)> = report
        .label_counts
        .iter()
        .map(|(label, count)| (label.clone(), *count))
        .collect();

    let histograms = [
        (
            "labels",
            "Component counts by label",
            label_histogram.as_slice(),
        ),
        (
            "agents",
            "Statements by agent category",
            report.agent_histogram.as_slice(),
        ),
        (
            "objects",
            "Statements by object category",
            report.object_histogram.as_slice(),
        ),
        (
            "deontics",
            "Statements by deontic class",
            report.deontic_histogram.as_slice(),
        ),
    ];
    for (stem, title, histogram) in histograms {
        write_file(
            &tables.join(format!("hist_{stem}.csv")),
            &histogram_to_csv(histogram),
        )?;
        if !histogram.is_empty() {
            let svg = render_histogram(histogram, title)?;
            write_file(&charts.join(format!("{stem}.svg")), &svg)?;
        }
    }

    for (stem, crosstab) in [
        ("agent_deontic", &report.agent_deontic),
        ("object_deontic", &report.object_deontic),
    ] {
        write_file(
            &tables.join(format!("crosstab_{stem}.csv")),
            &crosstab.full.to_csv(),
        )?;
        write_file(
            &tables.join(format!("crosstab_{stem}_topk.csv")),
            &crosstab.filtered.to_csv(),
        )?;
    }

    let mut md = String::from("# Institutional grammar analysis report\n\n");
    md.push_str(&format!("Corpus digest: `{}`\n\n", report.corpus_digest));
    md.push_str(&format!(
        "Statements analyzed: {}\n\n",
        report.statement_count
    ));
    md.push_str("## Component counts\n\n");
    if report.label_counts.is_empty() {
        md.push_str("No components extracted.\n\n");
    } else {
        md.push_str("| label | count |\n|---|---|\n");
        for (label, count) in &report.label_counts {
            md.push_str(&format!("| {label} | {count} |\n"));
        }
        md.push('\n');
    }
    for (name, histogram) in [
        ("Agent categories", &report.agent_histogram),
        ("Object categories", &report.object_histogram),
        ("Deontic classes", &report.deontic_histogram),
    ] {
        md.push_str(&format!("## {name}\n\n"));
        if histogram.is_empty() {
            md.push_str("No records.\n\n");
        } else {
            md.push_str("| category | count |\n|---|---|\n");
            for (label, count) in histogram.iter() {
                md.push_str(&format!("| {label} | {count} |\n"));
            }
            md.push('\n');
        }
    }
    crosstab_section(&mut md, "agent x deontic", &report.agent_deontic);
    crosstab_section(&mut md, "object x deontic", &report.object_deontic);
    md.push_str("## Exclusions\n\n");
    md.push_str(&format!(
        "- Agent components in the other bucket: {}\n- Object components in the other bucket: {}\n- Agent components in the noise bucket: {}\n- Object components in the noise bucket: {}\n",
        report.exclusions.agent_other_bucket,
        report.exclusions.object_other_bucket,
        report.exclusions.agent_noise,
        report.exclusions.object_noise,
    ));
    write_file(&out_dir.join("report.md"), &md)?;

    let json = serde_json::to_string_pretty(report).expect("run report serializes");
    write_file(&out_dir.join("run.json"), &format!("{json}\n"))?;
    Ok(())
}
