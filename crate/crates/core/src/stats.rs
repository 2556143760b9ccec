//! Histograms, contingency tables, top-k marginal filtering, and the
//! Pearson chi-square independence test.
//!
//! The p-value comes from the upper regularized incomplete gamma function
//! `Q(df/2, statistic/2)`, computed with the standard split: a lower-tail
//! power series when `statistic/2 < df/2 + 1`, a Lentz continued fraction
//! otherwise. No continuity correction is applied; rows and columns with a
//! zero marginal are dropped (with a warning) before testing because their
//! expected counts are undefined.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::taxonomy::{AgentCategory, DeonticClass, ObjectCategory};

/// Per-statement analysis row: the categorized components that feed
/// histograms and crosstabs. Fields are absent when the statement has no
/// such span or the component fell into the other bucket.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisRecord {
    pub statement_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agent_category: Option<AgentCategory>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object_category: Option<ObjectCategory>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deontic_class: Option<DeonticClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deontic_text: Option<String>,
}

impl AnalysisRecord {
    pub fn has_any_field(&self) -> bool {
        self.agent_category.is_some()
            || self.object_category.is_some()
            || self.deontic_class.is_some()
            || self.deontic_text.is_some()
    }
}

/// Field selector for histograms and crosstabs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordField {
    Agent,
    Object,
    Deontic,
}

impl RecordField {
    pub fn value(&self, record: &AnalysisRecord) -> Option<String> {
        match self {
            RecordField::Agent => record.agent_category.map(|c| c.to_string()),
            RecordField::Object => record.object_category.map(|c| c.to_string()),
            RecordField::Deontic => record.deontic_class.map(|c| c.to_string()),
        }
    }
}

/// Counts of label occurrences, sorted by descending count and then
/// alphabetically. Absent values are skipped.
pub fn histogram_of<I, S>(values: I) -> Vec<(String, u64)>
where
    I: IntoIterator<Item = Option<S>>,
    S: Into<String>,
{
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for value in values.into_iter().flatten() {
        *counts.entry(value.into()).or_insert(0) += 1;
    }
    let mut out: Vec<(String, u64)> = counts.into_iter().collect();
    out.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    out
}

/// Histogram of one record field.
pub fn histogram(records: &[AnalysisRecord], key: RecordField) -> Vec<(String, u64)> {
    histogram_of(records.iter().map(|r| key.value(r)))
}

/// A contingency table of co-occurrence counts. `n` always equals the sum
/// of all cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContingencyTable {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub counts: Vec<Vec<u64>>,
    pub n: u64,
}

impl ContingencyTable {
    pub fn from_counts(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        counts: Vec<Vec<u64>>,
    ) -> Self {
        let n = counts.iter().flatten().sum();
        ContingencyTable {
            row_labels,
            col_labels,
            counts,
            n,
        }
    }

    pub fn row_totals(&self) -> Vec<u64> {
        self.counts.iter().map(|row| row.iter().sum()).collect()
    }

    pub fn col_totals(&self) -> Vec<u64> {
        (0..self.col_labels.len())
            .map(|j| self.counts.iter().map(|row| row[j]).sum())
            .collect()
    }

    /// CSV serialization: a header row starting with an empty cell followed
    /// by the column labels, then one row per row label. Raw counts only —
    /// no margins.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push(',');
        out.push_str(&self.col_labels.join(","));
        out.push('\n');
        for (label, row) in self.row_labels.iter().zip(&self.counts) {
            out.push_str(label);
            for cell in row {
                out.push(',');
                out.push_str(&cell.to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Parses the [`Self::to_csv`] format.
    pub fn from_csv(csv: &str) -> Result<Self> {
        let mut lines = csv.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::MalformedCsv("empty input".into()))?;
        let mut header_cells = header.split(',');
        let first = header_cells.next().unwrap_or_default();
        if !first.is_empty() {
            return Err(Error::MalformedCsv(format!(
                "header must start with an empty cell, got `{first}`"
            )));
        }
        let col_labels: Vec<String> = header_cells
            .map(String::from)
            .filter(|c| !c.is_empty())
            .collect();
        let mut row_labels = Vec::new();
        let mut counts = Vec::new();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let mut cells = line.split(',');
            let label = cells.next().unwrap_or_default().to_string();
            let row: Vec<u64> = cells
                .map(|c| {
                    c.parse::<u64>()
                        .map_err(|_| Error::MalformedCsv(format!("bad count `{c}`")))
                })
                .collect::<Result<_>>()?;
            if row.len() != col_labels.len() {
                return Err(Error::MalformedCsv(format!(
                    "row `{label}` has {} cells, expected {}",
                    row.len(),
                    col_labels.len()
                )));
            }
            row_labels.push(label);
            counts.push(row);
        }
        Ok(ContingencyTable::from_counts(
            row_labels, col_labels, counts,
        ))
    }
}

/// Cross-tabulates two record fields over the records where both are
/// present. Labels are sorted alphabetically.
pub fn crosstab(
    records: &[AnalysisRecord],
    row_key: RecordField,
    col_key: RecordField,
) -> ContingencyTable {
    let pairs: Vec<(String, String)> = records
        .iter()
        .filter_map(|r| match (row_key.value(r), col_key.value(r)) {
            (Some(row), Some(col)) => Some((row, col)),
            _ => None,
        })
        .collect();
    let row_labels: Vec<String> = pairs
        .iter()
        .map(|(r, _)| r.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let col_labels: Vec<String> = pairs
        .iter()
        .map(|(_, c)| c.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut counts = vec![vec![0u64; col_labels.len()]; row_labels.len()];
    for (row, col) in &pairs {
        let i = row_labels.binary_search(row).expect("row label present");
        let j = col_labels.binary_search(col).expect("col label present");
        counts[i][j] += 1;
    }
    ContingencyTable::from_counts(row_labels, col_labels, counts)
}

/// Axis selector for [`top_k_filter`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Rows,
    Cols,
}

/// Keeps the `k` labels with the largest marginal totals on the chosen
/// axis (ties broken alphabetically), preserving label order and
/// recomputing `n`. If `k` is at least the label count the table is
/// returned unchanged.
pub fn top_k_filter(table: &ContingencyTable, axis: Axis, k: usize) -> ContingencyTable {
    let labels = match axis {
        Axis::Rows => &table.row_labels,
        Axis::Cols => &table.col_labels,
    };
    if k >= labels.len() {
        return table.clone();
    }
    let totals = match axis {
        Axis::Rows => table.row_totals(),
        Axis::Cols => table.col_totals(),
    };
    let mut ranked: Vec<usize> = (0..labels.len()).collect();
    ranked.sort_by(|&a, &b| {
        totals[b]
            .cmp(&totals[a])
            .then_with(|| labels[a].cmp(&labels[b]))
    });
    let keep: BTreeSet<usize> = ranked.into_iter().take(k).collect();
    match axis {
        Axis::Rows => {
            let row_labels = filter_indexed(&table.row_labels, &keep);
            let counts = filter_indexed(&table.counts, &keep);
            ContingencyTable::from_counts(row_labels, table.col_labels.clone(), counts)
        }
        Axis::Cols => {
            let col_labels = filter_indexed(&table.col_labels, &keep);
            let counts = table
                .counts
                .iter()
                .map(|row| filter_indexed(row, &keep))
                .collect();
            ContingencyTable::from_counts(table.row_labels.clone(), col_labels, counts)
        }
    }
}

fn filter_indexed<T: Clone>(items: &[T], keep: &BTreeSet<usize>) -> Vec<T> {
    items
        .iter()
        .enumerate()
        .filter(|(i, _)| keep.contains(i))
        .map(|(_, item)| item.clone())
        .collect()
}

/// Result of a Pearson chi-square independence test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
    pub n: u64,
}

impl ChiSquareResult {
    /// The machine-readable one-line form, 6 significant digits:
    /// `chi2=<v> df=<d> p=<v> N=<n>`.
    pub fn result_line(&self) -> String {
        format!(
            "chi2={} df={} p={} N={}",
            format_sig6(self.statistic),
            self.df,
            format_sig6(self.p_value),
            self.n
        )
    }
}

/// Pearson chi-square test of independence.
///
/// Rows/columns with zero marginals are dropped first (logged); the test
/// then requires at least a 2x2 table. `E_ij = row_i * col_j / N`,
/// `statistic = sum (O_ij - E_ij)^2 / E_ij`, `df = (r-1)(c-1)`,
/// `p = Q(df/2, statistic/2)`.
pub fn chi_square(table: &ContingencyTable) -> Result<ChiSquareResult> {
    let row_totals = table.row_totals();
    let col_totals = table.col_totals();
    let live_rows: Vec<usize> = (0..table.row_labels.len())
        .filter(|&i| row_totals[i] > 0)
        .collect();
    let live_cols: Vec<usize> = (0..table.col_labels.len())
        .filter(|&j| col_totals[j] > 0)
        .collect();
    if live_rows.len() < table.row_labels.len() || live_cols.len() < table.col_labels.len() {
        log::warn!(
            "dropping {} zero-marginal rows and {} zero-marginal columns before chi-square",
            table.row_labels.len() - live_rows.len(),
            table.col_labels.len() - live_cols.len()
        );
    }
    if live_rows.len() < 2 || live_cols.len() < 2 {
        return Err(Error::DegenerateTable {
            rows: live_rows.len(),
            cols: live_cols.len(),
        });
    }
    let n: u64 = live_rows.iter().map(|&i| row_totals[i]).sum();
    let n_f = n as f64;
    let mut statistic = 0.0;
    for &i in &live_rows {
        for &j in &live_cols {
            let expected = row_totals[i] as f64 * col_totals[j] as f64 / n_f;
            let observed = table.counts[i][j] as f64;
            let diff = observed - expected;
            statistic += diff * diff / expected;
        }
    }
    let df = (live_rows.len() - 1) * (live_cols.len() - 1);
    Ok(ChiSquareResult {
        statistic,
        df,
        p_value: chi_square_p(statistic, df),
        n,
    })
}

/// Upper-tail p-value of the chi-square distribution:
/// `Q(df/2, statistic/2)`. For `df = 2` this reduces to
/// `exp(-statistic/2)`.
pub fn chi_square_p(statistic: f64, df: usize) -> f64 {
    gammq(df as f64 / 2.0, statistic / 2.0)
}

/// Upper regularized incomplete gamma function `Q(a, x)`.
pub fn gammq(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0, "gammq domain: a > 0, x >= 0");
    if x == 0.0 {
        return 1.0;
    }
    if x < a + 1.0 {
        1.0 - gamma_series_p(a, x)
    } else {
        gamma_cf_q(a, x)
    }
}

const GAMMA_EPS: f64 = 3e-16;
const GAMMA_MAX_ITER: usize = 500;

/// Lower regularized incomplete gamma `P(a, x)` by power series; converges
/// fast for `x < a + 1`.
fn gamma_series_p(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut sum = 1.0 / a;
    let mut del = sum;
    for _ in 0..GAMMA_MAX_ITER {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * GAMMA_EPS {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma(a)).exp()
}

/// Upper regularized incomplete gamma `Q(a, x)` by modified Lentz
/// continued fraction; converges fast for `x >= a + 1`.
fn gamma_cf_q(a: f64, x: f64) -> f64 {
    const FPMIN: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / FPMIN;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=GAMMA_MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b + an / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < GAMMA_EPS {
            break;
        }
    }
    (-x + a * x.ln() - ln_gamma(a)).exp() * h
}

/// `ln Gamma(z)` for `z > 0` by the Lanczos approximation.
fn ln_gamma(z: f64) -> f64 {
    const COEFFS: [f64; 6] = [
        76.18009172947146,
        -86.50532032941677,
        24.01409824083091,
        -1.231739572450155,
        0.1208650973866179e-2,
        -0.5395239384953e-5,
    ];
    debug_assert!(z > 0.0);
    let mut sum = 1.000000000190015;
    for (i, c) in COEFFS.iter().enumerate() {
        sum += c / (z + i as f64 + 1.0);
    }
    let tmp = z + 5.5;
    let tmp = (z + 0.5) * tmp.ln() - tmp;
    tmp + (2.5066282746310005 * sum / z).ln()
}

/// Formats a value with 6 significant digits in plain decimal notation
/// (falling back to scientific notation outside [1e-4, 1e15)).
pub fn format_sig6(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-4..15).contains(&exp) {
        return format!("{v:.5e}");
    }
    let decimals = (5 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}
