//! Score report formatting: the JSON document, the per-document TSV, and
//! the printed summary row. Scores leave exact arithmetic here, as
//! percentages rounded to two decimals (half away from zero).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::scorer::{Category, MarkerOutcome, MatchTrace, ScoreReport};

/// Rounds a rational in [0,1] to a percentage in hundredths (e.g. 62.505 -> 6251).
fn percent_hundredths(value: &BigRational) -> i64 {
    let scaled = value * BigRational::from(BigInt::from(10_000));
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let rounded = if scaled.is_negative() {
        (scaled - half).ceil()
    } else {
        (scaled + half).floor()
    };
    rounded.to_integer().to_i64().expect("score percentages fit i64")
}

/// "62.50"-style fixed two-decimal rendering.
pub fn percent_string(value: &BigRational) -> String {
    let h = percent_hundredths(value);
    format!("{}.{:02}", h / 100, (h % 100).abs())
}

/// The same rounded value as an f64 (for JSON payloads).
pub fn percent_f64(value: &BigRational) -> f64 {
    percent_hundredths(value) as f64 / 100.0
}

fn opt_percent(value: Option<BigRational>) -> Option<f64> {
    value.as_ref().map(percent_f64)
}

fn opt_percent_string(value: Option<BigRational>) -> String {
    value
        .as_ref()
        .map(percent_string)
        .unwrap_or_else(|| "NA".to_string())
}

#[derive(Serialize)]
pub struct ReportJson {
    pub dcoem: Option<f64>,
    pub categories: CategoriesJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<String>,
    pub documents: Vec<DocReportJson>,
}

#[derive(Serialize)]
pub struct CategoriesJson {
    pub lexicoh_wordsub: Option<f64>,
    pub reference: Option<f64>,
    pub conjunction: Option<f64>,
}

#[derive(Serialize)]
pub struct DocReportJson {
    pub doc_id: String,
    pub score: Option<f64>,
    pub skipped: usize,
    pub sentences: Vec<SentenceReportJson>,
}

#[derive(Serialize)]
pub struct SentenceReportJson {
    pub i: usize,
    pub combined: Option<f64>,
    pub lw: Option<f64>,
    pub r: Option<f64>,
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceJson>,
}

#[derive(Serialize)]
pub struct TraceJson {
    pub lw: Vec<TraceEntryJson>,
    pub r: Vec<TraceEntryJson>,
    pub c: Vec<TraceEntryJson>,
}

#[derive(Serialize)]
pub struct TraceEntryJson {
    pub marker: String,
    pub outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub token: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub via: Option<String>,
}

fn trace_entries(trace: &MatchTrace) -> Vec<TraceEntryJson> {
    trace
        .entries
        .iter()
        .map(|entry| match &entry.outcome {
            MarkerOutcome::Exact { token } => TraceEntryJson {
                marker: entry.marker.clone(),
                outcome: "exact",
                token: Some(*token),
                via: None,
            },
            MarkerOutcome::Expansion { token, via } => TraceEntryJson {
                marker: entry.marker.clone(),
                outcome: "expansion",
                token: Some(*token),
                via: Some(via.clone()),
            },
            MarkerOutcome::Unmatched => TraceEntryJson {
                marker: entry.marker.clone(),
                outcome: "unmatched",
                token: None,
                via: None,
            },
        })
        .collect()
}

pub fn report_to_json(report: &ScoreReport, generated_at: Option<String>) -> String {
    let json = ReportJson {
        dcoem: opt_percent(report.dcoem()),
        categories: CategoriesJson {
            lexicoh_wordsub: opt_percent(report.category(Category::LexicohWordsub)),
            reference: opt_percent(report.category(Category::Reference)),
            conjunction: opt_percent(report.category(Category::Conjunction)),
        },
        generated_at,
        documents: report
            .documents
            .iter()
            .map(|doc| DocReportJson {
                doc_id: doc.doc_id.clone(),
                score: opt_percent(doc.score()),
                skipped: doc.skipped,
                sentences: doc
                    .sentences
                    .iter()
                    .enumerate()
                    .map(|(i, s)| SentenceReportJson {
                        i,
                        combined: opt_percent(s.combined()),
                        lw: opt_percent(s.lw.value()),
                        r: opt_percent(s.r.value()),
                        c: opt_percent(s.c.value()),
                        trace: s.traces.as_ref().map(|t| TraceJson {
                            lw: trace_entries(&t.lw),
                            r: trace_entries(&t.r),
                            c: trace_entries(&t.c),
                        }),
                    })
                    .collect(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string(&json).expect("report serialization cannot fail");
    out.push('\n');
    out
}

/// One row per document plus a final ALL row (DCoEM, LC-WS, Refere., Conjun.).
pub fn report_to_tsv(report: &ScoreReport) -> String {
    let mut out = String::from("doc_id\tDCoEM\tLC-WS\tRefere.\tConjun.\n");
    for doc in &report.documents {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            doc.doc_id,
            opt_percent_string(doc.score()),
            opt_percent_string(doc.category_score(Category::LexicohWordsub)),
            opt_percent_string(doc.category_score(Category::Reference)),
            opt_percent_string(doc.category_score(Category::Conjunction)),
        ));
    }
    out.push_str(&format!(
        "ALL\t{}\t{}\t{}\t{}\n",
        opt_percent_string(report.dcoem()),
        opt_percent_string(report.category(Category::LexicohWordsub)),
        opt_percent_string(report.category(Category::Reference)),
        opt_percent_string(report.category(Category::Conjunction)),
    ));
    out
}

/// The stdout summary: a header line and the corpus row.
pub fn summary_lines(report: &ScoreReport) -> (String, String) {
    let header = "DCoEM LC-WS Refere. Conjun.".to_string();
    let row = format!(
        "{} {} {} {}",
        opt_percent_string(report.dcoem()),
        opt_percent_string(report.category(Category::LexicohWordsub)),
        opt_percent_string(report.category(Category::Reference)),
        opt_percent_string(report.category(Category::Conjunction)),
    );
    (header, row)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn percent_rounding() {
        assert_eq!(percent_string(&ratio(1, 1)), "100.00");
        assert_eq!(percent_string(&ratio(5, 8)), "62.50");
        assert_eq!(percent_string(&ratio(1, 3)), "33.33");
        assert_eq!(percent_string(&ratio(2, 3)), "66.67");
        assert_eq!(percent_string(&ratio(0, 1)), "0.00");
        // exact half rounds away from zero
        assert_eq!(percent_string(&ratio(1, 8000)), "0.01");
    }

    #[test]
    fn percent_f64_matches_string() {
        for (n, d) in [(1, 1), (5, 8), (1, 3), (7, 9), (0, 5)] {
            let r = ratio(n, d);
            let s = percent_string(&r);
            let f = percent_f64(&r);
            assert_eq!(s.parse::<f64>().unwrap(), f);
        }
    }
}
