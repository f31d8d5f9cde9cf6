//! Stop-word removal and reduction accounting.
//!
//! A [`RemovalReport`] counts both running tokens and distinct types before
//! and after removal, since a list of a few dozen words can only remove
//! that many types but may remove a large share of tokens.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::stoplist::StopList;
use crate::text::TokenizedDoc;
use crate::{Error, Result};

pub fn remove_stopwords(doc: &TokenizedDoc, list: &StopList) -> TokenizedDoc {
    TokenizedDoc {
        id: doc.id.clone(),
        tokens: doc
            .tokens
            .iter()
            .filter(|t| !list.contains(t))
            .cloned()
            .collect(),
        label: doc.label.clone(),
    }
}

pub fn remove_all(docs: &[TokenizedDoc], list: &StopList) -> Vec<TokenizedDoc> {
    docs.iter().map(|d| remove_stopwords(d, list)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RemovalReport {
    pub list_name: String,
    pub list_length: usize,
    pub tokens_before: usize,
    pub tokens_after: usize,
    pub types_before: usize,
    pub types_after: usize,
}

/// `100 * (before - after) / before`. Zero when `before` is zero.
pub fn percent_removed(before: usize, after: usize) -> f64 {
    if before == 0 {
        return 0.0;
    }
    100.0 * (before as f64 - after as f64) / before as f64
}

/// Two decimals, halves rounded away from zero, with a trailing `%`.
pub fn format_percent(pct: f64) -> String {
    format!("{:.2}%", (pct * 100.0).round() / 100.0)
}

impl RemovalReport {
    pub fn pct_tokens_removed(&self) -> f64 {
        percent_removed(self.tokens_before, self.tokens_after)
    }

    pub fn pct_types_removed(&self) -> f64 {
        percent_removed(self.types_before, self.types_after)
    }

    pub fn tokens_removed(&self) -> usize {
        self.tokens_before - self.tokens_after
    }
}

pub fn reduction_report(docs: &[TokenizedDoc], list: &StopList) -> Result<RemovalReport> {
    if docs.is_empty() {
        return Err(Error::EmptyInput("no documents to report on"));
    }
    let mut types_before = HashSet::new();
    let mut types_after = HashSet::new();
    let mut tokens_before = 0;
    let mut tokens_after = 0;
    for doc in docs {
        for tok in &doc.tokens {
            tokens_before += 1;
            types_before.insert(tok.as_str());
            if !list.contains(tok) {
                tokens_after += 1;
                types_after.insert(tok.as_str());
            }
        }
    }
    if tokens_before == 0 {
        return Err(Error::EmptyInput("corpus has no tokens"));
    }
    Ok(RemovalReport {
        list_name: list.name.clone(),
        list_length: list.len(),
        tokens_before,
        tokens_after,
        types_before: types_before.len(),
        types_after: types_after.len(),
    })
}

pub const REPORT_CSV_HEADER: &str =
    "list,length,types_before,types_remaining,pct_types_removed,tokens_before,tokens_remaining,pct_tokens_removed";

pub fn report_csv_row(r: &RemovalReport) -> String {
    format!(
        "{},{},{},{},{:.2},{},{},{:.2}",
        r.list_name,
        r.list_length,
        r.types_before,
        r.types_after,
        (r.pct_types_removed() * 100.0).round() / 100.0,
        r.tokens_before,
        r.tokens_after,
        (r.pct_tokens_removed() * 100.0).round() / 100.0,
    )
}

pub fn reports_to_csv(reports: &[RemovalReport]) -> String {
    let mut out = String::from(REPORT_CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&report_csv_row(r));
        out.push('\n');
    }
    out
}

/// Aligned table: list, length, words remaining, % removed (types), then
/// the token-level columns.
pub fn reports_to_table(reports: &[RemovalReport]) -> String {
    let header = ["Stop list", "Length", "Words remaining", "% removed", "Tokens remaining", "% tokens removed"];
    let rows: Vec<[String; 6]> = reports
        .iter()
        .map(|r| {
            [
                r.list_name.clone(),
                r.list_length.to_string(),
                r.types_after.to_string(),
                format_percent(r.pct_types_removed()),
                r.tokens_after.to_string(),
                format_percent(r.pct_tokens_removed()),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[&str]| {
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i == 0 {
                let _ = write!(out, "{cell:<w$}");
            } else {
                let _ = write!(out, "  {cell:>w$}");
            }
        }
        out.push('\n');
    };
    line(&header);
    for row in &rows {
        line(&row.each_ref().map(String::as_str));
    }
    out
}
