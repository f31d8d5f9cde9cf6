//! Browser bindings for the stopkit demo page.
//!
//! Each exported function takes plain strings and numbers and returns a
//! JSON string; errors come back as a thrown string.

use serde::Serialize;
use stopkit::eval::{auc, roc_curve, ScoredInstance};
use stopkit::removal::{reduction_report, remove_stopwords};
use stopkit::stats::{compute_stats, estimated_df, poisson_pmf};
use stopkit::stoplist::{poisson_stoplist_from_scores, rank_tfidf, tfidf_stoplist_from_scores, StopList};
use stopkit::text::{preprocess_text, CleaningConfig, TokenizedDoc};
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct ScoredTerm {
    term: String,
    corpus_tf: u64,
    df: u64,
    tfidf: f64,
    poisson_ratio: f64,
}

#[derive(Serialize)]
struct Preview {
    id: String,
    before: String,
    after: String,
}

#[derive(Serialize)]
struct StoplistResult {
    method: String,
    words: Vec<String>,
    n_docs: u64,
    vocabulary: usize,
    tokens_before: usize,
    tokens_after: usize,
    types_before: usize,
    types_after: usize,
    pct_tokens_removed: f64,
    lowest_tfidf: Vec<ScoredTerm>,
    preview: Vec<Preview>,
}

/// Builds a stop list from `text`, one document per line.
pub fn stoplist_json(
    text: &str,
    method: &str,
    size: usize,
    min_df: u64,
    min_tf: u64,
    tolerance: f64,
    seed: u64,
) -> Result<String, String> {
    let cfg = CleaningConfig::default();
    let docs: Vec<TokenizedDoc> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| TokenizedDoc::new(format!("line{}", i + 1), preprocess_text(l, &cfg)))
        .collect();
    let stats = compute_stats(&docs).map_err(|e| e.to_string())?;
    let rows = stats.score_rows();
    let list: StopList = match method {
        "tfidf" => tfidf_stoplist_from_scores(&rows, size, min_df),
        "poisson" => poisson_stoplist_from_scores(&rows, size, tolerance, min_tf, seed),
        other => return Err(format!("unknown method {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    let report = reduction_report(&docs, &list).map_err(|e| e.to_string())?;
    let lowest_tfidf = rank_tfidf(&rows, min_df)
        .into_iter()
        .take(25)
        .map(|r| ScoredTerm {
            term: r.term.clone(),
            corpus_tf: r.corpus_tf,
            df: r.df,
            tfidf: r.tfidf_score,
            poisson_ratio: r.poisson_ratio,
        })
        .collect();
    let preview = docs
        .iter()
        .take(5)
        .map(|d| Preview {
            id: d.id.clone(),
            before: d.tokens.join(" "),
            after: remove_stopwords(d, &list).tokens.join(" "),
        })
        .collect();
    let result = StoplistResult {
        method: list.method.to_string(),
        words: list.words.into_iter().collect(),
        n_docs: stats.n_docs,
        vocabulary: stats.vocabulary.len(),
        tokens_before: report.tokens_before,
        tokens_after: report.tokens_after,
        types_before: report.types_before,
        types_after: report.types_after,
        pct_tokens_removed: report.pct_tokens_removed(),
        lowest_tfidf,
        preview,
    };
    serde_json::to_string(&result).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct PoissonResult {
    mu: f64,
    estimated_df: f64,
    pmf: Vec<f64>,
}

/// Poisson pmf for `k = 0..=max_k` at `mu = corpus_tf / n_docs`, plus the
/// estimated document frequency.
pub fn poisson_json(corpus_tf: u64, n_docs: u64, max_k: u64) -> Result<String, String> {
    let est = estimated_df(corpus_tf, n_docs).map_err(|e| e.to_string())?;
    let mu = corpus_tf as f64 / n_docs as f64;
    let pmf = (0..=max_k.min(200))
        .map(|k| poisson_pmf(k, mu))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    serde_json::to_string(&PoissonResult {
        mu,
        estimated_df: est,
        pmf,
    })
    .map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct AucResult {
    auc: f64,
    n_pos: usize,
    n_neg: usize,
    roc: Vec<(f64, f64)>,
}

/// Parses `score label` pairs, one per line, separated by whitespace or a
/// comma, and returns the AUC with its ROC points.
pub fn auc_json(text: &str) -> Result<String, String> {
    let mut instances = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|p| !p.is_empty()).collect();
        let [score, label] = parts[..] else {
            return Err(format!("line {}: expected `score label`, got {line:?}", i + 1));
        };
        let score: f64 = score.parse().map_err(|_| format!("line {}: bad score {score:?}", i + 1))?;
        let label: u8 = match label {
            "0" => 0,
            "1" => 1,
            other => return Err(format!("line {}: label must be 0 or 1, got {other:?}", i + 1)),
        };
        instances.push(ScoredInstance {
            id: format!("line{}", i + 1),
            score,
            label,
        });
    }
    let value = auc(&instances).map_err(|e| e.to_string())?;
    let roc = roc_curve(&instances).map_err(|e| e.to_string())?;
    let n_pos = instances.iter().filter(|i| i.label == 1).count();
    serde_json::to_string(&AucResult {
        auc: value,
        n_pos,
        n_neg: instances.len() - n_pos,
        roc,
    })
    .map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = generateStoplist)]
pub fn generate_stoplist(
    text: &str,
    method: &str,
    size: u32,
    min_df: u32,
    min_tf: u32,
    tolerance: f64,
    seed: u32,
) -> Result<String, JsValue> {
    stoplist_json(text, method, size as usize, min_df.into(), min_tf.into(), tolerance, seed.into())
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = poissonProfile)]
pub fn poisson_profile(corpus_tf: u32, n_docs: u32, max_k: u32) -> Result<String, JsValue> {
    poisson_json(corpus_tf.into(), n_docs.into(), max_k.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = aucFromText)]
pub fn auc_from_text(text: &str) -> Result<String, JsValue> {
    auc_json(text).map_err(|e| JsValue::from_str(&e))
}
