//! Term and document frequencies and the scores derived from them.
//!
//! All logarithms are natural. Scores are pure functions of the integer
//! counts in a finished [`CorpusStats`].

use std::collections::{BTreeMap, HashSet};
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::text::TokenizedDoc;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermStats {
    pub term: String,
    /// Occurrences across the whole corpus.
    pub corpus_tf: u64,
    /// Number of documents containing the term.
    pub df: u64,
    /// Occurrences per containing document, keyed by document id.
    pub per_doc_tf: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusStats {
    pub n_docs: u64,
    pub vocabulary: BTreeMap<String, TermStats>,
}

/// Counts every term in `docs`. Documents without tokens still count
/// towards `n_docs`.
pub fn compute_stats(docs: &[TokenizedDoc]) -> Result<CorpusStats> {
    if docs.is_empty() {
        return Err(Error::EmptyInput("no documents to count"));
    }
    let mut ids = HashSet::with_capacity(docs.len());
    let mut vocabulary: BTreeMap<String, TermStats> = BTreeMap::new();
    for doc in docs {
        if !ids.insert(doc.id.as_str()) {
            return Err(Error::DuplicateId(doc.id.clone()));
        }
        for token in &doc.tokens {
            let entry = vocabulary.entry(token.clone()).or_insert_with(|| TermStats {
                term: token.clone(),
                corpus_tf: 0,
                df: 0,
                per_doc_tf: BTreeMap::new(),
            });
            entry.corpus_tf += 1;
            *entry.per_doc_tf.entry(doc.id.clone()).or_insert(0) += 1;
        }
    }
    for stats in vocabulary.values_mut() {
        stats.df = stats.per_doc_tf.len() as u64;
    }
    Ok(CorpusStats {
        n_docs: docs.len() as u64,
        vocabulary,
    })
}

/// `ln(1 + freq)`.
pub fn tf_weight(freq: f64) -> Result<f64> {
    if freq.is_nan() || freq < 0.0 {
        return Err(Error::InvalidArgument(format!("frequency must be >= 0, got {freq}")));
    }
    Ok(freq.ln_1p())
}

/// `ln(n_docs / df)`.
pub fn idf_weight(n_docs: u64, df: u64) -> Result<f64> {
    if df == 0 || df > n_docs {
        return Err(Error::InvalidArgument(format!(
            "document frequency must be in [1, {n_docs}], got {df}"
        )));
    }
    Ok((n_docs as f64 / df as f64).ln())
}

fn lookup<'a>(term: &str, stats: &'a CorpusStats) -> Result<&'a TermStats> {
    stats
        .vocabulary
        .get(term)
        .ok_or_else(|| Error::UnknownTerm(term.to_string()))
}

/// Corpus-level TF-IDF of a term: its idf times the mean tf weight over
/// the documents that contain it. Universal terms score exactly zero.
pub fn aggregate_tfidf(term: &str, stats: &CorpusStats) -> Result<f64> {
    let ts = lookup(term, stats)?;
    Ok(term_tfidf(ts, stats.n_docs))
}

fn term_tfidf(ts: &TermStats, n_docs: u64) -> f64 {
    let idf = (n_docs as f64 / ts.df as f64).ln();
    let sum: f64 = ts.per_doc_tf.values().map(|&f| (f as f64).ln_1p()).sum();
    idf * (sum / ts.df as f64)
}

/// Probability of exactly `k` occurrences under a Poisson law with mean `mu`.
pub fn poisson_pmf(k: u64, mu: f64) -> Result<f64> {
    if !mu.is_finite() || mu <= 0.0 {
        return Err(Error::InvalidArgument(format!("poisson mean must be > 0, got {mu}")));
    }
    let ln_k_factorial: f64 = (2..=k).map(|i| (i as f64).ln()).sum();
    Ok((k as f64 * mu.ln() - mu - ln_k_factorial).exp())
}

/// Expected number of documents containing a term with `corpus_tf`
/// occurrences if those occurrences were spread Poisson-fashion over
/// `n_docs` documents: `N * (1 - P(0; tf / N))`.
///
/// The result lies in `(0, N)`; in `f64` it saturates at `N` once
/// `tf / N` exceeds about 37.
pub fn estimated_df(corpus_tf: u64, n_docs: u64) -> Result<f64> {
    if corpus_tf == 0 || n_docs == 0 {
        return Err(Error::InvalidArgument(format!(
            "estimated df needs tf >= 1 and N >= 1, got tf={corpus_tf}, N={n_docs}"
        )));
    }
    let mu = corpus_tf as f64 / n_docs as f64;
    Ok(n_docs as f64 * -(-mu).exp_m1())
}

/// Estimated df over actual df. Values near 1 mean the term is spread
/// like a stop word; bursty keywords score well above 1.
pub fn poisson_ratio(term: &str, stats: &CorpusStats) -> Result<f64> {
    let ts = lookup(term, stats)?;
    Ok(term_ratio(ts, stats.n_docs))
}

fn term_ratio(ts: &TermStats, n_docs: u64) -> f64 {
    let mu = ts.corpus_tf as f64 / n_docs as f64;
    n_docs as f64 * -(-mu).exp_m1() / ts.df as f64
}

/// One row of the stats export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermScore {
    pub term: String,
    pub corpus_tf: u64,
    pub df: u64,
    pub tfidf_score: f64,
    pub poisson_ratio: f64,
}

impl CorpusStats {
    /// Scores for every term, sorted by term.
    pub fn score_rows(&self) -> Vec<TermScore> {
        self.vocabulary
            .values()
            .map(|ts| TermScore {
                term: ts.term.clone(),
                corpus_tf: ts.corpus_tf,
                df: ts.df,
                tfidf_score: term_tfidf(ts, self.n_docs),
                poisson_ratio: term_ratio(ts, self.n_docs),
            })
            .collect()
    }
}

/// Writes `term,corpus_tf,df,tfidf_score,poisson_ratio` rows sorted by term.
pub fn write_scores_csv<W: io::Write>(rows: &[TermScore], out: W) -> Result<()> {
    let mut sorted: Vec<&TermScore> = rows.iter().collect();
    sorted.sort_by(|a, b| a.term.cmp(&b.term));
    let mut w = csv::Writer::from_writer(out);
    for row in sorted {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

pub fn read_scores_csv(path: impl AsRef<Path>) -> Result<Vec<TermScore>> {
    let path = path.as_ref();
    let mut rdr = csv::Reader::from_path(path)?;
    let mut rows = Vec::new();
    for (idx, rec) in rdr.deserialize().enumerate() {
        // header is line 1
        let row: TermScore = rec.map_err(|e| Error::malformed(path, idx + 2, e.to_string()))?;
        rows.push(row);
    }
    Ok(rows)
}
