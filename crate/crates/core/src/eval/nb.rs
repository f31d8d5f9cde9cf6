//! Multinomial Naive Bayes, one binary model per category.

use std::collections::{BTreeMap, BTreeSet};

use crate::eval::metrics::{classification_metrics, ClassificationMetrics};
use crate::eval::EvalReport;
use crate::text::TokenizedDoc;
use crate::{Error, Result};

pub const DEFAULT_ALPHA: f64 = 1.0;

/// Binary "target class vs. everything else" model with add-alpha
/// smoothing over the union vocabulary.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryNBModel {
    pub target_class: String,
    pub alpha: f64,
    pub log_prior_pos: f64,
    pub log_prior_neg: f64,
    pub log_likelihood_pos: BTreeMap<String, f64>,
    pub log_likelihood_neg: BTreeMap<String, f64>,
}

impl BinaryNBModel {
    pub fn vocabulary(&self) -> impl Iterator<Item = &str> {
        self.log_likelihood_pos.keys().map(String::as_str)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub positive: bool,
    pub posterior_pos: f64,
    pub posterior_neg: f64,
}

fn is_positive(doc: &TokenizedDoc, target: &str) -> Result<bool> {
    match &doc.label {
        Some(l) => Ok(l == target),
        None => Err(Error::InvalidArgument(format!("document {:?} has no label", doc.id))),
    }
}

pub fn train_nb(docs: &[TokenizedDoc], target_class: &str, alpha: f64) -> Result<BinaryNBModel> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::InvalidArgument(format!("alpha must be > 0, got {alpha}")));
    }
    let mut counts_pos: BTreeMap<&str, u64> = BTreeMap::new();
    let mut counts_neg: BTreeMap<&str, u64> = BTreeMap::new();
    let (mut n_pos, mut n_neg) = (0usize, 0usize);
    for doc in docs {
        let counts = if is_positive(doc, target_class)? {
            n_pos += 1;
            &mut counts_pos
        } else {
            n_neg += 1;
            &mut counts_neg
        };
        for tok in &doc.tokens {
            *counts.entry(tok.as_str()).or_insert(0) += 1;
        }
    }
    if n_pos == 0 || n_neg == 0 {
        return Err(Error::SingleClass(format!(
            "class {target_class:?} has {n_pos} positive and {n_neg} negative documents"
        )));
    }
    let vocabulary: BTreeSet<&str> = counts_pos.keys().chain(counts_neg.keys()).copied().collect();
    let v = vocabulary.len() as f64;
    let likelihoods = |counts: &BTreeMap<&str, u64>| -> BTreeMap<String, f64> {
        let total: u64 = counts.values().sum();
        let denom = (total as f64 + alpha * v).ln();
        vocabulary
            .iter()
            .map(|w| {
                let c = counts.get(w).copied().unwrap_or(0) as f64;
                (w.to_string(), (c + alpha).ln() - denom)
            })
            .collect()
    };
    let n = (n_pos + n_neg) as f64;
    Ok(BinaryNBModel {
        target_class: target_class.to_string(),
        alpha,
        log_prior_pos: (n_pos as f64 / n).ln(),
        log_prior_neg: (n_neg as f64 / n).ln(),
        log_likelihood_pos: likelihoods(&counts_pos),
        log_likelihood_neg: likelihoods(&counts_neg),
    })
}

/// Posterior of the target class. Terms outside the training vocabulary
/// are ignored, so an empty document is decided by the priors alone.
pub fn predict_nb(model: &BinaryNBModel, doc: &TokenizedDoc) -> Prediction {
    let mut joint_pos = model.log_prior_pos;
    let mut joint_neg = model.log_prior_neg;
    for tok in &doc.tokens {
        if let (Some(p), Some(n)) = (
            model.log_likelihood_pos.get(tok),
            model.log_likelihood_neg.get(tok),
        ) {
            joint_pos += p;
            joint_neg += n;
        }
    }
    let posterior_pos = logistic(joint_pos - joint_neg);
    let posterior_neg = logistic(joint_neg - joint_pos);
    Prediction {
        positive: posterior_pos >= 0.5,
        posterior_pos,
        posterior_neg,
    }
}

fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Distinct labels of `docs`, sorted.
pub fn classes(docs: &[TokenizedDoc]) -> Vec<String> {
    let set: BTreeSet<&String> = docs.iter().filter_map(|d| d.label.as_ref()).collect();
    set.into_iter().cloned().collect()
}

/// Trains one binary model per class found in `train` and scores each on
/// `test`. Report keys are `<class>.precision`, `<class>.recall` and
/// `<class>.f1`.
pub fn one_vs_rest(train: &[TokenizedDoc], test: &[TokenizedDoc], alpha: f64) -> Result<EvalReport> {
    let mut report = EvalReport::default();
    for class in classes(train) {
        let model = train_nb(train, &class, alpha)?;
        let mut predicted = Vec::with_capacity(test.len());
        let mut truth = Vec::with_capacity(test.len());
        for doc in test {
            truth.push(is_positive(doc, &class)?);
            predicted.push(predict_nb(&model, doc).positive);
        }
        let ClassificationMetrics { precision, recall, f1 } = classification_metrics(&predicted, &truth)
            .map_err(|e| Error::InvalidArgument(format!("class {class:?}: {e}")))?;
        report.insert(format!("{class}.precision"), precision);
        report.insert(format!("{class}.recall"), recall);
        report.insert(format!("{class}.f1"), f1);
    }
    Ok(report)
}
