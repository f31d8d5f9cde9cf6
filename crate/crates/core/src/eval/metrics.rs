use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassificationMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Precision, recall and F1 of the positive class. With no positive
/// predictions precision and F1 are 0.
pub fn classification_metrics(predictions: &[bool], truth: &[bool]) -> Result<ClassificationMetrics> {
    if predictions.len() != truth.len() {
        return Err(Error::LengthMismatch(predictions.len(), truth.len()));
    }
    let (mut tp, mut fp, mut fn_) = (0usize, 0usize, 0usize);
    for (&p, &t) in predictions.iter().zip(truth) {
        match (p, t) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, true) => fn_ += 1,
            (false, false) => {}
        }
    }
    if tp + fn_ == 0 {
        return Err(Error::InvalidArgument("truth labels contain no positive example".into()));
    }
    let precision = if tp + fp == 0 { 0.0 } else { tp as f64 / (tp + fp) as f64 };
    let recall = tp as f64 / (tp + fn_) as f64;
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    Ok(ClassificationMetrics { precision, recall, f1 })
}

/// One query's ranked output and its ground truth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedQueryResult {
    pub query_id: String,
    pub ranked: Vec<String>,
    pub relevant: HashSet<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankingMetrics {
    pub top_k: f64,
    pub mrr: f64,
    pub map: f64,
    pub mean_recall: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct QueryScores {
    hit: f64,
    rr: f64,
    ap: f64,
    recall: f64,
}

fn score_query(q: &RankedQueryResult, k: usize) -> QueryScores {
    let mut hits = 0usize;
    let mut first = None;
    let mut precision_sum = 0.0;
    for (i, item) in q.ranked.iter().take(k).enumerate() {
        if q.relevant.contains(item) {
            hits += 1;
            first.get_or_insert(i + 1);
            precision_sum += hits as f64 / (i + 1) as f64;
        }
    }
    QueryScores {
        hit: if hits > 0 { 1.0 } else { 0.0 },
        rr: first.map_or(0.0, |r| 1.0 / r as f64),
        ap: if hits > 0 { precision_sum / hits as f64 } else { 0.0 },
        recall: hits as f64 / q.relevant.len() as f64,
    }
}

/// Top-k hit rate, MRR@k, MAP@k and mean recall@k, each averaged over
/// queries in input order.
///
/// Average precision is the mean of precision@i over the positions `i <= k`
/// holding a relevant item, and 0 when there is none.
pub fn ranking_metrics(results: &[RankedQueryResult], k: usize) -> Result<RankingMetrics> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    if results.is_empty() {
        return Err(Error::EmptyInput("no ranked queries"));
    }
    for q in results {
        if q.relevant.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "query {:?} has an empty relevant set",
                q.query_id
            )));
        }
        let mut seen = HashSet::with_capacity(q.ranked.len());
        if let Some(dup) = q.ranked.iter().find(|item| !seen.insert(item.as_str())) {
            return Err(Error::InvalidArgument(format!(
                "query {:?} ranks {dup:?} twice",
                q.query_id
            )));
        }
    }
    let n = results.len() as f64;
    let mut total = RankingMetrics {
        top_k: 0.0,
        mrr: 0.0,
        map: 0.0,
        mean_recall: 0.0,
    };
    for q in results {
        let s = score_query(q, k);
        total.top_k += s.hit;
        total.mrr += s.rr;
        total.map += s.ap;
        total.mean_recall += s.recall;
    }
    Ok(RankingMetrics {
        top_k: total.top_k / n,
        mrr: total.mrr / n,
        map: total.map / n,
        mean_recall: total.mean_recall / n,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredInstance {
    pub id: String,
    pub score: f64,
    pub label: u8,
}

fn split_scores(instances: &[ScoredInstance]) -> Result<(usize, usize)> {
    let mut pos = 0;
    let mut neg = 0;
    for inst in instances {
        if inst.score.is_nan() {
            return Err(Error::InvalidArgument(format!("instance {:?} has a NaN score", inst.id)));
        }
        match inst.label {
            0 => neg += 1,
            1 => pos += 1,
            l => {
                return Err(Error::InvalidArgument(format!(
                    "instance {:?} has label {l}; expected 0 or 1",
                    inst.id
                )))
            }
        }
    }
    if pos == 0 || neg == 0 {
        return Err(Error::SingleClass(format!(
            "AUC needs at least one positive and one negative instance (got {pos} positive, {neg} negative)"
        )));
    }
    Ok((pos, neg))
}

/// Area under the ROC curve in Mann-Whitney form: the fraction of
/// (positive, negative) pairs where the positive scores higher, ties
/// counting one half. Computed from mid-ranks in O(n log n).
pub fn auc(instances: &[ScoredInstance]) -> Result<f64> {
    let (n_pos, n_neg) = split_scores(instances)?;
    let mut sorted: Vec<&ScoredInstance> = instances.iter().collect();
    sorted.sort_by(|a, b| a.score.total_cmp(&b.score));
    let mut rank_sum_pos = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1].score == sorted[i].score {
            j += 1;
        }
        // ranks i+1 ..= j+1 share their mean
        let mid_rank = (i + j + 2) as f64 / 2.0;
        let pos_in_group = sorted[i..=j].iter().filter(|s| s.label == 1).count();
        rank_sum_pos += mid_rank * pos_in_group as f64;
        i = j + 1;
    }
    let u = rank_sum_pos - (n_pos * (n_pos + 1)) as f64 / 2.0;
    Ok(u / (n_pos as f64 * n_neg as f64))
}

/// ROC points `(false positive rate, true positive rate)` from (0,0) to
/// (1,1), one point per distinct score threshold.
pub fn roc_curve(instances: &[ScoredInstance]) -> Result<Vec<(f64, f64)>> {
    let (n_pos, n_neg) = split_scores(instances)?;
    let mut sorted: Vec<&ScoredInstance> = instances.iter().collect();
    sorted.sort_by(|a, b| b.score.total_cmp(&a.score));
    let mut points = vec![(0.0, 0.0)];
    let (mut tp, mut fp) = (0usize, 0usize);
    let mut i = 0;
    while i < sorted.len() {
        let score = sorted[i].score;
        while i < sorted.len() && sorted[i].score == score {
            if sorted[i].label == 1 {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        points.push((fp as f64 / n_neg as f64, tp as f64 / n_pos as f64));
    }
    Ok(points)
}
