//! Brute-force oracles and random instance generators shared by the
//! integration tests. Nothing here calls into the code paths it checks.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use stopkit::eval::{RankedQueryResult, ScoredInstance};
use stopkit::text::TokenizedDoc;

pub const WORDS: [&str; 12] = [
    "a", "the", "of", "api", "css", "grid", "node", "loop", "java", "type", "error", "list",
];

pub fn random_docs(rng: &mut ChaCha8Rng, max_docs: usize, max_tokens: usize) -> Vec<TokenizedDoc> {
    let n = rng.random_range(1..=max_docs);
    (0..n)
        .map(|i| {
            let len = rng.random_range(0..=max_tokens);
            let tokens = (0..len)
                .map(|_| WORDS[rng.random_range(0..WORDS.len())].to_string())
                .collect();
            TokenizedDoc::new(format!("doc{i}"), tokens)
        })
        .collect()
}

/// term -> (corpus_tf, df) by rescanning every document for every term.
pub fn recount(docs: &[TokenizedDoc]) -> BTreeMap<String, (u64, u64)> {
    let mut terms = BTreeSet::new();
    for d in docs {
        for t in &d.tokens {
            terms.insert(t.clone());
        }
    }
    let mut out = BTreeMap::new();
    for term in terms {
        let mut tf = 0;
        let mut df = 0;
        for d in docs {
            let mut in_doc = 0;
            for t in &d.tokens {
                if *t == term {
                    in_doc += 1;
                }
            }
            tf += in_doc;
            if in_doc > 0 {
                df += 1;
            }
        }
        out.insert(term, (tf, df));
    }
    out
}

/// (precision, recall, f1) straight from the confusion-matrix definitions.
pub fn brute_prf(pred: &[bool], truth: &[bool]) -> (f64, f64, f64) {
    let pairs: Vec<(bool, bool)> = pred.iter().copied().zip(truth.iter().copied()).collect();
    let tp = pairs.iter().filter(|&&(p, t)| p && t).count() as f64;
    let predicted_pos = pairs.iter().filter(|&&(p, _)| p).count() as f64;
    let actual_pos = pairs.iter().filter(|&&(_, t)| t).count() as f64;
    let precision = if predicted_pos == 0.0 { 0.0 } else { tp / predicted_pos };
    let recall = tp / actual_pos;
    let f1 = if tp == 0.0 { 0.0 } else { 2.0 * tp / (predicted_pos + actual_pos) };
    (precision, recall, f1)
}

/// (top_k, mrr, map, mean_recall), recomputing precision@i from scratch at
/// every position.
pub fn brute_ranking(results: &[RankedQueryResult], k: usize) -> (f64, f64, f64, f64) {
    let mut sums = (0.0, 0.0, 0.0, 0.0);
    for q in results {
        let cut = q.ranked.len().min(k);
        let prefix = &q.ranked[..cut];
        let hits: Vec<usize> = (0..cut).filter(|&i| q.relevant.contains(&prefix[i])).collect();
        if !hits.is_empty() {
            sums.0 += 1.0;
            sums.1 += 1.0 / (hits[0] + 1) as f64;
            let mut ap = 0.0;
            for &i in &hits {
                let rel_upto = prefix[..=i].iter().filter(|x| q.relevant.contains(*x)).count();
                ap += rel_upto as f64 / (i + 1) as f64;
            }
            sums.2 += ap / hits.len() as f64;
        }
        let found: HashSet<&String> = prefix.iter().filter(|x| q.relevant.contains(*x)).collect();
        sums.3 += found.len() as f64 / q.relevant.len() as f64;
    }
    let n = results.len() as f64;
    (sums.0 / n, sums.1 / n, sums.2 / n, sums.3 / n)
}

/// Mann-Whitney AUC by enumerating every (positive, negative) pair.
pub fn brute_auc(instances: &[ScoredInstance]) -> f64 {
    let mut wins = 0.0;
    let mut pairs = 0.0;
    for p in instances.iter().filter(|i| i.label == 1) {
        for n in instances.iter().filter(|i| i.label == 0) {
            pairs += 1.0;
            if p.score > n.score {
                wins += 1.0;
            } else if p.score == n.score {
                wins += 0.5;
            }
        }
    }
    wins / pairs
}

pub fn random_labels(rng: &mut ChaCha8Rng, n: usize) -> (Vec<bool>, Vec<bool>) {
    loop {
        let truth: Vec<bool> = (0..n).map(|_| rng.random_bool(0.4)).collect();
        if truth.iter().any(|&t| t) {
            let pred = (0..n).map(|_| rng.random_bool(0.5)).collect();
            return (pred, truth);
        }
    }
}

pub fn random_query(rng: &mut ChaCha8Rng, id: usize) -> RankedQueryResult {
    let pool = 20;
    let len = rng.random_range(0..=pool);
    let mut items: Vec<usize> = (0..pool).collect();
    // partial Fisher-Yates for a duplicate-free ranking
    for i in 0..len {
        let j = rng.random_range(i..pool);
        items.swap(i, j);
    }
    let ranked = items[..len].iter().map(|i| format!("item{i}")).collect();
    let n_rel = rng.random_range(1..=5);
    let relevant = (0..n_rel)
        .map(|_| format!("item{}", rng.random_range(0..pool)))
        .collect();
    RankedQueryResult {
        query_id: format!("q{id}"),
        ranked,
        relevant,
    }
}

/// Scores on a coarse grid so ties are common.
pub fn random_instances(rng: &mut ChaCha8Rng, max: usize) -> Vec<ScoredInstance> {
    loop {
        let n = rng.random_range(2..=max);
        let v: Vec<ScoredInstance> = (0..n)
            .map(|i| ScoredInstance {
                id: format!("i{i}"),
                score: rng.random_range(0..10) as f64 / 10.0,
                label: rng.random_range(0..2),
            })
            .collect();
        if v.iter().any(|i| i.label == 1) && v.iter().any(|i| i.label == 0) {
            return v;
        }
    }
}
