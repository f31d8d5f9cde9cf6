//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Every tolerance is a constant below.

mod common;

use std::collections::BTreeSet;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stopkit::corpus::{load_corpus, CorpusFormat};
use stopkit::eval::{
    auc, classification_metrics, compare_runs, predict_nb, ranking_metrics, train_nb, EvalReport,
    ScoredInstance,
};
use stopkit::removal::{percent_removed, remove_all, remove_stopwords, reports_to_csv, reduction_report};
use stopkit::stats::{compute_stats, estimated_df, idf_weight, poisson_pmf, tf_weight, write_scores_csv};
use stopkit::stoplist::{
    build_poisson_stoplist, build_tfidf_stoplist, rank_tfidf, render_stoplist, Method, StopList,
    DEFAULT_MIN_DF, DEFAULT_MIN_TF, DEFAULT_SEED, DEFAULT_SIZE, DEFAULT_TOLERANCE,
};
use stopkit::text::{preprocess_corpus, write_tokenized, CleaningConfig, TokenizedDoc};

const PERCENT_TOL: f64 = 0.01;
const TOTAL_WORDS_TOL: f64 = 1.0;
const CLOSED_FORM_TOL: f64 = 1e-12;
const ORACLE_TOL: f64 = 1e-9;
const ORACLE_INSTANCES: usize = 500;
const ORACLE_BUDGET: Duration = Duration::from_secs(10);
const FILLERS_REQUIRED: usize = 18;
const PIPELINE_BUDGET: Duration = Duration::from_secs(5);
const PROPERTY_CASES: usize = 300;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 reduction percentages", reduction_percentages),
        ("2 implied corpus total", implied_total),
        ("3 comparison tally", comparison_tally),
        ("4 closed-form scores", closed_forms),
        ("5 oracle equivalence", oracle_equivalence),
        ("6 filler recovery", filler_recovery),
        ("7 pipeline determinism", pipeline_determinism),
        ("8 property suites", property_suites),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

fn reduction_percentages() -> Check {
    let rows = [
        ("Very small", 7849, 18.70),
        ("Small", 7734, 19.89),
        ("Medium", 7656, 20.70),
        ("Large", 7257, 24.84),
        ("Technology domain", 7823, 18.97),
        ("SE domain (TF-IDF)", 7617, 21.10),
        ("SE domain (Poisson)", 7612, 21.16),
    ];
    let mut worst: f64 = 0.0;
    for (name, remaining, printed) in rows {
        let pct = percent_removed(9655, remaining);
        let diff = (pct - printed).abs();
        if diff > PERCENT_TOL {
            return Err(format!("{name}: {pct:.4} vs printed {printed}"));
        }
        worst = worst.max(diff);
    }
    Ok(format!("7 rows, max deviation {worst:.4}"))
}

fn implied_total() -> Check {
    let large: f64 = 342.0 / (1.0 - 0.1576);
    let very_small = 389.0 / (1.0 - 0.0418);
    let gap = (large - very_small).abs();
    if gap <= TOTAL_WORDS_TOL {
        Ok(format!("{large:.3} vs {very_small:.3}"))
    } else {
        Err(format!("{large:.3} vs {very_small:.3} differ by {gap:.3}"))
    }
}

fn comparison_tally() -> Check {
    let metrics = [
        ("pd.pre", 0.099, 0.107),
        ("pd.rec", 0.295, 0.402),
        ("pd.f1", 0.148, 0.169),
        ("rt.pre", 0.738, 0.722),
        ("rt.rec", 0.729, 0.782),
        ("rt.f1", 0.733, 0.751),
        ("fr.pre", 0.057, 0.079),
        ("fr.rec", 0.179, 0.333),
        ("fr.f1", 0.087, 0.128),
        ("ue.pre", 0.116, 0.117),
        ("ue.rec", 0.274, 0.325),
        ("ue.f1", 0.163, 0.172),
        ("top@10", 0.8343, 0.8417),
        ("mrr@10", 0.5229, 0.5320),
        ("map@10", 0.4573, 0.4582),
        ("mean_recall@10", 0.5407, 0.5618),
        ("auc.q2", 0.585, 0.588),
        ("auc.q4", 0.981, 0.981),
        ("auc.q5", 0.561, 0.602),
    ];
    let mut base = EvalReport::default();
    let mut cand = EvalReport::default();
    for (name, b, c) in metrics {
        base.insert(name, b);
        cand.insert(name, c);
    }
    let cmp = compare_runs(&base, &[("SE domain (TF-IDF)".into(), cand)], 0.0).map_err(|e| e.to_string())?;
    let row = &cmp.rows[0];
    let got = (row.better, row.worse, row.same);
    if got == (17, 1, 1) {
        Ok(format!("{got:?} over {} metrics", metrics.len()))
    } else {
        Err(format!("{got:?}, expected (17, 1, 1)"))
    }
}

fn closed_forms() -> Check {
    let checks = [
        ("tf_weight(1)", tf_weight(1.0), 2f64.ln()),
        ("idf_weight(4,1)", idf_weight(4, 1), 4f64.ln()),
        ("poisson_pmf(0,1)", poisson_pmf(0, 1.0), (-1f64).exp()),
        ("estimated_df(500,100)", estimated_df(500, 100), 100.0 * (1.0 - (-5f64).exp())),
    ];
    let mut worst: f64 = 0.0;
    for (name, got, want) in checks {
        let got = got.map_err(|e| format!("{name}: {e}"))?;
        let diff = (got - want).abs();
        if diff > CLOSED_FORM_TOL {
            return Err(format!("{name} = {got}, expected {want}"));
        }
        worst = worst.max(diff);
    }
    Ok(format!("4 values, max deviation {worst:e}"))
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut mismatches = Vec::new();
    for i in 0..ORACLE_INSTANCES {
        let docs = common::random_docs(&mut rng, 50, 40);
        let stats = compute_stats(&docs).map_err(|e| e.to_string())?;
        let oracle = common::recount(&docs);
        let agree = stats.vocabulary.len() == oracle.len()
            && oracle.iter().all(|(t, &(tf, df))| {
                stats.vocabulary.get(t).is_some_and(|s| s.corpus_tf == tf && s.df == df)
            });
        if !agree {
            mismatches.push(format!("stats #{i}"));
        }

        let n = rng.random_range(1..=50);
        let (pred, truth) = common::random_labels(&mut rng, n);
        let m = classification_metrics(&pred, &truth).map_err(|e| e.to_string())?;
        let (p, r, f) = common::brute_prf(&pred, &truth);
        if [m.precision - p, m.recall - r, m.f1 - f].iter().any(|d| d.abs() > ORACLE_TOL) {
            mismatches.push(format!("prf #{i}"));
        }

        let queries: Vec<_> = (0..rng.random_range(1..=8)).map(|q| common::random_query(&mut rng, q)).collect();
        let k = rng.random_range(1..=20);
        let m = ranking_metrics(&queries, k).map_err(|e| e.to_string())?;
        let (top, mrr, map, recall) = common::brute_ranking(&queries, k);
        if [m.top_k - top, m.mrr - mrr, m.map - map, m.mean_recall - recall]
            .iter()
            .any(|d| d.abs() > ORACLE_TOL)
        {
            mismatches.push(format!("ranking #{i}"));
        }

        let inst = common::random_instances(&mut rng, 50);
        let a = auc(&inst).map_err(|e| e.to_string())?;
        if (a - common::brute_auc(&inst)).abs() > ORACLE_TOL {
            mismatches.push(format!("auc #{i}"));
        }
    }
    let elapsed = start.elapsed();
    if !mismatches.is_empty() {
        return Err(format!("{} mismatches, first {}", mismatches.len(), mismatches[0]));
    }
    if elapsed > ORACLE_BUDGET {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{ORACLE_INSTANCES} instances x 4 operations in {elapsed:.2?}"))
}

/// 500 docs; 20 fillers with about 1500 occurrences each scattered
/// uniformly, 200 content words each packed into 5 docs.
fn filler_corpus() -> (Vec<TokenizedDoc>, BTreeSet<String>) {
    let n_docs = 500;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut docs: Vec<Vec<String>> = vec![Vec::new(); n_docs];
    let fillers: BTreeSet<String> = (0..20).map(|i| format!("filler{}", letters(i))).collect();
    for f in &fillers {
        for _ in 0..1500 {
            docs[rng.random_range(0..n_docs)].push(f.clone());
        }
    }
    for w in 0..200 {
        let word = format!("content{}", letters(w));
        for _ in 0..5 {
            let d = rng.random_range(0..n_docs);
            for _ in 0..rng.random_range(4..=12) {
                docs[d].push(word.clone());
            }
        }
    }
    let docs = docs
        .into_iter()
        .enumerate()
        .map(|(i, mut tokens)| {
            // shuffle token order within the doc
            for j in (1..tokens.len()).rev() {
                tokens.swap(j, rng.random_range(0..=j));
            }
            TokenizedDoc::new(format!("g{i}"), tokens)
        })
        .collect();
    (docs, fillers)
}

fn letters(mut i: usize) -> String {
    let mut s = String::new();
    loop {
        s.push((b'a' + (i % 26) as u8) as char);
        i /= 26;
        if i == 0 {
            return s;
        }
    }
}

fn filler_recovery() -> Check {
    let (docs, fillers) = filler_corpus();
    let stats = compute_stats(&docs).map_err(|e| e.to_string())?;
    let tfidf = build_tfidf_stoplist(&stats, 200, DEFAULT_MIN_DF).map_err(|e| e.to_string())?;
    let poisson = build_poisson_stoplist(&stats, 200, DEFAULT_TOLERANCE, DEFAULT_MIN_TF, 42)
        .map_err(|e| e.to_string())?;
    let hit = |l: &StopList| fillers.iter().filter(|f| l.contains(f)).count();
    let (a, b) = (hit(&tfidf), hit(&poisson));
    let detail = format!("tfidf {a}/20, poisson {b}/20 (poisson list size {})", poisson.len());
    if a >= FILLERS_REQUIRED && b >= FILLERS_REQUIRED {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn run_pipeline(fixture: &Path, out: &Path) -> Result<Vec<(String, Vec<u8>)>, String> {
    let e = |e: stopkit::Error| e.to_string();
    let corpus = load_corpus(fixture, CorpusFormat::Jsonl).map_err(e)?;
    let docs = preprocess_corpus(&corpus, &CleaningConfig::default());
    write_tokenized(&docs, out.join("tokens.jsonl")).map_err(e)?;
    let stats = compute_stats(&docs).map_err(e)?;
    let mut stats_csv = Vec::new();
    write_scores_csv(&stats.score_rows(), &mut stats_csv).map_err(e)?;
    std::fs::write(out.join("stats.csv"), &stats_csv).map_err(|e| e.to_string())?;

    let tfidf = build_tfidf_stoplist(&stats, DEFAULT_SIZE, DEFAULT_MIN_DF).map_err(e)?;
    let mut lists = vec![tfidf];
    // a small fixture may have no Poisson-consistent term at the default tolerance
    let poisson_note = match build_poisson_stoplist(&stats, DEFAULT_SIZE, DEFAULT_TOLERANCE, DEFAULT_MIN_TF, DEFAULT_SEED) {
        Ok(list) => {
            lists.push(list);
            String::new()
        }
        Err(err) => err.to_string(),
    };
    let mut outputs = vec![
        ("tokens.jsonl".to_string(), std::fs::read(out.join("tokens.jsonl")).map_err(|e| e.to_string())?),
        ("stats.csv".to_string(), stats_csv),
        ("poisson.err".to_string(), poisson_note.into_bytes()),
    ];
    let mut reports = Vec::new();
    for list in &lists {
        outputs.push((format!("{}.txt", list.method), render_stoplist(list).into_bytes()));
        let cleaned = remove_all(&docs, list);
        let text: String = cleaned.iter().map(|d| d.tokens.join(" ") + "\n").collect();
        outputs.push((format!("{}.removed", list.method), text.into_bytes()));
        reports.push(reduction_report(&docs, list).map_err(e)?);
    }
    outputs.push(("report.csv".to_string(), reports_to_csv(&reports).into_bytes()));
    Ok(outputs)
}

fn pipeline_determinism() -> Check {
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/sample.jsonl");
    let start = Instant::now();
    let dirs = [tempfile::tempdir(), tempfile::tempdir()];
    let mut runs = Vec::new();
    for dir in &dirs {
        let dir = dir.as_ref().map_err(|e| e.to_string())?;
        runs.push(run_pipeline(&fixture, dir.path())?);
    }
    let elapsed = start.elapsed();
    if runs[0] != runs[1] {
        let diff = runs[0].iter().zip(&runs[1]).find(|(a, b)| a != b).map(|(a, _)| a.0.clone());
        return Err(format!("outputs differ: {diff:?}"));
    }
    if elapsed > PIPELINE_BUDGET {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{} artifacts identical, two runs in {elapsed:.2?}", runs[0].len()))
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let vocab = ["a", "b", "c", "d", "e", "f"];
    let random_set = |rng: &mut ChaCha8Rng| -> BTreeSet<String> {
        vocab.iter().filter(|_| rng.random_bool(0.4)).map(|w| w.to_string()).collect()
    };
    for case in 0..PROPERTY_CASES {
        let docs = common::random_docs(&mut rng, 20, 30);
        let (a, b) = (random_set(&mut rng), random_set(&mut rng));
        let la = StopList::new("a", Method::Manual, a.iter().cloned());
        let lb = StopList::new("b", Method::Manual, b.iter().cloned());
        let lu = StopList::new("u", Method::Manual, a.union(&b).cloned());
        for d in &docs {
            let once = remove_stopwords(d, &la);
            if remove_stopwords(&once, &la) != once {
                return Err(format!("removal not idempotent, case {case}"));
            }
            if remove_stopwords(&once, &lb) != remove_stopwords(d, &lu) {
                return Err(format!("removal does not commute with union, case {case}"));
            }
        }

        let inst = common::random_instances(&mut rng, 30);
        let base = auc(&inst).map_err(|e| e.to_string())?;
        let (scale, shift) = (rng.random_range(0.1..10.0), rng.random_range(-5.0..5.0));
        for f in [&(|s: f64| scale * s + shift) as &dyn Fn(f64) -> f64, &|s: f64| (s - 0.5).powi(3)] {
            let mapped: Vec<ScoredInstance> =
                inst.iter().map(|i| ScoredInstance { score: f(i.score), ..i.clone() }).collect();
            if (auc(&mapped).map_err(|e| e.to_string())? - base).abs() > CLOSED_FORM_TOL {
                return Err(format!("auc changed under a monotone map, case {case}"));
            }
        }

        let labeled: Vec<TokenizedDoc> = docs
            .iter()
            .enumerate()
            .map(|(i, d)| d.clone().with_label(if i % 2 == 0 { "x" } else { "y" }))
            .collect();
        if labeled.len() >= 2 {
            let model = train_nb(&labeled, "x", 1.0).map_err(|e| e.to_string())?;
            for d in &labeled {
                let p = predict_nb(&model, d);
                if (p.posterior_pos + p.posterior_neg - 1.0).abs() > CLOSED_FORM_TOL {
                    return Err(format!("posteriors do not sum to 1, case {case}"));
                }
            }
        }

        let queries: Vec<_> = (0..4).map(|q| common::random_query(&mut rng, q)).collect();
        let mut prev = ranking_metrics(&queries, 1).map_err(|e| e.to_string())?;
        for k in 2..=20 {
            let m = ranking_metrics(&queries, k).map_err(|e| e.to_string())?;
            if m.top_k < prev.top_k || m.mean_recall < prev.mean_recall {
                return Err(format!("ranking metric fell as k grew, case {case}"));
            }
            prev = m;
        }

        let stats = compute_stats(&docs).map_err(|e| e.to_string())?;
        let quantize = |x: f64| format!("{x:.9e}").parse::<f64>().unwrap();
        let mut natural = stats.score_rows();
        let mut base10 = stats.score_rows();
        for (n, t) in natural.iter_mut().zip(base10.iter_mut()) {
            let ts = &stats.vocabulary[&t.term];
            let idf = (stats.n_docs as f64 / ts.df as f64).log10();
            let tf: f64 = ts.per_doc_tf.values().map(|&f| (1.0 + f as f64).log10()).sum::<f64>() / ts.df as f64;
            n.tfidf_score = quantize(n.tfidf_score);
            t.tfidf_score = quantize(idf * tf);
        }
        let order = |rows| rank_tfidf(rows, 1).into_iter().map(|r| r.term.clone()).collect::<Vec<_>>();
        if order(&natural) != order(&base10) {
            return Err(format!("tf-idf ranking depends on log base, case {case}"));
        }
    }
    Ok(format!("{PROPERTY_CASES} cases x 5 properties"))
}
