//! Stop lists: ranking terms into lists, manual exclusions, and the
//! one-word-per-line file format.
//!
//! A list file holds one word per line. Lines starting with `#` are
//! comments; on save the list name, method and provenance are written as
//! leading comment lines.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::stats::{CorpusStats, TermScore};
use crate::text::tokenize;
use crate::{Error, Result};

pub const DEFAULT_SIZE: usize = 200;
pub const DEFAULT_MIN_DF: u64 = 5;
pub const DEFAULT_MIN_TF: u64 = 10;
pub const DEFAULT_TOLERANCE: f64 = 0.05;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Tfidf,
    Poisson,
    External,
    Manual,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Tfidf => "tfidf",
            Method::Poisson => "poisson",
            Method::External => "external",
            Method::Manual => "manual",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tfidf" => Ok(Method::Tfidf),
            "poisson" => Ok(Method::Poisson),
            "external" => Ok(Method::External),
            "manual" => Ok(Method::Manual),
            other => Err(Error::InvalidArgument(format!("unknown stop-list method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopList {
    pub name: String,
    pub method: Method,
    pub words: BTreeSet<String>,
    /// Free-text lines: source corpus, parameters, seed, exclusions.
    pub provenance: Vec<String>,
}

impl StopList {
    pub fn new(name: impl Into<String>, method: Method, words: impl IntoIterator<Item = String>) -> Self {
        StopList {
            name: name.into(),
            method,
            words: words.into_iter().collect(),
            provenance: Vec::new(),
        }
    }

    pub fn empty(name: impl Into<String>) -> Self {
        StopList::new(name, Method::External, std::iter::empty())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }
}

fn check_size(size: usize) -> Result<()> {
    if size == 0 {
        return Err(Error::InvalidArgument("stop-list size must be >= 1".into()));
    }
    Ok(())
}

/// Terms with `df >= min_df` ordered from most to least stop-word-like:
/// ascending TF-IDF, then higher df, then alphabetical.
pub fn rank_tfidf(rows: &[TermScore], min_df: u64) -> Vec<&TermScore> {
    let mut ranked: Vec<&TermScore> = rows.iter().filter(|r| r.df >= min_df).collect();
    ranked.sort_by(|a, b| {
        a.tfidf_score
            .total_cmp(&b.tfidf_score)
            .then_with(|| b.df.cmp(&a.df))
            .then_with(|| a.term.cmp(&b.term))
    });
    ranked
}

pub fn build_tfidf_stoplist(stats: &CorpusStats, size: usize, min_df: u64) -> Result<StopList> {
    tfidf_stoplist_from_scores(&stats.score_rows(), size, min_df)
}

/// The `size` lowest-scoring terms by aggregate TF-IDF.
pub fn tfidf_stoplist_from_scores(rows: &[TermScore], size: usize, min_df: u64) -> Result<StopList> {
    check_size(size)?;
    let ranked = rank_tfidf(rows, min_df);
    if ranked.is_empty() {
        return Err(Error::NoCandidates(format!("no term has df >= {min_df}")));
    }
    let mut list = StopList::new(
        "tfidf",
        Method::Tfidf,
        ranked.iter().take(size).map(|r| r.term.clone()),
    );
    list.provenance = vec![
        format!("size: {size}"),
        format!("min_df: {min_df}"),
        format!("candidates: {}", ranked.len()),
    ];
    Ok(list)
}

/// Terms whose estimated-df/df ratio lies within `tolerance` of 1 and that
/// occur at least `min_tf` times, sorted by term.
pub fn poisson_candidates(rows: &[TermScore], tolerance: f64, min_tf: u64) -> Vec<&TermScore> {
    let mut c: Vec<&TermScore> = rows
        .iter()
        .filter(|r| r.corpus_tf >= min_tf && (r.poisson_ratio - 1.0).abs() <= tolerance)
        .collect();
    c.sort_by(|a, b| a.term.cmp(&b.term));
    c
}

pub fn build_poisson_stoplist(
    stats: &CorpusStats,
    size: usize,
    tolerance: f64,
    min_tf: u64,
    seed: u64,
) -> Result<StopList> {
    poisson_stoplist_from_scores(&stats.score_rows(), size, tolerance, min_tf, seed)
}

/// Draws `size` Poisson candidates uniformly without replacement. When
/// there are no more candidates than `size`, all of them are returned and
/// the seed has no effect.
pub fn poisson_stoplist_from_scores(
    rows: &[TermScore],
    size: usize,
    tolerance: f64,
    min_tf: u64,
    seed: u64,
) -> Result<StopList> {
    check_size(size)?;
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be > 0, got {tolerance}")));
    }
    let candidates = poisson_candidates(rows, tolerance, min_tf);
    if candidates.is_empty() {
        return Err(Error::NoCandidates(format!(
            "no term with corpus_tf >= {min_tf} has |ratio - 1| <= {tolerance}"
        )));
    }
    let words: Vec<String> = if candidates.len() <= size {
        candidates.iter().map(|r| r.term.clone()).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rand::seq::index::sample(&mut rng, candidates.len(), size)
            .into_iter()
            .map(|i| candidates[i].term.clone())
            .collect()
    };
    let mut list = StopList::new("poisson", Method::Poisson, words);
    list.provenance = vec![
        format!("size: {size}"),
        format!("tolerance: {tolerance}"),
        format!("min_tf: {min_tf}"),
        format!("seed: {seed}"),
        format!("candidates: {}", candidates.len()),
    ];
    Ok(list)
}

/// Removes manually rejected terms. The result is marked [`Method::Manual`].
pub fn apply_exclusions(list: &StopList, exclusions: &BTreeSet<String>, source: &str) -> StopList {
    let mut out = list.clone();
    out.words.retain(|w| !exclusions.contains(w));
    out.method = Method::Manual;
    out.provenance.push(format!(
        "excluded from {} list: {} ({} removed)",
        list.method,
        source,
        list.words.len() - out.words.len()
    ));
    out
}

/// Parses the list file format. `origin` names the source in errors and
/// becomes the list name unless a `# name:` header says otherwise.
///
/// Entries are lowercased and split on non-letters the same way document
/// text is tokenized, so `aren't` contributes `aren` and `t`; entries with
/// no letters are dropped.
pub fn parse_stoplist(text: &str, origin: &Path) -> Result<StopList> {
    let mut list = StopList::empty(
        origin
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
    );
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(name) = comment.strip_prefix("name:") {
                list.name = name.trim().to_string();
            } else if let Some(method) = comment.strip_prefix("method:") {
                list.method = method.trim().parse()?;
            } else if !comment.is_empty() {
                list.provenance.push(comment.to_string());
            }
            continue;
        }
        if line.chars().any(char::is_whitespace) {
            return Err(Error::malformed(
                origin,
                idx + 1,
                format!("{line:?} contains whitespace; expected one word per line"),
            ));
        }
        let lower = line.to_lowercase();
        for piece in tokenize(&lower) {
            list.words.insert(piece.to_string());
        }
    }
    Ok(list)
}

pub fn load_stoplist(path: impl AsRef<Path>) -> Result<StopList> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_stoplist(&text, path)
}

pub fn render_stoplist(list: &StopList) -> String {
    let mut out = format!("# name: {}\n# method: {}\n", list.name, list.method);
    for line in &list.provenance {
        for l in line.lines() {
            out.push_str("# ");
            out.push_str(l);
            out.push('\n');
        }
    }
    for w in &list.words {
        out.push_str(w);
        out.push('\n');
    }
    out
}

pub fn save_stoplist(list: &StopList, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, render_stoplist(list)).map_err(|e| Error::io(path, e))
}

/// Names of the general-purpose lists shipped with the crate, smallest first.
pub const BUNDLED: [&str; 4] = ["very_small", "small", "medium", "large"];

/// One of the bundled general-purpose lists.
pub fn bundled(name: &str) -> Option<StopList> {
    let src = match name {
        "very_small" => include_str!("../resources/stoplists/very_small.txt"),
        "small" => include_str!("../resources/stoplists/small.txt"),
        "medium" => include_str!("../resources/stoplists/medium.txt"),
        "large" => include_str!("../resources/stoplists/large.txt"),
        _ => return None,
    };
    Some(parse_stoplist(src, Path::new(name)).expect("bundled stop lists are well formed"))
}
