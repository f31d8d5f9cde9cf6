//! Rule-based English lemmatizer.
//!
//! An irregular-form table is consulted first; words not in the table go
//! through ordered suffix rules. The rule step is repeated until the word
//! stops changing, so the output is always a fixed point.

use std::collections::HashMap;
use std::sync::OnceLock;

const IRREGULAR_TSV: &str = include_str!("../../resources/irregular_lemmas.tsv");

fn table() -> &'static HashMap<&'static str, &'static str> {
    static TABLE: OnceLock<HashMap<&'static str, &'static str>> = OnceLock::new();
    TABLE.get_or_init(|| parse_table(IRREGULAR_TSV))
}

fn parse_table(src: &'static str) -> HashMap<&'static str, &'static str> {
    src.lines()
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .filter_map(|l| l.split_once('\t'))
        .collect()
}

/// The irregular `(form, lemma)` pairs shipped with the crate.
pub fn irregular_forms() -> impl Iterator<Item = (&'static str, &'static str)> {
    table().iter().map(|(k, v)| (*k, *v))
}

/// Maps a lowercase token to its base form, e.g. `saw` -> `see`,
/// `queries` -> `query`, `running` -> `run`.
pub fn lemmatize(token: &str) -> String {
    let mut word = token.to_string();
    // every suffix step shortens the word and table targets are fixed points
    for _ in 0..=token.len() + 1 {
        match step(&word) {
            Some(next) if next != word => word = next,
            _ => break,
        }
    }
    word
}

fn step(word: &str) -> Option<String> {
    if let Some(lemma) = table().get(word) {
        return Some((*lemma).to_string());
    }
    strip_suffix(word)
}

fn strip_suffix(w: &str) -> Option<String> {
    let n = w.len();
    if w.ends_with("sses") {
        return Some(w[..n - 2].to_string());
    }
    if n > 4 && (w.ends_with("ies") || w.ends_with("ied")) {
        return Some(format!("{}y", &w[..n - 3]));
    }
    if n > 3 && w.ends_with("es") {
        let stem = &w[..n - 2];
        if ["x", "z", "ch", "sh"].iter().any(|s| stem.ends_with(s)) {
            return Some(stem.to_string());
        }
    }
    if n >= 4 && w.ends_with('s') && !["ss", "us", "is"].iter().any(|s| w.ends_with(s)) {
        return Some(w[..n - 1].to_string());
    }
    if let Some(stem) = w.strip_suffix("ing") {
        if stem.len() >= 3 && has_vowel(stem) {
            return Some(restore_stem(stem));
        }
    }
    if let Some(stem) = w.strip_suffix("ed") {
        if !stem.ends_with('e') && stem.len() >= 3 && has_vowel(stem) {
            return Some(restore_stem(stem));
        }
    }
    None
}

fn restore_stem(stem: &str) -> String {
    let b = stem.as_bytes();
    let n = b.len();
    if ["at", "bl", "iz"].iter().any(|s| stem.ends_with(s)) {
        return format!("{stem}e");
    }
    if n >= 4 && b[n - 1] == b[n - 2] && is_consonant(b, n - 1) && !matches!(b[n - 1], b'l' | b's' | b'z') {
        return stem[..n - 1].to_string();
    }
    if measure(b) == 1 && ends_cvc(b) {
        return format!("{stem}e");
    }
    stem.to_string()
}

fn is_consonant(b: &[u8], i: usize) -> bool {
    match b[i] {
        b'a' | b'e' | b'i' | b'o' | b'u' => false,
        b'y' => i == 0 || !is_consonant(b, i - 1),
        _ => true,
    }
}

fn has_vowel(stem: &str) -> bool {
    let b = stem.as_bytes();
    (0..b.len()).any(|i| !is_consonant(b, i))
}

/// Number of vowel-consonant sequences, `[C](VC)^m[V]`.
fn measure(b: &[u8]) -> usize {
    let mut m = 0;
    let mut prev_vowel = false;
    for i in 0..b.len() {
        let vowel = !is_consonant(b, i);
        if prev_vowel && !vowel {
            m += 1;
        }
        prev_vowel = vowel;
    }
    m
}

fn ends_cvc(b: &[u8]) -> bool {
    let n = b.len();
    n >= 3
        && is_consonant(b, n - 3)
        && !is_consonant(b, n - 2)
        && is_consonant(b, n - 1)
        && !matches!(b[n - 1], b'w' | b'x' | b'y')
}
