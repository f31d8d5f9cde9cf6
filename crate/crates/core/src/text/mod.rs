//! Cleaning, tokenization and lemmatization.
//!
//! [`preprocess_corpus`] runs every document through
//! [`clean_text`] -> [`tokenize`] -> lowercase -> [`lemmatize`].

mod lemma;

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

pub use lemma::{irregular_forms, lemmatize};

use crate::corpus::Corpus;
use crate::{Error, Result};

/// Switches for the seven cleaning rules. Rules run in field order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct CleaningConfig {
    pub remove_mentions: bool,
    pub remove_urls: bool,
    pub remove_hashtags: bool,
    pub remove_numbers: bool,
    pub remove_bracketed: bool,
    /// Drops any whitespace-delimited token holding a character that is not
    /// an ASCII letter, digit or punctuation mark. This is a stand-in for
    /// real language identification.
    pub remove_non_english: bool,
    pub remove_extra_space: bool,
}

impl Default for CleaningConfig {
    fn default() -> Self {
        CleaningConfig {
            remove_mentions: true,
            remove_urls: true,
            remove_hashtags: true,
            remove_numbers: true,
            remove_bracketed: true,
            remove_non_english: true,
            remove_extra_space: true,
        }
    }
}

impl CleaningConfig {
    pub fn none() -> Self {
        CleaningConfig {
            remove_mentions: false,
            remove_urls: false,
            remove_hashtags: false,
            remove_numbers: false,
            remove_bracketed: false,
            remove_non_english: false,
            remove_extra_space: false,
        }
    }
}

struct Patterns {
    mention: Regex,
    url: Regex,
    hashtag: Regex,
    number: Regex,
    bracketed: Regex,
    token: Regex,
}

fn patterns() -> &'static Patterns {
    static P: OnceLock<Patterns> = OnceLock::new();
    P.get_or_init(|| Patterns {
        mention: Regex::new(r"@[A-Za-z0-9_]+").unwrap(),
        url: Regex::new(r"(?:https?://|www\.)\S*").unwrap(),
        hashtag: Regex::new(r"#[A-Za-z0-9_]+").unwrap(),
        number: Regex::new(r"[0-9]+").unwrap(),
        bracketed: Regex::new(r"\([^()]*\)|\[[^\[\]]*\]|\{[^{}]*\}").unwrap(),
        token: Regex::new(r"\S+").unwrap(),
    })
}

// Removed spans become a single space so neighbouring words never fuse.
fn blank_out(re: &Regex, text: String) -> String {
    match re.replace_all(&text, " ") {
        std::borrow::Cow::Borrowed(_) => text,
        std::borrow::Cow::Owned(s) => s,
    }
}

pub fn clean_text(raw: &str, config: &CleaningConfig) -> String {
    let p = patterns();
    let mut text = raw.to_string();
    if config.remove_mentions {
        text = blank_out(&p.mention, text);
    }
    if config.remove_urls {
        text = blank_out(&p.url, text);
    }
    if config.remove_hashtags {
        text = blank_out(&p.hashtag, text);
    }
    if config.remove_numbers {
        text = blank_out(&p.number, text);
    }
    if config.remove_bracketed {
        // innermost pairs first until nested brackets are gone
        while p.bracketed.is_match(&text) {
            text = blank_out(&p.bracketed, text);
        }
    }
    if config.remove_non_english {
        text = p
            .token
            .replace_all(&text, |caps: &regex::Captures<'_>| {
                let tok = &caps[0];
                if tok.chars().all(|c| c.is_ascii_graphic()) {
                    tok.to_string()
                } else {
                    String::new()
                }
            })
            .into_owned();
    }
    if config.remove_extra_space {
        text = text.split_whitespace().collect::<Vec<_>>().join(" ");
    }
    text
}

/// Splits on every maximal run of characters that are not ASCII letters.
/// Case is preserved.
pub fn tokenize(cleaned: &str) -> Vec<&str> {
    cleaned
        .split(|c: char| !c.is_ascii_alphabetic())
        .filter(|s| !s.is_empty())
        .collect()
}

/// A document reduced to lowercase lemmas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenizedDoc {
    pub id: String,
    pub tokens: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl TokenizedDoc {
    pub fn new(id: impl Into<String>, tokens: Vec<String>) -> Self {
        TokenizedDoc {
            id: id.into(),
            tokens,
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

pub fn is_lemma_token(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_lowercase())
}

pub fn preprocess_text(raw: &str, config: &CleaningConfig) -> Vec<String> {
    let cleaned = clean_text(raw, config);
    tokenize(&cleaned)
        .into_iter()
        .map(|t| lemmatize(&t.to_ascii_lowercase()))
        .collect()
}

pub fn preprocess_corpus(corpus: &Corpus, config: &CleaningConfig) -> Vec<TokenizedDoc> {
    corpus
        .iter()
        .map(|doc| TokenizedDoc {
            id: doc.id.clone(),
            tokens: preprocess_text(&doc.text, config),
            label: doc.label.clone(),
        })
        .collect()
}

/// Reads tokenized documents from JSONL (`{"id", "tokens", "label"?}`).
pub fn read_tokenized(path: impl AsRef<Path>) -> Result<Vec<TokenizedDoc>> {
    let path = path.as_ref();
    let raw = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut docs = Vec::new();
    for (idx, line) in raw.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let doc: TokenizedDoc =
            serde_json::from_str(line).map_err(|e| Error::malformed(path, idx + 1, e.to_string()))?;
        if let Some(bad) = doc.tokens.iter().find(|t| !is_lemma_token(t)) {
            return Err(Error::malformed(
                path,
                idx + 1,
                format!("token {bad:?} is not a lowercase letter sequence"),
            ));
        }
        docs.push(doc);
    }
    Ok(docs)
}

pub fn write_tokenized(docs: &[TokenizedDoc], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    for doc in docs {
        serde_json::to_writer(&mut w, doc).map_err(|e| Error::io(path, e.into()))?;
        w.write_all(b"\n").map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}
