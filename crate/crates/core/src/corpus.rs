//! Document corpora: loading, top-viewed selection and persistence.
//!
//! The canonical on-disk format is JSONL, one [`Document`] per line:
//!
//! ```text
//! {"id": "q1", "text": "How do I ...", "tags": ["css"], "views": 1200, "label": "css"}
//! ```
//!
//! `tags`, `views` and `label` are optional; unknown keys are ignored.

use std::collections::HashSet;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
    #[serde(default)]
    pub tags: Vec<String>,
    #[serde(default)]
    pub views: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl Document {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        Document {
            id: id.into(),
            text: text.into(),
            tags: Vec::new(),
            views: 0,
            label: None,
        }
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }
}

/// An ordered collection of documents with unique ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    pub name: String,
    docs: Vec<Document>,
}

impl Corpus {
    /// Builds a corpus, rejecting duplicate or empty ids.
    pub fn new(name: impl Into<String>, docs: Vec<Document>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(docs.len());
        for doc in &docs {
            if doc.id.is_empty() {
                return Err(Error::InvalidArgument("document id must be non-empty".into()));
            }
            if !seen.insert(doc.id.as_str()) {
                return Err(Error::DuplicateId(doc.id.clone()));
            }
        }
        Ok(Corpus {
            name: name.into(),
            docs,
        })
    }

    pub fn docs(&self) -> &[Document] {
        &self.docs
    }

    pub fn into_docs(self) -> Vec<Document> {
        self.docs
    }

    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Document> {
        self.docs.iter()
    }
}

impl<'a> IntoIterator for &'a Corpus {
    type Item = &'a Document;
    type IntoIter = std::slice::Iter<'a, Document>;

    fn into_iter(self) -> Self::IntoIter {
        self.docs.iter()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    Jsonl,
    /// One file per document; the file stem is the id.
    PlaintextDir,
}

impl FromStr for CorpusFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jsonl" => Ok(CorpusFormat::Jsonl),
            "plaintext-dir" => Ok(CorpusFormat::PlaintextDir),
            other => Err(Error::InvalidArgument(format!(
                "unknown corpus format {other:?} (expected jsonl or plaintext-dir)"
            ))),
        }
    }
}

pub fn load_corpus(path: impl AsRef<Path>, format: CorpusFormat) -> Result<Corpus> {
    let path = path.as_ref();
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let docs = match format {
        CorpusFormat::Jsonl => read_jsonl_docs(path)?,
        CorpusFormat::PlaintextDir => read_plaintext_dir(path)?,
    };
    Corpus::new(name, docs)
}

fn read_jsonl_docs(path: &Path) -> Result<Vec<Document>> {
    let raw = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut docs = Vec::new();
    let mut seen = HashSet::new();
    for (idx, line) in raw.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut doc: Document =
            serde_json::from_str(line).map_err(|e| Error::malformed(path, idx + 1, e.to_string()))?;
        if doc.id.is_empty() {
            return Err(Error::malformed(path, idx + 1, "empty document id"));
        }
        if !seen.insert(doc.id.clone()) {
            return Err(Error::DuplicateId(doc.id));
        }
        for tag in &mut doc.tags {
            *tag = tag.to_lowercase();
        }
        docs.push(doc);
    }
    Ok(docs)
}

fn read_plaintext_dir(path: &Path) -> Result<Vec<Document>> {
    let entries = fs::read_dir(path).map_err(|e| Error::io(path, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(path, e))?;
        let p = entry.path();
        if p.is_file() {
            files.push(p);
        }
    }
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p).map_err(|e| Error::io(&p, e))?;
            let id = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            Ok(Document::new(id, text))
        })
        .collect()
}

/// Writes `corpus` as JSONL. An empty corpus produces an empty file.
pub fn save_corpus(corpus: &Corpus, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    for doc in corpus {
        serde_json::to_writer(&mut w, doc).map_err(|e| Error::io(path, e.into()))?;
        w.write_all(b"\n").map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// The `n` most viewed documents carrying `tag`, most viewed first.
///
/// Equal view counts are ordered by ascending id so the selection is
/// deterministic. Fewer than `n` matches returns all of them.
pub fn select_top_viewed(corpus: &Corpus, tag: &str, n: usize) -> Corpus {
    let mut matches: Vec<&Document> = corpus.iter().filter(|d| d.has_tag(tag)).collect();
    matches.sort_by(|a, b| b.views.cmp(&a.views).then_with(|| a.id.cmp(&b.id)));
    Corpus {
        name: corpus.name.clone(),
        docs: matches.into_iter().take(n).cloned().collect(),
    }
}

/// Runs [`select_top_viewed`] for each tag in turn and concatenates the
/// results. A document selected under an earlier tag is not repeated.
pub fn select_top_viewed_per_tag<S: AsRef<str>>(corpus: &Corpus, tags: &[S], n: usize) -> Corpus {
    let mut seen = HashSet::new();
    let mut docs = Vec::new();
    for tag in tags {
        for doc in select_top_viewed(corpus, tag.as_ref(), n).docs {
            if seen.insert(doc.id.clone()) {
                docs.push(doc);
            }
        }
    }
    Corpus {
        name: corpus.name.clone(),
        docs,
    }
}
