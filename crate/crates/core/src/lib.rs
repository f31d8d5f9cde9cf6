//! Domain-specific stop-word toolkit.
//!
//! The crate covers the whole path from a raw question dump to an evaluated
//! stop list:
//!
//! * [`corpus`] loads, filters and saves document corpora (JSONL or a
//!   directory of plain-text files).
//! * [`text`] cleans, tokenizes and lemmatizes documents.
//! * [`stats`] counts term and document frequencies and derives TF-IDF and
//!   Poisson dispersion scores.
//! * [`stoplist`] ranks terms into stop lists and reads/writes list files,
//!   including four bundled general-purpose lists.
//! * [`removal`] applies a stop list and accounts for how much it removed.
//! * [`eval`] measures downstream impact: Naive Bayes classification,
//!   ranking metrics, AUC and better/worse/same comparison between runs.

pub mod corpus;
pub mod error;
pub mod eval;
pub mod removal;
pub mod stats;
pub mod stoplist;
pub mod text;

pub use error::{Error, Result};
