//! lexanno: lexicon-based feature annotation for large text corpora.
//!
//! The crate turns raw corpus files into per-instance feature records —
//! affect and emotion scores from user-supplied score lexicons, possessive
//! body-part mentions, cognition-category flags, pronoun and tense flags,
//! and self-disclosed demographic attributes — then rolls those records up
//! into grouped, plot-ready summary tables.
//!
//! Start with the runnable examples (`cargo run --example annotate_corpus`)
//! or the `lexanno` binary (`annotate` and `report` subcommands). The
//! library surface mirrors the processing stages:
//!
//! * [`lexicon`] — load and validate lexicon files, derive High/Low
//!   sub-lexicons
//! * [`registry`] — the deterministic feature-column enumeration
//! * [`tokenize`] — shared tokenizer and n-gram windows
//! * [`matcher`] — single-pass multi-phrase matching
//! * [`affect`], [`body`], [`cognition`], [`focus`] — per-instance features
//! * [`demographics`] — self-disclosure extraction and user profiles
//! * [`ingest`] — streaming source adapters
//! * [`pipeline`] — end-to-end annotation runs
//! * [`aggregate`] — grouped summary statistics

pub mod affect;
pub mod aggregate;
pub mod body;
pub mod cognition;
pub mod demographics;
pub mod error;
pub mod focus;
pub mod ingest;
pub mod lexicon;
pub mod matcher;
pub mod pipeline;
pub mod record;
pub mod registry;
pub mod tokenize;

pub use error::{AggregateError, ConfigError, LexiconError, PipelineError};
