//! Error types shared across the crate.

use std::path::PathBuf;

use thiserror::Error;

/// Errors raised while loading or validating lexicons and other data files.
#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("{path}: cannot read file: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: malformed row (expected `term<TAB>{expected}`): {row:?}")]
    MalformedRow {
        path: PathBuf,
        line: usize,
        expected: &'static str,
        row: String,
    },

    #[error("{path}:{line}: score {score} outside [0,1] for term {term:?}")]
    ScoreOutOfRange {
        path: PathBuf,
        line: usize,
        term: String,
        score: f64,
    },

    #[error("{path}:{line}: duplicate term {term:?} after normalization")]
    DuplicateTerm {
        path: PathBuf,
        line: usize,
        term: String,
    },

    #[error("{path}:{line}: empty category label for term {term:?}")]
    EmptyCategory {
        path: PathBuf,
        line: usize,
        term: String,
    },

    #[error("{path}:{line}: empty term")]
    EmptyTerm { path: PathBuf, line: usize },

    #[error("{path}:{line}: term {term:?} has {tokens} tokens, only 1-3 supported")]
    TermTooLong {
        path: PathBuf,
        line: usize,
        term: String,
        tokens: usize,
    },

    #[error("invalid thresholds: require 0 <= low_max ({low_max}) < high_min ({high_min}) <= 1")]
    InvalidThresholds { high_min: f64, low_max: f64 },

    #[error("lexicon name collision: {name:?} registered twice")]
    NameCollision { name: String },
}

/// Errors raised while building or validating a pipeline configuration.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config file {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("config file {path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("missing required setting: {0}")]
    Missing(&'static str),

    #[error("invalid setting {setting}: {message}")]
    Invalid {
        setting: &'static str,
        message: String,
    },

    #[error(transparent)]
    Lexicon(#[from] LexiconError),

    #[error("demographic rules: {0}")]
    Rules(String),

    #[error("morph table: {0}")]
    Morph(String),
}

/// Errors raised while running the annotation pipeline.
#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("cannot open input {path}: {source}")]
    Input {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot write output {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("output serialization: {0}")]
    Serialize(String),
}

/// Errors raised by the aggregation engine.
#[derive(Debug, Error)]
pub enum AggregateError {
    #[error("unknown feature column: {0:?}")]
    UnknownColumn(String),

    #[error("column {0:?} is not an avg-type column")]
    NotAvgColumn(String),

    #[error("cannot read records from {path}: {message}")]
    Read { path: PathBuf, message: String },
}
