//! Loading, validation and indexing of the lexicons and word lists consumed
//! by the feature extractors.
//!
//! All lexicon files are UTF-8 TSV. Lines starting with `#` and blank lines
//! are skipped. Terms are normalized on load: lowercased, trimmed, inner
//! whitespace collapsed to single spaces. A term is one to three tokens.
//!
//! * score lexicon: `term<TAB>score`, score a real in `[0,1]`
//! * category lexicon: `term<TAB>category`
//! * phrase lexicon: one phrase per line

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use indexmap::IndexMap;

use crate::error::LexiconError;

/// Normalize a raw term to its canonical key form: lowercase, trimmed,
/// single-space-joined.
pub fn normalize_term(raw: &str) -> String {
    raw.split_whitespace()
        .map(|t| t.to_lowercase())
        .collect::<Vec<_>>()
        .join(" ")
}

fn term_token_count(term: &str) -> usize {
    term.split(' ').count()
}

/// Which side of a threshold split to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdMode {
    High,
    Low,
}

/// Score thresholds for deriving High/Low sub-lexicons. Both boundaries are
/// inclusive: High keeps scores >= `high_min`, Low keeps scores <= `low_max`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ThresholdConfig {
    pub high_min: f64,
    pub low_max: f64,
}

impl Default for ThresholdConfig {
    fn default() -> Self {
        ThresholdConfig {
            high_min: 0.66,
            low_max: 0.33,
        }
    }
}

impl ThresholdConfig {
    pub fn validate(&self) -> Result<(), LexiconError> {
        if self.low_max >= 0.0 && self.low_max < self.high_min && self.high_min <= 1.0 {
            Ok(())
        } else {
            Err(LexiconError::InvalidThresholds {
                high_min: self.high_min,
                low_max: self.low_max,
            })
        }
    }
}

/// A named mapping from normalized terms to real-valued scores in `[0,1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreLexicon {
    pub name: String,
    entries: IndexMap<String, f64>,
}

impl ScoreLexicon {
    pub fn new(name: impl Into<String>) -> Self {
        ScoreLexicon {
            name: name.into(),
            entries: IndexMap::new(),
        }
    }

    /// Build from (term, score) pairs; terms are normalized. Used by tests
    /// and fixture construction.
    pub fn from_entries<I, S>(name: impl Into<String>, entries: I) -> Result<Self, LexiconError>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: AsRef<str>,
    {
        let mut lex = ScoreLexicon::new(name);
        for (line, (term, score)) in entries.into_iter().enumerate() {
            lex.insert(Path::new("<memory>"), line + 1, term.as_ref(), score)?;
        }
        Ok(lex)
    }

    fn insert(
        &mut self,
        path: &Path,
        line: usize,
        raw_term: &str,
        score: f64,
    ) -> Result<(), LexiconError> {
        let term = normalize_term(raw_term);
        if term.is_empty() {
            return Err(LexiconError::EmptyTerm {
                path: path.to_path_buf(),
                line,
            });
        }
        let tokens = term_token_count(&term);
        if tokens > 3 {
            return Err(LexiconError::TermTooLong {
                path: path.to_path_buf(),
                line,
                term,
                tokens,
            });
        }
        if !(0.0..=1.0).contains(&score) || !score.is_finite() {
            return Err(LexiconError::ScoreOutOfRange {
                path: path.to_path_buf(),
                line,
                term,
                score,
            });
        }
        if self.entries.insert(term.clone(), score).is_some() {
            return Err(LexiconError::DuplicateTerm {
                path: path.to_path_buf(),
                line,
                term,
            });
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn score(&self, term: &str) -> Option<f64> {
        self.entries.get(term).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.entries.iter().map(|(t, s)| (t.as_str(), *s))
    }

    /// Serialize back to the TSV form the loader accepts.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (term, score) in &self.entries {
            let _ = writeln!(out, "{term}\t{score}");
        }
        out
    }

    /// Keep only entries on one side of the threshold split; scores are
    /// preserved. High keeps `score >= high_min`, Low keeps
    /// `score <= low_max`, both inclusive.
    pub fn threshold_sublexicon(
        &self,
        mode: ThresholdMode,
        cfg: &ThresholdConfig,
        name: impl Into<String>,
    ) -> Result<ScoreLexicon, LexiconError> {
        cfg.validate()?;
        let entries = self
            .entries
            .iter()
            .filter(|(_, &s)| match mode {
                ThresholdMode::High => s >= cfg.high_min,
                ThresholdMode::Low => s <= cfg.low_max,
            })
            .map(|(t, &s)| (t.clone(), s))
            .collect();
        Ok(ScoreLexicon {
            name: name.into(),
            entries,
        })
    }

    /// Rescale all scores to [0,1] by min-max normalization. Off by default
    /// in every loader; for lexicons distributed on other ranges.
    pub fn rescale_min_max(&mut self) {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &s in self.entries.values() {
            lo = lo.min(s);
            hi = hi.max(s);
        }
        if !lo.is_finite() || hi <= lo {
            return;
        }
        for s in self.entries.values_mut() {
            *s = (*s - lo) / (hi - lo);
        }
    }
}

/// A named mapping from normalized terms to category labels, with the
/// category set kept in file order.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoryLexicon {
    pub name: String,
    entries: IndexMap<String, u16>,
    categories: Vec<String>,
}

impl CategoryLexicon {
    pub fn from_entries<I, S, C>(name: impl Into<String>, entries: I) -> Result<Self, LexiconError>
    where
        I: IntoIterator<Item = (S, C)>,
        S: AsRef<str>,
        C: AsRef<str>,
    {
        let mut lex = CategoryLexicon {
            name: name.into(),
            entries: IndexMap::new(),
            categories: Vec::new(),
        };
        for (line, (term, cat)) in entries.into_iter().enumerate() {
            lex.insert(Path::new("<memory>"), line + 1, term.as_ref(), cat.as_ref())?;
        }
        Ok(lex)
    }

    fn insert(
        &mut self,
        path: &Path,
        line: usize,
        raw_term: &str,
        raw_cat: &str,
    ) -> Result<(), LexiconError> {
        let term = normalize_term(raw_term);
        if term.is_empty() {
            return Err(LexiconError::EmptyTerm {
                path: path.to_path_buf(),
                line,
            });
        }
        let tokens = term_token_count(&term);
        if tokens > 3 {
            return Err(LexiconError::TermTooLong {
                path: path.to_path_buf(),
                line,
                term,
                tokens,
            });
        }
        let cat = normalize_term(raw_cat).replace(' ', "_");
        if cat.is_empty() {
            return Err(LexiconError::EmptyCategory {
                path: path.to_path_buf(),
                line,
                term,
            });
        }
        let cat_idx = match self.categories.iter().position(|c| *c == cat) {
            Some(i) => i as u16,
            None => {
                self.categories.push(cat);
                (self.categories.len() - 1) as u16
            }
        };
        if self.entries.insert(term.clone(), cat_idx).is_some() {
            return Err(LexiconError::DuplicateTerm {
                path: path.to_path_buf(),
                line,
                term,
            });
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Category labels in first-seen file order.
    pub fn categories(&self) -> &[String] {
        &self.categories
    }

    pub fn category_of(&self, term: &str) -> Option<&str> {
        self.entries
            .get(term)
            .map(|&i| self.categories[i as usize].as_str())
    }

    pub fn category_index(&self, term: &str) -> Option<u16> {
        self.entries.get(term).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries
            .iter()
            .map(|(t, &i)| (t.as_str(), self.categories[i as usize].as_str()))
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (term, cat) in self.iter() {
            let _ = writeln!(out, "{term}\t{cat}");
        }
        out
    }
}

/// A named set of normalized phrases of one to three tokens.
#[derive(Debug, Clone, PartialEq)]
pub struct PhraseLexicon {
    pub name: String,
    phrases: IndexMap<String, ()>,
}

impl PhraseLexicon {
    pub fn from_phrases<I, S>(name: impl Into<String>, phrases: I) -> Result<Self, LexiconError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut lex = PhraseLexicon {
            name: name.into(),
            phrases: IndexMap::new(),
        };
        for (line, phrase) in phrases.into_iter().enumerate() {
            lex.insert(Path::new("<memory>"), line + 1, phrase.as_ref())?;
        }
        Ok(lex)
    }

    fn insert(&mut self, path: &Path, line: usize, raw: &str) -> Result<(), LexiconError> {
        let phrase = normalize_term(raw);
        if phrase.is_empty() {
            return Err(LexiconError::EmptyTerm {
                path: path.to_path_buf(),
                line,
            });
        }
        let tokens = term_token_count(&phrase);
        if tokens > 3 {
            return Err(LexiconError::TermTooLong {
                path: path.to_path_buf(),
                line,
                term: phrase,
                tokens,
            });
        }
        if self.phrases.insert(phrase.clone(), ()).is_some() {
            return Err(LexiconError::DuplicateTerm {
                path: path.to_path_buf(),
                line,
                term: phrase,
            });
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.phrases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phrases.is_empty()
    }

    pub fn contains(&self, phrase: &str) -> bool {
        self.phrases.contains_key(phrase)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.phrases.keys().map(String::as_str)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for phrase in self.phrases.keys() {
            let _ = writeln!(out, "{phrase}");
        }
        out
    }
}

fn read_rows(path: &Path) -> Result<Vec<(usize, String)>, LexiconError> {
    let content = std::fs::read_to_string(path).map_err(|source| LexiconError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(rows_of(&content))
}

fn rows_of(content: &str) -> Vec<(usize, String)> {
    content
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.to_string()))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .collect()
}

fn split_tsv(row: &str) -> Option<(&str, &str)> {
    let mut it = row.splitn(2, '\t');
    let term = it.next()?;
    let value = it.next()?;
    Some((term, value))
}

/// Load a score lexicon from a `term<TAB>score` TSV file.
pub fn load_score_lexicon(path: &Path, name: &str) -> Result<ScoreLexicon, LexiconError> {
    score_lexicon_from_rows(path, name, read_rows(path)?)
}

/// Parse a score lexicon from in-memory TSV content.
pub fn parse_score_lexicon(content: &str, name: &str) -> Result<ScoreLexicon, LexiconError> {
    score_lexicon_from_rows(Path::new("<memory>"), name, rows_of(content))
}

fn score_lexicon_from_rows(
    path: &Path,
    name: &str,
    rows: Vec<(usize, String)>,
) -> Result<ScoreLexicon, LexiconError> {
    let mut lex = ScoreLexicon::new(name);
    for (line, row) in rows {
        let (term, value) = split_tsv(&row).ok_or_else(|| LexiconError::MalformedRow {
            path: path.to_path_buf(),
            line,
            expected: "score",
            row: row.clone(),
        })?;
        let score: f64 = value
            .trim()
            .parse()
            .map_err(|_| LexiconError::MalformedRow {
                path: path.to_path_buf(),
                line,
                expected: "score",
                row: row.clone(),
            })?;
        lex.insert(path, line, term, score)?;
    }
    Ok(lex)
}

/// Load a category lexicon from a `term<TAB>category` TSV file.
pub fn load_category_lexicon(path: &Path, name: &str) -> Result<CategoryLexicon, LexiconError> {
    category_lexicon_from_rows(path, name, read_rows(path)?)
}

pub fn parse_category_lexicon(content: &str, name: &str) -> Result<CategoryLexicon, LexiconError> {
    category_lexicon_from_rows(Path::new("<memory>"), name, rows_of(content))
}

fn category_lexicon_from_rows(
    path: &Path,
    name: &str,
    rows: Vec<(usize, String)>,
) -> Result<CategoryLexicon, LexiconError> {
    let mut lex = CategoryLexicon {
        name: name.to_string(),
        entries: IndexMap::new(),
        categories: Vec::new(),
    };
    for (line, row) in rows {
        let (term, cat) = split_tsv(&row).ok_or_else(|| LexiconError::MalformedRow {
            path: path.to_path_buf(),
            line,
            expected: "category",
            row: row.clone(),
        })?;
        lex.insert(path, line, term, cat)?;
    }
    Ok(lex)
}

/// Load a phrase lexicon from a one-phrase-per-line file.
pub fn load_phrase_lexicon(path: &Path, name: &str) -> Result<PhraseLexicon, LexiconError> {
    phrase_lexicon_from_rows(path, name, read_rows(path)?)
}

pub fn parse_phrase_lexicon(content: &str, name: &str) -> Result<PhraseLexicon, LexiconError> {
    phrase_lexicon_from_rows(Path::new("<memory>"), name, rows_of(content))
}

fn phrase_lexicon_from_rows(
    path: &Path,
    name: &str,
    rows: Vec<(usize, String)>,
) -> Result<PhraseLexicon, LexiconError> {
    let mut lex = PhraseLexicon {
        name: name.to_string(),
        phrases: IndexMap::new(),
    };
    for (line, row) in rows {
        // allow trailing tab-separated columns to be ignored
        let phrase = row.split('\t').next().unwrap_or(&row);
        lex.insert(path, line, phrase)?;
    }
    Ok(lex)
}

/// Canonical word lists shipped with the crate. The anatomical phrase list
/// and the cognitive-verb categories are curated in `data/`; score lexicons
/// are user-supplied files (only tiny synthetic fixtures ship in-repo).
pub mod builtin {
    use super::*;

    pub const BPM_LIST: &str = include_str!("../data/body_parts.txt");
    pub const COGNITION_LIST: &str = include_str!("../data/cognition.tsv");

    /// The curated anatomical phrase list (unigrams, bigrams, trigrams).
    pub fn body_parts() -> PhraseLexicon {
        parse_phrase_lexicon(BPM_LIST, "bpm").expect("bundled body-part list is valid")
    }

    /// The curated cognitive-verb list: 98 unigrams in 11 categories.
    pub fn cognition() -> CategoryLexicon {
        parse_category_lexicon(COGNITION_LIST, "cognition")
            .expect("bundled cognition list is valid")
    }
}

/// Stable identifier salt for file-backed vs memory lexicons. Used by paths
/// in error messages only.
pub(crate) fn display_path(path: &Path) -> PathBuf {
    path.to_path_buf()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_simple_score_rows() {
        let lex = parse_score_lexicon("happy\t0.9\nsad\t0.1\n", "toy").unwrap();
        assert_eq!(lex.len(), 2);
        assert_eq!(lex.score("happy"), Some(0.9));
        assert_eq!(lex.score("sad"), Some(0.1));
    }

    #[test]
    fn score_out_of_range_rejected() {
        let err = parse_score_lexicon("joy\t1.5\n", "toy").unwrap_err();
        assert!(matches!(err, LexiconError::ScoreOutOfRange { score, .. } if score == 1.5));
    }

    #[test]
    fn duplicate_after_normalization_rejected() {
        let err = parse_score_lexicon("Happy\t0.9\nhappy\t0.8\n", "toy").unwrap_err();
        match err {
            LexiconError::DuplicateTerm { term, line, .. } => {
                assert_eq!(term, "happy");
                assert_eq!(line, 2);
            }
            other => panic!("unexpected error: {other:?}"),
        }
    }

    #[test]
    fn malformed_row_names_line() {
        let err = parse_score_lexicon("happy\t0.9\nbroken-row\n", "toy").unwrap_err();
        assert!(matches!(err, LexiconError::MalformedRow { line: 2, .. }));
    }

    #[test]
    fn comments_and_blanks_skipped() {
        let lex = parse_score_lexicon("# a comment\n\nhappy\t0.9\n", "toy").unwrap();
        assert_eq!(lex.len(), 1);
    }

    #[test]
    fn multiword_terms_normalized() {
        let lex = parse_score_lexicon("Heart   Rate\t0.5\n", "toy").unwrap();
        assert_eq!(lex.score("heart rate"), Some(0.5));
        let err = parse_score_lexicon("a b c d\t0.5\n", "toy").unwrap_err();
        assert!(matches!(err, LexiconError::TermTooLong { tokens: 4, .. }));
    }

    #[test]
    fn threshold_boundaries_inclusive() {
        let lex = ScoreLexicon::from_entries("v", [("a", 0.66), ("b", 0.65)]).unwrap();
        let high = lex
            .threshold_sublexicon(ThresholdMode::High, &ThresholdConfig::default(), "high_v")
            .unwrap();
        assert_eq!(high.len(), 1);
        assert_eq!(high.score("a"), Some(0.66));

        let lex = ScoreLexicon::from_entries("v", [("a", 0.33), ("b", 0.34)]).unwrap();
        let low = lex
            .threshold_sublexicon(ThresholdMode::Low, &ThresholdConfig::default(), "low_v")
            .unwrap();
        assert_eq!(low.len(), 1);
        assert_eq!(low.score("a"), Some(0.33));
    }

    #[test]
    fn threshold_of_empty_lexicon_is_empty() {
        let lex = ScoreLexicon::new("v");
        let high = lex
            .threshold_sublexicon(ThresholdMode::High, &ThresholdConfig::default(), "high_v")
            .unwrap();
        assert!(high.is_empty());
    }

    #[test]
    fn invalid_thresholds_rejected() {
        let cfg = ThresholdConfig {
            high_min: 0.3,
            low_max: 0.5,
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn category_lexicon_tracks_label_order() {
        let lex =
            parse_category_lexicon("analyze\tanalyzing\nrecall\tmemory recall\n", "cog").unwrap();
        assert_eq!(lex.len(), 2);
        assert_eq!(lex.categories(), &["analyzing", "memory_recall"]);
        assert_eq!(lex.category_of("recall"), Some("memory_recall"));
    }

    #[test]
    fn category_conflict_rejected() {
        let err = parse_category_lexicon("analyze\tanalyzing\nanalyze\tlearning\n", "cog")
            .unwrap_err();
        assert!(matches!(err, LexiconError::DuplicateTerm { .. }));
    }

    #[test]
    fn empty_category_rejected() {
        let err = parse_category_lexicon("analyze\t  \n", "cog").unwrap_err();
        assert!(matches!(err, LexiconError::EmptyCategory { .. }));
    }

    #[test]
    fn builtin_cognition_shape() {
        let cog = builtin::cognition();
        assert_eq!(cog.len(), 98, "canonical cognition list has 98 unigrams");
        assert_eq!(cog.categories().len(), 11, "canonical cognition list has 11 categories");
        for (term, _) in cog.iter() {
            assert_eq!(term_token_count(term), 1, "{term:?} must be a unigram");
        }
    }

    #[test]
    fn builtin_bpm_shape() {
        let bpm = builtin::body_parts();
        assert_eq!(bpm.len(), 292, "canonical body-part list has 292 phrases");
        for p in bpm.iter() {
            assert!((1..=3).contains(&term_token_count(p)));
        }
        assert!(bpm.contains("heart"));
        assert!(bpm.contains("hand"));
    }

    #[test]
    fn tsv_round_trip_preserves_entries() {
        let lex = ScoreLexicon::from_entries("v", [("b term", 0.25), ("a", 1.0)]).unwrap();
        let reloaded = parse_score_lexicon(&lex.to_tsv(), "v").unwrap();
        assert_eq!(lex, reloaded);
    }
}
