//! Per-instance aggregates for score lexicons: occurrence count, mean score,
//! presence flag, and word density.
//!
//! Counting is occurrence-weighted: a term matched twice contributes its
//! score twice to the mean. The mean covers matched occurrences only; an
//! instance with no hits has no average rather than a neutral one. Density
//! divides the hit count by the instance's non-reserved token count.

use serde::Serialize;

use crate::matcher::{MatchSet, Payload};
use crate::registry::Registry;
use crate::tokenize::TokenSequence;

/// Aggregates for one (instance, score lexicon) pair.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct ScoreSlice {
    pub count: u32,
    pub flag: bool,
    /// Mean score of matched occurrences; absent when count is zero.
    pub avg: Option<f64>,
    /// count / word_count; zero for empty instances.
    pub density: f64,
}

/// Aggregates for every registered score lexicon, in registry order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AffectFeatures {
    pub slices: Vec<ScoreSlice>,
}

/// Compute the slice for a single score lexicon identified by its matcher id.
pub fn score_instance(seq: &TokenSequence, matches: &MatchSet<'_>, lexicon: u16) -> ScoreSlice {
    let mut count = 0u32;
    let mut sum = 0.0f64;
    for hit in matches.for_lexicon(lexicon) {
        if let Payload::Score(s) = hit.payload {
            count += 1;
            sum += s;
        }
    }
    finish_slice(seq, count, sum)
}

/// Compute slices for every registered score lexicon in one pass over the
/// match set.
pub fn score_all(seq: &TokenSequence, matches: &MatchSet<'_>, registry: &Registry) -> AffectFeatures {
    let n = registry.score_lexicons().len();
    let mut counts = vec![0u32; n];
    let mut sums = vec![0.0f64; n];
    for hit in &matches.hits {
        let idx = hit.lexicon as usize;
        if idx < n {
            if let Payload::Score(s) = hit.payload {
                counts[idx] += 1;
                sums[idx] += s;
            }
        }
    }
    AffectFeatures {
        slices: (0..n)
            .map(|i| finish_slice(seq, counts[i], sums[i]))
            .collect(),
    }
}

fn finish_slice(seq: &TokenSequence, count: u32, sum: f64) -> ScoreSlice {
    let words = seq.word_count();
    ScoreSlice {
        count,
        flag: count > 0,
        avg: if count > 0 {
            Some(sum / count as f64)
        } else {
            None
        },
        density: if words > 0 {
            count as f64 / words as f64
        } else {
            0.0
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::{ScoreLexicon, ThresholdConfig};
    use crate::matcher::{compile, AnyLexicon};
    use crate::registry::{Registry, RegistryConfig};
    use crate::tokenize::tokenize;

    fn slice_for(lex: &ScoreLexicon, text: &str) -> ScoreSlice {
        let m = compile([AnyLexicon::Score(lex)]);
        let seq = tokenize(text);
        let ms = m.find_matches(&seq);
        score_instance(&seq, &ms, 0)
    }

    #[test]
    fn two_term_mean() {
        let lex = ScoreLexicon::from_entries("v", [("happy", 0.8), ("sad", 0.2)]).unwrap();
        let s = slice_for(&lex, "happy sad");
        assert_eq!(s.count, 2);
        assert!((s.avg.unwrap() - 0.5).abs() < 1e-12);
        assert!(s.flag);
        assert_eq!(s.density, 1.0);
    }

    #[test]
    fn no_hits_leaves_avg_absent() {
        let lex = ScoreLexicon::from_entries("v", [("happy", 0.8)]).unwrap();
        let s = slice_for(&lex, "calm calm");
        assert_eq!(s.count, 0);
        assert_eq!(s.avg, None);
        assert!(!s.flag);
        assert_eq!(s.density, 0.0);
    }

    #[test]
    fn occurrences_weighted_individually() {
        let lex = ScoreLexicon::from_entries("v", [("happy", 0.8)]).unwrap();
        let s = slice_for(&lex, "happy happy x y");
        assert_eq!(s.count, 2);
        assert!((s.avg.unwrap() - 0.8).abs() < 1e-12);
        assert!((s.density - 0.5).abs() < 1e-12);
    }

    #[test]
    fn empty_instance_zeroes_everything() {
        let lex = ScoreLexicon::from_entries("v", [("happy", 0.8)]).unwrap();
        let s = slice_for(&lex, "");
        assert_eq!(s.count, 0);
        assert_eq!(s.avg, None);
        assert_eq!(s.density, 0.0);
        assert!(!s.flag);
    }

    #[test]
    fn score_all_keeps_unhit_lexicons_zeroed() {
        let v = ScoreLexicon::from_entries("valence", [("happy", 0.9)]).unwrap();
        let a = ScoreLexicon::from_entries("arousal", [("excited", 0.8)]).unwrap();
        let reg = Registry::build(
            vec![v, a],
            None,
            None,
            RegistryConfig::default(),
            ThresholdConfig::default(),
        )
        .unwrap();
        let m = reg.compile_matcher();
        let seq = tokenize("happy day");
        let feats = score_all(&seq, &m.find_matches(&seq), &reg);
        assert_eq!(feats.slices.len(), 2);
        assert!(feats.slices[0].flag);
        assert!(!feats.slices[1].flag);
        assert_eq!(feats.slices[1], ScoreSlice::default());
    }
}
