//! Possessive body-part mentions.
//!
//! A body-part hit is recorded under a possessive pronoun when the pronoun
//! token immediately precedes the matched phrase ("my heart", "her hand").
//! Multi-token phrases anchor the check at their first token. The default is
//! strict adjacency; `max_intervening` optionally allows that many word
//! tokens between pronoun and phrase ("my aching heart" with 1), off by
//! default.

use serde::Serialize;

use crate::matcher::MatchSet;
use crate::tokenize::TokenSequence;

/// The possessive determiners checked, in column order.
pub const POSSESSIVE_PRONOUNS: [&str; 7] = ["my", "your", "his", "her", "its", "our", "their"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BodyConfig {
    /// How many word tokens may sit between the pronoun and the phrase.
    /// Zero means the pronoun must be immediately adjacent.
    pub max_intervening: usize,
}

impl Default for BodyConfig {
    fn default() -> Self {
        BodyConfig { max_intervening: 0 }
    }
}

/// Per-pronoun lists of matched body-part phrases, in match order, with
/// duplicates preserved.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BpmFeatures {
    pub flag: bool,
    /// One list per entry of [`POSSESSIVE_PRONOUNS`].
    pub by_pronoun: [Vec<String>; 7],
    /// Count of all body-part hits, possessive or not. Feeds the optional
    /// `bpm_any_count` column.
    pub any_count: u32,
}

impl BpmFeatures {
    pub fn list(&self, pronoun: &str) -> Option<&[String]> {
        POSSESSIVE_PRONOUNS
            .iter()
            .position(|p| *p == pronoun)
            .map(|i| self.by_pronoun[i].as_slice())
    }
}

fn pronoun_index(token: &str) -> Option<usize> {
    POSSESSIVE_PRONOUNS.iter().position(|p| *p == token)
}

/// Detect possessive body-part mentions from the phrase-lexicon hits.
pub fn detect_bpm(
    seq: &TokenSequence,
    matches: &MatchSet<'_>,
    bpm_lexicon: u16,
    cfg: &BodyConfig,
) -> BpmFeatures {
    let mut feats = BpmFeatures::default();
    for hit in matches.for_lexicon(bpm_lexicon) {
        feats.any_count += 1;
        // look back from the phrase start over at most max_intervening words
        let mut pos = hit.start;
        let mut gap = 0usize;
        while pos > 0 {
            pos -= 1;
            if seq.is_reserved(pos) {
                break;
            }
            if let Some(p) = pronoun_index(&seq.tokens[pos]) {
                feats.by_pronoun[p].push(hit.phrase.to_string());
                break;
            }
            gap += 1;
            if gap > cfg.max_intervening {
                break;
            }
        }
    }
    feats.flag = feats.by_pronoun.iter().any(|l| !l.is_empty());
    feats
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::PhraseLexicon;
    use crate::matcher::{compile, AnyLexicon, CompiledMatcher};
    use crate::tokenize::tokenize;

    fn bpm_matcher(phrases: &[&str]) -> CompiledMatcher {
        let lex = PhraseLexicon::from_phrases("bpm", phrases.iter().copied()).unwrap();
        compile([AnyLexicon::Phrase(&lex)])
    }

    fn detect(m: &CompiledMatcher, text: &str) -> BpmFeatures {
        let seq = tokenize(text);
        let ms = m.find_matches(&seq);
        detect_bpm(&seq, &ms, 0, &BodyConfig::default())
    }

    #[test]
    fn my_heart_recorded_under_my() {
        let m = bpm_matcher(&["heart"]);
        let f = detect(&m, "my heart aches");
        assert!(f.flag);
        assert_eq!(f.list("my").unwrap(), &["heart"]);
        assert!(f.list("her").unwrap().is_empty());
    }

    #[test]
    fn non_possessive_mention_ignored() {
        let m = bpm_matcher(&["heart"]);
        let f = detect(&m, "the heart of the matter");
        assert!(!f.flag);
        assert!(f.by_pronoun.iter().all(|l| l.is_empty()));
        assert_eq!(f.any_count, 1);
    }

    #[test]
    fn two_pronouns_two_lists() {
        let m = bpm_matcher(&["hand"]);
        let f = detect(&m, "her hand held my hand");
        assert_eq!(f.list("her").unwrap(), &["hand"]);
        assert_eq!(f.list("my").unwrap(), &["hand"]);
    }

    #[test]
    fn intervening_token_breaks_adjacency() {
        let m = bpm_matcher(&["heart"]);
        let f = detect(&m, "my own heart");
        assert!(!f.flag);

        // but an explicit gap allowance restores it
        let seq = tokenize("my own heart");
        let ms = m.find_matches(&seq);
        let f = detect_bpm(&seq, &ms, 0, &BodyConfig { max_intervening: 1 });
        assert_eq!(f.list("my").unwrap(), &["heart"]);
    }

    #[test]
    fn multi_token_phrase_anchors_at_first_token() {
        let m = bpm_matcher(&["heart rate", "heart"]);
        let f = detect(&m, "my heart rate is high");
        assert_eq!(f.list("my").unwrap(), &["heart rate"]);
    }

    #[test]
    fn duplicates_preserved_in_order() {
        let m = bpm_matcher(&["head", "heart"]);
        let f = detect(&m, "my head my heart my head");
        assert_eq!(f.list("my").unwrap(), &["head", "heart", "head"]);
    }

    #[test]
    fn flag_equals_list_disjunction() {
        let m = bpm_matcher(&["heart", "hand"]);
        for text in ["my heart", "a heart", "her hand waved", "nothing here", ""] {
            let f = detect(&m, text);
            assert_eq!(f.flag, f.by_pronoun.iter().any(|l| !l.is_empty()));
        }
    }
}
