//! Single-pass multi-pattern phrase matching over token sequences.
//!
//! All lexicon phrases (one to three tokens) are compiled into one shared
//! index: tokens are interned to integer ids and every phrase becomes a
//! fixed-width id key, so a query is at most three hash lookups per token
//! position with no string allocation. One compiled matcher serves every
//! lexicon; payloads are resolved per hit.
//!
//! Within a single lexicon, overlapping hits resolve leftmost-longest: scan
//! left to right, at each free position accept the longest phrase starting
//! there, then skip past it. A trigram hit therefore suppresses the unigram
//! and bigram hits it covers from the same lexicon. Hits from different
//! lexicons are fully independent. Reserved-class tokens (urls, mentions,
//! hashtags) never participate in a match.

use std::collections::HashMap;

use crate::lexicon::{CategoryLexicon, PhraseLexicon, ScoreLexicon};
use crate::tokenize::TokenSequence;

const NO_ID: u32 = u32::MAX;

/// What a matched phrase means to its lexicon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Payload {
    /// Real-valued score from a score lexicon.
    Score(f64),
    /// Index into the category lexicon's category list.
    Category(u16),
    /// Plain set membership (phrase lexicon).
    Member,
}

/// Borrowed view of any lexicon kind accepted by [`compile`].
#[derive(Clone, Copy)]
pub enum AnyLexicon<'a> {
    Score(&'a ScoreLexicon),
    Category(&'a CategoryLexicon),
    Phrase(&'a PhraseLexicon),
}

impl<'a> AnyLexicon<'a> {
    pub fn name(&self) -> &'a str {
        match self {
            AnyLexicon::Score(l) => &l.name,
            AnyLexicon::Category(l) => &l.name,
            AnyLexicon::Phrase(l) => &l.name,
        }
    }

    fn entries(&self) -> Vec<(&'a str, Payload)> {
        match self {
            AnyLexicon::Score(l) => l
                .iter()
                .map(|(t, s)| (t, Payload::Score(s)))
                .collect(),
            AnyLexicon::Category(l) => l
                .iter()
                .map(|(t, _)| (t, Payload::Category(l.category_index(t).unwrap())))
                .collect(),
            AnyLexicon::Phrase(l) => l.iter().map(|p| (p, Payload::Member)).collect(),
        }
    }
}

#[derive(Debug, Clone)]
struct Entry {
    lexicon: u16,
    phrase: u32,
    payload: Payload,
}

/// Immutable multi-pattern index over the union of all lexicon phrases.
/// Shareable across worker threads; queries are reentrant.
#[derive(Debug, Clone)]
pub struct CompiledMatcher {
    vocab: HashMap<String, u32>,
    buckets: HashMap<[u32; 3], Vec<Entry>>,
    phrases: Vec<String>,
    lexicon_names: Vec<String>,
}

/// One phrase occurrence. `start`/`len` are token positions.
#[derive(Debug, Clone, PartialEq)]
pub struct Hit<'m> {
    pub lexicon: u16,
    pub lexicon_name: &'m str,
    pub phrase: &'m str,
    pub start: usize,
    pub len: usize,
    pub payload: Payload,
}

/// All hits for one token sequence, sorted by start index.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MatchSet<'m> {
    pub hits: Vec<Hit<'m>>,
}

impl<'m> MatchSet<'m> {
    pub fn len(&self) -> usize {
        self.hits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hits.is_empty()
    }

    /// Hits belonging to one lexicon, in order.
    pub fn for_lexicon(&self, lexicon: u16) -> impl Iterator<Item = &Hit<'m>> {
        self.hits.iter().filter(move |h| h.lexicon == lexicon)
    }
}

/// Compile a set of lexicons into one shared matcher. Lexicon ids are
/// assigned in input order; compilation is deterministic.
pub fn compile<'a>(lexicons: impl IntoIterator<Item = AnyLexicon<'a>>) -> CompiledMatcher {
    let mut m = CompiledMatcher {
        vocab: HashMap::new(),
        buckets: HashMap::new(),
        phrases: Vec::new(),
        lexicon_names: Vec::new(),
    };
    let mut phrase_ids: HashMap<String, u32> = HashMap::new();

    for lex in lexicons {
        let lexicon_id = m.lexicon_names.len() as u16;
        m.lexicon_names.push(lex.name().to_string());
        for (phrase, payload) in lex.entries() {
            let mut key = [NO_ID; 3];
            for (slot, token) in phrase.split(' ').enumerate() {
                debug_assert!(slot < 3, "phrases are validated to <= 3 tokens");
                let next = m.vocab.len() as u32;
                key[slot] = *m.vocab.entry(token.to_string()).or_insert(next);
            }
            let phrase_id = *phrase_ids.entry(phrase.to_string()).or_insert_with(|| {
                m.phrases.push(phrase.to_string());
                (m.phrases.len() - 1) as u32
            });
            m.buckets.entry(key).or_default().push(Entry {
                lexicon: lexicon_id,
                phrase: phrase_id,
                payload,
            });
        }
    }
    m
}

impl CompiledMatcher {
    pub fn lexicon_count(&self) -> usize {
        self.lexicon_names.len()
    }

    pub fn lexicon_name(&self, id: u16) -> &str {
        &self.lexicon_names[id as usize]
    }

    pub fn lexicon_id(&self, name: &str) -> Option<u16> {
        self.lexicon_names
            .iter()
            .position(|n| n == name)
            .map(|i| i as u16)
    }

    /// Report every phrase occurrence, applying the per-lexicon
    /// leftmost-longest rule.
    pub fn find_matches<'m>(&'m self, seq: &TokenSequence) -> MatchSet<'m> {
        let n = seq.len();
        let mut ids = Vec::with_capacity(n);
        for (i, token) in seq.tokens.iter().enumerate() {
            if seq.is_reserved(i) {
                ids.push(NO_ID);
            } else {
                ids.push(self.vocab.get(token).copied().unwrap_or(NO_ID));
            }
        }

        let mut next_free = vec![0usize; self.lexicon_names.len()];
        let mut hits = Vec::new();

        for i in 0..n {
            if ids[i] == NO_ID {
                continue;
            }
            let mut key = [NO_ID; 3];
            key[0] = ids[i];
            let max_len = (n - i).min(3);
            // longest window first so a long hit claims the position
            for len in (1..=max_len).rev() {
                if len >= 2 {
                    if ids[i + 1] == NO_ID {
                        continue;
                    }
                    key[1] = ids[i + 1];
                }
                if len >= 3 {
                    if ids[i + 2] == NO_ID {
                        continue;
                    }
                    key[2] = ids[i + 2];
                }
                let mut probe = [NO_ID; 3];
                probe[..len].copy_from_slice(&key[..len]);
                if let Some(bucket) = self.buckets.get(&probe) {
                    for entry in bucket {
                        if next_free[entry.lexicon as usize] <= i {
                            next_free[entry.lexicon as usize] = i + len;
                            hits.push(Hit {
                                lexicon: entry.lexicon,
                                lexicon_name: &self.lexicon_names[entry.lexicon as usize],
                                phrase: &self.phrases[entry.phrase as usize],
                                start: i,
                                len,
                                payload: entry.payload,
                            });
                        }
                    }
                }
            }
        }

        MatchSet { hits }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tokenize::tokenize;

    fn phrase_lex(name: &str, phrases: &[&str]) -> PhraseLexicon {
        PhraseLexicon::from_phrases(name, phrases.iter().copied()).unwrap()
    }

    fn hits_of<'m>(m: &'m CompiledMatcher, text: &str) -> Vec<(String, usize, usize)> {
        m.find_matches(&tokenize(text))
            .hits
            .iter()
            .map(|h| (h.phrase.to_string(), h.start, h.len))
            .collect()
    }

    #[test]
    fn longest_match_suppresses_covered_shorter_hit() {
        let lex = phrase_lex("bpm", &["heart", "heart rate"]);
        let m = compile([AnyLexicon::Phrase(&lex)]);
        assert_eq!(
            hits_of(&m, "my heart rate"),
            vec![("heart rate".to_string(), 1, 2)]
        );
    }

    #[test]
    fn repeated_occurrences_each_reported() {
        let lex = phrase_lex("l", &["happy"]);
        let m = compile([AnyLexicon::Phrase(&lex)]);
        assert_eq!(hits_of(&m, "happy happy").len(), 2);
    }

    #[test]
    fn reserved_tokens_never_match() {
        let lex = phrase_lex("l", &["<url>"]);
        let m = compile([AnyLexicon::Phrase(&lex)]);
        assert!(hits_of(&m, "see https://x.co").is_empty());
    }

    #[test]
    fn shared_phrase_reported_for_both_lexicons() {
        let a = ScoreLexicon::from_entries("a", [("trust", 0.8)]).unwrap();
        let b = ScoreLexicon::from_entries("b", [("trust", 0.3)]).unwrap();
        let m = compile([AnyLexicon::Score(&a), AnyLexicon::Score(&b)]);
        let seq = tokenize("trust me");
        let ms = m.find_matches(&seq);
        assert_eq!(ms.len(), 2);
        assert_eq!(ms.hits[0].start, 0);
        assert_eq!(ms.hits[1].start, 0);
        assert_ne!(ms.hits[0].lexicon, ms.hits[1].lexicon);
        assert_eq!(ms.hits[0].payload, Payload::Score(0.8));
        assert_eq!(ms.hits[1].payload, Payload::Score(0.3));
    }

    #[test]
    fn empty_matcher_matches_nothing() {
        let m = compile([]);
        assert!(m.find_matches(&tokenize("anything at all")).is_empty());
    }

    #[test]
    fn cross_lexicon_hits_are_independent() {
        // "heart rate" in one lexicon must not suppress "rate" in another
        let a = phrase_lex("a", &["heart rate"]);
        let b = phrase_lex("b", &["rate"]);
        let m = compile([AnyLexicon::Phrase(&a), AnyLexicon::Phrase(&b)]);
        let ms = m.find_matches(&tokenize("my heart rate"));
        assert_eq!(ms.len(), 2);
        assert_eq!(ms.hits[0].phrase, "heart rate");
        assert_eq!(ms.hits[1].phrase, "rate");
    }

    #[test]
    fn leftmost_match_wins_over_overlapping_later_start() {
        let lex = phrase_lex("l", &["a b", "b c"]);
        let m = compile([AnyLexicon::Phrase(&lex)]);
        assert_eq!(hits_of(&m, "a b c"), vec![("a b".to_string(), 0, 2)]);
    }

    #[test]
    fn bundled_bpm_list_fully_indexed() {
        let bpm = crate::lexicon::builtin::body_parts();
        let m = compile([AnyLexicon::Phrase(&bpm)]);
        for phrase in bpm.iter() {
            let seq = tokenize(phrase);
            let ms = m.find_matches(&seq);
            assert!(
                ms.hits.iter().any(|h| h.phrase == phrase),
                "{phrase:?} must be retrievable"
            );
        }
    }

    #[test]
    fn hits_sorted_by_start() {
        let lex = phrase_lex("l", &["a", "b", "c d"]);
        let m = compile([AnyLexicon::Phrase(&lex)]);
        let ms = m.find_matches(&tokenize("c d a b a"));
        let starts: Vec<_> = ms.hits.iter().map(|h| h.start).collect();
        let mut sorted = starts.clone();
        sorted.sort_unstable();
        assert_eq!(starts, sorted);
    }

    #[test]
    fn category_payload_resolves_index() {
        let cog = crate::lexicon::parse_category_lexicon(
            "analyze\tanalyzing\nrecall\tmemory_recall\n",
            "cog",
        )
        .unwrap();
        let m = compile([AnyLexicon::Category(&cog)]);
        let ms = m.find_matches(&tokenize("please analyze this"));
        assert_eq!(ms.hits[0].payload, Payload::Category(0));
    }
}
