//! Pronoun-person flags and verb-tense flags.
//!
//! Pronouns come from fixed closed-class lists split by person and
//! possessiveness. The one ambiguous form, "her", reads as possessive when
//! the next token is a non-verb word (per the morph table), else as
//! non-possessive: "her hand" is possessive, "I saw her leave" is not. All
//! other pronoun flags are pure bag-of-words.
//!
//! Tense flags come from a morph table mapping verb surface forms to tags.
//! Past and present set their flag on any tagged token. English has no
//! morphological future, so the future flag needs a trigger: "will", "shall",
//! "won't" or an "'ll" contraction followed within three tokens by a
//! base-form verb, or "going to" immediately followed by one. Flags are
//! independent; an instance can set zero, one, or all three.

use std::collections::HashMap;
use std::path::Path;

use serde::Serialize;

use crate::error::ConfigError;
use crate::tokenize::TokenSequence;

const FIRST_NONPOSS: [&str; 4] = ["i", "me", "we", "us"];
const FIRST_POSS: [&str; 4] = ["my", "mine", "our", "ours"];
const SECOND_NONPOSS: [&str; 1] = ["you"];
const SECOND_POSS: [&str; 2] = ["your", "yours"];
const THIRD_NONPOSS: [&str; 6] = ["he", "him", "she", "they", "them", "it"];
const THIRD_POSS: [&str; 5] = ["his", "hers", "their", "theirs", "its"];

const FUTURE_WINDOW: usize = 3;

/// Tense tags a surface form can carry.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TenseTags {
    pub base: bool,
    pub present: bool,
    pub past: bool,
}

/// Immutable surface-form -> tense-tag table, loaded once and shared.
#[derive(Debug, Clone, Default)]
pub struct MorphTable {
    map: HashMap<String, TenseTags>,
}

impl MorphTable {
    /// The table generated by `tools/gen_morph_table.py`.
    pub fn builtin() -> MorphTable {
        MorphTable::parse(include_str!("../data/morph_en.tsv"))
            .expect("bundled morph table is valid")
    }

    pub fn load(path: &Path) -> Result<MorphTable, ConfigError> {
        let content = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Morph(format!("{}: {e}", path.display())))?;
        MorphTable::parse(&content)
    }

    pub fn parse(content: &str) -> Result<MorphTable, ConfigError> {
        let mut map = HashMap::new();
        for (i, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (form, tags) = line.split_once('\t').ok_or_else(|| {
                ConfigError::Morph(format!("line {}: expected `form<TAB>tags`", i + 1))
            })?;
            let mut t = TenseTags::default();
            for tag in tags.split(';') {
                match tag.trim() {
                    "base" => t.base = true,
                    "present" => t.present = true,
                    "past" => t.past = true,
                    other => {
                        return Err(ConfigError::Morph(format!(
                            "line {}: unknown tag {other:?}",
                            i + 1
                        )))
                    }
                }
            }
            map.insert(form.to_lowercase(), t);
        }
        if map.is_empty() {
            return Err(ConfigError::Morph("table has no entries".to_string()));
        }
        Ok(MorphTable { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn tags(&self, form: &str) -> Option<TenseTags> {
        self.map.get(form).copied()
    }

    pub fn is_verb(&self, form: &str) -> bool {
        self.map.contains_key(form)
    }
}

/// Per-(person, possessiveness) pronoun presence flags.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PronounFlags {
    pub first_poss: bool,
    pub first_nonposs: bool,
    pub second_poss: bool,
    pub second_nonposs: bool,
    pub third_poss: bool,
    pub third_nonposs: bool,
}

impl PronounFlags {
    pub fn as_array(&self) -> [(&'static str, bool); 6] {
        [
            ("pron_first_poss_flag", self.first_poss),
            ("pron_first_nonposs_flag", self.first_nonposs),
            ("pron_second_poss_flag", self.second_poss),
            ("pron_second_nonposs_flag", self.second_nonposs),
            ("pron_third_poss_flag", self.third_poss),
            ("pron_third_nonposs_flag", self.third_nonposs),
        ]
    }
}

/// Tense presence flags.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct TenseFlags {
    pub past: bool,
    pub present: bool,
    pub future: bool,
}

/// Detect pronoun flags from fixed closed-class lists.
pub fn detect_pronouns(seq: &TokenSequence, morph: &MorphTable) -> PronounFlags {
    let mut flags = PronounFlags::default();
    for (i, token) in seq.tokens.iter().enumerate() {
        if seq.is_reserved(i) {
            continue;
        }
        let t = token.as_str();
        if FIRST_NONPOSS.contains(&t) {
            flags.first_nonposs = true;
        } else if FIRST_POSS.contains(&t) {
            flags.first_poss = true;
        } else if SECOND_NONPOSS.contains(&t) {
            flags.second_nonposs = true;
        } else if SECOND_POSS.contains(&t) {
            flags.second_poss = true;
        } else if THIRD_NONPOSS.contains(&t) {
            flags.third_nonposs = true;
        } else if THIRD_POSS.contains(&t) {
            flags.third_poss = true;
        } else if t == "her" {
            // determiner reading when a non-verb word follows
            let next_is_nounlike = match seq.tokens.get(i + 1) {
                Some(next) if !seq.is_reserved(i + 1) => !morph.is_verb(next),
                _ => false,
            };
            if next_is_nounlike {
                flags.third_poss = true;
            } else {
                flags.third_nonposs = true;
            }
        }
    }
    flags
}

fn is_future_trigger(token: &str) -> bool {
    token == "will" || token == "shall" || token == "won't" || token.ends_with("'ll")
}

/// Detect tense flags using the morph table plus future triggers.
pub fn detect_tense(seq: &TokenSequence, morph: &MorphTable) -> TenseFlags {
    let mut flags = TenseFlags::default();
    for (i, token) in seq.tokens.iter().enumerate() {
        if seq.is_reserved(i) {
            continue;
        }
        if let Some(tags) = morph.tags(token) {
            flags.past |= tags.past;
            flags.present |= tags.present;
        }
        if !flags.future {
            if is_future_trigger(token) {
                flags.future = base_verb_within(seq, morph, i + 1, FUTURE_WINDOW);
            } else if token == "going"
                && seq.tokens.get(i + 1).map(String::as_str) == Some("to")
                && !seq.is_reserved(i + 1)
            {
                flags.future = base_verb_within(seq, morph, i + 2, 1);
            }
        }
    }
    flags
}

fn base_verb_within(seq: &TokenSequence, morph: &MorphTable, from: usize, window: usize) -> bool {
    seq.tokens
        .iter()
        .enumerate()
        .skip(from)
        .take(window)
        .any(|(i, t)| !seq.is_reserved(i) && morph.tags(t).map(|t| t.base).unwrap_or(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tokenize::tokenize;

    fn pron(text: &str) -> PronounFlags {
        detect_pronouns(&tokenize(text), &MorphTable::builtin())
    }

    fn tense(text: &str) -> TenseFlags {
        detect_tense(&tokenize(text), &MorphTable::builtin())
    }

    #[test]
    fn first_and_third_person_flags() {
        let f = pron("I like it");
        assert!(f.first_nonposs);
        assert!(f.third_nonposs);
        assert!(!f.first_poss && !f.second_nonposs && !f.second_poss && !f.third_poss);
    }

    #[test]
    fn empty_text_all_false() {
        assert_eq!(pron(""), PronounFlags::default());
        assert_eq!(tense(""), TenseFlags::default());
    }

    #[test]
    fn her_determiner_vs_objective() {
        assert!(pron("her book").third_poss);
        assert!(!pron("her book").third_nonposs);
        let f = pron("i saw her leave");
        assert!(f.third_nonposs);
        assert!(!f.third_poss);
        // trailing "her" has nothing to determine
        assert!(pron("i saw her").third_nonposs);
    }

    #[test]
    fn possessive_lists() {
        assert!(pron("my word is yours").first_poss);
        assert!(pron("my word is yours").second_poss);
        assert!(pron("their dog and its bone").third_poss);
    }

    #[test]
    fn past_from_regular_inflection() {
        let f = tense("I walked home");
        assert!(f.past);
        assert!(!f.future);
    }

    #[test]
    fn modal_future() {
        let f = tense("she will go");
        assert!(f.future);
        let f = tense("she will not go");
        assert!(f.future);
        let f = tense("i'll see");
        assert!(f.future);
        let f = tense("we shall walk");
        assert!(f.future);
        // no base verb in the window
        let f = tense("the will of iron");
        assert!(!f.future);
    }

    #[test]
    fn going_to_periphrastic() {
        assert!(tense("i am going to see them").future);
        assert!(!tense("i am going to the store").future);
    }

    #[test]
    fn run_is_present_only() {
        let f = tense("run");
        assert!(f.present);
        assert!(!f.past);
    }

    #[test]
    fn flags_are_independent() {
        let f = tense("i walked and i walk and i will walk");
        assert!(f.past && f.present && f.future);
    }

    #[test]
    fn morph_parse_rejects_unknown_tags() {
        assert!(MorphTable::parse("walk\tbase;verb\n").is_err());
        assert!(MorphTable::parse("").is_err());
        assert!(MorphTable::parse("walk base\n").is_err());
    }
}
