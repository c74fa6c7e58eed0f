//! Cognition-category presence flags from the curated cognitive-verb list.

use crate::matcher::{MatchSet, Payload};
use crate::registry::Registry;

/// Per-category flags (and auxiliary counts) in the category lexicon's
/// label order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CognitionFeatures {
    pub flags: Vec<bool>,
    pub counts: Vec<u32>,
}

impl CognitionFeatures {
    pub fn flag(&self, registry: &Registry, category: &str) -> Option<bool> {
        let cats = registry.category_lexicon()?.categories();
        cats.iter()
            .position(|c| c == category)
            .map(|i| self.flags[i])
    }
}

/// Flag every category with at least one hit. Yields exactly the registry's
/// category set, all false when the instance has no cognition terms.
pub fn detect_cognition(matches: &MatchSet<'_>, registry: &Registry) -> CognitionFeatures {
    let Some(cat_lex) = registry.category_lexicon() else {
        return CognitionFeatures::default();
    };
    let Some(lexicon_id) = registry.category_matcher_id() else {
        return CognitionFeatures::default();
    };
    let n = cat_lex.categories().len();
    let mut counts = vec![0u32; n];
    for hit in matches.for_lexicon(lexicon_id) {
        if let Payload::Category(c) = hit.payload {
            counts[c as usize] += 1;
        }
    }
    CognitionFeatures {
        flags: counts.iter().map(|&c| c > 0).collect(),
        counts,
    }
}
