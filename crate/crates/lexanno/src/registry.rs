//! The feature registry: every loaded lexicon plus the deterministic
//! enumeration of output feature columns.
//!
//! Column naming is fixed:
//!
//! * score lexicon `L`: `L_avg`, `L_count`, `L_flag`
//! * category lexicon: `cog_<category>_flag` per category
//! * phrase lexicon (body parts): `bpm_flag`, then `bpm_<pronoun>` list
//!   columns, plus `bpm_any_count` when enabled
//! * pronoun flags: `pron_<person>_<poss|nonposs>_flag`
//! * tense flags: `tense_<past|present|future>_flag`
//! * demographics: `demo_<attr>` and `demo_<attr>_provenance`
//!
//! The enumeration is identical across runs for identical inputs, and the
//! manifest (JSON) is what `--dump-registry` emits. Per-instance densities
//! are not separate columns: density is `count / word_count`, both of which
//! are emitted.

use serde::Serialize;

use crate::body::POSSESSIVE_PRONOUNS;
use crate::error::LexiconError;
use crate::lexicon::{CategoryLexicon, PhraseLexicon, ScoreLexicon, ThresholdConfig};
use crate::matcher::{compile, AnyLexicon, CompiledMatcher};

pub const DEMOGRAPHIC_ATTRS: [&str; 6] =
    ["age", "gender", "occupation_soc", "country", "city", "religion"];

pub const STRUCTURAL_COLUMNS: [&str; 7] = [
    "instance_id",
    "source",
    "timestamp",
    "year",
    "user_id",
    "word_count",
    "error",
];

/// Which optional feature families the registry enumerates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct RegistryConfig {
    pub pronouns: bool,
    pub tense: bool,
    pub demographics: bool,
    /// Extra `bpm_any_count` column counting body-part hits regardless of a
    /// possessive. Off by default.
    pub bpm_any_count: bool,
}

impl RegistryConfig {
    /// Everything on: the configuration the full pipeline runs with.
    pub fn full() -> Self {
        RegistryConfig {
            pronouns: true,
            tense: true,
            demographics: true,
            bpm_any_count: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ColumnKind {
    Structural,
    ScoreAvg { lexicon: String },
    ScoreCount { lexicon: String },
    ScoreFlag { lexicon: String },
    CategoryFlag { category: String },
    BpmFlag,
    BpmList { pronoun: String },
    BpmAnyCount,
    PronounFlag { person: String, possessive: bool },
    TenseFlag { tense: String },
    Demographic { attribute: String },
    DemographicProvenance { attribute: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColumnSpec {
    pub id: String,
    #[serde(flatten)]
    pub kind: ColumnKind,
}

/// All loaded lexicons plus the enumerated feature columns. Immutable after
/// construction; safe to share across worker threads.
#[derive(Debug, Clone)]
pub struct Registry {
    score: Vec<ScoreLexicon>,
    category: Option<CategoryLexicon>,
    phrase: Option<PhraseLexicon>,
    pub config: RegistryConfig,
    pub thresholds: ThresholdConfig,
    columns: Vec<ColumnSpec>,
}

impl Registry {
    /// Enumerate columns for the given lexicons. Score lexicons expand to
    /// avg/count/flag in input order; lexicon names must be unique.
    pub fn build(
        score: Vec<ScoreLexicon>,
        category: Option<CategoryLexicon>,
        phrase: Option<PhraseLexicon>,
        config: RegistryConfig,
        thresholds: ThresholdConfig,
    ) -> Result<Registry, LexiconError> {
        thresholds.validate()?;
        let mut names: Vec<&str> = score.iter().map(|l| l.name.as_str()).collect();
        if let Some(c) = &category {
            names.push(&c.name);
        }
        if let Some(p) = &phrase {
            names.push(&p.name);
        }
        let mut seen = std::collections::HashSet::new();
        for n in names {
            if !seen.insert(n) {
                return Err(LexiconError::NameCollision {
                    name: n.to_string(),
                });
            }
        }

        let mut columns: Vec<ColumnSpec> = STRUCTURAL_COLUMNS
            .iter()
            .map(|c| ColumnSpec {
                id: (*c).to_string(),
                kind: ColumnKind::Structural,
            })
            .collect();

        for lex in &score {
            for (suffix, kind) in [
                ("avg", ColumnKind::ScoreAvg { lexicon: lex.name.clone() }),
                ("count", ColumnKind::ScoreCount { lexicon: lex.name.clone() }),
                ("flag", ColumnKind::ScoreFlag { lexicon: lex.name.clone() }),
            ] {
                columns.push(ColumnSpec {
                    id: format!("{}_{}", lex.name, suffix),
                    kind,
                });
            }
        }

        if let Some(cat) = &category {
            for c in cat.categories() {
                columns.push(ColumnSpec {
                    id: format!("cog_{c}_flag"),
                    kind: ColumnKind::CategoryFlag {
                        category: c.clone(),
                    },
                });
            }
        }

        if phrase.is_some() {
            columns.push(ColumnSpec {
                id: "bpm_flag".to_string(),
                kind: ColumnKind::BpmFlag,
            });
            for p in POSSESSIVE_PRONOUNS {
                columns.push(ColumnSpec {
                    id: format!("bpm_{p}"),
                    kind: ColumnKind::BpmList {
                        pronoun: p.to_string(),
                    },
                });
            }
            if config.bpm_any_count {
                columns.push(ColumnSpec {
                    id: "bpm_any_count".to_string(),
                    kind: ColumnKind::BpmAnyCount,
                });
            }
        }

        if config.pronouns {
            for person in ["first", "second", "third"] {
                for (poss, label) in [(true, "poss"), (false, "nonposs")] {
                    columns.push(ColumnSpec {
                        id: format!("pron_{person}_{label}_flag"),
                        kind: ColumnKind::PronounFlag {
                            person: person.to_string(),
                            possessive: poss,
                        },
                    });
                }
            }
        }

        if config.tense {
            for t in ["past", "present", "future"] {
                columns.push(ColumnSpec {
                    id: format!("tense_{t}_flag"),
                    kind: ColumnKind::TenseFlag {
                        tense: t.to_string(),
                    },
                });
            }
        }

        if config.demographics {
            for attr in DEMOGRAPHIC_ATTRS {
                columns.push(ColumnSpec {
                    id: format!("demo_{attr}"),
                    kind: ColumnKind::Demographic {
                        attribute: attr.to_string(),
                    },
                });
            }
            for attr in DEMOGRAPHIC_ATTRS {
                columns.push(ColumnSpec {
                    id: format!("demo_{attr}_provenance"),
                    kind: ColumnKind::DemographicProvenance {
                        attribute: attr.to_string(),
                    },
                });
            }
        }

        Ok(Registry {
            score,
            category,
            phrase,
            config,
            thresholds,
            columns,
        })
    }

    pub fn score_lexicons(&self) -> &[ScoreLexicon] {
        &self.score
    }

    pub fn category_lexicon(&self) -> Option<&CategoryLexicon> {
        self.category.as_ref()
    }

    pub fn phrase_lexicon(&self) -> Option<&PhraseLexicon> {
        self.phrase.as_ref()
    }

    pub fn columns(&self) -> &[ColumnSpec] {
        &self.columns
    }

    pub fn column_ids(&self) -> Vec<&str> {
        self.columns.iter().map(|c| c.id.as_str()).collect()
    }

    /// Compile all lexicons into one matcher. Matcher lexicon ids follow
    /// registry order: score lexicons first, then the category lexicon, then
    /// the phrase lexicon.
    pub fn compile_matcher(&self) -> CompiledMatcher {
        let mut lexicons: Vec<AnyLexicon<'_>> =
            self.score.iter().map(AnyLexicon::Score).collect();
        if let Some(c) = &self.category {
            lexicons.push(AnyLexicon::Category(c));
        }
        if let Some(p) = &self.phrase {
            lexicons.push(AnyLexicon::Phrase(p));
        }
        compile(lexicons)
    }

    /// Matcher lexicon id of the category lexicon, if present.
    pub fn category_matcher_id(&self) -> Option<u16> {
        self.category.as_ref().map(|_| self.score.len() as u16)
    }

    /// Matcher lexicon id of the phrase lexicon, if present.
    pub fn phrase_matcher_id(&self) -> Option<u16> {
        self.phrase
            .as_ref()
            .map(|_| (self.score.len() + usize::from(self.category.is_some())) as u16)
    }

    /// The JSON manifest `--dump-registry` emits.
    pub fn manifest(&self) -> serde_json::Value {
        serde_json::json!({
            "column_count": self.columns.len(),
            "feature_column_count": self.columns.len() - STRUCTURAL_COLUMNS.len(),
            "score_lexicons": self.score.iter().map(|l| l.name.clone()).collect::<Vec<_>>(),
            "category_lexicon": self.category.as_ref().map(|c| c.name.clone()),
            "phrase_lexicon": self.phrase.as_ref().map(|p| p.name.clone()),
            "thresholds": { "high_min": self.thresholds.high_min, "low_max": self.thresholds.low_max },
            "config": self.config,
            "columns": self.columns,
        })
    }
}
