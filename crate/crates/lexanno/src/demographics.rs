//! Self-disclosed demographic attributes: extraction rules, the age
//! heuristic, and user-level profiles.
//!
//! Rules live in a JSON file (`data/demographics/rules.json`), not in code:
//! each rule is an attribute, a case-insensitive regex over the raw text,
//! and a named normalizer. Normalizers map the raw capture onto a controlled
//! vocabulary (gender identities, religions, countries, cities, SOC
//! occupation titles); a capture that fails its vocabulary is no disclosure
//! at all, so every emitted label is a vocabulary label. Within one
//! attribute the leftmost successful match wins per instance; across a
//! user's history the earliest disclosure wins, with conflicts noted in
//! provenance.
//!
//! Absence semantics: no disclosure means the field stays absent. Nothing is
//! ever inferred from style, names, or defaults.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;

use regex::{Regex, RegexBuilder, RegexSet, RegexSetBuilder};
use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::ingest::TimeRef;

/// Seconds in a Julian year; the unit for elapsed-time age extrapolation.
const YEAR_SECONDS: i64 = 31_557_600;

/// Plausibility gate for ages.
pub const AGE_MIN: u32 = 13;
pub const AGE_MAX: u32 = 100;

const UNIT_WORDS: [&str; 24] = [
    "years", "year", "yrs", "yr", "months", "month", "weeks", "week", "days", "day", "hours",
    "hour", "minutes", "percent", "kg", "kgs", "lbs", "pounds", "cm", "meters", "feet", "ft",
    "inches", "miles",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Attribute {
    Age,
    Gender,
    Occupation,
    Country,
    City,
    Religion,
}

impl Attribute {
    pub const ALL: [Attribute; 6] = [
        Attribute::Age,
        Attribute::Gender,
        Attribute::Occupation,
        Attribute::Country,
        Attribute::City,
        Attribute::Religion,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Attribute::Age => "age",
            Attribute::Gender => "gender",
            Attribute::Occupation => "occupation",
            Attribute::Country => "country",
            Attribute::City => "city",
            Attribute::Religion => "religion",
        }
    }
}

/// The normalized value a disclosure carries.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum DisclosedValue {
    AgeYears(u32),
    BirthYear(i32),
    Label(String),
    Occupation { title: String, soc: String },
}

impl DisclosedValue {
    fn render(&self) -> String {
        match self {
            DisclosedValue::AgeYears(a) => format!("age:{a}"),
            DisclosedValue::BirthYear(y) => format!("born:{y}"),
            DisclosedValue::Label(l) => l.clone(),
            DisclosedValue::Occupation { soc, .. } => soc.clone(),
        }
    }
}

/// One extracted disclosure: attribute, matched raw text, normalized value,
/// and the byte span of the raw text within the (apostrophe-normalized)
/// instance text.
#[derive(Debug, Clone, PartialEq)]
pub struct Disclosure {
    pub attribute: Attribute,
    pub rule_id: String,
    pub raw: String,
    pub value: DisclosedValue,
    pub span: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
enum NormalizerKind {
    AgeYears,
    AgeBare,
    BirthYear,
    Vocab,
    Occupation,
}

#[derive(Debug, Deserialize)]
struct RawRule {
    id: String,
    attribute: Attribute,
    normalizer: NormalizerKind,
    pattern: String,
}

#[derive(Debug, Deserialize)]
struct RulesFile {
    rules: Vec<RawRule>,
}

/// A compiled disclosure rule.
#[derive(Debug)]
pub struct DisclosureRule {
    pub id: String,
    pub attribute: Attribute,
    normalizer: NormalizerKind,
    regex: Regex,
}

/// Alias -> canonical label vocabulary with longest-prefix lookup over
/// whitespace-split words.
#[derive(Debug, Clone, Default)]
pub struct Vocabulary {
    map: HashMap<String, String>,
    max_words: usize,
}

impl Vocabulary {
    pub fn parse(content: &str) -> Result<Vocabulary, ConfigError> {
        let mut map = HashMap::new();
        let mut max_words = 1;
        for (i, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (alias, canonical) = line.split_once('\t').ok_or_else(|| {
                ConfigError::Rules(format!("vocabulary line {}: expected `alias<TAB>label`", i + 1))
            })?;
            let alias = alias.trim().to_lowercase();
            let canonical = canonical.trim().to_string();
            if alias.is_empty() || canonical.is_empty() {
                return Err(ConfigError::Rules(format!(
                    "vocabulary line {}: empty alias or label",
                    i + 1
                )));
            }
            max_words = max_words.max(alias.split_whitespace().count());
            map.insert(alias, canonical);
        }
        Ok(Vocabulary { map, max_words })
    }

    pub fn load(path: &Path) -> Result<Vocabulary, ConfigError> {
        let content = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Rules(format!("{}: {e}", path.display())))?;
        Vocabulary::parse(&content)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, alias: &str) -> Option<&str> {
        self.map.get(alias).map(String::as_str)
    }

    /// Longest word-prefix of `capture` present in the vocabulary. Words are
    /// whitespace-split with surrounding punctuation trimmed. Returns the
    /// canonical label and the matched word count.
    fn lookup_prefix(&self, capture: &str) -> Option<(String, usize)> {
        let words: Vec<&str> = capture
            .split_whitespace()
            .map(|w| w.trim_matches(|c: char| !c.is_alphanumeric()))
            .take(self.max_words)
            .collect();
        for n in (1..=words.len()).rev() {
            if words[n - 1].is_empty() {
                continue;
            }
            let key = words[..n].join(" ").to_lowercase();
            if let Some(label) = self.map.get(&key) {
                return Some((label.clone(), n));
            }
        }
        None
    }
}

/// All vocabularies the normalizers consult.
#[derive(Debug, Clone, Default)]
pub struct VocabularySet {
    pub gender: Vocabulary,
    pub religion: Vocabulary,
    pub country: Vocabulary,
    pub city: Vocabulary,
    /// Occupation title -> SOC code.
    pub occupation: Vocabulary,
}

/// Compiled rules plus vocabularies; immutable and shared across workers.
#[derive(Debug)]
pub struct RuleSet {
    rules: Vec<DisclosureRule>,
    prescreen: RegexSet,
    pub vocabs: VocabularySet,
}

impl RuleSet {
    /// The rules and vocabularies bundled under `data/demographics/`.
    pub fn builtin() -> RuleSet {
        let vocabs = VocabularySet {
            gender: Vocabulary::parse(include_str!("../data/demographics/gender.tsv")).unwrap(),
            religion: Vocabulary::parse(include_str!("../data/demographics/religion.tsv")).unwrap(),
            country: Vocabulary::parse(include_str!("../data/demographics/country.tsv")).unwrap(),
            city: Vocabulary::parse(include_str!("../data/demographics/city.tsv")).unwrap(),
            occupation: Vocabulary::parse(include_str!("../data/demographics/occupation_soc.tsv"))
                .unwrap(),
        };
        RuleSet::from_json(include_str!("../data/demographics/rules.json"), vocabs)
            .expect("bundled rules are valid")
    }

    pub fn load(rules_path: &Path, vocabs: VocabularySet) -> Result<RuleSet, ConfigError> {
        let content = std::fs::read_to_string(rules_path)
            .map_err(|e| ConfigError::Rules(format!("{}: {e}", rules_path.display())))?;
        RuleSet::from_json(&content, vocabs)
    }

    pub fn from_json(content: &str, vocabs: VocabularySet) -> Result<RuleSet, ConfigError> {
        let parsed: RulesFile = serde_json::from_str(content)
            .map_err(|e| ConfigError::Rules(format!("rules file: {e}")))?;
        if parsed.rules.is_empty() {
            return Err(ConfigError::Rules("rules file has no rules".into()));
        }
        let mut rules = Vec::with_capacity(parsed.rules.len());
        for raw in parsed.rules {
            let regex = RegexBuilder::new(&raw.pattern)
                .case_insensitive(true)
                .build()
                .map_err(|e| ConfigError::Rules(format!("rule {}: {e}", raw.id)))?;
            rules.push(DisclosureRule {
                id: raw.id,
                attribute: raw.attribute,
                normalizer: raw.normalizer,
                regex,
            });
        }
        let prescreen = RegexSetBuilder::new(rules.iter().map(|r| r.regex.as_str()))
            .case_insensitive(true)
            .build()
            .map_err(|e| ConfigError::Rules(format!("rule set: {e}")))?;
        Ok(RuleSet {
            rules,
            prescreen,
            vocabs,
        })
    }

    pub fn rules(&self) -> &[DisclosureRule] {
        &self.rules
    }

    fn vocab_for(&self, attr: Attribute) -> &Vocabulary {
        match attr {
            Attribute::Gender => &self.vocabs.gender,
            Attribute::Religion => &self.vocabs.religion,
            Attribute::Country => &self.vocabs.country,
            Attribute::City => &self.vocabs.city,
            Attribute::Occupation | Attribute::Age => &self.vocabs.occupation,
        }
    }
}

fn normalize_age(digits: &str) -> Option<u32> {
    let age: u32 = digits.parse().ok()?;
    (AGE_MIN..=AGE_MAX).contains(&age).then_some(age)
}

/// Extract at most one disclosure per attribute: the leftmost match whose
/// normalizer succeeds, ties broken by rule order in the rules file.
pub fn extract_disclosures(text: &str, rules: &RuleSet) -> Vec<Disclosure> {
    let text = text.replace('\u{2019}', "'");
    let active = rules.prescreen.matches(&text);
    if !active.matched_any() {
        return Vec::new();
    }

    let mut best: HashMap<Attribute, (usize, usize, Disclosure)> = HashMap::new();
    for (rule_idx, rule) in rules.rules.iter().enumerate() {
        if !active.matched(rule_idx) {
            continue;
        }
        for caps in rule.regex.captures_iter(&text) {
            let Some(disclosure) = normalize_capture(rule, &caps, rules) else {
                continue;
            };
            let start = disclosure.span.0;
            let slot = best.entry(rule.attribute).or_insert_with(|| {
                (start, rule_idx, disclosure.clone())
            });
            if (start, rule_idx) < (slot.0, slot.1) {
                *slot = (start, rule_idx, disclosure);
            }
            break; // later matches of the same rule cannot be more leftmost
        }
    }

    let mut out: Vec<Disclosure> = best.into_values().map(|(_, _, d)| d).collect();
    out.sort_by_key(|d| Attribute::ALL.iter().position(|a| *a == d.attribute));
    out
}

fn normalize_capture(
    rule: &DisclosureRule,
    caps: &regex::Captures<'_>,
    rules: &RuleSet,
) -> Option<Disclosure> {
    let group = caps.get(1)?;
    let capture = group.as_str();
    let (value, raw, span) = match rule.normalizer {
        NormalizerKind::AgeYears => {
            let age = normalize_age(capture)?;
            (
                DisclosedValue::AgeYears(age),
                capture.to_string(),
                (group.start(), group.end()),
            )
        }
        NormalizerKind::AgeBare => {
            if let Some(next) = caps.get(2) {
                let next = next.as_str().to_lowercase();
                if UNIT_WORDS.contains(&next.as_str()) {
                    return None;
                }
            }
            let age = normalize_age(capture)?;
            (
                DisclosedValue::AgeYears(age),
                capture.to_string(),
                (group.start(), group.end()),
            )
        }
        NormalizerKind::BirthYear => {
            let year: i32 = capture.parse().ok()?;
            if !(1850..=2100).contains(&year) {
                return None;
            }
            (
                DisclosedValue::BirthYear(year),
                capture.to_string(),
                (group.start(), group.end()),
            )
        }
        NormalizerKind::Vocab => {
            let vocab = rules.vocab_for(rule.attribute);
            let (label, n_words) = vocab.lookup_prefix(capture)?;
            let (raw, end) = prefix_slice(capture, n_words);
            (
                DisclosedValue::Label(label),
                raw.to_string(),
                (group.start(), group.start() + end),
            )
        }
        NormalizerKind::Occupation => {
            let (soc, n_words) = rules.vocabs.occupation.lookup_prefix(capture)?;
            let (raw, end) = prefix_slice(capture, n_words);
            (
                DisclosedValue::Occupation {
                    title: raw.to_lowercase(),
                    soc,
                },
                raw.to_string(),
                (group.start(), group.start() + end),
            )
        }
    };
    Some(Disclosure {
        attribute: rule.attribute,
        rule_id: rule.id.clone(),
        raw,
        value,
        span,
    })
}

/// The slice of `capture` covering its first `n_words` whitespace-separated
/// words, and that slice's end offset.
fn prefix_slice(capture: &str, n_words: usize) -> (&str, usize) {
    let mut end = 0;
    let mut words = 0;
    let mut in_word = false;
    for (i, c) in capture.char_indices() {
        if c.is_whitespace() {
            if in_word {
                words += 1;
                if words == n_words {
                    break;
                }
                in_word = false;
            }
        } else {
            in_word = true;
            end = i + c.len_utf8();
        }
    }
    let slice = capture[..end].trim_end_matches(|c: char| !c.is_alphanumeric());
    (slice, slice.len())
}

/// How a profile knows a user's age.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum AgeBasis {
    /// "I am 24": valid as-is within a year of the disclosure, extrapolated
    /// by elapsed whole years otherwise.
    Disclosed { age: u32, at: Option<TimeRef> },
    /// "born in 1990": age is `post_year - birth_year`.
    BirthYear(i32),
}

/// Age at posting time from a disclosure basis. `Err` carries the reason the
/// age is absent (for the provenance note).
pub fn compute_age(basis: &AgeBasis, post: Option<TimeRef>) -> Result<u32, String> {
    let age = match basis {
        AgeBasis::BirthYear(birth) => {
            let post = post.ok_or("no post timestamp for birth-year age")?;
            i64::from(post.year()) - i64::from(*birth)
        }
        AgeBasis::Disclosed { age, at } => {
            let elapsed = match (at, post) {
                (Some(at), Some(post)) => elapsed_years(*at, post),
                // without both timestamps the disclosed age stands
                _ => 0,
            };
            i64::from(*age) + elapsed
        }
    };
    if (i64::from(AGE_MIN)..=i64::from(AGE_MAX)).contains(&age) {
        Ok(age as u32)
    } else {
        Err(format!("implausible age {age}"))
    }
}

/// Elapsed whole years between two time references. With two epoch
/// timestamps this is floor(delta / year); differences within one year count
/// as zero. Year-granularity references use calendar-year subtraction.
fn elapsed_years(from: TimeRef, to: TimeRef) -> i64 {
    match (from, to) {
        (TimeRef::Epoch(a), TimeRef::Epoch(b)) => {
            let delta = b - a;
            if delta.abs() <= YEAR_SECONDS {
                0
            } else {
                delta.div_euclid(YEAR_SECONDS)
            }
        }
        _ => {
            let delta = i64::from(to.year()) - i64::from(from.year());
            if delta.abs() <= 1 {
                0
            } else {
                delta
            }
        }
    }
}

/// Which rule fired, where, and whether later disclosures disagreed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub rule_id: String,
    pub raw: String,
    pub span: (usize, usize),
    /// Count of distinct conflicting values seen beyond the kept one.
    pub conflicts: u32,
    pub note: Option<String>,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rule={} span={}..{} raw={:?}",
            self.rule_id, self.span.0, self.span.1, self.raw
        )?;
        if self.conflicts > 0 {
            write!(f, " conflicts={}", self.conflicts)?;
        }
        if let Some(note) = &self.note {
            write!(f, " note={note}")?;
        }
        Ok(())
    }
}

/// One attribute slot inside a profile: the kept value plus merge bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct Kept {
    pub value: DisclosedValue,
    pub provenance: Provenance,
    /// Total order for earliest-wins: (epoch seconds or MAX, stream ordinal).
    order: (i64, u64),
    /// Distinct value renderings seen, for conflict counting.
    seen: BTreeSet<String>,
}

impl Kept {
    fn new(d: &Disclosure, at: Option<TimeRef>, seq: u64) -> Kept {
        let mut seen = BTreeSet::new();
        seen.insert(d.value.render());
        Kept {
            value: d.value.clone(),
            provenance: Provenance {
                rule_id: d.rule_id.clone(),
                raw: d.raw.clone(),
                span: d.span,
                conflicts: 0,
                note: None,
            },
            order: (at.map(|t| t.epoch()).unwrap_or(i64::MAX), seq),
            seen,
        }
    }

    fn absorb(&mut self, other: Kept) {
        if other.order < self.order {
            let seen = std::mem::take(&mut self.seen);
            let mut merged = other;
            merged.seen.extend(seen);
            *self = merged;
        } else {
            self.seen.extend(other.seen);
        }
        self.provenance.conflicts = (self.seen.len() - 1) as u32;
    }
}

/// Per-user attributes, each absent until disclosed.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DemographicProfile {
    pub user_id: Option<String>,
    pub age: Option<Kept>,
    pub gender: Option<Kept>,
    pub occupation: Option<Kept>,
    pub country: Option<Kept>,
    pub city: Option<Kept>,
    pub religion: Option<Kept>,
}

impl DemographicProfile {
    pub fn is_empty(&self) -> bool {
        self.age.is_none()
            && self.gender.is_none()
            && self.occupation.is_none()
            && self.country.is_none()
            && self.city.is_none()
            && self.religion.is_none()
    }

    pub fn slot(&self, attr: Attribute) -> Option<&Kept> {
        match attr {
            Attribute::Age => self.age.as_ref(),
            Attribute::Gender => self.gender.as_ref(),
            Attribute::Occupation => self.occupation.as_ref(),
            Attribute::Country => self.country.as_ref(),
            Attribute::City => self.city.as_ref(),
            Attribute::Religion => self.religion.as_ref(),
        }
    }

    fn slot_mut(&mut self, attr: Attribute) -> &mut Option<Kept> {
        match attr {
            Attribute::Age => &mut self.age,
            Attribute::Gender => &mut self.gender,
            Attribute::Occupation => &mut self.occupation,
            Attribute::Country => &mut self.country,
            Attribute::City => &mut self.city,
            Attribute::Religion => &mut self.religion,
        }
    }

    /// Fold one instance's disclosures in. `seq` is the instance's stream
    /// ordinal; it breaks timestamp ties so merging stays deterministic.
    pub fn observe(&mut self, disclosures: &[Disclosure], at: Option<TimeRef>, seq: u64) {
        for d in disclosures {
            let kept = Kept::new(d, at, seq);
            match self.slot_mut(d.attribute) {
                slot @ None => *slot = Some(kept),
                Some(existing) => existing.absorb(kept),
            }
        }
    }

    /// Merge another profile for the same user (associative and commutative
    /// under the (time, ordinal) order).
    pub fn merge(&mut self, other: DemographicProfile) {
        for attr in Attribute::ALL {
            if let Some(kept) = other.slot(attr).cloned() {
                match self.slot_mut(attr) {
                    slot @ None => *slot = Some(kept),
                    Some(existing) => existing.absorb(kept),
                }
            }
        }
    }

    /// The age basis, when an age disclosure exists.
    pub fn age_basis(&self, disclosure_time: impl Fn(&Kept) -> Option<TimeRef>) -> Option<AgeBasis> {
        let kept = self.age.as_ref()?;
        Some(match &kept.value {
            DisclosedValue::AgeYears(a) => AgeBasis::Disclosed {
                age: *a,
                at: disclosure_time(kept),
            },
            DisclosedValue::BirthYear(y) => AgeBasis::BirthYear(*y),
            _ => return None,
        })
    }
}

impl Kept {
    /// The disclosure's own timestamp (from the earliest-wins order), when
    /// it had one.
    pub fn disclosed_at(&self) -> Option<TimeRef> {
        (self.order.0 != i64::MAX).then_some(TimeRef::Epoch(self.order.0))
    }
}

/// Keyed reduction of disclosures into per-user profiles.
#[derive(Debug, Default)]
pub struct ProfileBuilder {
    profiles: HashMap<String, DemographicProfile>,
    /// Hits per rule id, for the run report.
    pub rule_hits: HashMap<String, u64>,
}

impl ProfileBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn observe(
        &mut self,
        user_id: &str,
        disclosures: &[Disclosure],
        at: Option<TimeRef>,
        seq: u64,
    ) {
        for d in disclosures {
            *self.rule_hits.entry(d.rule_id.clone()).or_insert(0) += 1;
        }
        if disclosures.is_empty() {
            return;
        }
        let profile = self
            .profiles
            .entry(user_id.to_string())
            .or_insert_with(|| DemographicProfile {
                user_id: Some(user_id.to_string()),
                ..Default::default()
            });
        profile.observe(disclosures, at, seq);
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    pub fn get(&self, user_id: &str) -> Option<&DemographicProfile> {
        self.profiles.get(user_id)
    }

    pub fn into_profiles(self) -> HashMap<String, DemographicProfile> {
        self.profiles
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rules() -> RuleSet {
        RuleSet::builtin()
    }

    fn one(text: &str, attr: Attribute) -> Option<Disclosure> {
        extract_disclosures(text, &rules())
            .into_iter()
            .find(|d| d.attribute == attr)
    }

    #[test]
    fn occupation_frame_maps_to_soc() {
        let d = one("I am a software engineer", Attribute::Occupation).unwrap();
        assert_eq!(d.raw, "software engineer");
        assert_eq!(
            d.value,
            DisclosedValue::Occupation {
                title: "software engineer".into(),
                soc: "15-1252".into()
            }
        );
    }

    #[test]
    fn third_person_frame_is_not_a_disclosure() {
        assert!(one("we hired an engineer last week", Attribute::Occupation).is_none());
        assert!(one("she is a nurse", Attribute::Occupation).is_none());
    }

    #[test]
    fn religion_normalizes_adherent_terms() {
        let d = one("I am an atheist", Attribute::Religion).unwrap();
        assert_eq!(d.value, DisclosedValue::Label("atheism".into()));
        let d = one("i was raised catholic", Attribute::Religion).unwrap();
        assert_eq!(d.value, DisclosedValue::Label("christianity".into()));
    }

    #[test]
    fn age_statement_with_units() {
        let d = one("I am 24 years old", Attribute::Age).unwrap();
        assert_eq!(d.value, DisclosedValue::AgeYears(24));
        assert_eq!(d.rule_id, "age_years_old");
    }

    #[test]
    fn bare_age_accepted_but_measurements_rejected() {
        assert_eq!(
            one("I am 24", Attribute::Age).unwrap().value,
            DisclosedValue::AgeYears(24)
        );
        assert!(one("I am 6 feet tall", Attribute::Age).is_none());
        assert!(one("I am 70 kg", Attribute::Age).is_none());
        assert!(one("I am 9000 years old", Attribute::Age).is_none());
    }

    #[test]
    fn birth_year_statement() {
        let d = one("I was born in 1990", Attribute::Age).unwrap();
        assert_eq!(d.value, DisclosedValue::BirthYear(1990));
    }

    #[test]
    fn country_vs_city_share_frames() {
        let d = one("I live in France", Attribute::Country).unwrap();
        assert_eq!(d.value, DisclosedValue::Label("France".into()));
        assert!(one("I live in France", Attribute::City).is_none());

        let d = one("I live in Paris", Attribute::City).unwrap();
        assert_eq!(d.value, DisclosedValue::Label("Paris".into()));
        assert!(one("I live in Paris", Attribute::Country).is_none());
    }

    #[test]
    fn gender_disclosure() {
        let d = one("I am a trans woman btw", Attribute::Gender).unwrap();
        assert_eq!(d.value, DisclosedValue::Label("trans woman".into()));
        assert_eq!(d.raw, "trans woman");
        assert!(one("I am a manager", Attribute::Gender).is_none());
    }

    #[test]
    fn first_match_wins_within_attribute() {
        let d = one("I am a nurse and I work as a teacher", Attribute::Occupation).unwrap();
        assert_eq!(d.raw, "nurse");
    }

    #[test]
    fn no_match_yields_empty_list() {
        assert!(extract_disclosures("nothing personal here", &rules()).is_empty());
    }

    #[test]
    fn age_direct_and_extrapolated() {
        let basis = AgeBasis::Disclosed {
            age: 24,
            at: Some(TimeRef::Year(2020)),
        };
        assert_eq!(compute_age(&basis, Some(TimeRef::Year(2020))), Ok(24));
        // +-1 year counts as current
        assert_eq!(compute_age(&basis, Some(TimeRef::Year(2021))), Ok(24));
        let basis = AgeBasis::Disclosed {
            age: 24,
            at: Some(TimeRef::Year(2018)),
        };
        assert_eq!(compute_age(&basis, Some(TimeRef::Year(2021))), Ok(27));
    }

    #[test]
    fn age_from_birth_year() {
        assert_eq!(
            compute_age(&AgeBasis::BirthYear(1990), Some(TimeRef::Year(2015))),
            Ok(25)
        );
        assert!(compute_age(&AgeBasis::BirthYear(2014), Some(TimeRef::Year(2015))).is_err());
    }

    #[test]
    fn epoch_elapsed_years() {
        let year = 31_557_600i64;
        let basis = AgeBasis::Disclosed {
            age: 30,
            at: Some(TimeRef::Epoch(0)),
        };
        assert_eq!(compute_age(&basis, Some(TimeRef::Epoch(year / 2))), Ok(30));
        assert_eq!(compute_age(&basis, Some(TimeRef::Epoch(3 * year + 1))), Ok(33));
        // posts earlier than the disclosure extrapolate backwards
        assert_eq!(compute_age(&basis, Some(TimeRef::Epoch(-2 * year - 1))), Ok(28));
    }

    #[test]
    fn earliest_disclosure_wins_and_conflicts_noted() {
        let rules = rules();
        let mut builder = ProfileBuilder::new();
        let later = extract_disclosures("I am a woman", &rules);
        let earlier = extract_disclosures("I am a man", &rules);
        builder.observe("u1", &later, Some(TimeRef::Epoch(2_000_000)), 1);
        builder.observe("u1", &earlier, Some(TimeRef::Epoch(1_000_000)), 2);
        let p = builder.get("u1").unwrap();
        let kept = p.gender.as_ref().unwrap();
        assert_eq!(kept.value, DisclosedValue::Label("man".into()));
        assert_eq!(kept.provenance.conflicts, 1);
    }

    #[test]
    fn merge_is_order_insensitive() {
        let rules = rules();
        let d1 = extract_disclosures("I am a teacher", &rules);
        let d2 = extract_disclosures("I am a nurse", &rules);
        let d3 = extract_disclosures("I am a pilot", &rules);

        let mk = |d: &[Disclosure], t: i64, seq: u64| {
            let mut p = DemographicProfile::default();
            p.observe(d, Some(TimeRef::Epoch(t)), seq);
            p
        };
        let (a, b, c) = (mk(&d1, 30, 3), mk(&d2, 10, 1), mk(&d3, 20, 2));

        let mut left = a.clone();
        left.merge(b.clone());
        left.merge(c.clone());

        let mut right = c;
        right.merge(a);
        right.merge(b);

        assert_eq!(left, right);
        assert_eq!(
            left.occupation.as_ref().unwrap().provenance.conflicts,
            2,
            "two conflicting values beyond the kept one"
        );
        assert!(matches!(
            &left.occupation.as_ref().unwrap().value,
            DisclosedValue::Occupation { title, .. } if title == "nurse"
        ));
    }

    #[test]
    fn users_do_not_leak_into_each_other() {
        let rules = rules();
        let mut builder = ProfileBuilder::new();
        let d = extract_disclosures("I am a nurse", &rules);
        builder.observe("u1", &d, None, 0);
        assert!(builder.get("u2").is_none());
        assert!(builder.get("u1").unwrap().occupation.is_some());
        assert!(builder.get("u1").unwrap().gender.is_none(), "absent stays absent");
    }

    #[test]
    fn provenance_renders_rule_and_span() {
        let d = one("I am a software engineer", Attribute::Occupation).unwrap();
        let mut p = DemographicProfile::default();
        p.observe(&[d], None, 0);
        let s = p.occupation.unwrap().provenance.to_string();
        assert!(s.contains("rule=occ_i_am"));
        assert!(s.contains("software engineer"));
    }
}
