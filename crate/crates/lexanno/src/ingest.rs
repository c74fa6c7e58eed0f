//! Streaming source adapters: turn raw corpus files into `TextInstance`
//! streams, applying each source's instance definition and filters.
//!
//! Adapters never materialize the whole corpus; they read line by line and
//! keep bounded memory. Gzip-compressed inputs (`.gz`) are decoded
//! transparently. Malformed records are skipped with a counter, never
//! aborting the stream, so `records_read = records_ok + records_skipped`
//! holds for every adapter.

use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use chrono::{Datelike, TimeZone, Utc};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::PipelineError;
use crate::tokenize::word_count;

/// Reddit posts are kept only when `5 <= words <= 1000`.
pub const REDDIT_MIN_WORDS: usize = 5;
pub const REDDIT_MAX_WORDS: usize = 1000;

/// A point in time at whatever granularity the source provides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TimeRef {
    /// Epoch seconds, UTC.
    Epoch(i64),
    /// Calendar year only (book n-grams).
    Year(i32),
}

impl TimeRef {
    pub fn year(&self) -> i32 {
        match self {
            TimeRef::Epoch(s) => Utc
                .timestamp_opt(*s, 0)
                .single()
                .map(|dt| dt.year())
                .unwrap_or(1970),
            TimeRef::Year(y) => *y,
        }
    }

    /// Epoch seconds; years anchor to Jan 1 UTC.
    pub fn epoch(&self) -> i64 {
        match self {
            TimeRef::Epoch(s) => *s,
            TimeRef::Year(y) => Utc
                .with_ymd_and_hms(*y, 1, 1, 0, 0, 0)
                .single()
                .map(|dt| dt.timestamp())
                .unwrap_or(0),
        }
    }
}

/// One unit of annotatable text plus source metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TextInstance {
    pub instance_id: String,
    pub source: String,
    pub text: String,
    pub time: Option<TimeRef>,
    pub user_id: Option<String>,
    /// Source-specific metadata (5-gram match counts, turn indices, model
    /// names, preference labels).
    pub extra: serde_json::Map<String, Value>,
}

/// FNV-1a; stable across runs and platforms, unlike the std hasher.
fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Stable instance id from the source label and the record's native id (or
/// its row ordinal when the source has none).
pub fn instance_id(source: &str, native: &str) -> String {
    let mut buf = Vec::with_capacity(source.len() + native.len() + 1);
    buf.extend_from_slice(source.as_bytes());
    buf.push(0x1f);
    buf.extend_from_slice(native.as_bytes());
    format!("{:016x}", fnv1a64(&buf))
}

/// Shared skip/emit counters; cheap to clone into the run report.
#[derive(Debug, Default)]
pub struct Counters {
    pub records_read: AtomicU64,
    pub records_ok: AtomicU64,
    pub records_skipped: AtomicU64,
    pub instances_emitted: AtomicU64,
}

impl Counters {
    pub fn snapshot(&self) -> CounterSnapshot {
        CounterSnapshot {
            records_read: self.records_read.load(Ordering::Relaxed),
            records_ok: self.records_ok.load(Ordering::Relaxed),
            records_skipped: self.records_skipped.load(Ordering::Relaxed),
            instances_emitted: self.instances_emitted.load(Ordering::Relaxed),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CounterSnapshot {
    pub records_read: u64,
    pub records_ok: u64,
    pub records_skipped: u64,
    pub instances_emitted: u64,
}

impl CounterSnapshot {
    /// `records_read = records_ok + records_skipped` must hold for every
    /// adapter.
    pub fn conserved(&self) -> bool {
        self.records_read == self.records_ok + self.records_skipped
    }
}

/// The five structural kinds of AI-generation datasets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConversationKind {
    /// One instance per assistant turn of a conversation list.
    Chat,
    /// One instance per generation of a (chosen, rejected) pair.
    Preference,
    /// One instance per generation (detection corpora).
    Detection,
    /// Chain-of-thought text only; the final answer is discarded.
    Reasoning,
    /// One instance per story.
    Narrative,
}

/// JSON field names an adapter reads; every field has a default matching the
/// documented schema and can be remapped per dataset.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct FieldMap {
    pub text: String,
    pub id: String,
    pub user: String,
    pub timestamp: String,
    pub year: String,
    /// chat adapters: the conversation list and its per-turn keys
    pub conversation: String,
    pub role: String,
    pub content: String,
    pub assistant_role: String,
    /// preference adapters
    pub chosen: String,
    pub rejected: String,
    /// reasoning adapters
    pub cot: String,
    pub model: String,
}

impl Default for FieldMap {
    fn default() -> Self {
        FieldMap {
            text: "text".into(),
            id: "id".into(),
            user: "author".into(),
            timestamp: "created_utc".into(),
            year: "year".into(),
            conversation: "conversation".into(),
            role: "role".into(),
            content: "content".into(),
            assistant_role: "assistant".into(),
            chosen: "chosen".into(),
            rejected: "rejected".into(),
            cot: "cot".into(),
            model: "model".into(),
        }
    }
}

fn open_lines(path: &Path) -> Result<Box<dyn BufRead + Send>, PipelineError> {
    let file = File::open(path).map_err(|source| PipelineError::Input {
        path: path.to_path_buf(),
        source,
    })?;
    let reader: Box<dyn Read + Send> = if path.extension().is_some_and(|e| e == "gz") {
        Box::new(flate2::read::GzDecoder::new(file))
    } else {
        Box::new(file)
    };
    Ok(Box::new(BufReader::new(reader)))
}

fn str_field<'a>(record: &'a Value, key: &str) -> Option<&'a str> {
    record.get(key).and_then(Value::as_str)
}

fn flag_field(record: &Value, key: &str) -> bool {
    match record.get(key) {
        None | Some(Value::Null) => false,
        Some(Value::Bool(b)) => *b,
        // any non-null media object counts as "has media"
        Some(_) => true,
    }
}

/// Parse a timestamp value: epoch seconds (number) or ISO-8601 string.
fn parse_time(value: &Value) -> Option<TimeRef> {
    match value {
        Value::Number(n) => n.as_i64().map(TimeRef::Epoch),
        Value::String(s) => {
            if let Ok(n) = s.parse::<i64>() {
                return Some(TimeRef::Epoch(n));
            }
            chrono::DateTime::parse_from_rfc3339(s)
                .ok()
                .map(|dt| TimeRef::Epoch(dt.timestamp()))
        }
        _ => None,
    }
}

type InstanceIter = Box<dyn Iterator<Item = TextInstance> + Send>;

/// A running adapter: the instance stream plus its shared counters.
pub struct IngestStream {
    pub instances: InstanceIter,
    pub counters: Arc<Counters>,
}

struct LineReader {
    lines: Box<dyn BufRead + Send>,
    counters: Arc<Counters>,
    ordinal: u64,
}

impl LineReader {
    fn next_line(&mut self) -> Option<(u64, String)> {
        let mut buf = Vec::new();
        loop {
            buf.clear();
            match self.lines.read_until(b'\n', &mut buf) {
                Ok(0) => return None,
                Ok(_) => {
                    let ordinal = self.ordinal;
                    self.ordinal += 1;
                    if buf.last() == Some(&b'\n') {
                        buf.pop();
                        if buf.last() == Some(&b'\r') {
                            buf.pop();
                        }
                    }
                    if buf.is_empty() {
                        continue; // blank lines are not records
                    }
                    self.counters.records_read.fetch_add(1, Ordering::Relaxed);
                    match String::from_utf8(buf.clone()) {
                        Ok(s) => return Some((ordinal, s)),
                        Err(_) => {
                            self.counters.records_skipped.fetch_add(1, Ordering::Relaxed);
                            continue;
                        }
                    }
                }
                Err(_) => return None,
            }
        }
    }
}

fn line_reader(path: &Path, counters: Arc<Counters>) -> Result<LineReader, PipelineError> {
    Ok(LineReader {
        lines: open_lines(path)?,
        counters,
        ordinal: 0,
    })
}

/// Adapter over newline-delimited JSON with a field mapping; also serves the
/// twitter and blogs sources, which carry no extra filtering.
pub fn ingest_generic_jsonl(
    path: &Path,
    source: &str,
    fields: &FieldMap,
) -> Result<IngestStream, PipelineError> {
    let counters = Arc::new(Counters::default());
    let mut reader = line_reader(path, Arc::clone(&counters))?;
    let c = Arc::clone(&counters);
    let source = source.to_string();
    let fields = fields.clone();

    let iter = std::iter::from_fn(move || loop {
        let (ordinal, line) = reader.next_line()?;
        let Ok(record) = serde_json::from_str::<Value>(&line) else {
            c.records_skipped.fetch_add(1, Ordering::Relaxed);
            continue;
        };
        let Some(text) = str_field(&record, &fields.text).filter(|t| !t.trim().is_empty()) else {
            c.records_skipped.fetch_add(1, Ordering::Relaxed);
            continue;
        };
        let native = str_field(&record, &fields.id)
            .map(str::to_string)
            .unwrap_or_else(|| ordinal.to_string());
        let time = record
            .get(&fields.timestamp)
            .and_then(parse_time)
            .or_else(|| {
                record
                    .get(&fields.year)
                    .and_then(Value::as_i64)
                    .map(|y| TimeRef::Year(y as i32))
            });
        let instance = TextInstance {
            instance_id: instance_id(&source, &native),
            source: source.clone(),
            text: text.to_string(),
            time,
            user_id: str_field(&record, &fields.user).map(str::to_string),
            extra: serde_json::Map::new(),
        };
        c.records_ok.fetch_add(1, Ordering::Relaxed);
        c.instances_emitted.fetch_add(1, Ordering::Relaxed);
        return Some(instance);
    });

    Ok(IngestStream {
        instances: Box::new(iter),
        counters,
    })
}

/// Reddit posts: drop adult, promoted, and media posts, and anything outside
/// the 5..=1000 word bounds; each surviving post is one instance.
pub fn ingest_reddit(path: &Path, fields: &FieldMap) -> Result<IngestStream, PipelineError> {
    let counters = Arc::new(Counters::default());
    let mut reader = line_reader(path, Arc::clone(&counters))?;
    let c = Arc::clone(&counters);
    let fields = fields.clone();

    let iter = std::iter::from_fn(move || loop {
        let (ordinal, line) = reader.next_line()?;
        let Ok(record) = serde_json::from_str::<Value>(&line) else {
            c.records_skipped.fetch_add(1, Ordering::Relaxed);
            continue;
        };
        let Some(text) = str_field(&record, &fields.text).filter(|t| !t.trim().is_empty()) else {
            c.records_skipped.fetch_add(1, Ordering::Relaxed);
            continue;
        };
        if flag_field(&record, "over_18")
            || flag_field(&record, "promoted")
            || flag_field(&record, "media")
        {
            c.records_skipped.fetch_add(1, Ordering::Relaxed);
            continue;
        }
        let words = word_count(text);
        if !(REDDIT_MIN_WORDS..=REDDIT_MAX_WORDS).contains(&words) {
            c.records_skipped.fetch_add(1, Ordering::Relaxed);
            continue;
        }
        let native = str_field(&record, &fields.id)
            .map(str::to_string)
            .unwrap_or_else(|| ordinal.to_string());
        let instance = TextInstance {
            instance_id: instance_id("reddit", &native),
            source: "reddit".to_string(),
            text: text.to_string(),
            time: record.get(&fields.timestamp).and_then(parse_time),
            user_id: str_field(&record, &fields.user).map(str::to_string),
            extra: serde_json::Map::new(),
        };
        c.records_ok.fetch_add(1, Ordering::Relaxed);
        c.instances_emitted.fetch_add(1, Ordering::Relaxed);
        return Some(instance);
    });

    Ok(IngestStream {
        instances: Box::new(iter),
        counters,
    })
}

/// Book 5-grams: `ngram<TAB>year<TAB>match_count<TAB>volume_count`, one
/// instance per row. The match count rides along in `extra` for optional
/// frequency weighting.
pub fn ingest_books_5grams(path: &Path) -> Result<IngestStream, PipelineError> {
    let counters = Arc::new(Counters::default());
    let mut reader = line_reader(path, Arc::clone(&counters))?;
    let c = Arc::clone(&counters);

    let iter = std::iter::from_fn(move || loop {
        let (ordinal, line) = reader.next_line()?;
        let mut cols = line.split('\t');
        let (Some(ngram), Some(year), Some(match_count), Some(volume_count)) =
            (cols.next(), cols.next(), cols.next(), cols.next())
        else {
            c.records_skipped.fetch_add(1, Ordering::Relaxed);
            continue;
        };
        let (Ok(year), Ok(match_count), Ok(volume_count)) = (
            year.trim().parse::<i32>(),
            match_count.trim().parse::<u64>(),
            volume_count.trim().parse::<u64>(),
        ) else {
            c.records_skipped.fetch_add(1, Ordering::Relaxed);
            continue;
        };
        if ngram.trim().is_empty() {
            c.records_skipped.fetch_add(1, Ordering::Relaxed);
            continue;
        }
        let mut extra = serde_json::Map::new();
        extra.insert("match_count".into(), match_count.into());
        extra.insert("volume_count".into(), volume_count.into());
        let native = format!("{ordinal}");
        let instance = TextInstance {
            instance_id: instance_id("books", &native),
            source: "books".to_string(),
            text: ngram.to_string(),
            time: Some(TimeRef::Year(year)),
            user_id: None,
            extra,
        };
        c.records_ok.fetch_add(1, Ordering::Relaxed);
        c.instances_emitted.fetch_add(1, Ordering::Relaxed);
        return Some(instance);
    });

    Ok(IngestStream {
        instances: Box::new(iter),
        counters,
    })
}

/// AI-generation datasets, by structural kind. Field names come from the
/// field map so one adapter covers each dataset family.
pub fn ingest_conversations(
    path: &Path,
    kind: ConversationKind,
    source: &str,
    fields: &FieldMap,
) -> Result<IngestStream, PipelineError> {
    let counters = Arc::new(Counters::default());
    let mut reader = line_reader(path, Arc::clone(&counters))?;
    let c = Arc::clone(&counters);
    let source = source.to_string();
    let fields = fields.clone();
    let mut pending: Vec<TextInstance> = Vec::new();

    let iter = std::iter::from_fn(move || loop {
        if let Some(instance) = pending.pop() {
            c.instances_emitted.fetch_add(1, Ordering::Relaxed);
            return Some(instance);
        }
        let (ordinal, line) = reader.next_line()?;
        let Ok(record) = serde_json::from_str::<Value>(&line) else {
            c.records_skipped.fetch_add(1, Ordering::Relaxed);
            continue;
        };
        let native = str_field(&record, &fields.id)
            .map(str::to_string)
            .unwrap_or_else(|| ordinal.to_string());
        let time = record.get(&fields.timestamp).and_then(parse_time);
        let model = str_field(&record, &fields.model).map(str::to_string);
        let mut out: Vec<TextInstance> = Vec::new();
        let mut push = |text: &str, suffix: String, extra: serde_json::Map<String, Value>| {
            if text.trim().is_empty() {
                return;
            }
            let mut extra = extra;
            if let Some(m) = &model {
                extra.insert("model".into(), Value::String(m.clone()));
            }
            out.push(TextInstance {
                instance_id: instance_id(&source, &format!("{native}/{suffix}")),
                source: source.clone(),
                text: text.to_string(),
                time,
                user_id: None,
                extra,
            });
        };

        match kind {
            ConversationKind::Chat => {
                if let Some(turns) = record.get(&fields.conversation).and_then(Value::as_array) {
                    for (i, turn) in turns.iter().enumerate() {
                        if str_field(turn, &fields.role) == Some(fields.assistant_role.as_str()) {
                            if let Some(content) = str_field(turn, &fields.content) {
                                let mut extra = serde_json::Map::new();
                                extra.insert("turn_index".into(), (i as u64).into());
                                push(content, format!("turn{i}"), extra);
                            }
                        }
                    }
                }
            }
            ConversationKind::Preference => {
                for (key, label) in [(&fields.chosen, "chosen"), (&fields.rejected, "rejected")] {
                    if let Some(text) = str_field(&record, key) {
                        let mut extra = serde_json::Map::new();
                        extra.insert("preference".into(), Value::String(label.into()));
                        push(text, label.to_string(), extra);
                    }
                }
            }
            ConversationKind::Detection | ConversationKind::Narrative => {
                if let Some(text) = str_field(&record, &fields.text) {
                    push(text, "0".into(), serde_json::Map::new());
                }
            }
            ConversationKind::Reasoning => {
                // chain-of-thought only; the final answer is discarded
                if let Some(cot) = str_field(&record, &fields.cot) {
                    push(cot, "cot".into(), serde_json::Map::new());
                }
            }
        }

        if out.is_empty() {
            c.records_skipped.fetch_add(1, Ordering::Relaxed);
            continue;
        }
        c.records_ok.fetch_add(1, Ordering::Relaxed);
        out.reverse(); // pending pops from the back
        pending = out;
    });

    Ok(IngestStream {
        instances: Box::new(iter),
        counters,
    })
}
