//! Text normalization and token stream production.
//!
//! One tokenizer is shared by every source (tweets, posts, book n-grams, blog
//! entries, AI generations) so that densities and match counts stay comparable
//! across corpora.
//!
//! Token classes:
//!
//! | class   | surface shape                      | token text  | matchable | in word count |
//! |---------|------------------------------------|-------------|-----------|---------------|
//! | word    | alphanumeric run, internal `'`/`’` | lowercased  | yes       | yes           |
//! | url     | `http://`, `https://`, `www.` ...  | `<url>`     | no        | no            |
//! | mention | `@` + alphanumeric/underscore run  | `<mention>` | no        | no            |
//! | hashtag | `#` + letter-initial run           | `<hashtag>` | no        | no            |
//!
//! Numbers tokenize as ordinary words. Punctuation is dropped, except
//! apostrophes kept word-internal (`don't` stays one token). Url, mention and
//! hashtag tokens are "reserved": they never match a lexicon phrase and are
//! excluded from the word count that densities divide by.

use std::str::Utf8Error;

pub const URL_TOKEN: &str = "<url>";
pub const MENTION_TOKEN: &str = "<mention>";
pub const HASHTAG_TOKEN: &str = "<hashtag>";

/// Class of a produced token. Reserved classes are excluded from lexicon
/// matching and from the word-count denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Word,
    Url,
    Mention,
    Hashtag,
}

impl TokenKind {
    pub fn is_reserved(self) -> bool {
        !matches!(self, TokenKind::Word)
    }
}

/// Normalized tokens plus byte spans into the original text.
///
/// Spans are non-overlapping and strictly increasing; lowercasing the span's
/// substring reproduces the token, except for reserved-class placeholders.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TokenSequence {
    pub tokens: Vec<String>,
    pub spans: Vec<(usize, usize)>,
    pub kinds: Vec<TokenKind>,
}

impl TokenSequence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Count of non-reserved tokens; the denominator for density features.
    pub fn word_count(&self) -> usize {
        self.kinds.iter().filter(|k| !k.is_reserved()).count()
    }

    pub fn is_reserved(&self, idx: usize) -> bool {
        self.kinds[idx].is_reserved()
    }

    fn push(&mut self, token: String, span: (usize, usize), kind: TokenKind) {
        self.tokens.push(token);
        self.spans.push(span);
        self.kinds.push(kind);
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

fn starts_url(rest: &str) -> bool {
    let lower = rest.get(..8).unwrap_or(rest);
    let lower = lower.to_ascii_lowercase();
    lower.starts_with("http://") || lower.starts_with("https://") || lower.starts_with("www.")
}

/// Tokenize a text into normalized tokens.
///
/// Deterministic; the empty string yields an empty sequence.
pub fn tokenize(text: &str) -> TokenSequence {
    let mut seq = TokenSequence::default();
    let bytes = text.as_bytes();
    let mut chars = text.char_indices().peekable();

    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }

        let rest = &text[start..];
        if starts_url(rest) {
            let mut end = start;
            for (i, ch) in rest.char_indices() {
                if ch.is_whitespace() {
                    break;
                }
                end = start + i + ch.len_utf8();
            }
            while let Some(&(i, _)) = chars.peek() {
                if i >= end {
                    break;
                }
                chars.next();
            }
            seq.push(URL_TOKEN.to_string(), (start, end), TokenKind::Url);
            continue;
        }

        if c == '@' || c == '#' {
            let mut tail = chars.clone();
            tail.next();
            let lead_ok = match tail.peek() {
                Some(&(_, n)) if c == '@' => n.is_alphanumeric() || n == '_',
                Some(&(_, n)) => n.is_alphabetic(),
                None => false,
            };
            if lead_ok {
                chars.next();
                let mut end = start + c.len_utf8();
                while let Some(&(i, n)) = chars.peek() {
                    if n.is_alphanumeric() || n == '_' {
                        end = i + n.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                let (token, kind) = if c == '@' {
                    (MENTION_TOKEN, TokenKind::Mention)
                } else {
                    (HASHTAG_TOKEN, TokenKind::Hashtag)
                };
                seq.push(token.to_string(), (start, end), kind);
                continue;
            }
            chars.next();
            continue;
        }

        if is_word_char(c) {
            let mut end = start;
            let mut token = String::new();
            while let Some(&(i, n)) = chars.peek() {
                if is_word_char(n) {
                    token.extend(n.to_lowercase());
                    end = i + n.len_utf8();
                    chars.next();
                } else if is_apostrophe(n) && end == i && i > start {
                    // keep apostrophes only between word characters
                    let mut tail = chars.clone();
                    tail.next();
                    match tail.peek() {
                        Some(&(_, after)) if is_word_char(after) => {
                            token.push('\'');
                            end = i + n.len_utf8();
                            chars.next();
                        }
                        _ => break,
                    }
                } else {
                    break;
                }
            }
            debug_assert!(end <= bytes.len());
            seq.push(token, (start, end), TokenKind::Word);
            continue;
        }

        // bare punctuation: dropped
        chars.next();
    }

    seq
}

/// Tokenize raw bytes, surfacing invalid UTF-8 so the caller can decide
/// between skipping the record and aborting the stream.
pub fn tokenize_bytes(bytes: &[u8]) -> Result<TokenSequence, Utf8Error> {
    std::str::from_utf8(bytes).map(tokenize)
}

/// Contiguous n-token windows, single-space-joined, with their start index.
pub fn ngrams(seq: &TokenSequence, n: usize) -> Vec<(String, usize)> {
    assert!((1..=3).contains(&n), "n must be in 1..=3");
    if seq.len() < n {
        return Vec::new();
    }
    (0..=seq.len() - n)
        .map(|i| (seq.tokens[i..i + n].join(" "), i))
        .collect()
}

/// Count of non-reserved tokens in a text.
pub fn word_count(text: &str) -> usize {
    tokenize(text).word_count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(text: &str) -> Vec<String> {
        tokenize(text).tokens
    }

    #[test]
    fn lowercases_and_strips_punctuation() {
        assert_eq!(toks("My heart aches."), vec!["my", "heart", "aches"]);
    }

    #[test]
    fn empty_text_yields_empty_sequence() {
        let seq = tokenize("");
        assert!(seq.is_empty());
        assert_eq!(word_count(""), 0);
    }

    #[test]
    fn urls_mentions_hashtags_become_reserved_tokens() {
        let seq = tokenize("I'm 24, see https://x.co");
        assert_eq!(seq.tokens, vec!["i'm", "24", "see", "<url>"]);
        assert_eq!(seq.kinds[3], TokenKind::Url);
        assert!(seq.is_reserved(3));
        assert!(!seq.is_reserved(0));

        let seq = tokenize("go @user go #Happy");
        assert_eq!(seq.tokens, vec!["go", "<mention>", "go", "<hashtag>"]);
        assert_eq!(seq.kinds[1], TokenKind::Mention);
        assert_eq!(seq.kinds[3], TokenKind::Hashtag);
    }

    #[test]
    fn word_count_excludes_reserved_tokens() {
        assert_eq!(word_count("one two three four"), 4);
        assert_eq!(word_count("go @user go"), 2);
        assert_eq!(word_count("see https://x.co #tag"), 1);
    }

    #[test]
    fn apostrophes_kept_word_internal() {
        assert_eq!(toks("don't stop"), vec!["don't", "stop"]);
        assert_eq!(toks("I'll go"), vec!["i'll", "go"]);
        // trailing and leading apostrophes are punctuation
        assert_eq!(toks("the boys' dog"), vec!["the", "boys", "dog"]);
        assert_eq!(toks("'tis fine"), vec!["tis", "fine"]);
        // curly apostrophe normalized to straight
        assert_eq!(toks("don\u{2019}t"), vec!["don't"]);
    }

    #[test]
    fn spans_recover_tokens() {
        let text = "My heart, @you https://a.io DON'T";
        let seq = tokenize(text);
        for (i, (start, end)) in seq.spans.iter().enumerate() {
            assert!(start < end);
            if i > 0 {
                assert!(seq.spans[i - 1].1 <= *start, "spans must be increasing");
            }
            if !seq.is_reserved(i) {
                let sub = text[*start..*end].to_lowercase().replace('\u{2019}', "'");
                assert_eq!(sub, seq.tokens[i]);
            }
        }
    }

    #[test]
    fn ngram_windows() {
        let seq = tokenize("a b c");
        assert_eq!(
            ngrams(&seq, 2),
            vec![("a b".to_string(), 0), ("b c".to_string(), 1)]
        );
        assert_eq!(ngrams(&tokenize("a"), 2), vec![]);
        assert_eq!(ngrams(&seq, 1).len(), 3);
        assert_eq!(ngrams(&seq, 3), vec![("a b c".to_string(), 0)]);
    }

    #[test]
    fn hashtag_requires_letter() {
        // '#' before a digit is plain punctuation
        assert_eq!(toks("#123 win"), vec!["123", "win"]);
    }

    #[test]
    fn tokenize_bytes_rejects_invalid_utf8() {
        assert!(tokenize_bytes(&[0xff, 0xfe]).is_err());
        assert_eq!(tokenize_bytes(b"ok go").unwrap().tokens, vec!["ok", "go"]);
    }

    #[test]
    fn unicode_words() {
        assert_eq!(toks("Café ÜBER naïve"), vec!["café", "über", "naïve"]);
    }
}
