//! Tokenized text model and corpus I/O.
//!
//! Input is one sentence per line, UTF-8, LF line endings. Document
//! boundaries come either from blank lines or from a sidecar TSV of
//! `doc_id<TAB>first_line<TAB>line_count` records (0-based first_line).

use std::io::BufRead;
use std::path::Path;

use crate::error::{Error, Result};

/// Characters that always split into their own single-character token.
const SPLIT_PUNCT: [char; 9] = ['.', ',', ';', ':', '!', '?', '"', '(', ')'];

/// One word unit of a sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    /// Original form, never containing whitespace.
    pub surface: String,
    /// Lowercased match key.
    pub norm: String,
    /// 0-based position within the sentence.
    pub index: usize,
}

impl Token {
    pub fn new(surface: impl Into<String>, index: usize) -> Self {
        let surface = surface.into();
        debug_assert!(!surface.chars().any(char::is_whitespace));
        let norm = surface.to_lowercase();
        Token {
            surface,
            norm,
            index,
        }
    }

    /// True when the token carries no alphanumeric content (".", "--", ...).
    pub fn is_punctuation(&self) -> bool {
        !self.surface.chars().any(char::is_alphanumeric)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub tokens: Vec<Token>,
    pub index_in_doc: usize,
}

impl Sentence {
    pub fn new(tokens: Vec<Token>, index_in_doc: usize) -> Self {
        Sentence {
            tokens,
            index_in_doc,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Original text with single spaces between tokens.
    pub fn detokenized(&self) -> String {
        let parts: Vec<&str> = self.tokens.iter().map(|t| t.surface.as_str()).collect();
        parts.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub doc_id: String,
    pub sentences: Vec<Sentence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Corpus {
    pub documents: Vec<Document>,
}

impl Corpus {
    pub fn sentence_count(&self) -> usize {
        self.documents.iter().map(|d| d.sentences.len()).sum()
    }

    pub fn word_count(&self) -> usize {
        self.documents
            .iter()
            .flat_map(|d| &d.sentences)
            .map(|s| s.tokens.len())
            .sum()
    }

    /// Writes the line-per-sentence text back out.
    pub fn write_lines(&self, out: &mut impl std::io::Write) -> std::io::Result<()> {
        for doc in &self.documents {
            for sentence in &doc.sentences {
                writeln!(out, "{}", sentence.detokenized())?;
            }
        }
        Ok(())
    }

    /// Writes the matching sidecar for `write_lines` output.
    pub fn write_sidecar(&self, out: &mut impl std::io::Write) -> std::io::Result<()> {
        writeln!(out, "doc_id\tfirst_line\tline_count")?;
        let mut first = 0usize;
        for doc in &self.documents {
            writeln!(out, "{}\t{}\t{}", doc.doc_id, first, doc.sentences.len())?;
            first += doc.sentences.len();
        }
        Ok(())
    }
}

/// Corpus-level statistics (also reused as the per-category suite rows,
/// where "words" are markers and "sentences" are non-empty ones).
#[derive(Debug, Clone, PartialEq)]
pub struct StatsReport {
    pub doc_count: usize,
    pub sentence_count: usize,
    pub word_count: usize,
    pub words_per_sentence: f64,
}

impl StatsReport {
    pub fn new(doc_count: usize, sentence_count: usize, word_count: usize) -> Self {
        let ratio = if sentence_count == 0 {
            0.0
        } else {
            word_count as f64 / sentence_count as f64
        };
        StatsReport {
            doc_count,
            sentence_count,
            word_count,
            // reported to 2 decimals
            words_per_sentence: (ratio * 100.0).round() / 100.0,
        }
    }
}

/// How raw sentence lines become tokens.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TokenizeMode {
    /// Apply the rule tokenizer below.
    #[default]
    Rules,
    /// Input is already space-separated; split on whitespace only.
    Pretokenized,
}

/// Splits one sentence of raw text into tokens. The nine punctuation marks
/// `. , ; : ! ? " ( )` become their own tokens; apostrophes stay attached.
pub fn tokenize(raw: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let flush = |current: &mut String, tokens: &mut Vec<Token>| {
        if !current.is_empty() {
            let index = tokens.len();
            tokens.push(Token::new(std::mem::take(current), index));
        }
    };
    for chunk in raw.split_whitespace() {
        for ch in chunk.chars() {
            if SPLIT_PUNCT.contains(&ch) {
                flush(&mut current, &mut tokens);
                let index = tokens.len();
                tokens.push(Token::new(ch.to_string(), index));
            } else {
                current.push(ch);
            }
        }
        flush(&mut current, &mut tokens);
    }
    tokens
}

/// Whitespace-only split for pretokenized input.
pub fn tokenize_pretokenized(raw: &str) -> Vec<Token> {
    raw.split_whitespace()
        .enumerate()
        .map(|(i, w)| Token::new(w, i))
        .collect()
}

pub fn tokenize_line(raw: &str, mode: TokenizeMode) -> Vec<Token> {
    match mode {
        TokenizeMode::Rules => tokenize(raw),
        TokenizeMode::Pretokenized => tokenize_pretokenized(raw),
    }
}

/// Document boundary specification for `parse_corpus`.
#[derive(Debug, Clone)]
pub enum Boundaries {
    /// Blank lines separate documents; ids are generated as d0001, d0002, ...
    BlankLine,
    /// Explicit (doc_id, first_line, line_count) records.
    Sidecar(Vec<SidecarRecord>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SidecarRecord {
    pub doc_id: String,
    pub first_line: usize,
    pub line_count: usize,
}

/// Reads a sidecar TSV with header `doc_id<TAB>first_line<TAB>line_count`.
pub fn parse_sidecar(path: &Path) -> Result<Vec<SidecarRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let name = path.display();
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim_end() == "doc_id\tfirst_line\tline_count" => {}
        Some((_, header)) => {
            return Err(Error::input(format!(
                "{name}:1: expected header 'doc_id<TAB>first_line<TAB>line_count', got '{header}'"
            )))
        }
        None => return Err(Error::input(format!("{name}: empty sidecar"))),
    }
    let mut records = Vec::new();
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(Error::input(format!(
                "{name}:{}: expected 3 tab-separated fields, got {}",
                lineno + 1,
                fields.len()
            )));
        }
        let first_line = fields[1].trim().parse::<usize>().map_err(|_| {
            Error::input(format!(
                "{name}:{}: bad first_line '{}'",
                lineno + 1,
                fields[1]
            ))
        })?;
        let line_count = fields[2].trim().parse::<usize>().map_err(|_| {
            Error::input(format!(
                "{name}:{}: bad line_count '{}'",
                lineno + 1,
                fields[2]
            ))
        })?;
        records.push(SidecarRecord {
            doc_id: fields[0].trim().to_string(),
            first_line,
            line_count,
        });
    }
    Ok(records)
}

/// Parses a line-per-sentence stream into documents.
pub fn parse_corpus(
    reader: impl BufRead,
    boundaries: &Boundaries,
    mode: TokenizeMode,
) -> Result<Corpus> {
    let mut lines = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        match line {
            Ok(l) => lines.push(l),
            Err(e) => return Err(Error::input(format!("line {}: {e}", i + 1))),
        }
    }
    parse_corpus_lines(&lines, boundaries, mode)
}

pub fn parse_corpus_lines(
    lines: &[String],
    boundaries: &Boundaries,
    mode: TokenizeMode,
) -> Result<Corpus> {
    match boundaries {
        Boundaries::BlankLine => parse_blank_line(lines, mode),
        Boundaries::Sidecar(records) => parse_with_sidecar(lines, records, mode),
    }
}

fn parse_blank_line(lines: &[String], mode: TokenizeMode) -> Result<Corpus> {
    let mut documents = Vec::new();
    let mut sentences: Vec<Sentence> = Vec::new();
    let flush = |sentences: &mut Vec<Sentence>, documents: &mut Vec<Document>| {
        if !sentences.is_empty() {
            let doc_id = format!("d{:04}", documents.len() + 1);
            documents.push(Document {
                doc_id,
                sentences: std::mem::take(sentences),
            });
        }
    };
    for line in lines {
        if line.trim().is_empty() {
            flush(&mut sentences, &mut documents);
        } else {
            let index = sentences.len();
            sentences.push(Sentence::new(tokenize_line(line, mode), index));
        }
    }
    flush(&mut sentences, &mut documents);
    Ok(Corpus { documents })
}

fn parse_with_sidecar(
    lines: &[String],
    records: &[SidecarRecord],
    mode: TokenizeMode,
) -> Result<Corpus> {
    let mut claimed = vec![false; lines.len()];
    let mut seen_ids = std::collections::HashSet::new();
    let mut documents = Vec::new();
    for rec in records {
        if !seen_ids.insert(rec.doc_id.clone()) {
            return Err(Error::input(format!(
                "sidecar record '{}': duplicate doc_id",
                rec.doc_id
            )));
        }
        let end = rec.first_line.checked_add(rec.line_count).ok_or_else(|| {
            Error::input(format!("sidecar record '{}': range overflows", rec.doc_id))
        })?;
        if end > lines.len() {
            return Err(Error::input(format!(
                "sidecar record '{}' (first_line {}, line_count {}) extends past end of input ({} lines)",
                rec.doc_id,
                rec.first_line,
                rec.line_count,
                lines.len()
            )));
        }
        for (offset, flag) in claimed[rec.first_line..end].iter_mut().enumerate() {
            if *flag {
                return Err(Error::input(format!(
                    "sidecar record '{}' overlaps an earlier record at line {}",
                    rec.doc_id,
                    rec.first_line + offset
                )));
            }
            *flag = true;
        }
        let sentences = lines[rec.first_line..end]
            .iter()
            .enumerate()
            .map(|(i, line)| Sentence::new(tokenize_line(line, mode), i))
            .collect();
        documents.push(Document {
            doc_id: rec.doc_id.clone(),
            sentences,
        });
    }
    Ok(Corpus { documents })
}

/// Computes corpus statistics. With `exclude_punct`, tokens that contain no
/// alphanumeric characters are left out of the word count.
pub fn corpus_stats(corpus: &Corpus, exclude_punct: bool) -> Result<StatsReport> {
    let sentence_count = corpus.sentence_count();
    if corpus.documents.is_empty() || sentence_count == 0 {
        return Err(Error::input("empty corpus"));
    }
    let word_count = corpus
        .documents
        .iter()
        .flat_map(|d| &d.sentences)
        .flat_map(|s| &s.tokens)
        .filter(|t| !exclude_punct || !t.is_punctuation())
        .count();
    Ok(StatsReport::new(
        corpus.documents.len(),
        sentence_count,
        word_count,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norms(tokens: &[Token]) -> Vec<&str> {
        tokens.iter().map(|t| t.norm.as_str()).collect()
    }

    #[test]
    fn tokenize_splits_listed_punctuation() {
        let toks = tokenize("Mary ate a peach.");
        assert_eq!(norms(&toks), ["mary", "ate", "a", "peach", "."]);
    }

    #[test]
    fn tokenize_empty_input() {
        assert!(tokenize("").is_empty());
        assert!(tokenize("   \t ").is_empty());
    }

    #[test]
    fn tokenize_keeps_apostrophes_attached() {
        let toks = tokenize("Don't stop, now!");
        assert_eq!(norms(&toks), ["don't", "stop", ",", "now", "!"]);
    }

    #[test]
    fn tokenize_quotes_and_parens() {
        let toks = tokenize("He said \"go (now); stop: why?\"");
        assert_eq!(
            norms(&toks),
            ["he", "said", "\"", "go", "(", "now", ")", ";", "stop", ":", "why", "?", "\""]
        );
    }

    #[test]
    fn token_indices_are_positional() {
        let toks = tokenize("a b, c");
        let indices: Vec<usize> = toks.iter().map(|t| t.index).collect();
        assert_eq!(indices, [0, 1, 2, 3]);
    }

    // Independent character-level reference implementation of the tokenizer
    // rules, kept deliberately different in structure from `tokenize`.
    fn oracle_tokenize(raw: &str) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        let mut word = String::new();
        for ch in raw.chars() {
            if ch.is_whitespace() {
                if !word.is_empty() {
                    out.push(std::mem::take(&mut word));
                }
            } else if matches!(ch, '.' | ',' | ';' | ':' | '!' | '?' | '"' | '(' | ')') {
                if !word.is_empty() {
                    out.push(std::mem::take(&mut word));
                }
                out.push(ch.to_string());
            } else {
                word.push(ch);
            }
        }
        if !word.is_empty() {
            out.push(word);
        }
        out
    }

    #[test]
    fn tokenize_matches_character_oracle_on_fixture() {
        let raw = std::fs::read_to_string(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../../testdata/fixture/refs.txt"
        ))
        .unwrap();
        let mut checked = 0;
        for line in raw.lines().chain([
            "Don't stop, now!",
            "\"Quoted,\" she said (twice).",
            "a--b and co-op aren't split",
            "Ünïcode tëst: ÇA VA?",
            "trailing spaces   ",
            "",
        ]) {
            let got: Vec<String> = tokenize(line).into_iter().map(|t| t.surface).collect();
            assert_eq!(got, oracle_tokenize(line), "line: {line:?}");
            checked += 1;
        }
        assert!(checked >= 50, "fixture should cover at least 50 sentences");
    }

    #[test]
    fn blank_line_boundaries() {
        let lines: Vec<String> = ["a", "b", "", "c"].iter().map(|s| s.to_string()).collect();
        let corpus = parse_corpus_lines(&lines, &Boundaries::BlankLine, TokenizeMode::Rules)
            .unwrap();
        assert_eq!(corpus.documents.len(), 2);
        assert_eq!(corpus.documents[0].sentences.len(), 2);
        assert_eq!(corpus.documents[1].sentences.len(), 1);
        assert_eq!(corpus.documents[0].doc_id, "d0001");
    }

    #[test]
    fn sidecar_boundaries() {
        let lines: Vec<String> = ["s1", "s2", "s3"].iter().map(|s| s.to_string()).collect();
        let records = vec![
            SidecarRecord {
                doc_id: "d1".into(),
                first_line: 0,
                line_count: 2,
            },
            SidecarRecord {
                doc_id: "d2".into(),
                first_line: 2,
                line_count: 1,
            },
        ];
        let corpus =
            parse_corpus_lines(&lines, &Boundaries::Sidecar(records), TokenizeMode::Rules)
                .unwrap();
        assert_eq!(corpus.documents.len(), 2);
        assert_eq!(corpus.documents[0].sentences.len(), 2);
        assert_eq!(corpus.documents[1].sentences.len(), 1);
    }

    #[test]
    fn sidecar_past_eof_names_record() {
        let lines: Vec<String> = vec!["s1".into()];
        let records = vec![SidecarRecord {
            doc_id: "dx".into(),
            first_line: 0,
            line_count: 5,
        }];
        let err = parse_corpus_lines(&lines, &Boundaries::Sidecar(records), TokenizeMode::Rules)
            .unwrap_err();
        assert!(matches!(err, Error::Input(_)));
        assert!(err.to_string().contains("dx"));
    }

    #[test]
    fn sidecar_duplicate_doc_id_rejected() {
        let lines: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let records = vec![
            SidecarRecord {
                doc_id: "d1".into(),
                first_line: 0,
                line_count: 1,
            },
            SidecarRecord {
                doc_id: "d1".into(),
                first_line: 1,
                line_count: 1,
            },
        ];
        let err = parse_corpus_lines(&lines, &Boundaries::Sidecar(records), TokenizeMode::Rules)
            .unwrap_err();
        assert!(err.to_string().contains("duplicate"));
    }

    #[test]
    fn sidecar_overlap_rejected() {
        let lines: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let records = vec![
            SidecarRecord {
                doc_id: "d1".into(),
                first_line: 0,
                line_count: 2,
            },
            SidecarRecord {
                doc_id: "d2".into(),
                first_line: 1,
                line_count: 2,
            },
        ];
        let err = parse_corpus_lines(&lines, &Boundaries::Sidecar(records), TokenizeMode::Rules)
            .unwrap_err();
        assert!(err.to_string().contains("overlaps"));
    }

    #[test]
    fn stats_simple_arithmetic() {
        let lines: Vec<String> = vec!["a b c d".into(), "a b c d e f".into()];
        let records = vec![SidecarRecord {
            doc_id: "d1".into(),
            first_line: 0,
            line_count: 2,
        }];
        let corpus =
            parse_corpus_lines(&lines, &Boundaries::Sidecar(records), TokenizeMode::Rules)
                .unwrap();
        let stats = corpus_stats(&corpus, false).unwrap();
        assert_eq!(
            (stats.doc_count, stats.sentence_count, stats.word_count),
            (1, 2, 10)
        );
        assert_eq!(stats.words_per_sentence, 5.00);
    }

    #[test]
    fn stats_doubling_additivity() {
        let raw = std::fs::read_to_string(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../../testdata/fixture/refs.txt"
        ))
        .unwrap();
        let lines: Vec<String> = raw.lines().map(String::from).collect();
        let one = parse_corpus_lines(&lines, &Boundaries::BlankLine, TokenizeMode::Rules).unwrap();
        let mut doubled = one.clone();
        for doc in one.documents.iter() {
            let mut copy = doc.clone();
            copy.doc_id = format!("{}-copy", doc.doc_id);
            doubled.documents.push(copy);
        }
        let s1 = corpus_stats(&one, false).unwrap();
        let s2 = corpus_stats(&doubled, false).unwrap();
        assert_eq!(s2.doc_count, 2 * s1.doc_count);
        assert_eq!(s2.word_count, 2 * s1.word_count);
        assert_eq!(s2.words_per_sentence, s1.words_per_sentence);
    }

    #[test]
    fn stats_reject_empty_corpus() {
        assert!(corpus_stats(&Corpus::default(), false).is_err());
    }

    #[test]
    fn stats_exclude_punct_flag() {
        let lines: Vec<String> = vec!["a b .".into()];
        let records = vec![SidecarRecord {
            doc_id: "d1".into(),
            first_line: 0,
            line_count: 1,
        }];
        let corpus =
            parse_corpus_lines(&lines, &Boundaries::Sidecar(records), TokenizeMode::Rules)
                .unwrap();
        assert_eq!(corpus_stats(&corpus, false).unwrap().word_count, 3);
        assert_eq!(corpus_stats(&corpus, true).unwrap().word_count, 2);
    }

    #[test]
    fn word_count_is_sum_of_sentence_token_counts() {
        let raw = "one two three.\nfour five\n";
        let corpus = parse_corpus(
            std::io::Cursor::new(raw),
            &Boundaries::BlankLine,
            TokenizeMode::Rules,
        )
        .unwrap();
        let by_sentence: usize = corpus
            .documents
            .iter()
            .flat_map(|d| &d.sentences)
            .map(|s| s.tokens.len())
            .sum();
        assert_eq!(corpus.word_count(), by_sentence);
    }

    #[test]
    fn round_trip_lines_and_sidecar() {
        let raw = std::fs::read_to_string(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../../testdata/fixture/refs.txt"
        ))
        .unwrap();
        let lines: Vec<String> = raw.lines().map(String::from).collect();
        let sidecar = parse_sidecar(Path::new(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../../testdata/fixture/docs.tsv"
        )))
        .unwrap();
        let corpus =
            parse_corpus_lines(&lines, &Boundaries::Sidecar(sidecar), TokenizeMode::Rules)
                .unwrap();

        let mut text = Vec::new();
        corpus.write_lines(&mut text).unwrap();
        let mut sidecar_out = Vec::new();
        corpus.write_sidecar(&mut sidecar_out).unwrap();

        let text = String::from_utf8(text).unwrap();
        let relines: Vec<String> = text.lines().map(String::from).collect();
        let sidecar_str = String::from_utf8(sidecar_out).unwrap();
        let records: Vec<SidecarRecord> = sidecar_str
            .lines()
            .skip(1)
            .map(|l| {
                let f: Vec<&str> = l.split('\t').collect();
                SidecarRecord {
                    doc_id: f[0].into(),
                    first_line: f[1].parse().unwrap(),
                    line_count: f[2].parse().unwrap(),
                }
            })
            .collect();
        let reparsed = parse_corpus_lines(
            &relines,
            &Boundaries::Sidecar(records),
            TokenizeMode::Pretokenized,
        )
        .unwrap();
        assert_eq!(corpus, reparsed);
    }
}
