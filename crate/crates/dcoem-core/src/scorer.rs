//! Cohesion scoring of a hypothesis corpus against a test suite.
//!
//! Matching is per category and consumption-based: each marker occurrence
//! earns credit at most once and each hypothesis token is consumed by at
//! most one marker within a category. Exact matches (credit 1) are resolved
//! first; remaining markers then take expansion matches (credit 0.5) with
//! augmenting-path repair, so the total credit always equals the maximum
//! achievable assignment while staying deterministic (sentence order,
//! leftmost token first).
//!
//! All aggregation runs in exact rational arithmetic; values are formatted
//! as percentages with two decimals only at the output boundary.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::corpus::{Corpus, Document, Sentence, Token};
use crate::error::{Error, Result};
use crate::suite::{MarkerSet, SentenceAnnotation, TestSuite};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    LexicohWordsub,
    Reference,
    Conjunction,
}

impl Category {
    pub const ALL: [Category; 3] = [
        Category::LexicohWordsub,
        Category::Reference,
        Category::Conjunction,
    ];

    pub fn pick<'a>(&self, ann: &'a SentenceAnnotation) -> &'a MarkerSet {
        match self {
            Category::LexicohWordsub => &ann.lexicoh,
            Category::Reference => &ann.reference,
            Category::Conjunction => &ann.conjunction,
        }
    }
}

/// Where one marker occurrence found its credit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MarkerOutcome {
    /// Consumed a token equal to the marker (credit 1).
    Exact { token: usize },
    /// Consumed a token from the marker's expansion set (credit 0.5).
    Expansion { token: usize, via: String },
    Unmatched,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub marker: String,
    pub outcome: MarkerOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MatchTrace {
    pub entries: Vec<TraceEntry>,
}

/// Credit in half units so that scores stay integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CategoryScore {
    pub half_credit: u64,
    pub marker_count: usize,
}

impl CategoryScore {
    pub fn is_defined(&self) -> bool {
        self.marker_count > 0
    }

    /// credit / marker_count, undefined for empty sets.
    pub fn value(&self) -> Option<BigRational> {
        if self.marker_count == 0 {
            return None;
        }
        Some(BigRational::new(
            BigInt::from(self.half_credit),
            BigInt::from(2 * self.marker_count as u64),
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryTraces {
    pub lw: MatchTrace,
    pub r: MatchTrace,
    pub c: MatchTrace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceScore {
    pub lw: CategoryScore,
    pub r: CategoryScore,
    pub c: CategoryScore,
    pub traces: Option<CategoryTraces>,
}

impl SentenceScore {
    pub fn category(&self, cat: Category) -> CategoryScore {
        match cat {
            Category::LexicohWordsub => self.lw,
            Category::Reference => self.r,
            Category::Conjunction => self.c,
        }
    }

    pub fn total_markers(&self) -> usize {
        self.lw.marker_count + self.r.marker_count + self.c.marker_count
    }

    /// Pooled credit over pooled marker count, undefined when all three
    /// sets are empty.
    pub fn combined(&self) -> Option<BigRational> {
        let markers = self.total_markers();
        if markers == 0 {
            return None;
        }
        let credit = self.lw.half_credit + self.r.half_credit + self.c.half_credit;
        Some(BigRational::new(
            BigInt::from(credit),
            BigInt::from(2 * markers as u64),
        ))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DocumentScore {
    pub doc_id: String,
    pub sentences: Vec<SentenceScore>,
    /// Sentences with no markers in any category.
    pub skipped: usize,
}

impl DocumentScore {
    /// Mean of the defined per-sentence combined scores.
    pub fn score(&self) -> Option<BigRational> {
        mean(self.sentences.iter().filter_map(|s| s.combined()))
    }

    /// Mean of the defined per-sentence scores for one category.
    pub fn category_score(&self, cat: Category) -> Option<BigRational> {
        mean(self.sentences.iter().filter_map(|s| s.category(cat).value()))
    }
}

fn mean(values: impl Iterator<Item = BigRational>) -> Option<BigRational> {
    let mut sum = BigRational::zero();
    let mut n = 0u64;
    for v in values {
        sum += v;
        n += 1;
    }
    if n == 0 {
        None
    } else {
        Some(sum / BigRational::from(BigInt::from(n)))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ScoreOptions {
    /// Pool sentences across the corpus instead of averaging per-document
    /// means.
    pub weight_by_sentences: bool,
    /// Keep per-marker match traces in the report.
    pub with_traces: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreReport {
    pub documents: Vec<DocumentScore>,
    pub weight_by_sentences: bool,
}

impl ScoreReport {
    /// The corpus-level cohesion score.
    pub fn dcoem(&self) -> Option<BigRational> {
        if self.weight_by_sentences {
            mean(
                self.documents
                    .iter()
                    .flat_map(|d| &d.sentences)
                    .filter_map(|s| s.combined()),
            )
        } else {
            mean(self.documents.iter().filter_map(|d| d.score()))
        }
    }

    pub fn category(&self, cat: Category) -> Option<BigRational> {
        if self.weight_by_sentences {
            mean(
                self.documents
                    .iter()
                    .flat_map(|d| &d.sentences)
                    .filter_map(|s| s.category(cat).value()),
            )
        } else {
            mean(self.documents.iter().filter_map(|d| d.category_score(cat)))
        }
    }

    pub fn skipped(&self) -> usize {
        self.documents.iter().map(|d| d.skipped).sum()
    }
}

/// Scores one marker set against the tokens of a hypothesis sentence.
pub fn match_category(hyp_tokens: &[Token], set: &MarkerSet) -> (MatchTrace, CategoryScore) {
    let n_tokens = hyp_tokens.len();
    let n_markers = set.markers.len();
    // token -> marker occupying it, marker -> (token, exact?)
    let mut token_owner: Vec<Option<usize>> = vec![None; n_tokens];
    let mut assignment: Vec<Option<usize>> = vec![None; n_markers];
    let mut exact: Vec<bool> = vec![false; n_markers];

    // phase 1: exact consumption, sentence order, leftmost token first
    for (mi, marker) in set.markers.iter().enumerate() {
        for (ti, token) in hyp_tokens.iter().enumerate() {
            if token_owner[ti].is_none() && token.norm == *marker {
                token_owner[ti] = Some(mi);
                assignment[mi] = Some(ti);
                exact[mi] = true;
                break;
            }
        }
    }

    // phase 2: expansion consumption with augmenting-path repair among the
    // expansion assignments (exact matches stay fixed)
    let eligible: Vec<Vec<usize>> = set
        .markers
        .iter()
        .enumerate()
        .map(|(mi, marker)| {
            if assignment[mi].is_some() {
                return Vec::new();
            }
            let expansion = match set.expansion(marker) {
                Some(e) => e,
                None => return Vec::new(),
            };
            hyp_tokens
                .iter()
                .enumerate()
                .filter(|(ti, token)| {
                    !exact_owned(&token_owner, &exact, *ti) && expansion.contains(&token.norm)
                })
                .map(|(ti, _)| ti)
                .collect()
        })
        .collect();

    fn exact_owned(token_owner: &[Option<usize>], exact: &[bool], ti: usize) -> bool {
        token_owner[ti].is_some_and(|mi| exact[mi])
    }

    fn augment(
        mi: usize,
        eligible: &[Vec<usize>],
        token_owner: &mut Vec<Option<usize>>,
        assignment: &mut Vec<Option<usize>>,
        visited: &mut Vec<bool>,
    ) -> bool {
        for &ti in &eligible[mi] {
            if visited[ti] {
                continue;
            }
            visited[ti] = true;
            let free = match token_owner[ti] {
                None => true,
                Some(owner) => augment(owner, eligible, token_owner, assignment, visited),
            };
            if free {
                token_owner[ti] = Some(mi);
                assignment[mi] = Some(ti);
                return true;
            }
        }
        false
    }

    for mi in 0..n_markers {
        if assignment[mi].is_none() && !eligible[mi].is_empty() {
            let mut visited = vec![false; n_tokens];
            augment(
                mi,
                &eligible,
                &mut token_owner,
                &mut assignment,
                &mut visited,
            );
        }
    }

    let mut half_credit = 0u64;
    let entries = set
        .markers
        .iter()
        .enumerate()
        .map(|(mi, marker)| {
            let outcome = match assignment[mi] {
                Some(ti) if exact[mi] => {
                    half_credit += 2;
                    MarkerOutcome::Exact { token: ti }
                }
                Some(ti) => {
                    half_credit += 1;
                    MarkerOutcome::Expansion {
                        token: ti,
                        via: hyp_tokens[ti].norm.clone(),
                    }
                }
                None => MarkerOutcome::Unmatched,
            };
            TraceEntry {
                marker: marker.clone(),
                outcome,
            }
        })
        .collect();

    (
        MatchTrace { entries },
        CategoryScore {
            half_credit,
            marker_count: n_markers,
        },
    )
}

/// Scores the three categories independently; token consumption never
/// carries across categories.
pub fn score_sentence(
    hyp: &Sentence,
    ann: &SentenceAnnotation,
    with_traces: bool,
) -> SentenceScore {
    let (lw_trace, lw) = match_category(&hyp.tokens, &ann.lexicoh);
    let (r_trace, r) = match_category(&hyp.tokens, &ann.reference);
    let (c_trace, c) = match_category(&hyp.tokens, &ann.conjunction);
    SentenceScore {
        lw,
        r,
        c,
        traces: with_traces.then_some(CategoryTraces {
            lw: lw_trace,
            r: r_trace,
            c: c_trace,
        }),
    }
}

pub fn score_document(
    hyp_doc: &Document,
    anns: &[SentenceAnnotation],
    with_traces: bool,
) -> Result<DocumentScore> {
    if hyp_doc.sentences.len() != anns.len() {
        return Err(Error::alignment(format!(
            "document '{}': suite has {} sentences, hypothesis has {}",
            hyp_doc.doc_id,
            anns.len(),
            hyp_doc.sentences.len()
        )));
    }
    let sentences: Vec<SentenceScore> = hyp_doc
        .sentences
        .iter()
        .zip(anns)
        .map(|(sentence, ann)| score_sentence(sentence, ann, with_traces))
        .collect();
    let skipped = sentences.iter().filter(|s| s.total_markers() == 0).count();
    Ok(DocumentScore {
        doc_id: hyp_doc.doc_id.clone(),
        sentences,
        skipped,
    })
}

/// Scores a whole hypothesis corpus. The hypothesis must have the same
/// document count and per-document sentence counts as the suite.
pub fn score_corpus(hyp: &Corpus, suite: &TestSuite, opts: ScoreOptions) -> Result<ScoreReport> {
    if hyp.documents.len() != suite.corpus.documents.len() {
        let first_missing = suite
            .corpus
            .documents
            .get(hyp.documents.len())
            .map(|d| d.doc_id.as_str())
            .unwrap_or("<extra documents>");
        return Err(Error::alignment(format!(
            "suite has {} documents, hypothesis has {} (first mismatch at '{}')",
            suite.corpus.documents.len(),
            hyp.documents.len(),
            first_missing
        )));
    }
    for (hyp_doc, suite_doc) in hyp.documents.iter().zip(&suite.corpus.documents) {
        if hyp_doc.sentences.len() != suite_doc.sentences.len() {
            return Err(Error::alignment(format!(
                "document '{}': suite has {} sentences, hypothesis has {}",
                suite_doc.doc_id,
                suite_doc.sentences.len(),
                hyp_doc.sentences.len()
            )));
        }
    }
    let documents: Vec<DocumentScore> = hyp
        .documents
        .par_iter()
        .zip(suite.annotations.par_iter())
        .map(|(hyp_doc, anns)| score_document(hyp_doc, anns, opts.with_traces))
        .collect::<Result<_>>()?;
    Ok(ScoreReport {
        documents,
        weight_by_sentences: opts.weight_by_sentences,
    })
}

/// Splits flat hypothesis lines into documents shaped like the suite.
pub fn align_hypothesis_lines(
    lines: &[String],
    suite: &TestSuite,
    mode: crate::corpus::TokenizeMode,
) -> Result<Corpus> {
    let expected: usize = suite.corpus.sentence_count();
    if lines.len() != expected {
        let mut consumed = 0usize;
        let mut at = "<end of input>";
        for doc in &suite.corpus.documents {
            if consumed + doc.sentences.len() > lines.len() {
                at = &doc.doc_id;
                break;
            }
            consumed += doc.sentences.len();
        }
        return Err(Error::alignment(format!(
            "suite expects {expected} hypothesis lines, got {} (first shortfall in '{at}')",
            lines.len()
        )));
    }
    let mut documents = Vec::with_capacity(suite.corpus.documents.len());
    let mut cursor = 0usize;
    for doc in &suite.corpus.documents {
        let slice = &lines[cursor..cursor + doc.sentences.len()];
        cursor += doc.sentences.len();
        documents.push(Document {
            doc_id: doc.doc_id.clone(),
            sentences: slice
                .iter()
                .enumerate()
                .map(|(i, line)| Sentence::new(crate::corpus::tokenize_line(line, mode), i))
                .collect(),
        });
    }
    Ok(Corpus { documents })
}
