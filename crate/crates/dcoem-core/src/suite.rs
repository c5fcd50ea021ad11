//! Test-suite construction: the per-sentence Reference, Conjunction, and
//! LexiCoh-WordSub marker sets with their expansion sets, plus suite
//! statistics and the on-disk JSON format.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Document, Sentence, StatsReport, Token};
use crate::error::{Error, Result};
use crate::lexicons::{ConjunctionLexicon, LexicalDatabase, Pos, PosQuery, PronounLexicon};
use crate::tagger::{PosTag, TaggedToken, TaggerModel};

pub const SUITE_VERSION: u32 = 1;

/// Externally supplied tags, per document / sentence / token.
pub type CorpusTags = Vec<Vec<Vec<PosTag>>>;

/// An ordered multiset of markers with per-marker expansion sets. A token
/// occurring twice in the source sentence contributes two marker entries.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MarkerSet {
    pub markers: Vec<String>,
    pub expansions: BTreeMap<String, BTreeSet<String>>,
}

impl MarkerSet {
    pub fn len(&self) -> usize {
        self.markers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.markers.is_empty()
    }

    pub fn expansion(&self, marker: &str) -> Option<&BTreeSet<String>> {
        self.expansions.get(marker)
    }

    /// Appends one marker occurrence. Expansions for repeated markers merge;
    /// a marker never appears in its own expansion set.
    pub fn push(&mut self, marker: impl Into<String>, expansion: impl IntoIterator<Item = String>) {
        let marker = marker.into();
        let entry = self.expansions.entry(marker.clone()).or_default();
        entry.extend(expansion);
        entry.remove(&marker);
        self.markers.push(marker);
    }

    /// Multiset inclusion: every marker of `self` occurs in `other` at least
    /// as many times.
    pub fn is_sub_multiset_of(&self, other: &MarkerSet) -> bool {
        fn count(set: &MarkerSet) -> BTreeMap<&str, usize> {
            let mut m: BTreeMap<&str, usize> = BTreeMap::new();
            for marker in &set.markers {
                *m.entry(marker.as_str()).or_default() += 1;
            }
            m
        }
        let mine = count(self);
        let theirs = count(other);
        mine.iter()
            .all(|(marker, n)| theirs.get(marker).copied().unwrap_or(0) >= *n)
    }
}

/// The three marker sets of one sentence, plus the tag sequence that chose
/// the lexical candidates (kept for inspection).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceAnnotation {
    pub reference: MarkerSet,
    pub conjunction: MarkerSet,
    pub lexicoh: MarkerSet,
    pub sentence_index: usize,
    pub tags: Vec<PosTag>,
}

impl SentenceAnnotation {
    pub fn all_empty(&self) -> bool {
        self.reference.is_empty() && self.conjunction.is_empty() && self.lexicoh.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildConfig {
    /// Preceding sentences searched for lexical-cohesion evidence.
    pub window: usize,
    /// Hypernym/hyponym traversal bound.
    pub relation_depth: usize,
    /// Whether named entities join the candidate pool.
    pub include_entities: bool,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig {
            window: 5,
            relation_depth: 2,
            include_entities: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexiconFingerprints {
    pub pronoun: String,
    pub conjunction: String,
    pub wordnet: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestSuite {
    pub corpus: Corpus,
    /// One annotation list per document, index-aligned with the corpus.
    pub annotations: Vec<Vec<SentenceAnnotation>>,
    pub config: BuildConfig,
    pub fingerprints: LexiconFingerprints,
}

/// Every pronoun-lexicon token of the sentence, with the lexicon's
/// synset-like set as its expansion.
pub fn build_reference_set(sentence: &Sentence, plex: &PronounLexicon) -> MarkerSet {
    let mut set = MarkerSet::default();
    for token in &sentence.tokens {
        if let Some(expansion) = plex.expansion(&token.norm) {
            set.push(token.norm.clone(), expansion.iter().cloned());
        }
    }
    set
}

/// Every conjunction-lexicon token of the sentence; expansions come from
/// synset co-members across the loaded databases.
pub fn build_conjunction_set(
    sentence: &Sentence,
    clex: &ConjunctionLexicon,
    db: &LexicalDatabase,
) -> MarkerSet {
    let mut set = MarkerSet::default();
    for token in &sentence.tokens {
        if clex.contains(&token.norm) {
            let expansion = db.synonyms_only(&token.norm, PosQuery::Any);
            set.push(token.norm.clone(), expansion);
        }
    }
    set
}

fn relation_pos(tag: PosTag) -> Option<Pos> {
    if tag.is_verb() {
        Some(Pos::Verb)
    } else if tag.is_noun() {
        Some(Pos::Noun)
    } else {
        None
    }
}

/// Lexical-cohesion markers of sentence `i`: content candidates whose lemma,
/// or one of its related words within the depth bound, occurs among the
/// candidate lemmas (or entity norms) of the preceding `window` sentences.
/// The window is clamped at the document start and never crosses documents;
/// sentence 0 always yields the empty set. Entities match by exact norm and
/// carry no expansion.
pub fn build_lexicoh_set(
    document: &Document,
    i: usize,
    tagged: &[Vec<TaggedToken>],
    model: &TaggerModel,
    cfg: &BuildConfig,
) -> MarkerSet {
    assert!(
        i < document.sentences.len() && tagged.len() == document.sentences.len(),
        "sentence index {i} out of range for document {}",
        document.doc_id
    );
    let mut set = MarkerSet::default();
    if i == 0 {
        return set;
    }
    let start = i.saturating_sub(cfg.window);
    let mut window: BTreeSet<&str> = BTreeSet::new();
    for sentence_tags in &tagged[start..i] {
        for tt in sentence_tags {
            if !model.is_lw_candidate(tt) {
                continue;
            }
            window.insert(tt.lemma.as_str());
            if tt.is_entity {
                window.insert(tt.token.norm.as_str());
            }
        }
    }

    let db = model.db();
    for tt in &tagged[i] {
        if !model.is_lw_candidate(tt) {
            continue;
        }
        let norm = tt.token.norm.as_str();
        if tt.is_entity {
            if cfg.include_entities && window.contains(norm) {
                set.push(norm.to_string(), std::iter::empty());
            }
            continue;
        }
        let lemma = tt.lemma.as_str();
        // FW and foreign tags carry no database side; fall back on membership
        let pos = match relation_pos(tt.tag) {
            Some(p) => p,
            None if db.contains_lemma(lemma, Pos::Noun) => Pos::Noun,
            None if db.contains_lemma(lemma, Pos::Verb) => Pos::Verb,
            None => continue,
        };
        if !db.contains_lemma(lemma, pos) {
            continue;
        }
        let related = db.related_words(lemma, pos, cfg.relation_depth);
        let mut matching: BTreeSet<String> = related
            .iter()
            .filter(|word| window.contains(word.as_str()))
            .cloned()
            .collect();
        let lemma_hit = window.contains(lemma);
        if matching.is_empty() && !lemma_hit {
            continue;
        }
        // the inflected citation form scores half credit like any expansion
        if lemma != norm {
            matching.insert(lemma.to_string());
        }
        set.push(norm.to_string(), matching);
    }
    set
}

fn annotate_document(
    document: &Document,
    model: &TaggerModel,
    cfg: &BuildConfig,
    pretags: Option<&[Vec<PosTag>]>,
) -> Result<Vec<SentenceAnnotation>> {
    let tagged: Vec<Vec<TaggedToken>> = match pretags {
        None => document
            .sentences
            .iter()
            .map(|s| model.analyze_sentence(s))
            .collect(),
        Some(tag_lists) => {
            if tag_lists.len() != document.sentences.len() {
                return Err(Error::input(format!(
                    "document '{}': {} sentences but {} pretagged lines",
                    document.doc_id,
                    document.sentences.len(),
                    tag_lists.len()
                )));
            }
            let mut out = Vec::with_capacity(document.sentences.len());
            for (sentence, tags) in document.sentences.iter().zip(tag_lists) {
                let mut tagged = model.tag_pretagged(sentence, tags)?;
                crate::tagger::recognize_entities(&mut tagged);
                out.push(tagged);
            }
            out
        }
    };
    Ok(document
        .sentences
        .iter()
        .enumerate()
        .map(|(i, sentence)| SentenceAnnotation {
            reference: build_reference_set(sentence, model.pronouns()),
            conjunction: build_conjunction_set(sentence, model.conjunctions(), model.db()),
            lexicoh: build_lexicoh_set(document, i, &tagged, model, cfg),
            sentence_index: i,
            tags: tagged[i].iter().map(|t| t.tag).collect(),
        })
        .collect())
}

/// Annotates every sentence of the corpus. Documents are processed in
/// parallel; output order is the corpus order regardless of thread count.
pub fn build_suite(corpus: Corpus, model: &TaggerModel, cfg: BuildConfig) -> Result<TestSuite> {
    build_suite_with_tags(corpus, model, cfg, None)
}

/// As `build_suite`, with externally supplied tags (pretagged input).
pub fn build_suite_with_tags(
    corpus: Corpus,
    model: &TaggerModel,
    cfg: BuildConfig,
    pretags: Option<CorpusTags>,
) -> Result<TestSuite> {
    if cfg.window == 0 {
        return Err(Error::input("window must be at least 1"));
    }
    if cfg.relation_depth == 0 {
        return Err(Error::input("relation depth must be at least 1"));
    }
    if let Some(tags) = &pretags {
        if tags.len() != corpus.documents.len() {
            return Err(Error::input(format!(
                "{} documents but pretagged input covers {}",
                corpus.documents.len(),
                tags.len()
            )));
        }
    }
    let annotations: Vec<Vec<SentenceAnnotation>> = corpus
        .documents
        .par_iter()
        .enumerate()
        .map(|(idx, document)| {
            annotate_document(document, model, &cfg, pretags.as_ref().map(|t| t[idx].as_slice()))
        })
        .collect::<Result<_>>()?;
    let fingerprints = LexiconFingerprints {
        pronoun: model.pronouns().fingerprint().to_string(),
        conjunction: model.conjunctions().fingerprint().to_string(),
        wordnet: model.db().fingerprint().to_string(),
    };
    Ok(TestSuite {
        corpus,
        annotations,
        config: cfg,
        fingerprints,
    })
}

/// Per-category suite statistics plus the underlying corpus statistics.
/// Category rows reuse `StatsReport`: sentences = sentences with a non-empty
/// set, words = total markers, ratio = markers per non-empty sentence.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteStats {
    pub corpus: StatsReport,
    pub pronoun: StatsReport,
    pub conjunction: StatsReport,
    pub lexical: StatsReport,
}

pub fn suite_stats(suite: &TestSuite, exclude_punct: bool) -> Result<SuiteStats> {
    let corpus = crate::corpus::corpus_stats(&suite.corpus, exclude_punct)?;
    let doc_count = suite.corpus.documents.len();
    let row = |pick: fn(&SentenceAnnotation) -> &MarkerSet| {
        let mut non_empty = 0usize;
        let mut markers = 0usize;
        for ann in suite.annotations.iter().flatten() {
            let set = pick(ann);
            if !set.is_empty() {
                non_empty += 1;
                markers += set.len();
            }
        }
        StatsReport::new(doc_count, non_empty, markers)
    };
    Ok(SuiteStats {
        corpus,
        pronoun: row(|a| &a.reference),
        conjunction: row(|a| &a.conjunction),
        lexical: row(|a| &a.lexicoh),
    })
}

// --- on-disk format ---------------------------------------------------

#[derive(Serialize, Deserialize)]
struct SuiteJson {
    version: u32,
    config: BuildConfig,
    lexicon_fingerprints: LexiconFingerprints,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    generated_at: Option<String>,
    documents: Vec<DocJson>,
}

#[derive(Serialize, Deserialize)]
struct DocJson {
    doc_id: String,
    sentences: Vec<SentJson>,
}

#[derive(Serialize, Deserialize)]
struct SentJson {
    tokens: Vec<String>,
    tags: Vec<String>,
    r: SetJson,
    c: SetJson,
    lw: SetJson,
}

#[derive(Serialize, Deserialize)]
struct SetJson {
    markers: Vec<String>,
    exp: BTreeMap<String, Vec<String>>,
}

impl From<&MarkerSet> for SetJson {
    fn from(set: &MarkerSet) -> Self {
        SetJson {
            markers: set.markers.clone(),
            exp: set
                .expansions
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().cloned().collect()))
                .collect(),
        }
    }
}

impl From<SetJson> for MarkerSet {
    fn from(json: SetJson) -> Self {
        MarkerSet {
            markers: json.markers,
            expansions: json
                .exp
                .into_iter()
                .map(|(k, v)| (k, v.into_iter().collect()))
                .collect(),
        }
    }
}

/// Serializes a suite to its JSON document form (deterministic: fixed key
/// order, sorted expansion sets, no timestamps unless one is supplied).
pub fn serialize_suite(suite: &TestSuite, generated_at: Option<String>) -> String {
    let json = SuiteJson {
        version: SUITE_VERSION,
        config: suite.config.clone(),
        lexicon_fingerprints: suite.fingerprints.clone(),
        generated_at,
        documents: suite
            .corpus
            .documents
            .iter()
            .zip(&suite.annotations)
            .map(|(doc, anns)| DocJson {
                doc_id: doc.doc_id.clone(),
                sentences: doc
                    .sentences
                    .iter()
                    .zip(anns)
                    .map(|(sentence, ann)| SentJson {
                        tokens: sentence.tokens.iter().map(|t| t.surface.clone()).collect(),
                        tags: ann.tags.iter().map(|t| t.as_str().to_string()).collect(),
                        r: (&ann.reference).into(),
                        c: (&ann.conjunction).into(),
                        lw: (&ann.lexicoh).into(),
                    })
                    .collect(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string(&json).expect("suite serialization cannot fail");
    out.push('\n');
    out
}

pub fn deserialize_suite(text: &str) -> Result<TestSuite> {
    let json: SuiteJson = serde_json::from_str(text).map_err(|e| {
        let offset = byte_offset(text, e.line(), e.column());
        Error::input(format!("suite parse error at byte {offset}: {e}"))
    })?;
    if json.version != SUITE_VERSION {
        return Err(Error::input(format!(
            "unsupported suite version {} (expected {SUITE_VERSION})",
            json.version
        )));
    }
    let mut documents = Vec::with_capacity(json.documents.len());
    let mut annotations = Vec::with_capacity(json.documents.len());
    for doc in json.documents {
        let mut sentences = Vec::with_capacity(doc.sentences.len());
        let mut anns = Vec::with_capacity(doc.sentences.len());
        for (i, sent) in doc.sentences.into_iter().enumerate() {
            let tokens: Vec<Token> = sent
                .tokens
                .into_iter()
                .enumerate()
                .map(|(j, surface)| Token::new(surface, j))
                .collect();
            if sent.tags.len() != tokens.len() {
                return Err(Error::input(format!(
                    "document '{}' sentence {i}: {} tokens but {} tags",
                    doc.doc_id,
                    tokens.len(),
                    sent.tags.len()
                )));
            }
            let tags: Vec<PosTag> = sent
                .tags
                .iter()
                .map(|t| t.parse().unwrap_or(PosTag::Other))
                .collect();
            sentences.push(Sentence::new(tokens, i));
            anns.push(SentenceAnnotation {
                reference: sent.r.into(),
                conjunction: sent.c.into(),
                lexicoh: sent.lw.into(),
                sentence_index: i,
                tags,
            });
        }
        documents.push(Document {
            doc_id: doc.doc_id,
            sentences,
        });
        annotations.push(anns);
    }
    Ok(TestSuite {
        corpus: Corpus { documents },
        annotations,
        config: json.config,
        fingerprints: json.lexicon_fingerprints,
    })
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let mut offset = 0;
    for (i, l) in text.split('\n').enumerate() {
        if i + 1 == line {
            return offset + column.saturating_sub(1);
        }
        offset += l.len() + 1;
    }
    text.len()
}

/// Human-readable warnings when a suite was built with different resources
/// than the ones at hand.
pub fn fingerprint_warnings(suite: &TestSuite, current: &LexiconFingerprints) -> Vec<String> {
    let mut warnings = Vec::new();
    for (name, built, now) in [
        ("pronoun lexicon", &suite.fingerprints.pronoun, &current.pronoun),
        (
            "conjunction lexicon",
            &suite.fingerprints.conjunction,
            &current.conjunction,
        ),
        ("wordnet database", &suite.fingerprints.wordnet, &current.wordnet),
    ] {
        if built != now {
            warnings.push(format!(
                "{name} differs from the one the suite was built with ({} != {})",
                &now[..now.len().min(12)],
                &built[..built.len().min(12)]
            ));
        }
    }
    warnings
}
