//! Discourse cohesion evaluation for document-level machine translation:
//! test-suite construction over reference documents (pronoun reference,
//! conjunction, and lexical-cohesion marker sets with synset expansions)
//! and consumption-based scoring of hypothesis translations against them.

pub mod corpus;
pub mod error;
pub mod lexicons;
pub mod report;
pub mod scorer;
pub mod suite;
pub mod tagger;

pub use corpus::{
    corpus_stats, parse_corpus, parse_corpus_lines, parse_sidecar, tokenize, Boundaries, Corpus,
    Document, Sentence, SidecarRecord, StatsReport, Token, TokenizeMode,
};
pub use error::{Error, Result};
pub use lexicons::{
    bundled_conjunction_lexicon, bundled_pronoun_lexicon, load_conjunction_lexicon,
    load_lexical_database, load_pronoun_lexicon, ConjunctionLexicon, LexicalDatabase, Pos,
    PosQuery, PronounLexicon,
};
pub use scorer::{
    align_hypothesis_lines, match_category, score_corpus, score_document, score_sentence,
    Category, CategoryScore, DocumentScore, MarkerOutcome, MatchTrace, ScoreOptions, ScoreReport,
    SentenceScore,
};
pub use suite::{
    build_conjunction_set, build_lexicoh_set, build_reference_set, build_suite,
    build_suite_with_tags, deserialize_suite, fingerprint_warnings, serialize_suite, suite_stats,
    BuildConfig, LexiconFingerprints, MarkerSet, SentenceAnnotation, SuiteStats, TestSuite,
    SUITE_VERSION,
};
pub use tagger::{
    lemmatize, parse_pretagged_line, recognize_entities, PosTag, TaggedToken, TaggerModel,
};
