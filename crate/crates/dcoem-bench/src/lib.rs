//! Shared helpers for the benchmark targets: fixture loading and synthetic
//! corpus generation over the mini database vocabulary.

use std::path::Path;

use dcoem_core::{
    bundled_conjunction_lexicon, bundled_pronoun_lexicon, load_lexical_database,
    parse_corpus_lines, parse_sidecar, Boundaries, ConjunctionLexicon, Corpus, Document,
    LexicalDatabase, PronounLexicon, Sentence, Token, TokenizeMode,
};

pub struct Resources {
    pub db: LexicalDatabase,
    pub plex: PronounLexicon,
    pub clex: ConjunctionLexicon,
}

pub fn testdata(rel: &str) -> String {
    format!("{}/../../testdata/{rel}", env!("CARGO_MANIFEST_DIR"))
}

pub fn load_resources() -> Resources {
    Resources {
        db: load_lexical_database(Path::new(&testdata("miniwn"))).expect("mini database"),
        plex: bundled_pronoun_lexicon(),
        clex: bundled_conjunction_lexicon(),
    }
}

pub fn fixture_corpus() -> Corpus {
    let raw = std::fs::read_to_string(testdata("fixture/refs.txt")).expect("fixture refs");
    let lines: Vec<String> = raw.lines().map(String::from).collect();
    let sidecar = parse_sidecar(Path::new(&testdata("fixture/docs.tsv"))).expect("fixture sidecar");
    parse_corpus_lines(&lines, &Boundaries::Sidecar(sidecar), TokenizeMode::Rules)
        .expect("fixture corpus")
}

/// Deterministic synthetic corpus: `docs` documents of `sentences` sentences
/// each, cycling through fixture-style vocabulary.
pub fn synthetic_corpus(docs: usize, sentences: usize) -> Corpus {
    let vocab = [
        "mary", "jones", "peach", "peaches", "fruit", "apple", "apples", "market", "farmer",
        "children", "mountain", "village", "summit", "slope", "climbers", "he", "she", "they",
        "it", "their", "and", "but", "so", "before", "after", "ate", "likes", "walked",
        "climbed", "talked", "reached", "the", "a", "of", "in", "on", ".",
    ];
    let documents = (0..docs)
        .map(|d| {
            let sentences = (0..sentences)
                .map(|i| {
                    let tokens: Vec<Token> = (0..14)
                        .map(|j| {
                            let pick = (d * 131 + i * 17 + j * 7) % vocab.len();
                            Token::new(vocab[pick], j)
                        })
                        .collect();
                    Sentence::new(tokens, i)
                })
                .collect();
            Document {
                doc_id: format!("doc{d:03}"),
                sentences,
            }
        })
        .collect();
    Corpus { documents }
}
