//! The three lexical resources: the WordNet-format database, the pronoun
//! lexicon, and the conjunction lexicon.

mod conjunctions;
mod pronouns;
mod wordnet;

pub use conjunctions::{bundled_conjunction_lexicon, load_conjunction_lexicon, ConjunctionLexicon};
pub use pronouns::{bundled_pronoun_lexicon, load_pronoun_lexicon, PronounLexicon};
pub use wordnet::{
    load_lexical_database, DatabaseBuilder, LexicalDatabase, Pos, PosQuery, Synset, SynsetId,
};
