//! The pronoun lexicon: each pronoun maps to its synset-like set of
//! alternative forms. The bundled table ships as-is, including rows that
//! are not symmetric; it is not repaired on load.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

const BUNDLED: &str = include_str!("data/pronouns.tsv");

#[derive(Debug, Clone)]
pub struct PronounLexicon {
    entries: BTreeMap<String, BTreeSet<String>>,
    fingerprint: String,
}

impl PronounLexicon {
    pub fn contains(&self, norm: &str) -> bool {
        self.entries.contains_key(norm)
    }

    pub fn expansion(&self, norm: &str) -> Option<&BTreeSet<String>> {
        self.entries.get(norm)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &BTreeSet<String>)> {
        self.entries.iter()
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }
}

/// Loads the bundled pronoun table (50 entries).
pub fn bundled_pronoun_lexicon() -> PronounLexicon {
    parse(BUNDLED, "<bundled pronouns>").expect("bundled pronoun table is well-formed")
}

/// Loads a pronoun TSV: `pronoun<TAB>comma-separated synset` per line.
pub fn load_pronoun_lexicon(path: &Path) -> Result<PronounLexicon> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::resource(format!("{}: {e}", path.display())))?;
    parse(&text, &path.display().to_string())
}

fn parse(text: &str, source: &str) -> Result<PronounLexicon> {
    let mut entries = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (pronoun, rest) = match line.split_once('\t') {
            Some((p, r)) => (p.trim().to_lowercase(), r),
            None => (line.trim().to_lowercase(), ""),
        };
        let set: BTreeSet<String> = rest
            .split(',')
            .map(|s| s.trim().to_lowercase())
            .filter(|s| !s.is_empty())
            .collect();
        if set.contains(&pronoun) {
            return Err(Error::input(format!(
                "{source}:{}: pronoun '{pronoun}' lists itself in its own synset",
                lineno + 1
            )));
        }
        if entries.insert(pronoun.clone(), set).is_some() {
            return Err(Error::input(format!(
                "{source}:{}: duplicate pronoun row '{pronoun}'",
                lineno + 1
            )));
        }
    }
    let digest = Sha256::digest(text.as_bytes());
    let fingerprint = digest.iter().map(|b| format!("{b:02x}")).collect();
    Ok(PronounLexicon {
        entries,
        fingerprint,
    })
}
