//! The conjunction token set. The bundled list carries the published table
//! in print order (one repeated token); loading collapses duplicates.

use std::collections::BTreeSet;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

const BUNDLED: &str = include_str!("data/conjunctions.txt");

#[derive(Debug, Clone)]
pub struct ConjunctionLexicon {
    entries: BTreeSet<String>,
    fingerprint: String,
}

impl ConjunctionLexicon {
    pub fn contains(&self, norm: &str) -> bool {
        self.entries.contains(norm)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &String> {
        self.entries.iter()
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }
}

pub fn bundled_conjunction_lexicon() -> ConjunctionLexicon {
    parse(BUNDLED, "<bundled conjunctions>").expect("bundled conjunction list is well-formed")
}

/// Loads a newline-separated conjunction list; one single token per line.
pub fn load_conjunction_lexicon(path: &Path) -> Result<ConjunctionLexicon> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::resource(format!("{}: {e}", path.display())))?;
    parse(&text, &path.display().to_string())
}

fn parse(text: &str, source: &str) -> Result<ConjunctionLexicon> {
    let mut entries = BTreeSet::new();
    for (lineno, line) in text.lines().enumerate() {
        let token = line.trim();
        if token.is_empty() {
            continue;
        }
        if token.split_whitespace().count() > 1 {
            return Err(Error::input(format!(
                "{source}:{}: multiword conjunction '{token}' (single tokens only)",
                lineno + 1
            )));
        }
        entries.insert(token.to_lowercase());
    }
    let digest = Sha256::digest(text.as_bytes());
    let fingerprint = digest.iter().map(|b| format!("{b:02x}")).collect();
    Ok(ConjunctionLexicon {
        entries,
        fingerprint,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn bundled_contains_known_tokens() {
        let lex = bundled_conjunction_lexicon();
        for token in ["however", "therefore", "still", "since", "otherwise", "and"] {
            assert!(lex.contains(token), "{token}");
        }
    }

    #[test]
    fn bundled_size_is_distinct_token_count() {
        // the shipped list prints 69 tokens with one duplicate
        let lex = bundled_conjunction_lexicon();
        assert_eq!(lex.len(), 68);
        let raw_lines = BUNDLED.lines().filter(|l| !l.trim().is_empty()).count();
        assert_eq!(raw_lines, 69);
    }

    #[test]
    fn file_source_loads() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "and").unwrap();
        writeln!(file, "but").unwrap();
        let lex = load_conjunction_lexicon(file.path()).unwrap();
        assert_eq!(lex.len(), 2);
        assert!(lex.contains("and") && lex.contains("but"));
    }

    #[test]
    fn multiword_line_rejected() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "as well as").unwrap();
        let err = load_conjunction_lexicon(file.path()).unwrap_err();
        assert!(err.to_string().contains("multiword"));
    }
}
