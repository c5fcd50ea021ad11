//! WordNet 3.x flat-file database: parsing and relation queries.
//!
//! Only the noun and verb databases are loaded. Synsets are keyed by
//! (part of speech, byte offset) exactly as the flat files key them.
//! Hypernym pointers are `@` and `@i`, hyponym pointers `~` and `~i`;
//! the two edge directions are stored as exact mirrors of each other.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pos {
    Noun,
    Verb,
}

impl Pos {
    fn letter(self) -> char {
        match self {
            Pos::Noun => 'n',
            Pos::Verb => 'v',
        }
    }

    fn from_letter(c: &str) -> Option<Pos> {
        match c {
            "n" => Some(Pos::Noun),
            "v" => Some(Pos::Verb),
            _ => None,
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Which databases a synonym query spans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosQuery {
    Noun,
    Verb,
    /// Union over the loaded noun and verb data.
    Any,
}

impl PosQuery {
    fn parts(self) -> &'static [Pos] {
        match self {
            PosQuery::Noun => &[Pos::Noun],
            PosQuery::Verb => &[Pos::Verb],
            PosQuery::Any => &[Pos::Noun, Pos::Verb],
        }
    }
}

impl From<Pos> for PosQuery {
    fn from(pos: Pos) -> Self {
        match pos {
            Pos::Noun => PosQuery::Noun,
            Pos::Verb => PosQuery::Verb,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SynsetId {
    pub pos: Pos,
    pub offset: u64,
}

#[derive(Debug, Clone)]
pub struct Synset {
    pub lemmas: Vec<String>,
    pub pos: Pos,
}

#[derive(Debug, Default)]
pub struct LexicalDatabase {
    synsets: BTreeMap<SynsetId, Synset>,
    lemma_index: HashMap<(String, Pos), Vec<SynsetId>>,
    hypernyms: BTreeMap<SynsetId, Vec<SynsetId>>,
    hyponyms: BTreeMap<SynsetId, Vec<SynsetId>>,
    noun_exceptions: HashMap<String, Vec<String>>,
    verb_exceptions: HashMap<String, Vec<String>>,
    fingerprint: String,
}

impl LexicalDatabase {
    pub fn synset_count(&self) -> usize {
        self.synsets.len()
    }

    pub fn synset(&self, id: SynsetId) -> Option<&Synset> {
        self.synsets.get(&id)
    }

    pub fn synset_ids(&self) -> impl Iterator<Item = SynsetId> + '_ {
        self.synsets.keys().copied()
    }

    pub fn contains_lemma(&self, lemma: &str, pos: Pos) -> bool {
        self.lemma_index.contains_key(&(lemma.to_string(), pos))
    }

    pub fn synsets_for(&self, lemma: &str, pos: Pos) -> &[SynsetId] {
        self.lemma_index
            .get(&(lemma.to_string(), pos))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn hypernyms_of(&self, id: SynsetId) -> &[SynsetId] {
        self.hypernyms.get(&id).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn hyponyms_of(&self, id: SynsetId) -> &[SynsetId] {
        self.hyponyms.get(&id).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn hypernym_edges(&self) -> impl Iterator<Item = (SynsetId, SynsetId)> + '_ {
        self.hypernyms
            .iter()
            .flat_map(|(src, dsts)| dsts.iter().map(move |d| (*src, *d)))
    }

    pub fn hyponym_edges(&self) -> impl Iterator<Item = (SynsetId, SynsetId)> + '_ {
        self.hyponyms
            .iter()
            .flat_map(|(src, dsts)| dsts.iter().map(move |d| (*src, *d)))
    }

    pub fn exceptions(&self, pos: Pos) -> &HashMap<String, Vec<String>> {
        match pos {
            Pos::Noun => &self.noun_exceptions,
            Pos::Verb => &self.verb_exceptions,
        }
    }

    /// SHA-256 over the raw database files, stable across loads.
    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    /// Synset co-members of `lemma` across the given databases, excluding
    /// the query lemma itself and multiword (underscored) lemmas.
    pub fn synonyms_only(&self, lemma: &str, pos: PosQuery) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for &p in pos.parts() {
            for &id in self.synsets_for(lemma, p) {
                if let Some(synset) = self.synsets.get(&id) {
                    out.extend(
                        synset
                            .lemmas
                            .iter()
                            .filter(|l| l.as_str() != lemma && !l.contains('_'))
                            .cloned(),
                    );
                }
            }
        }
        out
    }

    /// Synonyms plus lemmas of synsets reachable by at most `depth` hypernym
    /// edges or at most `depth` hyponym edges (each direction walked on its
    /// own; paths never mix directions). The query lemma and multiword
    /// lemmas are excluded. Unknown lemmas yield the empty set.
    pub fn related_words(&self, lemma: &str, pos: Pos, depth: usize) -> BTreeSet<String> {
        let mut out = self.synonyms_only(lemma, pos.into());
        let start: Vec<SynsetId> = self.synsets_for(lemma, pos).to_vec();
        for direction in [&self.hypernyms, &self.hyponyms] {
            let mut frontier: BTreeSet<SynsetId> = start.iter().copied().collect();
            for _ in 0..depth {
                let mut next = BTreeSet::new();
                for id in &frontier {
                    if let Some(targets) = direction.get(id) {
                        next.extend(targets.iter().copied());
                    }
                }
                for id in &next {
                    if let Some(synset) = self.synsets.get(id) {
                        out.extend(
                            synset
                                .lemmas
                                .iter()
                                .filter(|l| l.as_str() != lemma && !l.contains('_'))
                                .cloned(),
                        );
                    }
                }
                frontier = next;
                if frontier.is_empty() {
                    break;
                }
            }
        }
        out
    }
}

/// Builds a database from already-parsed parts. Hypernym/hyponym mirroring
/// is enforced here: both directions are the union of what either pointer
/// type declared.
pub struct DatabaseBuilder {
    synsets: BTreeMap<SynsetId, Synset>,
    lemma_index: HashMap<(String, Pos), Vec<SynsetId>>,
    hypernym_pairs: BTreeSet<(SynsetId, SynsetId)>,
    noun_exceptions: HashMap<String, Vec<String>>,
    verb_exceptions: HashMap<String, Vec<String>>,
    fingerprint: Sha256,
}

impl Default for DatabaseBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl DatabaseBuilder {
    pub fn new() -> Self {
        DatabaseBuilder {
            synsets: BTreeMap::new(),
            lemma_index: HashMap::new(),
            hypernym_pairs: BTreeSet::new(),
            noun_exceptions: HashMap::new(),
            verb_exceptions: HashMap::new(),
            fingerprint: Sha256::new(),
        }
    }

    pub fn add_synset(&mut self, id: SynsetId, lemmas: Vec<String>) -> &mut Self {
        let lemmas: Vec<String> = lemmas.into_iter().map(|l| l.to_lowercase()).collect();
        self.synsets.insert(
            id,
            Synset {
                lemmas,
                pos: id.pos,
            },
        );
        self
    }

    pub fn add_hypernym(&mut self, child: SynsetId, parent: SynsetId) -> &mut Self {
        self.hypernym_pairs.insert((child, parent));
        self
    }

    pub fn add_hyponym(&mut self, parent: SynsetId, child: SynsetId) -> &mut Self {
        self.hypernym_pairs.insert((child, parent));
        self
    }

    pub fn index_lemma(&mut self, lemma: &str, pos: Pos, ids: Vec<SynsetId>) -> &mut Self {
        self.lemma_index.insert((lemma.to_lowercase(), pos), ids);
        self
    }

    pub fn add_exception(&mut self, pos: Pos, form: &str, lemmas: Vec<String>) -> &mut Self {
        let map = match pos {
            Pos::Noun => &mut self.noun_exceptions,
            Pos::Verb => &mut self.verb_exceptions,
        };
        map.insert(form.to_lowercase(), lemmas);
        self
    }

    fn hash_file(&mut self, name: &str, bytes: &[u8]) {
        self.fingerprint.update(name.as_bytes());
        self.fingerprint.update([0u8]);
        self.fingerprint.update(bytes);
        self.fingerprint.update([0u8]);
    }

    /// Derives the lemma index from synset membership when no index files
    /// were parsed (used by in-memory fixtures).
    pub fn index_from_synsets(&mut self) -> &mut Self {
        for (id, synset) in &self.synsets {
            for lemma in &synset.lemmas {
                self.lemma_index
                    .entry((lemma.clone(), id.pos))
                    .or_default()
                    .push(*id);
            }
        }
        self
    }

    pub fn build(self) -> LexicalDatabase {
        let mut hypernyms: BTreeMap<SynsetId, Vec<SynsetId>> = BTreeMap::new();
        let mut hyponyms: BTreeMap<SynsetId, Vec<SynsetId>> = BTreeMap::new();
        for &(child, parent) in &self.hypernym_pairs {
            hypernyms.entry(child).or_default().push(parent);
            hyponyms.entry(parent).or_default().push(child);
        }
        for targets in hypernyms.values_mut().chain(hyponyms.values_mut()) {
            targets.sort_unstable();
            targets.dedup();
        }
        let digest = self.fingerprint.finalize();
        let fingerprint = digest.iter().map(|b| format!("{b:02x}")).collect();
        LexicalDatabase {
            synsets: self.synsets,
            lemma_index: self.lemma_index,
            hypernyms,
            hyponyms,
            noun_exceptions: self.noun_exceptions,
            verb_exceptions: self.verb_exceptions,
            fingerprint,
        }
    }
}

/// Loads `index.{noun,verb}` and `data.{noun,verb}` (plus optional
/// `noun.exc`/`verb.exc`) from a WordNet 3.x database directory.
pub fn load_lexical_database(dir: &Path) -> Result<LexicalDatabase> {
    if !dir.is_dir() {
        return Err(Error::resource(format!(
            "{}: not a directory",
            dir.display()
        )));
    }
    let mut builder = DatabaseBuilder::new();
    for (pos, name) in [(Pos::Noun, "noun"), (Pos::Verb, "verb")] {
        let data_path = dir.join(format!("data.{name}"));
        let data = read_required(&data_path)?;
        builder.hash_file(&format!("data.{name}"), data.as_bytes());
        parse_data_file(&mut builder, &data, pos, &data_path.display().to_string())?;

        let index_path = dir.join(format!("index.{name}"));
        let index = read_required(&index_path)?;
        builder.hash_file(&format!("index.{name}"), index.as_bytes());
        parse_index_file(&mut builder, &index, pos, &index_path.display().to_string())?;

        let exc_path = dir.join(format!("{name}.exc"));
        if exc_path.exists() {
            let exc = std::fs::read_to_string(&exc_path)
                .map_err(|e| Error::resource(format!("{}: {e}", exc_path.display())))?;
            builder.hash_file(&format!("{name}.exc"), exc.as_bytes());
            parse_exception_file(&mut builder, &exc, pos);
        }
    }
    let db = builder.build();
    for (key, ids) in &db.lemma_index {
        for id in ids {
            if !db.synsets.contains_key(id) {
                return Err(Error::resource(format!(
                    "index entry '{}' ({}) references missing synset offset {:08}",
                    key.0, key.1, id.offset
                )));
            }
        }
    }
    Ok(db)
}

fn read_required(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::resource(format!("{}: {e}", path.display())))
}

fn is_header_line(line: &str) -> bool {
    line.starts_with(' ') || line.is_empty()
}

fn parse_data_file(
    builder: &mut DatabaseBuilder,
    text: &str,
    pos: Pos,
    file: &str,
) -> Result<()> {
    for (lineno, line) in text.lines().enumerate() {
        if is_header_line(line) {
            continue;
        }
        parse_data_line(builder, line, pos)
            .map_err(|msg| Error::resource(format!("{file}:{}: {msg}", lineno + 1)))?;
    }
    Ok(())
}

fn parse_data_line(
    builder: &mut DatabaseBuilder,
    line: &str,
    pos: Pos,
) -> std::result::Result<(), String> {
    let body = match line.split_once(" | ") {
        Some((body, _gloss)) => body,
        None => line,
    };
    let mut fields = body.split_whitespace();
    let mut next = |what: &str| {
        fields
            .next()
            .ok_or_else(|| format!("truncated synset line, missing {what}"))
    };

    let offset: u64 = next("synset_offset")?
        .parse()
        .map_err(|_| "malformed synset_offset".to_string())?;
    let _lex_filenum = next("lex_filenum")?;
    let ss_type = next("ss_type")?;
    let line_pos = Pos::from_letter(ss_type)
        .ok_or_else(|| format!("unsupported ss_type '{ss_type}'"))?;
    if line_pos != pos {
        return Err(format!("ss_type '{ss_type}' in data.{pos} file"));
    }
    let w_cnt = usize::from_str_radix(next("w_cnt")?, 16)
        .map_err(|_| "malformed w_cnt".to_string())?;
    let mut lemmas = Vec::with_capacity(w_cnt);
    for _ in 0..w_cnt {
        lemmas.push(next("word")?.to_string());
        let _lex_id = next("lex_id")?;
    }
    let p_cnt: usize = next("p_cnt")?
        .parse()
        .map_err(|_| "malformed p_cnt".to_string())?;
    let id = SynsetId { pos, offset };
    builder.add_synset(id, lemmas);
    for _ in 0..p_cnt {
        let symbol = next("pointer_symbol")?;
        let target_offset: u64 = next("pointer offset")?
            .parse()
            .map_err(|_| "malformed pointer offset".to_string())?;
        let target_pos_str = next("pointer pos")?;
        let _source_target = next("source/target")?;
        let target_pos = match Pos::from_letter(target_pos_str) {
            Some(p) => p,
            // pointers into the adjective/adverb databases are out of scope
            None => continue,
        };
        let target = SynsetId {
            pos: target_pos,
            offset: target_offset,
        };
        match symbol {
            "@" | "@i" => {
                builder.add_hypernym(id, target);
            }
            "~" | "~i" => {
                builder.add_hyponym(id, target);
            }
            _ => {}
        }
    }
    Ok(())
}

fn parse_index_file(
    builder: &mut DatabaseBuilder,
    text: &str,
    pos: Pos,
    file: &str,
) -> Result<()> {
    for (lineno, line) in text.lines().enumerate() {
        if is_header_line(line) {
            continue;
        }
        parse_index_line(builder, line, pos)
            .map_err(|msg| Error::resource(format!("{file}:{}: {msg}", lineno + 1)))?;
    }
    Ok(())
}

fn parse_index_line(
    builder: &mut DatabaseBuilder,
    line: &str,
    pos: Pos,
) -> std::result::Result<(), String> {
    let mut fields = line.split_whitespace();
    let mut next = |what: &str| {
        fields
            .next()
            .ok_or_else(|| format!("truncated index line, missing {what}"))
    };
    let lemma = next("lemma")?.to_string();
    let _pos_letter = next("pos")?;
    let synset_cnt: usize = next("synset_cnt")?
        .parse()
        .map_err(|_| "malformed synset_cnt".to_string())?;
    let p_cnt: usize = next("p_cnt")?
        .parse()
        .map_err(|_| "malformed p_cnt".to_string())?;
    for _ in 0..p_cnt {
        let _symbol = next("ptr_symbol")?;
    }
    let _sense_cnt = next("sense_cnt")?;
    let _tagsense_cnt = next("tagsense_cnt")?;
    let mut ids = Vec::with_capacity(synset_cnt);
    for _ in 0..synset_cnt {
        let offset: u64 = next("synset_offset")?
            .parse()
            .map_err(|_| "malformed synset_offset in index".to_string())?;
        ids.push(SynsetId { pos, offset });
    }
    builder.index_lemma(&lemma, pos, ids);
    Ok(())
}

fn parse_exception_file(builder: &mut DatabaseBuilder, text: &str, pos: Pos) {
    for line in text.lines() {
        let mut fields = line.split_whitespace();
        if let Some(form) = fields.next() {
            let lemmas: Vec<String> = fields.map(|s| s.to_lowercase()).collect();
            if !lemmas.is_empty() {
                builder.add_exception(pos, form, lemmas);
            }
        }
    }
}
