//! Single binary with subcommands for the whole pipeline: build-suite,
//! score, stats, and inspect. Every flag has a DCOEM_-prefixed environment
//! fallback. Exit codes: 2 input error, 3 resource error, 4 alignment error.

use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dcoem_core::report;
use dcoem_core::scorer::{score_corpus, ScoreOptions};
use dcoem_core::suite::{
    build_suite_with_tags, deserialize_suite, fingerprint_warnings, serialize_suite, suite_stats,
    BuildConfig, CorpusTags, LexiconFingerprints, SuiteStats, TestSuite,
};
use dcoem_core::{
    align_hypothesis_lines, bundled_conjunction_lexicon, bundled_pronoun_lexicon,
    load_conjunction_lexicon, load_lexical_database, load_pronoun_lexicon, parse_corpus_lines,
    parse_pretagged_line, parse_sidecar, Boundaries, ConjunctionLexicon, Corpus, Error, PosTag,
    PronounLexicon, Sentence, StatsReport, TaggerModel, TokenizeMode,
};

#[derive(Parser)]
#[command(
    name = "dcoem",
    version,
    about = "Discourse cohesion evaluation for document-level translation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Annotate reference documents and write a test suite
    BuildSuite(BuildSuiteArgs),
    /// Score a hypothesis corpus against a suite
    Score(ScoreArgs),
    /// Print suite statistics (corpus row plus the three category rows)
    Stats(StatsArgs),
    /// Dump one sentence's tokens, tags, and marker sets
    Inspect(InspectArgs),
}

#[derive(Args)]
struct ResourceArgs {
    /// WordNet 3.x database directory (index/data for noun and verb)
    #[arg(long, env = "DCOEM_WORDNET")]
    wordnet: Option<PathBuf>,

    /// Pronoun lexicon TSV overriding the bundled table
    #[arg(long, env = "DCOEM_PRONOUNS")]
    pronouns: Option<PathBuf>,

    /// Conjunction list overriding the bundled table
    #[arg(long, env = "DCOEM_CONJUNCTIONS")]
    conjunctions: Option<PathBuf>,
}

impl ResourceArgs {
    fn load_pronouns(&self) -> Result<PronounLexicon, Error> {
        match &self.pronouns {
            Some(path) => load_pronoun_lexicon(path),
            None => Ok(bundled_pronoun_lexicon()),
        }
    }

    fn load_conjunctions(&self) -> Result<ConjunctionLexicon, Error> {
        match &self.conjunctions {
            Some(path) => load_conjunction_lexicon(path),
            None => Ok(bundled_conjunction_lexicon()),
        }
    }
}

#[derive(Args)]
struct BuildSuiteArgs {
    /// Reference corpus, one sentence per line
    #[arg(long = "ref", env = "DCOEM_REF")]
    reference: PathBuf,

    /// Document sidecar TSV (doc_id, first_line, line_count)
    #[arg(long, env = "DCOEM_DOCS", conflicts_with = "blank_lines")]
    docs: Option<PathBuf>,

    /// Treat blank lines as document separators instead of using a sidecar
    #[arg(long, env = "DCOEM_BLANK_LINES")]
    blank_lines: bool,

    #[command(flatten)]
    resources: ResourceArgs,

    /// Output suite file
    #[arg(long, env = "DCOEM_OUT")]
    out: PathBuf,

    /// Preceding sentences searched for lexical cohesion
    #[arg(long, default_value_t = 5, env = "DCOEM_WINDOW")]
    window: usize,

    /// Hypernym/hyponym traversal depth
    #[arg(long, default_value_t = 2, env = "DCOEM_RELATION_DEPTH")]
    relation_depth: usize,

    /// Leave named entities out of the lexical candidate pool
    #[arg(long, env = "DCOEM_NO_ENTITIES")]
    no_entities: bool,

    /// Input is already tokenized (space-separated)
    #[arg(long, env = "DCOEM_PRETOKENIZED")]
    pretokenized: bool,

    /// Input lines are surface_TAG tokens from an external tagger
    #[arg(long, env = "DCOEM_PRETAGGED")]
    pretagged: bool,

    /// Exclude punctuation tokens from the word-count statistics
    #[arg(long, env = "DCOEM_STATS_EXCLUDE_PUNCT")]
    stats_exclude_punct: bool,

    /// Worker threads (default: all cores)
    #[arg(long, short = 'j', env = "DCOEM_JOBS")]
    jobs: Option<usize>,

    /// Record a build timestamp in the suite file
    #[arg(long, env = "DCOEM_STAMP")]
    stamp: bool,
}

#[derive(Args)]
struct ScoreArgs {
    /// Suite file produced by build-suite
    #[arg(long, env = "DCOEM_SUITE")]
    suite: PathBuf,

    /// Hypothesis corpus, one sentence per line ("-" for stdin)
    #[arg(long, env = "DCOEM_HYP")]
    hyp: String,

    /// Optional hypothesis sidecar; document shape must match the suite
    #[arg(long, env = "DCOEM_DOCS")]
    docs: Option<PathBuf>,

    /// Report file
    #[arg(long, env = "DCOEM_OUT")]
    out: Option<PathBuf>,

    /// Report format
    #[arg(long, default_value = "json", value_parser = ["json", "tsv"], env = "DCOEM_FORMAT")]
    format: String,

    /// Include per-marker match traces in the JSON report
    #[arg(long, env = "DCOEM_TRACE")]
    trace: bool,

    /// Average over sentences pooled across the corpus instead of
    /// averaging per-document means
    #[arg(long, env = "DCOEM_WEIGHT_BY_SENTENCES")]
    weight_by_sentences: bool,

    /// Hypothesis is already tokenized (space-separated)
    #[arg(long, env = "DCOEM_PRETOKENIZED")]
    pretokenized: bool,

    #[command(flatten)]
    resources: ResourceArgs,

    /// Worker threads (default: all cores)
    #[arg(long, short = 'j', env = "DCOEM_JOBS")]
    jobs: Option<usize>,

    /// Record a timestamp in the report
    #[arg(long, env = "DCOEM_STAMP")]
    stamp: bool,
}

#[derive(Args)]
struct StatsArgs {
    /// Suite file produced by build-suite
    #[arg(long, env = "DCOEM_SUITE")]
    suite: PathBuf,

    /// Exclude punctuation tokens from the word-count row
    #[arg(long, env = "DCOEM_STATS_EXCLUDE_PUNCT")]
    stats_exclude_punct: bool,
}

#[derive(Args)]
struct InspectArgs {
    /// Suite file produced by build-suite
    #[arg(long, env = "DCOEM_SUITE")]
    suite: PathBuf,

    /// Document id
    #[arg(long, env = "DCOEM_DOC")]
    doc: String,

    /// 0-based sentence index
    #[arg(long, env = "DCOEM_SENTENCE")]
    sentence: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::BuildSuite(args) => with_jobs(args.jobs, || cmd_build_suite(&args)),
        Command::Score(args) => with_jobs(args.jobs, || cmd_score(&args)),
        Command::Stats(args) => cmd_stats(&args),
        Command::Inspect(args) => cmd_inspect(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("dcoem: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Input(_) => 2,
        Error::Io { .. } | Error::Resource(_) => 3,
        Error::Alignment(_) => 4,
    }
}

fn with_jobs<T>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T
where
    T: Send,
{
    match jobs {
        None => f(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool construction")
            .install(f),
    }
}

fn timestamp(enabled: bool) -> Option<String> {
    if !enabled {
        return None;
    }
    let seconds = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    Some(seconds.to_string())
}

fn read_lines(path: &Path) -> Result<Vec<String>, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(text.lines().map(String::from).collect())
}

fn read_hyp_lines(spec: &str) -> Result<Vec<String>, Error> {
    if spec == "-" {
        let stdin = std::io::stdin();
        let mut lines = Vec::new();
        for line in stdin.lock().lines() {
            lines.push(line.map_err(|e| Error::input(format!("stdin: {e}")))?);
        }
        Ok(lines)
    } else {
        read_lines(Path::new(spec))
    }
}

fn boundaries(docs: &Option<PathBuf>, blank_lines: bool) -> Result<Boundaries, Error> {
    match (docs, blank_lines) {
        (Some(path), _) => Ok(Boundaries::Sidecar(parse_sidecar(path)?)),
        (None, true) => Ok(Boundaries::BlankLine),
        (None, false) => Err(Error::input(
            "document boundaries required: pass --docs <sidecar.tsv> or --blank-lines",
        )),
    }
}

fn print_stats_table(stats: &SuiteStats) {
    let row = |label: &str, s: &StatsReport| {
        println!(
            "{label:<12} {:>6} {:>7} {:>8} {:>10.2}",
            s.doc_count, s.sentence_count, s.word_count, s.words_per_sentence
        );
    };
    println!("{:<12} {:>6} {:>7} {:>8} {:>10}", "", "Doc.", "Sent.", "Word", "Word/Sent.");
    row("corpus", &stats.corpus);
    row("Pronoun", &stats.pronoun);
    row("Conjunction", &stats.conjunction);
    row("Lexical", &stats.lexical);
}

fn cmd_build_suite(args: &BuildSuiteArgs) -> Result<(), Error> {
    let wordnet = args.resources.wordnet.as_ref().ok_or_else(|| {
        Error::resource("a WordNet database directory is required (--wordnet or DCOEM_WORDNET)")
    })?;
    let db = load_lexical_database(wordnet)?;
    let plex = args.resources.load_pronouns()?;
    let clex = args.resources.load_conjunctions()?;
    let model = TaggerModel::new(&db, &plex, &clex);

    let lines = read_lines(&args.reference)?;
    let bounds = boundaries(&args.docs, args.blank_lines)?;

    let cfg = BuildConfig {
        window: args.window,
        relation_depth: args.relation_depth,
        include_entities: !args.no_entities,
    };

    let (corpus, pretags) = if args.pretagged {
        parse_pretagged_corpus(&lines, &bounds)?
    } else {
        let mode = if args.pretokenized {
            TokenizeMode::Pretokenized
        } else {
            TokenizeMode::Rules
        };
        (parse_corpus_lines(&lines, &bounds, mode)?, None)
    };

    let suite = build_suite_with_tags(corpus, &model, cfg, pretags)?;
    let serialized = serialize_suite(&suite, timestamp(args.stamp));
    std::fs::write(&args.out, serialized).map_err(|e| Error::io(&args.out, e))?;

    let stats = suite_stats(&suite, args.stats_exclude_punct)?;
    print_stats_table(&stats);
    Ok(())
}

/// Pretagged lines hold their own tokens; boundaries still apply.
fn parse_pretagged_corpus(
    lines: &[String],
    bounds: &Boundaries,
) -> Result<(Corpus, Option<CorpusTags>), Error> {
    // reuse the boundary logic on the raw lines, then re-parse each line
    let shape = parse_corpus_lines(lines, bounds, TokenizeMode::Pretokenized)?;
    let mut documents = Vec::with_capacity(shape.documents.len());
    let mut all_tags = Vec::with_capacity(shape.documents.len());
    let mut cursor = 0usize;
    // blank-line mode drops separator lines, so walk documents by size
    let flat: Vec<&String> = match bounds {
        Boundaries::BlankLine => lines.iter().filter(|l| !l.trim().is_empty()).collect(),
        Boundaries::Sidecar(_) => lines.iter().collect(),
    };
    for doc in shape.documents {
        let mut sentences = Vec::with_capacity(doc.sentences.len());
        let mut doc_tags = Vec::with_capacity(doc.sentences.len());
        for i in 0..doc.sentences.len() {
            let line = match bounds {
                Boundaries::BlankLine => flat[cursor + i],
                Boundaries::Sidecar(records) => {
                    let rec = records
                        .iter()
                        .find(|r| r.doc_id == doc.doc_id)
                        .expect("record exists for parsed document");
                    &lines[rec.first_line + i]
                }
            };
            let (sentence, tags) = parse_pretagged_line(line, i)?;
            sentences.push(sentence);
            doc_tags.push(tags);
        }
        cursor += doc.sentences.len();
        documents.push(dcoem_core::Document {
            doc_id: doc.doc_id,
            sentences,
        });
        all_tags.push(doc_tags);
    }
    Ok((Corpus { documents }, Some(all_tags)))
}

fn load_suite(path: &Path) -> Result<TestSuite, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    deserialize_suite(&text)
}

fn cmd_score(args: &ScoreArgs) -> Result<(), Error> {
    let suite = load_suite(&args.suite)?;
    warn_on_fingerprint_mismatch(&suite, &args.resources)?;

    let lines = read_hyp_lines(&args.hyp)?;
    let mode = if args.pretokenized {
        TokenizeMode::Pretokenized
    } else {
        TokenizeMode::Rules
    };
    let hyp = match &args.docs {
        None => align_hypothesis_lines(&lines, &suite, mode)?,
        Some(path) => {
            let records = parse_sidecar(path)?;
            let corpus = parse_corpus_lines(&lines, &Boundaries::Sidecar(records), mode)?;
            for (hyp_doc, suite_doc) in corpus.documents.iter().zip(&suite.corpus.documents) {
                if hyp_doc.doc_id != suite_doc.doc_id {
                    return Err(Error::alignment(format!(
                        "hypothesis document '{}' does not match suite document '{}'",
                        hyp_doc.doc_id, suite_doc.doc_id
                    )));
                }
            }
            corpus
        }
    };

    let opts = ScoreOptions {
        weight_by_sentences: args.weight_by_sentences,
        with_traces: args.trace,
    };
    let scored = score_corpus(&hyp, &suite, opts)?;

    if let Some(out) = &args.out {
        let payload = match args.format.as_str() {
            "tsv" => report::report_to_tsv(&scored),
            _ => report::report_to_json(&scored, timestamp(args.stamp)),
        };
        std::fs::write(out, payload).map_err(|e| Error::io(out, e))?;
    }
    let (header, row) = report::summary_lines(&scored);
    println!("{header}");
    println!("{row}");
    Ok(())
}

/// When resource paths are supplied alongside a suite, compare their
/// fingerprints against the ones the suite was built with.
fn warn_on_fingerprint_mismatch(suite: &TestSuite, res: &ResourceArgs) -> Result<(), Error> {
    if res.wordnet.is_none() && res.pronouns.is_none() && res.conjunctions.is_none() {
        return Ok(());
    }
    let wordnet = match &res.wordnet {
        Some(dir) => load_lexical_database(dir)?.fingerprint().to_string(),
        None => suite.fingerprints.wordnet.clone(),
    };
    let pronoun = res.load_pronouns()?.fingerprint().to_string();
    let conjunction = res.load_conjunctions()?.fingerprint().to_string();
    let current = LexiconFingerprints {
        pronoun: if res.pronouns.is_some() {
            pronoun
        } else {
            suite.fingerprints.pronoun.clone()
        },
        conjunction: if res.conjunctions.is_some() {
            conjunction
        } else {
            suite.fingerprints.conjunction.clone()
        },
        wordnet,
    };
    for warning in fingerprint_warnings(suite, &current) {
        eprintln!("dcoem: warning: {warning}");
    }
    Ok(())
}

fn cmd_stats(args: &StatsArgs) -> Result<(), Error> {
    let suite = load_suite(&args.suite)?;
    let stats = suite_stats(&suite, args.stats_exclude_punct)?;
    print_stats_table(&stats);
    Ok(())
}

fn cmd_inspect(args: &InspectArgs) -> Result<(), Error> {
    let suite = load_suite(&args.suite)?;
    let doc_index = suite
        .corpus
        .documents
        .iter()
        .position(|d| d.doc_id == args.doc)
        .ok_or_else(|| Error::input(format!("unknown doc_id '{}'", args.doc)))?;
    let document = &suite.corpus.documents[doc_index];
    let sentence: &Sentence = document.sentences.get(args.sentence).ok_or_else(|| {
        Error::input(format!(
            "sentence index {} out of range for document '{}' ({} sentences)",
            args.sentence,
            args.doc,
            document.sentences.len()
        ))
    })?;
    let ann = &suite.annotations[doc_index][args.sentence];

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "{}:{}", args.doc, args.sentence).ok();
    for (token, tag) in sentence.tokens.iter().zip(&ann.tags) {
        writeln!(out, "  {:>3} {:<20} {}", token.index, token.surface, tag).ok();
    }
    for (label, set) in [
        ("r", &ann.reference),
        ("c", &ann.conjunction),
        ("lw", &ann.lexicoh),
    ] {
        writeln!(out, "{label}: {:?}", set.markers).ok();
        for (marker, expansion) in &set.expansions {
            let words: Vec<&str> = expansion.iter().map(|s| s.as_str()).collect();
            writeln!(out, "  {marker} -> {words:?}").ok();
        }
    }
    Ok(())
}
