//! Command-line front end for the stopkit pipeline.
//!
//! Every subcommand reads its inputs, calls one library operation and
//! writes the result to `--out` or stdout. Exit codes: 0 success, 1 usage
//! error, 2 data error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{ArgAction, Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use stopkit::corpus::{load_corpus, select_top_viewed_per_tag, CorpusFormat};
use stopkit::eval::{
    auc, compare_runs, one_vs_rest, ranking_metrics, read_ranked_results, read_scored_instances, roc_curve,
    EvalReport, DEFAULT_ALPHA, DEFAULT_EPSILON,
};
use stopkit::removal::{reduction_report, remove_all, reports_to_csv, reports_to_table};
use stopkit::stats::{compute_stats, read_scores_csv, write_scores_csv};
use stopkit::stoplist::{
    apply_exclusions, bundled, load_stoplist, poisson_stoplist_from_scores, render_stoplist, tfidf_stoplist_from_scores,
    StopList, BUNDLED, DEFAULT_MIN_DF, DEFAULT_MIN_TF, DEFAULT_SEED, DEFAULT_SIZE, DEFAULT_TOLERANCE,
};
use stopkit::text::{preprocess_corpus, read_tokenized, CleaningConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "stopkit", version, about = "Build and evaluate domain-specific stop-word lists")]
pub struct Cli {
    /// JSON object supplying flag values by field name; explicit flags win
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Keep the most viewed documents for each tag
    Select(SelectArgs),
    /// Clean, tokenize and lemmatize a corpus
    Preprocess(PreprocessArgs),
    /// Per-term tf, df, TF-IDF and Poisson ratio as CSV
    Stats(StatsArgs),
    /// Generate a stop list from a stats CSV
    Genlist(GenlistArgs),
    /// Drop stop words from tokenized documents
    Remove(RemoveArgs),
    /// Token and type reduction for one or more stop lists
    Report(ReportArgs),
    /// One-vs-rest Naive Bayes precision, recall and F1
    Classify(ClassifyArgs),
    /// Top-k, MRR, MAP and mean recall over ranked results
    RankEval(RankEvalArgs),
    /// Area under the ROC curve for scored instances
    Auc(AucArgs),
    /// Tally better/worse/same per candidate against a baseline report
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct SelectArgs {
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long, default_value = "jsonl", value_parser = parse_format)]
    pub format: CorpusFormat,
    /// Repeat for several tags; each contributes up to n documents
    #[arg(long = "tag", required = true)]
    pub tags: Vec<String>,
    #[arg(long, default_value_t = 2500, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long = "out", value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PreprocessArgs {
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long, default_value = "jsonl", value_parser = parse_format)]
    pub format: CorpusFormat,
    #[arg(long = "out", value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub cleaning: CleaningArgs,
}

#[derive(Debug, Args)]
pub struct CleaningArgs {
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    pub remove_mentions: bool,
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    pub remove_urls: bool,
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    pub remove_hashtags: bool,
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    pub remove_numbers: bool,
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    pub remove_bracketed: bool,
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    pub remove_non_english: bool,
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    pub remove_extra_space: bool,
}

impl From<&CleaningArgs> for CleaningConfig {
    fn from(a: &CleaningArgs) -> Self {
        CleaningConfig {
            remove_mentions: a.remove_mentions,
            remove_urls: a.remove_urls,
            remove_hashtags: a.remove_hashtags,
            remove_numbers: a.remove_numbers,
            remove_bracketed: a.remove_bracketed,
            remove_non_english: a.remove_non_english,
            remove_extra_space: a.remove_extra_space,
        }
    }
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Tokenized documents (JSONL)
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long = "out", value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenMethod {
    Tfidf,
    Poisson,
}

#[derive(Debug, Args)]
pub struct GenlistArgs {
    #[arg(long, value_enum)]
    pub method: GenMethod,
    /// Stats CSV written by `stats`
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long = "out", value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SIZE, value_parser = positive_usize)]
    pub size: usize,
    #[arg(long, default_value_t = DEFAULT_MIN_DF)]
    pub min_df: u64,
    #[arg(long, default_value_t = DEFAULT_MIN_TF)]
    pub min_tf: u64,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, value_parser = positive_f64)]
    pub tolerance: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Stop-list file of terms to drop from the generated list; repeatable
    #[arg(long = "exclude", value_name = "PATH")]
    pub exclude: Vec<PathBuf>,
    /// List name written to the file header
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Debug, Args)]
pub struct RemoveArgs {
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    /// Stop-list file, or `bundled:<name>` for a shipped list
    #[arg(long, value_name = "LIST")]
    pub stoplist: String,
    #[arg(long = "out", value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Table,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    /// Stop-list file or `bundled:<name>`; repeatable
    #[arg(long = "stoplist", value_name = "LIST", required = true)]
    pub stoplists: Vec<String>,
    #[arg(long = "output-format", value_enum, default_value_t = OutputFormat::Table)]
    pub output_format: OutputFormat,
    #[arg(long = "out", value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Labeled tokenized documents used for training
    #[arg(long, value_name = "PATH")]
    pub train: PathBuf,
    /// Labeled tokenized documents used for scoring
    #[arg(long, value_name = "PATH")]
    pub test: PathBuf,
    #[arg(long, default_value_t = DEFAULT_ALPHA, value_parser = positive_f64)]
    pub alpha: f64,
    #[arg(long = "output-format", value_enum, default_value_t = OutputFormat::Csv)]
    pub output_format: OutputFormat,
    #[arg(long = "out", value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RankEvalArgs {
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 10, value_parser = positive_usize)]
    pub k: usize,
    #[arg(long = "output-format", value_enum, default_value_t = OutputFormat::Csv)]
    pub output_format: OutputFormat,
    #[arg(long = "out", value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AucArgs {
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    /// Also write ROC points as `fpr,tpr` CSV
    #[arg(long, value_name = "PATH")]
    pub roc: Option<PathBuf>,
    #[arg(long = "output-format", value_enum, default_value_t = OutputFormat::Csv)]
    pub output_format: OutputFormat,
    #[arg(long = "out", value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Metric CSV of the run without a stop list
    #[arg(long, value_name = "PATH")]
    pub baseline: PathBuf,
    /// `NAME=PATH` metric CSV for one stop list; repeatable
    #[arg(long = "candidate", value_name = "NAME=PATH", required = true, value_parser = parse_candidate)]
    pub candidates: Vec<(String, PathBuf)>,
    #[arg(long, default_value_t = DEFAULT_EPSILON, value_parser = non_negative_f64)]
    pub epsilon: f64,
    #[arg(long = "output-format", value_enum, default_value_t = OutputFormat::Table)]
    pub output_format: OutputFormat,
    #[arg(long = "out", value_name = "PATH")]
    pub output: Option<PathBuf>,
}

fn parse_format(s: &str) -> Result<CorpusFormat, String> {
    s.parse().map_err(|e: stopkit::Error| e.to_string())
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(v) => Err(format!("must be a finite number > 0, got {v}")),
        Err(e) => Err(e.to_string()),
    }
}

fn non_negative_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.is_finite() => Ok(v),
        Ok(v) => Err(format!("must be a finite number >= 0, got {v}")),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_candidate(s: &str) -> Result<(String, PathBuf), String> {
    match s.split_once('=') {
        Some((name, path)) if !name.is_empty() && !path.is_empty() => Ok((name.to_string(), PathBuf::from(path))),
        _ => Err(format!("expected NAME=PATH, got {s:?}")),
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(String),
}

impl From<stopkit::Error> for Failure {
    fn from(e: stopkit::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

impl From<clap::Error> for Failure {
    fn from(e: clap::Error) -> Self {
        Failure::Usage(e.render().to_string())
    }
}

fn write_failed(path: &Path, e: io::Error) -> Failure {
    Failure::Data(format!("cannot write {}: {e}", path.display()))
}

/// Parses `args` (program name first), runs the subcommand and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match parse(&args) {
        Ok(cli) => cli,
        Err(ParseOutcome::Display(text)) => {
            let _ = write!(out, "{text}");
            return EXIT_OK;
        }
        Err(ParseOutcome::Failed(f)) => return report(f, err),
    };
    match dispatch(&cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(f) => report(f, err),
    }
}

fn report(f: Failure, err: &mut dyn Write) -> i32 {
    match f {
        Failure::Usage(msg) => {
            let _ = write!(err, "{msg}");
            if !msg.ends_with('\n') {
                let _ = writeln!(err);
            }
            EXIT_USAGE
        }
        Failure::Data(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DATA
        }
    }
}

enum ParseOutcome {
    Display(String),
    Failed(Failure),
}

impl From<Failure> for ParseOutcome {
    fn from(f: Failure) -> Self {
        ParseOutcome::Failed(f)
    }
}

impl From<clap::Error> for ParseOutcome {
    fn from(e: clap::Error) -> Self {
        use clap::error::ErrorKind;
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ParseOutcome::Display(e.render().to_string()),
            _ => ParseOutcome::Failed(e.into()),
        }
    }
}

/// Finds `--config` and the subcommand in `args`, appends the config
/// values for every flag not already on the command line, then parses.
fn parse(args: &[OsString]) -> Result<Cli, ParseOutcome> {
    let cmd = Cli::command();
    let Some(path) = config_path(args) else {
        return Ok(Cli::try_parse_from(args)?);
    };
    let Some(sub) = args
        .iter()
        .skip(1)
        .filter_map(|a| a.to_str())
        .find_map(|a| cmd.find_subcommand(a))
    else {
        // let clap report the missing subcommand
        return Ok(Cli::try_parse_from(args)?);
    };
    let sub_name = sub.get_name();

    let text = fs::read_to_string(&path)
        .map_err(|e| Failure::Usage(format!("error: cannot read config {}: {e}", path.display())))?;
    let json: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("error: config {} is not valid JSON: {e}", path.display())))?;
    let serde_json::Value::Object(fields) = json else {
        return Err(Failure::Usage(format!("error: config {} must be a JSON object", path.display())).into());
    };

    let mut full = args.to_vec();
    for (key, value) in fields {
        if key == "subcommand" {
            if value.as_str() != Some(sub_name) {
                return Err(Failure::Usage(format!("error: config is for subcommand {value}, not {sub_name}")).into());
            }
            continue;
        }
        let long = sub
            .get_arguments()
            .filter(|a| a.get_id() == key.as_str() && a.get_id() != "config")
            .find_map(|a| a.get_long())
            .ok_or_else(|| Failure::Usage(format!("error: config key {key:?} is not a flag of `{sub_name}`")))?;
        let flag = format!("--{long}");
        if given(args, &flag) {
            continue;
        }
        let values = match value {
            serde_json::Value::Array(items) => items,
            other => vec![other],
        };
        for v in values {
            let text = match v {
                serde_json::Value::String(s) => s,
                serde_json::Value::Number(n) => n.to_string(),
                serde_json::Value::Bool(b) => b.to_string(),
                other => {
                    return Err(Failure::Usage(format!("error: config key {key:?} has unsupported value {other}")).into())
                }
            };
            full.push(flag.clone().into());
            full.push(text.into());
        }
    }
    Ok(Cli::try_parse_from(full)?)
}

fn config_path(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        let a = a.to_str()?;
        if a == "--" {
            return None;
        }
        if a == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(PathBuf::from(p));
        }
    }
    None
}

fn given(args: &[OsString], flag: &str) -> bool {
    args.iter()
        .filter_map(|a| a.to_str())
        .any(|a| a == flag || a.strip_prefix(flag).is_some_and(|rest| rest.starts_with('=')))
}

fn dispatch(command: &Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Select(a) => {
            let corpus = load_corpus(&a.input, a.format)?;
            let selected = select_top_viewed_per_tag(&corpus, &a.tags, a.n as usize);
            emit_jsonl(selected.docs(), a.output.as_deref(), out)
        }
        Command::Preprocess(a) => {
            let corpus = load_corpus(&a.input, a.format)?;
            let docs = preprocess_corpus(&corpus, &CleaningConfig::from(&a.cleaning));
            emit_jsonl(&docs, a.output.as_deref(), out)
        }
        Command::Stats(a) => {
            let docs = read_tokenized(&a.input)?;
            let stats = compute_stats(&docs)?;
            let mut buf = Vec::new();
            write_scores_csv(&stats.score_rows(), &mut buf)?;
            emit(&buf, a.output.as_deref(), out)
        }
        Command::Genlist(a) => {
            let list = genlist(a)?;
            emit(render_stoplist(&list).as_bytes(), a.output.as_deref(), out)
        }
        Command::Remove(a) => {
            let docs = read_tokenized(&a.input)?;
            let list = resolve_stoplist(&a.stoplist)?;
            emit_jsonl(&remove_all(&docs, &list), a.output.as_deref(), out)
        }
        Command::Report(a) => {
            let docs = read_tokenized(&a.input)?;
            let mut reports = Vec::new();
            for arg in &a.stoplists {
                reports.push(reduction_report(&docs, &resolve_stoplist(arg)?)?);
            }
            let text = match a.output_format {
                OutputFormat::Csv => reports_to_csv(&reports),
                OutputFormat::Table => reports_to_table(&reports),
            };
            emit(text.as_bytes(), a.output.as_deref(), out)
        }
        Command::Classify(a) => {
            let train = read_tokenized(&a.train)?;
            let test = read_tokenized(&a.test)?;
            let report = one_vs_rest(&train, &test, a.alpha)?;
            emit_report(&report, a.output_format, a.output.as_deref(), out)
        }
        Command::RankEval(a) => {
            let results = read_ranked_results(&a.input)?;
            let m = ranking_metrics(&results, a.k)?;
            emit_report(&EvalReport::from_ranking(&m, a.k), a.output_format, a.output.as_deref(), out)
        }
        Command::Auc(a) => {
            let instances = read_scored_instances(&a.input)?;
            let mut report = EvalReport::default();
            report.insert("auc", auc(&instances)?);
            if let Some(path) = &a.roc {
                let mut csv = String::from("fpr,tpr\n");
                for (fpr, tpr) in roc_curve(&instances)? {
                    csv.push_str(&format!("{fpr},{tpr}\n"));
                }
                fs::write(path, csv).map_err(|e| write_failed(path, e))?;
            }
            emit_report(&report, a.output_format, a.output.as_deref(), out)
        }
        Command::Compare(a) => {
            let baseline = EvalReport::load_csv(&a.baseline)?;
            let mut candidates = Vec::new();
            for (name, path) in &a.candidates {
                candidates.push((name.clone(), EvalReport::load_csv(path)?));
            }
            let cmp = compare_runs(&baseline, &candidates, a.epsilon)?;
            let text = match a.output_format {
                OutputFormat::Csv => cmp.to_csv(),
                OutputFormat::Table => cmp.to_table(),
            };
            emit(text.as_bytes(), a.output.as_deref(), out)
        }
    }
}

/// The library call behind `genlist`, exposed for parity checks.
pub fn genlist(a: &GenlistArgs) -> Result<StopList, stopkit::Error> {
    let rows = read_scores_csv(&a.input)?;
    let mut list = match a.method {
        GenMethod::Tfidf => tfidf_stoplist_from_scores(&rows, a.size, a.min_df)?,
        GenMethod::Poisson => poisson_stoplist_from_scores(&rows, a.size, a.tolerance, a.min_tf, a.seed)?,
    };
    list.provenance.insert(0, format!("source: {}", a.input.display()));
    for path in &a.exclude {
        let excluded = load_stoplist(path)?;
        list = apply_exclusions(&list, &excluded.words, &path.display().to_string());
    }
    if let Some(name) = &a.name {
        list.name = name.clone();
    }
    Ok(list)
}

/// A stop-list file path, or `bundled:<name>` for one of the shipped lists.
pub fn resolve_stoplist(arg: &str) -> Result<StopList, stopkit::Error> {
    match arg.strip_prefix("bundled:") {
        Some(name) => bundled(name).ok_or_else(|| {
            stopkit::Error::InvalidArgument(format!("no bundled list {name:?}; available: {}", BUNDLED.join(", ")))
        }),
        None => load_stoplist(arg),
    }
}

fn emit(bytes: &[u8], path: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| write_failed(p, e)),
        None => out
            .write_all(bytes)
            .and_then(|()| out.flush())
            .map_err(|e| Failure::Data(format!("cannot write output: {e}"))),
    }
}

fn emit_jsonl<T: Serialize>(records: &[T], path: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    let mut buf = Vec::new();
    for r in records {
        serde_json::to_writer(&mut buf, r).map_err(|e| Failure::Data(e.to_string()))?;
        buf.push(b'\n');
    }
    emit(&buf, path, out)
}

fn emit_report(
    report: &EvalReport,
    format: OutputFormat,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let text = match format {
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Table => report.to_table(),
    };
    emit(text.as_bytes(), path, out)
}
