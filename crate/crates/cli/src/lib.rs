//! Command line front end for pivot-align.
//!
//! Every command reads its inputs, calls into `pivot_align` and writes
//! plain text. Exit status is 0 on success, 1 for usage errors and 2 when
//! the inputs themselves are bad.

pub mod service;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use pivot_align::alignment::{compose_alignments, parse_alignment_tsv, serialize_alignment_tsv};
use pivot_align::lexicon::{outcome_counts, translate_ontology, ResourceBundle};
use pivot_align::onto::{compute_metrics, serialize_turtle, Ontology};
use pivot_align::pipeline::{load_bundle, parse_ontology, Stage};
use pivot_align::{pivot_match, Alignment, Cardinality, PipelineConfig, PipelineError, PipelineReport};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pivot-align", version, about = "Match ontologies written in different languages through a pivot language")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print size and structure metrics of Turtle ontologies.
    Stats {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Translate every label of an ontology into the pivot language.
    Translate {
        file: PathBuf,
        #[command(flatten)]
        resources: ResourceArgs,
        /// Write the translated Turtle here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Match two ontologies and write the alignment as TSV.
    Match {
        ontology1: PathBuf,
        ontology2: PathBuf,
        #[command(flatten)]
        options: MatchArgs,
        /// Alignment TSV output; defaults to `output.alignment` or standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Known correspondences to merge into the result.
        #[arg(long)]
        input_alignment: Option<PathBuf>,
        /// Reference alignment to score the result against.
        #[arg(long)]
        reference: Option<PathBuf>,
        /// JSON run report; defaults to `output.report` when configured.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Compose an O1-O3 and an O2-O3 alignment into an O1-O2 alignment.
    Compose {
        a13: PathBuf,
        a23: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score an alignment against a reference alignment.
    Eval {
        alignment: PathBuf,
        reference: PathBuf,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Serve `POST /match` and `GET /health` over HTTP.
    Serve {
        #[command(flatten)]
        options: MatchArgs,
        #[arg(long, default_value = "127.0.0.1:8080")]
        bind: SocketAddr,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct ResourceArgs {
    /// TOML configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Glossary file; may be repeated. Added to those in the config.
    #[arg(long = "glossary")]
    pub glossaries: Vec<PathBuf>,
    /// Synonym sets, replacing the configured file.
    #[arg(long)]
    pub synonyms: Option<PathBuf>,
    /// Stopword list, replacing the configured file.
    #[arg(long)]
    pub stopwords: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct MatchArgs {
    #[command(flatten)]
    pub resources: ResourceArgs,
    #[arg(long)]
    pub threshold: Option<f64>,
    /// `one-to-one` or `many-to-many`.
    #[arg(long)]
    pub cardinality: Option<Cardinality>,
    /// Disable class/individual cross-type matching.
    #[arg(long)]
    pub no_crosstype: bool,
}

impl ResourceArgs {
    /// Config file (or defaults) with the command line layered on top.
    pub fn resolve(&self) -> Result<PipelineConfig, PipelineError> {
        let mut cfg = match &self.config {
            Some(path) => PipelineConfig::from_file(path)?,
            None => PipelineConfig::default(),
        };
        cfg.bundle.glossaries.extend(self.glossaries.iter().cloned());
        if let Some(p) = &self.synonyms {
            cfg.bundle.synonyms = Some(p.clone());
        }
        if let Some(p) = &self.stopwords {
            cfg.bundle.stopwords = Some(p.clone());
        }
        Ok(cfg)
    }
}

impl MatchArgs {
    pub fn resolve(&self) -> Result<PipelineConfig, PipelineError> {
        let mut cfg = self.resources.resolve()?;
        let m = &mut cfg.matching;
        if let Some(t) = self.threshold {
            m.threshold = t;
        }
        if let Some(c) = self.cardinality {
            m.cardinality = c;
        }
        if self.no_crosstype {
            m.crosstype = false;
        }
        m.validate().map_err(|e| PipelineError::new(Stage::Config, e))?;
        Ok(cfg)
    }
}

/// The matching run shared by `match` and the service, from Turtle and
/// TSV text. Identical inputs give identical alignments on both paths.
pub fn match_texts(
    ontology1: &str,
    ontology2: &str,
    cfg: &PipelineConfig,
    bundle: &ResourceBundle,
    input_alignment: Option<&str>,
) -> Result<(Alignment, PipelineReport), PipelineError> {
    let o1 = parse_ontology(ontology1, "ontology1")?;
    let o2 = parse_ontology(ontology2, "ontology2")?;
    let input = input_alignment
        .map(|t| parse_alignment_tsv(t).map_err(|e| PipelineError::new(Stage::Parse, format!("inputAlignment: {e}"))))
        .transpose()?;
    pivot_match(&o1, &o2, bundle, &cfg.matching, input.as_ref())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn read_ontology(path: &Path) -> Result<Ontology> {
    Ok(parse_ontology(&read(path)?, &path.display().to_string())?)
}

fn read_alignment(path: &Path) -> Result<Alignment> {
    parse_alignment_tsv(&read(path)?).with_context(|| path.display().to_string())
}

/// Parses `args` (program name first) and runs the command. Help and
/// version requests count as success.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_DATA
        }
    }
}

pub fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match command {
        Command::Stats { files } => {
            writeln!(out, "file\tconcepts\tproperties\tindividuals\tprimitives\taxioms\tsize\tstructure")?;
            for f in files {
                let m = compute_metrics(&read_ontology(&f)?);
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    f.display(),
                    m.concept_count,
                    m.property_count,
                    m.individual_count,
                    m.primitive_count,
                    m.axiom_count,
                    m.size_class,
                    m.structure_class
                )?;
            }
        }
        Command::Translate { file, resources, out: target } => {
            let cfg = resources.resolve()?;
            let bundle = load_bundle(&cfg)?;
            let o = read_ontology(&file)?;
            let (t, outcomes) = translate_ontology(&o, &bundle).map_err(|e| PipelineError::new(Stage::Lexicon, e))?;
            let c = outcome_counts(&outcomes);
            let text = serialize_turtle(&t);
            match target {
                Some(p) => write(&p, &text)?,
                None => out.write_all(text.as_bytes())?,
            }
            writeln!(
                err,
                "{} translated, {} disambiguated, {} passthrough",
                c.translated, c.disambiguated, c.passthrough
            )?;
        }
        Command::Match { ontology1, ontology2, options, out: target, input_alignment, reference, report } => {
            let cfg = options.resolve()?;
            let bundle = load_bundle(&cfg)?;
            let input = input_alignment.as_deref().map(read).transpose()?;
            let (a, mut rep) = match_texts(&read(&ontology1)?, &read(&ontology2)?, &cfg, &bundle, input.as_deref())
                .map_err(|e| with_paths(e, &ontology1, &ontology2))?;
            if let Some(r) = &reference {
                rep.attach_evaluation(&a, &read_alignment(r)?)?;
            }
            let tsv = serialize_alignment_tsv(&a);
            let summary_to: &mut dyn Write = match target.or(cfg.output.alignment) {
                Some(p) => {
                    write(&p, &tsv)?;
                    out
                }
                None => {
                    out.write_all(tsv.as_bytes())?;
                    err
                }
            };
            summary_to.write_all(rep.summary().as_bytes())?;
            if let Some(p) = report.or(cfg.output.report) {
                write(&p, &(serde_json::to_string_pretty(&rep)? + "\n"))?;
            }
        }
        Command::Compose { a13, a23, out: target } => {
            let composed = compose_alignments(&read_alignment(&a13)?, &read_alignment(&a23)?)?;
            let tsv = serialize_alignment_tsv(&composed);
            match target {
                Some(p) => write(&p, &tsv)?,
                None => out.write_all(tsv.as_bytes())?,
            }
        }
        Command::Eval { alignment, reference, json } => {
            let rep = pivot_align::evaluate(&read_alignment(&alignment)?, &read_alignment(&reference)?)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&rep)?)?;
            } else {
                out.write_all(rep.to_text().as_bytes())?;
            }
        }
        Command::Serve { options, bind } => {
            let cfg = options.resolve()?;
            let bundle = load_bundle(&cfg)?;
            let state = Arc::new(service::ServiceState { config: cfg, bundle });
            let rt = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
            rt.block_on(service::serve(bind, state))?;
        }
    }
    Ok(())
}

/// Names the offending file in parse errors instead of `ontologyN`.
fn with_paths(mut e: PipelineError, p1: &Path, p2: &Path) -> PipelineError {
    if e.stage == Stage::Parse {
        for (name, p) in [("ontology1:", p1), ("ontology2:", p2)] {
            if let Some(rest) = e.message.strip_prefix(name) {
                e.message = format!("{}:{rest}", p.display());
            }
        }
    }
    e
}
