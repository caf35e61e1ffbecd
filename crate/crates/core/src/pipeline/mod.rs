//! End-to-end workflow: translate both ontologies into the pivot language,
//! run the matcher stack, extract and optionally merge an alignment.

mod config;

use std::fmt;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::alignment::{merge_input_alignment, Alignment, Relation};
use crate::evaluation::{evaluate, EvalReport};
use crate::lexicon::{outcome_counts, translate_ontology, ResourceBundle, TranslationCounts};
use crate::matchers::{
    aggregate, cross_type_matcher, extract_alignment, lexical_matcher, semantic_matcher, structural_matcher,
    MatchConfig, MatcherId, PivotView, SimilarityMatrix,
};
use crate::onto::{compute_metrics, parse_turtle, Ontology, OntologyMetrics};

pub use config::{load_bundle, BundlePaths, OutputPaths, PipelineConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Config,
    Parse,
    Lexicon,
    Matchers,
    Extraction,
    Merge,
    Evaluation,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Config => "config",
            Stage::Parse => "parse",
            Stage::Lexicon => "lexicon",
            Stage::Matchers => "matchers",
            Stage::Extraction => "extraction",
            Stage::Merge => "merge",
            Stage::Evaluation => "evaluation",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{stage} stage: {message}")]
pub struct PipelineError {
    pub stage: Stage,
    pub message: String,
}

impl PipelineError {
    pub fn new(stage: Stage, message: impl fmt::Display) -> Self {
        PipelineError {
            stage,
            message: message.to_string(),
        }
    }
}

/// Parses Turtle, tagging failures with the parse stage and `name`.
pub fn parse_ontology(text: &str, name: &str) -> Result<Ontology, PipelineError> {
    parse_turtle(text).map_err(|e| PipelineError::new(Stage::Parse, format!("{name}: {e}")))
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct StageTimings {
    pub translate_ms: f64,
    pub match_ms: f64,
    pub extract_ms: f64,
    pub merge_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlignmentSummary {
    pub correspondences: usize,
    pub equivalence: usize,
    pub cross_type: usize,
    pub from_input: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineReport {
    pub timings: StageTimings,
    pub translation: [TranslationCounts; 2],
    pub metrics: [OntologyMetrics; 2],
    pub alignment: AlignmentSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evaluation: Option<EvalReport>,
}

impl PipelineReport {
    /// Scores `a` against `reference` and stores the result.
    pub fn attach_evaluation(&mut self, a: &Alignment, reference: &Alignment) -> Result<&EvalReport, PipelineError> {
        let rep = evaluate(a, reference).map_err(|e| PipelineError::new(Stage::Evaluation, e))?;
        Ok(self.evaluation.insert(rep))
    }

    /// A few human-readable lines.
    pub fn summary(&self) -> String {
        let a = &self.alignment;
        let mut s = format!(
            "correspondences\t{}\nequivalence\t{}\ncross_type\t{}\nfrom_input\t{}\n",
            a.correspondences, a.equivalence, a.cross_type, a.from_input
        );
        for (i, (t, m)) in self.translation.iter().zip(&self.metrics).enumerate() {
            s.push_str(&format!(
                "ontology{}\t{} entities, {} translated, {} disambiguated, {} passthrough\n",
                i + 1,
                m.primitive_count,
                t.translated,
                t.disambiguated,
                t.passthrough
            ));
        }
        if let Some(e) = &self.evaluation {
            s.push_str(&e.to_text());
        }
        s
    }
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

/// Runs every enabled matcher over the two translated ontologies and
/// aggregates. The structural matcher is seeded with the weighted mean of
/// the lexical and semantic scores (plain mean when both weights are 0).
pub fn run_matchers(
    t1: &Ontology,
    t2: &Ontology,
    bundle: &ResourceBundle,
    cfg: &MatchConfig,
) -> Result<SimilarityMatrix, PipelineError> {
    let err = |e| PipelineError::new(Stage::Matchers, e);
    cfg.validate().map_err(err)?;
    let stop = cfg.stopwords.then_some(&bundle.stopwords);
    let pivot = bundle.pivot_lang();
    let v1 = PivotView::new(t1, pivot, stop).map_err(err)?;
    let v2 = PivotView::new(t2, pivot, stop).map_err(err)?;

    let want_structural = cfg.enabled(MatcherId::Structural);
    let lexical = (cfg.enabled(MatcherId::Lexical) || want_structural).then(|| lexical_matcher(&v1, &v2));
    let semantic =
        (cfg.enabled(MatcherId::Semantic) || want_structural).then(|| semantic_matcher(&v1, &v2, &bundle.synonyms));

    let mut matrices = Vec::new();
    if want_structural {
        let mut seed_cfg = cfg.clone();
        let (wl, ws) = (cfg.weight(MatcherId::Lexical), cfg.weight(MatcherId::Semantic));
        let (wl, ws) = if wl + ws > 0.0 { (wl, ws) } else { (1.0, 1.0) };
        seed_cfg.weights = [(MatcherId::Lexical, wl), (MatcherId::Semantic, ws)].into();
        let seeds = [lexical.clone().expect("computed"), semantic.clone().expect("computed")];
        let seed = aggregate(&seeds, &seed_cfg).map_err(err)?;
        matrices.push(structural_matcher(&seed, t1, t2, cfg));
    }
    if cfg.enabled(MatcherId::Lexical) {
        matrices.extend(lexical);
    }
    if cfg.enabled(MatcherId::Semantic) {
        matrices.extend(semantic);
    }
    if cfg.enabled(MatcherId::CrossType) {
        matrices.push(cross_type_matcher(&v1, &v2, &bundle.synonyms));
    }
    aggregate(&matrices, cfg).map_err(err)
}

/// Translate, match, extract, and merge the input alignment when given.
/// Correspondences use the original IRIs; translation never changes them.
pub fn pivot_match(
    o1: &Ontology,
    o2: &Ontology,
    bundle: &ResourceBundle,
    cfg: &MatchConfig,
    input: Option<&Alignment>,
) -> Result<(Alignment, PipelineReport), PipelineError> {
    let mut timings = StageTimings::default();

    let start = Instant::now();
    let lex_err = |which: &str, e: crate::lexicon::LexiconError| PipelineError::new(Stage::Lexicon, format!("{which}: {e}"));
    let (t1, out1) = translate_ontology(o1, bundle).map_err(|e| lex_err("ontology1", e))?;
    let (t2, out2) = translate_ontology(o2, bundle).map_err(|e| lex_err("ontology2", e))?;
    timings.translate_ms = ms(start);

    let start = Instant::now();
    let scores = run_matchers(&t1, &t2, bundle, cfg)?;
    timings.match_ms = ms(start);

    let start = Instant::now();
    let mut alignment = extract_alignment(&scores, o1, o2, cfg);
    alignment.config = Some(cfg.clone());
    timings.extract_ms = ms(start);

    let mut from_input = 0;
    if let Some(given) = input {
        let start = Instant::now();
        alignment = merge_input_alignment(&alignment, given, cfg.cardinality)
            .map_err(|e| PipelineError::new(Stage::Merge, e))?;
        from_input = given.len();
        timings.merge_ms = ms(start);
    }

    let count = |r: Relation| alignment.correspondences().iter().filter(|c| c.relation == r).count();
    let report = PipelineReport {
        timings,
        translation: [outcome_counts(&out1), outcome_counts(&out2)],
        metrics: [compute_metrics(o1), compute_metrics(o2)],
        alignment: AlignmentSummary {
            correspondences: alignment.len(),
            equivalence: count(Relation::Equivalence),
            cross_type: count(Relation::CrossType),
            from_input,
        },
        evaluation: None,
    };
    Ok((alignment, report))
}
