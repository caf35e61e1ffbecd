//! Multilingual ontology matching through a pivot language.
//!
//! Labels of both ontologies are translated into a shared pivot language
//! with glossaries, then a hybrid matcher stack (lexical, semantic,
//! structural, cross-type) scores candidate pairs, an alignment is
//! extracted, and the result can be scored against a reference alignment.

pub mod alignment;
pub mod evaluation;
pub mod lexicon;
pub mod matchers;
pub mod onto;
pub mod pipeline;

pub use alignment::{Alignment, Correspondence, Relation};
pub use evaluation::{evaluate, EvalReport, Metric};
pub use matchers::{Cardinality, MatchConfig, MatcherId, SimilarityMatrix};
pub use pipeline::{pivot_match, PipelineConfig, PipelineError, PipelineReport, Stage};

pub use onto::{
    classify_size, compute_metrics, parse_turtle, serialize_turtle, structural_context, Axiom,
    Entity, EntityKind, Iri, Label, Ontology, OntologyError, OntologyMetrics, SizeClass,
    StructureClass,
};
