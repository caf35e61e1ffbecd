//! Hybrid matcher stack: lexical, semantic, structural and cross-type
//! matchers, score aggregation and alignment extraction.

mod aggregate;
mod crosstype;
mod extract;
mod lexical;
mod semantic;
mod string_sim;
mod structural;
mod view;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::onto::{EntityKind, Iri};

pub use aggregate::aggregate;
pub use crosstype::cross_type_matcher;
pub use extract::extract_alignment;
pub use lexical::lexical_matcher;
pub use semantic::{semantic_matcher, synonym_jaccard};
pub use string_sim::{edit_distance, levenshtein_sim, normalize_for_edit, token_jaccard_sim};
pub use structural::structural_matcher;
pub use view::{PivotEntry, PivotView};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatchError {
    #[error("entity {0} has no pivot-language label")]
    MissingPivotLabel(Iri),
    #[error("no weight configured for matcher `{0}`")]
    UnknownProducer(MatcherId),
    #[error("invalid match configuration: {0}")]
    InvalidConfig(String),
}

/// Matcher identifiers as used in configuration weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatcherId {
    Lexical,
    Semantic,
    Structural,
    #[serde(rename = "crosstype")]
    CrossType,
    /// Output of [`aggregate`]; never a weight key.
    Aggregate,
}

impl MatcherId {
    pub const WEIGHTED: [MatcherId; 4] = [
        MatcherId::Lexical,
        MatcherId::Semantic,
        MatcherId::Structural,
        MatcherId::CrossType,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MatcherId::Lexical => "lexical",
            MatcherId::Semantic => "semantic",
            MatcherId::Structural => "structural",
            MatcherId::CrossType => "crosstype",
            MatcherId::Aggregate => "aggregate",
        }
    }

    /// Whether this matcher scores pairs of the given kind combination.
    pub fn applies_to(self, kinds: (EntityKind, EntityKind)) -> bool {
        match self {
            MatcherId::CrossType => kinds.0 != kinds.1,
            MatcherId::Aggregate => true,
            _ => kinds.0 == kinds.1,
        }
    }
}

impl fmt::Display for MatcherId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MatcherId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        MatcherId::WEIGHTED
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown matcher `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cardinality {
    #[default]
    OneToOne,
    ManyToMany,
}

impl FromStr for Cardinality {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "one-to-one" => Ok(Cardinality::OneToOne),
            "many-to-many" => Ok(Cardinality::ManyToMany),
            other => Err(format!("unknown cardinality `{other}`")),
        }
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cardinality::OneToOne => "one-to-one",
            Cardinality::ManyToMany => "many-to-many",
        })
    }
}

/// Matching parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MatchConfig {
    /// A matcher runs only if it has a positive weight.
    pub weights: BTreeMap<MatcherId, f64>,
    pub threshold: f64,
    pub cardinality: Cardinality,
    pub crosstype: bool,
    pub structural_alpha: f64,
    pub structural_rounds: usize,
    pub stopwords: bool,
}

impl Default for MatchConfig {
    fn default() -> Self {
        MatchConfig {
            weights: MatcherId::WEIGHTED.into_iter().map(|m| (m, 1.0)).collect(),
            threshold: 0.8,
            cardinality: Cardinality::OneToOne,
            crosstype: true,
            structural_alpha: 0.25,
            structural_rounds: 2,
            stopwords: false,
        }
    }
}

impl MatchConfig {
    pub fn validate(&self) -> Result<(), MatchError> {
        let bad = |m: String| Err(MatchError::InvalidConfig(m));
        if self.weights.contains_key(&MatcherId::Aggregate) {
            return bad("`aggregate` cannot carry a weight".into());
        }
        if let Some((m, w)) = self.weights.iter().find(|(_, w)| !(w.is_finite() && **w >= 0.0)) {
            return bad(format!("weight of `{m}` must be a non-negative number, got {w}"));
        }
        if self.weights.values().sum::<f64>() <= 0.0 {
            return bad("weights must sum to more than zero".into());
        }
        if !(0.0..=1.0).contains(&self.threshold) {
            return bad(format!("threshold {} outside [0, 1]", self.threshold));
        }
        if !(0.0..1.0).contains(&self.structural_alpha) {
            return bad(format!("structural_alpha {} outside [0, 1)", self.structural_alpha));
        }
        Ok(())
    }

    pub fn weight(&self, m: MatcherId) -> f64 {
        self.weights.get(&m).copied().unwrap_or(0.0)
    }

    pub fn enabled(&self, m: MatcherId) -> bool {
        let on = self.weight(m) > 0.0;
        if m == MatcherId::CrossType {
            on && self.crosstype
        } else {
            on
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidatePair {
    pub left: Iri,
    pub right: Iri,
    pub kinds: (EntityKind, EntityKind),
}

impl CandidatePair {
    pub fn new(left: Iri, right: Iri, kinds: (EntityKind, EntityKind)) -> Self {
        CandidatePair { left, right, kinds }
    }

    pub fn is_cross_kind(&self) -> bool {
        self.kinds.0 != self.kinds.1
    }
}

/// Scores in [0, 1] for candidate pairs; an absent pair scores 0.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    pub producer: MatcherId,
    scores: BTreeMap<CandidatePair, f64>,
}

impl SimilarityMatrix {
    pub fn new(producer: MatcherId) -> Self {
        SimilarityMatrix {
            producer,
            scores: BTreeMap::new(),
        }
    }

    /// Stores a score clamped to [0, 1]; zero scores are not stored.
    pub fn insert(&mut self, pair: CandidatePair, score: f64) {
        let s = if score.is_nan() { 0.0 } else { score.clamp(0.0, 1.0) };
        if s > 0.0 {
            self.scores.insert(pair, s);
        } else {
            self.scores.remove(&pair);
        }
    }

    pub fn get(&self, pair: &CandidatePair) -> f64 {
        self.scores.get(pair).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CandidatePair, f64)> {
        self.scores.iter().map(|(p, s)| (p, *s))
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

impl FromIterator<(CandidatePair, f64)> for SimilarityMatrix {
    /// Collects into a matrix tagged [`MatcherId::Aggregate`].
    fn from_iter<T: IntoIterator<Item = (CandidatePair, f64)>>(iter: T) -> Self {
        let mut m = SimilarityMatrix::new(MatcherId::Aggregate);
        for (p, s) in iter {
            m.insert(p, s);
        }
        m
    }
}
