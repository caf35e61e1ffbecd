//! Alignments: correspondences between entities of two ontologies.

mod compose;
mod tsv;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matchers::{Cardinality, MatchConfig};
use crate::onto::Iri;

pub use compose::{compose_alignments, compose_relations};
pub use tsv::{parse_alignment_tsv, serialize_alignment_tsv, TSV_HEADER};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlignmentError {
    #[error("line {line}: expected header `ID\\tOntology1\\tOntology2\\tSimilarity\\tRelation`")]
    BadHeader { line: usize },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("line {line}: similarity `{value}` is not a number")]
    BadSimilarity { line: usize, value: String },
    #[error("similarity {0} outside [0, 1]")]
    SimilarityRange(f64),
    #[error("line {line}: unknown relation `{symbol}`")]
    UnknownRelation { line: usize, symbol: String },
    #[error("duplicate correspondence {0} {2} {1}")]
    Duplicate(Iri, Iri, Relation),
    #[error("alignments are over different ontologies ({0} vs {1})")]
    OntologyMismatch(String, String),
    #[error("alignments do not share a pivot ontology ({0} vs {1})")]
    NoSharedPivot(String, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Relation {
    Equivalence,
    Subsumes,
    SubsumedBy,
    CrossType,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Equivalence => "=",
            Relation::Subsumes => ">",
            Relation::SubsumedBy => "<",
            Relation::CrossType => "~",
        }
    }

    /// Relation read in the opposite direction.
    pub fn inverse(self) -> Relation {
        match self {
            Relation::Subsumes => Relation::SubsumedBy,
            Relation::SubsumedBy => Relation::Subsumes,
            r => r,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "=" => Relation::Equivalence,
            ">" => Relation::Subsumes,
            "<" => Relation::SubsumedBy,
            "~" => Relation::CrossType,
            other => return Err(other.to_string()),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Correspondence {
    pub id: usize,
    pub entity1: Iri,
    pub entity2: Iri,
    pub relation: Relation,
    pub similarity: f64,
}

impl Correspondence {
    /// Identity used for uniqueness and for evaluation; similarity ignored.
    pub fn key(&self) -> (&Iri, &Iri, Relation) {
        (&self.entity1, &self.entity2, self.relation)
    }
}

/// Ordered correspondences with consecutive ids `0..n`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Alignment {
    pub onto1: Option<String>,
    pub onto2: Option<String>,
    correspondences: Vec<Correspondence>,
    keys: BTreeSet<(Iri, Iri, Relation)>,
    /// Configuration that produced the alignment; absent for hand-written ones.
    pub config: Option<MatchConfig>,
}

impl Alignment {
    pub fn new(onto1: Option<String>, onto2: Option<String>) -> Self {
        Alignment {
            onto1,
            onto2,
            ..Default::default()
        }
    }

    pub fn correspondences(&self) -> &[Correspondence] {
        &self.correspondences
    }

    pub fn len(&self) -> usize {
        self.correspondences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.correspondences.is_empty()
    }

    pub fn contains(&self, e1: &Iri, e2: &Iri, relation: Relation) -> bool {
        self.keys.contains(&(e1.clone(), e2.clone(), relation))
    }

    /// Appends a correspondence with the next id.
    pub fn push(
        &mut self,
        entity1: Iri,
        entity2: Iri,
        relation: Relation,
        similarity: f64,
    ) -> Result<usize, AlignmentError> {
        if !(0.0..=1.0).contains(&similarity) {
            return Err(AlignmentError::SimilarityRange(similarity));
        }
        if !self
            .keys
            .insert((entity1.clone(), entity2.clone(), relation))
        {
            return Err(AlignmentError::Duplicate(entity1, entity2, relation));
        }
        let id = self.correspondences.len();
        self.correspondences.push(Correspondence {
            id,
            entity1,
            entity2,
            relation,
            similarity,
        });
        Ok(id)
    }

    /// True when no entity occurs in two correspondences on the same side.
    pub fn is_one_to_one(&self) -> bool {
        let mut left = BTreeSet::new();
        let mut right = BTreeSet::new();
        self.correspondences
            .iter()
            .all(|c| left.insert(&c.entity1) && right.insert(&c.entity2))
    }

    /// Same ontology pair; an absent reference matches anything.
    pub fn check_same_pair(&self, other: &Alignment) -> Result<(), AlignmentError> {
        for (a, b) in [(&self.onto1, &other.onto1), (&self.onto2, &other.onto2)] {
            if let (Some(a), Some(b)) = (a, b) {
                if a != b {
                    return Err(AlignmentError::OntologyMismatch(a.clone(), b.clone()));
                }
            }
        }
        Ok(())
    }
}

/// Adds the `given` correspondences, with their own similarity, to the
/// computed ones. Under one-to-one cardinality, computed correspondences
/// sharing an endpoint with a given one are dropped. Given correspondences
/// come first; ids are renumbered.
pub fn merge_input_alignment(
    computed: &Alignment,
    given: &Alignment,
    cardinality: Cardinality,
) -> Result<Alignment, AlignmentError> {
    computed.check_same_pair(given)?;
    let mut out = Alignment::new(
        computed.onto1.clone().or_else(|| given.onto1.clone()),
        computed.onto2.clone().or_else(|| given.onto2.clone()),
    );
    out.config = computed.config.clone();
    let pinned_left: BTreeSet<&Iri> = given.correspondences.iter().map(|c| &c.entity1).collect();
    let pinned_right: BTreeSet<&Iri> = given.correspondences.iter().map(|c| &c.entity2).collect();
    for c in &given.correspondences {
        out.push(c.entity1.clone(), c.entity2.clone(), c.relation, c.similarity)?;
    }
    for c in &computed.correspondences {
        if out.contains(&c.entity1, &c.entity2, c.relation) {
            continue;
        }
        if cardinality == Cardinality::OneToOne
            && (pinned_left.contains(&c.entity1) || pinned_right.contains(&c.entity2))
        {
            continue;
        }
        out.push(c.entity1.clone(), c.entity2.clone(), c.relation, c.similarity)?;
    }
    Ok(out)
}
