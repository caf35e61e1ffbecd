use std::collections::BTreeSet;

use rayon::prelude::*;

use super::string_sim::normalize_for_edit;
use super::{CandidatePair, MatchError, MatcherId, SimilarityMatrix};
use crate::lexicon::{tokenize, TokenSequence};
use crate::onto::{EntityKind, Iri, Ontology};

/// Pivot-language label of one entity, pre-processed for the matchers.
#[derive(Debug, Clone)]
pub struct PivotEntry {
    pub iri: Iri,
    pub kind: EntityKind,
    pub text: String,
    pub tokens: TokenSequence,
    /// Token set after optional stopword removal.
    pub token_set: BTreeSet<String>,
    pub(crate) edit_chars: Vec<char>,
}

/// Pivot labels of every entity of an ontology, in IRI order.
#[derive(Debug, Clone)]
pub struct PivotView<'o> {
    pub ontology: &'o Ontology,
    pub entries: Vec<PivotEntry>,
}

impl<'o> PivotView<'o> {
    /// Fails on the first entity (in IRI order) without a `pivot` label.
    pub fn new(
        ontology: &'o Ontology,
        pivot: &str,
        stopwords: Option<&BTreeSet<String>>,
    ) -> Result<Self, MatchError> {
        let mut entries = Vec::with_capacity(ontology.entity_count());
        for e in ontology.entities() {
            let label = e
                .label_for(pivot)
                .ok_or_else(|| MatchError::MissingPivotLabel(e.iri.clone()))?;
            let tokens = tokenize(&label.text).unwrap_or_default();
            let token_set = tokens
                .iter()
                .filter(|t| stopwords.is_none_or(|s| !s.contains(*t)))
                .cloned()
                .collect();
            entries.push(PivotEntry {
                iri: e.iri.clone(),
                kind: e.kind,
                text: label.text.clone(),
                edit_chars: normalize_for_edit(&label.text),
                tokens,
                token_set,
            });
        }
        Ok(PivotView { ontology, entries })
    }

    pub fn of_kind(&self, kind: EntityKind) -> impl Iterator<Item = &PivotEntry> + Clone + Sync {
        self.entries.iter().filter(move |e| e.kind == kind)
    }
}

/// Scores same-kind pairs, or (Class, NamedIndividual) and
/// (NamedIndividual, Class) pairs when `cross` is set. Rows run in parallel;
/// the result does not depend on scheduling.
pub(crate) fn score_pairs<F>(
    v1: &PivotView<'_>,
    v2: &PivotView<'_>,
    cross: bool,
    producer: MatcherId,
    score: F,
) -> SimilarityMatrix
where
    F: Fn(&PivotEntry, &PivotEntry) -> f64 + Sync,
{
    let wanted = |a: EntityKind, b: EntityKind| {
        if cross {
            matches!(
                (a, b),
                (EntityKind::Class, EntityKind::NamedIndividual)
                    | (EntityKind::NamedIndividual, EntityKind::Class)
            )
        } else {
            a == b
        }
    };
    let rows: Vec<Vec<(CandidatePair, f64)>> = v1
        .entries
        .par_iter()
        .map(|l| {
            v2.entries
                .iter()
                .filter(|r| wanted(l.kind, r.kind))
                .map(|r| {
                    let pair = CandidatePair::new(l.iri.clone(), r.iri.clone(), (l.kind, r.kind));
                    (pair, score(l, r))
                })
                .collect()
        })
        .collect();
    let mut m = SimilarityMatrix::new(producer);
    for (pair, s) in rows.into_iter().flatten() {
        m.insert(pair, s);
    }
    m
}
