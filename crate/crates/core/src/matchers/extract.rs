use std::cmp::Ordering;
use std::collections::HashSet;

use super::{Cardinality, CandidatePair, MatchConfig, SimilarityMatrix};
use crate::alignment::{Alignment, Relation};
use crate::onto::{Iri, Ontology};

/// Scores within this distance below the threshold still pass, so values
/// like 0.7999999999 from weighted means are not lost to rounding.
const THRESHOLD_SLACK: f64 = 1e-9;

fn by_rank(a: &(&CandidatePair, f64), b: &(&CandidatePair, f64)) -> Ordering {
    b.1.total_cmp(&a.1)
        .then_with(|| a.0.left.cmp(&b.0.left))
        .then_with(|| a.0.right.cmp(&b.0.right))
}

/// Turns a score matrix into an alignment.
///
/// Pairs below the threshold are dropped. One-to-one selection is greedy in
/// descending score, ties by (left, right) IRI, skipping used endpoints.
/// Same-kind pairs are selected before cross-kind pairs, so cross-kind
/// candidates only take entities left unmatched.
pub fn extract_alignment(m: &SimilarityMatrix, o1: &Ontology, o2: &Ontology, cfg: &MatchConfig) -> Alignment {
    let mut ranked: Vec<(&CandidatePair, f64)> = m
        .iter()
        .filter(|(_, s)| *s >= cfg.threshold - THRESHOLD_SLACK)
        .collect();
    ranked.sort_by(|a, b| a.0.is_cross_kind().cmp(&b.0.is_cross_kind()).then_with(|| by_rank(a, b)));

    let mut out = Alignment::new(
        o1.iri.as_ref().map(|i| i.to_string()),
        o2.iri.as_ref().map(|i| i.to_string()),
    );
    let mut used_left: HashSet<&Iri> = HashSet::new();
    let mut used_right: HashSet<&Iri> = HashSet::new();
    for (pair, score) in ranked {
        if cfg.cardinality == Cardinality::OneToOne {
            if used_left.contains(&pair.left) || used_right.contains(&pair.right) {
                continue;
            }
            used_left.insert(&pair.left);
            used_right.insert(&pair.right);
        }
        let relation = if pair.is_cross_kind() { Relation::CrossType } else { Relation::Equivalence };
        out.push(pair.left.clone(), pair.right.clone(), relation, score)
            .expect("matrix pairs are unique and scores lie in [0, 1]");
    }
    out
}
