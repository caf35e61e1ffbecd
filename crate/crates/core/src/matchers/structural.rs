use std::collections::HashMap;

use rayon::prelude::*;

use super::{CandidatePair, MatchConfig, MatcherId, SimilarityMatrix};
use crate::onto::{all_contexts, EntityKind, Iri, Ontology};

struct Side<'o> {
    iris: Vec<&'o Iri>,
    kinds: Vec<EntityKind>,
    /// Per entity, the five context slots as entity indices.
    slots: Vec<[Vec<usize>; 5]>,
}

impl<'o> Side<'o> {
    fn new(o: &'o Ontology) -> Self {
        let iris: Vec<&Iri> = o.entities().map(|e| &e.iri).collect();
        let kinds = o.entities().map(|e| e.kind).collect();
        let index: HashMap<&Iri, usize> = iris.iter().enumerate().map(|(i, iri)| (*iri, i)).collect();
        let contexts = all_contexts(o);
        let slots = iris
            .iter()
            .map(|iri| {
                let ctx = &contexts[*iri];
                ctx.slots()
                    .map(|members| members.into_iter().filter_map(|m| index.get(m).copied()).collect())
            })
            .collect();
        Side { iris, kinds, slots }
    }
}

/// Propagates seed scores along structural neighbourhoods.
///
/// Each round moves every same-kind pair towards the mean, over the context
/// slots populated on both sides, of the best current score between the two
/// slots' members. A pair with no such slot keeps its own score as boost.
pub fn structural_matcher(seed: &SimilarityMatrix, o1: &Ontology, o2: &Ontology, cfg: &MatchConfig) -> SimilarityMatrix {
    let (s1, s2) = (Side::new(o1), Side::new(o2));
    let (n1, n2) = (s1.iris.len(), s2.iris.len());
    let idx1: HashMap<&Iri, usize> = s1.iris.iter().enumerate().map(|(i, x)| (*x, i)).collect();
    let idx2: HashMap<&Iri, usize> = s2.iris.iter().enumerate().map(|(i, x)| (*x, i)).collect();

    let mut cur = vec![0.0f64; n1 * n2];
    for (p, s) in seed.iter() {
        if p.is_cross_kind() {
            continue;
        }
        if let (Some(&i), Some(&j)) = (idx1.get(&p.left), idx2.get(&p.right)) {
            cur[i * n2 + j] = s;
        }
    }

    let alpha = cfg.structural_alpha;
    let (s1r, s2r) = (&s1, &s2);
    for _ in 0..cfg.structural_rounds {
        let prev = &cur;
        let next: Vec<f64> = (0..n1)
            .into_par_iter()
            .flat_map_iter(|i| {
                (0..n2).map(move |j| {
                    let own = prev[i * n2 + j];
                    if s1r.kinds[i] != s2r.kinds[j] {
                        return own;
                    }
                    let mut total = 0.0;
                    let mut used = 0usize;
                    for (a, b) in s1r.slots[i].iter().zip(&s2r.slots[j]) {
                        if a.is_empty() || b.is_empty() {
                            continue;
                        }
                        let best = a
                            .iter()
                            .flat_map(|&x| b.iter().map(move |&y| prev[x * n2 + y]))
                            .fold(0.0f64, f64::max);
                        total += best;
                        used += 1;
                    }
                    let boost = if used == 0 { own } else { total / used as f64 };
                    ((1.0 - alpha) * own + alpha * boost).clamp(0.0, 1.0)
                })
            })
            .collect();
        cur = next;
    }

    let mut out = SimilarityMatrix::new(MatcherId::Structural);
    for i in 0..n1 {
        for j in 0..n2 {
            if s1.kinds[i] == s2.kinds[j] {
                let pair = CandidatePair::new(s1.iris[i].clone(), s2.iris[j].clone(), (s1.kinds[i], s2.kinds[j]));
                out.insert(pair, cur[i * n2 + j]);
            }
        }
    }
    out
}
