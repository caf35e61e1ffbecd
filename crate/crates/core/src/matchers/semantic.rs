use std::collections::BTreeSet;

use super::view::{score_pairs, PivotView};
use super::{MatcherId, SimilarityMatrix};
use crate::lexicon::SynonymLexicon;

/// Jaccard over token sets where two tokens are equal when their synonym
/// expansions intersect. The intersection size is a maximum matching
/// between the sets, so one token never stands in for two.
pub fn synonym_jaccard(a: &BTreeSet<String>, b: &BTreeSet<String>, lex: &SynonymLexicon) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    let ea: Vec<BTreeSet<String>> = a.iter().map(|t| lex.expand(t)).collect();
    let eb: Vec<BTreeSet<String>> = b.iter().map(|t| lex.expand(t)).collect();
    let adj: Vec<Vec<usize>> = ea
        .iter()
        .map(|x| (0..eb.len()).filter(|&j| !x.is_disjoint(&eb[j])).collect())
        .collect();
    let matched = max_matching(&adj, eb.len());
    matched as f64 / (a.len() + b.len() - matched) as f64
}

/// Kuhn's augmenting-path bipartite matching.
fn max_matching(adj: &[Vec<usize>], right: usize) -> usize {
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|w| augment(w, adj, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; right];
    (0..adj.len())
        .filter(|&u| augment(u, adj, &mut vec![false; right], &mut owner))
        .count()
}

/// Synonym-aware token overlap for every same-kind pair.
pub fn semantic_matcher(v1: &PivotView<'_>, v2: &PivotView<'_>, lex: &SynonymLexicon) -> SimilarityMatrix {
    score_pairs(v1, v2, false, MatcherId::Semantic, |l, r| {
        synonym_jaccard(&l.token_set, &r.token_set, lex)
    })
}
