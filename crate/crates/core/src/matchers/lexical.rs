use std::collections::BTreeSet;

use super::string_sim::{levenshtein_chars, set_jaccard};
use super::view::{score_pairs, PivotEntry, PivotView};
use super::{MatcherId, SimilarityMatrix};

/// max(edit-distance similarity, token Jaccard) of two pivot labels.
pub(crate) fn lexical_score(l: &PivotEntry, r: &PivotEntry) -> f64 {
    let a: BTreeSet<&str> = l.token_set.iter().map(String::as_str).collect();
    let b: BTreeSet<&str> = r.token_set.iter().map(String::as_str).collect();
    levenshtein_chars(&l.edit_chars, &r.edit_chars).max(set_jaccard(&a, &b))
}

/// String-based scores for every same-kind pair.
pub fn lexical_matcher(v1: &PivotView<'_>, v2: &PivotView<'_>) -> SimilarityMatrix {
    score_pairs(v1, v2, false, MatcherId::Lexical, lexical_score)
}
