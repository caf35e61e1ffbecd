use std::collections::BTreeSet;

use crate::lexicon::TokenSequence;

/// Lowercased characters with `_`, `-` and whitespace removed.
pub fn normalize_for_edit(s: &str) -> Vec<char> {
    s.chars()
        .filter(|c| !(*c == '_' || *c == '-' || c.is_whitespace()))
        .flat_map(char::to_lowercase)
        .collect()
}

/// Levenshtein distance, unit costs, two-row table.
pub fn edit_distance(a: &[char], b: &[char]) -> usize {
    let (a, b) = if a.len() < b.len() { (b, a) } else { (a, b) };
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != cb);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

pub(crate) fn levenshtein_chars(a: &[char], b: &[char]) -> f64 {
    let longest = a.len().max(b.len());
    if longest == 0 {
        return 1.0;
    }
    1.0 - edit_distance(a, b) as f64 / longest as f64
}

/// `1 - distance / max(len)` after case folding and separator removal.
/// Two empty strings score 1.
pub fn levenshtein_sim(a: &str, b: &str) -> f64 {
    levenshtein_chars(&normalize_for_edit(a), &normalize_for_edit(b))
}

pub(crate) fn set_jaccard(a: &BTreeSet<&str>, b: &BTreeSet<&str>) -> f64 {
    let inter = a.intersection(b).count();
    let union = a.len() + b.len() - inter;
    if union == 0 {
        0.0
    } else {
        inter as f64 / union as f64
    }
}

pub(crate) fn token_set<'a>(
    tokens: &'a [String],
    stopwords: Option<&BTreeSet<String>>,
) -> BTreeSet<&'a str> {
    tokens
        .iter()
        .filter(|t| stopwords.is_none_or(|s| !s.contains(*t)))
        .map(String::as_str)
        .collect()
}

/// Jaccard index of the two token sets, stopwords removed when given.
/// Both empty after filtering scores 0.
pub fn token_jaccard_sim(
    a: &TokenSequence,
    b: &TokenSequence,
    stopwords: Option<&BTreeSet<String>>,
) -> f64 {
    set_jaccard(&token_set(a, stopwords), &token_set(b, stopwords))
}
