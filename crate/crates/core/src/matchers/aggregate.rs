use std::collections::BTreeSet;

use super::{CandidatePair, MatchConfig, MatchError, MatcherId, SimilarityMatrix};

/// Weighted mean per pair over the matchers applicable to its kind pair.
/// A matrix missing a pair counts as 0 for it.
pub fn aggregate(matrices: &[SimilarityMatrix], cfg: &MatchConfig) -> Result<SimilarityMatrix, MatchError> {
    for m in matrices {
        if !cfg.weights.contains_key(&m.producer) {
            return Err(MatchError::UnknownProducer(m.producer));
        }
    }
    let pairs: BTreeSet<&CandidatePair> = matrices.iter().flat_map(|m| m.iter().map(|(p, _)| p)).collect();
    let mut out = SimilarityMatrix::new(MatcherId::Aggregate);
    for pair in pairs {
        let (mut num, mut den) = (0.0, 0.0);
        for m in matrices.iter().filter(|m| m.producer.applies_to(pair.kinds)) {
            let w = cfg.weight(m.producer);
            num += w * m.get(pair);
            den += w;
        }
        if den > 0.0 {
            out.insert(pair.clone(), num / den);
        }
    }
    Ok(out)
}
