use std::collections::{BTreeMap, HashMap};

use super::{Alignment, AlignmentError, Relation};
use crate::onto::Iri;

/// Composes two relations along a path `e1 -first-> p -second-> e2`.
/// `None` when the chain says nothing definite (`<` then `>`, or `>` then `<`).
pub fn compose_relations(first: Relation, second: Relation) -> Option<Relation> {
    use Relation::*;
    match (first, second) {
        (CrossType, _) | (_, CrossType) => Some(CrossType),
        (Equivalence, r) | (r, Equivalence) => Some(r),
        (SubsumedBy, SubsumedBy) => Some(SubsumedBy),
        (Subsumes, Subsumes) => Some(Subsumes),
        (SubsumedBy, Subsumes) | (Subsumes, SubsumedBy) => None,
    }
}

/// Indirect alignment through a shared third ontology.
///
/// `a13` maps O1 to O3 and `a23` maps O2 to O3. Every pair of
/// correspondences meeting at the same O3 entity yields an O1-O2
/// correspondence whose similarity is the product of the two. When several
/// pivots produce the same correspondence the highest similarity is kept.
pub fn compose_alignments(a13: &Alignment, a23: &Alignment) -> Result<Alignment, AlignmentError> {
    if let (Some(p1), Some(p2)) = (&a13.onto2, &a23.onto2) {
        if p1 != p2 {
            return Err(AlignmentError::NoSharedPivot(p1.clone(), p2.clone()));
        }
    }
    let mut by_pivot: HashMap<&Iri, Vec<usize>> = HashMap::new();
    for (i, c) in a23.correspondences().iter().enumerate() {
        by_pivot.entry(&c.entity2).or_default().push(i);
    }

    // first-seen order, best similarity
    let mut order: Vec<(Iri, Iri, Relation)> = Vec::new();
    let mut best: BTreeMap<(Iri, Iri, Relation), f64> = BTreeMap::new();
    for c13 in a13.correspondences() {
        for &j in by_pivot.get(&c13.entity2).into_iter().flatten() {
            let c23 = &a23.correspondences()[j];
            // a23 points O2 -> O3; walking the path we read it backwards
            let Some(relation) = compose_relations(c13.relation, c23.relation.inverse()) else {
                continue;
            };
            let key = (c13.entity1.clone(), c23.entity1.clone(), relation);
            let sim = c13.similarity * c23.similarity;
            match best.get_mut(&key) {
                Some(s) => *s = s.max(sim),
                None => {
                    best.insert(key.clone(), sim);
                    order.push(key);
                }
            }
        }
    }

    let mut out = Alignment::new(a13.onto1.clone(), a23.onto1.clone());
    for key in order {
        let sim = best[&key];
        let (e1, e2, relation) = key;
        out.push(e1, e2, relation, sim)?;
    }
    Ok(out)
}
