use super::lexical::lexical_score;
use super::semantic::synonym_jaccard;
use super::view::{score_pairs, PivotView};
use super::{MatcherId, SimilarityMatrix};
use crate::lexicon::SynonymLexicon;

/// Scores class/individual pairs in both directions with the mean of the
/// lexical and semantic scores. Same-kind pairs never appear.
pub fn cross_type_matcher(v1: &PivotView<'_>, v2: &PivotView<'_>, lex: &SynonymLexicon) -> SimilarityMatrix {
    score_pairs(v1, v2, true, MatcherId::CrossType, |l, r| {
        (lexical_score(l, r) + synonym_jaccard(&l.token_set, &r.token_set, lex)) / 2.0
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matchers::CandidatePair;
    use crate::onto::{EntityKind, Iri, Label, Ontology};

    #[test]
    fn dean_class_vs_individual() {
        let mut o1 = Ontology::new();
        let mut o2 = Ontology::new();
        o1.declare(Iri::new("a:Dean").unwrap(), EntityKind::Class)
            .unwrap()
            .add_label(Label::tagged("Dean", "en").unwrap())
            .unwrap();
        o1.declare(Iri::new("a:Staff").unwrap(), EntityKind::Class)
            .unwrap()
            .add_label(Label::tagged("Staff", "en").unwrap())
            .unwrap();
        o2.declare(Iri::new("b:dean").unwrap(), EntityKind::NamedIndividual)
            .unwrap()
            .add_label(Label::tagged("Dean", "en").unwrap())
            .unwrap();
        o2.declare(Iri::new("b:Staff").unwrap(), EntityKind::Class)
            .unwrap()
            .add_label(Label::tagged("Staff", "en").unwrap())
            .unwrap();
        let (v1, v2) = (PivotView::new(&o1, "en", None).unwrap(), PivotView::new(&o2, "en", None).unwrap());
        let m = cross_type_matcher(&v1, &v2, &SynonymLexicon::new());
        let p = CandidatePair::new(
            Iri::new("a:Dean").unwrap(),
            Iri::new("b:dean").unwrap(),
            (EntityKind::Class, EntityKind::NamedIndividual),
        );
        assert_eq!(m.get(&p), 1.0);
        assert!(m.iter().all(|(p, _)| p.is_cross_kind()));
    }
}
