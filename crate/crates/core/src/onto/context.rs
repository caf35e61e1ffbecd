use std::collections::{BTreeMap, BTreeSet};

use super::{AssertionObject, Axiom, Iri, Ontology, OntologyError};

/// Directly connected (1-hop) neighbours of an entity, each list sorted by IRI.
///
/// Which lists are populated depends on the entity kind: classes get
/// `domain_of`, `range_of` and `instances`; properties get `domain` and
/// `range`; individuals get `types` and `related` (assertion neighbours).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StructuralContext {
    pub super_entities: Vec<Iri>,
    pub sub_entities: Vec<Iri>,
    pub domain: Vec<Iri>,
    pub range: Vec<Iri>,
    pub domain_of: Vec<Iri>,
    pub range_of: Vec<Iri>,
    pub types: Vec<Iri>,
    pub instances: Vec<Iri>,
    pub related: Vec<Iri>,
}

impl StructuralContext {
    pub fn is_empty(&self) -> bool {
        self.neighbours().next().is_none()
    }

    pub fn neighbours(&self) -> impl Iterator<Item = &Iri> {
        self.super_entities
            .iter()
            .chain(&self.sub_entities)
            .chain(&self.domain)
            .chain(&self.range)
            .chain(&self.domain_of)
            .chain(&self.range_of)
            .chain(&self.types)
            .chain(&self.instances)
            .chain(&self.related)
    }

    /// The five slots compared by the structural matcher:
    /// supers, subs, domain, range, types/instances.
    pub fn slots(&self) -> [Vec<&Iri>; 5] {
        fn merge<'a>(a: &'a [Iri], b: &'a [Iri]) -> Vec<&'a Iri> {
            a.iter().chain(b).collect::<BTreeSet<_>>().into_iter().collect()
        }
        [
            self.super_entities.iter().collect(),
            self.sub_entities.iter().collect(),
            merge(&self.domain, &self.domain_of),
            merge(&self.range, &self.range_of),
            merge(&self.types, &self.instances),
        ]
    }
}

#[derive(Clone, Copy)]
enum Slot {
    Super,
    Sub,
    Domain,
    Range,
    DomainOf,
    RangeOf,
    Type,
    Instance,
    Related,
}

/// Calls `emit(owner, slot, neighbour)` for every 1-hop link the axiom creates.
fn links(o: &Ontology, ax: &Axiom, mut emit: impl FnMut(&Iri, Slot, &Iri)) {
    match ax {
        Axiom::SubClassOf { sub, sup } | Axiom::SubPropertyOf { sub, sup } => {
            emit(sub, Slot::Super, sup);
            emit(sup, Slot::Sub, sub);
        }
        Axiom::Domain { prop, cls } => {
            emit(prop, Slot::Domain, cls);
            emit(cls, Slot::DomainOf, prop);
        }
        Axiom::Range { prop, target } => {
            if o.entity(target).is_some() {
                emit(prop, Slot::Range, target);
                emit(target, Slot::RangeOf, prop);
            }
        }
        Axiom::ClassAssertion { cls, ind } => {
            emit(ind, Slot::Type, cls);
            emit(cls, Slot::Instance, ind);
        }
        Axiom::PropertyAssertion { subj, obj: AssertionObject::Iri(obj), .. } => {
            emit(subj, Slot::Related, obj);
            emit(obj, Slot::Related, subj);
        }
        Axiom::PropertyAssertion { .. } => {}
    }
}

#[derive(Default)]
struct Builder([BTreeSet<Iri>; 9]);

impl Builder {
    fn add(&mut self, slot: Slot, iri: &Iri) {
        self.0[slot as usize].insert(iri.clone());
    }

    fn finish(self) -> StructuralContext {
        let [supers, subs, domain, range, domain_of, range_of, types, instances, related] =
            self.0.map(|s| s.into_iter().collect::<Vec<_>>());
        StructuralContext {
            super_entities: supers,
            sub_entities: subs,
            domain,
            range,
            domain_of,
            range_of,
            types,
            instances,
            related,
        }
    }
}

pub fn structural_context(o: &Ontology, e: &Iri) -> Result<StructuralContext, OntologyError> {
    if o.entity(e).is_none() {
        return Err(OntologyError::UnknownEntity(e.clone()));
    }
    let mut b = Builder::default();
    for ax in o.axioms() {
        links(o, ax, |owner, slot, n| {
            if owner == e {
                b.add(slot, n);
            }
        });
    }
    Ok(b.finish())
}

/// Contexts of every entity, built in one pass over the axioms.
pub fn all_contexts(o: &Ontology) -> BTreeMap<Iri, StructuralContext> {
    let mut builders: BTreeMap<Iri, Builder> = o
        .entities()
        .map(|e| (e.iri.clone(), Builder::default()))
        .collect();
    for ax in o.axioms() {
        links(o, ax, |owner, slot, n| {
            if let Some(b) = builders.get_mut(owner) {
                b.add(slot, n);
            }
        });
    }
    builders.into_iter().map(|(k, b)| (k, b.finish())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::onto::parse_turtle;

    fn fixture() -> Ontology {
        parse_turtle(
            "@prefix : <http://x.org/#> .\n\
             @prefix owl: <http://www.w3.org/2002/07/owl#> .\n\
             @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n\
             :Root a owl:Class .\n\
             :Person rdfs:subClassOf :Agent .\n\
             :Professor rdfs:subClassOf :Person .\n\
             :Unit a owl:Class .\n\
             :worksAt rdfs:domain :Person ; rdfs:range :Unit .\n",
        )
        .unwrap()
    }

    fn iri(s: &str) -> Iri {
        Iri::new(format!("http://x.org/#{s}")).unwrap()
    }

    #[test]
    fn isolated_root_has_empty_context() {
        let ctx = structural_context(&fixture(), &iri("Root")).unwrap();
        assert!(ctx.is_empty());
    }

    #[test]
    fn super_and_sub_reported() {
        let ctx = structural_context(&fixture(), &iri("Person")).unwrap();
        assert_eq!(ctx.super_entities, vec![iri("Agent")]);
        assert_eq!(ctx.sub_entities, vec![iri("Professor")]);
        assert_eq!(ctx.domain_of, vec![iri("worksAt")]);
        assert!(ctx.range.is_empty() && ctx.types.is_empty() && ctx.instances.is_empty());
    }

    #[test]
    fn property_domain_and_range() {
        let ctx = structural_context(&fixture(), &iri("worksAt")).unwrap();
        assert_eq!(ctx.domain, vec![iri("Person")]);
        assert_eq!(ctx.range, vec![iri("Unit")]);
        assert_eq!(ctx.neighbours().count(), 2);
    }

    #[test]
    fn bulk_index_agrees_with_single_lookup() {
        let o = fixture();
        let all = all_contexts(&o);
        assert_eq!(all.len(), o.entity_count());
        for (iri, ctx) in &all {
            assert_eq!(&structural_context(&o, iri).unwrap(), ctx);
        }
    }

    #[test]
    fn unknown_iri() {
        assert!(structural_context(&fixture(), &iri("Nope")).is_err());
    }
}
