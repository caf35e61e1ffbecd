use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{Axiom, EntityKind, Ontology};

/// Size class by primitive count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum SizeClass {
    Small,
    Medium,
    Large,
    ExtraLarge,
}

impl fmt::Display for SizeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SizeClass::Small => "small",
            SizeClass::Medium => "medium",
            SizeClass::Large => "large",
            SizeClass::ExtraLarge => "extra-large",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StructureClass {
    /// Subclass graph is a forest.
    Simple,
    Complex,
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureClass::Simple => "simple",
            StructureClass::Complex => "complex",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OntologyMetrics {
    pub concept_count: usize,
    pub property_count: usize,
    pub individual_count: usize,
    pub primitive_count: usize,
    pub axiom_count: usize,
    pub size_class: SizeClass,
    pub structure_class: StructureClass,
}

/// Small up to 100 primitives, medium 101-500, large 501-1000, extra-large beyond.
pub fn classify_size(primitive_count: usize) -> SizeClass {
    match primitive_count {
        0..=100 => SizeClass::Small,
        101..=500 => SizeClass::Medium,
        501..=1000 => SizeClass::Large,
        _ => SizeClass::ExtraLarge,
    }
}

pub fn compute_metrics(o: &Ontology) -> OntologyMetrics {
    let concept_count = o.count_kind(EntityKind::Class);
    let property_count =
        o.count_kind(EntityKind::ObjectProperty) + o.count_kind(EntityKind::DataProperty);
    let individual_count = o.count_kind(EntityKind::NamedIndividual);
    let primitive_count = concept_count + property_count + individual_count;

    let mut super_counts = BTreeMap::new();
    for ax in o.axioms() {
        if let Axiom::SubClassOf { sub, .. } = ax {
            *super_counts.entry(sub).or_insert(0usize) += 1;
        }
    }
    let structure_class = if super_counts.values().all(|&n| n <= 1) {
        StructureClass::Simple
    } else {
        StructureClass::Complex
    };

    OntologyMetrics {
        concept_count,
        property_count,
        individual_count,
        primitive_count,
        axiom_count: o.axiom_count(),
        size_class: classify_size(primitive_count),
        structure_class,
    }
}
