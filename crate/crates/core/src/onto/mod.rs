//! Ontology data model: entities, axioms, language-tagged labels.

mod context;
mod metrics;
mod turtle;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use context::{all_contexts, structural_context, StructuralContext};
pub use metrics::{classify_size, compute_metrics, OntologyMetrics, SizeClass, StructureClass};
pub use turtle::{parse_turtle, serialize_turtle};

pub const RDF_NS: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS_NS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL_NS: &str = "http://www.w3.org/2002/07/owl#";
pub const XSD_NS: &str = "http://www.w3.org/2001/XMLSchema#";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OntologyError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: undeclared prefix `{prefix}`")]
    UndeclaredPrefix {
        line: usize,
        column: usize,
        prefix: String,
    },
    #[error("subclass cycle through {0}")]
    SubClassCycle(Iri),
    #[error("{iri} declared as both {first} and {second}")]
    ConflictingDeclaration {
        iri: Iri,
        first: EntityKind,
        second: EntityKind,
    },
    #[error("{iri} has two different labels for language {lang}")]
    ConflictingLabel { iri: Iri, lang: String },
    #[error("invalid IRI `{0}`")]
    InvalidIri(String),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("unknown entity {0}")]
    UnknownEntity(Iri),
}

/// Absolute IRI. Compared by exact string equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(value: impl AsRef<str>) -> Result<Self, OntologyError> {
        let value = value.as_ref();
        if !Self::is_valid(value) {
            return Err(OntologyError::InvalidIri(value.to_string()));
        }
        Ok(Iri(Arc::from(value)))
    }

    /// A scheme separator must appear before any `/` or `#`.
    pub fn is_valid(value: &str) -> bool {
        if value.is_empty() || value.chars().any(|c| c.is_whitespace() || c == '<' || c == '>') {
            return false;
        }
        match value.find(':') {
            Some(colon) => value[..colon].find(['/', '#']).is_none(),
            None => false,
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Local name: the part after the last `#`, `/` or `:`.
    pub fn fragment(&self) -> &str {
        let s = self.as_str();
        let cut = s.rfind(['#', '/', ':']).map(|i| i + 1).unwrap_or(0);
        &s[cut..]
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Iri {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Iri {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Iri::new(&s).map_err(serde::de::Error::custom)
    }
}

/// Checks `[a-z]{2,8}(-[a-z0-9]{1,8})*`.
pub fn is_valid_lang(tag: &str) -> bool {
    let mut parts = tag.split('-');
    let primary = parts.next().unwrap_or("");
    if !(2..=8).contains(&primary.len()) || !primary.bytes().all(|b| b.is_ascii_lowercase()) {
        return false;
    }
    parts.all(|p| {
        (1..=8).contains(&p.len())
            && p.bytes().all(|b| b.is_ascii_lowercase() || b.is_ascii_digit())
    })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Label {
    pub text: String,
    pub lang: Option<String>,
}

impl Label {
    pub fn new(text: impl Into<String>, lang: Option<&str>) -> Result<Self, OntologyError> {
        let text = text.into();
        if text.is_empty() {
            return Err(OntologyError::InvalidLabel("empty label text".into()));
        }
        if let Some(tag) = lang {
            if !is_valid_lang(tag) {
                return Err(OntologyError::InvalidLabel(format!("bad language tag `{tag}`")));
            }
        }
        Ok(Label {
            text,
            lang: lang.map(str::to_string),
        })
    }

    pub fn tagged(text: impl Into<String>, lang: &str) -> Result<Self, OntologyError> {
        Self::new(text, Some(lang))
    }

    pub fn lang(&self) -> Option<&str> {
        self.lang.as_deref()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EntityKind {
    Class,
    ObjectProperty,
    DataProperty,
    NamedIndividual,
}

impl EntityKind {
    pub const ALL: [EntityKind; 4] = [
        EntityKind::Class,
        EntityKind::ObjectProperty,
        EntityKind::DataProperty,
        EntityKind::NamedIndividual,
    ];

    pub fn is_property(self) -> bool {
        matches!(self, EntityKind::ObjectProperty | EntityKind::DataProperty)
    }
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntityKind::Class => "Class",
            EntityKind::ObjectProperty => "ObjectProperty",
            EntityKind::DataProperty => "DataProperty",
            EntityKind::NamedIndividual => "NamedIndividual",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entity {
    pub iri: Iri,
    pub kind: EntityKind,
    /// Sorted by (lang, text); at most one label per language.
    labels: Vec<Label>,
}

impl Entity {
    pub fn new(iri: Iri, kind: EntityKind) -> Self {
        Entity {
            iri,
            kind,
            labels: Vec::new(),
        }
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label_for(&self, lang: &str) -> Option<&Label> {
        self.labels.iter().find(|l| l.lang() == Some(lang))
    }

    /// Adds a label. A repeated identical label is a no-op; a different text
    /// for an already present language is rejected.
    pub fn add_label(&mut self, label: Label) -> Result<(), OntologyError> {
        if let Some(existing) = self.labels.iter().find(|l| l.lang == label.lang) {
            if existing.text == label.text {
                return Ok(());
            }
            return Err(OntologyError::ConflictingLabel {
                iri: self.iri.clone(),
                lang: label.lang.unwrap_or_else(|| "(none)".into()),
            });
        }
        let pos = self.labels.partition_point(|l| l < &label);
        self.labels.insert(pos, label);
        Ok(())
    }
}

/// Object of a property assertion.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AssertionObject {
    Iri(Iri),
    Literal { text: String, lang: Option<String> },
}

/// Variant order is the canonical axiom order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    SubClassOf { sub: Iri, sup: Iri },
    SubPropertyOf { sub: Iri, sup: Iri },
    Domain { prop: Iri, cls: Iri },
    Range { prop: Iri, target: Iri },
    ClassAssertion { cls: Iri, ind: Iri },
    PropertyAssertion { subj: Iri, prop: Iri, obj: AssertionObject },
}

impl Axiom {
    /// Every IRI the axiom mentions.
    pub fn iris(&self) -> Vec<&Iri> {
        match self {
            Axiom::SubClassOf { sub, sup } | Axiom::SubPropertyOf { sub, sup } => vec![sub, sup],
            Axiom::Domain { prop, cls } => vec![prop, cls],
            Axiom::Range { prop, target } => vec![prop, target],
            Axiom::ClassAssertion { cls, ind } => vec![cls, ind],
            Axiom::PropertyAssertion { subj, prop, obj } => match obj {
                AssertionObject::Iri(o) => vec![subj, prop, o],
                AssertionObject::Literal { .. } => vec![subj, prop],
            },
        }
    }
}

/// Datatype IRIs may appear as range targets without being declared.
pub fn is_datatype_iri(iri: &Iri) -> bool {
    iri.as_str().starts_with(XSD_NS) || iri.as_str() == format!("{RDFS_NS}Literal")
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ontology {
    pub iri: Option<Iri>,
    pub prefixes: BTreeMap<String, String>,
    entities: BTreeMap<Iri, Entity>,
    axioms: BTreeSet<Axiom>,
}

impl Ontology {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn entities(&self) -> impl ExactSizeIterator<Item = &Entity> + Clone {
        self.entities.values()
    }

    pub fn entity(&self, iri: &Iri) -> Option<&Entity> {
        self.entities.get(iri)
    }

    pub fn entity_mut(&mut self, iri: &Iri) -> Option<&mut Entity> {
        self.entities.get_mut(iri)
    }

    pub fn entity_count(&self) -> usize {
        self.entities.len()
    }

    /// Axioms in canonical order, without duplicates.
    pub fn axioms(&self) -> impl ExactSizeIterator<Item = &Axiom> + Clone {
        self.axioms.iter()
    }

    pub fn axiom_count(&self) -> usize {
        self.axioms.len()
    }

    /// Declares an entity, or checks that an existing declaration agrees.
    pub fn declare(&mut self, iri: Iri, kind: EntityKind) -> Result<&mut Entity, OntologyError> {
        let entity = self
            .entities
            .entry(iri.clone())
            .or_insert_with(|| Entity::new(iri, kind));
        if entity.kind != kind {
            return Err(OntologyError::ConflictingDeclaration {
                iri: entity.iri.clone(),
                first: entity.kind,
                second: kind,
            });
        }
        Ok(entity)
    }

    /// Adds an axiom whose IRIs must already be declared. Returns false for a duplicate.
    pub fn add_axiom(&mut self, axiom: Axiom) -> Result<bool, OntologyError> {
        for (pos, iri) in axiom.iris().into_iter().enumerate() {
            let datatype_range = matches!(axiom, Axiom::Range { .. }) && pos == 1;
            if !self.entities.contains_key(iri) && !(datatype_range && is_datatype_iri(iri)) {
                return Err(OntologyError::UnknownEntity(iri.clone()));
            }
        }
        Ok(self.axioms.insert(axiom))
    }

    /// Fails if the named-class subclass graph has a cycle.
    pub fn check_acyclic(&self) -> Result<(), OntologyError> {
        let mut supers: BTreeMap<&Iri, Vec<&Iri>> = BTreeMap::new();
        for ax in &self.axioms {
            if let Axiom::SubClassOf { sub, sup } = ax {
                supers.entry(sub).or_default().push(sup);
            }
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state: BTreeMap<&Iri, u8> = BTreeMap::new();
        for &start in supers.keys() {
            if state.get(start).copied().unwrap_or(0) != 0 {
                continue;
            }
            let mut stack: Vec<(&Iri, usize)> = vec![(start, 0)];
            state.insert(start, 1);
            while let Some(&mut (node, ref mut next)) = stack.last_mut() {
                let succ = supers.get(node).map(Vec::as_slice).unwrap_or(&[]);
                if *next < succ.len() {
                    let child = succ[*next];
                    *next += 1;
                    match state.get(child).copied().unwrap_or(0) {
                        0 => {
                            state.insert(child, 1);
                            stack.push((child, 0));
                        }
                        1 => return Err(OntologyError::SubClassCycle(child.clone())),
                        _ => {}
                    }
                } else {
                    state.insert(node, 2);
                    stack.pop();
                }
            }
        }
        Ok(())
    }

    /// Languages used by labels, excluding untagged ones.
    pub fn label_languages(&self) -> BTreeSet<&str> {
        self.entities
            .values()
            .flat_map(|e| e.labels.iter().filter_map(Label::lang))
            .collect()
    }

    pub fn count_kind(&self, kind: EntityKind) -> usize {
        self.entities.values().filter(|e| e.kind == kind).count()
    }
}
