#![allow(dead_code)]

use proptest::prelude::*;

use pivot_align::alignment::{Alignment, Relation};
use pivot_align::lexicon::{Glossary, GlossarySense, ResourceBundle};
use pivot_align::onto::{AssertionObject, Axiom, EntityKind, Iri, Label, Ontology};

/// German words with English glosses; some are ambiguous.
pub const WORDS: &[(&str, &[&str])] = &[
    ("Haus", &["house", "building"]),
    ("Lehrer", &["teacher"]),
    ("Schule", &["school"]),
    ("Bank", &["bank", "bench"]),
    ("Leiter", &["head", "ladder"]),
    ("Straße", &["street"]),
    ("Raum", &["room", "space"]),
    ("Kurs", &["course"]),
    ("Note", &["grade", "note"]),
    ("Fach", &["subject"]),
];

pub fn glossary() -> Glossary {
    let mut g = Glossary::new("de", "en").unwrap();
    for (word, senses) in WORDS {
        for (i, s) in senses.iter().enumerate() {
            let cues = WORDS[(i * 3) % WORDS.len()].0.to_lowercase();
            g.add_sense(word, GlossarySense { target: s.to_string(), cues: [cues].into() }).unwrap();
        }
    }
    g
}

pub fn bundle() -> ResourceBundle {
    let mut b = ResourceBundle::new("en").unwrap();
    b.add_glossary(glossary()).unwrap();
    b
}

/// Compact description of a random ontology, turned into one by [`build`].
#[derive(Debug, Clone)]
pub struct Shape {
    pub kinds: Vec<EntityKind>,
    /// Per entity: word indices forming its label, and the label variant.
    pub labels: Vec<(Vec<usize>, u8)>,
    pub edges: Vec<(usize, usize, u8)>,
}

pub fn shape(max_entities: usize) -> impl Strategy<Value = Shape> {
    (1..=max_entities)
        .prop_flat_map(|n| {
            let kind = prop_oneof![
                4 => Just(EntityKind::Class),
                2 => Just(EntityKind::ObjectProperty),
                1 => Just(EntityKind::DataProperty),
                3 => Just(EntityKind::NamedIndividual),
            ];
            (
                prop::collection::vec(kind, n),
                prop::collection::vec((prop::collection::vec(0..WORDS.len(), 1..3), 0u8..4), n),
                prop::collection::vec((0..n, 0..n, 0u8..4), 0..n * 2),
            )
        })
        .prop_map(|(kinds, labels, edges)| Shape { kinds, labels, edges })
}

pub fn iri(ns: &str, i: usize) -> Iri {
    Iri::new(format!("http://test.org/{ns}#e{i}")).unwrap()
}

/// Builds the ontology; edges that do not fit the endpoint kinds are
/// skipped, subclass edges only point to lower indices (acyclic).
pub fn build(shape: &Shape, ns: &str) -> Ontology {
    let mut o = Ontology::new();
    o.iri = Some(Iri::new(format!("http://test.org/{ns}")).unwrap());
    o.prefixes.insert("t".into(), format!("http://test.org/{ns}#"));
    for (i, kind) in shape.kinds.iter().enumerate() {
        let e = o.declare(iri(ns, i), *kind).unwrap();
        let (words, variant) = &shape.labels[i];
        let text: Vec<&str> = words.iter().map(|w| WORDS[*w].0).collect();
        let text = match variant {
            0 => text.join(" "),
            1 => text.join("_"),
            2 => format!("{} \"{}\"", text.join(" "), i),
            _ => format!("{}\\{}", text.join(""), i),
        };
        e.add_label(Label::tagged(text, "de").unwrap()).unwrap();
        if variant % 2 == 1 {
            e.add_label(Label::new(format!("n{i}"), None).unwrap()).unwrap();
        }
    }
    let kinds = &shape.kinds;
    let is_class = |i: usize| kinds[i] == EntityKind::Class;
    let is_prop = |i: usize| kinds[i].is_property();
    let is_ind = |i: usize| kinds[i] == EntityKind::NamedIndividual;
    for &(a, b, which) in &shape.edges {
        let (ia, ib) = (iri(ns, a), iri(ns, b));
        let axiom = match which {
            0 if is_class(a) && is_class(b) && b < a => Axiom::SubClassOf { sub: ia, sup: ib },
            0 if kinds[a] == kinds[b] && is_prop(a) && a != b => Axiom::SubPropertyOf { sub: ia, sup: ib },
            1 if is_prop(a) && is_class(b) => Axiom::Domain { prop: ia, cls: ib },
            2 if kinds[a] == EntityKind::ObjectProperty && is_class(b) => Axiom::Range { prop: ia, target: ib },
            3 if is_class(a) && is_ind(b) => Axiom::ClassAssertion { cls: ia, ind: ib },
            _ if is_ind(a) && is_ind(b) => {
                let prop = (0..kinds.len()).find(|&p| kinds[p] == EntityKind::ObjectProperty);
                match prop {
                    Some(p) => Axiom::PropertyAssertion { subj: ia, prop: iri(ns, p), obj: AssertionObject::Iri(ib) },
                    None => continue,
                }
            }
            _ => continue,
        };
        o.add_axiom(axiom).unwrap();
    }
    o
}

pub fn relation() -> impl Strategy<Value = Relation> {
    prop_oneof![
        Just(Relation::Equivalence),
        Just(Relation::Subsumes),
        Just(Relation::SubsumedBy),
        Just(Relation::CrossType),
    ]
}

/// Random alignment between `l:` and `r:` entities 0..n.
pub fn alignment(n: usize) -> impl Strategy<Value = Alignment> {
    prop::collection::vec((0..n, 0..n, relation(), 0.0f64..=1.0), 0..n * 2).prop_map(|rows| {
        let mut a = Alignment::new(Some("http://test.org/l".into()), Some("http://test.org/r".into()));
        for (l, r, rel, s) in rows {
            let _ = a.push(iri("l", l), iri("r", r), rel, s);
        }
        a
    })
}
