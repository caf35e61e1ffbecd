//! Seeded synthetic ontologies, glossaries and alignments.
//!
//! Everything here is deterministic in its seed so that benchmark inputs
//! and randomized checks can be regenerated exactly.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pivot_align::alignment::{Alignment, Relation};
use pivot_align::lexicon::{Glossary, GlossarySense, ResourceBundle};
use pivot_align::onto::{AssertionObject, Axiom, EntityKind, Iri, Label, Ontology};

/// An English rendering and the context cues that select it.
pub type Sense = (&'static str, &'static [&'static str]);

/// German terms with their English senses. Terms with two senses are
/// ambiguous; the cue lists point at words found in typical neighbours.
pub const VOCABULARY: &[(&str, &[Sense])] = &[
    ("Universität", &[("university", &[])]),
    ("Fakultät", &[("faculty", &[])]),
    ("Institut", &[("institute", &[])]),
    ("Mitarbeiter", &[("employee", &["institut", "arbeitet"]), ("collaborator", &["projekt"])]),
    ("Projekt", &[("project", &[])]),
    ("Professor", &[("professor", &[])]),
    ("Student", &[("student", &[])]),
    ("Kurs", &[("course", &[])]),
    ("Note", &[("grade", &["kurs", "student"]), ("note", &[])]),
    ("Raum", &[("room", &["gebäude"]), ("space", &[])]),
    ("Gebäude", &[("building", &[])]),
    ("Leiter", &[("head", &["institut", "fakultät"]), ("ladder", &[])]),
    ("arbeitet", &[("works", &[])]),
    ("bei", &[("at", &[])]),
    ("Straße", &[("street", &[])]),
    ("Veröffentlichung", &[("publication", &[])]),
];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn glossary() -> Glossary {
    let mut g = Glossary::new("de", "en").expect("static language tags");
    for (term, senses) in VOCABULARY {
        for (target, cues) in *senses {
            let sense = GlossarySense {
                target: target.to_string(),
                cues: cues.iter().map(|c| c.to_string()).collect(),
            };
            g.add_sense(term, sense).expect("static vocabulary");
        }
    }
    g
}

/// Pivot `en`, the synthetic glossary and one synonym set.
pub fn bundle() -> ResourceBundle {
    let mut b = ResourceBundle::new("en").expect("static language tag");
    b.add_glossary(glossary()).expect("target is the pivot");
    b.synonyms
        .add_set(["employee", "staff"])
        .expect("static synonym set");
    b
}

pub fn iri(ns: &str, i: usize) -> Iri {
    Iri::new(format!("http://synth.example.org/{ns}#e{i}")).expect("well-formed")
}

fn random_kind(rng: &mut impl Rng) -> EntityKind {
    match rng.gen_range(0..10) {
        0..=3 => EntityKind::Class,
        4 | 5 => EntityKind::ObjectProperty,
        6 => EntityKind::DataProperty,
        _ => EntityKind::NamedIndividual,
    }
}

/// One to three vocabulary terms, in one of several spellings. Some
/// spellings carry quotes, backslashes or digits to exercise escaping.
fn random_label_text(rng: &mut impl Rng, i: usize) -> String {
    let n = rng.gen_range(1..=3);
    let words: Vec<&str> = (0..n)
        .map(|_| VOCABULARY.choose(rng).expect("non-empty").0)
        .collect();
    match rng.gen_range(0..5) {
        0 => words.join(" "),
        1 => words.join("_"),
        2 => words.concat(),
        3 => format!("{} \"{i}\"", words.join(" ")),
        _ => format!("{}\\{i}", words.join("-")),
    }
}

/// A random ontology with `1..=max_entities` entities of every kind,
/// German labels (some untagged) and axioms of every shape. Subclass and
/// subproperty edges only point at lower indices, so the hierarchy is
/// acyclic.
pub fn random_ontology(rng: &mut impl Rng, max_entities: usize, ns: &str) -> Ontology {
    let n = rng.gen_range(1..=max_entities.max(1));
    ontology_of_size(rng, n, ns)
}

fn ontology_of_size(rng: &mut impl Rng, n: usize, ns: &str) -> Ontology {
    let mut o = Ontology::new();
    o.iri = Some(Iri::new(format!("http://synth.example.org/{ns}")).expect("well-formed"));
    o.prefixes
        .insert(ns.to_string(), format!("http://synth.example.org/{ns}#"));

    let kinds: Vec<EntityKind> = (0..n).map(|_| random_kind(rng)).collect();
    for (i, kind) in kinds.iter().enumerate() {
        let text = random_label_text(rng, i);
        let e = o.declare(iri(ns, i), *kind).expect("fresh iri");
        e.add_label(Label::tagged(text, "de").expect("valid tag"))
            .expect("first label");
        if rng.gen_bool(0.2) {
            e.add_label(Label::new(format!("x{i}"), None).expect("valid"))
                .expect("distinct label");
        }
    }

    let of = |k: EntityKind| -> Vec<usize> { (0..n).filter(|&i| kinds[i] == k).collect() };
    let classes = of(EntityKind::Class);
    let objects = of(EntityKind::ObjectProperty);
    let datas = of(EntityKind::DataProperty);
    let individuals = of(EntityKind::NamedIndividual);

    for _ in 0..rng.gen_range(0..=2 * n) {
        let axiom = match rng.gen_range(0..7) {
            0 => {
                let (Some(&a), Some(&b)) = (classes.choose(rng), classes.choose(rng)) else {
                    continue;
                };
                if b >= a {
                    continue;
                }
                Axiom::SubClassOf { sub: iri(ns, a), sup: iri(ns, b) }
            }
            1 => {
                let (Some(&a), Some(&b)) = (objects.choose(rng), objects.choose(rng)) else {
                    continue;
                };
                if b >= a {
                    continue;
                }
                Axiom::SubPropertyOf { sub: iri(ns, a), sup: iri(ns, b) }
            }
            2 => {
                let props: Vec<usize> = objects.iter().chain(&datas).copied().collect();
                let (Some(&p), Some(&c)) = (props.choose(rng), classes.choose(rng)) else {
                    continue;
                };
                Axiom::Domain { prop: iri(ns, p), cls: iri(ns, c) }
            }
            3 => {
                if let (Some(&p), true) = (datas.choose(rng), rng.gen_bool(0.5)) {
                    let xsd = Iri::new("http://www.w3.org/2001/XMLSchema#string").expect("well-formed");
                    Axiom::Range { prop: iri(ns, p), target: xsd }
                } else {
                    let (Some(&p), Some(&c)) = (objects.choose(rng), classes.choose(rng)) else {
                        continue;
                    };
                    Axiom::Range { prop: iri(ns, p), target: iri(ns, c) }
                }
            }
            4 => {
                let (Some(&c), Some(&x)) = (classes.choose(rng), individuals.choose(rng)) else {
                    continue;
                };
                Axiom::ClassAssertion { cls: iri(ns, c), ind: iri(ns, x) }
            }
            5 => {
                let (Some(&s), Some(&p), Some(&t)) =
                    (individuals.choose(rng), objects.choose(rng), individuals.choose(rng))
                else {
                    continue;
                };
                Axiom::PropertyAssertion {
                    subj: iri(ns, s),
                    prop: iri(ns, p),
                    obj: AssertionObject::Iri(iri(ns, t)),
                }
            }
            _ => {
                let (Some(&s), Some(&p)) = (individuals.choose(rng), datas.choose(rng)) else {
                    continue;
                };
                let lang = rng.gen_bool(0.5).then(|| "de".to_string());
                Axiom::PropertyAssertion {
                    subj: iri(ns, s),
                    prop: iri(ns, p),
                    obj: AssertionObject::Literal { text: random_label_text(rng, s), lang },
                }
            }
        };
        o.add_axiom(axiom).expect("endpoints declared");
    }
    o
}

/// `o` copied into namespace `ns` with its entities renumbered by a random
/// permutation, plus the planted alignment from `o` to the copy.
pub fn mirror(rng: &mut impl Rng, o: &Ontology, ns: &str) -> (Ontology, Alignment) {
    let n = o.entity_count();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let rename = |i: &Iri| -> Iri {
        let idx: usize = i.fragment().trim_start_matches('e').parse().expect("synthetic iri");
        iri(ns, perm[idx])
    };

    let mut m = Ontology::new();
    m.iri = Some(Iri::new(format!("http://synth.example.org/{ns}")).expect("well-formed"));
    m.prefixes
        .insert(ns.to_string(), format!("http://synth.example.org/{ns}#"));
    let mut planted = Alignment::new(
        o.iri.as_ref().map(|i| i.to_string()),
        m.iri.as_ref().map(|i| i.to_string()),
    );
    for e in o.entities() {
        let target = rename(&e.iri);
        let copy = m.declare(target.clone(), e.kind).expect("permutation is injective");
        for l in e.labels() {
            copy.add_label(l.clone()).expect("labels already distinct");
        }
        planted
            .push(e.iri.clone(), target, Relation::Equivalence, 1.0)
            .expect("distinct pairs");
    }
    for ax in o.axioms() {
        let moved = match ax {
            Axiom::SubClassOf { sub, sup } => Axiom::SubClassOf { sub: rename(sub), sup: rename(sup) },
            Axiom::SubPropertyOf { sub, sup } => Axiom::SubPropertyOf { sub: rename(sub), sup: rename(sup) },
            Axiom::Domain { prop, cls } => Axiom::Domain { prop: rename(prop), cls: rename(cls) },
            Axiom::Range { prop, target } => Axiom::Range {
                prop: rename(prop),
                target: if target.as_str().starts_with("http://synth") { rename(target) } else { target.clone() },
            },
            Axiom::ClassAssertion { cls, ind } => Axiom::ClassAssertion { cls: rename(cls), ind: rename(ind) },
            Axiom::PropertyAssertion { subj, prop, obj } => Axiom::PropertyAssertion {
                subj: rename(subj),
                prop: rename(prop),
                obj: match obj {
                    AssertionObject::Iri(t) => AssertionObject::Iri(rename(t)),
                    lit => lit.clone(),
                },
            },
        };
        m.add_axiom(moved).expect("endpoints declared");
    }
    (m, planted)
}

/// Exactly `n` entities, used to size benchmark workloads.
pub fn sized_ontology(n: usize, seed: u64, ns: &str) -> Ontology {
    ontology_of_size(&mut rng(seed), n, ns)
}

/// Up to `2n` correspondences between entities `0..n` of namespaces
/// `left` and `right`, with random relations and similarities.
pub fn random_alignment(rng: &mut impl Rng, n: usize, left: &str, right: &str) -> Alignment {
    let mut a = Alignment::new(
        Some(format!("http://synth.example.org/{left}")),
        Some(format!("http://synth.example.org/{right}")),
    );
    let relations = [Relation::Equivalence, Relation::Subsumes, Relation::SubsumedBy, Relation::CrossType];
    for _ in 0..rng.gen_range(0..=2 * n) {
        let (l, r) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let rel = *relations.choose(rng).expect("non-empty");
        // duplicates are rejected by the alignment and simply skipped
        let _ = a.push(iri(left, l), iri(right, r), rel, rng.gen::<f64>());
    }
    a
}
