//! The six competency questions, answered as graph lookups over property
//! assertions.
//!
//! | Q | question                                   | answer                          |
//! |---|--------------------------------------------|---------------------------------|
//! | 1 | does the person work at the university?    | `[root]` or empty               |
//! | 2 | where does the person work?                | `works_at` objects              |
//! | 3 | who supervises the person?                 | subjects of `supervisor_of`     |
//! | 4 | who are the person's co-workers?           | others sharing a unit           |
//! | 5 | what is the unit part of?                  | `sub_unit_of` objects           |
//! | 6 | which units belong to the unit, at any depth? | transitive `sub_unit_of` subjects |

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::onto::{AssertionObject, Axiom, Iri, Ontology};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompetencyError {
    #[error("role `{role}` is bound to {iri}, which is not a property of the ontology")]
    UnboundRole { role: &'static str, iri: Iri },
    #[error("unknown entity {0}")]
    UnknownEntity(Iri),
    #[error("manifest line {line}: {message}")]
    Manifest { line: usize, message: String },
}

/// Which properties play which role, and which entity is the university.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoleBindings {
    /// Every property meaning "works at" or "is member of".
    pub works_at: Vec<Iri>,
    pub supervisor_of: Iri,
    pub sub_unit_of: Iri,
    pub university_root: Iri,
}

/// Role bindings plus the person and unit the questions are asked about.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub roles: RoleBindings,
    pub person: Iri,
    pub unit: Iri,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Question {
    WorksAtUniversity(Iri),
    Workplaces(Iri),
    Supervisors(Iri),
    CoWorkers(Iri),
    ParentUnits(Iri),
    SubUnits(Iri),
}

impl Question {
    pub fn id(&self) -> u8 {
        match self {
            Question::WorksAtUniversity(_) => 1,
            Question::Workplaces(_) => 2,
            Question::Supervisors(_) => 3,
            Question::CoWorkers(_) => 4,
            Question::ParentUnits(_) => 5,
            Question::SubUnits(_) => 6,
        }
    }

    fn subject(&self) -> &Iri {
        match self {
            Question::WorksAtUniversity(x)
            | Question::Workplaces(x)
            | Question::Supervisors(x)
            | Question::CoWorkers(x)
            | Question::ParentUnits(x)
            | Question::SubUnits(x) => x,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompetencyAnswer {
    pub question: u8,
    /// Sorted by IRI.
    pub bindings: Vec<Iri>,
}

/// Subject -> objects and object -> subjects for one property.
#[derive(Default)]
struct Edges<'o> {
    out: BTreeMap<&'o Iri, BTreeSet<&'o Iri>>,
    inv: BTreeMap<&'o Iri, BTreeSet<&'o Iri>>,
}

impl<'o> Edges<'o> {
    fn collect(o: &'o Ontology, props: &[&Iri]) -> Self {
        let mut e = Edges::default();
        for ax in o.axioms() {
            if let Axiom::PropertyAssertion { subj, prop, obj: AssertionObject::Iri(obj) } = ax {
                if props.contains(&prop) {
                    e.out.entry(subj).or_default().insert(obj);
                    e.inv.entry(obj).or_default().insert(subj);
                }
            }
        }
        e
    }

    fn objects(&self, s: &Iri) -> BTreeSet<&'o Iri> {
        self.out.get(s).cloned().unwrap_or_default()
    }

    fn subjects(&self, o: &Iri) -> BTreeSet<&'o Iri> {
        self.inv.get(o).cloned().unwrap_or_default()
    }

    /// Everything reachable from `start`, forwards or backwards, excluding `start`.
    fn closure(&self, start: &'o Iri, forward: bool) -> BTreeSet<&'o Iri> {
        let map = if forward { &self.out } else { &self.inv };
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in map.get(x).into_iter().flatten() {
                if y != start && seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }
}

fn check_roles(o: &Ontology, roles: &RoleBindings) -> Result<(), CompetencyError> {
    let named = roles
        .works_at
        .iter()
        .map(|p| ("works_at", p))
        .chain([("supervisor_of", &roles.supervisor_of), ("sub_unit_of", &roles.sub_unit_of)]);
    for (role, iri) in named {
        if !o.entity(iri).is_some_and(|e| e.kind.is_property()) {
            return Err(CompetencyError::UnboundRole { role, iri: iri.clone() });
        }
    }
    if o.entity(&roles.university_root).is_none() {
        return Err(CompetencyError::UnknownEntity(roles.university_root.clone()));
    }
    Ok(())
}

pub fn answer_question(o: &Ontology, roles: &RoleBindings, q: &Question) -> Result<CompetencyAnswer, CompetencyError> {
    check_roles(o, roles)?;
    let subject = q.subject();
    if o.entity(subject).is_none() {
        return Err(CompetencyError::UnknownEntity(subject.clone()));
    }
    let works: Vec<&Iri> = roles.works_at.iter().collect();
    let works = Edges::collect(o, &works);
    let units = Edges::collect(o, &[&roles.sub_unit_of]);
    let answer: BTreeSet<&Iri> = match q {
        Question::WorksAtUniversity(p) => {
            let reaches = works.objects(p).into_iter().any(|u| {
                u == &roles.university_root || units.closure(u, true).contains(&roles.university_root)
            });
            if reaches {
                BTreeSet::from([&roles.university_root])
            } else {
                BTreeSet::new()
            }
        }
        Question::Workplaces(p) => works.objects(p),
        Question::Supervisors(p) => Edges::collect(o, &[&roles.supervisor_of]).subjects(p),
        Question::CoWorkers(p) => {
            let mut out: BTreeSet<&Iri> = works.objects(p).into_iter().flat_map(|u| works.subjects(u)).collect();
            out.remove(p);
            out
        }
        Question::ParentUnits(u) => units.objects(u),
        Question::SubUnits(u) => {
            let u = o.entity(u).map(|e| &e.iri).expect("checked above");
            units.closure(u, false)
        }
    };
    Ok(CompetencyAnswer {
        question: q.id(),
        bindings: answer.into_iter().cloned().collect(),
    })
}

/// Answers all six questions for the manifest's person (Q1-Q4) and unit (Q5-Q6).
pub fn competency_check(o: &Ontology, m: &Manifest) -> Result<Vec<CompetencyAnswer>, CompetencyError> {
    let p = &m.person;
    let u = &m.unit;
    [
        Question::WorksAtUniversity(p.clone()),
        Question::Workplaces(p.clone()),
        Question::Supervisors(p.clone()),
        Question::CoWorkers(p.clone()),
        Question::ParentUnits(u.clone()),
        Question::SubUnits(u.clone()),
    ]
    .iter()
    .map(|q| answer_question(o, &m.roles, q))
    .collect()
}

/// Parses `key = value` lines (`#` comments). Keys: `works_at` (comma
/// list), `supervisor_of`, `sub_unit_of`, `university_root`, `person`,
/// `unit`. Values in `prefix:local` form are expanded with the ontology's
/// prefixes.
pub fn parse_manifest(text: &str, o: &Ontology) -> Result<Manifest, CompetencyError> {
    let mut values: BTreeMap<&str, (usize, Vec<Iri>)> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| CompetencyError::Manifest { line: line_no, message };
        let (key, value) = line.split_once('=').ok_or_else(|| err("expected `key = value`".into()))?;
        let key = key.trim();
        if !["works_at", "supervisor_of", "sub_unit_of", "university_root", "person", "unit"].contains(&key) {
            return Err(err(format!("unknown key `{key}`")));
        }
        let iris = value
            .split(',')
            .map(|v| expand(v.trim(), o).map_err(&err))
            .collect::<Result<Vec<_>, _>>()?;
        if key != "works_at" && iris.len() != 1 {
            return Err(err(format!("`{key}` takes exactly one IRI")));
        }
        values.insert(key, (line_no, iris));
    }
    let mut take = |key: &str| {
        values.remove(key).map(|(_, v)| v).ok_or_else(|| CompetencyError::Manifest {
            line: 0,
            message: format!("missing key `{key}`"),
        })
    };
    let works_at = take("works_at")?;
    let one = |mut v: Vec<Iri>| v.remove(0);
    Ok(Manifest {
        roles: RoleBindings {
            works_at,
            supervisor_of: one(take("supervisor_of")?),
            sub_unit_of: one(take("sub_unit_of")?),
            university_root: one(take("university_root")?),
        },
        person: one(take("person")?),
        unit: one(take("unit")?),
    })
}

fn expand(value: &str, o: &Ontology) -> Result<Iri, String> {
    if let Some((prefix, local)) = value.split_once(':') {
        if !local.starts_with("//") {
            if let Some(ns) = o.prefixes.get(prefix) {
                return Iri::new(format!("{ns}{local}")).map_err(|e| e.to_string());
            }
        }
    }
    Iri::new(value).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::onto::parse_turtle;

    const FIXTURE: &str = r#"
@prefix : <http://x.org/u#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
:worksAt a owl:ObjectProperty .
:supervises a owl:ObjectProperty .
:partOf a owl:ObjectProperty .
:Uni a owl:NamedIndividual .
:Faculty a owl:NamedIndividual ; :partOf :Uni .
:Inst a owl:NamedIndividual ; :partOf :Faculty .
:Lab a owl:NamedIndividual ; :partOf :Inst .
:p a owl:NamedIndividual ; :worksAt :Inst .
:q a owl:NamedIndividual ; :worksAt :Inst ; :supervises :p .
:loner a owl:NamedIndividual .
"#;

    const MANIFEST: &str = "
# roles
works_at = :worksAt
supervisor_of = :supervises
sub_unit_of = :partOf
university_root = :Uni
person = :p
unit = :Faculty
";

    fn iris(names: &[&str]) -> Vec<Iri> {
        names.iter().map(|n| Iri::new(format!("http://x.org/u#{n}")).unwrap()).collect()
    }

    #[test]
    fn all_six_questions() {
        let o = parse_turtle(FIXTURE).unwrap();
        let m = parse_manifest(MANIFEST, &o).unwrap();
        let answers = competency_check(&o, &m).unwrap();
        let got: Vec<Vec<Iri>> = answers.iter().map(|a| a.bindings.clone()).collect();
        assert_eq!(
            got,
            vec![
                iris(&["Uni"]),
                iris(&["Inst"]),
                iris(&["q"]),
                iris(&["q"]),
                iris(&["Uni"]),
                iris(&["Inst", "Lab"]),
            ]
        );
        assert_eq!(answers.iter().map(|a| a.question).collect::<Vec<_>>(), [1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn person_without_workplace() {
        let o = parse_turtle(FIXTURE).unwrap();
        let m = parse_manifest(MANIFEST, &o).unwrap();
        let a = answer_question(&o, &m.roles, &Question::WorksAtUniversity(iris(&["loner"])[0].clone())).unwrap();
        assert!(a.bindings.is_empty());
    }

    #[test]
    fn errors() {
        let o = parse_turtle(FIXTURE).unwrap();
        let mut m = parse_manifest(MANIFEST, &o).unwrap();
        let q = Question::Workplaces(iris(&["nobody"])[0].clone());
        assert!(matches!(answer_question(&o, &m.roles, &q), Err(CompetencyError::UnknownEntity(_))));
        m.roles.sub_unit_of = iris(&["Uni"])[0].clone();
        assert!(matches!(competency_check(&o, &m), Err(CompetencyError::UnboundRole { .. })));
        assert!(matches!(parse_manifest("works_at = :worksAt\n", &o), Err(CompetencyError::Manifest { .. })));
        assert!(matches!(parse_manifest("colour = red\n", &o), Err(CompetencyError::Manifest { line: 1, .. })));
    }
}
