//! Reader and writer for the Turtle subset used to carry ontologies.
//!
//! Supported: `@prefix` declarations, `;` predicate lists and `,` object
//! lists, `a` / `rdf:type` with the four OWL entity types (plus
//! `owl:Ontology` for the ontology header), `rdfs:label` with plain or
//! language-tagged literals, `rdfs:subClassOf`, `rdfs:subPropertyOf`,
//! `rdfs:domain`, `rdfs:range`, and arbitrary non-vocabulary predicates,
//! which become property assertions. Anything else is a syntax error.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use super::{
    is_datatype_iri, AssertionObject, Axiom, EntityKind, Iri, Label, Ontology, OntologyError,
    OWL_NS, RDFS_NS, RDF_NS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    PrefixKw,
    IriRef(String),
    PName { prefix: String, local: String },
    A,
    Literal { text: String, lang: Option<String> },
    Dot,
    Semicolon,
    Comma,
}

fn syntax(pos: Pos, message: impl Into<String>) -> OntologyError {
    OntologyError::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-' || c == '.'
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            pos: Pos { line: 1, column: 1 },
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut out = String::new();
        while let Some(&c) = self.chars.peek() {
            if !pred(c) {
                break;
            }
            out.push(c);
            self.bump();
        }
        out
    }

    fn tokens(mut self) -> Result<Vec<(Tok, Pos)>, OntologyError> {
        let mut out = Vec::new();
        loop {
            self.skip_trivia();
            let start = self.pos;
            let Some(&c) = self.chars.peek() else { break };
            let tok = match c {
                '.' => {
                    self.bump();
                    Tok::Dot
                }
                ';' => {
                    self.bump();
                    Tok::Semicolon
                }
                ',' => {
                    self.bump();
                    Tok::Comma
                }
                '<' => {
                    self.bump();
                    let iri = self.take_while(|c| c != '>' && c != '\n');
                    if self.bump() != Some('>') {
                        return Err(syntax(start, "unterminated IRI"));
                    }
                    Tok::IriRef(iri)
                }
                '"' => self.literal(start)?,
                '@' => {
                    self.bump();
                    let kw = self.take_while(|c| c.is_ascii_alphabetic());
                    if kw != "prefix" {
                        return Err(syntax(start, format!("unsupported directive `@{kw}`")));
                    }
                    Tok::PrefixKw
                }
                c if is_name_char(c) || c == ':' => self.name(start)?,
                other => return Err(syntax(start, format!("unexpected character `{other}`"))),
            };
            out.push((tok, start));
            // A name swallowed trailing dots; give them back as statement terminators.
            if let Some((Tok::PName { local, .. }, _)) = out.last_mut() {
                let trimmed = local.trim_end_matches('.').len();
                let dots = local.len() - trimmed;
                if dots > 0 {
                    local.truncate(trimmed);
                    for _ in 0..dots {
                        out.push((Tok::Dot, self.pos));
                    }
                }
            }
        }
        Ok(out)
    }

    fn name(&mut self, start: Pos) -> Result<Tok, OntologyError> {
        let prefix = self.take_while(is_name_char);
        if self.chars.peek() != Some(&':') {
            if prefix == "a" {
                return Ok(Tok::A);
            }
            return Err(syntax(start, format!("expected prefixed name, found `{prefix}`")));
        }
        if prefix == "_" {
            return Err(syntax(start, "blank nodes are not supported"));
        }
        self.bump();
        let local = self.take_while(is_name_char);
        if prefix.starts_with(['-', '.']) || prefix.ends_with('.') {
            return Err(syntax(start, format!("bad prefix `{prefix}`")));
        }
        Ok(Tok::PName { prefix, local })
    }

    fn literal(&mut self, start: Pos) -> Result<Tok, OntologyError> {
        self.bump();
        let mut text = String::new();
        loop {
            match self.bump() {
                None | Some('\n') => return Err(syntax(start, "unterminated string literal")),
                Some('"') => break,
                Some('\\') => {
                    let esc = self.pos;
                    text.push(match self.bump() {
                        Some('"') => '"',
                        Some('\\') => '\\',
                        Some('n') => '\n',
                        Some('t') => '\t',
                        Some('r') => '\r',
                        _ => return Err(syntax(esc, "unsupported escape sequence")),
                    });
                }
                Some(c) => text.push(c),
            }
        }
        let mut lang = None;
        match self.chars.peek() {
            Some('@') => {
                self.bump();
                let at = self.pos;
                let tag = self
                    .take_while(|c| c.is_ascii_alphanumeric() || c == '-')
                    .to_ascii_lowercase();
                if !super::is_valid_lang(&tag) {
                    return Err(syntax(at, format!("invalid language tag `{tag}`")));
                }
                lang = Some(tag);
            }
            Some('^') => return Err(syntax(self.pos, "typed literals are not supported")),
            _ => {}
        }
        Ok(Tok::Literal { text, lang })
    }
}

#[derive(Debug, Clone)]
enum Term {
    Iri(Iri),
    Literal { text: String, lang: Option<String> },
}

struct Triple {
    subject: Iri,
    predicate: Iri,
    object: Term,
    pos: Pos,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
    prefixes: BTreeMap<String, String>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), OntologyError> {
        let pos = self.pos();
        match self.next() {
            Some((t, _)) if t == want => Ok(()),
            _ => Err(syntax(pos, format!("expected {what}"))),
        }
    }

    fn resolve(&self, tok: &Tok, pos: Pos) -> Result<Option<Iri>, OntologyError> {
        let raw = match tok {
            Tok::IriRef(s) => s.clone(),
            Tok::PName { prefix, local } => match self.prefixes.get(prefix) {
                Some(ns) => format!("{ns}{local}"),
                None => {
                    return Err(OntologyError::UndeclaredPrefix {
                        line: pos.line,
                        column: pos.column,
                        prefix: prefix.clone(),
                    })
                }
            },
            Tok::A => format!("{RDF_NS}type"),
            _ => return Ok(None),
        };
        Iri::new(&raw)
            .map(Some)
            .map_err(|_| syntax(pos, format!("invalid IRI `{raw}`")))
    }

    fn iri_term(&mut self, what: &str) -> Result<Iri, OntologyError> {
        let pos = self.pos();
        let tok = self.next().map(|(t, _)| t);
        match tok {
            Some(Tok::A) if what == "predicate" => Ok(self.resolve(&Tok::A, pos)?.unwrap()),
            Some(t @ (Tok::IriRef(_) | Tok::PName { .. })) => Ok(self.resolve(&t, pos)?.unwrap()),
            _ => Err(syntax(pos, format!("expected {what}"))),
        }
    }

    fn object(&mut self) -> Result<Term, OntologyError> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Literal { .. }) => match self.next() {
                Some((Tok::Literal { text, lang }, _)) => Ok(Term::Literal { text, lang }),
                _ => unreachable!(),
            },
            Some(Tok::IriRef(_) | Tok::PName { .. }) => Ok(Term::Iri(self.iri_term("object")?)),
            _ => Err(syntax(pos, "expected object")),
        }
    }

    fn document(mut self) -> Result<(BTreeMap<String, String>, Vec<Triple>), OntologyError> {
        let mut triples = Vec::new();
        while let Some(tok) = self.peek() {
            if *tok == Tok::PrefixKw {
                self.next();
                let pos = self.pos();
                let prefix = match self.next() {
                    Some((Tok::PName { prefix, local }, _)) if local.is_empty() => prefix,
                    _ => return Err(syntax(pos, "expected prefix name")),
                };
                let pos = self.pos();
                let ns = match self.next() {
                    Some((Tok::IriRef(ns), _)) if Iri::is_valid(&ns) => ns,
                    _ => return Err(syntax(pos, "expected namespace IRI")),
                };
                self.expect(Tok::Dot, "`.`")?;
                self.prefixes.insert(prefix, ns);
                continue;
            }
            let subject = self.iri_term("subject")?;
            loop {
                let pos = self.pos();
                let predicate = self.iri_term("predicate")?;
                loop {
                    let opos = self.pos();
                    let object = self.object()?;
                    triples.push(Triple {
                        subject: subject.clone(),
                        predicate: predicate.clone(),
                        object,
                        pos: if opos.line == pos.line { pos } else { opos },
                    });
                    if self.peek() == Some(&Tok::Comma) {
                        self.next();
                    } else {
                        break;
                    }
                }
                if self.peek() == Some(&Tok::Semicolon) {
                    self.next();
                    // Trailing `;` before `.` is allowed.
                    if self.peek() == Some(&Tok::Dot) {
                        break;
                    }
                } else {
                    break;
                }
            }
            self.expect(Tok::Dot, "`.` or `;`")?;
        }
        Ok((self.prefixes, triples))
    }
}

fn kind_of_type(object: &Iri) -> Option<EntityKind> {
    let local = object.as_str().strip_prefix(OWL_NS)?;
    Some(match local {
        "Class" => EntityKind::Class,
        "ObjectProperty" => EntityKind::ObjectProperty,
        "DatatypeProperty" => EntityKind::DataProperty,
        "NamedIndividual" => EntityKind::NamedIndividual,
        _ => return None,
    })
}

fn in_vocabulary(iri: &Iri) -> bool {
    let s = iri.as_str();
    s.starts_with(RDF_NS) || s.starts_with(RDFS_NS) || s.starts_with(OWL_NS)
}

enum Statement {
    Label(Iri, Label),
    Axiom(Axiom),
}

/// Parses a document into an ontology.
///
/// Statement order does not matter: declarations are collected first, IRIs
/// used without a declaration are auto-declared from the position they occur
/// in, and labels and axioms are stored in canonical order.
pub fn parse_turtle(text: &str) -> Result<Ontology, OntologyError> {
    let toks = Lexer::new(text).tokens()?;
    let end = {
        let mut p = Pos { line: 1, column: 1 };
        for c in text.chars() {
            if c == '\n' {
                p.line += 1;
                p.column = 1;
            } else {
                p.column += 1;
            }
        }
        p
    };
    let parser = Parser {
        toks,
        at: 0,
        end,
        prefixes: BTreeMap::new(),
    };
    let (prefixes, triples) = parser.document()?;

    let rdf_type = Iri::new(format!("{RDF_NS}type")).unwrap();
    let owl_ontology = format!("{OWL_NS}Ontology");
    let rdfs = |local: &str| format!("{RDFS_NS}{local}");

    let mut ontology = Ontology {
        prefixes,
        ..Ontology::default()
    };
    let mut declared: BTreeMap<Iri, EntityKind> = BTreeMap::new();
    let mut inferred: BTreeMap<Iri, BTreeSet<EntityKind>> = BTreeMap::new();
    let mut statements: Vec<(Statement, Pos)> = Vec::new();

    let mut infer = |iri: &Iri, kind: EntityKind| {
        inferred.entry(iri.clone()).or_default().insert(kind);
    };

    for t in &triples {
        let pred = t.predicate.as_str();
        let obj_iri = match &t.object {
            Term::Iri(i) => Some(i),
            Term::Literal { .. } => None,
        };
        let need_iri = || {
            obj_iri
                .cloned()
                .ok_or_else(|| syntax(t.pos, format!("predicate <{pred}> needs an IRI object")))
        };
        if t.predicate == rdf_type {
            let obj = need_iri()?;
            if obj.as_str() == owl_ontology {
                match &ontology.iri {
                    Some(prev) if prev != &t.subject => {
                        return Err(syntax(t.pos, "more than one ontology header"))
                    }
                    _ => ontology.iri = Some(t.subject.clone()),
                }
            } else if let Some(kind) = kind_of_type(&obj) {
                match declared.get(&t.subject) {
                    Some(&prev) if prev != kind => {
                        return Err(OntologyError::ConflictingDeclaration {
                            iri: t.subject.clone(),
                            first: prev.min(kind),
                            second: prev.max(kind),
                        })
                    }
                    _ => {
                        declared.insert(t.subject.clone(), kind);
                    }
                }
            } else if in_vocabulary(&obj) {
                return Err(syntax(t.pos, format!("unsupported type <{obj}>")));
            } else {
                infer(&obj, EntityKind::Class);
                infer(&t.subject, EntityKind::NamedIndividual);
                statements.push((
                    Statement::Axiom(Axiom::ClassAssertion {
                        cls: obj,
                        ind: t.subject.clone(),
                    }),
                    t.pos,
                ));
            }
        } else if pred == rdfs("label") {
            let Term::Literal { text, lang } = &t.object else {
                return Err(syntax(t.pos, "rdfs:label needs a literal object"));
            };
            let label = Label::new(text.clone(), lang.as_deref())
                .map_err(|e| syntax(t.pos, e.to_string()))?;
            statements.push((Statement::Label(t.subject.clone(), label), t.pos));
        } else if pred == rdfs("subClassOf") {
            let sup = need_iri()?;
            infer(&t.subject, EntityKind::Class);
            infer(&sup, EntityKind::Class);
            statements.push((
                Statement::Axiom(Axiom::SubClassOf {
                    sub: t.subject.clone(),
                    sup,
                }),
                t.pos,
            ));
        } else if pred == rdfs("subPropertyOf") {
            let sup = need_iri()?;
            infer(&t.subject, EntityKind::ObjectProperty);
            infer(&sup, EntityKind::ObjectProperty);
            statements.push((
                Statement::Axiom(Axiom::SubPropertyOf {
                    sub: t.subject.clone(),
                    sup,
                }),
                t.pos,
            ));
        } else if pred == rdfs("domain") {
            let cls = need_iri()?;
            infer(&t.subject, EntityKind::ObjectProperty);
            infer(&cls, EntityKind::Class);
            statements.push((
                Statement::Axiom(Axiom::Domain {
                    prop: t.subject.clone(),
                    cls,
                }),
                t.pos,
            ));
        } else if pred == rdfs("range") {
            let target = need_iri()?;
            if is_datatype_iri(&target) {
                infer(&t.subject, EntityKind::DataProperty);
            } else {
                infer(&t.subject, EntityKind::ObjectProperty);
                infer(&target, EntityKind::Class);
            }
            statements.push((
                Statement::Axiom(Axiom::Range {
                    prop: t.subject.clone(),
                    target,
                }),
                t.pos,
            ));
        } else if in_vocabulary(&t.predicate) {
            return Err(syntax(t.pos, format!("unsupported predicate <{pred}>")));
        } else {
            infer(&t.subject, EntityKind::NamedIndividual);
            let obj = match &t.object {
                Term::Iri(o) => {
                    infer(&t.predicate, EntityKind::ObjectProperty);
                    infer(o, EntityKind::NamedIndividual);
                    AssertionObject::Iri(o.clone())
                }
                Term::Literal { text, lang } => {
                    infer(&t.predicate, EntityKind::DataProperty);
                    AssertionObject::Literal {
                        text: text.clone(),
                        lang: lang.clone(),
                    }
                }
            };
            statements.push((
                Statement::Axiom(Axiom::PropertyAssertion {
                    subj: t.subject.clone(),
                    prop: t.predicate.clone(),
                    obj,
                }),
                t.pos,
            ));
        }
    }

    for (iri, kind) in &declared {
        ontology.declare(iri.clone(), *kind)?;
    }
    for (iri, kinds) in inferred {
        if declared.contains_key(&iri) {
            continue;
        }
        // Lowest kind in enum order wins when positions disagree.
        let kind = *kinds.iter().next().unwrap();
        log::warn!("auto-declaring {iri} as {kind}");
        ontology.declare(iri, kind)?;
    }
    for (stmt, pos) in statements {
        match stmt {
            Statement::Label(iri, label) => match ontology.entity_mut(&iri) {
                Some(entity) => entity.add_label(label)?,
                None => return Err(syntax(pos, format!("label for undeclared entity <{iri}>"))),
            },
            Statement::Axiom(ax) => {
                ontology.add_axiom(ax)?;
            }
        }
    }
    ontology.check_acyclic()?;
    Ok(ontology)
}

fn is_local_name(s: &str) -> bool {
    !s.is_empty()
        && !s.starts_with('-')
        && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '-')
}

struct Compactor<'a> {
    // (namespace, prefix), longest namespace first
    spaces: Vec<(&'a str, &'a str)>,
}

impl<'a> Compactor<'a> {
    fn new(prefixes: &'a BTreeMap<String, String>) -> Self {
        let mut spaces: Vec<(&str, &str)> = prefixes
            .iter()
            .map(|(p, ns)| (ns.as_str(), p.as_str()))
            .collect();
        spaces.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.1.cmp(b.1)));
        Compactor { spaces }
    }

    fn term(&self, iri: &str) -> String {
        for (ns, prefix) in &self.spaces {
            if let Some(local) = iri.strip_prefix(ns) {
                if is_local_name(local) {
                    return format!("{prefix}:{local}");
                }
            }
        }
        format!("<{iri}>")
    }
}

fn literal(text: &str, lang: Option<&str>) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out.push('"');
    if let Some(lang) = lang {
        out.push('@');
        out.push_str(lang);
    }
    out
}

/// Writes the ontology in canonical form: prefix block, ontology header,
/// one block per entity sorted by IRI, then one line per axiom in canonical
/// order.
pub fn serialize_turtle(o: &Ontology) -> String {
    let c = Compactor::new(&o.prefixes);
    let mut out = String::new();
    for (prefix, ns) in &o.prefixes {
        let _ = writeln!(out, "@prefix {prefix}: <{ns}> .");
    }
    let vocab = |ns: &str, local: &str| c.term(&format!("{ns}{local}"));

    if let Some(iri) = &o.iri {
        out.push('\n');
        let _ = writeln!(out, "{} a {} .", c.term(iri.as_str()), vocab(OWL_NS, "Ontology"));
    }

    for e in o.entities() {
        out.push('\n');
        let ty = match e.kind {
            EntityKind::Class => "Class",
            EntityKind::ObjectProperty => "ObjectProperty",
            EntityKind::DataProperty => "DatatypeProperty",
            EntityKind::NamedIndividual => "NamedIndividual",
        };
        let _ = write!(out, "{} a {}", c.term(e.iri.as_str()), vocab(OWL_NS, ty));
        for l in e.labels() {
            let _ = write!(
                out,
                " ;\n    {} {}",
                vocab(RDFS_NS, "label"),
                literal(&l.text, l.lang())
            );
        }
        out.push_str(" .\n");
    }

    if o.axiom_count() > 0 {
        out.push('\n');
    }
    for ax in o.axioms() {
        let (s, p, obj) = match ax {
            Axiom::SubClassOf { sub, sup } => (sub, vocab(RDFS_NS, "subClassOf"), c.term(sup.as_str())),
            Axiom::SubPropertyOf { sub, sup } => {
                (sub, vocab(RDFS_NS, "subPropertyOf"), c.term(sup.as_str()))
            }
            Axiom::Domain { prop, cls } => (prop, vocab(RDFS_NS, "domain"), c.term(cls.as_str())),
            Axiom::Range { prop, target } => (prop, vocab(RDFS_NS, "range"), c.term(target.as_str())),
            Axiom::ClassAssertion { cls, ind } => (ind, "a".to_string(), c.term(cls.as_str())),
            Axiom::PropertyAssertion { subj, prop, obj } => {
                let o = match obj {
                    AssertionObject::Iri(i) => c.term(i.as_str()),
                    AssertionObject::Literal { text, lang } => literal(text, lang.as_deref()),
                };
                (subj, c.term(prop.as_str()), o)
            }
        };
        let _ = writeln!(out, "{} {} {} .", c.term(s.as_str()), p, obj);
    }
    out
}
