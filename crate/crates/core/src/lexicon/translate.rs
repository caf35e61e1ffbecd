use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::resources::{term_key, GlossarySense, ResourceBundle};
use super::tokenize::{tokenize, TokenSequence};
use super::LexiconError;
use crate::onto::{all_contexts, Entity, Iri, Label, Ontology, StructuralContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TranslationStatus {
    Translated,
    Passthrough,
    Disambiguated,
}

/// What happened to one label. `translated[0]` is the chosen rendering;
/// any further entries are renderings with other senses of ambiguous terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationOutcome {
    pub original: Label,
    pub translated: Vec<Label>,
    pub status: TranslationStatus,
}

impl TranslationOutcome {
    pub fn chosen(&self) -> &Label {
        &self.translated[0]
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct TranslationCounts {
    pub translated: usize,
    pub disambiguated: usize,
    pub passthrough: usize,
}

impl TranslationCounts {
    pub fn total(&self) -> usize {
        self.translated + self.disambiguated + self.passthrough
    }

    pub fn of<'a>(outcomes: impl IntoIterator<Item = &'a TranslationOutcome>) -> Self {
        let mut c = TranslationCounts::default();
        for o in outcomes {
            match o.status {
                TranslationStatus::Translated => c.translated += 1,
                TranslationStatus::Disambiguated => c.disambiguated += 1,
                TranslationStatus::Passthrough => c.passthrough += 1,
            }
        }
        c
    }
}

/// Index of the sense with the largest cue overlap; the first one wins ties.
pub fn choose_sense(senses: &[GlossarySense], context: &BTreeSet<&str>) -> usize {
    let mut best = 0;
    let mut best_overlap = None;
    for (i, s) in senses.iter().enumerate() {
        let overlap = s.cues.iter().filter(|c| context.contains(c.as_str())).count();
        if best_overlap.is_none_or(|b| overlap > b) {
            best = i;
            best_overlap = Some(overlap);
        }
    }
    best
}

fn render(target: &str) -> String {
    target.split_whitespace().collect::<Vec<_>>().join("_")
}

/// Translates one label into the pivot language.
///
/// The whole multiword term is looked up first, then each token on its own.
/// Among several senses the one sharing most cues with `context` wins, ties
/// going to the earliest sense in the glossary. Tokens without an entry are
/// kept as they are; a label with no entry at all passes through unchanged.
pub fn translate_label(
    label: &Label,
    bundle: &ResourceBundle,
    context: &TokenSequence,
) -> Result<TranslationOutcome, LexiconError> {
    let pivot = bundle.pivot_lang();
    let passthrough = |label: &Label| TranslationOutcome {
        original: label.clone(),
        translated: vec![Label {
            text: label.text.clone(),
            lang: Some(pivot.to_string()),
        }],
        status: TranslationStatus::Passthrough,
    };
    if label.lang() == Some(pivot) {
        return Ok(passthrough(label));
    }
    let lang = label.lang().unwrap_or("(none)");
    let glossary = bundle
        .glossary(lang)
        .ok_or_else(|| LexiconError::NoGlossary(lang.to_string()))?;

    let tokens = tokenize(&label.text)?;
    let context: BTreeSet<&str> = context.iter().map(String::as_str).collect();

    // Each piece: the rendered senses of one looked-up term, or a raw token.
    enum Piece<'g> {
        Term { senses: &'g [GlossarySense], chosen: usize },
        Raw(&'g str),
    }
    let whole = tokens.join(" ");
    let pieces: Vec<Piece> = match glossary.senses(&whole) {
        Some(senses) if !whole.is_empty() => vec![Piece::Term {
            senses,
            chosen: choose_sense(senses, &context),
        }],
        _ => tokens
            .iter()
            .map(|t| match glossary.senses(&term_key(t)) {
                Some(senses) => Piece::Term {
                    senses,
                    chosen: choose_sense(senses, &context),
                },
                None => Piece::Raw(t.as_str()),
            })
            .collect(),
    };

    if !pieces.iter().any(|p| matches!(p, Piece::Term { .. })) {
        return Ok(passthrough(label));
    }
    let ambiguous = pieces
        .iter()
        .any(|p| matches!(p, Piece::Term { senses, .. } if senses.len() > 1));

    let join = |swap: Option<(usize, usize)>| -> String {
        pieces
            .iter()
            .enumerate()
            .map(|(i, p)| match p {
                Piece::Term { senses, chosen } => {
                    let pick = match swap {
                        Some((at, alt)) if at == i => alt,
                        _ => *chosen,
                    };
                    render(&senses[pick].target)
                }
                Piece::Raw(t) => t.to_string(),
            })
            .collect::<Vec<_>>()
            .join("_")
    };
    let mut texts = vec![join(None)];
    for (i, p) in pieces.iter().enumerate() {
        if let Piece::Term { senses, chosen } = p {
            for alt in (0..senses.len()).filter(|a| a != chosen) {
                let t = join(Some((i, alt)));
                if !texts.contains(&t) {
                    texts.push(t);
                }
            }
        }
    }
    Ok(TranslationOutcome {
        original: label.clone(),
        translated: texts
            .into_iter()
            .map(|text| Label {
                text,
                lang: Some(pivot.to_string()),
            })
            .collect(),
        status: if ambiguous {
            TranslationStatus::Disambiguated
        } else {
            TranslationStatus::Translated
        },
    })
}

/// Language assumed for untagged labels and bare IRI fragments: the most
/// frequent non-pivot label language that has a glossary, else the only
/// glossary in the bundle, else none (the text is taken as pivot text).
fn default_source_lang(o: &Ontology, bundle: &ResourceBundle) -> Option<String> {
    let mut freq: BTreeMap<&str, usize> = BTreeMap::new();
    for e in o.entities() {
        for l in e.labels() {
            if let Some(lang) = l.lang() {
                if lang != bundle.pivot_lang() && bundle.glossary(lang).is_some() {
                    *freq.entry(lang).or_default() += 1;
                }
            }
        }
    }
    // max_by_key keeps the last maximum; iterate in reverse for alphabetical ties
    if let Some((lang, _)) = freq.iter().rev().max_by_key(|(_, n)| **n) {
        return Some(lang.to_string());
    }
    let mut gl = bundle.glossaries();
    match (gl.next(), gl.next()) {
        (Some(g), None) => Some(g.source_lang.clone()),
        _ => None,
    }
}

/// Label to translate for an entity, with its language resolved.
fn source_label(
    e: &Entity,
    bundle: &ResourceBundle,
    default_lang: Option<&str>,
) -> Result<Label, LexiconError> {
    let pivot = bundle.pivot_lang();
    if let Some(l) = e.label_for(pivot) {
        return Ok(l.clone());
    }
    if let Some(l) = e
        .labels()
        .iter()
        .find(|l| l.lang().is_some_and(|lang| bundle.glossary(lang).is_some()))
    {
        return Ok(l.clone());
    }
    let with_default = |text: &str| Label {
        text: text.to_string(),
        lang: Some(default_lang.unwrap_or(pivot).to_string()),
    };
    if let Some(l) = e.labels().iter().find(|l| l.lang.is_none()) {
        return Ok(with_default(&l.text));
    }
    if let Some(l) = e.labels().first() {
        return Err(LexiconError::NoGlossary(l.lang().unwrap_or("(none)").to_string()));
    }
    let fragment = e.iri.fragment();
    Ok(with_default(if fragment.is_empty() {
        e.iri.as_str()
    } else {
        fragment
    }))
}

fn context_tokens(
    ctx: Option<&StructuralContext>,
    o: &Ontology,
    lang: Option<&str>,
) -> TokenSequence {
    let mut out = TokenSequence::default();
    let Some(ctx) = ctx else { return out };
    for n in ctx.neighbours() {
        let text = o
            .entity(n)
            .and_then(|e| lang.and_then(|l| e.label_for(l)))
            .map(|l| l.text.as_str())
            .unwrap_or_else(|| n.fragment());
        if let Ok(t) = tokenize(text) {
            out.extend(t);
        }
    }
    out
}

/// Gives every entity exactly one pivot-language label, leaving IRIs,
/// kinds, axioms and existing labels untouched. Outcomes come back in IRI
/// order.
pub fn translate_ontology(
    o: &Ontology,
    bundle: &ResourceBundle,
) -> Result<(Ontology, Vec<(Iri, TranslationOutcome)>), LexiconError> {
    let default_lang = default_source_lang(o, bundle);
    let contexts = all_contexts(o);
    let entities: Vec<&Entity> = o.entities().collect();

    let outcomes: Vec<(Iri, TranslationOutcome)> = entities
        .par_iter()
        .map(|e| {
            let label = source_label(e, bundle, default_lang.as_deref())?;
            let context = context_tokens(contexts.get(&e.iri), o, label.lang());
            let outcome = translate_label(&label, bundle, &context)?;
            Ok((e.iri.clone(), outcome))
        })
        .collect::<Result<_, LexiconError>>()?;

    let mut out = o.clone();
    let pivot = bundle.pivot_lang();
    for (iri, outcome) in &outcomes {
        let entity = out.entity_mut(iri).expect("entity exists");
        if entity.label_for(pivot).is_none() {
            entity
                .add_label(outcome.chosen().clone())
                .expect("no pivot label yet");
        }
    }
    Ok((out, outcomes))
}

pub fn outcome_counts(outcomes: &[(Iri, TranslationOutcome)]) -> TranslationCounts {
    TranslationCounts::of(outcomes.iter().map(|(_, o)| o))
}
