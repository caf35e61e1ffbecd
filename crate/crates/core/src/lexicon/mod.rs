//! Label tokenisation, glossary translation into the pivot language with
//! word-sense disambiguation, and the synonym lexicon.

mod resources;
mod tokenize;
mod translate;

use std::collections::BTreeSet;

use thiserror::Error;

pub use resources::{parse_stopwords, term_key, Glossary, GlossarySense, ResourceBundle, SynonymLexicon};
pub use tokenize::{tokenize, TokenSequence};
pub use translate::{
    choose_sense, outcome_counts, translate_label, translate_ontology, TranslationCounts,
    TranslationOutcome, TranslationStatus,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("cannot tokenize an empty name")]
    EmptyName,
    #[error("no glossary for language `{0}`")]
    NoGlossary(String),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("glossary has no language line (`# source=xx target=yy`)")]
    MissingLanguages,
    #[error("invalid language tag `{0}`")]
    BadLanguage(String),
    #[error("glossary targets `{found}` but the pivot language is `{expected}`")]
    TargetMismatch { expected: String, found: String },
    #[error("empty glossary term or target")]
    EmptyTerm,
    #[error("a synonym set needs at least two distinct members")]
    SmallSynonymSet,
}

/// For each token, the token itself plus every synonym-set member sharing a set with it.
pub fn expand_synonyms(tokens: &TokenSequence, lex: &SynonymLexicon) -> Vec<BTreeSet<String>> {
    tokens.iter().map(|t| lex.expand(t)).collect()
}
