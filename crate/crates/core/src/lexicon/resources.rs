//! Glossaries, synonym sets and stopwords, and their text formats.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::tokenize::is_separator;
use super::LexiconError;
use crate::onto::is_valid_lang;

/// One meaning of a glossary term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlossarySense {
    pub target: String,
    pub cues: BTreeSet<String>,
}

/// Normalised lookup key: lowercase words joined by single spaces.
pub fn term_key(term: &str) -> String {
    term.to_lowercase()
        .split(is_separator)
        .filter(|w| !w.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Glossary {
    pub source_lang: String,
    pub target_lang: String,
    entries: BTreeMap<String, Vec<GlossarySense>>,
}

fn format_err(line: usize, message: impl Into<String>) -> LexiconError {
    LexiconError::Format {
        line,
        message: message.into(),
    }
}

/// Reads `source=xx target=yy` out of a comment line.
fn language_directive(comment: &str) -> Option<(String, String)> {
    let mut source = None;
    let mut target = None;
    for part in comment.split_whitespace() {
        if let Some(v) = part.strip_prefix("source=") {
            source = Some(v.to_ascii_lowercase());
        } else if let Some(v) = part.strip_prefix("target=") {
            target = Some(v.to_ascii_lowercase());
        }
    }
    Some((source?, target?))
}

impl Glossary {
    pub fn new(source_lang: &str, target_lang: &str) -> Result<Self, LexiconError> {
        for tag in [source_lang, target_lang] {
            if !is_valid_lang(tag) {
                return Err(LexiconError::BadLanguage(tag.to_string()));
            }
        }
        Ok(Glossary {
            source_lang: source_lang.to_string(),
            target_lang: target_lang.to_string(),
            entries: BTreeMap::new(),
        })
    }

    /// Appends a sense; earlier senses of the same term take priority on ties.
    pub fn add_sense(&mut self, source: &str, sense: GlossarySense) -> Result<(), LexiconError> {
        let key = term_key(source);
        if key.is_empty() || sense.target.trim().is_empty() {
            return Err(LexiconError::EmptyTerm);
        }
        self.entries.entry(key).or_default().push(sense);
        Ok(())
    }

    pub fn senses(&self, key: &str) -> Option<&[GlossarySense]> {
        self.entries.get(key).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parses the TSV glossary format: `source<TAB>target[<TAB>cue,cue,...]`,
    /// one sense per line, `#` comments.
    ///
    /// Languages come from `langs` or, when absent, from a comment line of
    /// the form `# source=de target=en`.
    pub fn parse(text: &str, langs: Option<(&str, &str)>) -> Result<Self, LexiconError> {
        let mut glossary = match langs {
            Some((s, t)) => Some(Glossary::new(s, t)?),
            None => None,
        };
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() {
                continue;
            }
            if let Some(comment) = line.trim_start().strip_prefix('#') {
                if glossary.is_none() {
                    if let Some((s, t)) = language_directive(comment) {
                        glossary = Some(Glossary::new(&s, &t)?);
                    }
                }
                continue;
            }
            let g = glossary
                .as_mut()
                .ok_or_else(|| format_err(line_no, "entry before `# source=.. target=..` line"))?;
            let fields: Vec<&str> = line.split('\t').collect();
            if !(2..=3).contains(&fields.len()) {
                return Err(format_err(line_no, "expected 2 or 3 tab-separated fields"));
            }
            let target = fields[1].trim();
            let cues = fields
                .get(2)
                .map(|c| {
                    c.split(',')
                        .map(|w| w.trim().to_lowercase())
                        .filter(|w| !w.is_empty())
                        .collect()
                })
                .unwrap_or_default();
            g.add_sense(
                fields[0],
                GlossarySense {
                    target: target.to_string(),
                    cues,
                },
            )
            .map_err(|e| format_err(line_no, e.to_string()))?;
        }
        glossary.ok_or(LexiconError::MissingLanguages)
    }
}

/// Synonym sets over pivot-language tokens.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SynonymLexicon {
    sets: Vec<BTreeSet<String>>,
    index: HashMap<String, Vec<usize>>,
}

impl SynonymLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_set<I, S>(&mut self, words: I) -> Result<(), LexiconError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let set: BTreeSet<String> = words
            .into_iter()
            .map(|w| w.as_ref().trim().to_lowercase())
            .filter(|w| !w.is_empty())
            .collect();
        if set.len() < 2 {
            return Err(LexiconError::SmallSynonymSet);
        }
        let id = self.sets.len();
        for w in &set {
            self.index.entry(w.clone()).or_default().push(id);
        }
        self.sets.push(set);
        Ok(())
    }

    pub fn sets(&self) -> &[BTreeSet<String>] {
        &self.sets
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// The token plus every member of every set containing it.
    pub fn expand(&self, token: &str) -> BTreeSet<String> {
        let mut out = BTreeSet::from([token.to_string()]);
        for &id in self.index.get(token).into_iter().flatten() {
            out.extend(self.sets[id].iter().cloned());
        }
        out
    }

    /// One comma-separated set per line, `#` comments.
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut lex = SynonymLexicon::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            lex.add_set(line.split(','))
                .map_err(|e| format_err(idx + 1, e.to_string()))?;
        }
        Ok(lex)
    }
}

/// One token per line, `#` comments.
pub fn parse_stopwords(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}

/// Everything the translation and semantic stages consult.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResourceBundle {
    pivot_lang: String,
    glossaries: BTreeMap<String, Glossary>,
    pub synonyms: SynonymLexicon,
    pub stopwords: BTreeSet<String>,
}

impl ResourceBundle {
    pub fn new(pivot_lang: &str) -> Result<Self, LexiconError> {
        if !is_valid_lang(pivot_lang) {
            return Err(LexiconError::BadLanguage(pivot_lang.to_string()));
        }
        Ok(ResourceBundle {
            pivot_lang: pivot_lang.to_string(),
            glossaries: BTreeMap::new(),
            synonyms: SynonymLexicon::new(),
            stopwords: BTreeSet::new(),
        })
    }

    pub fn pivot_lang(&self) -> &str {
        &self.pivot_lang
    }

    /// Adds a glossary; its target language must be the pivot. A second
    /// glossary for the same source language has its senses appended.
    pub fn add_glossary(&mut self, glossary: Glossary) -> Result<(), LexiconError> {
        if glossary.target_lang != self.pivot_lang {
            return Err(LexiconError::TargetMismatch {
                expected: self.pivot_lang.clone(),
                found: glossary.target_lang,
            });
        }
        match self.glossaries.get_mut(&glossary.source_lang) {
            Some(existing) => {
                for (k, senses) in glossary.entries {
                    existing.entries.entry(k).or_default().extend(senses);
                }
            }
            None => {
                self.glossaries.insert(glossary.source_lang.clone(), glossary);
            }
        }
        Ok(())
    }

    pub fn glossary(&self, source_lang: &str) -> Option<&Glossary> {
        self.glossaries.get(source_lang)
    }

    pub fn glossaries(&self) -> impl Iterator<Item = &Glossary> {
        self.glossaries.values()
    }
}
