//! Pipeline configuration file.
//!
//! TOML with flat dotted keys; every key is optional:
//!
//! ```toml
//! pivot_lang = "en"
//! bundle.glossaries = ["de-en.txt", "ar-en.txt"]
//! bundle.synonyms = "synonyms.txt"
//! bundle.stopwords = "stopwords.txt"
//! match.threshold = 0.8
//! match.cardinality = "one-to-one"      # or "many-to-many"
//! match.crosstype = true
//! match.structural_alpha = 0.25
//! match.structural_rounds = 2
//! match.stopwords = false
//! match.weights = { lexical = 1.0, semantic = 1.0, structural = 1.0, crosstype = 1.0 }
//! output.alignment = "alignment.tsv"
//! output.report = "report.json"
//! ```
//!
//! Relative paths are resolved against the directory holding the file. A
//! `match.weights` table replaces the default weights as a whole; matchers
//! it leaves out get weight 0.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::{PipelineError, Stage};
use crate::lexicon::{parse_stopwords, Glossary, ResourceBundle, SynonymLexicon};
use crate::matchers::MatchConfig;

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BundlePaths {
    pub glossaries: Vec<PathBuf>,
    pub synonyms: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputPaths {
    pub alignment: Option<PathBuf>,
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub pivot_lang: String,
    pub bundle: BundlePaths,
    #[serde(rename = "match")]
    pub matching: MatchConfig,
    pub output: OutputPaths,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            pivot_lang: "en".into(),
            bundle: BundlePaths::default(),
            matching: MatchConfig::default(),
            output: OutputPaths::default(),
        }
    }
}

impl PipelineConfig {
    /// Parses config text; relative paths are joined onto `base` when given.
    pub fn from_toml(text: &str, base: Option<&Path>) -> Result<Self, PipelineError> {
        let mut cfg: PipelineConfig = toml::from_str(text).map_err(|e| PipelineError::new(Stage::Config, e))?;
        if let Some(base) = base {
            let fix = |p: &mut PathBuf| {
                if p.is_relative() {
                    *p = base.join(&*p);
                }
            };
            cfg.bundle.glossaries.iter_mut().for_each(fix);
            cfg.bundle.synonyms.iter_mut().for_each(fix);
            cfg.bundle.stopwords.iter_mut().for_each(fix);
            cfg.output.alignment.iter_mut().for_each(fix);
            cfg.output.report.iter_mut().for_each(fix);
        }
        cfg.matching
            .validate()
            .map_err(|e| PipelineError::new(Stage::Config, e))?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self, PipelineError> {
        let text = read(path)?;
        PipelineConfig::from_toml(&text, path.parent())
    }
}

fn read(path: &Path) -> Result<String, PipelineError> {
    fs::read_to_string(path).map_err(|e| PipelineError::new(Stage::Config, format!("{}: {e}", path.display())))
}

/// Reads every resource file named by `cfg`. Glossary languages come from
/// each file's `# source=.. target=..` line.
pub fn load_bundle(cfg: &PipelineConfig) -> Result<ResourceBundle, PipelineError> {
    let lex = |path: &Path, e: crate::lexicon::LexiconError| {
        PipelineError::new(Stage::Lexicon, format!("{}: {e}", path.display()))
    };
    let mut bundle = ResourceBundle::new(&cfg.pivot_lang).map_err(|e| PipelineError::new(Stage::Config, e))?;
    for path in &cfg.bundle.glossaries {
        let g = Glossary::parse(&read(path)?, None).map_err(|e| lex(path, e))?;
        bundle.add_glossary(g).map_err(|e| lex(path, e))?;
    }
    if let Some(path) = &cfg.bundle.synonyms {
        bundle.synonyms = SynonymLexicon::parse(&read(path)?).map_err(|e| lex(path, e))?;
    }
    if let Some(path) = &cfg.bundle.stopwords {
        bundle.stopwords = parse_stopwords(&read(path)?);
    }
    Ok(bundle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matchers::{Cardinality, MatcherId};

    #[test]
    fn dotted_keys_and_relative_paths() {
        let cfg = PipelineConfig::from_toml(
            "pivot_lang = \"en\"\nbundle.glossaries = [\"g/de.txt\", \"/abs/ar.txt\"]\nmatch.threshold = 0.7\nmatch.cardinality = \"many-to-many\"\nmatch.weights.structural = 0.0\nmatch.weights.lexical = 2.0\n",
            Some(Path::new("/etc/pa")),
        )
        .unwrap();
        assert_eq!(cfg.bundle.glossaries, [PathBuf::from("/etc/pa/g/de.txt"), PathBuf::from("/abs/ar.txt")]);
        assert_eq!(cfg.matching.threshold, 0.7);
        assert_eq!(cfg.matching.cardinality, Cardinality::ManyToMany);
        assert_eq!(cfg.matching.weight(MatcherId::Lexical), 2.0);
        assert_eq!(cfg.matching.weight(MatcherId::Semantic), 0.0);
        assert!(cfg.matching.crosstype);
    }

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(PipelineConfig::from_toml("", None).unwrap(), PipelineConfig::default());
    }

    #[test]
    fn bad_config() {
        for text in ["match.threshold = 2.0", "colour = 1", "match.weights.aggregate = 1.0", "match.cardinality = \"1:1\""] {
            let err = PipelineConfig::from_toml(text, None).unwrap_err();
            assert_eq!(err.stage, Stage::Config, "{text}");
        }
    }
}
