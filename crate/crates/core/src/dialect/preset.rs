//! Named dialect presets loaded from a block-structured text file.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use thiserror::Error;

use super::DialectConfig;

const DEFAULT_PRESETS: &str = include_str!("../../data/presets.txt");

#[derive(Debug, Error)]
pub enum PresetError {
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("presets {names:?} disagree on {fields:?}")]
    MergeConflict {
        names: Vec<String>,
        fields: Vec<&'static str>,
    },
    #[error("no preset names given")]
    Empty,
    #[error("cannot read preset file {path}: {source}")]
    Unreadable {
        path: String,
        source: std::io::Error,
    },
    #[error("preset file line {line}: {message}")]
    Syntax { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DialectPreset {
    pub name: String,
    pub config: DialectConfig,
    pub countries: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresetTable {
    presets: BTreeMap<String, DialectPreset>,
}

impl Default for PresetTable {
    fn default() -> Self {
        Self::parse(DEFAULT_PRESETS).expect("bundled presets are valid")
    }
}

impl PresetTable {
    pub fn load(path: &Path) -> Result<Self, PresetError> {
        let text = fs::read_to_string(path).map_err(|source| PresetError::Unreadable {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Parses `[name]` blocks of `key = value` lines. All eight dialect
    /// fields are required in every block; `countries` is optional.
    pub fn parse(text: &str) -> Result<Self, PresetError> {
        struct Block {
            line: usize,
            name: String,
            config: DialectConfig,
            seen: BTreeSet<String>,
            countries: BTreeSet<String>,
        }

        fn finish(
            block: Block,
            presets: &mut BTreeMap<String, DialectPreset>,
        ) -> Result<(), PresetError> {
            if let Some(missing) = DialectConfig::FIELDS
                .iter()
                .find(|f| !block.seen.contains(**f))
            {
                return Err(PresetError::Syntax {
                    line: block.line,
                    message: format!("preset {:?} does not set {missing}", block.name),
                });
            }
            let preset = DialectPreset {
                name: block.name.clone(),
                config: block.config,
                countries: block.countries,
            };
            if presets.insert(block.name.clone(), preset).is_some() {
                return Err(PresetError::Syntax {
                    line: block.line,
                    message: format!("duplicate preset {:?}", block.name),
                });
            }
            Ok(())
        }

        let mut presets = BTreeMap::new();
        let mut current: Option<Block> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                if let Some(block) = current.take() {
                    finish(block, &mut presets)?;
                }
                current = Some(Block {
                    line: line_no,
                    name: name.trim().to_string(),
                    config: DialectConfig::default(),
                    seen: BTreeSet::new(),
                    countries: BTreeSet::new(),
                });
                continue;
            }
            let syntax = |message: String| PresetError::Syntax {
                line: line_no,
                message,
            };
            let block = current
                .as_mut()
                .ok_or_else(|| syntax("entry before the first [preset] header".into()))?;
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| syntax(format!("expected `key = value`, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            if key == "countries" {
                block.countries = value
                    .split(',')
                    .map(str::trim)
                    .filter(|c| !c.is_empty())
                    .map(str::to_string)
                    .collect();
            } else {
                block.config.set(key, value).map_err(syntax)?;
                block.seen.insert(key.to_string());
            }
        }
        if let Some(block) = current.take() {
            finish(block, &mut presets)?;
        }
        Ok(Self { presets })
    }

    pub fn get(&self, name: &str) -> Option<&DialectPreset> {
        self.presets.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &DialectPreset> + '_ {
        self.presets.values()
    }

    pub fn len(&self) -> usize {
        self.presets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.presets.is_empty()
    }

    /// Merges several presets. Every field must agree; the merged preset
    /// covers the union of their countries.
    pub fn merge<S: AsRef<str>>(&self, names: &[S]) -> Result<DialectPreset, PresetError> {
        let mut found = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref();
            found.push(
                self.get(name)
                    .ok_or_else(|| PresetError::UnknownPreset(name.to_string()))?,
            );
        }
        let (first, rest) = found.split_first().ok_or(PresetError::Empty)?;
        let mut fields: Vec<&'static str> = Vec::new();
        for other in rest {
            for f in first.config.differing_fields(&other.config) {
                if !fields.contains(&f) {
                    fields.push(f);
                }
            }
        }
        if !fields.is_empty() {
            return Err(PresetError::MergeConflict {
                names: found.iter().map(|p| p.name.clone()).collect(),
                fields,
            });
        }
        Ok(DialectPreset {
            name: found
                .iter()
                .map(|p| p.name.as_str())
                .collect::<Vec<_>>()
                .join("+"),
            config: first.config,
            countries: found
                .iter()
                .flat_map(|p| p.countries.iter().cloned())
                .collect(),
        })
    }
}

/// Looks up a single preset's configuration.
pub fn resolve_preset(name: &str, presets: &PresetTable) -> Result<DialectConfig, PresetError> {
    presets
        .get(name)
        .map(|p| p.config)
        .ok_or_else(|| PresetError::UnknownPreset(name.to_string()))
}
