//! Wordlist ingestion, merging across country sources, POS and override
//! tables, and the dictionary build driver.

mod build;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub use build::{
    build_dictionary, rejects_tsv, BuildMetadata, Dictionary, DictionaryEntry, Pipeline,
    Pronunciation, Sidecar, SourceInfo,
};

use crate::g2p::{Phoneme, PhonemeClass, PhonemeInventory};
use crate::orthography::normalize;

/// Country codes with their own wordlist folder.
pub const COUNTRIES: [&str; 16] = [
    "argentina",
    "bolivia",
    "chile",
    "colombia",
    "costa_rica",
    "cuba",
    "dominican_republic",
    "ecuador",
    "guatemala",
    "honduras",
    "mexico",
    "panama",
    "peru",
    "puerto_rico",
    "spain",
    "venezuela",
];

/// Code for lists not tied to a country.
pub const GENERIC: &str = "generic";

pub fn is_known_country(code: &str) -> bool {
    code == GENERIC || COUNTRIES.contains(&code)
}

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("cannot read {path}: {source}")]
    FileUnreadable {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path} contains no usable words")]
    EmptySource { path: PathBuf },
    #[error("unknown country code {0:?}")]
    UnknownCountry(String),
    #[error("POS table line {line}: {message}")]
    MalformedPosFile { line: usize, message: String },
    #[error("override table line {line}: {message}")]
    MalformedOverride { line: usize, message: String },
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("metadata sidecar: {0}")]
    Sidecar(#[from] serde_json::Error),
}

impl LexiconError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::FileUnreadable { .. } => "FileUnreadable",
            Self::EmptySource { .. } => "EmptySource",
            Self::UnknownCountry(_) => "UnknownCountry",
            Self::MalformedPosFile { .. } => "MalformedPosFile",
            Self::MalformedOverride { .. } => "MalformedOverride",
            Self::Io { .. } => "IoFailure",
            Self::Sidecar(_) => "Sidecar",
        }
    }
}

fn read(path: &Path) -> Result<String, LexiconError> {
    fs::read_to_string(path).map_err(|source| LexiconError::FileUnreadable {
        path: path.to_path_buf(),
        source,
    })
}

/// A line that could not be turned into a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reject {
    pub word: String,
    pub kind: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordlistSource {
    pub country: String,
    /// Normalized, deduplicated, in first-seen order.
    pub entries: Vec<String>,
    pub origin: PathBuf,
    pub rejects: Vec<Reject>,
}

impl WordlistSource {
    /// Builds a source from in-memory lines, normalizing and deduplicating.
    pub fn from_lines<'a>(
        country: &str,
        origin: impl Into<PathBuf>,
        lines: impl IntoIterator<Item = &'a str>,
    ) -> Result<Self, LexiconError> {
        if !is_known_country(country) {
            return Err(LexiconError::UnknownCountry(country.to_string()));
        }
        let mut seen = BTreeSet::new();
        let mut entries = Vec::new();
        let mut rejects = Vec::new();
        for line in lines {
            let line = line.trim_start_matches('\u{feff}');
            if line.trim().is_empty() {
                continue;
            }
            match normalize(line) {
                Ok(word) => {
                    if seen.insert(word.normalized.clone()) {
                        entries.push(word.normalized);
                    }
                }
                Err(e) => rejects.push(Reject {
                    word: line.trim().to_string(),
                    kind: e.kind().to_string(),
                    detail: e.to_string(),
                }),
            }
        }
        Ok(Self {
            country: country.to_string(),
            entries,
            origin: origin.into(),
            rejects,
        })
    }
}

/// Reads a one-word-per-line UTF-8 file. Bad lines become rejects.
pub fn load_wordlist(path: &Path, country: &str) -> Result<WordlistSource, LexiconError> {
    let text = read(path)?;
    let source = WordlistSource::from_lines(country, path, text.lines())?;
    if source.entries.is_empty() && source.rejects.is_empty() {
        return Err(LexiconError::EmptySource {
            path: path.to_path_buf(),
        });
    }
    Ok(source)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergedEntry {
    pub word: String,
    pub countries: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MergedLexicon {
    /// Sorted by code point.
    pub entries: Vec<MergedEntry>,
    /// Deduplicated entry count of each source, summed per country.
    pub per_country: BTreeMap<String, usize>,
}

/// Unions sources; each word remembers every country that listed it.
pub fn merge_sources(sources: &[WordlistSource]) -> MergedLexicon {
    let mut words: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut per_country: BTreeMap<String, usize> = BTreeMap::new();
    for source in sources {
        for word in &source.entries {
            words
                .entry(word.clone())
                .or_default()
                .insert(source.country.clone());
        }
        *per_country.entry(source.country.clone()).or_default() += source.entries.len();
    }
    MergedLexicon {
        entries: words
            .into_iter()
            .map(|(word, countries)| MergedEntry { word, countries })
            .collect(),
        per_country,
    }
}

/// Word to part-of-speech label. Labels are free-form.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PosTable {
    labels: BTreeMap<String, String>,
}

impl PosTable {
    pub fn load(path: &Path) -> Result<Self, LexiconError> {
        Self::parse(&read(path)?)
    }

    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut labels = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let malformed = |message: String| LexiconError::MalformedPosFile {
                line: idx + 1,
                message,
            };
            let cols: Vec<&str> = line.split('\t').collect();
            let [word, label] = cols[..] else {
                return Err(malformed(format!(
                    "expected 2 tab-separated columns, found {}",
                    cols.len()
                )));
            };
            let word = normalize(word).map_err(|e| malformed(e.to_string()))?;
            let label = label.trim();
            if label.is_empty() {
                return Err(malformed("empty label".into()));
            }
            labels.insert(word.normalized, label.to_string());
        }
        Ok(Self { labels })
    }

    pub fn insert(&mut self, word: &str, label: &str) {
        self.labels.insert(word.to_string(), label.to_string());
    }

    pub fn get(&self, word: &str) -> Option<&str> {
        self.labels.get(word).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Sets `pos` on each entry found in the table; others get an empty label.
pub fn attach_pos(entries: &mut [DictionaryEntry], table: &PosTable) {
    for entry in entries {
        entry.pos = table.get(&entry.entry).unwrap_or_default().to_string();
    }
}

/// Explicit pronunciations that bypass letter-to-sound rules.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OverrideTable {
    map: BTreeMap<String, Vec<Phoneme>>,
}

impl OverrideTable {
    pub fn load(path: &Path, inventory: &PhonemeInventory) -> Result<Self, LexiconError> {
        Self::parse(&read(path)?, inventory)
    }

    /// `word<TAB>s y m b o l s`. Upper-case vowels mark stress.
    pub fn parse(text: &str, inventory: &PhonemeInventory) -> Result<Self, LexiconError> {
        let mut table = Self::default();
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let malformed = |message: String| LexiconError::MalformedOverride {
                line: idx + 1,
                message,
            };
            let (word, symbols) = line
                .split_once('\t')
                .ok_or_else(|| malformed("expected `word<TAB>symbols`".into()))?;
            let word = normalize(word).map_err(|e| malformed(e.to_string()))?;
            let phonemes = symbols
                .split_whitespace()
                .map(|tok| parse_override_symbol(tok, inventory).map_err(&malformed))
                .collect::<Result<Vec<_>, _>>()?;
            if phonemes.is_empty() {
                return Err(malformed("no symbols".into()));
            }
            table.map.insert(word.normalized, phonemes);
        }
        Ok(table)
    }

    pub fn insert(&mut self, word: &str, phonemes: Vec<Phoneme>) {
        self.map.insert(word.to_string(), phonemes);
    }

    pub fn get(&self, word: &str) -> Option<&[Phoneme]> {
        self.map.get(word).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

fn parse_override_symbol(tok: &str, inventory: &PhonemeInventory) -> Result<Phoneme, String> {
    let mut chars = tok.chars();
    let (Some(c), None) = (chars.next(), chars.next()) else {
        return Err(format!("symbol {tok:?} is not a single character"));
    };
    if let Some(class) = inventory.class_of(c) {
        return Ok(Phoneme::new(c, class));
    }
    if let Some(vowel) = inventory.unstressed_vowel(c) {
        let mut p = Phoneme::new(vowel, PhonemeClass::Vowel);
        p.stressed = true;
        return Ok(p);
    }
    Err(format!("symbol {c:?} is not in the inventory"))
}

/// Entry counts per country and per POS label.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsReport {
    pub total: usize,
    pub per_country: BTreeMap<String, usize>,
    pub per_pos: BTreeMap<String, usize>,
    pub unlabeled: usize,
    pub mean_per_country: f64,
}

pub fn stats(dict: &Dictionary) -> StatsReport {
    let mut per_country: BTreeMap<String, usize> = BTreeMap::new();
    let mut per_pos: BTreeMap<String, usize> = BTreeMap::new();
    let mut unlabeled = 0;
    for entry in &dict.entries {
        for c in &entry.countries {
            *per_country.entry(c.clone()).or_default() += 1;
        }
        if entry.pos.is_empty() {
            unlabeled += 1;
        } else {
            *per_pos.entry(entry.pos.clone()).or_default() += 1;
        }
    }
    let mean_per_country = if per_country.is_empty() {
        0.0
    } else {
        per_country.values().sum::<usize>() as f64 / per_country.len() as f64
    };
    StatsReport {
        total: dict.entries.len(),
        per_country,
        per_pos,
        unlabeled,
        mean_per_country,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn source(country: &str, words: &[&str]) -> WordlistSource {
        WordlistSource::from_lines(country, "mem", words.iter().copied()).unwrap()
    }

    #[test]
    fn dedup_after_normalization() {
        let s = source("generic", &["mesa", "Mesa", "mesa "]);
        assert_eq!(s.entries, ["mesa"]);
    }

    #[test]
    fn bad_line_is_rejected_not_fatal() {
        let s = source("generic", &["café", "caf3"]);
        assert_eq!(s.entries, ["café"]);
        assert_eq!(s.rejects.len(), 1);
        assert_eq!(s.rejects[0].kind, "IllegalCharacter");
    }

    #[test]
    fn unknown_country() {
        assert!(matches!(
            WordlistSource::from_lines("atlantis", "x", ["a"]),
            Err(LexiconError::UnknownCountry(_))
        ));
    }

    #[test]
    fn merge_with_provenance() {
        let merged = merge_sources(&[
            source("cuba", &["porque"]),
            source("puerto_rico", &["porque", "coquí"]),
        ]);
        let got: Vec<(&str, Vec<&str>)> = merged
            .entries
            .iter()
            .map(|e| {
                (
                    e.word.as_str(),
                    e.countries.iter().map(String::as_str).collect(),
                )
            })
            .collect();
        assert_eq!(
            got,
            [
                ("coquí", vec!["puerto_rico"]),
                ("porque", vec!["cuba", "puerto_rico"])
            ]
        );
        assert_eq!(merged.per_country["puerto_rico"], 2);
    }

    #[test]
    fn single_source_merge_is_identity() {
        let merged = merge_sources(&[source("chile", &["b", "a"])]);
        assert_eq!(merged.entries.len(), 2);
        assert!(merged.entries.iter().all(|e| e.countries.len() == 1));
    }

    #[test]
    fn pos_table_parsing() {
        let t = PosTable::parse("mesa\tNOUN\naarón\tPROP\n").unwrap();
        assert_eq!(t.get("mesa"), Some("NOUN"));
        assert_eq!(t.get("aarón"), Some("PROP"));
        assert_eq!(t.get("silla"), None);
        match PosTable::parse("mesa\tNOUN\nbad line\n") {
            Err(LexiconError::MalformedPosFile { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn override_parsing() {
        let inv = PhonemeInventory::default();
        let t = OverrideTable::parse("today\tt u d E j\n", &inv).unwrap();
        let p = t.get("today").unwrap();
        assert_eq!(p.len(), 5);
        assert!(p[3].stressed && p[3].symbol == 'e');
        assert_eq!(p[4].class, PhonemeClass::Semivowel);
        assert!(OverrideTable::parse("today\tt u Q\n", &inv).is_err());
        assert!(OverrideTable::parse("today t u\n", &inv).is_err());
    }
}
