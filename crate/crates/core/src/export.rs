//! Dictionary serialization: the five-column TSV, a plain aligner
//! dictionary, three aligner-specific emulations, and TSV re-import.
//!
//! All output is UTF-8 without BOM, one LF per row.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::annotate::{parse_annotation, positions_of, AnnotationBundle, IpaTable, STRESS_MARK};
use crate::dialect::DialectConfig;
use crate::g2p::Phoneme;
use crate::lexicon::{BuildMetadata, Dictionary, DictionaryEntry, GENERIC};

pub const TSV_HEADER: &str = "Entry\tPOS\tBase\tPhonotactics\tIPA";

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("{format} has no translation for symbol {symbol:?} (in {word:?})")]
    UntranslatableSymbol {
        format: ExportFormat,
        symbol: char,
        word: String,
    },
    #[error("I/O on {path}: {source}")]
    IoFailure {
        path: String,
        source: std::io::Error,
    },
    #[error("header mismatch: expected {TSV_HEADER:?}, found {found:?}")]
    HeaderMismatch { found: String },
    #[error("line {line}: {message}")]
    MalformedRow { line: usize, message: String },
}

impl ExportError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::UntranslatableSymbol { .. } => "UntranslatableSymbol",
            Self::IoFailure { .. } => "IoFailure",
            Self::HeaderMismatch { .. } => "HeaderMismatch",
            Self::MalformedRow { .. } => "MalformedRow",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExportFormat {
    EspadaTsv,
    AlignerDict,
    TalnGpa,
    FaseAlign,
    TalnIpa,
}

impl ExportFormat {
    pub const ALL: [ExportFormat; 5] = [
        Self::EspadaTsv,
        Self::AlignerDict,
        Self::TalnGpa,
        Self::FaseAlign,
        Self::TalnIpa,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Self::EspadaTsv => "espada-tsv",
            Self::AlignerDict => "aligner-dict",
            Self::TalnGpa => "taln-gpa",
            Self::FaseAlign => "fase-align",
            Self::TalnIpa => "taln-ipa",
        }
    }

    /// File name suffix used by the command-line tool.
    pub fn extension(self) -> &'static str {
        match self {
            Self::EspadaTsv => ".tsv",
            Self::AlignerDict => ".dict",
            Self::TalnGpa => ".gpa.dict",
            Self::FaseAlign => ".fase.dict",
            Self::TalnIpa => ".ipa.dict",
        }
    }
}

impl fmt::Display for ExportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        Self::ALL
            .into_iter()
            .find(|f| f.keyword() == norm)
            .ok_or_else(|| {
                let names: Vec<&str> = Self::ALL.iter().map(|f| f.keyword()).collect();
                format!(
                    "unknown format {s:?}; expected one of: {}",
                    names.join(", ")
                )
            })
    }
}

/// Internal symbol to target phone token(s). Stress is never carried.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolTranslation {
    map: BTreeMap<char, String>,
}

const BASE_VOWELS: [char; 5] = ['a', 'e', 'i', 'o', 'u'];

impl SymbolTranslation {
    fn with_vowels(pairs: &[(char, &str)]) -> Self {
        let mut map: BTreeMap<char, String> =
            BASE_VOWELS.iter().map(|&v| (v, v.to_string())).collect();
        map.extend(pairs.iter().map(|&(k, v)| (k, v.to_string())));
        Self { map }
    }

    /// Barcelona gpA-style phones: lenited `V D G`, tap `rf`, affricate `tS`.
    pub fn taln_gpa() -> Self {
        Self::with_vowels(&[
            ('p', "p"),
            ('t', "t"),
            ('k', "k"),
            ('b', "b"),
            ('d', "d"),
            ('g', "g"),
            ('B', "V"),
            ('D', "D"),
            ('G', "G"),
            ('f', "f"),
            ('s', "s"),
            ('T', "T"),
            ('x', "X"),
            ('h', "h"),
            ('C', "tS"),
            ('m', "m"),
            ('n', "n"),
            ('N', "n~"),
            ('l', "l"),
            ('L', "L"),
            ('y', "y"),
            ('r', "rf"),
            ('R', "r"),
            ('j', "j"),
            ('w', "w"),
        ])
    }

    /// Latin-American aligner phones: no lenition, no glides, seseo.
    pub fn fase_align() -> Self {
        Self::with_vowels(&[
            ('p', "p"),
            ('t', "t"),
            ('k', "k"),
            ('b', "b"),
            ('d', "d"),
            ('g', "g"),
            ('B', "b"),
            ('D', "d"),
            ('G', "g"),
            ('f', "f"),
            ('s', "s"),
            ('T', "s"),
            ('x', "h"),
            ('h', "h"),
            ('C', "CH"),
            ('m', "m"),
            ('n', "n"),
            ('N', "N Y"),
            ('l', "l"),
            ('L', "y"),
            ('y', "y"),
            ('r', "r"),
            ('R', "R"),
            ('j', "i"),
            ('w', "u"),
        ])
    }

    pub fn for_format(format: ExportFormat) -> Option<Self> {
        match format {
            ExportFormat::TalnGpa => Some(Self::taln_gpa()),
            ExportFormat::FaseAlign => Some(Self::fase_align()),
            _ => None,
        }
    }

    pub fn get(&self, symbol: char) -> Option<&str> {
        self.map.get(&symbol).map(String::as_str)
    }
}

fn phonemes(entry: &DictionaryEntry) -> impl Iterator<Item = &Phoneme> + '_ {
    entry.syllables.iter().flat_map(|s| s.phonemes())
}

fn translate(
    entry: &DictionaryEntry,
    table: &SymbolTranslation,
    format: ExportFormat,
) -> Result<String, ExportError> {
    let mut tokens = Vec::new();
    for p in phonemes(entry) {
        tokens.push(
            table
                .get(p.symbol)
                .ok_or_else(|| ExportError::UntranslatableSymbol {
                    format,
                    symbol: p.symbol,
                    word: entry.entry.clone(),
                })?,
        );
    }
    Ok(tokens.join(" "))
}

fn ipa_segments(entry: &DictionaryEntry, ipa: &IpaTable) -> Result<String, ExportError> {
    let mut tokens = Vec::new();
    for p in phonemes(entry) {
        let seg = ipa
            .get(p.symbol)
            .map_err(|_| ExportError::UntranslatableSymbol {
                format: ExportFormat::TalnIpa,
                symbol: p.symbol,
                word: entry.entry.clone(),
            })?;
        tokens.push(if p.stressed && p.is_vowel() {
            format!("{STRESS_MARK}{seg}")
        } else {
            seg.to_string()
        });
    }
    Ok(tokens.join(" "))
}

/// The phone string a format writes for one entry (no word column).
pub fn render_entry(
    entry: &DictionaryEntry,
    format: ExportFormat,
    ipa: &IpaTable,
) -> Result<String, ExportError> {
    match format {
        ExportFormat::EspadaTsv => Ok(tsv_row(entry)),
        ExportFormat::AlignerDict => Ok(entry.bundle.base.clone()),
        ExportFormat::TalnGpa | ExportFormat::FaseAlign => translate(
            entry,
            &SymbolTranslation::for_format(format).expect("translated format"),
            format,
        ),
        ExportFormat::TalnIpa => ipa_segments(entry, ipa),
    }
}

fn tsv_row(e: &DictionaryEntry) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}",
        e.entry, e.pos, e.bundle.base, e.bundle.phonotactics, e.bundle.ipa
    )
}

/// Serializes a whole dictionary to a string.
pub fn render(
    dict: &Dictionary,
    format: ExportFormat,
    ipa: &IpaTable,
) -> Result<String, ExportError> {
    let mut out = String::new();
    if format == ExportFormat::EspadaTsv {
        out.push_str(TSV_HEADER);
        out.push('\n');
    }
    for entry in &dict.entries {
        if format != ExportFormat::EspadaTsv {
            out.push_str(&entry.entry);
            out.push('\t');
        }
        out.push_str(&render_entry(entry, format, ipa)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn export_with(
    dict: &Dictionary,
    format: ExportFormat,
    out: &Path,
    ipa: &IpaTable,
) -> Result<(), ExportError> {
    let text = render(dict, format, ipa)?;
    fs::write(out, text).map_err(|source| ExportError::IoFailure {
        path: out.display().to_string(),
        source,
    })
}

pub fn export(dict: &Dictionary, format: ExportFormat, out: &Path) -> Result<(), ExportError> {
    export_with(dict, format, out, &IpaTable::default())
}

/// Parses TSV text. Annotations are trusted as written.
pub fn parse_espada_tsv(text: &str) -> Result<Dictionary, ExportError> {
    let mut lines = text.split_terminator('\n');
    let header = lines.next().unwrap_or("");
    if header != TSV_HEADER {
        return Err(ExportError::HeaderMismatch {
            found: header.to_string(),
        });
    }
    let mut entries = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line_no = idx + 2;
        let malformed = |message: String| ExportError::MalformedRow {
            line: line_no,
            message,
        };
        let cols: Vec<&str> = line.split('\t').collect();
        let [entry, pos, base, phonotactics, ipa] = cols[..] else {
            return Err(malformed(format!(
                "expected 5 columns, found {}",
                cols.len()
            )));
        };
        if entry.is_empty() {
            return Err(malformed("empty entry".into()));
        }
        let syllables =
            parse_annotation(base, phonotactics).map_err(|e| malformed(e.to_string()))?;
        entries.push(DictionaryEntry {
            entry: entry.to_string(),
            pos: pos.to_string(),
            bundle: AnnotationBundle {
                base: base.to_string(),
                phonotactics: phonotactics.to_string(),
                ipa: ipa.to_string(),
                ipa_flat: ipa.replace(' ', ""),
                positions: positions_of(&syllables),
            },
            syllables,
            countries: BTreeSet::from([GENERIC.to_string()]),
            overridden: false,
        });
    }
    Ok(Dictionary {
        entries,
        config: DialectConfig::default(),
        metadata: BuildMetadata::default(),
        errors: Vec::new(),
    })
}

pub fn import_espada_tsv(path: &Path) -> Result<Dictionary, ExportError> {
    let text = fs::read_to_string(path).map_err(|source| ExportError::IoFailure {
        path: path.display().to_string(),
        source,
    })?;
    parse_espada_tsv(&text)
}
