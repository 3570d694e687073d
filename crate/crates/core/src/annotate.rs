//! Rendering of processed words into dictionary annotations: the base
//! symbol string, CV phonotactics, IPA, and per-phoneme position slots.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::g2p::{stressed_form, Phoneme, PhonemeClass};
use crate::stress::StressedWord;
use crate::syllable::Syllable;

const DEFAULT_IPA: &str = include_str!("../data/ipa.txt");

pub const STRESS_MARK: char = 'ˈ';

#[derive(Debug, Error)]
pub enum AnnotateError {
    #[error("no IPA equivalent for symbol {0:?}")]
    MissingIpaMapping(char),
    #[error("malformed annotation: {0}")]
    Malformed(String),
    #[error("cannot read IPA table {path}: {source}")]
    Unreadable {
        path: String,
        source: std::io::Error,
    },
    #[error("IPA table line {line}: {message}")]
    Syntax { line: usize, message: String },
}

impl AnnotateError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::MissingIpaMapping(_) => "MissingIPAMapping",
            Self::Malformed(_) => "MalformedAnnotation",
            Self::Unreadable { .. } | Self::Syntax { .. } => "IpaTable",
        }
    }
}

/// Internal symbol to IPA string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpaTable {
    map: BTreeMap<char, String>,
}

impl Default for IpaTable {
    fn default() -> Self {
        Self::parse(DEFAULT_IPA).expect("bundled IPA table is valid")
    }
}

impl IpaTable {
    pub fn parse(text: &str) -> Result<Self, AnnotateError> {
        let mut map = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut cols = line.split_whitespace();
            let (Some(sym), Some(ipa), None) = (cols.next(), cols.next(), cols.next()) else {
                return Err(AnnotateError::Syntax {
                    line: idx + 1,
                    message: format!("expected `symbol<TAB>ipa`, got {line:?}"),
                });
            };
            let mut chars = sym.chars();
            let (Some(symbol), None) = (chars.next(), chars.next()) else {
                return Err(AnnotateError::Syntax {
                    line: idx + 1,
                    message: format!("symbol {sym:?} is not one character"),
                });
            };
            map.insert(symbol, ipa.to_string());
        }
        Ok(Self { map })
    }

    /// Default table with entries from `path` layered on top.
    pub fn load_overrides(path: &Path) -> Result<Self, AnnotateError> {
        let text = fs::read_to_string(path).map_err(|source| AnnotateError::Unreadable {
            path: path.display().to_string(),
            source,
        })?;
        let mut table = Self::default();
        table.map.extend(Self::parse(&text)?.map);
        Ok(table)
    }

    pub fn get(&self, symbol: char) -> Result<&str, AnnotateError> {
        self.map
            .get(&symbol)
            .map(String::as_str)
            .ok_or(AnnotateError::MissingIpaMapping(symbol))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Slot {
    Onset1,
    Onset2,
    PreNuclearGlide,
    Nucleus,
    PostNuclearGlide,
    Coda1,
    Coda2,
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionTag {
    pub phoneme_index: usize,
    pub syllable_index: usize,
    pub slot: Slot,
    pub symbol: char,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotationBundle {
    pub base: String,
    pub phonotactics: String,
    pub ipa: String,
    pub ipa_flat: String,
    pub positions: Vec<PositionTag>,
}

impl AnnotationBundle {
    /// All phonemes occupying `slot`, e.g. every second onset consonant.
    pub fn query(&self, slot: Slot) -> impl Iterator<Item = &PositionTag> + '_ {
        self.positions.iter().filter(move |t| t.slot == slot)
    }
}

fn join_syllables<'a>(
    syllables: impl Iterator<Item = &'a Syllable>,
    sep: &str,
    mut render: impl FnMut(&Syllable) -> Result<String, AnnotateError>,
) -> Result<String, AnnotateError> {
    let mut out = String::new();
    for (i, s) in syllables.enumerate() {
        if i > 0 {
            out.push_str(sep);
        }
        out.push_str(&render(s)?);
    }
    Ok(out)
}

pub fn base_of(syllables: &[Syllable]) -> String {
    syllables
        .iter()
        .flat_map(Syllable::phonemes)
        .map(|p| p.rendered().to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn phonotactics_of(syllables: &[Syllable]) -> String {
    join_syllables(syllables.iter(), " ", |s| {
        Ok(s.phonemes()
            .map(|p| if p.is_vowel() { 'V' } else { 'C' })
            .collect())
    })
    .expect("infallible")
}

pub fn ipa_of(
    syllables: &[Syllable],
    table: &IpaTable,
    divided: bool,
    stress_mark: bool,
) -> Result<String, AnnotateError> {
    join_syllables(syllables.iter(), if divided { " " } else { "" }, |s| {
        let mut out = String::new();
        for p in s.phonemes() {
            if stress_mark && p.stressed && p.is_vowel() {
                out.push(STRESS_MARK);
            }
            out.push_str(table.get(p.symbol)?);
        }
        Ok(out)
    })
}

pub fn positions_of(syllables: &[Syllable]) -> Vec<PositionTag> {
    let mut tags = Vec::new();
    let mut phoneme_index = 0;
    for (syllable_index, s) in syllables.iter().enumerate() {
        let mut push = |p: &Phoneme, slot: Slot| {
            tags.push(PositionTag {
                phoneme_index,
                syllable_index,
                slot,
                symbol: p.rendered(),
            });
            phoneme_index += 1;
        };
        for (i, p) in s.onset.iter().enumerate() {
            push(p, if i == 0 { Slot::Onset1 } else { Slot::Onset2 });
        }
        let mut seen_peak = false;
        for p in &s.nucleus {
            let slot = if p.is_vowel() {
                seen_peak = true;
                Slot::Nucleus
            } else if seen_peak {
                Slot::PostNuclearGlide
            } else {
                Slot::PreNuclearGlide
            };
            push(p, slot);
        }
        for (i, p) in s.coda.iter().enumerate() {
            push(p, if i == 0 { Slot::Coda1 } else { Slot::Coda2 });
        }
    }
    tags
}

pub fn render_base(word: &StressedWord) -> String {
    base_of(&word.syllabified.syllables)
}

pub fn render_phonotactics(word: &StressedWord) -> String {
    phonotactics_of(&word.syllabified.syllables)
}

pub fn render_ipa(
    word: &StressedWord,
    table: &IpaTable,
    divided: bool,
    stress_mark: bool,
) -> Result<String, AnnotateError> {
    ipa_of(&word.syllabified.syllables, table, divided, stress_mark)
}

pub fn index_positions(word: &StressedWord) -> Vec<PositionTag> {
    positions_of(&word.syllabified.syllables)
}

/// Builds the full bundle for a word made of one or more parts (hyphenated
/// spellings contribute one part each). IPA carries no stress marks.
pub fn annotate(
    parts: &[StressedWord],
    table: &IpaTable,
) -> Result<AnnotationBundle, AnnotateError> {
    let syllables: Vec<Syllable> = parts
        .iter()
        .flat_map(|w| w.syllabified.syllables.iter().cloned())
        .collect();
    annotate_syllables(&syllables, table)
}

pub fn annotate_syllables(
    syllables: &[Syllable],
    table: &IpaTable,
) -> Result<AnnotationBundle, AnnotateError> {
    Ok(AnnotationBundle {
        base: base_of(syllables),
        phonotactics: phonotactics_of(syllables),
        ipa: ipa_of(syllables, table, true, false)?,
        ipa_flat: ipa_of(syllables, table, false, false)?,
        positions: positions_of(syllables),
    })
}

fn glide_symbol(symbol: char) -> bool {
    matches!(symbol, 'j' | 'w' | 'i' | 'u')
}

/// Rebuilds syllable structure from a base string and its phonotactics.
///
/// `V` positions are vowels (upper case = stressed); `C` positions spelled
/// `j w i u` are glides; everything else is a consonant.
pub fn parse_annotation(base: &str, phonotactics: &str) -> Result<Vec<Syllable>, AnnotateError> {
    let mut symbols = Vec::new();
    for tok in base.split(' ') {
        let mut chars = tok.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => symbols.push(c),
            _ => {
                return Err(AnnotateError::Malformed(format!(
                    "base token {tok:?} is not a single symbol"
                )))
            }
        }
    }
    let groups: Vec<&str> = phonotactics.split(' ').collect();
    let total: usize = groups.iter().map(|g| g.chars().count()).sum();
    if total != symbols.len() {
        return Err(AnnotateError::Malformed(format!(
            "{} base symbols but {} phonotactic positions",
            symbols.len(),
            total
        )));
    }

    let mut iter = symbols.into_iter();
    let mut syllables = Vec::with_capacity(groups.len());
    for group in groups {
        let mut phonemes = Vec::with_capacity(group.len());
        for cv in group.chars() {
            let sym = iter.next().expect("counts checked");
            let phoneme = match cv {
                'V' => {
                    let lower: char = sym.to_lowercase().next().unwrap_or(sym);
                    let stressed = lower != sym && stressed_form(lower) == sym;
                    let mut p =
                        Phoneme::new(if stressed { lower } else { sym }, PhonemeClass::Vowel);
                    p.stressed = stressed;
                    p
                }
                'C' if glide_symbol(sym) => Phoneme::new(sym, PhonemeClass::Semivowel),
                'C' => Phoneme::new(sym, PhonemeClass::Consonant),
                other => {
                    return Err(AnnotateError::Malformed(format!(
                        "unexpected phonotactic symbol {other:?}"
                    )))
                }
            };
            phonemes.push(phoneme);
        }
        let peak = phonemes
            .iter()
            .position(Phoneme::is_vowel)
            .filter(|_| phonemes.iter().filter(|p| p.is_vowel()).count() == 1)
            .ok_or_else(|| {
                AnnotateError::Malformed(format!("syllable {group:?} needs exactly one V"))
            })?;
        let pre = usize::from(peak > 0 && !phonemes[peak - 1].is_consonant());
        let post = usize::from(phonemes.get(peak + 1).is_some_and(|p| !p.is_consonant()));
        syllables.push(Syllable {
            onset: phonemes[..peak - pre].to_vec(),
            nucleus: phonemes[peak - pre..=peak + post].to_vec(),
            coda: phonemes[peak + post + 1..].to_vec(),
        });
    }
    Ok(syllables)
}
