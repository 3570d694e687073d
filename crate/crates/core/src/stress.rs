//! Primary stress assignment and the aguda / grave / esdrújula split.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::orthography::{AccentInfo, ACCENTED_VOWELS, PLAIN_VOWELS};
use crate::syllable::SyllabifiedWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StressError {
    #[error("the accented letter did not map to a syllable nucleus")]
    AccentOutsideNucleus,
}

impl StressError {
    pub fn kind(&self) -> &'static str {
        "AccentOutsideNucleus"
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StressCategory {
    /// Final syllable.
    Aguda,
    /// Penultimate syllable.
    Grave,
    /// Antepenultimate syllable, or earlier.
    Esdrujula,
}

impl fmt::Display for StressCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Aguda => "Aguda",
            Self::Grave => "Grave",
            Self::Esdrujula => "Esdrujula",
        })
    }
}

impl FromStr for StressCategory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "aguda" => Ok(Self::Aguda),
            "grave" | "llana" => Ok(Self::Grave),
            "esdrujula" | "esdrújula" => Ok(Self::Esdrujula),
            _ => Err(format!("unknown stress category {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StressedWord {
    pub syllabified: SyllabifiedWord,
    /// Stressed syllable, counted from the start of the word.
    pub stressed_index: usize,
    pub category: StressCategory,
}

impl StressedWord {
    pub fn syllable_count(&self) -> usize {
        self.syllabified.syllables.len()
    }
}

/// True when the unaccented default rule puts stress on the penultimate
/// syllable: the word ends in `n`, `s` or a vowel letter.
pub fn ends_in_n_s_or_vowel(spelling: &str) -> bool {
    spelling.chars().last().is_some_and(|c| {
        c == 'n' || c == 's' || PLAIN_VOWELS.contains(&c) || ACCENTED_VOWELS.contains(&c)
    })
}

/// Marks exactly one syllable as stressed.
///
/// A written accent (or a stressed vowel already present, as in explicit
/// pronunciation overrides) decides directly. Otherwise words ending in `n`,
/// `s` or a vowel stress the penultimate syllable and all others the last.
pub fn assign_stress(
    mut word: SyllabifiedWord,
    accent: &AccentInfo,
) -> Result<StressedWord, StressError> {
    let marked: Vec<usize> = word
        .syllables
        .iter()
        .enumerate()
        .filter(|(_, s)| s.phonemes().any(|p| p.stressed))
        .map(|(i, _)| i)
        .collect();

    let count = word.syllables.len();
    let stressed_index = match marked[..] {
        [i] => {
            if !word.syllables[i].is_stressed() {
                return Err(StressError::AccentOutsideNucleus);
            }
            i
        }
        [] if accent.has_accent() => return Err(StressError::AccentOutsideNucleus),
        [] if count >= 2 && ends_in_n_s_or_vowel(&word.source_word) => count - 2,
        [] => count.saturating_sub(1),
        _ => return Err(StressError::AccentOutsideNucleus),
    };

    for (i, syllable) in word.syllables.iter_mut().enumerate() {
        for p in syllable.phonemes_mut() {
            p.stressed = false;
        }
        if i == stressed_index {
            if let Some(peak) = syllable.peak_mut() {
                peak.stressed = true;
            }
        }
    }

    let category = position_category(stressed_index, count);
    Ok(StressedWord {
        syllabified: word,
        stressed_index,
        category,
    })
}

fn position_category(stressed_index: usize, count: usize) -> StressCategory {
    match count - 1 - stressed_index {
        0 => StressCategory::Aguda,
        1 => StressCategory::Grave,
        _ => StressCategory::Esdrujula,
    }
}

/// Classifies by the stressed syllable's distance from the end.
pub fn classify_stress(word: &StressedWord) -> StressCategory {
    position_category(word.stressed_index, word.syllable_count())
}
