//! Orthographic normalization and letter tokenization.
//!
//! A raw word is trimmed, NFC-composed and lowercased, then checked against
//! the accepted alphabet (`a`-`z`, `á é í ó ú ü ñ` and the hyphen). The
//! normalized text is split into letter tokens: single letters, the digraphs
//! `ch`/`ll`/`rr`, and the contextual units `qu`/`gu` (before `e`/`i`) and
//! `gü`.

use std::fmt;

use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

pub const ACCENTED_VOWELS: [char; 5] = ['á', 'é', 'í', 'ó', 'ú'];
pub const PLAIN_VOWELS: [char; 5] = ['a', 'e', 'i', 'o', 'u'];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrthographyError {
    #[error("empty word")]
    EmptyWord,
    #[error("illegal character {character:?} at index {index}")]
    IllegalCharacter { character: char, index: usize },
    #[error("more than one written accent (letters {first} and {second})")]
    MultipleAccents { first: usize, second: usize },
}

impl OrthographyError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::EmptyWord => "EmptyWord",
            Self::IllegalCharacter { .. } => "IllegalCharacter",
            Self::MultipleAccents { .. } => "MultipleAccents",
        }
    }
}

/// One letter or one spelling unit of a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterToken {
    pub surface: String,
    pub is_silent: bool,
    /// Index of this token in the word's token sequence.
    pub position: usize,
}

impl LetterToken {
    fn new(surface: &str, position: usize) -> Self {
        Self {
            surface: surface.to_string(),
            is_silent: surface == "h",
            position,
        }
    }

    pub fn is_vowel(&self) -> bool {
        is_vowel_letter(&self.surface)
    }

    pub fn is_accented(&self) -> bool {
        let mut chars = self.surface.chars();
        matches!((chars.next(), chars.next()), (Some(c), None) if ACCENTED_VOWELS.contains(&c))
    }

    pub fn is_hyphen(&self) -> bool {
        self.surface == "-"
    }
}

impl fmt::Display for LetterToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.surface)
    }
}

/// `a e i o u` with or without the acute accent.
pub fn is_vowel_letter(surface: &str) -> bool {
    let mut chars = surface.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => PLAIN_VOWELS.contains(&c) || ACCENTED_VOWELS.contains(&c),
        _ => false,
    }
}

/// Location of the written acute accent, if any.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AccentInfo {
    pub letter_index: Option<usize>,
}

impl AccentInfo {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn at(index: usize) -> Self {
        Self {
            letter_index: Some(index),
        }
    }

    pub fn has_accent(&self) -> bool {
        self.letter_index.is_some()
    }
}

/// A validated, normalized orthographic word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoWord {
    pub raw: String,
    pub normalized: String,
    pub letters: Vec<LetterToken>,
    pub accent: AccentInfo,
}

impl OrthoWord {
    /// Normalize, tokenize and locate the accent in one step.
    pub fn parse(raw: &str) -> Result<Self, OrthographyError> {
        let mut word = normalize(raw)?;
        word.letters = tokenize_letters(&word);
        word.accent = find_accent(&word)?;
        Ok(word)
    }

    /// Splits a hyphenated word into independently processed parts. A word
    /// without hyphens yields itself.
    pub fn parts(&self) -> Result<Vec<OrthoWord>, OrthographyError> {
        if !self.normalized.contains('-') {
            let mut whole = self.clone();
            if whole.letters.is_empty() {
                whole.letters = tokenize_letters(&whole);
                whole.accent = find_accent(&whole)?;
            }
            return Ok(vec![whole]);
        }
        self.normalized
            .split('-')
            .map(|part| {
                let mut word = OrthoWord {
                    raw: part.to_string(),
                    normalized: part.to_string(),
                    letters: Vec::new(),
                    accent: AccentInfo::none(),
                };
                word.letters = tokenize_letters(&word);
                word.accent = find_accent(&word)?;
                Ok(word)
            })
            .collect()
    }

    pub fn last_letter(&self) -> Option<char> {
        self.normalized.chars().last()
    }
}

/// Trims, composes and lowercases `raw`, then validates the alphabet.
///
/// The returned word has no letter tokens yet.
pub fn normalize(raw: &str) -> Result<OrthoWord, OrthographyError> {
    let trimmed = raw.trim();
    if trimmed.is_empty() {
        return Err(OrthographyError::EmptyWord);
    }
    let normalized: String = trimmed.nfc().flat_map(char::to_lowercase).collect();
    let chars: Vec<char> = normalized.chars().collect();
    for (index, &c) in chars.iter().enumerate() {
        let ok = match c {
            'a'..='z' | 'á' | 'é' | 'í' | 'ó' | 'ú' | 'ñ' => true,
            'ü' => index > 0 && chars[index - 1] == 'g',
            '-' => index > 0 && index + 1 < chars.len() && chars[index - 1] != '-',
            _ => false,
        };
        if !ok {
            return Err(OrthographyError::IllegalCharacter {
                character: c,
                index,
            });
        }
    }
    Ok(OrthoWord {
        raw: raw.to_string(),
        normalized,
        letters: Vec::new(),
        accent: AccentInfo::none(),
    })
}

fn is_front_vowel(c: Option<&char>) -> bool {
    matches!(c, Some('e' | 'i' | 'é' | 'í'))
}

/// Greedy left-to-right tokenization of a normalized word.
pub fn tokenize_letters(word: &OrthoWord) -> Vec<LetterToken> {
    let chars: Vec<char> = word.normalized.chars().collect();
    let mut tokens = Vec::with_capacity(chars.len());
    let mut i = 0;
    while i < chars.len() {
        let next = chars.get(i + 1);
        let pair = match (chars[i], next) {
            ('c', Some('h')) => Some("ch"),
            ('l', Some('l')) => Some("ll"),
            ('r', Some('r')) => Some("rr"),
            ('g', Some('ü')) => Some("gü"),
            ('q', Some('u')) if is_front_vowel(chars.get(i + 2)) => Some("qu"),
            ('g', Some('u')) if is_front_vowel(chars.get(i + 2)) => Some("gu"),
            _ => None,
        };
        let position = tokens.len();
        match pair {
            Some(surface) => {
                tokens.push(LetterToken::new(surface, position));
                i += 2;
            }
            None => {
                let mut buf = [0u8; 4];
                tokens.push(LetterToken::new(chars[i].encode_utf8(&mut buf), position));
                i += 1;
            }
        }
    }
    tokens
}

/// Concatenates token surfaces back into text.
pub fn detokenize(letters: &[LetterToken]) -> String {
    letters.iter().map(|t| t.surface.as_str()).collect()
}

/// Finds the unique accented vowel among the word's letter tokens.
pub fn find_accent(word: &OrthoWord) -> Result<AccentInfo, OrthographyError> {
    let mut found: Option<usize> = None;
    for token in word.letters.iter().filter(|t| t.is_accented()) {
        if let Some(first) = found {
            return Err(OrthographyError::MultipleAccents {
                first,
                second: token.position,
            });
        }
        found = Some(token.position);
    }
    Ok(AccentInfo {
        letter_index: found,
    })
}
