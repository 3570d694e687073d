//! Grapheme-to-phoneme conversion.
//!
//! Letter tokens are mapped to the one-character-per-phoneme internal
//! alphabet by the rule table in [`PhonemeInventory`]. Two passes follow:
//! unaccented weak vowels next to another vowel become semivowels, and
//! intervocalic `b d g` become the lenited `B D G`.

mod inventory;

use std::fmt;

use thiserror::Error;

pub(crate) use inventory::stressed_form;
pub use inventory::{InventoryError, PhonemeInventory};

use crate::orthography::{detokenize, AccentInfo, LetterToken};

pub const LENITED: [char; 3] = ['B', 'D', 'G'];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum G2pError {
    #[error("no rule maps letter {token:?} at position {position}")]
    UnmappableToken { token: String, position: usize },
}

impl G2pError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::UnmappableToken { .. } => "UnmappableToken",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhonemeClass {
    Vowel,
    Semivowel,
    Consonant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Phoneme {
    pub symbol: char,
    pub class: PhonemeClass,
    pub stressed: bool,
    pub lenited: bool,
}

impl Phoneme {
    pub fn new(symbol: char, class: PhonemeClass) -> Self {
        Self {
            symbol,
            class,
            stressed: false,
            lenited: LENITED.contains(&symbol),
        }
    }

    pub fn is_vowel(&self) -> bool {
        self.class == PhonemeClass::Vowel
    }

    pub fn is_vocoid(&self) -> bool {
        matches!(self.class, PhonemeClass::Vowel | PhonemeClass::Semivowel)
    }

    pub fn is_consonant(&self) -> bool {
        self.class == PhonemeClass::Consonant
    }

    /// Symbol as written in the base annotation: stressed vowels upper-case.
    pub fn rendered(&self) -> char {
        if self.stressed && self.is_vowel() {
            stressed_form(self.symbol)
        } else {
            self.symbol
        }
    }
}

impl fmt::Display for Phoneme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rendered())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhonemeSequence {
    pub phonemes: Vec<Phoneme>,
    /// Normalized spelling of the word the sequence came from.
    pub source_word: String,
}

impl PhonemeSequence {
    /// Space-free rendering; one character per phoneme.
    pub fn compact(&self) -> String {
        self.phonemes.iter().map(Phoneme::rendered).collect()
    }

    /// Space-separated symbols without stress marking.
    pub fn symbols(&self) -> String {
        let mut out = String::with_capacity(self.phonemes.len() * 2);
        for (i, p) in self.phonemes.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push(p.symbol);
        }
        out
    }
}

/// Maps letter tokens to phonemes.
///
/// Silent `h` emits nothing; identical adjacent vowel letters collapse into
/// one phoneme; the vowel written with the accent is flagged stressed.
pub fn map_letters(
    letters: &[LetterToken],
    accent: &AccentInfo,
    inventory: &PhonemeInventory,
) -> Result<PhonemeSequence, G2pError> {
    let mut phonemes: Vec<Phoneme> = Vec::with_capacity(letters.len() + 2);
    // (token index, phoneme index) of the last single-vowel emission
    let mut last_vowel: Option<(usize, usize)> = None;

    for (index, token) in letters.iter().enumerate() {
        let output = inventory
            .lookup(letters, index)
            .ok_or_else(|| G2pError::UnmappableToken {
                token: token.surface.clone(),
                position: index,
            })?;
        let accented = accent.letter_index == Some(index);

        if let [symbol] = output {
            if token.is_vowel() {
                if let Some((prev_token, prev_phoneme)) = last_vowel {
                    if prev_token + 1 == index && phonemes[prev_phoneme].symbol == *symbol {
                        phonemes[prev_phoneme].stressed |= accented;
                        last_vowel = Some((index, prev_phoneme));
                        continue;
                    }
                }
            }
        }

        for &symbol in output {
            let class = inventory
                .class_of(symbol)
                .ok_or_else(|| G2pError::UnmappableToken {
                    token: token.surface.clone(),
                    position: index,
                })?;
            let mut phoneme = Phoneme::new(symbol, class);
            phoneme.stressed = accented && class == PhonemeClass::Vowel;
            phonemes.push(phoneme);
        }
        last_vowel = match output {
            [_] if token.is_vowel() => Some((index, phonemes.len() - 1)),
            _ => None,
        };
    }

    Ok(PhonemeSequence {
        phonemes,
        source_word: detokenize(letters),
    })
}

fn glide_for(symbol: char) -> Option<char> {
    match symbol {
        'i' => Some('j'),
        'u' => Some('w'),
        _ => None,
    }
}

/// Turns unaccented weak vowels in contact with a syllable peak into
/// semivowels.
///
/// Within each run of adjacent vowels and semivowels the peaks are the
/// strong vowels `a e o` and any accented vowel. A run of only unaccented
/// weak vowels peaks on its last vowel (`ui` in "cuidado" is `wi`). A weak
/// vowel touching a peak becomes `j`/`w`; one that touches no peak stays a
/// vowel and heads its own syllable.
pub fn classify_vowels(mut seq: PhonemeSequence) -> PhonemeSequence {
    let ph = &mut seq.phonemes;
    let mut start = 0;
    while start < ph.len() {
        if !ph[start].is_vocoid() {
            start += 1;
            continue;
        }
        let mut end = start;
        while end < ph.len() && ph[end].is_vocoid() {
            end += 1;
        }

        let mut peak: Vec<bool> = (start..end)
            .map(|i| ph[i].is_vowel() && (ph[i].stressed || glide_for(ph[i].symbol).is_none()))
            .collect();
        if !peak.contains(&true) {
            if let Some(last) = (start..end).rev().find(|&i| ph[i].is_vowel()) {
                peak[last - start] = true;
            }
        }
        for (k, p) in ph[start..end].iter_mut().enumerate() {
            if peak[k] || !p.is_vowel() {
                continue;
            }
            let touches_peak = (k > 0 && peak[k - 1]) || (k + 1 < peak.len() && peak[k + 1]);
            if let (true, Some(glide)) = (touches_peak, glide_for(p.symbol)) {
                p.symbol = glide;
                p.class = PhonemeClass::Semivowel;
            }
        }
        start = end;
    }
    seq
}

/// Rewrites `b d g` flanked on both sides by vowels or semivowels to the
/// lenited `B D G`.
pub fn apply_lenition(mut seq: PhonemeSequence) -> PhonemeSequence {
    let n = seq.phonemes.len();
    for i in 1..n.saturating_sub(1) {
        let lenited = match seq.phonemes[i].symbol {
            'b' => 'B',
            'd' => 'D',
            'g' => 'G',
            _ => continue,
        };
        if seq.phonemes[i - 1].is_vocoid() && seq.phonemes[i + 1].is_vocoid() {
            seq.phonemes[i].symbol = lenited;
            seq.phonemes[i].lenited = true;
        }
    }
    seq
}

/// Full letter-to-phoneme pass: mapping, vowel classification and
/// (optionally) lenition.
pub fn transcribe(
    letters: &[LetterToken],
    accent: &AccentInfo,
    inventory: &PhonemeInventory,
    lenition: bool,
) -> Result<PhonemeSequence, G2pError> {
    let seq = classify_vowels(map_letters(letters, accent, inventory)?);
    Ok(if lenition { apply_lenition(seq) } else { seq })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthography::OrthoWord;

    fn mapped(word: &str) -> PhonemeSequence {
        let w = OrthoWord::parse(word).unwrap();
        map_letters(&w.letters, &w.accent, &PhonemeInventory::default()).unwrap()
    }

    fn full(word: &str) -> String {
        let w = OrthoWord::parse(word).unwrap();
        transcribe(&w.letters, &w.accent, &PhonemeInventory::default(), true)
            .unwrap()
            .compact()
    }

    #[test]
    fn map_letters_examples() {
        let z = mapped("zúñiga");
        assert_eq!(z.symbols(), "T u N i g a");
        assert!(z.phonemes[1].stressed);
        assert_eq!(mapped("campeche").symbols(), "k a m p e C e");
        assert_eq!(mapped("torreón").symbols(), "t o R e o n");
    }

    #[test]
    fn identical_vowels_collapse_keeping_stress() {
        let a = mapped("aarón");
        assert_eq!(a.symbols(), "a r o n");
        assert!(a.phonemes[2].stressed);
        let c = mapped("chiíta");
        assert_eq!(c.symbols(), "C i t a");
        assert!(c.phonemes[1].stressed);
    }

    // h-i-e-l-o walked letter by letter: h silent, i -> i, e -> e, l -> l, o -> o.
    #[test]
    fn silent_h_emits_nothing() {
        assert_eq!(mapped("hielo").symbols(), "i e l o");
        assert_eq!(mapped("hacha").symbols(), "a C a");
    }

    #[test]
    fn contextual_consonants() {
        assert_eq!(mapped("cielo").symbols(), "T i e l o");
        assert_eq!(mapped("acto").symbols(), "a k t o");
        assert_eq!(mapped("frac").symbols(), "f r a k");
        assert_eq!(mapped("gente").symbols(), "x e n t e");
        assert_eq!(mapped("guerra").symbols(), "g e R a");
        assert_eq!(mapped("pingüino").symbols(), "p i n g w i n o");
        assert_eq!(mapped("queso").symbols(), "k e s o");
        assert_eq!(mapped("taxi").symbols(), "t a k s i");
        assert_eq!(mapped("rosa").symbols(), "R o s a");
        assert_eq!(mapped("honra").symbols(), "o n R a");
        assert_eq!(mapped("pero").symbols(), "p e r o");
        assert_eq!(mapped("yo").symbols(), "y o");
        assert_eq!(mapped("rey").symbols(), "R e i");
        assert_eq!(mapped("vaca").symbols(), "b a k a");
    }

    #[test]
    fn two_phoneme_tokens_add_one() {
        let w = OrthoWord::parse("exhibir").unwrap();
        let seq = mapped("exhibir");
        let silent = w.letters.iter().filter(|t| t.is_silent).count();
        assert_eq!(seq.compact().chars().count(), w.letters.len() - silent + 1);
    }

    #[test]
    fn semivowel_classification() {
        assert_eq!(full("guasave"), "gwasaBe");
        assert_eq!(full("zúñiga"), "TUNiGa");
        assert_eq!(full("buey"), "bwej");
        assert_eq!(full("cuidado"), "kwiDaDo");
        assert_eq!(full("ciudad"), "TjuDad");
        assert_eq!(full("rey"), "Rej");
    }

    #[test]
    fn accented_weak_vowel_keeps_hiatus() {
        let seq = classify_vowels(mapped("día"));
        assert_eq!(seq.symbols(), "d i a");
        assert_eq!(seq.phonemes[1].class, PhonemeClass::Vowel);
        assert!(seq.phonemes[1].stressed);
    }

    #[test]
    fn lenition_is_intervocalic_only() {
        assert_eq!(full("abeja"), "aBexa");
        assert_eq!(full("vaca"), "baka");
        assert_eq!(full("banda"), "banda");
        let seq = apply_lenition(classify_vowels(mapped("abeja")));
        assert!(seq.phonemes[1].lenited);
    }

    #[test]
    fn classification_and_lenition_are_idempotent() {
        for word in ["cuidado", "buey", "aiuda", "iuiu", "guasave", "abogado"] {
            let w = OrthoWord::parse(word).unwrap();
            let once = classify_vowels(
                map_letters(&w.letters, &w.accent, &PhonemeInventory::default()).unwrap(),
            );
            assert_eq!(classify_vowels(once.clone()), once, "{word}");
            let len = apply_lenition(once);
            assert_eq!(apply_lenition(len.clone()), len, "{word}");
        }
    }

    #[test]
    fn unmappable_token_reports_position() {
        let inv = PhonemeInventory::parse("[symbols]\na vowel\n[rules]\na * a\n").unwrap();
        let w = OrthoWord::parse("ab").unwrap();
        assert_eq!(
            map_letters(&w.letters, &w.accent, &inv).unwrap_err(),
            G2pError::UnmappableToken {
                token: "b".into(),
                position: 1
            }
        );
    }
}
