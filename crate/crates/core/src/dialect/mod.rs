//! Dialect feature switchboard and the ordered rewrite pipeline.
//!
//! The base transcription keeps `T` (/θ/) and `x` (/x/) as pan-dialect
//! placeholders, so a single g2p pass serves every configuration. Rewrites
//! run in a fixed order:
//!
//! 1. seseo: `T` -> `s`
//! 2. velar: `x` -> `h`
//! 3. yeísmo: `L` -> `y`
//! 4. coda `s` -> `h`
//! 5. coda tap `r` -> `l`
//! 6. lenition off: `B D G` -> `b d g`
//! 7. semivowels off: `j w` relabelled `i u` (syllables untouched)
//! 8. stress marking off: all stress flags cleared
//!
//! Theta runs before debuccalization so a seseo `s` in coda also weakens.

mod preset;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use preset::{resolve_preset, DialectPreset, PresetError, PresetTable};

use crate::g2p::{Phoneme, PhonemeClass};
use crate::stress::StressedWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LlRealization {
    PalatalLateral,
    PalatalFricative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theta {
    Distincion,
    Seseo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VelarFricative {
    X,
    H,
}

macro_rules! keyword_enum {
    ($ty:ident { $($variant:ident => $kw:literal),+ $(,)? }) => {
        impl $ty {
            pub fn keyword(self) -> &'static str {
                match self { $(Self::$variant => $kw),+ }
            }
        }

        impl FromStr for $ty {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                let norm = s.trim().to_ascii_lowercase().replace('-', "_");
                match norm.as_str() {
                    $($kw => Ok(Self::$variant),)+
                    _ => Err(format!(
                        "invalid value {s:?}; expected one of: {}",
                        [$($kw),+].join(", ")
                    )),
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.keyword())
            }
        }
    };
}

keyword_enum!(LlRealization { PalatalLateral => "palatal_lateral", PalatalFricative => "palatal_fricative" });
keyword_enum!(Theta { Distincion => "distincion", Seseo => "seseo" });
keyword_enum!(VelarFricative { X => "x", H => "h" });

/// The eight dialect features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DialectConfig {
    pub mark_stress: bool,
    pub lenition: bool,
    pub semivowels: bool,
    pub ll_realization: LlRealization,
    pub theta: Theta,
    pub velar_fricative: VelarFricative,
    pub s_debuccalization: bool,
    pub lambdacism: bool,
}

impl Default for DialectConfig {
    fn default() -> Self {
        Self {
            mark_stress: true,
            lenition: true,
            semivowels: true,
            ll_realization: LlRealization::PalatalLateral,
            theta: Theta::Distincion,
            velar_fricative: VelarFricative::X,
            s_debuccalization: false,
            lambdacism: false,
        }
    }
}

impl DialectConfig {
    pub const FIELDS: [&'static str; 8] = [
        "mark_stress",
        "lenition",
        "semivowels",
        "ll_realization",
        "theta",
        "velar_fricative",
        "s_debuccalization",
        "lambdacism",
    ];

    /// `(field, value)` pairs in declaration order.
    pub fn entries(&self) -> [(&'static str, String); 8] {
        [
            ("mark_stress", self.mark_stress.to_string()),
            ("lenition", self.lenition.to_string()),
            ("semivowels", self.semivowels.to_string()),
            ("ll_realization", self.ll_realization.to_string()),
            ("theta", self.theta.to_string()),
            ("velar_fricative", self.velar_fricative.to_string()),
            ("s_debuccalization", self.s_debuccalization.to_string()),
            ("lambdacism", self.lambdacism.to_string()),
        ]
    }

    /// Names of the fields on which `self` and `other` disagree.
    pub fn differing_fields(&self, other: &DialectConfig) -> Vec<&'static str> {
        self.entries()
            .iter()
            .zip(other.entries().iter())
            .filter(|(a, b)| a.1 != b.1)
            .map(|(a, _)| a.0)
            .collect()
    }

    /// Sets one field from its textual form.
    pub fn set(&mut self, field: &str, value: &str) -> Result<(), String> {
        let flag = || -> Result<bool, String> {
            match value.trim().to_ascii_lowercase().as_str() {
                "true" | "on" | "yes" | "1" => Ok(true),
                "false" | "off" | "no" | "0" => Ok(false),
                other => Err(format!("invalid flag value {other:?} for {field}")),
            }
        };
        match field {
            "mark_stress" => self.mark_stress = flag()?,
            "lenition" => self.lenition = flag()?,
            "semivowels" => self.semivowels = flag()?,
            "ll_realization" => self.ll_realization = value.parse()?,
            "theta" => self.theta = value.parse()?,
            "velar_fricative" => self.velar_fricative = value.parse()?,
            "s_debuccalization" => self.s_debuccalization = flag()?,
            "lambdacism" => self.lambdacism = flag()?,
            other => return Err(format!("unknown dialect field {other:?}")),
        }
        Ok(())
    }
}

fn rewrite_all(word: &mut StressedWord, mut f: impl FnMut(&mut Phoneme)) {
    for syllable in &mut word.syllabified.syllables {
        syllable.phonemes_mut().for_each(&mut f);
    }
}

fn rewrite_codas(word: &mut StressedWord, mut f: impl FnMut(&mut Phoneme)) {
    for syllable in &mut word.syllabified.syllables {
        syllable.coda.iter_mut().for_each(&mut f);
    }
}

fn replace(p: &mut Phoneme, from: char, to: char) {
    if p.symbol == from {
        p.symbol = to;
    }
}

/// Applies the configured rewrites in their fixed order.
pub fn transform(mut word: StressedWord, cfg: &DialectConfig) -> StressedWord {
    if cfg.theta == Theta::Seseo {
        rewrite_all(&mut word, |p| replace(p, 'T', 's'));
    }
    if cfg.velar_fricative == VelarFricative::H {
        rewrite_all(&mut word, |p| replace(p, 'x', 'h'));
    }
    if cfg.ll_realization == LlRealization::PalatalFricative {
        rewrite_all(&mut word, |p| replace(p, 'L', 'y'));
    }
    if cfg.s_debuccalization {
        rewrite_codas(&mut word, |p| replace(p, 's', 'h'));
    }
    if cfg.lambdacism {
        rewrite_codas(&mut word, |p| replace(p, 'r', 'l'));
    }
    if !cfg.lenition {
        rewrite_all(&mut word, |p| {
            if p.lenited || matches!(p.symbol, 'B' | 'D' | 'G') {
                p.symbol = p.symbol.to_ascii_lowercase();
                p.lenited = false;
            }
        });
    }
    if !cfg.semivowels {
        rewrite_all(&mut word, |p| {
            if p.class == PhonemeClass::Semivowel {
                replace(p, 'j', 'i');
                replace(p, 'w', 'u');
            }
        });
    }
    if !cfg.mark_stress {
        rewrite_all(&mut word, |p| p.stressed = false);
    }
    word
}
