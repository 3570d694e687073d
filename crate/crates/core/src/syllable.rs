//! Syllabification by onset maximization over legal-cluster tables.
//!
//! Every vowel heads a nucleus, optionally flanked by one semivowel on each
//! side. Consonants between two nuclei go to the following onset as long as
//! the onset stays a legal pair; whatever remains becomes the preceding
//! coda. Onsets and codas hold at most two consonants.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::g2p::{Phoneme, PhonemeClass, PhonemeInventory, PhonemeSequence};

const DEFAULT_CLUSTERS: &str = include_str!("../data/clusters.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyllabifyError {
    #[error("no vowel to form a syllable nucleus")]
    NoNucleus,
    #[error("cannot syllabify cluster {cluster:?}")]
    UnsyllabifiableCluster { cluster: String },
}

impl SyllabifyError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::NoNucleus => "NoNucleus",
            Self::UnsyllabifiableCluster { .. } => "UnsyllabifiableCluster",
        }
    }
}

#[derive(Debug, Error)]
pub enum ClusterTableError {
    #[error("cannot read cluster table {path}: {source}")]
    Unreadable {
        path: String,
        source: std::io::Error,
    },
    #[error("cluster table line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("cluster {pair:?} uses {symbol:?}, which is not a consonant of the inventory")]
    NotConsonant { pair: String, symbol: char },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Syllable {
    pub onset: Vec<Phoneme>,
    pub nucleus: Vec<Phoneme>,
    pub coda: Vec<Phoneme>,
}

impl Syllable {
    pub fn phonemes(&self) -> impl Iterator<Item = &Phoneme> + '_ {
        self.onset.iter().chain(&self.nucleus).chain(&self.coda)
    }

    pub fn phonemes_mut(&mut self) -> impl Iterator<Item = &mut Phoneme> + '_ {
        self.onset
            .iter_mut()
            .chain(self.nucleus.iter_mut())
            .chain(self.coda.iter_mut())
    }

    pub fn len(&self) -> usize {
        self.onset.len() + self.nucleus.len() + self.coda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The nucleus vowel.
    pub fn peak(&self) -> Option<&Phoneme> {
        self.nucleus.iter().find(|p| p.is_vowel())
    }

    pub fn peak_mut(&mut self) -> Option<&mut Phoneme> {
        self.nucleus.iter_mut().find(|p| p.is_vowel())
    }

    pub fn is_stressed(&self) -> bool {
        self.peak().is_some_and(|p| p.stressed)
    }

    /// Internal symbols without stress marking, e.g. `trans`.
    pub fn symbols(&self) -> String {
        self.phonemes().map(|p| p.symbol).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyllabifiedWord {
    pub syllables: Vec<Syllable>,
    pub source_word: String,
}

impl SyllabifiedWord {
    pub fn phonemes(&self) -> impl Iterator<Item = &Phoneme> + '_ {
        self.syllables.iter().flat_map(Syllable::phonemes)
    }

    /// Syllables joined by `|`, e.g. `trans|por|te`.
    pub fn divided(&self) -> String {
        self.syllables
            .iter()
            .map(Syllable::symbols)
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// Legal two-consonant onsets and codas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterTables {
    onsets: BTreeSet<(char, char)>,
    codas: BTreeSet<(char, char)>,
}

impl Default for ClusterTables {
    fn default() -> Self {
        Self::parse(DEFAULT_CLUSTERS).expect("bundled cluster table is valid")
    }
}

impl ClusterTables {
    pub fn new(
        onsets: impl IntoIterator<Item = (char, char)>,
        codas: impl IntoIterator<Item = (char, char)>,
    ) -> Self {
        Self {
            onsets: onsets.into_iter().collect(),
            codas: codas.into_iter().collect(),
        }
    }

    pub fn load(path: &Path) -> Result<Self, ClusterTableError> {
        let text = fs::read_to_string(path).map_err(|source| ClusterTableError::Unreadable {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Parses `ONSETS` / `CODAS` sections with one pair per line, written
    /// either as `pr` or `p r`.
    pub fn parse(text: &str) -> Result<Self, ClusterTableError> {
        let mut tables = Self::new([], []);
        let mut current: Option<bool> = None; // Some(true) = onsets
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match line {
                "ONSETS" => current = Some(true),
                "CODAS" => current = Some(false),
                _ => {
                    let chars: Vec<char> = line.chars().filter(|c| !c.is_whitespace()).collect();
                    let [a, b] = chars[..] else {
                        return Err(ClusterTableError::Syntax {
                            line: idx + 1,
                            message: format!("expected a pair of symbols, got {line:?}"),
                        });
                    };
                    match current {
                        Some(true) => tables.onsets.insert((a, b)),
                        Some(false) => tables.codas.insert((a, b)),
                        None => {
                            return Err(ClusterTableError::Syntax {
                                line: idx + 1,
                                message: "pair before an ONSETS or CODAS header".into(),
                            })
                        }
                    };
                }
            }
        }
        Ok(tables)
    }

    /// Checks that every pair is made of consonants of `inventory`.
    pub fn validate(&self, inventory: &PhonemeInventory) -> Result<(), ClusterTableError> {
        for &(a, b) in self.onsets.iter().chain(&self.codas) {
            for symbol in [a, b] {
                if inventory.class_of(symbol) != Some(PhonemeClass::Consonant) {
                    return Err(ClusterTableError::NotConsonant {
                        pair: format!("{a}{b}"),
                        symbol,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_legal_onset(&self, first: char, second: char) -> bool {
        self.onsets.contains(&(first, second))
    }

    pub fn is_legal_coda(&self, first: char, second: char) -> bool {
        self.codas.contains(&(first, second))
    }

    pub fn onsets(&self) -> impl Iterator<Item = (char, char)> + '_ {
        self.onsets.iter().copied()
    }

    pub fn codas(&self) -> impl Iterator<Item = (char, char)> + '_ {
        self.codas.iter().copied()
    }

    fn onset_ok(&self, cs: &[Phoneme]) -> bool {
        match cs {
            [] | [_] => true,
            [a, b] => self.is_legal_onset(a.symbol, b.symbol),
            _ => false,
        }
    }

    fn coda_ok(&self, cs: &[Phoneme]) -> bool {
        match cs {
            [] | [_] => true,
            [a, b] => self.is_legal_coda(a.symbol, b.symbol),
            _ => false,
        }
    }
}

pub fn is_legal_onset(pair: (char, char), tables: &ClusterTables) -> bool {
    tables.is_legal_onset(pair.0, pair.1)
}

pub fn is_legal_coda(pair: (char, char), tables: &ClusterTables) -> bool {
    tables.is_legal_coda(pair.0, pair.1)
}

fn cluster_error(segments: &[Phoneme]) -> SyllabifyError {
    SyllabifyError::UnsyllabifiableCluster {
        cluster: segments.iter().map(|p| p.symbol).collect(),
    }
}

/// Splits the material between two vowels into
/// (post-glides of the left vowel, consonants, pre-glides of the right vowel).
fn split_interlude(segment: &[Phoneme]) -> Result<(usize, usize, usize), SyllabifyError> {
    if segment.iter().all(|p| p.class == PhonemeClass::Semivowel) {
        return match segment.len() {
            0 => Ok((0, 0, 0)),
            1 => Ok((0, 0, 1)),
            2 => Ok((1, 0, 1)),
            _ => Err(cluster_error(segment)),
        };
    }
    let lead = segment.iter().take_while(|p| !p.is_consonant()).count();
    let trail = segment
        .iter()
        .rev()
        .take_while(|p| !p.is_consonant())
        .count();
    let middle = &segment[lead..segment.len() - trail];
    if lead > 1 || trail > 1 || middle.iter().any(|p| !p.is_consonant()) {
        return Err(cluster_error(segment));
    }
    Ok((lead, middle.len(), trail))
}

/// Groups a phoneme sequence into syllables.
pub fn syllabify(
    seq: &PhonemeSequence,
    tables: &ClusterTables,
) -> Result<SyllabifiedWord, SyllabifyError> {
    let ph = &seq.phonemes;
    let peaks: Vec<usize> = (0..ph.len()).filter(|&i| ph[i].is_vowel()).collect();
    if peaks.is_empty() {
        return Err(SyllabifyError::NoNucleus);
    }

    let mut syllables: Vec<Syllable> = peaks
        .iter()
        .map(|&v| Syllable {
            nucleus: vec![ph[v]],
            ..Syllable::default()
        })
        .collect();

    // Word-initial material: consonants then at most one glide.
    let head = &ph[..peaks[0]];
    let glides = head.iter().rev().take_while(|p| !p.is_consonant()).count();
    let onset = &head[..head.len() - glides];
    if glides > 1 || onset.iter().any(|p| !p.is_consonant()) || !tables.onset_ok(onset) {
        return Err(cluster_error(head));
    }
    syllables[0].onset = onset.to_vec();
    syllables[0]
        .nucleus
        .splice(0..0, head[onset.len()..].iter().copied());

    // Word-final material: at most one glide then consonants.
    let last = *peaks.last().unwrap();
    let tail = &ph[last + 1..];
    let glides = tail.iter().take_while(|p| !p.is_consonant()).count();
    let coda = &tail[glides..];
    if glides > 1 || coda.iter().any(|p| !p.is_consonant()) || !tables.coda_ok(coda) {
        return Err(cluster_error(tail));
    }
    let final_syllable = syllables.last_mut().unwrap();
    final_syllable.nucleus.extend_from_slice(&tail[..glides]);
    final_syllable.coda = coda.to_vec();

    for k in 0..peaks.len() - 1 {
        let segment = &ph[peaks[k] + 1..peaks[k + 1]];
        let (post, n, pre) = split_interlude(segment)?;
        let consonants = &segment[post..post + n];
        let onset_len = match consonants {
            [] => 0,
            [.., a, b] if tables.is_legal_onset(a.symbol, b.symbol) => 2,
            _ => 1,
        };
        let (coda, onset) = consonants.split_at(n - onset_len);
        if !tables.coda_ok(coda) {
            return Err(cluster_error(consonants));
        }
        syllables[k].nucleus.extend_from_slice(&segment[..post]);
        syllables[k].coda = coda.to_vec();
        syllables[k + 1].onset = onset.to_vec();
        syllables[k + 1]
            .nucleus
            .splice(0..0, segment[post + n..].iter().copied());
        debug_assert_eq!(segment[post + n..].len(), pre);
    }

    Ok(SyllabifiedWord {
        syllables,
        source_word: seq.source_word.clone(),
    })
}
