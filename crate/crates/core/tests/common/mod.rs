//! Shared helpers for integration tests, including the brute-force
//! syllabification oracle.
#![allow(dead_code)]

use std::path::PathBuf;

use pronlex::g2p::{transcribe, PhonemeSequence};
use pronlex::orthography::OrthoWord;
use pronlex::{ClusterTables, Phoneme, PhonemeClass, PhonemeInventory};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
        .join(name)
}

pub fn corpus() -> Vec<String> {
    std::fs::read_to_string(data_path("corpus.txt"))
        .expect("corpus")
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(str::to_string)
        .collect()
}

pub fn base_sequence(word: &str) -> PhonemeSequence {
    let w = OrthoWord::parse(word).expect("valid spelling");
    transcribe(&w.letters, &w.accent, &PhonemeInventory::default(), true).expect("g2p")
}

/// Onset, nucleus and coda symbols of one syllable.
pub type Parse = Vec<(String, String, String)>;

fn chunk_shape(
    chunk: &[Phoneme],
    tables: &ClusterTables,
) -> Option<(String, String, String, usize)> {
    let is_c = |p: &Phoneme| p.class == PhonemeClass::Consonant;
    let is_s = |p: &Phoneme| p.class == PhonemeClass::Semivowel;
    let vowels: Vec<usize> = (0..chunk.len())
        .filter(|&i| chunk[i].class == PhonemeClass::Vowel)
        .collect();
    let [v] = vowels[..] else { return None };

    let mut start = v;
    if start > 0 && is_s(&chunk[start - 1]) {
        start -= 1;
    }
    let mut end = v + 1;
    if end < chunk.len() && is_s(&chunk[end]) {
        end += 1;
    }
    let onset = &chunk[..start];
    let coda = &chunk[end..];
    if onset.len() > 2 || coda.len() > 2 || !onset.iter().all(is_c) || !coda.iter().all(is_c) {
        return None;
    }
    if onset.len() == 2 && !tables.is_legal_onset(onset[0].symbol, onset[1].symbol) {
        return None;
    }
    if coda.len() == 2 && !tables.is_legal_coda(coda[0].symbol, coda[1].symbol) {
        return None;
    }
    let text = |ps: &[Phoneme]| ps.iter().map(|p| p.symbol).collect::<String>();
    Some((text(onset), text(&chunk[start..end]), text(coda), v))
}

/// Enumerates every segmentation into legal syllables and keeps those with
/// the most segments before their vowel. Returns `None` when no legal
/// segmentation exists and panics if the best one is not unique.
pub fn oracle_syllabify(seq: &[Phoneme], tables: &ClusterTables) -> Option<Parse> {
    let n = seq.len();
    if n == 0 || n > 20 {
        return None;
    }
    let mut best: Vec<(usize, Parse)> = Vec::new();
    let mut best_score = None;
    // Bit i set = boundary between i and i+1.
    for mask in 0u32..(1 << (n - 1)) {
        let mut parse = Vec::new();
        let mut score = 0;
        let mut start = 0;
        let mut ok = true;
        for i in 0..n {
            let cut = i == n - 1 || mask & (1 << i) != 0;
            if cut {
                match chunk_shape(&seq[start..=i], tables) {
                    Some((o, nuc, c, v)) => {
                        score += v;
                        parse.push((o, nuc, c));
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
                start = i + 1;
            }
        }
        if !ok {
            continue;
        }
        match best_score {
            Some(s) if score < s => {}
            Some(s) if score == s => best.push((score, parse)),
            _ => {
                best_score = Some(score);
                best = vec![(score, parse)];
            }
        }
    }
    assert!(
        best.len() <= 1,
        "oracle found {} optimal parses",
        best.len()
    );
    best.pop().map(|(_, p)| p)
}

pub fn parse_of(word: &pronlex::syllable::SyllabifiedWord) -> Parse {
    let text = |ps: &[Phoneme]| ps.iter().map(|p| p.symbol).collect::<String>();
    word.syllables
        .iter()
        .map(|s| (text(&s.onset), text(&s.nucleus), text(&s.coda)))
        .collect()
}
