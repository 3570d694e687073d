//! Per-word pipeline and the parallel dictionary build.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{LexiconError, MergedLexicon, OverrideTable, PosTable, Reject};
use crate::annotate::{annotate, AnnotationBundle, IpaTable};
use crate::dialect::{transform, DialectConfig};
use crate::g2p::{transcribe, PhonemeInventory, PhonemeSequence};
use crate::orthography::{AccentInfo, OrthoWord};
use crate::stress::{assign_stress, StressedWord};
use crate::syllable::{syllabify, ClusterTables, Syllable};
use crate::WordError;

/// Everything needed to turn one spelling into annotations.
#[derive(Debug, Clone, Default)]
pub struct Pipeline {
    pub inventory: PhonemeInventory,
    pub clusters: ClusterTables,
    pub ipa: IpaTable,
    pub config: DialectConfig,
    pub overrides: OverrideTable,
}

/// One processed word. Hyphenated spellings have several parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pronunciation {
    pub entry: String,
    pub parts: Vec<StressedWord>,
    pub bundle: AnnotationBundle,
    pub overridden: bool,
}

impl Pronunciation {
    pub fn syllables(&self) -> Vec<Syllable> {
        self.parts
            .iter()
            .flat_map(|p| p.syllabified.syllables.iter().cloned())
            .collect()
    }
}

impl Pipeline {
    pub fn with_config(config: DialectConfig) -> Self {
        Self {
            config,
            ..Self::default()
        }
    }

    /// Runs the base pipeline without dialect rewrites.
    pub fn base_parts(&self, word: &OrthoWord) -> Result<(Vec<StressedWord>, bool), WordError> {
        if let Some(phonemes) = self.overrides.get(&word.normalized) {
            let seq = PhonemeSequence {
                phonemes: phonemes.to_vec(),
                source_word: word.normalized.clone(),
            };
            let syl = syllabify(&seq, &self.clusters)?;
            return Ok((vec![assign_stress(syl, &AccentInfo::none())?], true));
        }
        let mut parts = Vec::new();
        for part in word.parts()? {
            let seq = transcribe(&part.letters, &part.accent, &self.inventory, true)?;
            let syl = syllabify(&seq, &self.clusters)?;
            parts.push(assign_stress(syl, &part.accent)?);
        }
        Ok((parts, false))
    }

    pub fn process(&self, raw: &str) -> Result<Pronunciation, WordError> {
        let word = OrthoWord::parse(raw)?;
        let (parts, overridden) = self.base_parts(&word)?;
        let parts: Vec<StressedWord> = parts
            .into_iter()
            .map(|p| transform(p, &self.config))
            .collect();
        let bundle = annotate(&parts, &self.ipa)?;
        Ok(Pronunciation {
            entry: word.normalized,
            parts,
            bundle,
            overridden,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DictionaryEntry {
    pub entry: String,
    pub pos: String,
    pub bundle: AnnotationBundle,
    pub syllables: Vec<Syllable>,
    pub countries: BTreeSet<String>,
    pub overridden: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceInfo {
    pub country: String,
    pub path: String,
    pub entries: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildMetadata {
    pub tool_version: String,
    pub preset: Option<String>,
    pub sources: Vec<SourceInfo>,
}

impl Default for BuildMetadata {
    fn default() -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            preset: None,
            sources: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dictionary {
    /// Sorted by code point of `entry`.
    pub entries: Vec<DictionaryEntry>,
    pub config: DialectConfig,
    pub metadata: BuildMetadata,
    /// Words that failed somewhere in the pipeline.
    pub errors: Vec<Reject>,
}

/// JSON companion to an exported dictionary: build settings and provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub metadata: BuildMetadata,
    pub config: DialectConfig,
    pub per_country: BTreeMap<String, usize>,
    pub provenance: BTreeMap<String, Vec<String>>,
}

impl Sidecar {
    pub fn read(path: &Path) -> Result<Self, LexiconError> {
        let text = fs::read_to_string(path).map_err(|source| LexiconError::FileUnreadable {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(serde_json::from_str(&text)?)
    }
}

impl Dictionary {
    pub fn sidecar(&self) -> Sidecar {
        let mut per_country = BTreeMap::new();
        for e in &self.entries {
            for c in &e.countries {
                *per_country.entry(c.clone()).or_default() += 1;
            }
        }
        Sidecar {
            metadata: self.metadata.clone(),
            config: self.config,
            per_country,
            provenance: self
                .entries
                .iter()
                .map(|e| (e.entry.clone(), e.countries.iter().cloned().collect()))
                .collect(),
        }
    }

    pub fn write_sidecar(&self, path: &Path) -> Result<(), LexiconError> {
        let mut json = serde_json::to_string_pretty(&self.sidecar())?;
        json.push('\n');
        fs::write(path, json).map_err(|source| LexiconError::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Restores countries (and build settings) recorded in a sidecar.
    pub fn apply_sidecar(&mut self, sidecar: &Sidecar) {
        for e in &mut self.entries {
            if let Some(cs) = sidecar.provenance.get(&e.entry) {
                e.countries = cs.iter().cloned().collect();
            }
        }
        self.config = sidecar.config;
        self.metadata = sidecar.metadata.clone();
    }

    pub fn get(&self, word: &str) -> Option<&DictionaryEntry> {
        self.entries
            .binary_search_by(|e| e.entry.as_str().cmp(word))
            .ok()
            .map(|i| &self.entries[i])
    }
}

fn clean(field: &str) -> String {
    field.replace(['\t', '\n', '\r'], " ")
}

/// `word<TAB>kind<TAB>detail` lines.
pub fn rejects_tsv(rejects: &[Reject]) -> String {
    rejects
        .iter()
        .map(|r| format!("{}\t{}\t{}\n", clean(&r.word), r.kind, clean(&r.detail)))
        .collect()
}

/// Runs every merged word through `pipeline`. Failures are collected, never
/// fatal. `jobs` = 1 runs serially, 0 uses all cores.
pub fn build_dictionary(
    lexicon: &MergedLexicon,
    pos: &PosTable,
    pipeline: &Pipeline,
    jobs: usize,
    metadata: BuildMetadata,
) -> Dictionary {
    fn work<'a>(
        e: &'a super::MergedEntry,
        pipeline: &Pipeline,
    ) -> (&'a super::MergedEntry, Result<Pronunciation, WordError>) {
        (e, pipeline.process(&e.word))
    }
    let results: Vec<_> = if jobs == 1 {
        lexicon.entries.iter().map(|e| work(e, pipeline)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            lexicon
                .entries
                .par_iter()
                .map(|e| work(e, pipeline))
                .collect()
        })
    };

    let mut entries: Vec<DictionaryEntry> = Vec::with_capacity(results.len());
    let mut errors = Vec::new();
    for (merged, result) in results {
        match result {
            Ok(p) => {
                let syllables = p.syllables();
                entries.push(DictionaryEntry {
                    pos: pos.get(&p.entry).unwrap_or_default().to_string(),
                    entry: p.entry,
                    bundle: p.bundle,
                    syllables,
                    countries: merged.countries.clone(),
                    overridden: p.overridden,
                });
            }
            Err(e) => errors.push(Reject {
                word: merged.word.clone(),
                kind: e.kind().to_string(),
                detail: e.to_string(),
            }),
        }
    }
    entries.sort_by(|a, b| a.entry.cmp(&b.entry));
    entries.dedup_by(|b, a| {
        let same = a.entry == b.entry;
        if same {
            a.countries.extend(b.countries.iter().cloned());
        }
        same
    });
    errors.sort_by(|a, b| a.word.cmp(&b.word));
    Dictionary {
        entries,
        config: pipeline.config,
        metadata,
        errors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::{merge_sources, stats, WordlistSource};

    fn lexicon(country: &str, words: &[&str]) -> MergedLexicon {
        merge_sources(&[WordlistSource::from_lines(country, "mem", words.iter().copied()).unwrap()])
    }

    #[test]
    fn override_replaces_spelling() {
        let inv = PhonemeInventory::default();
        let pipeline = Pipeline {
            overrides: OverrideTable::parse("today\tt u d e j\n", &inv).unwrap(),
            ..Pipeline::default()
        };
        let p = pipeline.process("today").unwrap();
        assert!(p.overridden);
        assert_eq!(p.bundle.base, "t u d E j");
        assert_eq!(p.bundle.phonotactics, "CV CVC");
    }

    #[test]
    fn hyphenated_words_join_parts() {
        let p = Pipeline::default().process("franco-alemán").unwrap();
        assert_eq!(p.parts.len(), 2);
        assert_eq!(p.bundle.base, "f r A n k o a l e m A n");
    }

    #[test]
    fn failures_are_quarantined() {
        let dict = build_dictionary(
            &lexicon("generic", &["mesa", "psicología", "la"]),
            &PosTable::default(),
            &Pipeline::default(),
            2,
            BuildMetadata::default(),
        );
        assert_eq!(dict.entries.len(), 2);
        assert_eq!(dict.errors.len(), 1);
        assert_eq!(dict.errors[0].word, "psicología");
        assert_eq!(dict.errors[0].kind, "UnsyllabifiableCluster");
    }

    #[test]
    fn toy_stats() {
        let mut pos = PosTable::default();
        for (w, l) in [
            ("aarón", "PROP"),
            ("con", "ADP"),
            ("gris", "NOUN"),
            ("la", "DET"),
            ("mesa", "NOUN"),
        ] {
            pos.insert(w, l);
        }
        let dict = build_dictionary(
            &lexicon("mexico", &["mesa", "la", "gris", "con", "aarón"]),
            &pos,
            &Pipeline::default(),
            1,
            BuildMetadata::default(),
        );
        let s = stats(&dict);
        assert_eq!(s.total, 5);
        assert_eq!(s.mean_per_country, 5.0);
        assert_eq!(s.per_pos["NOUN"], 2);
        assert_eq!(s.per_pos.len(), 4);
        let order: Vec<&str> = dict.entries.iter().map(|e| e.entry.as_str()).collect();
        assert_eq!(order, ["aarón", "con", "gris", "la", "mesa"]);
    }

    #[test]
    fn sidecar_round_trip() {
        let dict = build_dictionary(
            &lexicon("chile", &["mesa"]),
            &PosTable::default(),
            &Pipeline::default(),
            1,
            BuildMetadata::default(),
        );
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.meta.json");
        dict.write_sidecar(&path).unwrap();
        let back = Sidecar::read(&path).unwrap();
        assert_eq!(back, dict.sidecar());
        assert_eq!(back.provenance["mesa"], ["chile"]);
    }
}
