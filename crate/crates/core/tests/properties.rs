mod common;

use common::{base_sequence, corpus};
use pronlex::annotate::{render_base, STRESS_MARK};
use pronlex::dialect::{transform, LlRealization, Theta, VelarFricative};
use pronlex::export::{render_entry, ExportFormat};
use pronlex::g2p::{apply_lenition, classify_vowels};
use pronlex::lexicon::{build_dictionary, merge_sources, BuildMetadata, PosTable, WordlistSource};
use pronlex::orthography::{detokenize, OrthoWord};
use pronlex::{DialectConfig, IpaTable, Pipeline, Slot};
use proptest::prelude::*;

fn spelling() -> impl Strategy<Value = String> {
    prop::collection::vec(
        prop::sample::select(vec![
            "a", "b", "c", "ch", "d", "e", "f", "g", "gu", "gü", "h", "i", "j", "l", "ll", "m",
            "n", "ñ", "o", "p", "qu", "r", "rr", "s", "t", "u", "v", "x", "y", "z", "á", "é", "í",
            "ó", "ú", "-",
        ]),
        1..12,
    )
    .prop_map(|parts| parts.concat())
}

fn config() -> impl Strategy<Value = DialectConfig> {
    (
        any::<[bool; 5]>(),
        any::<bool>(),
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(|(flags, ll, theta, velar)| DialectConfig {
            mark_stress: flags[0],
            lenition: flags[1],
            semivowels: flags[2],
            s_debuccalization: flags[3],
            lambdacism: flags[4],
            ll_realization: if ll {
                LlRealization::PalatalFricative
            } else {
                LlRealization::PalatalLateral
            },
            theta: if theta {
                Theta::Seseo
            } else {
                Theta::Distincion
            },
            velar_fricative: if velar {
                VelarFricative::H
            } else {
                VelarFricative::X
            },
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn tokenization_round_trips(raw in spelling()) {
        if let Ok(w) = OrthoWord::parse(&raw) {
            prop_assert_eq!(detokenize(&w.letters), w.normalized);
        }
    }

    #[test]
    fn pipeline_never_panics(raw in spelling(), cfg in config()) {
        let pipeline = Pipeline::with_config(cfg);
        if let Ok(p) = pipeline.process(&raw) {
            let n = p.bundle.base.split(' ').count();
            prop_assert_eq!(n, p.bundle.phonotactics.replace(' ', "").len());
            prop_assert_eq!(n, p.bundle.positions.len());
        }
    }

    #[test]
    fn dialect_transform_is_idempotent(i in 0usize..1830, cfg in config()) {
        let words = corpus();
        let word = &words[i % words.len()];
        for part in Pipeline::default().base_parts(&OrthoWord::parse(word).unwrap()).unwrap().0 {
            let once = transform(part, &cfg);
            prop_assert_eq!(transform(once.clone(), &cfg), once);
        }
    }
}

#[test]
fn vowel_classification_and_lenition_are_idempotent() {
    for word in corpus() {
        let seq = base_sequence(&word);
        assert_eq!(classify_vowels(seq.clone()), seq, "{word}");
        assert_eq!(apply_lenition(seq.clone()), seq, "{word}");
    }
}

#[test]
fn stress_agrees_across_renderings() {
    let src = WordlistSource::from_lines("generic", "corpus", corpus().iter().map(String::as_str))
        .unwrap();
    let dict = build_dictionary(
        &merge_sources(&[src]),
        &PosTable::default(),
        &Pipeline::default(),
        0,
        BuildMetadata::default(),
    );
    let ipa = IpaTable::default();
    for e in &dict.entries {
        if e.entry.contains('-') {
            continue;
        }
        let upper_at = e.syllables.iter().position(|s| {
            s.phonemes()
                .any(|p| p.rendered().is_uppercase() && p.is_vowel())
        });
        let segments = render_entry(e, ExportFormat::TalnIpa, &ipa).unwrap();
        let marked = segments
            .split(' ')
            .position(|seg| seg.starts_with(STRESS_MARK))
            .unwrap();
        let mut seen = 0;
        let syllable_of_mark = e
            .syllables
            .iter()
            .position(|s| {
                seen += s.len();
                marked < seen
            })
            .unwrap();
        assert_eq!(upper_at, Some(syllable_of_mark), "{}", e.entry);
        assert_eq!(
            segments.split(' ').count(),
            e.bundle.base.split(' ').count()
        );
    }
}

#[test]
fn slot_totality() {
    for word in corpus() {
        let p = Pipeline::default().process(&word).unwrap();
        let tags = &p.bundle.positions;
        assert_eq!(tags.len(), p.bundle.base.split(' ').count());
        for (i, t) in tags.iter().enumerate() {
            assert_eq!(t.phoneme_index, i);
            let prev = i.checked_sub(1).map(|j| tags[j]);
            match t.slot {
                Slot::Onset2 => assert_eq!(prev.map(|p| p.slot), Some(Slot::Onset1), "{word}"),
                Slot::Coda2 => assert_eq!(prev.map(|p| p.slot), Some(Slot::Coda1), "{word}"),
                _ => {}
            }
        }
        let nuclei = tags.iter().filter(|t| t.slot == Slot::Nucleus).count();
        let syllables = p.parts.iter().map(|w| w.syllable_count()).sum::<usize>();
        assert_eq!(nuclei, syllables, "{word}");
    }
}

#[test]
fn base_rendering_matches_parts() {
    for word in ["transporte", "zúñiga", "guasave"] {
        let p = Pipeline::default().process(word).unwrap();
        assert_eq!(render_base(&p.parts[0]), p.bundle.base);
    }
}
