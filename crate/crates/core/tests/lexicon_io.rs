mod common;

use std::fs;

use common::data_path;
use pronlex::dialect::PresetTable;
use pronlex::export::{export, import_espada_tsv, ExportError, ExportFormat, TSV_HEADER};
use pronlex::lexicon::{
    build_dictionary, load_wordlist, merge_sources, stats, BuildMetadata, LexiconError,
    OverrideTable, PosTable, Sidecar, COUNTRIES,
};
use pronlex::{PhonemeInventory, Pipeline};

#[test]
fn wordlist_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.txt");
    fs::write(&path, "mesa\nMesa\nmesa \ncafé\ncaf3\n\n").unwrap();
    let src = load_wordlist(&path, "mexico").unwrap();
    assert_eq!(src.entries, ["mesa", "café"]);
    assert_eq!(src.rejects.len(), 1);
    assert_eq!(src.origin, path);
}

#[test]
fn empty_and_missing_wordlists() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "\n\n").unwrap();
    assert!(matches!(
        load_wordlist(&empty, "generic"),
        Err(LexiconError::EmptySource { .. })
    ));
    assert!(matches!(
        load_wordlist(&dir.path().join("nope.txt"), "generic"),
        Err(LexiconError::FileUnreadable { .. })
    ));
}

const LOCAL: [&str; 16] = [
    "mate", "api", "once", "tinto", "tico", "guagua", "chin", "chulla", "chapín", "catracho",
    "cuate", "chombo", "pata", "coquí", "tío", "pana",
];

#[test]
fn sixteen_country_sources() {
    let dir = tempfile::tempdir().unwrap();
    let mut sources = Vec::new();
    for (i, country) in COUNTRIES.iter().enumerate() {
        let path = dir.path().join(format!("{country}.txt"));
        fs::write(&path, format!("casa\n{}\n", LOCAL[i])).unwrap();
        sources.push(load_wordlist(&path, country).unwrap());
    }
    let codes: std::collections::BTreeSet<&str> =
        sources.iter().map(|s| s.country.as_str()).collect();
    assert_eq!(codes.len(), 16);
    let merged = merge_sources(&sources);
    let dict = build_dictionary(
        &merged,
        &PosTable::default(),
        &Pipeline::default(),
        0,
        BuildMetadata::default(),
    );
    let report = stats(&dict);
    assert_eq!(report.per_country.len(), 16);
    assert!(report.per_country.values().all(|&n| n == 2));
    assert_eq!(report.mean_per_country, 2.0);
    assert_eq!(dict.get("casa").unwrap().countries.len(), 16);

    let total: usize = dict.entries.iter().map(|e| e.countries.len()).sum();
    let sourced: usize = sources.iter().map(|s| s.entries.len()).sum();
    assert_eq!(total, sourced);
}

#[test]
fn caribbean_sources_merge_into_one_list() {
    let table = PresetTable::default();
    let caribbean = table.get("caribbean").unwrap();
    let sources: Vec<_> = caribbean
        .countries
        .iter()
        .enumerate()
        .map(|(i, c)| {
            pronlex::lexicon::WordlistSource::from_lines(c, "mem", ["las", "porque", LOCAL[i]])
                .unwrap()
        })
        .collect();
    assert_eq!(sources.len(), 6);
    let merged = merge_sources(&sources);
    let las = merged.entries.iter().find(|e| e.word == "las").unwrap();
    assert_eq!(las.countries.len(), 6);

    let pipeline = Pipeline::with_config(caribbean.config);
    let dict = build_dictionary(
        &merged,
        &PosTable::default(),
        &pipeline,
        1,
        BuildMetadata::default(),
    );
    assert_eq!(dict.get("las").unwrap().bundle.base, "l A h");
}

#[test]
fn two_country_stats() {
    let a =
        pronlex::lexicon::WordlistSource::from_lines("chile", "a", ["uno", "dos", "tres"]).unwrap();
    let b = pronlex::lexicon::WordlistSource::from_lines(
        "peru",
        "b",
        ["tres", "cuatro", "cinco", "seis", "siete", "ocho", "nueve"],
    )
    .unwrap();
    let dict = build_dictionary(
        &merge_sources(&[a, b]),
        &PosTable::default(),
        &Pipeline::default(),
        1,
        BuildMetadata::default(),
    );
    let s = stats(&dict);
    assert_eq!(s.per_country["chile"], 3);
    assert_eq!(s.per_country["peru"], 7);
    assert_eq!(s.total, 9);
    assert_eq!(s.mean_per_country, 5.0);
}

#[test]
fn overrides_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ov.tsv");
    fs::write(&path, "today\tt u d e j\nméxico\tm E x i k o\n").unwrap();
    let overrides = OverrideTable::load(&path, &PhonemeInventory::default()).unwrap();
    let pipeline = Pipeline {
        overrides,
        ..Pipeline::default()
    };
    assert_eq!(pipeline.process("today").unwrap().bundle.base, "t u d E j");
    let mexico = pipeline.process("México").unwrap();
    assert!(mexico.overridden);
    assert_eq!(mexico.bundle.base, "m E x i k o");
    assert_eq!(mexico.bundle.ipa, "me xi ko");
}

#[test]
fn export_import_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let src = load_wordlist(&data_path("toy5.txt"), "mexico").unwrap();
    let pos = PosTable::load(&data_path("toy5.pos")).unwrap();
    let dict = build_dictionary(
        &merge_sources(&[src]),
        &pos,
        &Pipeline::default(),
        1,
        BuildMetadata::default(),
    );

    let tsv = dir.path().join("d.tsv");
    export(&dict, ExportFormat::EspadaTsv, &tsv).unwrap();
    assert_eq!(
        fs::read(&tsv).unwrap(),
        fs::read(data_path("toy5.golden.tsv")).unwrap()
    );

    let meta = dir.path().join("d.meta.json");
    dict.write_sidecar(&meta).unwrap();
    let mut back = import_espada_tsv(&tsv).unwrap();
    back.apply_sidecar(&Sidecar::read(&meta).unwrap());
    let s = stats(&back);
    assert_eq!(s.per_country["mexico"], 5);
    assert_eq!(s.per_pos["NOUN"], 2);

    let tsv2 = dir.path().join("d2.tsv");
    export(&back, ExportFormat::EspadaTsv, &tsv2).unwrap();
    assert_eq!(fs::read(&tsv).unwrap(), fs::read(&tsv2).unwrap());

    for f in ExportFormat::ALL {
        let out = dir.path().join(format!("d{}", f.extension()));
        export(&dict, f, &out).unwrap();
        let text = fs::read_to_string(&out).unwrap();
        let header = usize::from(f == ExportFormat::EspadaTsv);
        assert_eq!(text.lines().count(), dict.entries.len() + header, "{f}");
        assert!(text.ends_with('\n') && !text.contains('\r'));
    }
}

#[test]
fn malformed_row_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.tsv");
    fs::write(
        &path,
        format!("{TSV_HEADER}\nla\tDET\tl A\tCV\tla\ncon\tADP\tk O n\tCVC\n"),
    )
    .unwrap();
    match import_espada_tsv(&path) {
        Err(ExportError::MalformedRow { line, .. }) => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
}

#[test]
fn fase_output_is_plain() {
    let words = common::corpus();
    let src = pronlex::lexicon::WordlistSource::from_lines(
        "generic",
        "c",
        words.iter().map(String::as_str),
    )
    .unwrap();
    let dict = build_dictionary(
        &merge_sources(&[src]),
        &PosTable::default(),
        &Pipeline::default(),
        0,
        BuildMetadata::default(),
    );
    let ipa = pronlex::IpaTable::default();
    let fase = pronlex::export::render(&dict, ExportFormat::FaseAlign, &ipa).unwrap();
    for line in fase.lines() {
        let phones = line.split('\t').nth(1).unwrap();
        for tok in phones.split(' ') {
            assert!(
                !matches!(
                    tok,
                    "B" | "D" | "G" | "j" | "w" | "A" | "E" | "I" | "O" | "U"
                ),
                "{line}"
            );
        }
    }
    let gpa = pronlex::export::render(&dict, ExportFormat::TalnGpa, &ipa).unwrap();
    for (e, line) in dict.entries.iter().zip(gpa.lines()) {
        let taps = e
            .syllables
            .iter()
            .flat_map(|s| s.phonemes())
            .filter(|p| p.symbol == 'r')
            .count();
        let trills = e
            .syllables
            .iter()
            .flat_map(|s| s.phonemes())
            .filter(|p| p.symbol == 'R')
            .count();
        let phones: Vec<&str> = line.split('\t').nth(1).unwrap().split(' ').collect();
        assert_eq!(phones.iter().filter(|t| **t == "rf").count(), taps);
        assert_eq!(phones.iter().filter(|t| **t == "r").count(), trills);
    }
}
