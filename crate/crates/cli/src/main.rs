//! `pronlex` command-line tool.
//!
//! Exit codes: 0 success, 1 usage error, 2 input error, 3 internal error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};

use pronlex::annotate::IpaTable;
use pronlex::dialect::{DialectConfig, PresetTable};
use pronlex::export::{export_with, import_espada_tsv, ExportFormat};
use pronlex::lexicon::{
    build_dictionary, load_wordlist, merge_sources, rejects_tsv, stats, BuildMetadata,
    LexiconError, OverrideTable, Pipeline, PosTable, Reject, Sidecar, SourceInfo, StatsReport,
    GENERIC,
};
use pronlex::syllable::ClusterTables;
use pronlex::PhonemeInventory;

#[derive(Parser)]
#[command(
    name = "pronlex",
    version,
    about = "Compile Spanish wordlists into pronunciation dictionaries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a dictionary from one or more wordlists.
    Build(BuildArgs),
    /// Print the full annotation of a single word.
    Lookup(LookupArgs),
    /// Re-serialize a TSV dictionary into another format.
    Convert(ConvertArgs),
    /// Report entry counts per country and per POS label.
    Stats(StatsArgs),
    /// List the available dialect presets.
    Presets(PresetListArgs),
}

#[derive(Args)]
struct DialectArgs {
    /// Named preset; repeat to merge several (they must agree).
    #[arg(long = "preset")]
    presets: Vec<String>,
    /// Preset definitions to use instead of the bundled ones.
    #[arg(long)]
    presets_file: Option<PathBuf>,
    #[arg(long, value_name = "BOOL")]
    mark_stress: Option<String>,
    #[arg(long, value_name = "BOOL")]
    lenition: Option<String>,
    #[arg(long, value_name = "BOOL")]
    semivowels: Option<String>,
    /// palatal-lateral or palatal-fricative
    #[arg(long, value_name = "REALIZATION")]
    ll_realization: Option<String>,
    /// distincion or seseo
    #[arg(long, value_name = "MODE")]
    theta: Option<String>,
    /// x or h
    #[arg(long, value_name = "SOUND")]
    velar_fricative: Option<String>,
    #[arg(long, value_name = "BOOL")]
    s_debuccalization: Option<String>,
    #[arg(long, value_name = "BOOL")]
    lambdacism: Option<String>,
}

impl DialectArgs {
    /// Preset (if any) with explicit flags layered on top.
    fn resolve(&self) -> Result<(DialectConfig, Option<String>)> {
        let (mut cfg, name) = if self.presets.is_empty() {
            (DialectConfig::default(), None)
        } else {
            let table = match &self.presets_file {
                Some(path) => PresetTable::load(path)?,
                None => PresetTable::default(),
            };
            let merged = table.merge(&self.presets)?;
            (merged.config, Some(merged.name))
        };
        let flags = [
            ("mark_stress", &self.mark_stress),
            ("lenition", &self.lenition),
            ("semivowels", &self.semivowels),
            ("ll_realization", &self.ll_realization),
            ("theta", &self.theta),
            ("velar_fricative", &self.velar_fricative),
            ("s_debuccalization", &self.s_debuccalization),
            ("lambdacism", &self.lambdacism),
        ];
        for (field, value) in flags {
            if let Some(v) = value {
                cfg.set(field, v).map_err(|e| anyhow!(e))?;
            }
        }
        Ok((cfg, name))
    }
}

#[derive(Args)]
struct TableArgs {
    /// Legal onset and coda clusters.
    #[arg(long)]
    clusters: Option<PathBuf>,
    /// Symbol inventory and letter rules.
    #[arg(long)]
    inventory: Option<PathBuf>,
    /// IPA entries layered over the defaults.
    #[arg(long)]
    ipa_table: Option<PathBuf>,
    /// word<TAB>symbols pronunciation overrides.
    #[arg(long)]
    overrides: Option<PathBuf>,
}

impl TableArgs {
    fn pipeline(&self, config: DialectConfig) -> Result<Pipeline> {
        let inventory = match &self.inventory {
            Some(p) => PhonemeInventory::load(p)?,
            None => PhonemeInventory::default(),
        };
        let clusters = match &self.clusters {
            Some(p) => ClusterTables::load(p)?,
            None => ClusterTables::default(),
        };
        clusters.validate(&inventory)?;
        let ipa = match &self.ipa_table {
            Some(p) => IpaTable::load_overrides(p)?,
            None => IpaTable::default(),
        };
        let overrides = match &self.overrides {
            Some(p) => OverrideTable::load(p, &inventory)?,
            None => OverrideTable::default(),
        };
        Ok(Pipeline {
            inventory,
            clusters,
            ipa,
            config,
            overrides,
        })
    }
}

#[derive(Args)]
struct BuildArgs {
    /// Wordlists, optionally prefixed with a country code: `mexico=words.txt`.
    #[arg(required = true, value_name = "[COUNTRY=]PATH")]
    inputs: Vec<String>,
    #[command(flatten)]
    dialect: DialectArgs,
    #[command(flatten)]
    tables: TableArgs,
    /// word<TAB>label part-of-speech table.
    #[arg(long)]
    pos_table: Option<PathBuf>,
    /// Output format; repeat for several.
    #[arg(long = "format", default_value = "espada-tsv")]
    formats: Vec<ExportFormat>,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Base name of the output files.
    #[arg(long, default_value = "dictionary")]
    name: String,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct LookupArgs {
    word: String,
    #[command(flatten)]
    dialect: DialectArgs,
    #[command(flatten)]
    tables: TableArgs,
}

#[derive(Args)]
struct ConvertArgs {
    input: PathBuf,
    #[arg(long, default_value = "espada-tsv")]
    from: ExportFormat,
    #[arg(long)]
    to: ExportFormat,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    ipa_table: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    /// A TSV dictionary or a build directory.
    input: PathBuf,
    /// Base name to look for inside a build directory.
    #[arg(long, default_value = "dictionary")]
    name: String,
}

#[derive(Args)]
struct PresetListArgs {
    #[arg(long)]
    presets_file: Option<PathBuf>,
}

/// Context marker for failures that are not the user's input's fault.
#[derive(Debug)]
struct Internal;

impl std::fmt::Display for Internal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("internal error")
    }
}

fn parse_input(spec: &str) -> (String, PathBuf) {
    match spec.split_once('=') {
        Some((country, path)) if !country.is_empty() && !country.contains(['/', '\\']) => {
            (country.to_string(), PathBuf::from(path))
        }
        _ => (GENERIC.to_string(), PathBuf::from(spec)),
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)
        .with_context(|| format!("cannot write {}", path.display()))
        .context(Internal)
}

fn build(args: BuildArgs) -> Result<()> {
    let (config, preset) = args.dialect.resolve()?;
    let pipeline = args.tables.pipeline(config)?;
    let pos = match &args.pos_table {
        Some(p) => PosTable::load(p)?,
        None => PosTable::default(),
    };

    let mut sources = Vec::new();
    let mut load_rejects: Vec<Reject> = Vec::new();
    let mut infos = Vec::new();
    for spec in &args.inputs {
        let (country, path) = parse_input(spec);
        match load_wordlist(&path, &country) {
            Ok(src) => {
                infos.push(SourceInfo {
                    country: src.country.clone(),
                    path: path.display().to_string(),
                    entries: src.entries.len(),
                });
                load_rejects.extend(src.rejects.iter().cloned());
                sources.push(src);
            }
            Err(LexiconError::EmptySource { path }) => {
                eprintln!("warning: {} is empty", path.display());
                infos.push(SourceInfo {
                    country,
                    path: path.display().to_string(),
                    entries: 0,
                });
            }
            Err(e) => return Err(e.into()),
        }
    }

    let metadata = BuildMetadata {
        preset,
        sources: infos,
        ..BuildMetadata::default()
    };
    let dict = build_dictionary(
        &merge_sources(&sources),
        &pos,
        &pipeline,
        args.jobs,
        metadata,
    );

    fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create {}", args.out.display()))
        .context(Internal)?;
    let mut formats = args.formats.clone();
    formats.sort();
    formats.dedup();
    for format in &formats {
        let path = args
            .out
            .join(format!("{}{}", args.name, format.extension()));
        export_with(&dict, *format, &path, &pipeline.ipa).context(Internal)?;
    }
    let mut rejects = load_rejects;
    rejects.extend(dict.errors.iter().cloned());
    write_file(
        &args.out.join(format!("{}.rejects.tsv", args.name)),
        &rejects_tsv(&rejects),
    )?;
    dict.write_sidecar(&args.out.join(format!("{}.meta.json", args.name)))
        .context(Internal)?;

    if dict.entries.is_empty() {
        eprintln!("warning: 0 entries");
    }
    println!(
        "{} entries, {} rejected, {} format(s) written to {}",
        dict.entries.len(),
        rejects.len(),
        formats.len(),
        args.out.display()
    );
    Ok(())
}

fn lookup(args: LookupArgs) -> Result<()> {
    let (config, _) = args.dialect.resolve()?;
    let pipeline = args.tables.pipeline(config)?;
    let p = pipeline
        .process(&args.word)
        .map_err(|e| anyhow!("{}: {} ({})", args.word, e, e.kind()))?;
    let mut out = String::new();
    let b = &p.bundle;
    let divided: Vec<String> = p.parts.iter().map(|w| w.syllabified.divided()).collect();
    let categories: Vec<String> = p.parts.iter().map(|w| w.category.to_string()).collect();
    writeln!(out, "entry:        {}", p.entry).unwrap();
    writeln!(out, "base:         {}", b.base).unwrap();
    writeln!(out, "phonotactics: {}", b.phonotactics).unwrap();
    writeln!(out, "ipa:          {}", b.ipa).unwrap();
    writeln!(out, "ipa (flat):   {}", b.ipa_flat).unwrap();
    writeln!(out, "syllables:    {}", divided.join(" - ")).unwrap();
    writeln!(out, "stress:       {}", categories.join(" - ")).unwrap();
    if p.overridden {
        writeln!(out, "override:     yes").unwrap();
    }
    writeln!(out, "positions:").unwrap();
    for t in &b.positions {
        writeln!(
            out,
            "  {:>2} {} syllable {} {}",
            t.phoneme_index, t.symbol, t.syllable_index, t.slot
        )
        .unwrap();
    }
    print!("{out}");
    Ok(())
}

fn convert(args: ConvertArgs) -> Result<()> {
    if args.from != ExportFormat::EspadaTsv {
        return Err(anyhow!(
            "only espada-tsv can be read (got --from {})",
            args.from
        ));
    }
    let dict = import_espada_tsv(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let ipa = match &args.ipa_table {
        Some(p) => IpaTable::load_overrides(p)?,
        None => IpaTable::default(),
    };
    match export_with(&dict, args.to, &args.out, &ipa) {
        Err(e) if e.kind() == "IoFailure" => return Err(anyhow::Error::from(e).context(Internal)),
        other => other?,
    }
    println!(
        "{} entries written to {}",
        dict.entries.len(),
        args.out.display()
    );
    Ok(())
}

fn sidecar_for(tsv: &Path) -> PathBuf {
    let name = tsv.file_name().and_then(|n| n.to_str()).unwrap_or("");
    let stem = name.strip_suffix(".tsv").unwrap_or(name);
    tsv.with_file_name(format!("{stem}.meta.json"))
}

fn print_stats(report: &StatsReport) {
    println!("total entries: {}", report.total);
    println!("countries:");
    for (country, n) in &report.per_country {
        println!("  {country}\t{n}");
    }
    println!("mean per country: {:.2}", report.mean_per_country);
    println!("parts of speech:");
    for (pos, n) in &report.per_pos {
        println!("  {pos}\t{n}");
    }
    if report.unlabeled > 0 {
        println!("  (none)\t{}", report.unlabeled);
    }
}

fn stats_cmd(args: StatsArgs) -> Result<()> {
    let tsv = if args.input.is_dir() {
        args.input.join(format!("{}.tsv", args.name))
    } else {
        args.input.clone()
    };
    let mut dict = import_espada_tsv(&tsv).with_context(|| format!("reading {}", tsv.display()))?;
    let meta = sidecar_for(&tsv);
    if meta.exists() {
        dict.apply_sidecar(&Sidecar::read(&meta)?);
    } else {
        eprintln!(
            "warning: no {} sidecar; countries reported as {GENERIC}",
            meta.display()
        );
    }
    print_stats(&stats(&dict));
    Ok(())
}

fn presets_cmd(args: PresetListArgs) -> Result<()> {
    let table = match &args.presets_file {
        Some(p) => PresetTable::load(p)?,
        None => PresetTable::default(),
    };
    for preset in table.iter() {
        let fields: Vec<String> = preset
            .config
            .entries()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        println!("{}\t{}", preset.name, fields.join(" "));
        if !preset.countries.is_empty() {
            let countries: Vec<&str> = preset.countries.iter().map(String::as_str).collect();
            println!("\tcountries: {}", countries.join(", "));
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Build(a) => build(a),
        Command::Lookup(a) => lookup(a),
        Command::Convert(a) => convert(a),
        Command::Stats(a) => stats_cmd(a),
        Command::Presets(a) => presets_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.downcast_ref::<Internal>().is_some() => {
            eprintln!("{e:#}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
