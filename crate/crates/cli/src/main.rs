mod cache;
mod system;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use indpro::defsets::{bundled, parse_structure, DefCategory, Definability, DEFAULT_ARITY_CAP, DEFAULT_HOM_CAP};
use indpro::verify::{run_suite, Report, VerifyConfig, SUITES};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "indpro", version, about = "Ind- and pro-definable sets over finite structures")]
struct Cli {
    /// Bundled structure name (S1, S2, S3) or a structure file. Repeatable;
    /// defaults to the bundled structures.
    #[arg(long = "structure", global = true)]
    structures: Vec<String>,
    /// Arity of the listing for `enumerate`; arity bound of d(M) for `verify`.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    arity: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest Hom-set enumerated between two definable sets.
    #[arg(long = "cap-hom", global = true, default_value_t = DEFAULT_HOM_CAP, value_parser = positive)]
    cap_hom: usize,
    /// Largest tuple arity considered.
    #[arg(long = "cap-arity", global = true, default_value_t = DEFAULT_ARITY_CAP, value_parser = positive)]
    cap_arity: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for cached automorphism groups, orbits and Hom tables.
    #[arg(long = "cache-dir", global = true, env = "INDPRO_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// List the definable sets of one arity with their orbits.
    Enumerate,
    /// List the points of an ind- or pro-system read from a file.
    Points { file: PathBuf },
    /// Run a named verification suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// Input problems map to exit code 2, failed checks to 1.
enum Failure {
    Input(anyhow::Error),
    Checks,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

struct Loaded {
    name: String,
    text: String,
    cat: Arc<DefCategory>,
}

fn load_structures(cli: &Cli) -> Result<Vec<Loaded>> {
    let args: Vec<String> = if cli.structures.is_empty() {
        bundled::ALL.iter().map(|(n, _)| n.to_string()).collect()
    } else {
        cli.structures.clone()
    };
    args
        .iter()
        .map(|arg| {
            let (name, text) = match bundled::by_name(arg) {
                Some(text) => (arg.clone(), text.to_string()),
                None => {
                    let path = Path::new(arg);
                    let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
                    let name = path.file_stem().map_or(arg.clone(), |s| s.to_string_lossy().into_owned());
                    (name, text)
                }
            };
            let structure = parse_structure(&text).with_context(|| format!("structure {arg}"))?;
            let key = cache::key(&text, cli.cap_arity, cli.cap_hom);
            let cached = cli
                .cache_dir
                .as_deref()
                .and_then(|d| cache::Cache::new(d).load(&key, &structure, cli.cap_arity, cli.cap_hom));
            let cat = cached.unwrap_or_else(|| {
                DefCategory::new(Definability::new(structure).with_arity_cap(cli.cap_arity)).with_hom_cap(cli.cap_hom)
            });
            Ok(Loaded {
                name,
                text,
                cat: Arc::new(cat),
            })
        })
        .collect()
}

fn store_caches(cli: &Cli, loaded: &[Loaded]) -> Result<()> {
    if let Some(dir) = &cli.cache_dir {
        let c = cache::Cache::new(dir);
        for l in loaded {
            c.store(&cache::key(&l.text, cli.cap_arity, cli.cap_hom), &l.cat)?;
        }
    }
    Ok(())
}

fn print_records<T: Serialize>(records: &[T]) -> Result<()> {
    for r in records {
        println!("{}", serde_json::to_string(r)?);
    }
    Ok(())
}

#[derive(Serialize)]
struct SetRecord<'a> {
    structure: &'a str,
    id: String,
    arity: usize,
    size: usize,
    orbits: Vec<usize>,
    members: Vec<String>,
}

fn enumerate(cli: &Cli, loaded: &[Loaded]) -> Result<()> {
    let arity = cli.arity as usize;
    let mut records = Vec::new();
    for l in loaded {
        let sets = l.cat.enumerate(arity).with_context(|| format!("structure {}", l.name))?;
        for x in &sets {
            records.push(SetRecord {
                structure: &l.name,
                id: l.cat.canonical_id(x)?,
                arity,
                size: x.len(),
                orbits: l.cat.orbit_decomposition(x)?,
                members: x.members().iter().map(|&c| l.cat.tuple_label(c, arity)).collect(),
            });
        }
    }
    match cli.format {
        Format::Records => print_records(&records)?,
        Format::Text => {
            for l in loaded {
                let mine: Vec<_> = records.iter().filter(|r| r.structure == l.name).collect();
                println!("{} arity {}: {} definable sets", l.name, arity, mine.len());
                for r in mine {
                    let orbits: Vec<String> = r.orbits.iter().map(usize::to_string).collect();
                    println!(
                        "  {:<12} size={:<3} orbits=[{}] {{{}}}",
                        r.id,
                        r.size,
                        orbits.join(","),
                        r.members.join(" ")
                    );
                }
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct PointRecord<'a> {
    structure: &'a str,
    point: usize,
    label: &'a str,
    detail: &'a str,
}

fn points(cli: &Cli, loaded: &[Loaded], file: &Path) -> Result<()> {
    let [l] = loaded else {
        bail!("`points` takes exactly one --structure");
    };
    let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let sys = system::parse(&text).with_context(|| format!("system file {}", file.display()))?;
    let pts = system::evaluate(&l.cat, &sys)?;
    match cli.format {
        Format::Records => {
            let records: Vec<_> = pts
                .iter()
                .enumerate()
                .map(|(k, p)| PointRecord {
                    structure: &l.name,
                    point: k,
                    label: &p.label,
                    detail: &p.detail,
                })
                .collect();
            print_records(&records)?;
        }
        Format::Text => {
            println!("{}: {} points", l.name, pts.len());
            for (k, p) in pts.iter().enumerate() {
                println!("  {k:<4} {:<12} {}", p.label, p.detail);
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckRecord<'a> {
    suite: &'a str,
    check: &'a str,
    status: &'static str,
    fields: BTreeMap<&'a str, &'a str>,
}

fn print_report(format: Format, report: &Report) -> Result<()> {
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Records => {
            let records: Vec<_> = report
                .checks
                .iter()
                .map(|c| CheckRecord {
                    suite: &report.suite,
                    check: &c.name,
                    status: if c.passed { "PASS" } else { "FAIL" },
                    fields: c.fields.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect(),
                })
                .collect();
            print_records(&records)?;
            let passed = report.checks.iter().filter(|c| c.passed).count().to_string();
            let total = report.checks.len().to_string();
            print_records(&[CheckRecord {
                suite: &report.suite,
                check: "summary",
                status: if report.passed() { "PASS" } else { "FAIL" },
                fields: BTreeMap::from([("passed", passed.as_str()), ("total", total.as_str())]),
            }])?;
        }
    }
    Ok(())
}

fn verify(cli: &Cli, loaded: &[Loaded], suite: &str) -> Result<bool> {
    let mut config = VerifyConfig::new(loaded.iter().map(|l| (l.name.clone(), l.cat.clone())).collect());
    config.seed = cli.seed;
    config.arity_bound = cli.arity as usize;
    let report = run_suite(suite, &config).map_err(|e| anyhow!(e))?;
    print_report(cli.format, &report)?;
    Ok(report.passed())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let loaded = load_structures(cli)?;
    let passed = match &cli.command {
        Command::Enumerate => enumerate(cli, &loaded).map(|_| true)?,
        Command::Points { file } => points(cli, &loaded, file).map(|_| true)?,
        Command::Verify { suite } => verify(cli, &loaded, suite)?,
    };
    store_caches(cli, &loaded)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
