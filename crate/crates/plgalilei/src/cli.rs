//! Command-line front end: list the catalog, run verification suites, apply
//! automorphisms to parameter files, and export machine-readable data.
//!
//! Exit code 0 means every residual in the run was exactly zero; any nonzero
//! residual (including the deliberate negative controls) exits 1, and usage
//! errors exit 2.

use crate::automorphism::{apply_word, rotation_from_cayley, AutomorphismElement};
use crate::bialgebra::{dual_constants_nonzero, dual_structure_constants};
use crate::bracket::bracket_table_closed;
use crate::catalog::{
    canonical_entry, canonical_params, catalog_export, family_params, family_spec, r_matrix,
    sample_family, sample_row, Assignments, FamilyId, ENTRIES, FAMILIES,
};
use crate::eta::EtaParameters;
use crate::group::GroupElement;
use crate::rng::SampleRng;
use crate::scalar::Scalar;
use crate::verify::{
    control_report, render_json, render_text, verify_all, verify_params, with_jobs, Report,
    RunConfig,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "plgalilei",
    about = "Exact verification of the Poisson-Lie structures on the ten-parameter Galilei group"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Worker count: `auto` or a positive integer.
#[derive(Clone, Copy, Debug)]
struct Jobs(Option<usize>);

impl FromStr for Jobs {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            Ok(Jobs(None))
        } else {
            s.parse::<usize>()
                .map_err(|_| format!("expected 'auto' or a worker count, got {s:?}"))
                .and_then(|n| {
                    if n == 0 {
                        Err("worker count must be positive".into())
                    } else {
                        Ok(Jobs(Some(n)))
                    }
                })
        }
    }
}

#[derive(Args, Clone)]
struct ConfigArgs {
    /// Master seed for all randomized draws
    #[arg(long, env = "PLGALILEI_SEED", default_value_t = 0)]
    seed: u64,
    /// Random samples per identity check
    #[arg(long, default_value_t = 100)]
    samples: u64,
    /// Bound on the numerators/denominators of random group coordinates
    #[arg(long, default_value_t = 8)]
    bound: i64,
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads ('auto' or a count); never affects report bytes
    #[arg(long, default_value = "auto")]
    jobs: Jobs,
}

impl ConfigArgs {
    fn run_config(&self) -> RunConfig {
        RunConfig { seed: self.seed, samples: self.samples, bound: self.bound }
    }
}

#[derive(Args, Clone)]
struct TargetArgs {
    /// A family identifier (I-XVIII)
    #[arg(long, conflicts_with_all = ["canonical", "file"])]
    family: Option<String>,
    /// A canonical table row: a number 1-52, 'GROUP:ROW', 'VIIIa' or 'VIIIb'
    #[arg(long, conflicts_with = "file")]
    canonical: Option<String>,
    /// A JSON parameters file
    #[arg(long)]
    file: Option<PathBuf>,
    /// Free-parameter assignment 'name=p/q' or vector 'name=x,y,z'; repeatable
    #[arg(long = "set", value_name = "NAME=VALUE")]
    set: Vec<String>,
    /// Draw N random admissible assignments instead of --set values
    #[arg(long, conflicts_with = "set")]
    random: Option<u64>,
    /// Sign variant for canonical rows that admit one
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    sign: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Print the families and canonical rows with parameters and constraints
    List {
        /// Restrict to one family identifier
        #[arg(long)]
        family: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the full identity suite on one target
    Verify {
        #[command(flatten)]
        target: TargetArgs,
        /// Run a documented negative control instead of a target
        #[arg(long, conflicts_with_all = ["family", "canonical", "file"])]
        control: Option<String>,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Run the identity suite on every family and every canonical row
    VerifyAll {
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Apply automorphisms to a parameters file
    Act {
        /// Input JSON parameters file
        #[arg(long)]
        input: PathBuf,
        /// Output file (stdout when omitted)
        #[arg(long)]
        output: Option<PathBuf>,
        /// Boost action, 'x,y,z'
        #[arg(long, allow_hyphen_values = true)]
        boost: Option<String>,
        /// Space-translation action, 'x,y,z'
        #[arg(long, allow_hyphen_values = true)]
        space: Option<String>,
        /// Time-translation action, a rational
        #[arg(long, allow_hyphen_values = true)]
        time: Option<String>,
        /// Rotation action as Cayley parameters 's1,s2,s3'
        #[arg(long, allow_hyphen_values = true)]
        rotation: Option<String>,
        /// Scaling action 'a,b' (space unit by a, time unit by b)
        #[arg(long, allow_hyphen_values = true)]
        scaling: Option<String>,
        /// Rerun the verification suite on the transformed parameters
        #[arg(long)]
        reverify: bool,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Write machine-readable JSON data
    Export {
        /// What to export
        #[arg(value_enum)]
        what: ExportKind,
        #[command(flatten)]
        target: TargetArgs,
        /// Group point file (JSON), required for bracket-table
        #[arg(long)]
        point: Option<PathBuf>,
        /// Output file (stdout when omitted)
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        config: ConfigArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum ExportKind {
    Catalog,
    DualConstants,
    BracketTable,
    RMatrix,
}

fn parse_scalar(s: &str) -> Result<Scalar, String> {
    s.parse::<Scalar>().map_err(|e| e.to_string())
}

fn parse_vec3(s: &str) -> Result<[Scalar; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated rationals, got {s:?}"));
    }
    Ok([
        parse_scalar(parts[0])?,
        parse_scalar(parts[1])?,
        parse_scalar(parts[2])?,
    ])
}

/// Parse `--set` flags into named assignments; a comma-separated value
/// expands into the three suffixed components of a vector parameter.
fn parse_assignments(sets: &[String]) -> Result<Assignments, String> {
    let mut out = Assignments::new();
    for item in sets {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| format!("expected NAME=VALUE, got {item:?}"))?;
        if value.contains(',') {
            let v = parse_vec3(value)?;
            for (k, x) in v.into_iter().enumerate() {
                out.insert(format!("{name}{}", k + 1), x);
            }
        } else {
            out.insert(name.to_string(), parse_scalar(value)?);
        }
    }
    Ok(out)
}

/// Resolve a canonical-row designator: `5`, `I:5`, `VIIIa`, `VIIIb`.
fn parse_row(s: &str) -> Result<u32, String> {
    if let Ok(n) = s.parse::<u32>() {
        return Ok(n);
    }
    let (group, row) = match s.split_once(':') {
        Some((g, r)) => (g, Some(r)),
        None => (s, None),
    };
    match row {
        Some(r) => {
            let n: u32 = r.parse().map_err(|_| format!("bad row number {r:?}"))?;
            let e = canonical_entry(n).map_err(|e| e.to_string())?;
            if e.group != group {
                return Err(format!("row {n} belongs to group {}, not {group}", e.group));
            }
            Ok(n)
        }
        None => {
            let rows: Vec<u32> = ENTRIES.iter().filter(|e| e.group == group).map(|e| e.row).collect();
            match rows.as_slice() {
                [one] => Ok(*one),
                [] => Err(format!("unknown canonical target {s:?}")),
                _ => Err(format!("group {group} has several rows; use {group}:ROW")),
            }
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let data = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&data).map_err(|e| format!("cannot parse {}: {e}", path.display()))
}

fn emit(output: Option<&Path>, data: &str) -> Result<(), String> {
    match output {
        Some(p) => std::fs::write(p, data).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{data}");
            Ok(())
        }
    }
}

/// Resolve a target designator into labeled parameter sets.
fn resolve_targets(t: &TargetArgs, cfg: &RunConfig) -> Result<Vec<(String, EtaParameters)>, String> {
    if let Some(path) = &t.file {
        let p: EtaParameters = read_json(path)?;
        if !p.is_trace_gauged() {
            return Err("parameters file violates the trace gauge (sigma and chi must be traceless)".into());
        }
        return Ok(vec![(format!("file {}", path.display()), p)]);
    }
    if let Some(f) = &t.family {
        let id: FamilyId = f.parse().map_err(|e: crate::catalog::CatalogError| e.to_string())?;
        if !t.set.is_empty() {
            let asg = parse_assignments(&t.set)?;
            let p = family_params(id, &asg).map_err(|e| e.to_string())?;
            return Ok(vec![(format!("family {id}"), p)]);
        }
        let n = t.random.unwrap_or(1);
        return Ok((0..n)
            .map(|k| {
                let mut rng = SampleRng::substream(cfg.seed, 0x0400_0000_0000 + k);
                (format!("family {id} [assignment {k}]"), sample_family(id, &mut rng))
            })
            .collect());
    }
    if let Some(c) = &t.canonical {
        let row = parse_row(c)?;
        let entry = canonical_entry(row).map_err(|e| e.to_string())?;
        if !t.set.is_empty() {
            let asg = parse_assignments(&t.set)?;
            let p = canonical_params(row, t.sign, &asg).map_err(|e| e.to_string())?;
            return Ok(vec![(format!("row {row} ({})", entry.group), p)]);
        }
        let n = t.random.unwrap_or(1);
        return Ok((0..n)
            .map(|k| {
                let mut rng = SampleRng::substream(cfg.seed, 0x0500_0000_0000 + k);
                (
                    format!("row {row} ({}) [assignment {k}]", entry.group),
                    sample_row(row, t.sign, &mut rng),
                )
            })
            .collect());
    }
    Err("no target: pass --family, --canonical or --file".into())
}

fn print_report(report: &Report, format: Format) -> i32 {
    match format {
        Format::Text => print!("{}", render_text(report)),
        Format::Json => print!("{}", render_json(report)),
    }
    if report.pass {
        0
    } else {
        1
    }
}

fn list_text(filter: Option<FamilyId>) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    for f in &FAMILIES {
        if let Some(id) = filter {
            if f.id != id {
                continue;
            }
        }
        writeln!(out, "family {}", f.id).unwrap();
        writeln!(out, "  free parameters: {}", f.free_parameters.join(", ")).unwrap();
        writeln!(out, "  constraints: {}", f.constraints).unwrap();
    }
    if filter.is_none() {
        for e in &ENTRIES {
            let signs = if e.signs.len() == 1 {
                String::new()
            } else {
                format!(" signs {:?}", e.signs)
            };
            writeln!(out, "row {:2} [{}]{} (essential parameters: {})", e.row, e.group, signs, e.essential).unwrap();
            if !e.free_parameters.is_empty() {
                writeln!(out, "  free parameters: {}", e.free_parameters.join(", ")).unwrap();
            }
            writeln!(out, "  constraints: {}", e.constraints).unwrap();
        }
    }
    out
}

fn run_command(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::List { family, format } => {
            let filter = match &family {
                Some(f) => Some(
                    f.parse::<FamilyId>()
                        .map_err(|e: crate::catalog::CatalogError| e.to_string())?,
                ),
                None => None,
            };
            match format {
                Format::Text => print!("{}", list_text(filter)),
                Format::Json => {
                    let export = catalog_export();
                    match filter {
                        Some(id) => {
                            let spec = family_spec(id);
                            println!("{}", serde_json::to_string_pretty(spec).unwrap());
                        }
                        None => println!("{}", serde_json::to_string_pretty(&export).unwrap()),
                    }
                }
            }
            Ok(0)
        }
        Command::Verify { target, control, config } => {
            let cfg = config.run_config();
            if let Some(name) = control {
                let report = with_jobs(config.jobs.0, || control_report(&name, &cfg))?;
                return Ok(print_report(&report, config.format));
            }
            let targets = resolve_targets(&target, &cfg)?;
            let report = with_jobs(config.jobs.0, || {
                let suites = targets
                    .iter()
                    .enumerate()
                    .map(|(i, (label, p))| {
                        crate::verify::run_suite(label.clone(), p, &cfg, i as u64 + 1)
                    })
                    .collect::<Vec<_>>();
                let pass = suites.iter().all(|s| s.pass);
                Report { config: cfg, suites, pass }
            });
            Ok(print_report(&report, config.format))
        }
        Command::VerifyAll { config } => {
            let cfg = config.run_config();
            let report = with_jobs(config.jobs.0, || verify_all(&cfg));
            Ok(print_report(&report, config.format))
        }
        Command::Act {
            input,
            output,
            boost,
            space,
            time,
            rotation,
            scaling,
            reverify,
            config,
        } => {
            let p: EtaParameters = read_json(&input)?;
            let mut word: Vec<AutomorphismElement> = Vec::new();
            if let Some(v) = &boost {
                word.push(AutomorphismElement::Boost { v: parse_vec3(v)? });
            }
            if let Some(a) = &space {
                word.push(AutomorphismElement::SpaceTranslation { a: parse_vec3(a)? });
            }
            if let Some(t) = &time {
                word.push(AutomorphismElement::TimeTranslation { t: parse_scalar(t)? });
            }
            if let Some(s) = &rotation {
                word.push(rotation_from_cayley(&parse_vec3(s)?));
            }
            if let Some(s) = &scaling {
                let parts: Vec<&str> = s.split(',').collect();
                if parts.len() != 2 {
                    return Err(format!("expected 'a,b' scaling factors, got {s:?}"));
                }
                word.push(AutomorphismElement::Scaling {
                    a: parse_scalar(parts[0])?,
                    b: parse_scalar(parts[1])?,
                });
            }
            let q = apply_word(&p, &word).map_err(|e| e.to_string())?;
            let mut data = serde_json::to_string_pretty(&q).unwrap();
            data.push('\n');
            emit(output.as_deref(), &data)?;
            if reverify {
                let cfg = config.run_config();
                let report = with_jobs(config.jobs.0, || {
                    verify_params("transformed parameters".into(), &q, &cfg)
                });
                return Ok(print_report(&report, config.format));
            }
            Ok(0)
        }
        Command::Export { what, target, point, output, config } => {
            let cfg = config.run_config();
            let data = match what {
                ExportKind::Catalog => {
                    serde_json::to_string_pretty(&catalog_export()).unwrap()
                }
                ExportKind::DualConstants => {
                    let (_, p) = resolve_targets(&target, &cfg)?.remove(0);
                    let f = dual_structure_constants(&p);
                    serde_json::to_string_pretty(&dual_constants_nonzero(&f)).unwrap()
                }
                ExportKind::BracketTable => {
                    let (_, p) = resolve_targets(&target, &cfg)?.remove(0);
                    let path = point.ok_or("--point is required for bracket-table")?;
                    let g: GroupElement<Scalar> = read_json(&path)?;
                    let table = bracket_table_closed(&p, &g).map_err(|e| e.to_string())?;
                    serde_json::to_string_pretty(&table).unwrap()
                }
                ExportKind::RMatrix => {
                    let (_, p) = resolve_targets(&target, &cfg)?.remove(0);
                    let r = r_matrix(&p).map_err(|e| e.to_string())?;
                    serde_json::to_string_pretty(&r).unwrap()
                }
            };
            let mut data = data;
            data.push('\n');
            emit(output.as_deref(), &data)?;
            Ok(0)
        }
    }
}

/// Entry point: returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match run_command(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}
