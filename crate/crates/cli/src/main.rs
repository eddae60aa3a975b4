//! `adjaudit` — corpus generation, audit orchestration, and reporting
//! for the finite presheaf engine.
//!
//! Exit codes for audit commands follow the suite policy: 0 when every
//! check passes, 1 when any check fails, 2 when nothing fails but some
//! check is inconclusive; skipped checks are listed and never affect the
//! code. Usage and input errors exit 3 so they stay distinguishable from
//! audit verdicts. Non-audit commands (`gen`, `triangulate`, `cubify`,
//! `lift`, `fibrancy`, `homology`) exit 0 on success; their verdicts are
//! in the output, not the exit code.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use adjaudit_core::bases::dedekind_cubes;
use adjaudit_core::corpus::{gen_corpus, CorpusSpec};
use adjaudit_core::functor::{CatObject, Functor};
use adjaudit_core::homology::homology;
use adjaudit_core::io::{
    base_to_ref, corpus_to_doc, map_from_json, map_to_doc, report_from_json, space_from_json,
    space_to_doc, to_json, BaseRef,
};
use adjaudit_core::lifting::has_lift;
use adjaudit_core::modelaudit::{fibration_approx, GeneratorSet};
use adjaudit_core::presheaf::{Presheaf, PresheafMap};
use adjaudit_core::report::SuiteReport;
use adjaudit_core::suites::{
    default_battery_names, registry, run_suite, SuiteConfig,
};
use adjaudit_core::weqoracle::OracleMode;

#[derive(Parser)]
#[command(
    name = "adjaudit",
    version,
    about = "Audit adjoint strings between finite presheaf categories",
    long_about = "Generates deterministic corpora of finite presheaves, runs exhaustive \
                  audits of the shipped adjoint strings (triangle identities, adjunction \
                  exactness, fully-faithfulness, idempotency, induced class behavior), and \
                  works with single objects and maps stored as versioned JSON.\n\n\
                  Audit exit codes: 0 all pass, 1 some failure, 2 inconclusive only. \
                  Usage and input errors exit 3."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args, Clone, Debug, Default)]
struct CommonOpts {
    /// Root seed for all generated corpora.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Objects per generated corpus.
    #[arg(long, global = true)]
    corpus_size: Option<usize>,
    /// Cell budget per level during corpus growth.
    #[arg(long, global = true)]
    max_cells: Option<u32>,
    /// Truncation level for chain and product bases.
    #[arg(long, global = true)]
    trunc_level: Option<usize>,
    /// Truncation level for cube bases.
    #[arg(long, global = true)]
    cube_level: Option<usize>,
    /// Level for fibration approximations.
    #[arg(long, global = true)]
    fibration_level: Option<usize>,
    /// Weak-equivalence oracle: iso | homology | homotopy-search.
    #[arg(long, global = true)]
    oracle: Option<String>,
    /// Output format for reports and results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl Default for Format {
    fn default() -> Self {
        Format::Text
    }
}

impl CommonOpts {
    fn config(&self) -> Result<SuiteConfig> {
        let mut cfg = SuiteConfig::default();
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.corpus_size {
            cfg.corpus_size = v;
        }
        if let Some(v) = self.max_cells {
            cfg.max_cells = v;
        }
        if let Some(v) = self.trunc_level {
            cfg.trunc_level = v;
        }
        if let Some(v) = self.cube_level {
            cfg.cube_level = v;
        }
        if let Some(v) = self.fibration_level {
            cfg.fibration_level = v;
        }
        if let Some(name) = &self.oracle {
            cfg.oracle = OracleMode::parse(name)?;
        }
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a deterministic corpus over a named base and write it as JSON.
    Gen {
        /// Base category, e.g. `simplex:2`, `cube:2`, `cube-conn:2`, `bisimplex:2`.
        #[arg(long)]
        base: String,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run audit suites against the shipped adjoint strings.
    Audit {
        #[command(subcommand)]
        what: AuditCmd,
    },
    /// Triangulate a cubical object file into a simplicial object file.
    Triangulate {
        /// Input object over a `cube:K` base.
        input: PathBuf,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cubify a simplicial object file into a cubical object file.
    Cubify {
        /// Input object over a `simplex:N` base.
        input: PathBuf,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve one lifting square i ⧄ p given four map files.
    Lift {
        /// The map lifted against (typically a monomorphism).
        #[arg(long)]
        left: PathBuf,
        /// The map lifted through.
        #[arg(long)]
        right: PathBuf,
        /// Top of the square: left.source → right.source.
        #[arg(long)]
        top: PathBuf,
        /// Bottom of the square: left.target → right.target.
        #[arg(long)]
        bottom: PathBuf,
    },
    /// Check horn-filling of an object up to a level.
    Fibrancy {
        /// Input object over a chain base `simplex:N`.
        input: PathBuf,
        /// Highest horn dimension to test (defaults to --fibration-level).
        #[arg(long)]
        level: Option<usize>,
        /// Test against all horns instead of inner horns only.
        #[arg(long)]
        all_horns: bool,
    },
    /// Integral homology of a simplicial object file.
    Homology {
        /// Input object over a chain base `simplex:N`.
        input: PathBuf,
    },
    /// Re-render a stored audit report and exit with its code.
    Report {
        /// A report file produced with `--format json`.
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum AuditCmd {
    /// Audit one adjoint string, or `all` for the default battery.
    String {
        /// One of: row-degree-zero, cube-inclusion, marked, triangulation, all.
        which: String,
        /// Also run the deliberately corrupted unit (must fail, exit 1).
        #[arg(long)]
        with_negative_control: bool,
        /// Include checks that record known refutations and are therefore
        /// excluded from default runs.
        #[arg(long)]
        include_recorded_failures: bool,
    },
    /// Audit induced class behavior: mono containment and fibration
    /// approximation consistency.
    Classes,
    /// Run explicitly named checks; `--list` shows every registered name.
    Checks {
        names: Vec<String>,
        /// List registered checks and whether the default battery runs them.
        #[arg(long)]
        list: bool,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            3
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32> {
    let cfg = cli.common.config()?;
    let format = cli.common.format;
    match cli.command {
        Command::Gen { base, out } => cmd_gen(&cfg, &base, out.as_deref()),
        Command::Audit { what } => cmd_audit(&cfg, format, what),
        Command::Triangulate { input, out } => cmd_triangulate(&cfg, &input, out.as_deref()),
        Command::Cubify { input, out } => cmd_cubify(&cfg, &input, out.as_deref()),
        Command::Lift {
            left,
            right,
            top,
            bottom,
        } => cmd_lift(format, &left, &right, &top, &bottom),
        Command::Fibrancy {
            input,
            level,
            all_horns,
        } => cmd_fibrancy(&cfg, format, &input, level, all_horns),
        Command::Homology { input } => cmd_homology(format, &input),
        Command::Report { input } => cmd_report(format, &input),
    }
}

fn emit(out: Option<&Path>, payload: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, payload).with_context(|| format!("writing {}", path.display()))?;
            Ok(())
        }
        None => {
            println!("{payload}");
            Ok(())
        }
    }
}

fn read_input(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn cmd_gen(cfg: &SuiteConfig, base: &str, out: Option<&Path>) -> Result<i32> {
    let max_level = if base.starts_with("cube") {
        cfg.cube_level
    } else {
        cfg.trunc_level
    };
    let spec = CorpusSpec {
        base: base.to_string(),
        object_count: cfg.corpus_size,
        max_cells: cfg.max_cells,
        max_level,
        seed: cfg.seed,
    };
    let corpus = gen_corpus(&spec)?;
    let payload = to_json(&corpus_to_doc(&corpus))?;
    emit(out, &payload)?;
    if out.is_some() {
        eprintln!(
            "generated {} objects and {} monomorphisms over `{}` (seed {})",
            corpus.objects.len(),
            corpus.monos.len(),
            base,
            cfg.seed
        );
    }
    Ok(0)
}

fn render_suite(report: &SuiteReport, format: Format) -> Result<i32> {
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => println!("{}", to_json(report)?),
    }
    Ok(report.exit_code())
}

fn cmd_audit(cfg: &SuiteConfig, format: Format, what: AuditCmd) -> Result<i32> {
    let names: Vec<String> = match what {
        AuditCmd::String {
            which,
            with_negative_control,
            include_recorded_failures,
        } => {
            let mut names: Vec<String> = if which == "all" {
                default_battery_names()
                    .into_iter()
                    .map(str::to_string)
                    .collect()
            } else {
                let suffix = format!(":{which}");
                registry()
                    .into_iter()
                    .filter(|d| d.name.ends_with(&suffix))
                    .filter(|d| d.default_battery || include_recorded_failures)
                    .map(|d| d.name.to_string())
                    .collect()
            };
            if names.is_empty() {
                bail!(
                    "unknown string `{which}`; expected one of: row-degree-zero, \
                     cube-inclusion, marked, triangulation, all"
                );
            }
            if with_negative_control {
                names.push("negative-control:corrupted-unit".to_string());
            }
            names
        }
        AuditCmd::Classes => registry()
            .into_iter()
            .filter(|d| d.name == "mono-containment" || d.name.starts_with("fibration-consistency:"))
            .map(|d| d.name.to_string())
            .collect(),
        AuditCmd::Checks { names, list } => {
            if list {
                for d in registry() {
                    let marker = if d.default_battery { "default" } else { "on request" };
                    println!("{:<40} [{marker}]", d.name);
                }
                return Ok(0);
            }
            names
        }
    };
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let report = run_suite(&name_refs, cfg)?;
    render_suite(&report, format)
}

fn cmd_triangulate(cfg: &SuiteConfig, input: &Path, out: Option<&Path>) -> Result<i32> {
    let x = space_from_json(&read_input(input)?)?;
    match base_to_ref(x.base()) {
        BaseRef::Named(n) if n.starts_with("cube:") => {}
        _ => bail!(
            "triangulation expects an object over the plain cube base `cube:K`, got `{}`",
            x.base().name()
        ),
    }
    let f = Functor::Triangulate {
        cube: x.base().clone(),
        simp: adjaudit_core::bases::simplex(cfg.trunc_level),
    };
    let y = match f.on_object(&CatObject::Space(x))? {
        CatObject::Space(y) => y,
        CatObject::Marked(_) => unreachable!("triangulation produces a plain object"),
    };
    emit(out, &to_json(&space_to_doc(&y))?)?;
    Ok(0)
}

fn cmd_cubify(cfg: &SuiteConfig, input: &Path, out: Option<&Path>) -> Result<i32> {
    let x = space_from_json(&read_input(input)?)?;
    match base_to_ref(x.base()) {
        BaseRef::Named(n) if n.starts_with("simplex:") => {}
        _ => bail!(
            "cubification expects an object over a chain base `simplex:N`, got `{}`",
            x.base().name()
        ),
    }
    let f = Functor::Cubify {
        simp: x.base().clone(),
        cube: dedekind_cubes(cfg.cube_level),
    };
    let y = match f.on_object(&CatObject::Space(x))? {
        CatObject::Space(y) => y,
        CatObject::Marked(_) => unreachable!("cubification produces a plain object"),
    };
    emit(out, &to_json(&space_to_doc(&y))?)?;
    Ok(0)
}

fn cmd_lift(format: Format, left: &Path, right: &Path, top: &Path, bottom: &Path) -> Result<i32> {
    let i = map_from_json(&read_input(left)?)?;
    let p = map_from_json(&read_input(right)?)?;
    let f = map_from_json(&read_input(top)?)?;
    let g = map_from_json(&read_input(bottom)?)?;
    let diagonal = has_lift(&i, &p, &f, &g)?;
    match format {
        Format::Text => match &diagonal {
            Some(h) => println!(
                "a diagonal filler exists: {} → {}",
                h.source.name(),
                h.target.name()
            ),
            None => println!("no diagonal filler exists"),
        },
        Format::Json => {
            let payload = json!({
                "format": "lift-result/1",
                "exists": diagonal.is_some(),
                "diagonal": diagonal.as_ref().map(map_to_doc),
            });
            println!("{}", serde_json::to_string_pretty(&payload)?);
        }
    }
    Ok(0)
}

fn terminal_map(x: &Arc<Presheaf>) -> Result<PresheafMap> {
    let base = x.base().clone();
    let terminal = Presheaf::terminal(base.clone());
    let components = base.objects().map(|o| vec![0u32; x.cells(o) as usize]).collect();
    Ok(PresheafMap::new(x.clone(), terminal, components)?)
}

fn cmd_fibrancy(
    cfg: &SuiteConfig,
    format: Format,
    input: &Path,
    level: Option<usize>,
    all_horns: bool,
) -> Result<i32> {
    let x = space_from_json(&read_input(input)?)?;
    let gens = if all_horns {
        GeneratorSet::all_horns(x.base().clone())
    } else {
        GeneratorSet::inner_horns(x.base().clone())
    };
    let level = level.unwrap_or(cfg.fibration_level);
    let p = terminal_map(&x)?;
    let verdict = fibration_approx(&p, &gens, level)?;
    match format {
        Format::Text => {
            if verdict.holds {
                println!(
                    "`{}` fills every {} up to level {}",
                    x.name(),
                    gens.describe(),
                    verdict.level
                );
            } else {
                println!(
                    "`{}` has an unfilled horn: {}",
                    x.name(),
                    verdict
                        .failed_against
                        .as_deref()
                        .unwrap_or("(no generator recorded)")
                );
            }
        }
        Format::Json => {
            let payload = json!({
                "format": "fibrancy/1",
                "object": x.name(),
                "generators": gens.describe(),
                "level": verdict.level,
                "holds": verdict.holds,
                "failed_against": verdict.failed_against,
            });
            println!("{}", serde_json::to_string_pretty(&payload)?);
        }
    }
    Ok(0)
}

fn cmd_homology(format: Format, input: &Path) -> Result<i32> {
    let x = space_from_json(&read_input(input)?)?;
    let h = homology(&x)?;
    match format {
        Format::Text => {
            for (k, b) in h.betti.iter().enumerate() {
                let tors: Vec<String> = h.torsion[k].iter().map(|d| format!("Z/{d}")).collect();
                let free = format!("Z^{b}");
                let line = if tors.is_empty() {
                    free
                } else {
                    format!("{free} ⊕ {}", tors.join(" ⊕ "))
                };
                let tag = if k < h.reliable_degrees {
                    ""
                } else {
                    "  (unreliable: at the truncation boundary)"
                };
                println!("H_{k}(`{}`) = {line}{tag}", x.name());
            }
        }
        Format::Json => {
            let payload = json!({
                "format": "homology/1",
                "object": x.name(),
                "betti": h.betti,
                "torsion": h.torsion
                    .iter()
                    .map(|ds| ds.iter().map(|d| d.to_string()).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "reliable_degrees": h.reliable_degrees,
            });
            println!("{}", serde_json::to_string_pretty(&payload)?);
        }
    }
    Ok(0)
}

fn cmd_report(format: Format, input: &Path) -> Result<i32> {
    let report = report_from_json(&read_input(input)?)?;
    render_suite(&report, format)
}
