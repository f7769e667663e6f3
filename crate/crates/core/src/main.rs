use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use finbasis::check::{run_checks, CheckOptions, RunReport, Stage, MAX_EXHAUSTIVE_SIZE};
use finbasis::cover::{finite_cover, minimum_cover, Family};
use finbasis::dot::{completion_to_dot, poset_to_dot, write_dot};
use finbasis::dsl::{parse_family, parse_spec, SpecDocument};
use finbasis::order::DEFAULT_MAX_CARRIER;
use finbasis::subset::{Subset, MAX_WIDTH};
use finbasis::{build_completion, Basis};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "finbasis", version, about = "Finitary bases, ideals and ideal completions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the poset axioms and the finitary basis condition.
    Validate(SpecArgs),
    /// List every ideal of the basis.
    Ideals(SpecArgs),
    /// Build the ideal completion.
    Complete(SpecArgs),
    /// Run the full theorem battery.
    Check(SpecArgs),
    /// Extract a finite covering subfamily from a family document.
    Cover(CoverArgs),
    /// Write the Hasse diagram of the poset or its completion.
    ExportDot(DotArgs),
}

#[derive(Args)]
struct CommonFlags {
    /// Apply reflexive-transitive closure even when the spec file says `mode strict`.
    #[arg(long)]
    closure: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_CARRIER)]
    max_carrier: usize,
    /// Seed for the randomized suite and for sampling large subset spaces.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also sweep every labeled poset up to this size (0 = off).
    #[arg(long, default_value_t = 0)]
    exhaustive_size: usize,
}

#[derive(Args)]
struct SpecArgs {
    spec: PathBuf,
    #[command(flatten)]
    flags: CommonFlags,
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct CoverArgs {
    family: PathBuf,
    /// Search for a cover of least cardinality instead of first-match.
    #[arg(long)]
    minimal: bool,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct DotArgs {
    spec: PathBuf,
    #[command(flatten)]
    flags: CommonFlags,
    /// Export the ideal completion instead of the poset.
    #[arg(long)]
    completion: bool,
    /// Output path; standard output when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

/// A failure that ends the run with a given exit code.
struct Exit {
    code: u8,
    message: String,
}

impl Exit {
    fn usage(message: impl Into<String>) -> Self {
        Exit {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(path: &Path, err: impl std::fmt::Display) -> Self {
        Exit {
            code: EXIT_IO,
            message: format!("{}: {err}", path.display()),
        }
    }

    fn failed(message: impl Into<String>) -> Self {
        Exit {
            code: EXIT_CHECK_FAILED,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(exit) => {
            if !exit.message.is_empty() {
                eprintln!("finbasis: {}", exit.message);
            }
            ExitCode::from(exit.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Exit> {
    match cli.command {
        Command::Validate(args) => spec_command(args, Stage::Validate),
        Command::Ideals(args) => spec_command(args, Stage::Ideals),
        Command::Complete(args) => spec_command(args, Stage::Complete),
        Command::Check(args) => spec_command(args, Stage::Check),
        Command::Cover(args) => cover_command(args),
        Command::ExportDot(args) => dot_command(args),
    }
}

fn read(path: &Path) -> Result<String, Exit> {
    fs::read_to_string(path).map_err(|e| Exit::io(path, e))
}

fn write(path: &Path, text: &str) -> Result<(), Exit> {
    fs::write(path, text).map_err(|e| Exit::io(path, e))
}

fn load_spec(path: &Path) -> Result<SpecDocument, Exit> {
    let text = read(path)?;
    parse_spec(&text).map_err(|e| Exit::usage(format!("{}:{e}", path.display())))
}

fn options(flags: &CommonFlags) -> Result<CheckOptions, Exit> {
    if flags.max_carrier > MAX_WIDTH {
        return Err(Exit::usage(format!("--max-carrier cannot exceed {MAX_WIDTH}")));
    }
    if flags.exhaustive_size > MAX_EXHAUSTIVE_SIZE {
        return Err(Exit::usage(format!(
            "--exhaustive-size cannot exceed {MAX_EXHAUSTIVE_SIZE}"
        )));
    }
    Ok(CheckOptions {
        force_closure: flags.closure,
        max_carrier: flags.max_carrier,
        seed: flags.seed,
        exhaustive_size: flags.exhaustive_size,
    })
}

fn spec_command(args: SpecArgs, stage: Stage) -> Result<(), Exit> {
    let spec = load_spec(&args.spec)?;
    let options = options(&args.flags)?;
    let report: RunReport = run_checks(&spec, &options, stage);
    print!("{}", report.summary());
    if let Some(path) = &args.report {
        write(path, &report.to_json())?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Exit::failed(""))
    }
}

#[derive(Serialize)]
struct CoverReport {
    family: Vec<Vec<String>>,
    target: Vec<String>,
    minimal: bool,
    covered: bool,
    subfamily: Vec<Vec<String>>,
    assignment: BTreeMap<String, Vec<String>>,
    uncovered: Option<String>,
}

fn cover_command(args: CoverArgs) -> Result<(), Exit> {
    let text = read(&args.family)?;
    let doc = parse_family(&text).map_err(|e| Exit::usage(format!("{}:{e}", args.family.display())))?;

    let ground: Vec<String> = doc
        .sets
        .iter()
        .flatten()
        .chain(&doc.target)
        .map(ToString::to_string)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if ground.len() > MAX_WIDTH {
        return Err(Exit::usage(format!(
            "family mentions {} elements, above the limit of {MAX_WIDTH}",
            ground.len()
        )));
    }
    let index = |name: &str| ground.binary_search_by(|g| g.as_str().cmp(name)).expect("in ground");
    let to_subset = |names: &[finbasis::Element]| -> Subset { names.iter().map(|e| index(e.as_str())).collect() };
    let names = |s: Subset| -> Vec<String> { s.iter().map(|i| ground[i].clone()).collect() };

    let family = Family::new(doc.sets.iter().map(|s| to_subset(s)));
    let target = to_subset(&doc.target);
    let result = if args.minimal {
        minimum_cover(&family, target)
    } else {
        finite_cover(&family, target)
    };

    let mut report = CoverReport {
        family: family.sets().iter().map(|&s| names(s)).collect(),
        target: names(target),
        minimal: args.minimal,
        covered: result.is_ok(),
        subfamily: Vec::new(),
        assignment: BTreeMap::new(),
        uncovered: None,
    };
    match &result {
        Ok(w) => {
            report.subfamily = w.subfamily.sets().iter().map(|&s| names(s)).collect();
            report.assignment = w
                .assignment
                .iter()
                .map(|(&x, &s)| (ground[x].clone(), names(s)))
                .collect();
            println!("cover of {{{}}}: {} sets", report.target.join(","), report.subfamily.len());
            for (x, s) in &report.assignment {
                println!("  {x} in {{{}}}", s.join(","));
            }
        }
        Err(e) => {
            report.uncovered = Some(ground[e.0].clone());
            println!("not covered: {} lies in no set", ground[e.0]);
        }
    }
    if let Some(path) = &args.report {
        let value = serde_json::to_value(&report).expect("report serializes");
        let mut json = serde_json::to_string_pretty(&value).expect("value serializes");
        json.push('\n');
        write(path, &json)?;
    }
    match result {
        Ok(_) => Ok(()),
        Err(_) => Err(Exit::failed("")),
    }
}

fn dot_command(args: DotArgs) -> Result<(), Exit> {
    let spec = load_spec(&args.spec)?;
    let options = options(&args.flags)?;
    let poset = spec
        .poset(options.force_closure, options.max_carrier)
        .map_err(|e| Exit::failed(e.to_string()))?;
    let dot = if args.completion {
        let b = match &spec.basis_subset {
            Some(names) => poset
                .subset(names.iter().map(|e| e.as_str()))
                .map_err(|e| Exit::failed(e.to_string()))?,
            None => poset.carrier(),
        };
        let basis = Basis::new(&poset, b).map_err(|e| Exit::failed(e.to_string()))?;
        let completion = build_completion(&basis).map_err(|e| Exit::failed(e.to_string()))?;
        completion_to_dot(&format!("{}_completion", spec.name), &completion)
    } else {
        poset_to_dot(&spec.name, &poset)
    };
    match &args.output {
        Some(path) => write_dot(path, &dot).map_err(|e| Exit {
            code: EXIT_IO,
            message: e.to_string(),
        }),
        None => {
            print!("{dot}");
            Ok(())
        }
    }
}
