use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use isocrit_core::isoperimetry::{atoms_with, kappa_with, SearchOptions, DEFAULT_BUDGET};
use isocrit_core::verifiers::scan::{run_scan_with, ScanCampaign};
use isocrit_core::verifiers::{reproduce_example_m5, verify_literal, Conclusion, STATEMENTS, SCHEMA_VERSION};
use isocrit_core::{Error, Group, GroupSubset};

const OK: u8 = 0;
const COUNTEREXAMPLE: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;
const NOT_SEPARABLE: u8 = 4;

#[derive(Parser)]
#[command(name = "isocrit", version, about = "Isoperimetric numbers and critical-pair checks in finite abelian groups")]
struct Cli {
    /// Node budget for each exact search.
    #[arg(long, global = true, env = "ISOCRIT_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(clap::Args)]
struct SetArgs {
    /// Group, e.g. Z7, Z7xZ11, 5x5.
    #[arg(short, long)]
    group: String,
    /// Subset literal, e.g. 0,1,3 or (0,0),(1,2).
    #[arg(short, long, allow_hyphen_values = true)]
    set: String,
    #[arg(short, long, default_value_t = 1)]
    k: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// κ_k(S) with a witness fragment.
    Kappa(SetArgs),
    /// The k-atoms of S containing 0.
    Atoms(SetArgs),
    /// Check one statement on one instance.
    Verify {
        /// Statement id, see `isocrit statements`.
        id: String,
        /// Group; not needed for statements over the integers.
        #[arg(short, long)]
        group: Option<String>,
        #[arg(short, long, allow_hyphen_values = true)]
        set: String,
        /// Second set for pair statements.
        #[arg(short, long, allow_hyphen_values = true)]
        t: Option<String>,
        /// Include the running time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Run a scan campaign described by a TOML file.
    Scan {
        config: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
        /// Resume from and append to this checkpoint file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Write records here instead of stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        shard: Option<String>,
        #[arg(long)]
        timing: bool,
    },
    /// Reproduce the m = 5 construction in Z/7 × Z/q.
    Example {
        #[arg(long)]
        q: usize,
    },
    /// List statement ids.
    Statements,
}

fn code_for(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => BUDGET,
        Error::NotSeparable { .. } => NOT_SEPARABLE,
        _ => USAGE,
    }
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn parse_set(group: &str, set: &str) -> Result<GroupSubset, Error> {
    let g = Group::parse(group)?;
    GroupSubset::parse(&g, set)
}

fn run(cli: Cli) -> Result<u8, Error> {
    let opts = SearchOptions { budget: cli.budget };
    match cli.cmd {
        Cmd::Kappa(a) => {
            let s = parse_set(&a.group, &a.set)?;
            let r = kappa_with(&s, a.k, &opts)?;
            print(&json!({
                "group": s.group().to_string(),
                "s": s.to_literal(),
                "k": a.k,
                "value": r.value,
                "separable": r.separable,
                "witness": r.witness.map(|w| w.to_literal()),
                "ambient": r.ambient.carrier().to_literal(),
            }));
            Ok(OK)
        }
        Cmd::Atoms(a) => {
            let s = parse_set(&a.group, &a.set)?;
            let r = atoms_with(&s, a.k, &opts)?;
            print(&json!({
                "group": s.group().to_string(),
                "s": s.to_literal(),
                "k": a.k,
                "value": r.value,
                "size": r.size(),
                "atoms": r.atoms.iter().map(|x| x.to_literal()).collect::<Vec<_>>(),
            }));
            Ok(OK)
        }
        Cmd::Verify { id, group, set, t, timing } => {
            let start = std::time::Instant::now();
            let mut r = verify_literal(&id, group.as_deref(), &set, t.as_deref(), &opts)?;
            r.elapsed_us = timing.then(|| start.elapsed().as_micros() as u64);
            print(&serde_json::to_value(&r).expect("json"));
            Ok(if r.is_counterexample() { COUNTEREXAMPLE } else { OK })
        }
        Cmd::Scan {
            config,
            jobs,
            checkpoint,
            out,
            format,
            shard,
            timing,
        } => {
            let mut c = ScanCampaign::load(&config)?;
            if c.budget.is_none() {
                c.budget = Some(cli.budget);
            }
            c.jobs = jobs.or(c.jobs);
            c.checkpoint = checkpoint.or(c.checkpoint);
            c.timing |= timing;
            if let Some(sh) = shard {
                let (i, n) = sh
                    .split_once('/')
                    .and_then(|(i, n)| Some((i.parse().ok()?, n.parse().ok()?)))
                    .ok_or_else(|| Error::Parse(format!("shard must look like 0/4, got `{sh}`")))?;
                c.shard = i;
                c.shards = n;
            }
            let mut w: Box<dyn Write> = match &out {
                Some(p) => Box::new(BufWriter::new(File::create(p)?)),
                None => Box::new(BufWriter::new(io::stdout().lock())),
            };
            let json = matches!(format, Format::Json);
            if json {
                let header = json!({
                    "tool": "isocrit",
                    "version": env!("CARGO_PKG_VERSION"),
                    "schema_version": SCHEMA_VERSION,
                    "campaign": c,
                });
                writeln!(w, "{header}")?;
            }
            let mut io_err = None;
            let summary = run_scan_with(
                &c,
                &mut |r| {
                    if json {
                        if let Err(e) = writeln!(w, "{}", serde_json::to_string(r).expect("json")) {
                            io_err.get_or_insert(e);
                        }
                    }
                },
                &mut |e| eprintln!("error: {e}"),
            )?;
            if let Some(e) = io_err {
                return Err(e.into());
            }
            if json {
                writeln!(w, "{}", json!({ "summary": summary }))?;
            } else {
                write!(w, "{}", summary.to_csv())?;
            }
            w.flush()?;
            Ok(if summary.counterexamples > 0 {
                COUNTEREXAMPLE
            } else if summary.partial {
                BUDGET
            } else {
                OK
            })
        }
        Cmd::Example { q } => {
            let r = reproduce_example_m5(q)?;
            print(&serde_json::to_value(&r).expect("json"));
            Ok(if r.conclusion == Conclusion::Pass { OK } else { COUNTEREXAMPLE })
        }
        Cmd::Statements => {
            for s in STATEMENTS {
                println!("{:<22} {}", s.id, s.summary);
            }
            Ok(OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(code_for(&e))
        }
    }
}
