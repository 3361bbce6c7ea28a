// SPDX-License-Identifier: Apache-2.0
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use aig_orch::cec::{self, CecResult, Mode};
use aig_orch::flow::{self, FlowOptions, FlowScript};
use aig_orch::stats::{write_csv, PassStats};
use aig_orch::{aiger, Aig, Error, Params};

const EXIT_CEX: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(name = "aig-orch", version, about = "And-Inverter Graph optimizer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Write a CSV report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Seed for random simulation patterns.
    #[arg(long, env = "ORCH_SEED", default_value_t = cec::DEFAULT_SEED)]
    seed: u64,
    /// Check the result against the input (exhaustive up to 16 inputs).
    #[arg(long)]
    verify: bool,
    /// Random patterns used by --verify on designs with many inputs.
    #[arg(long, default_value_t = cec::DEFAULT_PATTERNS)]
    patterns: usize,
    /// Write 0 in the wall_ms column so reports are reproducible.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single pass or policy.
    Opt {
        /// rw, rf, rs, balance, o1..o6, lgp (or their z variants)
        #[arg(long, visible_alias = "policy")]
        pass: String,
        /// Accept zero-gain transformations.
        #[arg(short = 'z')]
        zero_cost: bool,
        /// Resubstitution window size.
        #[arg(short = 'K')]
        k: Option<usize>,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Run a script such as "resyn" or "b;rw;rs -K 6".
    Flow {
        #[arg(long)]
        script: String,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Check two designs for equivalence.
    Cec {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, conflicts_with = "patterns")]
        exhaustive: bool,
        #[arg(long)]
        patterns: Option<usize>,
        #[arg(long, env = "ORCH_SEED", default_value_t = cec::DEFAULT_SEED)]
        seed: u64,
    },
    /// Run every script on every design in a directory.
    Bench {
        #[arg(long)]
        dir: PathBuf,
        /// Comma-separated scripts.
        #[arg(long)]
        scripts: String,
        /// Worker threads; designs are distributed across them.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Print size statistics of designs.
    Stats {
        inputs: Vec<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Io(Error),
    Counterexample(String),
    Unknown(String),
    Other(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Io { .. }
            | Error::MalformedHeader(_)
            | Error::MalformedBody { .. }
            | Error::FaninOrder { .. }
            | Error::Truncated(_)
            | Error::Unsupported(_) => Failure::Io(e),
            Error::BadRecipe(_) | Error::TooManyInputs { .. } | Error::InterfaceMismatch(_) => {
                Failure::Usage(e.to_string())
            }
            e => Failure::Other(e),
        }
    }
}

type CliResult = Result<(), Failure>;

fn verify_mode(c: &Common) -> Option<Mode> {
    c.verify.then_some(Mode::Auto {
        patterns: c.patterns,
        seed: c.seed,
    })
}

fn write_report(path: &Option<PathBuf>, rows: &[PassStats], timing: bool) -> CliResult {
    if let Some(p) = path {
        let file = std::fs::File::create(p).map_err(|e| Error::io(p, e))?;
        write_csv(file, rows, timing)?;
    }
    Ok(())
}

fn print_summary(s: &PassStats) {
    println!(
        "{}: {} nodes {} -> {} (reduction {} nodes, {:.2}%), depth {} -> {}, valid rw/rs/rf {}/{}/{}",
        s.design,
        s.pass,
        s.nodes_before,
        s.nodes_after,
        s.nodes_before as i64 - s.nodes_after as i64,
        s.reduction_pct(),
        s.depth_before,
        s.depth_after,
        s.valid_rw,
        s.valid_rs,
        s.valid_rf
    );
}

fn check_verdict(design: &str, r: &Option<CecResult>) -> CliResult {
    match r {
        Some(CecResult::Counterexample(_)) => Err(Failure::Counterexample(format!(
            "{design}: result is NOT equivalent to the input"
        ))),
        Some(CecResult::Equivalent) => {
            println!("{design}: equivalent");
            Ok(())
        }
        Some(CecResult::Unknown { patterns }) => {
            println!("{design}: no difference in {patterns} random patterns");
            Ok(())
        }
        None => Ok(()),
    }
}

fn run_script(
    input: &Path,
    output: &Option<PathBuf>,
    script: &FlowScript,
    label: &str,
    common: &Common,
) -> CliResult {
    let aig = aiger::read_file(input)?;
    let opts = FlowOptions {
        params: Params::default(),
        verify: verify_mode(common),
    };
    let res = flow::run_flow(&aig, script, &opts)?;
    let row = PassStats::combine(aig.name(), label, &res.steps);
    print_summary(&row);
    if let Some(out) = output {
        aiger::write_file(out, &res.aig)?;
    }
    write_report(&common.report, &[row], !common.no_timing)?;
    check_verdict(aig.name(), &res.cec)
}

fn pass_script(
    pass: &str,
    zero_cost: bool,
    k: Option<usize>,
) -> Result<(FlowScript, String), Failure> {
    let pass = pass.trim().to_ascii_lowercase();
    let mut name = match pass.as_str() {
        "balance" | "b" => {
            if zero_cost || k.is_some() {
                return Err(Failure::Usage("balance takes no -z or -K".into()));
            }
            "b".to_string()
        }
        _ => pass.clone(),
    };
    if zero_cost && name != "b" {
        name = match name.as_str() {
            "rw" | "rs" | "rf" | "lgp" => format!("{name}z"),
            n if n.len() == 2 && n.starts_with('o') => format!("z{}", &n[1..]),
            n if n.ends_with('z') || n.starts_with('z') => n.to_string(),
            n => return Err(Failure::Usage(format!("unknown pass `{n}`"))),
        };
    }
    let text = match k {
        Some(k) => format!("{name} -K {k}"),
        None => name.clone(),
    };
    let script = flow::parse_script(&text)?;
    if script.steps.len() != 1 {
        return Err(Failure::Usage(format!("`{pass}` is not a single pass")));
    }
    Ok((script, name))
}

fn bench(dir: &Path, scripts: &str, jobs: usize, common: &Common) -> CliResult {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("aig" | "aag")))
        .collect();
    files.sort();
    let parsed: Vec<(String, FlowScript)> = scripts
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Ok((s.to_string(), flow::parse_script(s)?)))
        .collect::<Result<_, Error>>()?;
    if parsed.is_empty() {
        return Err(Failure::Usage("no scripts given".into()));
    }
    let designs: Vec<Aig> = files
        .iter()
        .map(aiger::read_file)
        .collect::<Result<_, Error>>()?;
    let opts = FlowOptions {
        params: Params::default(),
        verify: verify_mode(common),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let results: Vec<Vec<(PassStats, Option<CecResult>)>> = pool.install(|| {
        designs
            .par_iter()
            .map(|aig| {
                parsed
                    .iter()
                    .map(|(label, script)| {
                        let res = flow::run_flow(aig, script, &opts)?;
                        Ok((PassStats::combine(aig.name(), label, &res.steps), res.cec))
                    })
                    .collect::<Result<Vec<_>, Error>>()
            })
            .collect::<Result<Vec<_>, Error>>()
    })?;
    let mut rows = Vec::new();
    let mut failed = Vec::new();
    for (row, verdict) in results.into_iter().flatten() {
        print_summary(&row);
        if let Some(CecResult::Counterexample(_)) = verdict {
            failed.push(format!("{} / {}", row.design, row.pass));
        }
        rows.push(row);
    }
    match &common.report {
        Some(_) => write_report(&common.report, &rows, !common.no_timing)?,
        None => write_csv(std::io::stdout(), &rows, !common.no_timing)?,
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Counterexample(format!(
            "not equivalent: {}",
            failed.join(", ")
        )))
    }
}

fn stats(inputs: &[PathBuf], report: &Option<PathBuf>) -> CliResult {
    let mut rows = Vec::new();
    for p in inputs {
        let aig = aiger::read_file(p)?;
        println!(
            "{}: inputs {} outputs {} ands {} depth {}",
            aig.name(),
            aig.num_pis(),
            aig.num_pos(),
            aig.size(),
            aig.depth()
        );
        let mut s = PassStats::new(aig.name(), "none");
        s.nodes_before = aig.size();
        s.nodes_after = aig.size();
        s.depth_before = aig.depth();
        s.depth_after = s.depth_before;
        rows.push(s);
    }
    write_report(report, &rows, false)
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Opt {
            pass,
            zero_cost,
            k,
            input,
            output,
            common,
        } => {
            let (script, label) = pass_script(&pass, zero_cost, k)?;
            run_script(&input, &output, &script, &label, &common)
        }
        Command::Flow {
            script,
            input,
            output,
            common,
        } => {
            let parsed = flow::parse_script(&script)?;
            run_script(&input, &output, &parsed, script.trim(), &common)
        }
        Command::Cec {
            a,
            b,
            exhaustive,
            patterns,
            seed,
        } => {
            let ga = aiger::read_file(&a)?;
            let gb = aiger::read_file(&b)?;
            let mode = if exhaustive {
                Mode::Exhaustive
            } else if let Some(n) = patterns {
                Mode::Random { patterns: n, seed }
            } else {
                Mode::Auto {
                    patterns: cec::DEFAULT_PATTERNS,
                    seed,
                }
            };
            let r = cec::check(&ga, &gb, mode)?;
            match r {
                CecResult::Equivalent => {
                    println!("equivalent");
                    Ok(())
                }
                CecResult::Counterexample(cex) => {
                    let bits: String = cex.iter().map(|&b| if b { '1' } else { '0' }).collect();
                    Err(Failure::Counterexample(format!(
                        "not equivalent; counterexample {bits}"
                    )))
                }
                CecResult::Unknown { patterns } => Err(Failure::Unknown(format!(
                    "no difference found in {patterns} random patterns"
                ))),
            }
        }
        Command::Bench {
            dir,
            scripts,
            jobs,
            common,
        } => bench(&dir, &scripts, jobs, &common),
        Command::Stats { inputs, report } => stats(&inputs, &report),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::Counterexample(m)) => {
            println!("{m}");
            ExitCode::from(EXIT_CEX)
        }
        Err(Failure::Unknown(m)) => {
            println!("{m}");
            ExitCode::from(EXIT_UNKNOWN)
        }
        Err(Failure::Other(e)) => {
            eprintln!("internal error: {e}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
