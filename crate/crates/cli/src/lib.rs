//! Command line front end for the gammaring library. Thin by design: all
//! arithmetic lives in the library, this crate parses arguments, shapes
//! reports, and maps failures onto the exit code contract:
//!
//!   0  success
//!   1  usage or input validation error
//!   2  a check failed (witness refuted, worked example mismatch)
//!   3  the requested construction does not apply to the given data

pub mod fixtures;
pub mod parse;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gammaring::{
    character_quotient, compare_modes, e7_special_cycle_check, hspin_witness, twisted_filtration,
    ClosureMode, IndexAssignment, K0Ring,
};
use serde::Serialize;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Check(String),
    NotApplicable(String),
}

impl CliError {
    pub fn usage<E: std::fmt::Display>(e: E) -> CliError {
        CliError::Usage(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Check(_) => 2,
            CliError::NotApplicable(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Check(m) | CliError::NotApplicable(m) => m,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "gammaring",
    version,
    about = "Exact representation ring quotients and their twisted filtrations \
             for split simple groups"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the ring for a group and isogeny and print its presentation.
    Ring(RingArgs),
    /// Compute the filtration induced by an index assignment.
    Filtration(FiltrationArgs),
    /// Run a torsion witness construction.
    #[command(subcommand)]
    Witness(WitnessCmd),
    /// Run the built-in worked examples against independent oracles.
    Examples(ExamplesArgs),
}

#[derive(Args)]
struct RingArgs {
    /// Root system token, e.g. A1, D8, E7.
    group: Option<String>,
    /// Isogeny token: sc, ad, so, hs, mu:M, or sub:[...].
    isogeny: Option<String>,
    /// Read the job from a JSON file instead of positional arguments.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["group", "isogeny"])]
    job: Option<PathBuf>,
}

#[derive(Args)]
struct FiltrationArgs {
    group: Option<String>,
    isogeny: Option<String>,
    /// Index assignment, e.g. "(1,0)=4,(0,1)=4,(1,1)=2". Unlisted nonzero
    /// classes default to index 1 with a warning.
    #[arg(long, value_name = "LIST")]
    ind: Option<String>,
    /// Highest filtration degree to compute (default 5).
    #[arg(long, value_name = "N")]
    max_degree: Option<usize>,
    /// Closure rule for the pieces.
    #[arg(long, value_enum, default_value_t = ModeArg::Subgroup)]
    mode: ModeArg,
    /// Also run the other closure mode and report where the two differ.
    #[arg(long)]
    compare_modes: bool,
    /// Read the job from a JSON file instead of positional arguments.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["group", "isogeny", "ind"])]
    job: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy)]
enum ModeArg {
    Subgroup,
    Ideal,
}

#[derive(Subcommand)]
enum WitnessCmd {
    /// Half spin family: an order two element built from a spin chern root.
    Hspin {
        /// Rank of the D series root system (even, at least 4).
        #[arg(long)]
        n: usize,
        /// Index exponent: the surviving spin class gets index 2^iA.
        #[arg(long = "iA")]
        i_a: u32,
    },
    /// Adjoint rank seven exceptional group: quadratic pushforward class.
    E7 {
        /// Index exponent for the order two class, between 1 and 3.
        #[arg(long = "iA")]
        i_a: u32,
    },
}

#[derive(Args)]
struct ExamplesArgs {
    /// Mutate an oracle input, e.g. "e7-dim-7=57,binom-8-2=29". The suite
    /// must notice the lie and fail.
    #[arg(long, value_name = "LIST")]
    inject: Option<String>,
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests travel the error path in clap but
            // are not failures.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Ring(args) => cmd_ring(args, cli.json),
        Cmd::Filtration(args) => cmd_filtration(args, cli.json),
        Cmd::Witness(w) => cmd_witness(w, cli.json),
        Cmd::Examples(args) => cmd_examples(args, cli.json),
    }
}

fn build_ring(group: &str, iso: &str) -> Result<K0Ring, CliError> {
    let spec = parse::group(group)?;
    let iso = parse::isogeny(iso)?;
    let cq = character_quotient(spec, iso).map_err(CliError::usage)?;
    K0Ring::build(cq).map_err(CliError::usage)
}

fn emit<T: Serialize>(value: &T, json: bool, text: String) {
    use std::io::Write;
    let payload = if json {
        let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
        s.push('\n');
        s
    } else {
        text
    };
    let mut out = std::io::stdout();
    if out.write_all(payload.as_bytes()).and_then(|()| out.flush()).is_err() {
        // The reader went away (output piped into head, say). Not a failure.
        std::process::exit(0);
    }
}

fn cmd_ring(args: RingArgs, json_flag: bool) -> Result<(), CliError> {
    let (group, iso, json) = match &args.job {
        Some(path) => {
            let job = parse::job_file(path)?;
            let json = json_flag || job.wants_json()?;
            (job.group, job.isogeny, json)
        }
        None => {
            let group = args
                .group
                .ok_or_else(|| CliError::Usage("missing GROUP (or --job FILE)".into()))?;
            let iso = args
                .isogeny
                .ok_or_else(|| CliError::Usage("missing ISOGENY".into()))?;
            (group, iso, json_flag)
        }
    };
    let k0 = build_ring(&group, &iso)?;
    let rep = report::ring_report(&k0)?;
    let text = report::ring_text(&rep);
    emit(&rep, json, text);
    Ok(())
}

fn cmd_filtration(args: FiltrationArgs, json_flag: bool) -> Result<(), CliError> {
    let (group, iso, pairs, max_degree, json) = match &args.job {
        Some(path) => {
            let job = parse::job_file(path)?;
            let pairs = job.pairs()?;
            let max = args.max_degree.or(job.max_degree).unwrap_or(5);
            let json = json_flag || job.wants_json()?;
            (job.group, job.isogeny, pairs, max, json)
        }
        None => {
            let group = args
                .group
                .ok_or_else(|| CliError::Usage("missing GROUP (or --job FILE)".into()))?;
            let iso = args
                .isogeny
                .ok_or_else(|| CliError::Usage("missing ISOGENY".into()))?;
            let pairs = match &args.ind {
                Some(s) => parse::index_list(s)?,
                None => Vec::new(),
            };
            (group, iso, pairs, args.max_degree.unwrap_or(5), json_flag)
        }
    };
    let k0 = build_ring(&group, &iso)?;
    let assignment = IndexAssignment::new(k0.group(), &pairs).map_err(CliError::usage)?;
    let mode = match args.mode {
        ModeArg::Subgroup => ClosureMode::Subgroup,
        ModeArg::Ideal => ClosureMode::Ideal,
    };
    let filt = twisted_filtration(&k0, &assignment, max_degree, mode).map_err(CliError::usage)?;
    let disagreements = if args.compare_modes {
        let cmp = compare_modes(&k0, &assignment, max_degree).map_err(CliError::usage)?;
        Some(cmp.differing_degrees)
    } else {
        None
    };
    let rep = report::filtration_report(&filt, disagreements)?;
    let text = report::filtration_text(&rep);
    emit(&rep, json, text);
    Ok(())
}

fn cmd_witness(w: WitnessCmd, json: bool) -> Result<(), CliError> {
    match w {
        WitnessCmd::Hspin { n, i_a } => {
            let w = hspin_witness(n, i_a).map_err(CliError::usage)?;
            let rep = report::WitnessReport::HalfSpin {
                n: w.n,
                i_a: w.i_a,
                d: w.d.to_string(),
                d_exponent: w.d_exponent,
                index: w.index,
                applicable: w.applicable,
                checks: w
                    .checks
                    .iter()
                    .map(|c| report::CheckRow { name: c.name.clone(), ok: c.ok })
                    .collect(),
                passed: w.passed,
            };
            emit(&rep, json, report::witness_text(&rep));
            if !w.applicable {
                return Err(CliError::NotApplicable(format!(
                    "needs index exponent at least 3 and v2(d) strictly above it; \
                     n = {n} gives v2(d) = {}, exponent {i_a}",
                    w.d_exponent
                )));
            }
            if !w.passed {
                return Err(CliError::Check("witness checks failed".into()));
            }
            Ok(())
        }
        WitnessCmd::E7 { i_a } => {
            if i_a == 0 {
                return Err(CliError::Usage("index exponent must be at least 1".into()));
            }
            if i_a > 3 {
                return Err(CliError::NotApplicable(format!(
                    "index 2^{i_a} exceeds the additive order 8 of the torsion class"
                )));
            }
            let c = e7_special_cycle_check(i_a, None).map_err(CliError::usage)?;
            let k0 = build_ring("E7", "ad")?;
            let rep = report::WitnessReport::RankSevenCycle {
                i_a: c.i_a,
                c_value: c.c_value.to_string(),
                class: k0.ring().render(&c.qx),
                law_holds: c.law_holds,
                nontrivial: c.nontrivial,
                predicted: c.predicted,
                verdict: c.verdict,
            };
            emit(&rep, json, report::witness_text(&rep));
            if !c.law_holds || !c.verdict {
                return Err(CliError::Check("pushforward prediction failed".into()));
            }
            Ok(())
        }
    }
}

fn cmd_examples(args: ExamplesArgs, json: bool) -> Result<(), CliError> {
    let ctx = fixtures::Fixtures::from_arg(args.inject.as_deref())?;
    let rows = fixtures::run_all(&ctx);
    let passed = rows.iter().filter(|r| r.ok).count();
    let failed = rows.len() - passed;
    let rep = report::ExamplesReport {
        injected: ctx.injected(),
        passed,
        failed,
        fixtures: rows,
    };
    emit(&rep, json, report::examples_text(&rep));
    if failed > 0 {
        return Err(CliError::Check(format!("{failed} worked example(s) failed")));
    }
    Ok(())
}
