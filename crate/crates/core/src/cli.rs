//! The `hyperind` command line.
//!
//! Exit codes: 0 on success, 1 only when a conjecture counterexample is
//! found, 2 on usage, parse, or argument errors, 3 when a proof-step check
//! fails.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::constructions::{build_complete_r_partite, build_hrd, build_matching, build_transversal_design_3};
use crate::counting::{count_with, Method};
use crate::enumeration::{enumerate_regular, enumerate_regular_parallel_ordered, EnumSpec};
use crate::error::{Error, Result};
use crate::hypergraph::{read_hypergraph, write_hypergraph, Hypergraph};
use crate::verification::{
    check_conjecture_with_count, compare_constructions, round_sig15, verify_proof_steps_capped, ConjectureVerdict,
    Rival,
};
use crate::Caps;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PROOF_FAILURE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "hyperind",
    version,
    about = "Independent sets in regular uniform hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a named construction in .hg format
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Count independent sets
    Count {
        /// Input .hg file, or - for stdin
        file: String,
        #[arg(long, default_value = "auto")]
        method: Method,
    },
    /// Generate all d-regular r-graphs on n vertices
    Enumerate(EnumerateArgs),
    /// Check ind(G)^(rd) <= ind(H^r_d)^n exactly
    CheckConjecture {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate every step of the entropy bound on a quasi-bipartite input
    VerifyProof {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Compare H^r_d with a rival construction at a common vertex count
    Compare {
        #[arg(long)]
        r: usize,
        #[arg(long, conflicts_with = "m", required_unless_present = "m")]
        t: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    Hrd {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: usize,
    },
    Complete {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
    },
    Td3 {
        #[arg(long)]
        m: usize,
    },
    Matching {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    up_to_iso: bool,
    #[arg(long)]
    check_conjecture: bool,
    /// Write each emitted hypergraph to DIR/NNNNNN.hg
    #[arg(long, value_name = "DIR")]
    emit: Option<PathBuf>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    workers: u32,
    /// Per-hypergraph CSV rows (requires --check-conjecture)
    #[arg(long, requires = "check_conjecture")]
    csv: bool,
}

/// Output style.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputMode {
    Human,
    Json,
    Csv,
}

/// Resolved settings for one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub caps: Caps,
    pub workers: usize,
    pub output: OutputMode,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            caps: Caps::default(),
            workers: 1,
            output: OutputMode::Human,
        }
    }
}

/// Runs the CLI with process arguments, stdin/stdout/stderr and `HYPERIND_CAPS`.
pub fn main_with_env() -> i32 {
    let caps = std::env::var("HYPERIND_CAPS").ok();
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(
        std::env::args_os(),
        caps.as_deref(),
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

/// Runs one invocation; `caps_env` is the value of `HYPERIND_CAPS`, if set.
pub fn run<I, T>(
    args: I,
    caps_env: Option<&str>,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let mut config = RunConfig::default();
    if let Some(s) = caps_env {
        match Caps::parse(s) {
            Ok(c) => config.caps = c,
            Err(e) => {
                let _ = writeln!(stderr, "error: HYPERIND_CAPS: {e}");
                return EXIT_USAGE;
            }
        }
    }
    match dispatch(cli.command, &mut config, stdin, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn load(file: &str, stdin: &mut dyn Read) -> Result<Hypergraph> {
    let text = if file == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(file).map_err(|e| Error::Io(format!("{file}: {e}")))?
    };
    read_hypergraph(&text)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

fn dispatch(command: Command, config: &mut RunConfig, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Construct { family } => {
            let g = match family {
                Family::Hrd { r, d } => build_hrd(r, d)?.0,
                Family::Complete { r, t } => build_complete_r_partite(r, t)?,
                Family::Td3 { m } => build_transversal_design_3(m)?,
                Family::Matching { r, k } => build_matching(r, k)?,
            };
            out.write_all(write_hypergraph(&g).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Count { file, method } => {
            let g = load(&file, stdin)?;
            let c = count_with(&g, method, config.caps.brute)?;
            writeln!(out, "{c}")?;
            Ok(EXIT_OK)
        }
        Command::CheckConjecture { file, json } => {
            let g = load(&file, stdin)?;
            if json {
                config.output = OutputMode::Json;
            }
            let ind = count_with(&g, Method::Auto, config.caps.brute)?;
            let v = check_conjecture_with_count(&g, ind)?;
            if config.output == OutputMode::Json {
                writeln!(out, "{}", to_json(&v))?;
            } else {
                write_verdict(out, &v)?;
            }
            if !v.holds {
                if config.output == OutputMode::Human {
                    writeln!(out, "counterexample:")?;
                    out.write_all(write_hypergraph(&g).as_bytes())?;
                }
                return Ok(EXIT_VIOLATION);
            }
            Ok(EXIT_OK)
        }
        Command::VerifyProof { file, json } => {
            let g = load(&file, stdin)?;
            let rep = verify_proof_steps_capped(&g, config.caps.entropy)?;
            if json {
                writeln!(out, "{}", to_json(&rep))?;
            } else {
                writeln!(
                    out,
                    "r={} d={} n={} A={:?} ind={}",
                    rep.r, rep.d, rep.n, rep.a_side, rep.ind
                )?;
                for s in &rep.steps {
                    writeln!(
                        out,
                        "step {} [{}] {}: lhs={} rhs={} margin={}",
                        s.step,
                        if s.pass { "pass" } else { "FAIL" },
                        s.name,
                        fmt_float(s.lhs),
                        fmt_float(s.rhs),
                        fmt_float(s.margin)
                    )?;
                }
                let chain: Vec<String> = rep.chain.iter().map(|x| fmt_float(*x)).collect();
                writeln!(out, "chain: {}", chain.join(" <= "))?;
                writeln!(out, "composed margin: {}", fmt_float(rep.composed_margin))?;
                for f in &rep.findings {
                    writeln!(out, "finding: {f}")?;
                }
                writeln!(out, "all steps pass: {}", rep.all_pass)?;
            }
            Ok(if rep.all_pass { EXIT_OK } else { EXIT_PROOF_FAILURE })
        }
        Command::Compare { r, t, m, json } => {
            let rival = match (t, m) {
                (Some(t), None) => Rival::CompleteRPartite { t },
                (None, Some(m)) => Rival::TransversalDesign3 { m },
                _ => return Err(Error::invalid("give exactly one of --t or --m")),
            };
            let rep = compare_constructions(r, rival)?;
            if json {
                writeln!(out, "{}", to_json(&rep))?;
            } else {
                writeln!(out, "H^{}_{} vs {}", rep.r, rep.d, rep.rival)?;
                writeln!(out, "ind(H) = {} on {} vertices", rep.ind_hrd, rep.hrd_vertices)?;
                writeln!(out, "ind(rival) = {} on {} vertices", rep.ind_rival, rep.rival_vertices)?;
                writeln!(
                    out,
                    "at L = {}: {} vs {}",
                    rep.common_vertices, rep.hrd_value, rep.rival_value
                )?;
                let winner = match rep.winner {
                    crate::verification::Winner::Hrd => "H^r_d",
                    crate::verification::Winner::Rival => "rival",
                    crate::verification::Winner::Tie => "tie",
                };
                writeln!(out, "winner: {winner}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Enumerate(args) => {
            config.workers = args.workers as usize;
            if args.csv {
                config.output = OutputMode::Csv;
            }
            run_enumerate(&args, config, out)
        }
    }
}

fn write_verdict(out: &mut dyn Write, v: &ConjectureVerdict) -> Result<()> {
    writeln!(out, "r={} d={} n={}", v.r, v.d, v.n)?;
    writeln!(out, "ind(G) = {}", v.ind)?;
    writeln!(out, "ind(H^r_d) = {}", v.ind_hrd)?;
    writeln!(out, "ind(G)^(rd) = {}", v.lhs)?;
    writeln!(out, "ind(H^r_d)^n = {}", v.rhs)?;
    writeln!(out, "holds: {}", v.holds)?;
    writeln!(out, "equality: {}", v.equality)?;
    writeln!(out, "slack_bits: {}", fmt_float(v.slack_bits))?;
    Ok(())
}

#[derive(Default)]
struct SweepState {
    index: u64,
    checked: u64,
    equalities: u64,
    violations: u64,
    error: Option<Error>,
}

fn run_enumerate(args: &EnumerateArgs, config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let mut spec = EnumSpec::new(args.r, args.d, args.n).up_to_iso(args.up_to_iso);
    spec.canon_cap = config.caps.canon;
    if let Some(dir) = &args.emit {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    }
    let csv = config.output == OutputMode::Csv;
    writeln!(
        out,
        "# enumerate r={} d={} n={} {}",
        args.r,
        args.d,
        args.n,
        if args.up_to_iso { "up-to-iso" } else { "labeled" }
    )?;
    if csv {
        writeln!(out, "index,ind,holds,equality,slack_bits")?;
    }

    let mut st = SweepState::default();
    let visit = |g: &Hypergraph| {
        if st.error.is_some() {
            return;
        }
        let idx = st.index;
        st.index += 1;
        if let Err(e) = visit_one(g, idx, args, config, csv, &mut st, out) {
            st.error = Some(e);
        }
    };
    let emitted = if config.workers > 1 {
        enumerate_regular_parallel_ordered(&spec, config.workers, visit)?
    } else {
        enumerate_regular(&spec, visit)?
    };
    if let Some(e) = st.error.take() {
        return Err(e);
    }
    writeln!(out, "# emitted: {emitted}")?;
    if args.check_conjecture {
        writeln!(
            out,
            "# conjecture: checked {}, equality {}, violations {}",
            st.checked, st.equalities, st.violations
        )?;
        writeln!(
            out,
            "# {}",
            if st.violations == 0 {
                "conjecture holds on every emission"
            } else {
                "COUNTEREXAMPLE FOUND"
            }
        )?;
    }
    Ok(if st.violations > 0 { EXIT_VIOLATION } else { EXIT_OK })
}

fn visit_one(
    g: &Hypergraph,
    idx: u64,
    args: &EnumerateArgs,
    config: &RunConfig,
    csv: bool,
    st: &mut SweepState,
    out: &mut dyn Write,
) -> Result<()> {
    if let Some(dir) = &args.emit {
        write_file(&dir.join(format!("{idx:06}.hg")), &write_hypergraph(g))?;
    }
    if !args.check_conjecture {
        return Ok(());
    }
    let ind = count_with(g, Method::Auto, config.caps.brute)?;
    let v = check_conjecture_with_count(g, ind)?;
    st.checked += 1;
    st.equalities += v.equality as u64;
    if csv {
        writeln!(
            out,
            "{idx},{},{},{},{}",
            v.ind,
            v.holds,
            v.equality,
            fmt_float(v.slack_bits)
        )?;
    }
    if !v.holds {
        st.violations += 1;
        writeln!(
            out,
            "# VIOLATION at index {idx}: ind = {}, lhs = {}, rhs = {}",
            v.ind, v.lhs, v.rhs
        )?;
        for line in write_hypergraph(g).lines() {
            writeln!(out, "# {line}")?;
        }
        if let Some(dir) = &args.emit {
            write_file(&dir.join(format!("violation-{idx:06}.hg")), &write_hypergraph(g))?;
        }
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Fifteen significant digits; exponent form for very small or large magnitudes.
fn fmt_float(x: f64) -> String {
    let y = round_sig15(x);
    if y == 0.0 {
        "0".to_string()
    } else if y.abs() < 1e-6 || y.abs() >= 1e16 {
        format!("{y:e}")
    } else {
        y.to_string()
    }
}
