//! Command-line front end for the sequence toolkit.
//!
//! Exit codes: 0 success, 1 usage or parameter error, 2 fast-engine
//! assumption refusal, 3 engine disagreement.

mod report;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gencyclo::cyclotomy::ClassTable;
use gencyclo::lincomp::{berlekamp_massey, fiber_lc, gcd_lc, lemma6_lc, Engine};
use gencyclo::seqgen::parse_bit_line;
use gencyclo::{Error, Params, SupportSpec};

use report::{GenerateEcho, InfoJson, ReportJson};

#[derive(Parser)]
#[command(
    name = "gencyclo",
    version,
    about = "Generalized cyclotomic binary sequences of period p^r and their linear complexity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Show derived parameters and the fast-engine assumption verdict
    Info {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long)]
        f: u64,
    },
    /// Dump the cyclotomic classes at one level as JSON
    Classes {
        #[arg(long)]
        p: u64,
        /// Level: classes partition the units modulo p^j
        #[arg(long)]
        j: u32,
        #[arg(long)]
        f: u64,
        /// Primitive root override (default: smallest modulo p^2)
        #[arg(long)]
        g: Option<u64>,
    },
    /// Generate one period and write it as an ASCII bit line
    Generate {
        #[command(flatten)]
        input: SpecInput,
        /// Output sequence file
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Compute linear complexity with one engine or all of them
    Lc {
        #[command(flatten)]
        input: SpecInput,
        /// Sequence file (bm/gcd engines only)
        #[arg(long, conflicts_with = "spec", conflicts_with = "preset")]
        seq: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = EngineArg::All)]
        engine: EngineArg,
    },
    /// Run every engine over a parameter grid and write a CSV
    Sweep(sweep::SweepArgs),
}

/// Support-set input, either a JSON file or preset flags.
#[derive(Args)]
struct SpecInput {
    /// Support spec JSON file
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Built-in support preset
    #[arg(long, value_enum, conflicts_with = "spec")]
    preset: Option<Preset>,
    #[arg(long, requires = "preset")]
    p: Option<u64>,
    #[arg(long, requires = "preset")]
    r: Option<u32>,
    #[arg(long, requires = "preset")]
    f: Option<u64>,
    /// Preset window shift
    #[arg(long, requires = "preset", default_value_t = 0)]
    b: u64,
    /// Primitive root override
    #[arg(long, requires = "preset")]
    g: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    /// Halved index windows at every level (requires even f)
    Xiao,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Bm,
    Gcd,
    Fiber,
    Lemma6,
    All,
}

/// Command failure with an exit code attached.
pub enum CliError {
    Usage(String),
    Refusal(String),
    Disagreement(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::AssumptionsViolated(_) | Error::WieferichPrime(_) => {
                CliError::Refusal(e.to_string())
            }
            Error::EngineDisagreement { .. } => CliError::Disagreement(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Refusal(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Disagreement(msg)) => {
            eprintln!("engine disagreement: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Info { p, r, f } => cmd_info(p, r, f),
        Command::Classes { p, j, f, g } => cmd_classes(p, j, f, g),
        Command::Generate { input, out } => cmd_generate(&input, &out),
        Command::Lc { input, seq, engine } => cmd_lc(&input, seq.as_deref(), engine),
        Command::Sweep(args) => {
            if sweep::run(&args)? > 0 {
                Err(CliError::Disagreement(
                    "sweep found mismatching rows".into(),
                ))
            } else {
                Ok(())
            }
        }
    }
}

fn cmd_info(p: u64, r: u32, f: u64) -> Result<(), CliError> {
    let params = Params::new(p, r, f)?;
    let assumptions = params.assumptions();
    let info = InfoJson {
        p: params.p(),
        r: params.r(),
        e: params.e(),
        f: params.f(),
        g: params.g(),
        ord2: params.ord2(),
        period: params.period(),
        wieferich: params.wieferich(),
        gcd_ok: assumptions.gcd_ok,
        assumptions_ok: assumptions.satisfied(),
    };
    println!("{}", serde_json::to_string(&info).expect("serializable"));
    Ok(())
}

fn cmd_classes(p: u64, j: u32, f: u64, g: Option<u64>) -> Result<(), CliError> {
    if j == 0 {
        return Err(CliError::Usage("level j must be at least 1".into()));
    }
    let params = match g {
        Some(g) => Params::with_g(p, j, f, g)?,
        None => Params::new(p, j, f)?,
    };
    let classes = ClassTable::new(&params, j).classes();
    println!("{}", serde_json::to_string(&classes).expect("serializable"));
    Ok(())
}

impl SpecInput {
    fn provided(&self) -> bool {
        self.spec.is_some() || self.preset.is_some()
    }

    fn load(&self) -> Result<SupportSpec, CliError> {
        if let Some(path) = &self.spec {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            return Ok(SupportSpec::from_json(&text)?);
        }
        match self.preset {
            Some(Preset::Xiao) => {
                let missing = || CliError::Usage("--preset needs --p, --r and --f".into());
                let p = self.p.ok_or_else(missing)?;
                let r = self.r.ok_or_else(missing)?;
                let f = self.f.ok_or_else(missing)?;
                let params = match self.g {
                    Some(g) => Params::with_g(p, r, f, g)?,
                    None => Params::new(p, r, f)?,
                };
                Ok(SupportSpec::xiao(params, self.b)?)
            }
            None => Err(CliError::Usage(
                "provide a support spec (--spec FILE or --preset ...)".into(),
            )),
        }
    }
}

fn cmd_generate(input: &SpecInput, out: &std::path::Path) -> Result<(), CliError> {
    let spec = input.load()?;
    let seq = spec.generate();
    std::fs::write(out, seq.to_line())
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", out.display())))?;
    let params = spec.params();
    let echo = GenerateEcho {
        p: params.p(),
        r: params.r(),
        f: params.f(),
        b: spec.b(),
        g: params.g(),
        n: params.period(),
        weight: seq.weight(),
        out: out.display().to_string(),
    };
    println!("{}", serde_json::to_string(&echo).expect("serializable"));
    Ok(())
}

fn cmd_lc(
    input: &SpecInput,
    seq_path: Option<&std::path::Path>,
    engine: EngineArg,
) -> Result<(), CliError> {
    let reports = match (input.provided(), seq_path) {
        (true, None) => spec_reports(&input.load()?, engine)?,
        (false, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            let bits = parse_bit_line(&text)?;
            bits_reports(&bits, engine)?
        }
        _ => {
            return Err(CliError::Usage(
                "provide exactly one input: --spec/--preset or --seq".into(),
            ))
        }
    };

    if reports.len() == 1 {
        println!(
            "{}",
            serde_json::to_string(&reports[0]).expect("serializable")
        );
    } else {
        println!("{}", serde_json::to_string(&reports).expect("serializable"));
    }

    let mut ls = reports.iter().map(|r| r.l);
    let first = ls.next().expect("at least one engine ran");
    if ls.any(|l| l != first) {
        return Err(CliError::Disagreement(format!(
            "engines returned different L values on period {}",
            reports[0].n
        )));
    }
    Ok(())
}

fn spec_reports(spec: &SupportSpec, engine: EngineArg) -> Result<Vec<ReportJson>, CliError> {
    let params = spec.params();
    let frame = |engine: &'static str, l: u64, delta, deltas, weight| ReportJson {
        p: Some(params.p()),
        r: Some(params.r()),
        f: Some(params.f()),
        b: spec.b(),
        g: Some(params.g()),
        n: params.period(),
        engine,
        l,
        delta,
        deltas,
        weight,
        assumptions: Some(params.assumptions()),
    };

    let engines: Vec<EngineArg> = match engine {
        EngineArg::All => vec![
            EngineArg::Bm,
            EngineArg::Gcd,
            EngineArg::Fiber,
            EngineArg::Lemma6,
        ],
        one => vec![one],
    };
    let needs_bits = engines
        .iter()
        .any(|e| matches!(e, EngineArg::Bm | EngineArg::Gcd));
    let seq = needs_bits.then(|| spec.generate());
    // The support unions are disjoint, so the cardinality is the weight.
    let weight = seq
        .as_ref()
        .map(|s| s.weight())
        .unwrap_or_else(|| spec.support_size());

    let mut out = Vec::with_capacity(engines.len());
    for e in engines {
        let report = match e {
            EngineArg::Bm => {
                let bits = seq.as_ref().expect("generated above").bits();
                frame(
                    Engine::Bm.as_str(),
                    berlekamp_massey(bits).0,
                    None,
                    None,
                    weight,
                )
            }
            EngineArg::Gcd => {
                let bits = seq.as_ref().expect("generated above").bits();
                frame(Engine::Gcd.as_str(), gcd_lc(bits)?, None, None, weight)
            }
            EngineArg::Fiber => {
                let r = fiber_lc(spec)?;
                frame(Engine::Fiber.as_str(), r.l, r.delta, r.deltas, weight)
            }
            EngineArg::Lemma6 => {
                let r = lemma6_lc(spec)?;
                frame(Engine::Lemma6.as_str(), r.l, r.delta, r.deltas, weight)
            }
            EngineArg::All => unreachable!(),
        };
        out.push(report);
    }
    Ok(out)
}

fn bits_reports(bits: &[u8], engine: EngineArg) -> Result<Vec<ReportJson>, CliError> {
    let weight = bits.iter().map(|&b| b as u64).sum();
    let frame = |engine: &'static str, l: u64| ReportJson {
        p: None,
        r: None,
        f: None,
        b: None,
        g: None,
        n: bits.len() as u64,
        engine,
        l,
        delta: None,
        deltas: None,
        weight,
        assumptions: None,
    };
    match engine {
        EngineArg::Bm => Ok(vec![frame("bm", berlekamp_massey(bits).0)]),
        EngineArg::Gcd => Ok(vec![frame("gcd", gcd_lc(bits)?)]),
        EngineArg::All => Ok(vec![
            frame("bm", berlekamp_massey(bits).0),
            frame("gcd", gcd_lc(bits)?),
        ]),
        EngineArg::Fiber | EngineArg::Lemma6 => Err(CliError::Usage(
            "the fiber and lemma6 engines need a support spec, not a bare sequence".into(),
        )),
    }
}
