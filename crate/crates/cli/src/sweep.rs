//! The sweep harness: run every engine over a parameter grid and emit one
//! CSV row per instance. Output is a pure function of the arguments and the
//! seed; grid order is primes, then exponents, then cofactors, then specs.

use std::io::Write;

use clap::Args;

use gencyclo::lincomp::{berlekamp_massey, conjecture_lc, fiber_lc, gcd_lc, lemma6_lc};
use gencyclo::numtheory::{divisors, is_prime, Params};
use gencyclo::{SplitMix64, SupportSpec};

use crate::CliError;

pub const CSV_HEADER: &str = "p,r,f,b,g,L_bm,L_gcd,L_fiber,L_lemma6,L_conjecture,all_agree";

#[derive(Args)]
pub struct SweepArgs {
    /// Comma-separated odd primes
    #[arg(long, value_delimiter = ',', required = true)]
    pub p: Vec<u64>,

    /// Include exponents r = 1..=r-max
    #[arg(long = "r-max", default_value_t = 2)]
    pub r_max: u32,

    /// Cofactor grid: "all" (every divisor of p-1), "even", or one value
    #[arg(long = "f-policy", default_value = "all")]
    pub f_policy: String,

    /// Support selection: "random" draws seeded index sets, "xiao" uses the
    /// halved-window preset with b = 0 and one random shift
    #[arg(long, default_value = "random")]
    pub support: String,

    /// Random support specs per grid point
    #[arg(long, default_value_t = 20)]
    pub specs: u32,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Skip the sequence-level engines (bm, gcd) above this period
    #[arg(long = "period-bound", default_value_t = 10_000)]
    pub period_bound: u64,

    /// Output CSV path; stdout when omitted
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

enum FPolicy {
    All,
    Even,
    Fixed(u64),
}

enum SupportKind {
    Random,
    Xiao,
}

/// Run the sweep; returns the number of engine mismatches.
pub fn run(args: &SweepArgs) -> Result<u64, CliError> {
    let f_policy = match args.f_policy.as_str() {
        "all" => FPolicy::All,
        "even" => FPolicy::Even,
        other => FPolicy::Fixed(
            other
                .parse()
                .map_err(|_| CliError::Usage(format!("bad f policy {other:?}")))?,
        ),
    };
    let support = match args.support.as_str() {
        "random" => SupportKind::Random,
        "xiao" => SupportKind::Xiao,
        other => return Err(CliError::Usage(format!("bad support kind {other:?}"))),
    };
    for &p in &args.p {
        if !is_prime(p) || p == 2 {
            return Err(CliError::Usage(format!("{p} is not an odd prime")));
        }
    }
    if args.r_max == 0 {
        return Err(CliError::Usage("r-max must be at least 1".into()));
    }

    let mut rng = SplitMix64::new(args.seed);
    let mut csv = String::new();
    csv.push_str(&format!(
        "# gencyclo sweep seed={} period-bound={}\n",
        args.seed, args.period_bound
    ));
    csv.push_str(CSV_HEADER);
    csv.push('\n');

    let mut rows = 0u64;
    let mut mismatches = 0u64;
    for &p in &args.p {
        for r in 1..=args.r_max {
            if p.checked_pow(r).is_none() {
                continue;
            }
            let cofactors: Vec<u64> = match f_policy {
                FPolicy::All => divisors(p - 1),
                FPolicy::Even => divisors(p - 1).into_iter().filter(|f| f % 2 == 0).collect(),
                FPolicy::Fixed(f) => {
                    if (p - 1) % f == 0 {
                        vec![f]
                    } else {
                        Vec::new()
                    }
                }
            };
            for f in cofactors {
                let params = Params::new(p, r, f).map_err(|e| CliError::Usage(e.to_string()))?;
                let specs: Vec<SupportSpec> = match support {
                    SupportKind::Random => (0..args.specs)
                        .map(|_| SupportSpec::random(params, &mut rng))
                        .collect(),
                    SupportKind::Xiao => {
                        if f % 2 != 0 {
                            continue;
                        }
                        let shift = rng.below(params.index_modulus(r));
                        [0, shift]
                            .iter()
                            .map(|&b| {
                                SupportSpec::xiao(params, b).expect("preset shifts are in range")
                            })
                            .collect()
                    }
                };
                for spec in specs {
                    let row = evaluate(
                        &spec,
                        args.period_bound,
                        matches!(support, SupportKind::Xiao),
                    );
                    rows += 1;
                    if !row.all_agree {
                        mismatches += 1;
                    }
                    csv.push_str(&row.to_csv_line());
                    csv.push('\n');
                }
            }
        }
    }

    match &args.out {
        Some(path) => std::fs::write(path, &csv)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => {
            print!("{csv}");
            std::io::stdout().flush().ok();
        }
    }
    eprintln!("sweep: {rows} rows, {mismatches} mismatches");
    Ok(mismatches)
}

struct SweepRow {
    p: u64,
    r: u32,
    f: u64,
    b: Option<u64>,
    g: u64,
    l_bm: Option<u64>,
    l_gcd: Option<u64>,
    l_fiber: Option<u64>,
    l_lemma6: Option<u64>,
    l_conjecture: Option<u64>,
    all_agree: bool,
}

impl SweepRow {
    fn to_csv_line(&self) -> String {
        let cell = |v: &Option<u64>| v.map_or(String::new(), |x| x.to_string());
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.p,
            self.r,
            self.f,
            cell(&self.b),
            self.g,
            cell(&self.l_bm),
            cell(&self.l_gcd),
            cell(&self.l_fiber),
            cell(&self.l_lemma6),
            cell(&self.l_conjecture),
            self.all_agree
        )
    }
}

fn evaluate(spec: &SupportSpec, period_bound: u64, preset: bool) -> SweepRow {
    let params = *spec.params();
    let (l_bm, l_gcd) = if params.period() <= period_bound {
        let seq = spec.generate();
        (
            Some(berlekamp_massey(seq.bits()).0),
            Some(gcd_lc(seq.bits()).expect("p^r is odd")),
        )
    } else {
        (None, None)
    };
    let (l_fiber, l_lemma6) = if params.assumptions().satisfied() {
        (
            Some(fiber_lc(spec).expect("assumptions checked").l),
            Some(lemma6_lc(spec).expect("assumptions checked").l),
        )
    } else {
        (None, None)
    };
    let l_conjecture = if preset && !params.wieferich() {
        conjecture_lc(&params).ok()
    } else {
        None
    };
    let populated: Vec<u64> = [l_bm, l_gcd, l_fiber, l_lemma6, l_conjecture]
        .into_iter()
        .flatten()
        .collect();
    SweepRow {
        p: params.p(),
        r: params.r(),
        f: params.f(),
        b: spec.b(),
        g: params.g(),
        l_bm,
        l_gcd,
        l_fiber,
        l_lemma6,
        l_conjecture,
        all_agree: populated.windows(2).all(|w| w[0] == w[1]),
    }
}
