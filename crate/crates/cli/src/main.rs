mod bench;

use std::fmt;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use tracezero::vectors::{self, replay, Rep, Scheme, VectorFile};
use tracezero::{semaev, EdwardsCurve, FieldParams};

const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(name = "tracezero", version, about = "Point compression for trace-zero subgroups of twisted Edwards curves")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Semaev,
    Ratfun,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Scheme {
        match s {
            SchemeArg::Semaev => Scheme::Semaev,
            SchemeArg::Ratfun => Scheme::Ratfun,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate curve parameters and print the curve file.
    Params {
        #[arg(long)]
        q: BigUint,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        mu: BigUint,
        #[arg(long)]
        a: BigUint,
        #[arg(long)]
        d: BigUint,
        /// Order of the trace-zero subgroup, checked on sample points.
        #[arg(long)]
        tz_order: Option<BigUint>,
    },
    /// Print random trace-zero points.
    Point {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        samples: usize,
    },
    /// Compress a point given as "x-coeffs | y-coeffs" (read from stdin if omitted).
    Compress {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        point: Option<String>,
    },
    /// List every trace-zero point with the given representation.
    Decompress {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Comma-separated representation (read from stdin if omitted).
        rep: Option<String>,
    },
    /// Replay a test-vector file.
    Vectors {
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Histogram of orbits per fiber for the n = 5 symmetric-function scheme.
    Stats {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Time an operation on fresh random points and report operation counts.
    Bench {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, value_enum)]
        op: bench::Op,
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        #[arg(long, default_value_t = 100)]
        iters: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// Failure classes, each with its own exit status.
#[derive(Debug)]
enum Failure {
    /// The input is well formed but not in the domain or image (exit 2).
    Semantic(String),
    /// Malformed or invalid input (exit 3).
    Validation(String),
    /// Reading or writing failed (exit 4).
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Semantic(_) => 2,
            Failure::Validation(_) => 3,
            Failure::Io(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Semantic(m) | Failure::Validation(m) | Failure::Io(m) => f.write_str(m),
        }
    }
}

impl From<tracezero::Error> for Failure {
    fn from(e: tracezero::Error) -> Failure {
        use tracezero::Error as E;
        match e {
            E::InvalidParams(_) | E::Parse(_) | E::MalformedRep(_) | E::SamplingFailed(_) => {
                Failure::Validation(e.to_string())
            }
            _ => Failure::Semantic(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_curve(path: &Path) -> Result<EdwardsCurve, Failure> {
    let text = read_text(path)?;
    let j = serde_json::from_str(&text)
        .map_err(|e| Failure::Validation(format!("{}: line {}: {e}", path.display(), e.line())))?;
    Ok(EdwardsCurve::from_json(&j)?)
}

fn arg_or_stdin(arg: Option<String>) -> Result<String, Failure> {
    match arg {
        Some(s) => Ok(s),
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
            Ok(s.trim().to_string())
        }
    }
}

fn to_json(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn cmd_params(format: Format, q: BigUint, n: usize, mu: BigUint, a: BigUint, d: BigUint, tz: Option<BigUint>) -> Outcome {
    let params = FieldParams::new(q, n, mu)?;
    let mut curve = EdwardsCurve::new(&params, a, d)?;
    if let Some(ord) = tz {
        curve = curve.with_tz_order(ord);
        curve.check_tz_order(5, &mut ChaCha8Rng::seed_from_u64(DEFAULT_SEED))?;
    }
    let j = curve.to_json();
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&j).expect("curve serializes")),
        _ => println!("{}", serde_json::to_string(&j).expect("curve serializes")),
    }
    Ok(())
}

fn cmd_point(format: Format, curve: &Path, seed: u64, samples: usize) -> Outcome {
    let c = load_curve(curve)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = (0..samples)
        .map(|_| c.random_trace_zero(&mut rng).map(|p| p.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    match format {
        Format::Json => println!("{}", to_json(&json!(pts))),
        _ => pts.iter().for_each(|p| println!("{p}")),
    }
    Ok(())
}

fn cmd_compress(format: Format, curve: &Path, scheme: Scheme, point: Option<String>) -> Outcome {
    let c = load_curve(curve)?;
    let p = c.parse_point(&arg_or_stdin(point)?)?;
    let rep = vectors::compress(&c, scheme, &p)?;
    match format {
        Format::Json => println!("{}", to_json(&json!({"scheme": scheme, "rep": rep.to_string()}))),
        _ => println!("{rep}"),
    }
    Ok(())
}

fn cmd_decompress(format: Format, curve: &Path, scheme: Scheme, seed: u64, rep: Option<String>) -> Outcome {
    let c = load_curve(curve)?;
    let rep = Rep::parse(&c, scheme, &arg_or_stdin(rep)?)?;
    let pts = vectors::decompress(&c, &rep, &mut ChaCha8Rng::seed_from_u64(seed))?;
    if pts.is_empty() {
        return Err(Failure::Semantic(format!("{rep} is not the image of any trace-zero point")));
    }
    match format {
        Format::Json => {
            let pts: Vec<String> = pts.iter().map(ToString::to_string).collect();
            println!("{}", to_json(&json!(pts)));
        }
        _ => pts.iter().for_each(|p| println!("{p}")),
    }
    Ok(())
}

fn cmd_vectors(format: Format, path: &Path, seed: u64) -> Outcome {
    let file = VectorFile::parse(&read_text(path)?)
        .map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?;
    let mut failed = 0;
    let mut results = Vec::new();
    for case in &file.cases {
        let out = replay(case, &mut ChaCha8Rng::seed_from_u64(seed))
            .map_err(|e| Failure::Validation(format!("case {:?}: {e}", case.name)))?;
        if !out.passed() {
            failed += 1;
        }
        if format == Format::Text {
            println!("{} {}", if out.passed() { "PASS" } else { "FAIL" }, out.name);
            for m in &out.mismatches {
                println!("    {m}");
            }
        }
        results.push(json!({"name": out.name, "passed": out.passed(), "mismatches": out.mismatches}));
    }
    let total = file.cases.len();
    match format {
        Format::Json => println!("{}", to_json(&json!({"cases": results, "passed": total - failed, "failed": failed}))),
        _ => println!("{} of {total} cases passed", total - failed),
    }
    if failed > 0 {
        return Err(Failure::Semantic(format!("{failed} case(s) failed")));
    }
    Ok(())
}

fn cmd_stats(format: Format, curve: &Path, samples: usize, seed: u64) -> Outcome {
    let c = load_curve(curve)?;
    if c.n() != 5 {
        return Err(Failure::Validation("stats needs an n = 5 curve".into()));
    }
    let hist = semaev::fiber_stats(&c, samples, &mut ChaCha8Rng::seed_from_u64(seed))?;
    let pct = |k: usize| 100.0 * k as f64 / samples.max(1) as f64;
    match format {
        Format::Json => {
            let rows: Vec<_> = hist
                .iter()
                .map(|(orbits, count)| json!({"orbits": orbits, "count": count, "percent": pct(*count)}))
                .collect();
            println!("{}", to_json(&json!({"samples": samples, "seed": seed, "histogram": rows})));
        }
        Format::Csv => {
            println!("orbits,count,percent");
            for (orbits, count) in &hist {
                println!("{orbits},{count},{:.2}", pct(*count));
            }
        }
        Format::Text => {
            println!("orbits  count  percent");
            for (orbits, count) in &hist {
                println!("{orbits:>6}  {count:>5}  {:>6.2}%", pct(*count));
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    match cli.command {
        Command::Params { q, n, mu, a, d, tz_order } => cmd_params(format, q, n, mu, a, d, tz_order),
        Command::Point { curve, seed, samples } => cmd_point(format, &curve, seed, samples),
        Command::Compress { curve, scheme, point } => cmd_compress(format, &curve, scheme.into(), point),
        Command::Decompress { curve, scheme, seed, rep } => cmd_decompress(format, &curve, scheme.into(), seed, rep),
        Command::Vectors { path, seed } => cmd_vectors(format, &path, seed),
        Command::Stats { curve, samples, seed } => cmd_stats(format, &curve, samples, seed),
        Command::Bench { curve, op, scheme, iters, seed } => {
            let c = load_curve(&curve)?;
            let report = bench::run(&c, op, scheme.into(), iters, seed)?;
            bench::print(format, &[report]).map_err(|e| Failure::Io(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
