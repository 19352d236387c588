//! The `bench` subcommand: wall-clock timing and operation counts over fresh
//! random trace-zero points.

use std::time::Instant;

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use tracezero::counters::{self, OpCounts};
use tracezero::vectors::{self, Scheme};
use tracezero::{EdwardsCurve, Result};

use crate::Format;

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Compress,
    Decompress,
}

/// One CSV row. Counter columns are means per operation.
#[derive(Debug, Serialize)]
pub struct BenchReport {
    pub op: Op,
    pub scheme: Scheme,
    pub n: usize,
    /// Bit length of the configured subgroup order, or of `q^(n-1)` when no
    /// order is configured.
    pub tn_bits: u64,
    pub iters: usize,
    pub mean_us: f64,
    pub stddev_us: f64,
    pub s: f64,
    pub m: f64,
    pub i: f64,
    pub ext_s: f64,
    pub ext_m: f64,
    pub ext_i: f64,
}

fn tn_bits(c: &EdwardsCurve) -> u64 {
    match c.tz_order() {
        Some(ord) => ord.bits(),
        None => c.base().modulus().pow(c.n() as u32 - 1).bits(),
    }
}

pub fn run(c: &EdwardsCurve, op: Op, scheme: Scheme, iters: usize, seed: u64) -> Result<BenchReport> {
    let iters = iters.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut times = Vec::with_capacity(iters);
    let mut total = OpCounts::default();
    for _ in 0..iters {
        let p = c.random_trace_zero(&mut rng)?;
        let (elapsed, ops) = match op {
            Op::Compress => {
                let start = Instant::now();
                let (r, ops) = counters::measure(|| vectors::compress(c, scheme, &p));
                let elapsed = start.elapsed();
                r?;
                (elapsed, ops)
            }
            Op::Decompress => {
                let rep = vectors::compress(c, scheme, &p)?;
                let start = Instant::now();
                let (r, ops) = counters::measure(|| vectors::decompress(c, &rep, &mut rng));
                let elapsed = start.elapsed();
                r?;
                (elapsed, ops)
            }
        };
        times.push(elapsed.as_secs_f64() * 1e6);
        total += ops;
    }
    let k = iters as f64;
    let mean = times.iter().sum::<f64>() / k;
    let var = times.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / k;
    let per = |v: u64| v as f64 / k;
    Ok(BenchReport {
        op,
        scheme,
        n: c.n(),
        tn_bits: tn_bits(c),
        iters,
        mean_us: mean,
        stddev_us: var.sqrt(),
        s: per(total.sqr),
        m: per(total.mul),
        i: per(total.inv),
        ext_s: per(total.ext_sqr),
        ext_m: per(total.ext_mul),
        ext_i: per(total.ext_inv),
    })
}

pub fn print(format: Format, reports: &[BenchReport]) -> std::result::Result<(), Box<dyn std::error::Error>> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(reports)?),
        _ => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            for r in reports {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
