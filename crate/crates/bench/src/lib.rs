//! Fixtures shared by the benchmarks.

use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tracezero::{AffinePoint, CurveJson, EdwardsCurve};

/// Loads `vectors/curves/<name>.json` from the repository root.
pub fn curve(name: &str) -> EdwardsCurve {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../vectors/curves/{name}.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let j: CurveJson = serde_json::from_str(&text).expect("curve file parses");
    EdwardsCurve::from_json(&j).expect("curve file is valid")
}

/// `count` trace-zero points from a fixed seed.
pub fn points(c: &EdwardsCurve, count: usize, seed: u64) -> Vec<AffinePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| c.random_trace_zero(&mut rng).expect("sampling succeeds")).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
