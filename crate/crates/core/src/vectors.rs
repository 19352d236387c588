//! Replayable test-vector files.
//!
//! A file is a JSON object `{"cases": [...]}`; an empty file holds no cases.
//! Each case carries its own curve, so cases can be replayed independently.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::edwards::{AffinePoint, CurveJson, EdwardsCurve};
use crate::error::{Error, Result};
use crate::{ratfun, semaev};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Semaev,
    Ratfun,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Semaev => "semaev",
            Scheme::Ratfun => "ratfun",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scheme> {
        match s {
            "semaev" => Ok(Scheme::Semaev),
            "ratfun" => Ok(Scheme::Ratfun),
            _ => Err(Error::Parse(format!("unknown scheme {s:?}"))),
        }
    }
}

/// A compressed point in either scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rep {
    Semaev(semaev::SemaevRep),
    Ratfun(ratfun::RatFunRep),
}

impl Rep {
    pub fn parse(curve: &EdwardsCurve, scheme: Scheme, s: &str) -> Result<Rep> {
        match scheme {
            Scheme::Semaev => semaev::SemaevRep::parse(curve, s).map(Rep::Semaev),
            Scheme::Ratfun => ratfun::RatFunRep::parse(curve, s).map(Rep::Ratfun),
        }
    }
}

impl fmt::Display for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rep::Semaev(r) => r.fmt(f),
            Rep::Ratfun(r) => r.fmt(f),
        }
    }
}

pub fn compress(curve: &EdwardsCurve, scheme: Scheme, p: &AffinePoint) -> Result<Rep> {
    match scheme {
        Scheme::Semaev => semaev::compress(curve, p).map(Rep::Semaev),
        Scheme::Ratfun => ratfun::compress(curve, p).map(Rep::Ratfun),
    }
}

pub fn decompress(curve: &EdwardsCurve, rep: &Rep, rng: &mut dyn RngCore) -> Result<Vec<AffinePoint>> {
    match rep {
        Rep::Semaev(r) => semaev::decompress(curve, r, rng),
        Rep::Ratfun(r) => ratfun::decompress(curve, r, rng),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorCase {
    pub name: String,
    pub curve: CurveJson,
    pub scheme: Scheme,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    pub rep: String,
    pub expected_fiber: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorFile {
    pub cases: Vec<VectorCase>,
}

impl VectorFile {
    /// Parses a vector file. Errors carry the line and column reported by
    /// the JSON parser.
    pub fn parse(text: &str) -> Result<VectorFile> {
        if text.trim().is_empty() {
            return Ok(VectorFile::default());
        }
        serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("vector files serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseOutcome {
    pub name: String,
    pub mismatches: Vec<String>,
}

impl CaseOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn point_set(curve: &EdwardsCurve, pts: &[String]) -> Result<BTreeSet<AffinePoint>> {
    pts.iter().map(|s| curve.parse_point(s)).collect()
}

/// Replays one case: the point (if given) must compress to `rep`, and `rep`
/// must decompress to exactly `expected_fiber`.
pub fn replay(case: &VectorCase, rng: &mut dyn RngCore) -> Result<CaseOutcome> {
    let curve = EdwardsCurve::from_json(&case.curve)?;
    let rep = Rep::parse(&curve, case.scheme, &case.rep)?;
    let mut mismatches = Vec::new();
    if let Some(p) = &case.point {
        let p = curve.parse_point(p)?;
        match compress(&curve, case.scheme, &p) {
            Ok(got) if got == rep => {}
            Ok(got) => mismatches.push(format!("rep: expected {rep}, got {got}")),
            Err(e) => mismatches.push(format!("rep: expected {rep}, compression failed: {e}")),
        }
    }
    let expected = point_set(&curve, &case.expected_fiber)?;
    match decompress(&curve, &rep, rng) {
        Ok(got) => {
            let got: BTreeSet<AffinePoint> = got.into_iter().collect();
            for p in expected.difference(&got) {
                mismatches.push(format!("fiber: missing {p}"));
            }
            for p in got.difference(&expected) {
                mismatches.push(format!("fiber: unexpected {p}"));
            }
        }
        Err(e) => mismatches.push(format!("fiber: decompression failed: {e}")),
    }
    Ok(CaseOutcome {
        name: case.name.clone(),
        mismatches,
    })
}
