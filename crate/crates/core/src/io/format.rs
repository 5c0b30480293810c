use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Generator, IoError};
use crate::descent::DescentStep;
use crate::geom::Point;
use crate::matching::{Matching, PointSet};
use crate::verify::Verdict;
use crate::witness::WitnessResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointFormat {
    Csv,
    Json,
}

impl PointFormat {
    /// Guesses the format from a file extension.
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "csv" => Some(PointFormat::Csv),
            "json" => Some(PointFormat::Json),
            _ => None,
        }
    }
}

impl FromStr for PointFormat {
    type Err = IoError;

    fn from_str(s: &str) -> Result<Self, IoError> {
        match s {
            "csv" => Ok(PointFormat::Csv),
            "json" => Ok(PointFormat::Json),
            other => Err(IoError::UnknownFormat(other.to_owned())),
        }
    }
}

/// One `x,y` per line. Blank lines are skipped.
pub fn parse_points_csv(text: &str) -> Result<PointSet, IoError> {
    let mut points = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let err = |column: usize, message: String| IoError::Parse {
            line: k + 1,
            column,
            message,
        };
        let (xs, ys) = line
            .split_once(',')
            .ok_or_else(|| err(1, format!("expected \"x,y\", found {line:?}")))?;
        let x: f64 = xs
            .trim()
            .parse()
            .map_err(|_| err(1, format!("invalid number {:?}", xs.trim())))?;
        let y: f64 = ys
            .trim()
            .parse()
            .map_err(|_| err(xs.len() + 2, format!("invalid number {:?}", ys.trim())))?;
        points.push(Point::new(x, y));
    }
    Ok(PointSet::new(points)?)
}

/// Shortest round-trip decimal for each coordinate.
pub fn points_to_csv(s: &PointSet) -> String {
    let mut out = String::new();
    for p in s.points() {
        out.push_str(&format!("{:?},{:?}\n", p.x, p.y));
    }
    out
}

#[derive(Deserialize)]
struct RawPoints {
    points: Vec<Point>,
}

pub fn parse_points_json(text: &str) -> Result<PointSet, IoError> {
    let raw: RawPoints = serde_json::from_str(text)?;
    Ok(PointSet::new(raw.points)?)
}

pub fn points_to_json(s: &PointSet) -> String {
    serde_json::to_string(s).expect("point sets serialize")
}

pub fn load_points(path: &Path, format: PointFormat) -> Result<PointSet, IoError> {
    let text = fs::read_to_string(path)?;
    match format {
        PointFormat::Csv => parse_points_csv(&text),
        PointFormat::Json => parse_points_json(&text),
    }
}

pub fn save_points(path: &Path, s: &PointSet, format: PointFormat) -> Result<(), IoError> {
    let text = match format {
        PointFormat::Csv => points_to_csv(s),
        PointFormat::Json => points_to_json(s) + "\n",
    };
    Ok(fs::write(path, text)?)
}

/// Reads `{"pairs": [[i, j], ...], "cost": c}` and validates it against `s`.
/// The cost is recomputed from the points.
pub fn parse_matching_json(text: &str, s: &PointSet) -> Result<Matching, IoError> {
    #[derive(Deserialize)]
    struct Raw {
        pairs: Vec<(usize, usize)>,
    }
    let raw: Raw = serde_json::from_str(text)?;
    Ok(Matching::new(raw.pairs, s)?)
}

pub fn load_matching(path: &Path, s: &PointSet) -> Result<Matching, IoError> {
    parse_matching_json(&fs::read_to_string(path)?, s)
}

pub fn save_matching(path: &Path, m: &Matching) -> Result<(), IoError> {
    Ok(fs::write(
        path,
        serde_json::to_string(m).expect("matchings serialize") + "\n",
    )?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub generator: Option<Generator>,
    pub seed: Option<u64>,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub instance: InstanceMeta,
    pub matching: Option<Matching>,
    pub witness: Option<WitnessResult>,
    pub verdicts: Vec<Verdict>,
    pub trace: Option<Vec<DescentStep>>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }
}

pub fn save_report(path: &Path, r: &Report) -> Result<(), IoError> {
    Ok(fs::write(path, r.to_json() + "\n")?)
}

pub fn load_report(path: &Path) -> Result<Report, IoError> {
    Report::from_json(&fs::read_to_string(path)?)
}
