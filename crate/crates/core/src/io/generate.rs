use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::IoError;
use crate::geom::Point;
use crate::matching::PointSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generator {
    /// Uniform in `[0, 1)^2`.
    UniformSquare,
    /// Standard normal coordinates.
    Gaussian,
    /// Three uniform cluster centers with normal spread 0.05.
    Clustered,
    /// Regular polygon with unit side, every vertex listed twice.
    DoubledPolygon,
}

impl Generator {
    pub const ALL: [Generator; 4] = [
        Generator::UniformSquare,
        Generator::Gaussian,
        Generator::Clustered,
        Generator::DoubledPolygon,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::UniformSquare => "uniform-square",
            Generator::Gaussian => "gaussian",
            Generator::Clustered => "clustered",
            Generator::DoubledPolygon => "doubled-polygon",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = IoError;

    fn from_str(s: &str) -> Result<Self, IoError> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| IoError::InvalidSpec(format!("unknown generator {s:?}")))
    }
}

/// A reproducible instance: same spec, same points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub generator: Generator,
    /// Total number of points `2n`.
    pub count: usize,
    pub seed: u64,
}

const CLUSTERS: usize = 3;
const CLUSTER_SPREAD: f64 = 0.05;

pub fn generate(spec: &InstanceSpec) -> Result<PointSet, IoError> {
    let n = spec.count;
    if n < 2 || !n.is_multiple_of(2) {
        return Err(IoError::InvalidSpec(format!(
            "point count {n} must be even and at least 2"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let points: Vec<Point> = match spec.generator {
        Generator::UniformSquare => (0..n)
            .map(|_| Point::new(rng.random(), rng.random()))
            .collect(),
        Generator::Gaussian => (0..n)
            .map(|_| Point::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect(),
        Generator::Clustered => {
            let centers: Vec<Point> = (0..CLUSTERS)
                .map(|_| Point::new(rng.random(), rng.random()))
                .collect();
            (0..n)
                .map(|_| {
                    let c = centers[rng.random_range(0..CLUSTERS)];
                    let dx: f64 = rng.sample(StandardNormal);
                    let dy: f64 = rng.sample(StandardNormal);
                    c + Point::new(dx, dy) * CLUSTER_SPREAD
                })
                .collect()
        }
        Generator::DoubledPolygon => {
            let k = n / 2;
            if k < 2 {
                return Err(IoError::InvalidSpec(
                    "doubled polygon needs at least 4 points".into(),
                ));
            }
            let mut v = Point::ORIGIN;
            let mut out = Vec::with_capacity(n);
            for i in 0..k {
                out.extend([v, v]);
                v += Point::new(1.0, 0.0).rotate(TAU * i as f64 / k as f64);
            }
            out
        }
    };
    Ok(PointSet::new(points)?)
}
