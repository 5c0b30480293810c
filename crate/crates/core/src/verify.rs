//! Pass/fail checks that carry signed margins.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{
    dist, extent, norm_hessian, GeomError, Point, Similarity, Sym2, EPS_GEO, FINGERHUT_FACTOR,
};
use crate::matching::{exact_max_sum, Matching, MatchingError, PointSet};
use crate::minimax::{self, Piece, SolverConfig};
use crate::witness::{minimize_h, minimize_h_segments, steiner_star, WitnessError, WitnessResult};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("edge {0} has (near) zero length")]
    DegenerateEdge(usize),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// A per-edge or per-subset record: the edge positions involved and the value
/// measured on them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Detail {
    pub edges: Vec<usize>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    /// Signed slack, positive when satisfied.
    pub margin: f64,
    pub tolerance: f64,
    pub details: Vec<Detail>,
}

impl Verdict {
    pub fn new(name: &str, margin: f64, tolerance: f64, details: Vec<Detail>) -> Self {
        Self {
            name: name.to_owned(),
            passed: margin >= -tolerance,
            margin,
            tolerance,
            details,
        }
    }
}

fn check_edges(segments: &[(Point, Point)]) -> Result<(), VerifyError> {
    let tol = EPS_GEO
        * extent(
            &segments
                .iter()
                .flat_map(|&(a, b)| [a, b])
                .collect::<Vec<_>>(),
        );
    match segments
        .iter()
        .position(|&(a, b)| dist(a, b) <= tol.max(f64::MIN_POSITIVE))
    {
        Some(k) => Err(VerifyError::DegenerateEdge(k)),
        None => Ok(()),
    }
}

/// `|a - o| + |b - o| <= (2/sqrt 3)|a - b|` for every matched edge. The
/// tolerance is `eps_thm` relative to the longest edge.
pub fn check_fingerhut(
    s: &PointSet,
    m: &Matching,
    o: Point,
    eps_thm: f64,
) -> Result<Verdict, VerifyError> {
    let segments = m.segments(s);
    check_edges(&segments)?;
    let details: Vec<Detail> = segments
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| Detail {
            edges: vec![k],
            value: FINGERHUT_FACTOR * dist(a, b) - (dist(a, o) + dist(b, o)),
        })
        .collect();
    let margin = details
        .iter()
        .map(|d| d.value)
        .fold(f64::INFINITY, f64::min);
    let longest = segments
        .iter()
        .map(|&(a, b)| dist(a, b))
        .fold(0.0, f64::max);
    Ok(Verdict::new(
        "fingerhut",
        margin,
        eps_thm * longest,
        details,
    ))
}

/// Exact max-sum matching followed by its witness; margin `2/sqrt 3 - lambda*`.
pub fn check_theorem(s: &PointSet, eps_thm: f64) -> Result<Verdict, VerifyError> {
    let m = exact_max_sum(s)?;
    Ok(theorem_verdict(&minimize_h(s, &m)?, eps_thm))
}

/// The theorem verdict for an already computed witness.
pub fn theorem_verdict(w: &WitnessResult, eps_thm: f64) -> Verdict {
    Verdict::new(
        "theorem",
        FINGERHUT_FACTOR - w.lambda_star,
        eps_thm,
        vec![Detail {
            edges: w.active.clone(),
            value: w.lambda_star,
        }],
    )
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    let k = n.min(3);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Compares the verdict of every edge triple (pairs or a single edge for
/// smaller matchings) with the global one. The margin is minus the number of
/// discordant triples; details list those triples with their minimax value.
pub fn check_helly_triples(
    s: &PointSet,
    m: &Matching,
    eps_thm: f64,
) -> Result<Verdict, VerifyError> {
    let segments = m.segments(s);
    check_edges(&segments)?;
    let threshold = FINGERHUT_FACTOR + eps_thm;
    let global = minimize_h_segments(&segments)?.lambda_star <= threshold;
    let values = subsets(segments.len())
        .into_par_iter()
        .map(|t| {
            let sub: Vec<_> = t.iter().map(|&k| segments[k]).collect();
            minimize_h_segments(&sub).map(|w| (t, w.lambda_star))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let local = values.iter().all(|&(_, v)| v <= threshold);
    let details: Vec<Detail> = if local == global {
        Vec::new()
    } else {
        values
            .into_iter()
            .filter(|&(_, v)| (v <= threshold) != global)
            .map(|(edges, value)| Detail { edges, value })
            .collect()
    };
    let margin = if local == global {
        0.0
    } else {
        -(details.len().max(1) as f64)
    };
    Ok(Verdict::new("helly", margin, 0.0, details))
}

/// Minimum Steiner star against `(2/sqrt 3) cost(max-sum)`, with tolerance
/// `eps_thm` times the instance extent.
pub fn check_suri(s: &PointSet, eps_thm: f64) -> Result<Verdict, VerifyError> {
    let m = exact_max_sum(s)?;
    let star = steiner_star(s.points());
    let bound = FINGERHUT_FACTOR * m.cost();
    Ok(Verdict::new(
        "suri",
        bound - star.total,
        eps_thm * extent(s.points()),
        vec![Detail {
            edges: Vec::new(),
            value: star.total,
        }],
    ))
}

/// `|x - c| - r` for the disk with diameter `ab`.
struct DiskPiece {
    center: Point,
    radius: f64,
}

impl Piece for DiskPiece {
    fn value(&self, x: Point) -> f64 {
        dist(x, self.center) - self.radius
    }

    fn gradient(&self, x: Point) -> Option<Point> {
        let v = x - self.center;
        let n = v.norm();
        (n > 0.0).then(|| v * (1.0 / n))
    }

    fn hessian(&self, x: Point) -> Option<Sym2> {
        norm_hessian(x - self.center)
    }

    fn lower_bound(&self) -> f64 {
        -self.radius
    }

    fn sublevel_box(&self, level: f64) -> Option<(Point, Point)> {
        let r = level + self.radius;
        (r >= 0.0).then(|| {
            (
                self.center - Point::new(r, r),
                self.center + Point::new(r, r),
            )
        })
    }
}

/// Whether the diameter disks of all matched edges share a point: the
/// minimax of the disk slacks must be at most `EPS_GEO` times the extent.
pub fn check_tverberg_disks(s: &PointSet, m: &Matching) -> Result<Verdict, VerifyError> {
    let segments = m.segments(s);
    check_edges(&segments)?;
    let endpoints: Vec<Point> = segments.iter().flat_map(|&(a, b)| [a, b]).collect();
    let frame = Similarity::to_unit_square(&endpoints);
    let pieces: Vec<DiskPiece> = segments
        .iter()
        .map(|&(a, b)| {
            let (a, b) = (frame.apply(a), frame.apply(b));
            DiskPiece {
                center: a.midpoint(b),
                radius: dist(a, b) / 2.0,
            }
        })
        .collect();
    let start =
        pieces.iter().fold(Point::ORIGIN, |acc, p| acc + p.center) * (1.0 / pieces.len() as f64);
    let x = minimax::minimize(
        &pieces,
        start,
        (Point::new(0.0, 0.0), Point::new(1.0, 1.0)),
        2f64.sqrt(),
        &SolverConfig::default(),
    );
    let details: Vec<Detail> = pieces
        .iter()
        .enumerate()
        .map(|(k, p)| Detail {
            edges: vec![k],
            value: -p.value(x) * frame.scale.recip(),
        })
        .collect();
    let margin = details
        .iter()
        .map(|d| d.value)
        .fold(f64::INFINITY, f64::min);
    Ok(Verdict::new(
        "disks",
        margin,
        EPS_GEO * extent(&endpoints),
        details,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::EPS_THM;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn square() -> PointSet {
        PointSet::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0), p(1.0, 1.0)]).unwrap()
    }

    fn doubled_triangle() -> PointSet {
        let h = 3f64.sqrt() / 2.0;
        PointSet::new(vec![
            p(0.0, 0.0),
            p(0.0, 0.0),
            p(1.0, 0.0),
            p(1.0, 0.0),
            p(0.5, h),
            p(0.5, h),
        ])
        .unwrap()
    }

    #[test]
    fn fingerhut_examples() {
        let t = doubled_triangle();
        let sides = Matching::new(vec![(0, 2), (3, 4), (5, 1)], &t).unwrap();
        let centroid = p(0.5, 3f64.sqrt() / 6.0);
        let v = check_fingerhut(&t, &sides, centroid, EPS_THM).unwrap();
        assert!(v.passed);
        assert!(v.margin.abs() < 1e-9, "{}", v.margin);

        let s = square();
        let diag = Matching::new(vec![(0, 3), (1, 2)], &s).unwrap();
        let v = check_fingerhut(&s, &diag, p(0.5, 0.5), EPS_THM).unwrap();
        assert!(v.passed);
        let expected = FINGERHUT_FACTOR * 2f64.sqrt() - 2f64.sqrt();
        assert!((v.margin - expected).abs() < 1e-15);

        let sides = Matching::new(vec![(0, 1), (2, 3)], &s).unwrap();
        assert!(
            !check_fingerhut(&s, &sides, p(0.5, 0.5), EPS_THM)
                .unwrap()
                .passed
        );
    }

    #[test]
    fn fingerhut_rejects_zero_edges() {
        let t = doubled_triangle();
        assert_eq!(
            check_fingerhut(&t, &Matching::sequential(&t), p(0.0, 0.0), EPS_THM),
            Err(VerifyError::DegenerateEdge(0))
        );
    }

    #[test]
    fn theorem_examples() {
        let v = check_theorem(&doubled_triangle(), EPS_THM).unwrap();
        assert!(v.passed);
        assert!(v.margin.abs() < 1e-9);
        let two = PointSet::new(vec![p(0.0, 0.0), p(3.0, 4.0)]).unwrap();
        let v = check_theorem(&two, EPS_THM).unwrap();
        assert!(v.passed);
        assert!((v.details[0].value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn theorem_size_cap() {
        let pts = (0..22).map(|i| p(i as f64, (i * i) as f64)).collect();
        let s = PointSet::new(pts).unwrap();
        assert!(matches!(
            check_theorem(&s, EPS_THM),
            Err(VerifyError::Matching(MatchingError::SizeCap { .. }))
        ));
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(1), vec![vec![0]]);
        assert_eq!(subsets(2), vec![vec![0, 1]]);
        assert_eq!(subsets(4).len(), 4);
        assert_eq!(subsets(6).len(), 20);
    }

    #[test]
    fn helly_nested_squares() {
        // three concentric squares, each matched along two opposite sides
        let mut pts = Vec::new();
        for r in [1.0, 2.0, 3.0] {
            pts.extend([p(-r, -r), p(r, -r), p(-r, r), p(r, r)]);
        }
        let s = PointSet::new(pts).unwrap();
        let pairs = (0..3)
            .flat_map(|k| [(4 * k, 4 * k + 1), (4 * k + 2, 4 * k + 3)])
            .collect();
        let m = Matching::new(pairs, &s).unwrap();
        let v = check_helly_triples(&s, &m, EPS_THM).unwrap();
        assert!(v.passed, "{v:?}");
        assert!(minimize_h(&s, &m).unwrap().lambda_star > FINGERHUT_FACTOR + 0.1);
        let exact = exact_max_sum(&s).unwrap();
        assert!(check_helly_triples(&s, &exact, EPS_THM).unwrap().passed);
    }

    #[test]
    fn helly_single_edge() {
        let s = PointSet::new(vec![p(0.0, 0.0), p(1.0, 2.0)]).unwrap();
        let v = check_helly_triples(&s, &Matching::sequential(&s), EPS_THM).unwrap();
        assert!(v.passed);
        assert_eq!(v.margin, 0.0);
    }

    #[test]
    fn suri_examples() {
        let v = check_suri(&doubled_triangle(), EPS_THM).unwrap();
        assert!(v.passed);
        assert!(v.margin.abs() < 1e-7, "{}", v.margin);
        assert!((v.details[0].value - 2.0 * 3f64.sqrt()).abs() < 1e-7);

        let v = check_suri(&square(), EPS_THM).unwrap();
        let t = 2.0 * 2f64.sqrt();
        assert!((v.margin - (FINGERHUT_FACTOR * t - t)).abs() < 1e-7);

        let two = PointSet::new(vec![p(1.0, 1.0), p(4.0, 5.0)]).unwrap();
        let v = check_suri(&two, EPS_THM).unwrap();
        assert!((v.margin - (FINGERHUT_FACTOR - 1.0) * 5.0).abs() < 1e-7);
    }

    #[test]
    fn disk_examples() {
        let s = square();
        let diag = Matching::new(vec![(0, 3), (1, 2)], &s).unwrap();
        let v = check_tverberg_disks(&s, &diag).unwrap();
        assert!(v.passed);
        // both disks are centered at (0.5, 0.5) with radius sqrt(2)/2
        assert!((v.margin - 0.5f64.sqrt()).abs() < 1e-9, "{}", v.margin);

        let far =
            PointSet::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(10.0, 0.0), p(11.0, 0.0)]).unwrap();
        let sides = Matching::new(vec![(0, 1), (2, 3)], &far).unwrap();
        let v = check_tverberg_disks(&far, &sides).unwrap();
        assert!(!v.passed);
        // centers 10 apart, radii 1/2: best slack is (10 - 1) / 2
        assert!((v.margin + 4.5).abs() < 1e-9, "{}", v.margin);
        let exact = exact_max_sum(&far).unwrap();
        assert!(check_tverberg_disks(&far, &exact).unwrap().passed);
    }
}
