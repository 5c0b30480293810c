//! The Fingerhut witness: the minimizer `o*` of
//! `h_M(x) = max_{ab in M} (|a - x| + |b - x|) / |a - b|`, its active edges,
//! a Carathéodory support of at most three edges whose bisector points
//! surround `o*`, and a first-order optimality certificate. Also the
//! Steiner-star value (geometric median) of a point set.
//!
//! Every computation runs on the instance mapped into the unit square; the
//! ratios are similarity invariant, so only the reported point is mapped back.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{
    bisector_point, bounding_box, dist, grad_h, h_ratio, hessian_h, GeomError, Point, Segment,
    Similarity, Sym2, EPS_GEO,
};
use crate::matching::{Matching, PointSet};
use crate::minimax::{self, min_norm_point, Piece, SolverConfig};

/// Residual below which a certificate counts as converged.
pub const EPS_CERT: f64 = 1e-7;

/// Relative active-set tolerance: `|h_ab(o) - lambda| <= EPS_ACT * lambda`.
pub const EPS_ACT: f64 = 1e-6;

/// Below `1 + LAMBDA_ONE_TOL` the witness lies on every segment and no
/// Carathéodory support exists.
pub const LAMBDA_ONE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WitnessError {
    #[error("matching has no edges")]
    EmptyMatching,
    #[error("edge {0} has (near) zero length")]
    DegenerateEdge(usize),
    #[error("fewer than two active edges; the witness lies on a segment")]
    WitnessOnSegment,
    #[error("no two or three active edges surround the witness (best gap {gap:e})")]
    ContainmentFailure { gap: f64 },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Minimizer of `h_M` with its certificate data. Edge indices are positions in
/// the matching's pair list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessResult {
    pub o_star: Point,
    pub lambda_star: f64,
    pub active: Vec<usize>,
    pub support: Vec<usize>,
    pub certificate: Vec<(usize, f64)>,
    pub residual: f64,
    pub converged: bool,
}

/// Convex combination of active-edge gradients closest to zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub coefficients: Vec<(usize, f64)>,
    pub residual: f64,
    pub passed: bool,
}

/// Two or three active edges whose bisector points `l_ab` (seen from the
/// witness) contain the witness in their convex hull.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Support {
    pub edges: Vec<usize>,
    pub coefficients: Vec<f64>,
}

pub(crate) struct EllipsePiece {
    a: Point,
    b: Point,
    len: f64,
}

impl EllipsePiece {
    fn new(a: Point, b: Point) -> Self {
        Self {
            a,
            b,
            len: dist(a, b),
        }
    }
}

impl Piece for EllipsePiece {
    fn value(&self, x: Point) -> f64 {
        (dist(self.a, x) + dist(self.b, x)) / self.len
    }

    fn gradient(&self, x: Point) -> Option<Point> {
        grad_h(self.a, self.b, x).ok()
    }

    fn hessian(&self, x: Point) -> Option<Sym2> {
        hessian_h(self.a, self.b, x).ok()
    }

    fn lower_bound(&self) -> f64 {
        1.0
    }

    fn sublevel_box(&self, level: f64) -> Option<(Point, Point)> {
        if level < 1.0 {
            return None;
        }
        let center = self.a.midpoint(self.b);
        let u = (self.b - self.a) * (1.0 / self.len);
        let major = 0.5 * level * self.len;
        let minor = 0.5 * self.len * (level * level - 1.0).max(0.0).sqrt();
        let half = Point::new(
            (major * u.x).hypot(minor * u.y),
            (major * u.y).hypot(minor * u.x),
        );
        Some((center - half, center + half))
    }
}

/// Normalized copy of a segment list.
struct UnitFrame {
    transform: Similarity,
    segments: Vec<(Point, Point)>,
}

impl UnitFrame {
    fn new(segments: &[(Point, Point)]) -> Result<Self, WitnessError> {
        if segments.is_empty() {
            return Err(WitnessError::EmptyMatching);
        }
        let endpoints: Vec<Point> = segments.iter().flat_map(|&(a, b)| [a, b]).collect();
        let transform = Similarity::to_unit_square(&endpoints);
        let segments: Vec<_> = segments
            .iter()
            .map(|&(a, b)| (transform.apply(a), transform.apply(b)))
            .collect();
        if let Some(k) = segments.iter().position(|&(a, b)| dist(a, b) <= EPS_GEO) {
            return Err(WitnessError::DegenerateEdge(k));
        }
        Ok(Self {
            transform,
            segments,
        })
    }

    fn pieces(&self) -> Vec<EllipsePiece> {
        self.segments
            .iter()
            .map(|&(a, b)| EllipsePiece::new(a, b))
            .collect()
    }
}

/// `h_M(x)` over a list of segments.
pub fn h_max(segments: &[(Point, Point)], x: Point) -> Result<f64, GeomError> {
    segments.iter().try_fold(f64::NEG_INFINITY, |acc, &(a, b)| {
        Ok(acc.max(h_ratio(a, b, x)?))
    })
}

/// Global minimizer of `h_M` for the matching `m` of `s`.
pub fn minimize_h(s: &PointSet, m: &Matching) -> Result<WitnessResult, WitnessError> {
    minimize_h_segments(&m.segments(s))
}

/// [`minimize_h`] over an arbitrary family of segments (e.g. a sub-matching).
pub fn minimize_h_segments(segments: &[(Point, Point)]) -> Result<WitnessResult, WitnessError> {
    let frame = UnitFrame::new(segments)?;
    let pieces = frame.pieces();
    let midpoints: Vec<Point> = frame.segments.iter().map(|&(a, b)| a.midpoint(b)).collect();
    let start =
        midpoints.iter().fold(Point::ORIGIN, |acc, p| acc + *p) * (1.0 / midpoints.len() as f64);
    let endpoints: Vec<Point> = frame.segments.iter().flat_map(|&(a, b)| [a, b]).collect();
    let bounds = bounding_box(&endpoints).expect("nonempty");
    let diameter = dist(bounds.0, bounds.1).max(EPS_GEO);

    let mut x = minimax::minimize(&pieces, start, bounds, diameter, &SolverConfig::default());
    let mut value = minimax::max_value(&pieces, x);
    // Near lambda = 1 the minimizer is a common point of the segments, found
    // exactly by intersection; the solver only gets within sqrt(eps) of it.
    if value <= 1.0 + LAMBDA_ONE_TOL {
        if let Some(p) = common_point(&frame.segments) {
            let v = minimax::max_value(&pieces, p);
            if v <= value.max(1.0 + 1e-12) {
                x = p;
                value = v;
            }
        }
    }

    let cert = certificate_in_frame(&frame.segments, x);
    let active = active_in_frame(&frame.segments, x, value);
    let support = if value > 1.0 + LAMBDA_ONE_TOL {
        caratheodory_in_frame(&frame.segments, &active, x)
            .map(|s| s.edges)
            .unwrap_or_default()
    } else {
        Vec::new()
    };

    let o_star = frame.transform.invert(x);
    let lambda_star = h_max(segments, o_star)?;
    Ok(WitnessResult {
        o_star,
        lambda_star,
        active,
        support,
        converged: cert.passed,
        residual: cert.residual,
        certificate: cert.coefficients,
    })
}

/// A point shared by every segment, if one exists (within [`EPS_GEO`]).
fn common_point(segments: &[(Point, Point)]) -> Option<Point> {
    let all_contain = |p: Point| {
        segments
            .iter()
            .all(|&(a, b)| Segment::new(a, b).distance_to(p) <= EPS_GEO)
    };
    let (a0, b0) = segments[0];
    let d0 = b0 - a0;
    for &(a, b) in &segments[1..] {
        let d = b - a;
        let denom = d0.cross(d);
        if denom.abs() > 1e-9 * d0.norm() * d.norm() {
            let s = (a - a0).cross(d) / denom;
            let p = a0 + d0 * s;
            return all_contain(p).then_some(p);
        }
    }
    // All segments parallel: intersect their extents along the common line.
    let u = d0 * (1.0 / d0.norm());
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for &(a, b) in segments {
        let (sa, sb) = ((a - a0).dot(u), (b - a0).dot(u));
        lo = lo.max(sa.min(sb));
        hi = hi.min(sa.max(sb));
    }
    if lo > hi + EPS_GEO {
        return None;
    }
    let p = a0 + u * (0.5 * (lo + hi));
    all_contain(p).then_some(p)
}

fn active_in_frame(segments: &[(Point, Point)], o: Point, lambda: f64) -> Vec<usize> {
    active_with_tolerance(segments, o, lambda, EPS_ACT)
}

pub(crate) fn active_with_tolerance(
    segments: &[(Point, Point)],
    o: Point,
    lambda: f64,
    rel_tol: f64,
) -> Vec<usize> {
    segments
        .iter()
        .enumerate()
        .filter(|&(_, &(a, b))| {
            h_ratio(a, b, o).is_ok_and(|h| (h - lambda).abs() <= rel_tol * lambda)
        })
        .map(|(k, _)| k)
        .collect()
}

/// Edges whose ratio at `o` is within `EPS_ACT * lambda` of `lambda`.
pub fn active_set(s: &PointSet, m: &Matching, o: Point, lambda: f64) -> Vec<usize> {
    active_in_frame(&m.segments(s), o, lambda)
}

fn certificate_in_frame(segments: &[(Point, Point)], o: Point) -> Certificate {
    let pieces: Vec<EllipsePiece> = segments
        .iter()
        .map(|&(a, b)| EllipsePiece::new(a, b))
        .collect();
    let lambda = minimax::max_value(&pieces, o);
    let active = active_in_frame(segments, o, lambda);
    // h >= 1 everywhere, so attaining 1 is optimal whatever the gradients do.
    if minimax::at_lower_bound(&pieces, lambda) {
        return Certificate {
            coefficients: active.first().map(|&k| vec![(k, 1.0)]).unwrap_or_default(),
            residual: 0.0,
            passed: true,
        };
    }
    let grads: Vec<(usize, Point)> = active
        .iter()
        .filter_map(|&k| pieces[k].gradient(o).map(|g| (k, g)))
        .collect();
    if grads.is_empty() {
        return Certificate {
            coefficients: Vec::new(),
            residual: f64::MAX,
            passed: false,
        };
    }
    let vectors: Vec<Point> = grads.iter().map(|&(_, g)| g).collect();
    let (p, weights) = min_norm_point(&vectors);
    let coefficients = grads
        .iter()
        .zip(weights)
        .filter(|(_, w)| *w > 0.0)
        .map(|(&(k, _), w)| (k, w))
        .collect();
    let residual = p.norm();
    Certificate {
        coefficients,
        residual,
        passed: residual <= EPS_CERT,
    }
}

/// First-order optimality certificate of `o` for `h_M`: the minimum-norm
/// convex combination of the active gradients (computed at unit scale).
pub fn optimality_certificate(
    s: &PointSet,
    m: &Matching,
    o: Point,
) -> Result<Certificate, WitnessError> {
    let frame = UnitFrame::new(&m.segments(s))?;
    Ok(certificate_in_frame(
        &frame.segments,
        frame.transform.apply(o),
    ))
}

/// Two or three active edges whose bisector points contain `o` in their
/// convex hull, with the convex coefficients.
pub fn caratheodory_support(
    s: &PointSet,
    m: &Matching,
    active: &[usize],
    o: Point,
) -> Result<Support, WitnessError> {
    let frame = UnitFrame::new(&m.segments(s))?;
    caratheodory_in_frame(&frame.segments, active, frame.transform.apply(o))
}

fn caratheodory_in_frame(
    segments: &[(Point, Point)],
    active: &[usize],
    o: Point,
) -> Result<Support, WitnessError> {
    let bisectors: Vec<Point> = active
        .iter()
        .map(|&k| {
            let (a, b) = segments[k];
            bisector_point(a - o, b - o)
        })
        .collect::<Result<_, _>>()?;
    if active.len() < 2 || bisectors.iter().any(|l| l.norm() <= EPS_GEO) {
        return Err(WitnessError::WitnessOnSegment);
    }

    let mut best_gap = f64::INFINITY;
    let mut best_pair: Option<Support> = None;
    for i in 0..bisectors.len() {
        for j in i + 1..bisectors.len() {
            let (p, q) = (bisectors[i], bisectors[j]);
            let d = q - p;
            let t = (-p.dot(d) / d.dot(d)).clamp(0.0, 1.0);
            let gap = (p + d * t).norm();
            if gap < best_gap {
                best_gap = gap;
                if gap <= EPS_GEO {
                    best_pair = Some(Support {
                        edges: vec![active[i], active[j]],
                        coefficients: vec![1.0 - t, t],
                    });
                }
            }
        }
    }
    if let Some(pair) = best_pair {
        return Ok(pair);
    }

    let mut best_triple: Option<(f64, Support)> = None;
    for i in 0..bisectors.len() {
        for j in i + 1..bisectors.len() {
            for k in j + 1..bisectors.len() {
                let Some(w) = minimax::barycentric_origin(bisectors[i], bisectors[j], bisectors[k])
                else {
                    continue;
                };
                let worst = w.iter().copied().fold(f64::INFINITY, f64::min);
                // Distance-like violation: negative weight times the span.
                let span = dist(bisectors[i], bisectors[j])
                    .max(dist(bisectors[j], bisectors[k]))
                    .max(dist(bisectors[i], bisectors[k]));
                let gap = (-worst).max(0.0) * span;
                best_gap = best_gap.min(gap);
                if gap <= EPS_GEO && best_triple.as_ref().is_none_or(|(g, _)| gap < *g) {
                    let clamped = w.map(|c| c.max(0.0));
                    let total: f64 = clamped.iter().sum();
                    best_triple = Some((
                        gap,
                        Support {
                            edges: vec![active[i], active[j], active[k]],
                            coefficients: clamped.iter().map(|c| c / total).collect(),
                        },
                    ));
                }
            }
        }
    }
    best_triple
        .map(|(_, s)| s)
        .ok_or(WitnessError::ContainmentFailure { gap: best_gap })
}

/// Minimum Steiner star: the geometric median of `s` and its total distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteinerStar {
    pub center: Point,
    pub total: f64,
    /// Whether the center passed the first-order test (subgradient norm or
    /// the vertex condition).
    pub certified: bool,
}

fn star_total(points: &[Point], y: Point) -> f64 {
    points.iter().map(|p| dist(*p, y)).sum()
}

/// Weiszfeld iteration from the centroid, with the Vardi–Zhang step off data
/// points that are not themselves optimal.
///
/// # Panics
/// If `points` is empty.
pub fn steiner_star(points: &[Point]) -> SteinerStar {
    assert!(!points.is_empty(), "Steiner star of an empty set");
    let transform = Similarity::to_unit_square(points);
    let pts: Vec<Point> = points.iter().map(|p| transform.apply(*p)).collect();
    let centroid = pts.iter().fold(Point::ORIGIN, |acc, p| acc + *p) * (1.0 / pts.len() as f64);
    let coincide = 1e-14;

    let mut y = centroid;
    for _ in 0..200_000 {
        let mut pull = Point::ORIGIN;
        let mut inv_sum = 0.0;
        let mut resultant = Point::ORIGIN;
        let mut at_point = 0.0;
        for p in &pts {
            let d = dist(*p, y);
            if d <= coincide {
                at_point += 1.0;
            } else {
                pull += *p * (1.0 / d);
                inv_sum += 1.0 / d;
                resultant += (*p - y) * (1.0 / d);
            }
        }
        if inv_sum == 0.0 {
            break;
        }
        let next = if at_point == 0.0 {
            pull * (1.0 / inv_sum)
        } else {
            let r = resultant.norm();
            if r <= at_point {
                break;
            }
            y + resultant * ((r - at_point) / (r * inv_sum))
        };
        let moved = dist(next, y);
        y = next;
        if moved <= 1e-16 {
            break;
        }
    }

    // Never worse than the trivial candidates.
    let mut best = (y, star_total(&pts, y));
    for cand in pts.iter().copied().chain(std::iter::once(centroid)) {
        let v = star_total(&pts, cand);
        if v < best.1 {
            best = (cand, v);
        }
    }
    let center = best.0;
    let certified = star_first_order(&pts, center) <= 1e-6;
    let center_out = transform.invert(center);
    SteinerStar {
        center: center_out,
        total: star_total(points, center_out),
        certified,
    }
}

/// Norm of the smallest subgradient of the star objective at `y` (zero when
/// `y` is optimal).
fn star_first_order(points: &[Point], y: Point) -> f64 {
    let mut resultant = Point::ORIGIN;
    let mut at_point = 0.0;
    for p in points {
        let d = dist(*p, y);
        if d <= 1e-14 {
            at_point += 1.0;
        } else {
            resultant += (y - *p) * (1.0 / d);
        }
    }
    (resultant.norm() - at_point).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::FINGERHUT_FACTOR;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
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

    fn triangle_sides(s: &PointSet) -> Matching {
        Matching::new(vec![(0, 2), (3, 4), (5, 1)], s).unwrap()
    }

    fn square_sides() -> (PointSet, Matching) {
        let s = PointSet::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0), p(1.0, 1.0)]).unwrap();
        let m = Matching::new(vec![(0, 1), (2, 3)], &s).unwrap();
        (s, m)
    }

    #[test]
    fn single_edge_returns_midpoint() {
        let w = minimize_h_segments(&[(p(-1.0, 0.0), p(1.0, 0.0))]).unwrap();
        assert_eq!(w.lambda_star, 1.0);
        assert!(w.o_star.norm() < 1e-15);
        assert!(w.converged);
        assert!(w.support.is_empty());
    }

    #[test]
    fn doubled_triangle_witness_is_centroid() {
        let s = doubled_triangle();
        let w = minimize_h(&s, &triangle_sides(&s)).unwrap();
        let centroid = p(0.5, 3f64.sqrt() / 6.0);
        assert!(
            (w.lambda_star - FINGERHUT_FACTOR).abs() < 1e-12,
            "{}",
            w.lambda_star
        );
        assert!(dist(w.o_star, centroid) < 1e-10);
        assert_eq!(w.active, vec![0, 1, 2]);
        assert_eq!(w.support.len(), 3);
        assert!(w.converged && w.residual < 1e-10);
    }

    /// Dense grid search over the unit square, refined twice.
    fn grid_oracle(segments: &[(Point, Point)]) -> (Point, f64) {
        let (mut lo, mut hi) = (p(0.0, 0.0), p(1.0, 1.0));
        let mut best = (lo, f64::INFINITY);
        for _ in 0..4 {
            let n = 200;
            for i in 0..=n {
                for j in 0..=n {
                    let x = p(
                        lo.x + (hi.x - lo.x) * i as f64 / n as f64,
                        lo.y + (hi.y - lo.y) * j as f64 / n as f64,
                    );
                    let v = h_max(segments, x).unwrap();
                    if v < best.1 {
                        best = (x, v);
                    }
                }
            }
            let r = (hi.x - lo.x) / 20.0;
            lo = best.0 - p(r, r);
            hi = best.0 + p(r, r);
        }
        best
    }

    #[test]
    fn square_sides_witness_matches_grid_oracle() {
        let (s, m) = square_sides();
        let (grid_point, grid_value) = grid_oracle(&m.segments(&s));
        assert!(dist(grid_point, p(0.5, 0.5)) < 1e-6);
        assert!((grid_value - 2f64.sqrt()).abs() < 1e-9);

        let w = minimize_h(&s, &m).unwrap();
        assert!(dist(w.o_star, p(0.5, 0.5)) < 1e-10, "{}", w.o_star);
        assert!((w.lambda_star - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(w.active, vec![0, 1]);
        assert_eq!(w.support, vec![0, 1]);
        assert!(w.converged);
    }

    #[test]
    fn active_set_examples() {
        let (s, m) = square_sides();
        assert_eq!(active_set(&s, &m, p(0.5, 0.5), 2f64.sqrt()), vec![0, 1]);

        let t = doubled_triangle();
        let sides = triangle_sides(&t);
        assert_eq!(
            active_set(&t, &sides, p(0.5, 3f64.sqrt() / 6.0), FINGERHUT_FACTOR),
            vec![0, 1, 2]
        );

        // the second edge's ellipse strictly contains the probe point
        let s2 = PointSet::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(0.0, 3.0), p(1.0, -3.0)]).unwrap();
        let m2 = Matching::new(vec![(0, 1), (2, 3)], &s2).unwrap();
        let o = p(0.5, 1.0);
        let lambda = h_max(&m2.segments(&s2), o).unwrap();
        assert_eq!(active_set(&s2, &m2, o, lambda), vec![0]);
    }

    #[test]
    fn certificate_examples() {
        let (s, m) = square_sides();
        let c = optimality_certificate(&s, &m, p(0.5, 0.5)).unwrap();
        assert!(c.passed);
        assert!(c.residual < 1e-15);
        assert_eq!(c.coefficients.len(), 2);
        for (_, w) in &c.coefficients {
            assert!((w - 0.5).abs() < 1e-12);
        }

        // moving off the optimum leaves a single active gradient
        let c = optimality_certificate(&s, &m, p(0.5, 0.4)).unwrap();
        assert!(!c.passed && c.residual > 0.1);

        let t = doubled_triangle();
        let c = optimality_certificate(&t, &triangle_sides(&t), p(0.5, 3f64.sqrt() / 6.0)).unwrap();
        assert!(c.passed && c.residual < 1e-12);
        for (_, w) in &c.coefficients {
            assert!((w - 1.0 / 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn caratheodory_examples() {
        let (s, m) = square_sides();
        let sup = caratheodory_support(&s, &m, &[0, 1], p(0.5, 0.5)).unwrap();
        assert_eq!(sup.edges, vec![0, 1]);
        assert!((sup.coefficients[0] - 0.5).abs() < 1e-12);

        let t = doubled_triangle();
        let sides = triangle_sides(&t);
        let sup = caratheodory_support(&t, &sides, &[0, 1, 2], p(0.5, 3f64.sqrt() / 6.0)).unwrap();
        assert_eq!(sup.edges, vec![0, 1, 2]);
        for w in &sup.coefficients {
            assert!((w - 1.0 / 3.0).abs() < 1e-9);
        }

        // witness strictly inside a single segment
        let one = PointSet::new(vec![p(-1.0, 0.0), p(1.0, 0.0)]).unwrap();
        let m1 = Matching::sequential(&one);
        assert_eq!(
            caratheodory_support(&one, &m1, &[0], p(0.0, 0.0)),
            Err(WitnessError::WitnessOnSegment)
        );
    }

    #[test]
    fn crossing_segments_give_lambda_one() {
        let w = minimize_h_segments(&[
            (p(0.0, 0.0), p(1.0, 1.0)),
            (p(1.0, 0.0), p(0.0, 1.0)),
            (p(0.2, 0.5), p(0.9, 0.5)),
        ])
        .unwrap();
        assert!(w.lambda_star - 1.0 < 1e-12);
        assert!(dist(w.o_star, p(0.5, 0.5)) < 1e-9);
        assert!(w.converged);
    }

    #[test]
    fn degenerate_edges_rejected() {
        let s = PointSet::new(vec![p(0.0, 0.0), p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)]).unwrap();
        let m = Matching::sequential(&s);
        assert_eq!(minimize_h(&s, &m), Err(WitnessError::DegenerateEdge(0)));
    }

    #[test]
    fn steiner_examples() {
        let tri = [p(0.0, 0.0), p(1.0, 0.0), p(0.5, 3f64.sqrt() / 2.0)];
        let star = steiner_star(&tri);
        assert!(dist(star.center, p(0.5, 3f64.sqrt() / 6.0)) < 1e-9);
        assert!((star.total - 3f64.sqrt()).abs() < 1e-12);
        assert!(star.certified);

        let two = [p(0.0, 0.0), p(3.0, 4.0)];
        let star = steiner_star(&two);
        assert!((star.total - 5.0).abs() < 1e-12);
        assert!(star.certified);

        let sq = [p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)];
        let star = steiner_star(&sq);
        assert!(dist(star.center, p(0.5, 0.5)) < 1e-12);
        assert!((star.total - 2.0 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn steiner_vertex_optimum() {
        // Three points stacked at the origin outweigh the other two.
        let pts = [
            p(0.0, 0.0),
            p(0.0, 0.0),
            p(0.0, 0.0),
            p(1.0, 0.0),
            p(0.0, 1.0),
        ];
        let star = steiner_star(&pts);
        assert!(star.center.norm() < 1e-14);
        assert!((star.total - 2.0).abs() < 1e-12);
        assert!(star.certified);
    }

    #[test]
    fn steiner_dominates_inputs() {
        let pts = [
            p(0.1, 0.9),
            p(0.7, 0.2),
            p(0.4, 0.4),
            p(2.0, 1.5),
            p(-1.0, 0.3),
            p(0.0, 0.0),
        ];
        let star = steiner_star(&pts);
        let centroid = pts.iter().fold(Point::ORIGIN, |a, q| a + *q) * (1.0 / 6.0);
        for q in pts.iter().copied().chain([centroid]) {
            assert!(star.total <= star_total(&pts, q) + 1e-12);
        }
        assert!(star.certified);
    }
}
