//! Minimization of a pointwise maximum of smooth convex functions on the plane.
//!
//! Three phases, each starting from the best point of the previous one:
//!
//! 1. Subgradient descent with step `D / sqrt(k)` (`D` the instance diameter),
//!    keeping the best iterate.
//! 2. Nested golden-section search (outer over `x`, inner over `y`) inside the
//!    intersection of the pieces' sublevel boxes at the phase-1 value. The
//!    partial minimum `x -> min_y F(x, y)` of a convex `F` is convex, so both
//!    searches are exact bracketing methods.
//! 3. Active-set Newton on the KKT system
//!    `sum mu_i grad f_i = 0, sum mu_i = 1, f_i = t` for supports of size 2
//!    and 3 drawn from the near-active pieces. A solution with `mu >= 0` that
//!    dominates every other piece is a global minimizer.
//!
//! Phase 3 recovers full precision when the minimum sits on a smooth seam
//! (two pieces tangent), where golden section alone stalls near `sqrt(eps)`.

use nalgebra::{DMatrix, DVector};

use crate::geom::{Point, Sym2};

/// A smooth convex function of the plane, possibly nondifferentiable on a
/// small exceptional set where `gradient` returns `None`.
pub(crate) trait Piece {
    fn value(&self, x: Point) -> f64;
    fn gradient(&self, x: Point) -> Option<Point>;
    fn hessian(&self, x: Point) -> Option<Sym2>;
    /// Global infimum of the piece.
    fn lower_bound(&self) -> f64;
    /// Axis-aligned box containing `{x : value(x) <= level}`, or `None` if the
    /// sublevel set is empty.
    fn sublevel_box(&self, level: f64) -> Option<(Point, Point)>;
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SolverConfig {
    pub subgradient_iters: usize,
    pub golden_iters: usize,
    pub max_candidates: usize,
    pub newton_iters: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            subgradient_iters: 5000,
            golden_iters: 80,
            max_candidates: 8,
            newton_iters: 40,
        }
    }
}

pub(crate) fn max_value<P: Piece>(pieces: &[P], x: Point) -> f64 {
    pieces
        .iter()
        .map(|p| p.value(x))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn argmax<P: Piece>(pieces: &[P], x: Point) -> (usize, f64) {
    pieces
        .iter()
        .enumerate()
        .map(|(i, p)| (i, p.value(x)))
        .fold((0, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        })
}

fn lower_bound<P: Piece>(pieces: &[P]) -> f64 {
    pieces
        .iter()
        .map(Piece::lower_bound)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Whether `value` attains the trivial bound `max_i inf f_i`.
pub(crate) fn at_lower_bound<P: Piece>(pieces: &[P], value: f64) -> bool {
    let lb = lower_bound(pieces);
    value <= lb + 1e-12 * lb.abs().max(1.0)
}

/// Minimizes `max_i f_i` starting from `start`. `bounds` must contain a
/// minimizer; `diameter` sets the subgradient step scale.
pub(crate) fn minimize<P: Piece>(
    pieces: &[P],
    start: Point,
    bounds: (Point, Point),
    diameter: f64,
    config: &SolverConfig,
) -> Point {
    assert!(!pieces.is_empty(), "minimax over an empty family");
    let (x1, v1) = subgradient_phase(pieces, start, diameter, config.subgradient_iters);
    if at_lower_bound(pieces, v1) {
        return x1;
    }

    let search_box = pieces
        .iter()
        .try_fold(bounds, |(lo, hi), p| {
            let (plo, phi) = p.sublevel_box(v1)?;
            Some((
                Point::new(lo.x.max(plo.x), lo.y.max(plo.y)),
                Point::new(hi.x.min(phi.x), hi.y.min(phi.y)),
            ))
        })
        .filter(|(lo, hi)| lo.x <= hi.x && lo.y <= hi.y)
        .unwrap_or(bounds);
    let pad = 1e-9 * diameter.max(f64::MIN_POSITIVE);
    let search_box = (
        search_box.0 - Point::new(pad, pad),
        search_box.1 + Point::new(pad, pad),
    );
    let (x2, v2) = golden_phase(pieces, search_box, config.golden_iters);
    let (mut best, mut best_value) = if v2 <= v1 { (x2, v2) } else { (x1, v1) };

    if let Some(x3) = newton_phase(pieces, best, config) {
        let v3 = max_value(pieces, x3);
        if v3 <= best_value + 1e-10 * best_value.abs().max(1.0) {
            best = x3;
            best_value = v3;
        }
    }
    debug_assert!(best_value.is_finite());
    best
}

fn subgradient_phase<P: Piece>(
    pieces: &[P],
    start: Point,
    diameter: f64,
    iters: usize,
) -> (Point, f64) {
    let mut x = start;
    let (mut best, mut best_value) = (x, max_value(pieces, x));
    for k in 1..=iters {
        let (i, v) = argmax(pieces, x);
        if v < best_value {
            best = x;
            best_value = v;
        }
        // A maximal piece sitting at its own minimum certifies optimality.
        let Some(g) = pieces[i].gradient(x) else {
            break;
        };
        let norm = g.norm();
        if norm <= 1e-15 || at_lower_bound(pieces, v) {
            break;
        }
        x -= g * (diameter / (k as f64).sqrt() / norm);
    }
    let v = max_value(pieces, x);
    if v < best_value {
        (x, v)
    } else {
        (best, best_value)
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimization of a convex function on `[lo, hi]`.
fn golden(lo: f64, hi: f64, iters: usize, mut f: impl FnMut(f64) -> f64) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if b - a <= f64::EPSILON * (a.abs() + b.abs()) {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let (fa, fb) = (f(a), f(b));
    [(c, fc), (d, fd), (a, fa), (b, fb)]
        .into_iter()
        .fold((c, fc), |best, cur| if cur.1 < best.1 { cur } else { best })
}

fn golden_phase<P: Piece>(pieces: &[P], (lo, hi): (Point, Point), iters: usize) -> (Point, f64) {
    let inner = |x: f64| golden(lo.y, hi.y, iters, |y| max_value(pieces, Point::new(x, y)));
    let (x, _) = golden(lo.x, hi.x, iters, |x| inner(x).1);
    let (y, v) = inner(x);
    (Point::new(x, y), v)
}

fn newton_phase<P: Piece>(pieces: &[P], x0: Point, config: &SolverConfig) -> Option<Point> {
    let values: Vec<f64> = pieces.iter().map(|p| p.value(x0)).collect();
    let top = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let window = 1e-2 * top.abs().max(1.0);
    let mut order: Vec<usize> = (0..pieces.len())
        .filter(|&i| values[i] >= top - window)
        .collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));
    order.truncate(config.max_candidates);

    // Supports whose lowest-ranked member is `k`, for increasing `k`.
    for k in 1..order.len() {
        for i in 0..k {
            let pair = [order[i], order[k]];
            if let Some(x) = solve_kkt(pieces, &pair, x0, config.newton_iters) {
                return Some(x);
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                let triple = [order[i], order[j], order[k]];
                if let Some(x) = solve_kkt(pieces, &triple, x0, config.newton_iters) {
                    return Some(x);
                }
            }
        }
    }
    None
}

/// Newton's method on the KKT system of `min t s.t. f_i(x) <= t, i in support`
/// with every constraint held active. Returns `x` only if the multipliers are
/// nonnegative and no other piece exceeds `t`.
fn solve_kkt<P: Piece>(pieces: &[P], support: &[usize], x0: Point, iters: usize) -> Option<Point> {
    let k = support.len();
    let n = 3 + k;
    let mut x = x0;
    let mut t = support
        .iter()
        .map(|&i| pieces[i].value(x))
        .fold(f64::NEG_INFINITY, f64::max);
    let grads: Option<Vec<Point>> = support.iter().map(|&i| pieces[i].gradient(x)).collect();
    let (_, mut mu) = min_norm_point(&grads?);

    let mut converged = false;
    for _ in 0..iters {
        let mut g = Vec::with_capacity(k);
        let mut weighted = Sym2::default();
        let mut stationarity = Point::ORIGIN;
        for (&i, &m) in support.iter().zip(&mu) {
            let gi = pieces[i].gradient(x)?;
            weighted = weighted + pieces[i].hessian(x)? * m;
            stationarity += gi * m;
            g.push(gi);
        }
        let mut residual = DVector::zeros(n);
        residual[0] = stationarity.x;
        residual[1] = stationarity.y;
        residual[2] = mu.iter().sum::<f64>() - 1.0;
        for (r, &i) in support.iter().enumerate() {
            residual[3 + r] = pieces[i].value(x) - t;
        }
        let size = residual.amax();
        if size <= 1e-14 {
            converged = true;
            break;
        }

        let mut jac = DMatrix::zeros(n, n);
        jac[(0, 0)] = weighted.xx;
        jac[(0, 1)] = weighted.xy;
        jac[(1, 0)] = weighted.xy;
        jac[(1, 1)] = weighted.yy;
        for r in 0..k {
            jac[(0, 3 + r)] = g[r].x;
            jac[(1, 3 + r)] = g[r].y;
            jac[(2, 3 + r)] = 1.0;
            jac[(3 + r, 0)] = g[r].x;
            jac[(3 + r, 1)] = g[r].y;
            jac[(3 + r, 2)] = -1.0;
        }
        let step = jac.lu().solve(&(-residual))?;
        if !step.iter().all(|v| v.is_finite()) {
            return None;
        }
        let dx = Point::new(step[0], step[1]);
        if dx.norm() > 1.0 {
            return None;
        }
        x += dx;
        t += step[2];
        for (r, m) in mu.iter_mut().enumerate() {
            *m += step[3 + r];
        }
        if step.amax() <= 1e-15 * (1.0 + t.abs()) {
            converged = true;
            break;
        }
    }
    if !converged {
        // One last residual check: Newton may stagnate at round-off level.
        let worst = support
            .iter()
            .map(|&i| (pieces[i].value(x) - t).abs())
            .fold(0.0, f64::max);
        if worst > 1e-12 {
            return None;
        }
    }
    let mu_tol = 1e-9;
    if mu.iter().any(|&m| m < -mu_tol) {
        return None;
    }
    let slack = 1e-12 * t.abs().max(1.0);
    if pieces.iter().any(|p| p.value(x) > t + slack) {
        return None;
    }
    Some(x)
}

/// Point of minimum norm in the convex hull of `vectors`, with its convex
/// coefficients. Exhaustive over vertices, edges and triangles, which is
/// exact in the plane.
pub(crate) fn min_norm_point(vectors: &[Point]) -> (Point, Vec<f64>) {
    let n = vectors.len();
    assert!(n > 0, "min-norm point of an empty set");
    let mut best_norm = f64::INFINITY;
    let mut best = (Point::ORIGIN, vec![0.0; n]);
    let mut offer = |p: Point, coeffs: &[(usize, f64)], best: &mut (Point, Vec<f64>)| {
        let norm = p.norm();
        if norm < best_norm {
            best_norm = norm;
            best.0 = p;
            best.1.iter_mut().for_each(|c| *c = 0.0);
            for &(i, c) in coeffs {
                best.1[i] = c;
            }
        }
    };
    for (i, &v) in vectors.iter().enumerate() {
        offer(v, &[(i, 1.0)], &mut best);
    }
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (vectors[i], vectors[j]);
            let d = b - a;
            let len2 = d.dot(d);
            if len2 == 0.0 {
                continue;
            }
            let s = -a.dot(d) / len2;
            if s > 0.0 && s < 1.0 {
                offer(a + d * s, &[(i, 1.0 - s), (j, s)], &mut best);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if let Some(w) = barycentric_origin(vectors[i], vectors[j], vectors[k]) {
                    if w.iter().all(|&c| c >= 0.0) {
                        let p = vectors[i] * w[0] + vectors[j] * w[1] + vectors[k] * w[2];
                        offer(p, &[(i, w[0]), (j, w[1]), (k, w[2])], &mut best);
                    }
                }
            }
        }
    }
    best
}

/// Barycentric coordinates of the origin in triangle `abc`, or `None` when the
/// triangle is degenerate.
pub(crate) fn barycentric_origin(a: Point, b: Point, c: Point) -> Option<[f64; 3]> {
    let area = (b - a).cross(c - a);
    let scale = (b - a).norm() * (c - a).norm();
    if area.abs() <= 1e-14 * scale || area == 0.0 {
        return None;
    }
    let wa = b.cross(c) / area;
    let wb = c.cross(a) / area;
    let wc = a.cross(b) / area;
    Some([wa, wb, wc])
}
