//! Alternating-cycle descent.
//!
//! Translate the witness `o*` of a matching to the origin and let `lambda` be
//! its minimax value. Blue edges are matched pairs attaining
//! `|x| + |y| = lambda |x - y|`; red edges are vertex pairs with
//! `|x| + |y| < lambda |x - y|`. Along a cycle alternating blue and red edges
//!
//! ```text
//! sum |y_i - x_{i+1}| > (1/lambda) sum (|y_i| + |x_{i+1}|) = sum |x_i - y_i|
//! ```
//!
//! so swapping the blue edges for the red ones strictly raises the cost.
//! When `lambda > 2/sqrt(3)` such a cycle always exists, so repeating
//! witness, graph, cycle, swap ends at a matching whose ellipses of factor
//! `2/sqrt(3)` share a point.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{dist, Point, EPS_GEO, FINGERHUT_FACTOR};
use crate::matching::{improvement_threshold, Matching, MatchingError, PointSet};
use crate::witness::{self, minimize_h, WitnessError, WitnessResult, EPS_ACT};

/// Largest graph searched exhaustively for alternating cycles.
pub const GRAPH_VERTEX_CAP: usize = 16;

/// Iteration cap of [`descend`].
pub const MAX_STEPS: usize = 500;

/// Relative strict margin for red edges: `|x| + |y| < lambda |x - y| - EPS_RED * lambda * scale`.
pub const EPS_RED: f64 = 1e-9;

/// Upper bound on cycles tried per graph before giving up on it.
const CYCLE_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DescentError {
    #[error("minimax value {0} does not exceed 1")]
    LambdaNotAboveOne(f64),
    #[error("vertex {0} coincides with the witness")]
    VertexAtOrigin(usize),
    #[error("graph has {vertices} vertices, above the search cap {cap}")]
    SizeCap { vertices: usize, cap: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(&'static str),
    #[error("an alternating cycle needs at least two blue edges")]
    EmptyCycle,
    #[error("cycle edge ({0}, {1}) is not in the matching")]
    CycleNotInMatching(usize, usize),
    #[error("swap did not improve the cost: {before} -> {after}")]
    ImprovementViolation { before: f64, after: f64 },
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
}

/// Vertex set of selected matched edges, translated so the witness is the
/// origin, with blue (matched) and red (strictly improving) pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BicoloredGraph {
    pub vertices: Vec<Point>,
    /// Index of each vertex in the originating point set.
    pub point_ids: Vec<usize>,
    pub blue_edges: Vec<(usize, usize)>,
    pub red_edges: Vec<(usize, usize)>,
    pub origin_excluded: bool,
}

impl BicoloredGraph {
    /// Builds a graph from explicit color classes. Only the combinatorial
    /// invariants are checked: blue edges form a perfect matching and no
    /// pair carries both colors.
    pub fn from_parts(
        vertices: Vec<Point>,
        blue_edges: Vec<(usize, usize)>,
        red_edges: Vec<(usize, usize)>,
    ) -> Result<Self, DescentError> {
        let n = vertices.len();
        let mut covered = vec![false; n];
        for &(u, v) in &blue_edges {
            if u >= n || v >= n || u == v {
                return Err(DescentError::InvalidGraph("blue edge out of range"));
            }
            if std::mem::replace(&mut covered[u], true) || std::mem::replace(&mut covered[v], true)
            {
                return Err(DescentError::InvalidGraph("blue edges share a vertex"));
            }
        }
        if covered.iter().any(|c| !c) {
            return Err(DescentError::InvalidGraph("blue edges are not perfect"));
        }
        let key = |(u, v): (usize, usize)| (u.min(v), u.max(v));
        for &e in &red_edges {
            if e.0 >= n || e.1 >= n || e.0 == e.1 {
                return Err(DescentError::InvalidGraph("red edge out of range"));
            }
            if blue_edges.iter().any(|&b| key(b) == key(e)) {
                return Err(DescentError::InvalidGraph("pair is both blue and red"));
            }
        }
        let origin_excluded = vertices.iter().all(|v| v.norm() > 0.0);
        Ok(Self {
            point_ids: (0..n).collect(),
            vertices,
            blue_edges,
            red_edges,
            origin_excluded,
        })
    }

    fn partners(&self) -> Vec<usize> {
        let mut partner = vec![usize::MAX; self.vertices.len()];
        for &(u, v) in &self.blue_edges {
            partner[u] = v;
            partner[v] = u;
        }
        partner
    }

    fn red_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(u, v) in &self.red_edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }
}

/// Simple even cycle `x1 y1 x2 y2 ... xm ym` closing back to `x1`, with blue
/// edges `x_i y_i` and red edges `y_i x_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternatingCycle {
    /// Graph vertex indices.
    pub vertices: Vec<usize>,
    /// The same cycle as point-set indices.
    pub points: Vec<usize>,
}

impl AlternatingCycle {
    /// Number of blue edges.
    pub fn blue_len(&self) -> usize {
        self.points.len() / 2
    }
}

/// Graph on the endpoints of `edges` (positions in `m`) around `o`.
pub fn build_graph(
    s: &PointSet,
    m: &Matching,
    edges: &[usize],
    o: Point,
    lambda: f64,
) -> Result<BicoloredGraph, DescentError> {
    if lambda.is_nan() || lambda <= 1.0 {
        return Err(DescentError::LambdaNotAboveOne(lambda));
    }
    let mut point_ids = Vec::with_capacity(2 * edges.len());
    let mut blue_edges = Vec::with_capacity(edges.len());
    for &k in edges {
        let (i, j) = m.pairs()[k];
        blue_edges.push((point_ids.len(), point_ids.len() + 1));
        point_ids.push(i);
        point_ids.push(j);
    }
    let vertices: Vec<Point> = point_ids.iter().map(|&i| s.point(i) - o).collect();
    // Rotation- and scale-covariant length unit.
    let scale = vertices.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if let Some(v) = vertices.iter().position(|v| v.norm() <= EPS_GEO * scale) {
        return Err(DescentError::VertexAtOrigin(v));
    }
    let margin = EPS_RED * lambda * scale;
    let mut red_edges = Vec::new();
    for u in 0..vertices.len() {
        for v in u + 1..vertices.len() {
            if u / 2 == v / 2 {
                continue;
            }
            let (x, y) = (vertices[u], vertices[v]);
            let d = dist(x, y);
            if d <= EPS_GEO * scale {
                continue;
            }
            if x.norm() + y.norm() < lambda * d - margin {
                red_edges.push((u, v));
            }
        }
    }
    Ok(BicoloredGraph {
        vertices,
        point_ids,
        blue_edges,
        red_edges,
        origin_excluded: true,
    })
}

/// Visits alternating cycles by increasing number of blue edges until `visit`
/// returns `true`. Returns whether the search was stopped by `visit`.
fn for_each_cycle(
    g: &BicoloredGraph,
    mut visit: impl FnMut(AlternatingCycle) -> bool,
) -> Result<bool, DescentError> {
    let n = g.vertices.len();
    if n > GRAPH_VERTEX_CAP {
        return Err(DescentError::SizeCap {
            vertices: n,
            cap: GRAPH_VERTEX_CAP,
        });
    }
    let partner = g.partners();
    let red = g.red_adjacency();
    let mut used = vec![false; n];
    let mut path = Vec::with_capacity(n);

    struct Search<'a, F> {
        partner: &'a [usize],
        red: &'a [Vec<usize>],
        used: &'a mut [bool],
        path: &'a mut Vec<usize>,
        ids: &'a [usize],
        visit: F,
    }

    impl<F: FnMut(AlternatingCycle) -> bool> Search<'_, F> {
        // `path` ends with a blue edge; extend by red + blue until `target`
        // blue edges, then close with a red edge back to the start.
        fn extend(&mut self, target: usize) -> bool {
            let last = *self.path.last().expect("nonempty path");
            if self.path.len() == 2 * target {
                if self.red[last].contains(&self.path[0]) {
                    let vertices = self.path.clone();
                    let points = vertices.iter().map(|&v| self.ids[v]).collect();
                    return (self.visit)(AlternatingCycle { vertices, points });
                }
                return false;
            }
            for idx in 0..self.red[last].len() {
                let x = self.red[last][idx];
                let y = self.partner[x];
                if self.used[x] || self.used[y] {
                    continue;
                }
                self.used[x] = true;
                self.used[y] = true;
                self.path.push(x);
                self.path.push(y);
                let stop = self.extend(target);
                self.path.truncate(self.path.len() - 2);
                self.used[x] = false;
                self.used[y] = false;
                if stop {
                    return true;
                }
            }
            false
        }
    }

    let mut search = Search {
        partner: &partner,
        red: &red,
        used: &mut used,
        path: &mut path,
        ids: &g.point_ids,
        visit: &mut visit,
    };
    for target in 2..=g.blue_edges.len() {
        for &(u, v) in &g.blue_edges {
            for (x1, y1) in [(u, v), (v, u)] {
                search.used[x1] = true;
                search.used[y1] = true;
                search.path.clear();
                search.path.extend([x1, y1]);
                let stop = search.extend(target);
                search.used[x1] = false;
                search.used[y1] = false;
                if stop {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Shortest alternating cycle, if any.
pub fn find_alternating_cycle(
    g: &BicoloredGraph,
) -> Result<Option<AlternatingCycle>, DescentError> {
    let mut found = None;
    for_each_cycle(g, |c| {
        found = Some(c);
        true
    })?;
    Ok(found)
}

/// Swaps the cycle's blue edges for its red edges.
pub fn apply_cycle(
    m: &Matching,
    c: &AlternatingCycle,
    s: &PointSet,
) -> Result<Matching, DescentError> {
    let pts = &c.points;
    if pts.len() < 4 || !pts.len().is_multiple_of(2) {
        return Err(DescentError::EmptyCycle);
    }
    let mut drop = Vec::with_capacity(pts.len() / 2);
    for i in (0..pts.len()).step_by(2) {
        let pos = m
            .position_of(pts[i], pts[i + 1])
            .ok_or(DescentError::CycleNotInMatching(pts[i], pts[i + 1]))?;
        drop.push(pos);
    }
    let mut pairs: Vec<(usize, usize)> = m
        .pairs()
        .iter()
        .enumerate()
        .filter(|(k, _)| !drop.contains(k))
        .map(|(_, &p)| p)
        .collect();
    for i in (1..pts.len()).step_by(2) {
        pairs.push((pts[i], pts[(i + 1) % pts.len()]));
    }
    let next = Matching::new(pairs, s)?;
    if next.cost() <= m.cost() + improvement_threshold(m.cost()) {
        return Err(DescentError::ImprovementViolation {
            before: m.cost(),
            after: next.cost(),
        });
    }
    Ok(next)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DescentStatus {
    /// Final minimax value is at most `2/sqrt(3) + eps`.
    Converged,
    /// The value exceeds the bound but no improving cycle was found.
    CycleNotFound,
    /// The witness solver failed or did not certify its minimizer.
    SolverFailure,
    /// [`MAX_STEPS`] iterations without converging.
    StepLimit,
    /// Zero-length edges could not be removed (all remaining points coincide
    /// or lie on every other edge).
    Degenerate,
}

/// One iteration of the descent: the witness value (absent for zero-edge
/// repair swaps), the matching cost and the length of the cycle applied next.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescentStep {
    pub lambda_star: Option<f64>,
    pub cost: f64,
    pub cycle_len: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescentOutcome {
    pub matching: Matching,
    pub witness: Option<WitnessResult>,
    pub trace: Vec<DescentStep>,
    pub status: DescentStatus,
}

impl DescentOutcome {
    pub fn is_flagged(&self) -> bool {
        self.status != DescentStatus::Converged
    }
}

/// Replaces zero-length edges `aa` using another edge `cd` with `a` off the
/// segment `cd`: `{aa, cd} -> {ac, ad}` gains `|a-c| + |a-d| - |c-d| > 0`.
fn repair_zero_edges(s: &PointSet, m: &Matching, trace: &mut Vec<DescentStep>) -> Option<Matching> {
    let tol = EPS_GEO * crate::geom::extent(s.points()).max(f64::MIN_POSITIVE);
    let mut m = m.clone();
    loop {
        let pairs = m.pairs().to_vec();
        let Some(zero) = pairs
            .iter()
            .position(|&(i, j)| dist(s.point(i), s.point(j)) <= tol)
        else {
            return Some(m);
        };
        let (a, b) = pairs[zero];
        let partner = pairs.iter().enumerate().find(|&(k, &(c, d))| {
            k != zero
                && crate::geom::Segment::new(s.point(c), s.point(d)).distance_to(s.point(a)) > tol
        });
        let (k, &(c, d)) = partner?;
        let mut next: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != zero && p != k)
            .map(|(_, &e)| e)
            .collect();
        next.extend([(a, c), (b, d)]);
        m = Matching::new(next, s).ok()?;
        trace.push(DescentStep {
            lambda_star: None,
            cost: m.cost(),
            cycle_len: Some(2),
        });
    }
}

/// Tries graphs of growing size until one yields an improving cycle.
fn improve(s: &PointSet, m: &Matching, w: &WitnessResult) -> Option<(Matching, usize)> {
    let segments = m.segments(s);
    let mut edge_sets: Vec<Vec<usize>> = Vec::new();
    if w.support.len() >= 2 {
        edge_sets.push(w.support.clone());
    }
    edge_sets.push(w.active.clone());
    let mut tol = EPS_ACT * 10.0;
    while tol <= 1e-3 * (1.0 + 1e-9) {
        edge_sets.push(witness::active_with_tolerance(
            &segments,
            w.o_star,
            w.lambda_star,
            tol,
        ));
        tol *= 10.0;
    }
    edge_sets.dedup();

    for edges in edge_sets {
        if edges.len() < 2 || 2 * edges.len() > GRAPH_VERTEX_CAP {
            continue;
        }
        let Ok(g) = build_graph(s, m, &edges, w.o_star, w.lambda_star) else {
            continue;
        };
        let mut result = None;
        let mut attempts = 0;
        let _ = for_each_cycle(&g, |c| {
            attempts += 1;
            if let Ok(next) = apply_cycle(m, &c, s) {
                result = Some((next, c.blue_len()));
                return true;
            }
            attempts >= CYCLE_ATTEMPTS
        });
        if result.is_some() {
            return result;
        }
    }
    None
}

/// Alternating-cycle descent from `init` until the witness value is at most
/// `2/sqrt(3) + eps_thm`. Every failure mode is reported through
/// [`DescentStatus`].
pub fn descend(s: &PointSet, init: &Matching, eps_thm: f64) -> DescentOutcome {
    let mut trace = Vec::new();
    let Some(mut m) = repair_zero_edges(s, init, &mut trace) else {
        return DescentOutcome {
            matching: init.clone(),
            witness: None,
            trace,
            status: DescentStatus::Degenerate,
        };
    };
    let mut witness = None;
    for _ in 0..MAX_STEPS {
        let w = match minimize_h(s, &m) {
            Ok(w) => w,
            Err(_) => {
                return DescentOutcome {
                    matching: m,
                    witness,
                    trace,
                    status: DescentStatus::SolverFailure,
                }
            }
        };
        trace.push(DescentStep {
            lambda_star: Some(w.lambda_star),
            cost: m.cost(),
            cycle_len: None,
        });
        let done = w.lambda_star <= FINGERHUT_FACTOR + eps_thm;
        let converged = w.converged;
        let step = if done { None } else { improve(s, &m, &w) };
        witness = Some(w);
        if done {
            let status = if converged {
                DescentStatus::Converged
            } else {
                DescentStatus::SolverFailure
            };
            return DescentOutcome {
                matching: m,
                witness,
                trace,
                status,
            };
        }
        let Some((next, len)) = step else {
            let status = if converged {
                DescentStatus::CycleNotFound
            } else {
                DescentStatus::SolverFailure
            };
            return DescentOutcome {
                matching: m,
                witness,
                trace,
                status,
            };
        };
        if let Some(last) = trace.last_mut() {
            last.cycle_len = Some(len);
        }
        m = next;
    }
    DescentOutcome {
        matching: m,
        witness,
        trace,
        status: DescentStatus::StepLimit,
    }
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

    fn square_graph() -> (PointSet, Matching, BicoloredGraph) {
        let s = square();
        let m = Matching::new(vec![(0, 1), (2, 3)], &s).unwrap();
        let g = build_graph(&s, &m, &[0, 1], p(0.5, 0.5), 2f64.sqrt()).unwrap();
        (s, m, g)
    }

    /// The six-vertex pattern with blue `a_i b_i` and red
    /// `a1a2, a1b2, b1a3, b1b3`; vertices ordered a1 a2 a3 b1 b2 b3.
    pub(crate) fn no_cycle_graph() -> BicoloredGraph {
        let vertices = (0..6)
            .map(|k| p(1.0, 0.0).rotate(k as f64 * std::f64::consts::PI / 3.0))
            .collect();
        BicoloredGraph::from_parts(
            vertices,
            vec![(0, 3), (1, 4), (2, 5)],
            vec![(0, 1), (0, 4), (3, 2), (3, 5)],
        )
        .unwrap()
    }

    #[test]
    fn square_graph_colors() {
        let (_, _, g) = square_graph();
        assert_eq!(g.blue_edges, vec![(0, 1), (2, 3)]);
        // vertices: (0,0) (1,0) (0,1) (1,1); diagonals are 0-3 and 1-2
        assert_eq!(g.red_edges, vec![(0, 3), (1, 2)]);
        assert!(g.origin_excluded);
    }

    #[test]
    fn doubled_triangle_has_no_red_edges() {
        let h = 3f64.sqrt() / 2.0;
        let s = PointSet::new(vec![
            p(0.0, 0.0),
            p(0.0, 0.0),
            p(1.0, 0.0),
            p(1.0, 0.0),
            p(0.5, h),
            p(0.5, h),
        ])
        .unwrap();
        let m = Matching::new(vec![(0, 2), (3, 4), (5, 1)], &s).unwrap();
        let g = build_graph(&s, &m, &[0, 1, 2], p(0.5, h / 3.0), FINGERHUT_FACTOR).unwrap();
        assert!(g.red_edges.is_empty(), "{:?}", g.red_edges);
        assert_eq!(find_alternating_cycle(&g).unwrap(), None);
    }

    #[test]
    fn build_graph_errors() {
        let s = square();
        let m = Matching::new(vec![(0, 1), (2, 3)], &s).unwrap();
        assert_eq!(
            build_graph(&s, &m, &[0, 1], p(0.5, 0.5), 1.0),
            Err(DescentError::LambdaNotAboveOne(1.0))
        );
        assert_eq!(
            build_graph(&s, &m, &[0, 1], p(0.0, 0.0), 1.5),
            Err(DescentError::VertexAtOrigin(0))
        );
    }

    #[test]
    fn square_cycle_and_swap() {
        let (s, m, g) = square_graph();
        let c = find_alternating_cycle(&g).unwrap().expect("cycle");
        assert_eq!(c.blue_len(), 2);
        assert_eq!(c.points, vec![0, 1, 2, 3]);
        let next = apply_cycle(&m, &c, &s).unwrap();
        assert_eq!(next.pairs(), &[(0, 3), (1, 2)]);
        assert!((next.cost() - 2.0 * 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn no_cycle_pattern() {
        assert_eq!(find_alternating_cycle(&no_cycle_graph()).unwrap(), None);
    }

    #[test]
    fn no_red_edges_no_cycle() {
        let g = BicoloredGraph::from_parts(
            vec![p(1.0, 0.0), p(0.0, 1.0), p(-1.0, 0.0), p(0.0, -1.0)],
            vec![(0, 1), (2, 3)],
            vec![],
        )
        .unwrap();
        assert_eq!(find_alternating_cycle(&g).unwrap(), None);
    }

    #[test]
    fn from_parts_validation() {
        let v = vec![p(1.0, 0.0); 4];
        assert!(BicoloredGraph::from_parts(v.clone(), vec![(0, 1)], vec![]).is_err());
        assert!(BicoloredGraph::from_parts(v.clone(), vec![(0, 1), (1, 2)], vec![]).is_err());
        assert!(BicoloredGraph::from_parts(v.clone(), vec![(0, 1), (2, 3)], vec![(1, 0)]).is_err());
        assert!(BicoloredGraph::from_parts(v, vec![(0, 1), (2, 3)], vec![(1, 2)]).is_ok());
    }

    #[test]
    fn oversized_graph_rejected() {
        let n = GRAPH_VERTEX_CAP + 2;
        let g = BicoloredGraph::from_parts(
            vec![p(1.0, 1.0); n],
            (0..n / 2).map(|k| (2 * k, 2 * k + 1)).collect(),
            vec![],
        )
        .unwrap();
        assert!(matches!(
            find_alternating_cycle(&g),
            Err(DescentError::SizeCap { .. })
        ));
    }

    #[test]
    fn apply_cycle_errors() {
        let (s, m, _) = square_graph();
        let empty = AlternatingCycle {
            vertices: vec![],
            points: vec![],
        };
        assert_eq!(apply_cycle(&m, &empty, &s), Err(DescentError::EmptyCycle));
        let stray = AlternatingCycle {
            vertices: vec![0, 2, 1, 3],
            points: vec![0, 2, 1, 3],
        };
        assert_eq!(
            apply_cycle(&m, &stray, &s),
            Err(DescentError::CycleNotInMatching(0, 2))
        );
        // diagonals back to sides lowers the cost
        let diag = Matching::new(vec![(0, 3), (1, 2)], &s).unwrap();
        let back = AlternatingCycle {
            vertices: vec![0, 3, 2, 1],
            points: vec![0, 3, 2, 1],
        };
        assert!(matches!(
            apply_cycle(&diag, &back, &s),
            Err(DescentError::ImprovementViolation { .. })
        ));
    }

    #[test]
    fn descend_square() {
        let s = square();
        let m = Matching::new(vec![(0, 1), (2, 3)], &s).unwrap();
        let out = descend(&s, &m, EPS_THM);
        assert_eq!(out.status, DescentStatus::Converged);
        assert_eq!(out.matching.pairs(), &[(0, 3), (1, 2)]);
        assert_eq!(out.trace.len(), 2);
        assert_eq!(out.trace[0].cycle_len, Some(2));
        let w = out.witness.unwrap();
        assert!((w.lambda_star - 1.0).abs() < 1e-12);
    }

    #[test]
    fn descend_doubled_triangle_takes_no_steps() {
        let h = 3f64.sqrt() / 2.0;
        let s = PointSet::new(vec![
            p(0.0, 0.0),
            p(0.0, 0.0),
            p(1.0, 0.0),
            p(1.0, 0.0),
            p(0.5, h),
            p(0.5, h),
        ])
        .unwrap();
        let m = Matching::new(vec![(0, 2), (3, 4), (5, 1)], &s).unwrap();
        let out = descend(&s, &m, EPS_THM);
        assert_eq!(out.status, DescentStatus::Converged);
        assert_eq!(out.trace.len(), 1);
        assert!((out.witness.unwrap().lambda_star - FINGERHUT_FACTOR).abs() < 1e-9);
    }

    #[test]
    fn descend_repairs_zero_edges() {
        let h = 3f64.sqrt() / 2.0;
        let s = PointSet::new(vec![
            p(0.0, 0.0),
            p(0.0, 0.0),
            p(1.0, 0.0),
            p(1.0, 0.0),
            p(0.5, h),
            p(0.5, h),
        ])
        .unwrap();
        let twins = Matching::sequential(&s);
        let out = descend(&s, &twins, EPS_THM);
        assert_eq!(out.status, DescentStatus::Converged);
        assert!(out.matching.min_edge_length(&s) > 0.5);
        assert_eq!(out.trace[0].lambda_star, None);
    }

    #[test]
    fn descend_all_coincident_is_degenerate() {
        let s = PointSet::new(vec![p(0.3, 0.3); 4]).unwrap();
        let out = descend(&s, &Matching::sequential(&s), EPS_THM);
        assert_eq!(out.status, DescentStatus::Degenerate);
    }
}
