//! Perfect matchings of planar point sets: representation, cost, the exact
//! max-sum solver (subset dynamic programming), an exhaustive oracle and a
//! 2-opt local search.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{dist, Point};

/// Largest instance accepted by [`exact_max_sum`].
pub const EXACT_CAP: usize = 20;

/// Largest instance accepted by [`brute_force_max_sum`].
pub const BRUTE_FORCE_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatchingError {
    #[error("point set is empty")]
    Empty,
    #[error("point set has odd cardinality {0}")]
    OddCount(usize),
    #[error("point {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("pair ({0}, {0}) matches a point with itself")]
    SelfPair(usize),
    #[error("point {0} is matched more than once")]
    Repeated(usize),
    #[error("point {0} is unmatched")]
    Unmatched(usize),
    #[error("{size} points exceed the solver cap of {cap}")]
    SizeCap { size: usize, cap: usize },
}

/// An even, nonempty list of finite planar points. Duplicates are allowed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self, MatchingError> {
        if points.is_empty() {
            return Err(MatchingError::Empty);
        }
        if !points.len().is_multiple_of(2) {
            return Err(MatchingError::OddCount(points.len()));
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(MatchingError::NonFinite(i));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    /// Number of matched pairs, `n`.
    pub fn pair_count(&self) -> usize {
        self.points.len() / 2
    }

    /// Whether at least two distinct points exist.
    pub fn has_distinct_points(&self) -> bool {
        self.points.iter().any(|p| *p != self.points[0])
    }

    /// Applies `f` to every point.
    pub fn map(&self, f: impl Fn(Point) -> Point) -> PointSet {
        PointSet {
            points: self.points.iter().map(|p| f(*p)).collect(),
        }
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            points: Vec<Point>,
        }
        let raw = Raw::deserialize(d)?;
        PointSet::new(raw.points).map_err(serde::de::Error::custom)
    }
}

/// A perfect matching stored as sorted index pairs `(i, j)` with `i < j`,
/// ordered by `i`, together with its cached cost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
    cost: f64,
}

impl Matching {
    /// Validates `pairs` as a perfect matching of `s` and caches its cost.
    pub fn new(pairs: Vec<(usize, usize)>, s: &PointSet) -> Result<Self, MatchingError> {
        let pairs = canonical_pairs(pairs, s.len())?;
        let cost = pair_cost(&pairs, s);
        Ok(Self { pairs, cost })
    }

    /// Pairs `(0,1), (2,3), ...`.
    /// Uniformly random perfect matching, reproducible from `seed`.
    pub fn random(s: &PointSet, seed: u64) -> Self {
        let mut order: Vec<usize> = (0..s.len()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let pairs = order.chunks(2).map(|c| (c[0], c[1])).collect();
        Matching::new(pairs, s).expect("a shuffled pairing is perfect")
    }

    pub fn sequential(s: &PointSet) -> Self {
        let pairs = (0..s.pair_count()).map(|k| (2 * k, 2 * k + 1)).collect();
        Self::new(pairs, s).expect("sequential pairing is perfect")
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn cost(&self) -> f64 {
        self.cost
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Endpoints of every pair, in pair order.
    pub fn segments(&self, s: &PointSet) -> Vec<(Point, Point)> {
        self.pairs
            .iter()
            .map(|&(i, j)| (s.point(i), s.point(j)))
            .collect()
    }

    /// Restriction to the pairs at the given positions. Not a perfect matching
    /// of `s`; used for sub-problems that only look at segments.
    pub fn sub_pairs(&self, positions: &[usize]) -> Vec<(usize, usize)> {
        positions.iter().map(|&k| self.pairs[k]).collect()
    }

    /// Position of the pair joining `i` and `j`, in either orientation.
    pub fn position_of(&self, i: usize, j: usize) -> Option<usize> {
        let key = (i.min(j), i.max(j));
        self.pairs.iter().position(|&p| p == key)
    }

    /// Re-checks the perfect-matching invariant against `s` and the cached cost.
    pub fn validate(&self, s: &PointSet) -> Result<(), MatchingError> {
        let pairs = canonical_pairs(self.pairs.clone(), s.len())?;
        debug_assert_eq!(pairs, self.pairs);
        Ok(())
    }

    pub fn min_edge_length(&self, s: &PointSet) -> f64 {
        self.pairs
            .iter()
            .map(|&(i, j)| dist(s.point(i), s.point(j)))
            .fold(f64::INFINITY, f64::min)
    }
}

fn canonical_pairs(
    mut pairs: Vec<(usize, usize)>,
    len: usize,
) -> Result<Vec<(usize, usize)>, MatchingError> {
    let mut seen = vec![false; len];
    for pair in pairs.iter_mut() {
        let (i, j) = *pair;
        for index in [i, j] {
            if index >= len {
                return Err(MatchingError::IndexOutOfRange { index, len });
            }
        }
        if i == j {
            return Err(MatchingError::SelfPair(i));
        }
        for index in [i, j] {
            if std::mem::replace(&mut seen[index], true) {
                return Err(MatchingError::Repeated(index));
            }
        }
        *pair = (i.min(j), i.max(j));
    }
    if let Some(index) = seen.iter().position(|s| !s) {
        return Err(MatchingError::Unmatched(index));
    }
    pairs.sort_unstable();
    Ok(pairs)
}

// Summed from the last pair to the first so that the subset DP, which peels
// pairs off by lowest index, accumulates in exactly the same order.
fn pair_cost(pairs: &[(usize, usize)], s: &PointSet) -> f64 {
    pairs
        .iter()
        .rev()
        .fold(0.0, |acc, &(i, j)| dist(s.point(i), s.point(j)) + acc)
}

/// Sum of Euclidean lengths of the given pairs.
pub fn cost(pairs: &[(usize, usize)], s: &PointSet) -> Result<f64, MatchingError> {
    let len = s.len();
    for &(i, j) in pairs {
        for index in [i, j] {
            if index >= len {
                return Err(MatchingError::IndexOutOfRange { index, len });
            }
        }
    }
    let mut sorted: Vec<_> = pairs.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
    sorted.sort_unstable();
    Ok(pair_cost(&sorted, s))
}

fn distance_table(s: &PointSet) -> Vec<Vec<f64>> {
    let pts = s.points();
    pts.iter()
        .map(|a| pts.iter().map(|b| dist(*a, *b)).collect())
        .collect()
}

/// Globally optimal max-sum matching by dynamic programming over the set of
/// still-unmatched points.
///
/// The lowest unmatched index is always paired next, so a state's best value
/// sums its pairs in the same order as [`Matching::cost`]. Exact ties keep
/// the smallest partner, which yields the lexicographically smallest pair list.
pub fn exact_max_sum(s: &PointSet) -> Result<Matching, MatchingError> {
    let size = s.len();
    if size > EXACT_CAP {
        return Err(MatchingError::SizeCap {
            size,
            cap: EXACT_CAP,
        });
    }
    let d = distance_table(s);
    let full = (1usize << size) - 1;
    let mut best = vec![f64::NAN; 1 << size];
    let mut choice = vec![u8::MAX; 1 << size];
    best[0] = 0.0;
    // Only even-popcount masks are reachable; increasing numeric order visits
    // every proper submask before its supersets.
    for mask in 1..=full {
        if mask.count_ones() % 2 != 0 {
            continue;
        }
        let low = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << low);
        let mut value = f64::NEG_INFINITY;
        let mut partner = u8::MAX;
        let mut candidates = rest;
        while candidates != 0 {
            let j = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            let v = d[low][j] + best[rest & !(1 << j)];
            if v > value {
                value = v;
                partner = j as u8;
            }
        }
        best[mask] = value;
        choice[mask] = partner;
    }
    let mut pairs = Vec::with_capacity(size / 2);
    let mut mask = full;
    while mask != 0 {
        let low = mask.trailing_zeros() as usize;
        let j = choice[mask] as usize;
        pairs.push((low, j));
        mask &= !(1 << low) & !(1 << j);
    }
    let m = Matching::new(pairs, s)?;
    debug_assert_eq!(m.cost().to_bits(), best[full].to_bits());
    Ok(m)
}

/// Exhaustive enumeration of all `(2n-1)!!` perfect matchings. The first
/// matching (in lexicographic order) with the maximum cost wins.
pub fn brute_force_max_sum(s: &PointSet) -> Result<Matching, MatchingError> {
    let size = s.len();
    if size > BRUTE_FORCE_CAP {
        return Err(MatchingError::SizeCap {
            size,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let mut best: Option<(f64, Vec<(usize, usize)>)> = None;
    let mut current = Vec::with_capacity(size / 2);
    let mut free = vec![true; size];
    enumerate_matchings(&mut free, &mut current, &mut |pairs| {
        let c = pair_cost(pairs, s);
        if best.as_ref().is_none_or(|(b, _)| c > *b) {
            best = Some((c, pairs.to_vec()));
        }
    });
    let (_, pairs) = best.expect("at least one matching exists");
    Matching::new(pairs, s)
}

fn enumerate_matchings(
    free: &mut [bool],
    current: &mut Vec<(usize, usize)>,
    visit: &mut impl FnMut(&[(usize, usize)]),
) {
    let Some(low) = free.iter().position(|f| *f) else {
        visit(current);
        return;
    };
    free[low] = false;
    for j in low + 1..free.len() {
        if free[j] {
            free[j] = false;
            current.push((low, j));
            enumerate_matchings(free, current, visit);
            current.pop();
            free[j] = true;
        }
    }
    free[low] = true;
}

/// Minimum accepted gain for an improving swap at the given cost.
pub fn improvement_threshold(cost: f64) -> f64 {
    1e-12 * (1.0 + cost)
}

/// 2-opt local search: replaces two pairs `{ab, cd}` by `{ac, bd}` or
/// `{ad, bc}` while that raises the cost by more than
/// [`improvement_threshold`]. First improvement, scanning pairs in order.
pub fn local_search(s: &PointSet, init: &Matching) -> Matching {
    let mut pairs = init.pairs().to_vec();
    let mut total = init.cost();
    let d = |i: usize, j: usize| dist(s.point(i), s.point(j));
    loop {
        let mut improved = false;
        'scan: for p in 0..pairs.len() {
            for q in p + 1..pairs.len() {
                let (a, b) = pairs[p];
                let (c, e) = pairs[q];
                let current = d(a, b) + d(c, e);
                for (first, second) in [((a, c), (b, e)), ((a, e), (b, c))] {
                    let gain = d(first.0, first.1) + d(second.0, second.1) - current;
                    if gain > improvement_threshold(total) {
                        pairs[p] = first;
                        pairs[q] = second;
                        total += gain;
                        improved = true;
                        break 'scan;
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }
    Matching::new(pairs, s).expect("swaps preserve perfection")
}
