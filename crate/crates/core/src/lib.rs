//! Max-sum matchings of planar point sets and their common-ellipse witnesses.
//!
//! For a perfect matching `M` of an even point set, every edge `ab` defines
//! the ratio `h_ab(x) = (|a - x| + |b - x|) / |a - b|`. The witness of `M` is
//! the minimizer `o*` of `h_M = max_ab h_ab`, and `lambda* = h_M(o*)`. For a
//! max-sum matching `lambda* <= 2/sqrt(3)`, with equality on two coinciding
//! equilateral triangles.
//!
//! - [`matching`]: exact and brute-force max-sum solvers, 2-opt local search.
//! - [`witness`]: the minimax solver, optimality certificates, supports, and
//!   the minimum Steiner star.
//! - [`descent`]: alternating-cycle improvement of a matching until its
//!   witness value drops to `2/sqrt(3)`.
//! - [`verify`]: verdicts with signed margins.
//! - [`io`]: generators, CSV/JSON formats, reports, SVG, batch suites.

pub mod descent;
pub mod geom;
pub mod io;
pub mod matching;
mod minimax;
pub mod verify;
pub mod witness;

/// Default slack for the `2/sqrt(3)` bound.
pub const EPS_THM: f64 = 1e-6;

pub use geom::{Point, FINGERHUT_FACTOR};
pub use matching::{exact_max_sum, Matching, PointSet};
pub use witness::{minimize_h, WitnessResult};
