//! Planar primitives: points, distances, angles, the distance-sum ratio `h`,
//! its gradient and Hessian, angle-bisector points and the ellipse/lens
//! membership predicates.
//!
//! All comparisons use the absolute tolerance [`EPS_GEO`], which is meant to be
//! applied at unit scale. Solvers normalize instances with [`Similarity`]
//! before working on them.

use std::f64::consts::PI;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute geometric tolerance at unit scale.
pub const EPS_GEO: f64 = 1e-9;

/// The Fingerhut factor `2/sqrt(3)`.
pub const FINGERHUT_FACTOR: f64 = 1.154_700_538_379_251_5;

/// Lens opening angle `2*pi/3` matching [`FINGERHUT_FACTOR`].
pub const LENS_ANGLE: f64 = 2.0 * PI / 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GeomError {
    #[error("degenerate segment: endpoints ({0}, {1}) coincide")]
    DegenerateEdge(Point, Point),
    #[error("argument at the origin has no direction")]
    OriginArgument,
    #[error("point {0} coincides with a focus of the ellipse")]
    AtFocus(Point),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

/// A point (or vector) in the plane.
///
/// Serialized as a two-element array `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn midpoint(self, other: Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    /// Counterclockwise rotation by `theta`.
    pub fn rotate(self, theta: f64) -> Point {
        let (s, c) = theta.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point::new(x, y)
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for Point {
    fn add_assign(&mut self, rhs: Point) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl SubAssign for Point {
    fn sub_assign(&mut self, rhs: Point) {
        self.x -= rhs.x;
        self.y -= rhs.y;
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Mul<Point> for f64 {
    type Output = Point;
    fn mul(self, p: Point) -> Point {
        p * self
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Closed segment between two points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub const fn new(a: Point, b: Point) -> Self {
        Self { a, b }
    }

    pub fn length(&self) -> f64 {
        dist(self.a, self.b)
    }

    pub fn midpoint(&self) -> Point {
        self.a.midpoint(self.b)
    }

    /// Distance from `p` to the closest point of the segment.
    pub fn distance_to(&self, p: Point) -> f64 {
        let d = self.b - self.a;
        let len2 = d.dot(d);
        if len2 == 0.0 {
            return dist(self.a, p);
        }
        let s = ((p - self.a).dot(d) / len2).clamp(0.0, 1.0);
        dist(self.a + d * s, p)
    }
}

/// Symmetric 2x2 matrix `[[xx, xy], [xy, yy]]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Sym2 {
    pub xx: f64,
    pub xy: f64,
    pub yy: f64,
}

impl Sym2 {
    pub fn apply(&self, v: Point) -> Point {
        Point::new(self.xx * v.x + self.xy * v.y, self.xy * v.x + self.yy * v.y)
    }
}

impl Add for Sym2 {
    type Output = Sym2;
    fn add(self, o: Sym2) -> Sym2 {
        Sym2 {
            xx: self.xx + o.xx,
            xy: self.xy + o.xy,
            yy: self.yy + o.yy,
        }
    }
}

impl Mul<f64> for Sym2 {
    type Output = Sym2;
    fn mul(self, k: f64) -> Sym2 {
        Sym2 {
            xx: self.xx * k,
            xy: self.xy * k,
            yy: self.yy * k,
        }
    }
}

/// Uniform scaling plus translation. Maps an instance into the unit square
/// while preserving every ratio used by the solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Similarity {
    pub offset: Point,
    pub scale: f64,
}

impl Similarity {
    pub const IDENTITY: Similarity = Similarity {
        offset: Point::ORIGIN,
        scale: 1.0,
    };

    /// Transform sending the bounding box of `points` into `[0, 1]^2`, anchored
    /// at the lower-left corner. Returns the identity for empty or single-point
    /// input.
    pub fn to_unit_square(points: &[Point]) -> Self {
        let Some((lo, hi)) = bounding_box(points) else {
            return Self::IDENTITY;
        };
        let extent = (hi.x - lo.x).max(hi.y - lo.y);
        if extent <= 0.0 {
            return Similarity {
                offset: lo,
                scale: 1.0,
            };
        }
        Similarity {
            offset: lo,
            scale: 1.0 / extent,
        }
    }

    pub fn apply(&self, p: Point) -> Point {
        (p - self.offset) * self.scale
    }

    pub fn invert(&self, p: Point) -> Point {
        p * (1.0 / self.scale) + self.offset
    }
}

/// Axis-aligned bounding box `(min, max)` of a point list.
pub fn bounding_box(points: &[Point]) -> Option<(Point, Point)> {
    let first = *points.first()?;
    Some(points.iter().fold((first, first), |(lo, hi), p| {
        (
            Point::new(lo.x.min(p.x), lo.y.min(p.y)),
            Point::new(hi.x.max(p.x), hi.y.max(p.y)),
        )
    }))
}

/// Longer side of the bounding box; 0 for an empty or single-point list.
pub fn extent(points: &[Point]) -> f64 {
    bounding_box(points).map_or(0.0, |(lo, hi)| (hi.x - lo.x).max(hi.y - lo.y))
}

pub fn dist(a: Point, b: Point) -> f64 {
    (a - b).norm()
}

fn nonzero(p: Point) -> Result<(), GeomError> {
    if p.norm() <= EPS_GEO {
        Err(GeomError::OriginArgument)
    } else {
        Ok(())
    }
}

fn nondegenerate(a: Point, b: Point) -> Result<f64, GeomError> {
    let len = dist(a, b);
    if len <= EPS_GEO {
        Err(GeomError::DegenerateEdge(a, b))
    } else {
        Ok(len)
    }
}

/// Smallest angle between two nonzero vectors, in `[0, pi]`.
pub fn angle_undirected(x: Point, y: Point) -> Result<f64, GeomError> {
    nonzero(x)?;
    nonzero(y)?;
    Ok(x.cross(y).abs().atan2(x.dot(y)))
}

/// Counterclockwise angle from `x` to `y`, in `[0, 2*pi)`.
pub fn angle_directed(x: Point, y: Point) -> Result<f64, GeomError> {
    nonzero(x)?;
    nonzero(y)?;
    let mut theta = x.cross(y).atan2(x.dot(y));
    if theta < 0.0 {
        theta += 2.0 * PI;
    }
    if theta >= 2.0 * PI {
        theta = 0.0;
    }
    Ok(theta)
}

/// `h_ab(x) = (|a - x| + |b - x|) / |a - b|`.
pub fn h_ratio(a: Point, b: Point, x: Point) -> Result<f64, GeomError> {
    let len = nondegenerate(a, b)?;
    Ok((dist(a, x) + dist(b, x)) / len)
}

/// Gradient of [`h_ratio`] with respect to `x`.
pub fn grad_h(a: Point, b: Point, x: Point) -> Result<Point, GeomError> {
    let len = nondegenerate(a, b)?;
    let (xa, xb) = (x - a, x - b);
    let (ra, rb) = (xa.norm(), xb.norm());
    if ra <= EPS_GEO || rb <= EPS_GEO {
        return Err(GeomError::AtFocus(x));
    }
    Ok((xa * (1.0 / ra) + xb * (1.0 / rb)) * (1.0 / len))
}

/// Hessian of [`h_ratio`] with respect to `x`: `sum (I - u u^T) / r / |a - b|`
/// over the two focal directions `u`.
pub fn hessian_h(a: Point, b: Point, x: Point) -> Result<Sym2, GeomError> {
    let len = nondegenerate(a, b)?;
    let ha = norm_hessian(x - a).ok_or(GeomError::AtFocus(x))?;
    let hb = norm_hessian(x - b).ok_or(GeomError::AtFocus(x))?;
    Ok((ha + hb) * (1.0 / len))
}

/// Hessian of `v -> |v|`, undefined within [`EPS_GEO`] of zero.
pub(crate) fn norm_hessian(v: Point) -> Option<Sym2> {
    let r = v.norm();
    if r <= EPS_GEO {
        return None;
    }
    let r3 = r * r * r;
    Some(Sym2 {
        xx: v.y * v.y / r3,
        xy: -v.x * v.y / r3,
        yy: v.x * v.x / r3,
    })
}

/// The point `l_xy` where the bisector of the angle between `x` and `y`
/// (seen from the origin) meets the segment `xy`.
///
/// Antipodal inputs of equal norm return the origin.
pub fn bisector_point(x: Point, y: Point) -> Result<Point, GeomError> {
    nonzero(x)?;
    nonzero(y)?;
    let (nx, ny) = (x.norm(), y.norm());
    let total = nx + ny;
    Ok(x * (ny / total) + y * (nx / total))
}

/// `f(x, y) = (|x| + |y|) / |x - y|`, i.e. `h_xy` evaluated at the origin.
pub fn f_ratio(x: Point, y: Point) -> Result<f64, GeomError> {
    h_ratio(x, y, Point::ORIGIN)
}

/// Membership in the filled ellipse `E_lambda(ab)`, boundary inclusive up to
/// [`EPS_GEO`].
pub fn in_ellipse(a: Point, b: Point, lambda: f64, x: Point) -> Result<bool, GeomError> {
    if lambda.is_nan() || lambda < 1.0 {
        return Err(GeomError::InvalidParameter("ellipse factor must be >= 1"));
    }
    Ok(h_ratio(a, b, x)? <= lambda + EPS_GEO)
}

/// Membership in the `alpha`-lens of segment `xy`: the endpoints together with
/// every point from which `xy` subtends an angle of at least `alpha`.
pub fn in_lens(x: Point, y: Point, alpha: f64, z: Point) -> Result<bool, GeomError> {
    nondegenerate(x, y)?;
    if !(alpha > 0.0 && alpha < PI) {
        return Err(GeomError::InvalidParameter(
            "lens angle must lie in (0, pi)",
        ));
    }
    if z == x || z == y {
        return Ok(true);
    }
    let (u, v) = (x - z, y - z);
    let angle = u.cross(v).abs().atan2(u.dot(v));
    Ok(angle >= alpha)
}
