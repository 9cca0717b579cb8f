//! Exact Delzant polygons.
//!
//! A polygon is stored counterclockwise with its lexicographically least
//! vertex first. Each edge carries its primitive direction, primitive inward
//! normal and lattice length, so every downstream quantity is exact.

mod moments;
mod transform;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use moments::Polynomial;
pub use transform::UnimodularAffine;

use crate::numeric::{Rational, Vec2};

/// Primitive integer vector: components coprime, not both zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVector {
    pub x: i64,
    pub y: i64,
}

impl LatticeVector {
    /// Returns `None` unless `(x, y)` is primitive.
    pub fn new(x: i64, y: i64) -> Option<Self> {
        (num_integer::gcd(x, y) == 1).then_some(LatticeVector { x, y })
    }

    /// The primitive integer vector pointing along a nonzero rational vector.
    /// `None` for the zero vector or when the result does not fit in `i64`.
    pub fn primitive_along(v: &Vec2) -> Option<Self> {
        let (x, y) = primitive_components(v)?;
        Some(LatticeVector {
            x: x.to_i64()?,
            y: y.to_i64()?,
        })
    }

    pub fn determinant(&self, other: &LatticeVector) -> i64 {
        self.x * other.y - self.y * other.x
    }

    pub fn to_vec2(&self) -> Vec2 {
        Vec2::from_ints(self.x, self.y)
    }

    pub fn pair(&self, v: &Vec2) -> Rational {
        self.to_vec2().dot(v)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

fn primitive_components(v: &Vec2) -> Option<(BigInt, BigInt)> {
    if v.is_zero() {
        return None;
    }
    let den = v.x.denom().lcm(v.y.denom());
    let x = v.x.numer() * (&den / v.x.denom());
    let y = v.y.numer() * (&den / v.y.denom());
    let g = x.gcd(&y);
    Some((x / &g, y / &g))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub start: Vec2,
    pub end: Vec2,
    /// Primitive inward normal ν.
    pub normal: LatticeVector,
    /// Primitive vector along `end - start`.
    pub direction: LatticeVector,
    /// `end - start = lattice_length · direction`.
    pub lattice_length: Rational,
}

impl Edge {
    /// The support number λ with `⟨ν, x⟩ = −λ` along the edge.
    pub fn support(&self) -> Rational {
        -self.normal.pair(&self.start)
    }
}

/// Something wrong with a candidate vertex list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    TooFewVertices { count: usize },
    DegenerateEdge { edge: usize, at: Vec2 },
    NotConvex { vertex: Vec2 },
    NotSimple { winding: usize, start: Vec2 },
    NotDelzant { vertex: Vec2, determinant: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewVertices { count } => write!(f, "only {count} vertices"),
            Violation::DegenerateEdge { edge, at } => {
                write!(f, "edge {edge} starting at {at} has zero length")
            }
            Violation::NotConvex { vertex } => write!(f, "not strictly convex at {vertex}"),
            Violation::NotSimple { winding, start } => {
                write!(f, "boundary starting at {start} winds {winding} times")
            }
            Violation::NotDelzant {
                vertex,
                determinant,
            } => write!(
                f,
                "edge directions at {vertex} have determinant {determinant}, not ±1"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("degenerate edge {edge} at {at}")]
    DegenerateEdge { edge: usize, at: Vec2 },
    #[error("polygon is not strictly convex at {vertex}")]
    NotConvex { vertex: Vec2 },
    #[error("not a Delzant vertex: {vertex} has edge determinant {determinant}")]
    NotDelzant { vertex: Vec2, determinant: String },
    #[error("moment of degree ({p}, {q}) exceeds the supported total degree {max}")]
    UnsupportedDegree { p: u32, q: u32, max: u32 },
    #[error("matrix has determinant {0}, expected ±1")]
    NotUnimodular(i64),
    #[error("scale factor must be positive")]
    NonPositiveScale,
    #[error("edge direction at {0} does not fit in 64-bit integers")]
    CoordinateOverflow(Vec2),
}

impl From<Violation> for PolygonError {
    fn from(v: Violation) -> Self {
        match v {
            Violation::TooFewVertices { count } => PolygonError::TooFewVertices(count),
            Violation::DegenerateEdge { edge, at } => PolygonError::DegenerateEdge { edge, at },
            Violation::NotConvex { vertex } => PolygonError::NotConvex { vertex },
            Violation::NotSimple { start, .. } => PolygonError::NotConvex { vertex: start },
            Violation::NotDelzant {
                vertex,
                determinant,
            } => PolygonError::NotDelzant {
                vertex,
                determinant,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelzantPolygon {
    vertices: Vec<Vec2>,
    edges: Vec<Edge>,
}

/// Twice the signed area.
fn doubled_signed_area(points: &[Vec2]) -> Rational {
    let n = points.len();
    (0..n)
        .map(|i| points[i].cross(&points[(i + 1) % n]))
        .fold(Rational::zero(), |acc, c| acc + c)
}

/// Orients counterclockwise (when the signed area is nonzero) and rotates the
/// lexicographically least vertex to the front.
fn canonical_order(points: &[Vec2]) -> Vec<Vec2> {
    let mut pts = points.to_vec();
    if doubled_signed_area(&pts).is_negative() {
        pts.reverse();
    }
    let first = pts
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    pts.rotate_left(first);
    pts
}

fn upper_half(v: &Vec2) -> bool {
    v.y.is_positive() || (v.y.is_zero() && v.x.is_positive())
}

/// Every violated polygon invariant, in canonical vertex order.
pub fn validate_delzant(points: &[Vec2]) -> Vec<Violation> {
    if points.len() < 3 {
        return vec![Violation::TooFewVertices {
            count: points.len(),
        }];
    }
    let pts = canonical_order(points);
    let n = pts.len();
    let mut violations = Vec::new();

    let edge_vectors: Vec<Vec2> = (0..n).map(|i| &pts[(i + 1) % n] - &pts[i]).collect();
    for (i, e) in edge_vectors.iter().enumerate() {
        if e.is_zero() {
            violations.push(Violation::DegenerateEdge {
                edge: i,
                at: pts[i].clone(),
            });
        }
    }
    if !violations.is_empty() {
        return violations;
    }

    for i in 0..n {
        let incoming = &edge_vectors[(i + n - 1) % n];
        if !incoming.cross(&edge_vectors[i]).is_positive() {
            violations.push(Violation::NotConvex {
                vertex: pts[i].clone(),
            });
        }
    }
    if violations.is_empty() {
        // all turns are left turns of less than π, so the number of times the
        // edge direction re-enters the upper half plane is the winding number
        let winding = (0..n)
            .filter(|&i| !upper_half(&edge_vectors[i]) && upper_half(&edge_vectors[(i + 1) % n]))
            .count();
        if winding != 1 {
            violations.push(Violation::NotSimple {
                winding,
                start: pts[0].clone(),
            });
        }
    }

    for i in 0..n {
        let toward_next = primitive_components(&edge_vectors[i]);
        let toward_prev = primitive_components(&-&edge_vectors[(i + n - 1) % n]);
        if let (Some((ax, ay)), Some((bx, by))) = (toward_next, toward_prev) {
            let det = &ax * &by - &ay * &bx;
            if det.abs() != BigInt::from(1) {
                violations.push(Violation::NotDelzant {
                    vertex: pts[i].clone(),
                    determinant: det.to_string(),
                });
            }
        }
    }
    violations
}

impl DelzantPolygon {
    /// Builds and validates a polygon from a cyclic vertex list in either orientation.
    pub fn from_vertices(points: &[Vec2]) -> Result<Self, PolygonError> {
        if let Some(v) = validate_delzant(points).into_iter().next() {
            return Err(v.into());
        }
        let vertices = canonical_order(points);
        let n = vertices.len();
        let edges = (0..n)
            .map(|i| -> Result<Edge, PolygonError> {
                let start = vertices[i].clone();
                let end = vertices[(i + 1) % n].clone();
                let delta = &end - &start;
                let direction = LatticeVector::primitive_along(&delta)
                    .ok_or_else(|| PolygonError::CoordinateOverflow(start.clone()))?;
                let lattice_length = if direction.x != 0 {
                    &delta.x / Rational::from_integer(direction.x.into())
                } else {
                    &delta.y / Rational::from_integer(direction.y.into())
                };
                let normal = LatticeVector {
                    x: -direction.y,
                    y: direction.x,
                };
                Ok(Edge {
                    start,
                    end,
                    normal,
                    direction,
                    lattice_length,
                })
            })
            .collect::<Result<_, _>>()?;
        let polygon = DelzantPolygon { vertices, edges };
        debug_assert!(polygon.normals_point_inward());
        Ok(polygon)
    }

    pub fn from_int_vertices(points: &[(i64, i64)]) -> Result<Self, PolygonError> {
        let pts: Vec<Vec2> = points.iter().map(|&(x, y)| Vec2::from_ints(x, y)).collect();
        Self::from_vertices(&pts)
    }

    /// Each rotated normal pairs positively with the vertex centroid relative to its edge.
    fn normals_point_inward(&self) -> bool {
        let n = Rational::from_integer(BigInt::from(self.vertices.len()));
        let sum = self.vertices.iter().fold(Vec2::zero(), |acc, v| &acc + v);
        let centroid = &sum / &n;
        self.edges
            .iter()
            .all(|e| e.normal.pair(&(&centroid - &e.start)).is_positive())
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Exact Euclidean area by the shoelace formula.
    pub fn area(&self) -> Rational {
        doubled_signed_area(&self.vertices) / Rational::from_integer(BigInt::from(2))
    }

    pub fn edge_lattice_lengths(&self) -> Vec<Rational> {
        self.edges.iter().map(|e| e.lattice_length.clone()).collect()
    }

    /// Total lattice length |∂P|.
    pub fn lattice_perimeter(&self) -> Rational {
        self.edges
            .iter()
            .fold(Rational::zero(), |acc, e| acc + &e.lattice_length)
    }

    /// Primitive inward normals in edge order.
    pub fn normals(&self) -> Vec<LatticeVector> {
        self.edges.iter().map(|e| e.normal).collect()
    }

    /// Support numbers λᵢ with `P = {x : ⟨νᵢ, x⟩ ≥ −λᵢ}`, in edge order.
    pub fn supports(&self) -> Vec<Rational> {
        self.edges.iter().map(Edge::support).collect()
    }

    /// Image under `x ↦ c·x` for `c > 0`.
    pub fn scaled(&self, c: &Rational) -> Result<DelzantPolygon, PolygonError> {
        if !c.is_positive() {
            return Err(PolygonError::NonPositiveScale);
        }
        let pts: Vec<Vec2> = self.vertices.iter().map(|v| v.scale(c)).collect();
        Ok(DelzantPolygon::from_vertices(&pts).expect("dilation preserves the Delzant conditions"))
    }

    pub fn translated(&self, shift: &Vec2) -> DelzantPolygon {
        let pts: Vec<Vec2> = self.vertices.iter().map(|v| v + shift).collect();
        DelzantPolygon::from_vertices(&pts).expect("translation preserves the Delzant conditions")
    }
}

/// Free-function form of [`DelzantPolygon::from_vertices`].
pub fn polygon_from_vertices(points: &[Vec2]) -> Result<DelzantPolygon, PolygonError> {
    DelzantPolygon::from_vertices(points)
}

/// Image of a polygon under a unimodular affine map; the result is re-canonicalized.
pub fn apply_unimodular_affine(polygon: &DelzantPolygon, map: &UnimodularAffine) -> DelzantPolygon {
    let pts: Vec<Vec2> = polygon.vertices().iter().map(|v| map.apply(v)).collect();
    DelzantPolygon::from_vertices(&pts).expect("unimodular image of a Delzant polygon is Delzant")
}
