//! Support vectors: `P(λ) = {x : ⟨νᵢ, x⟩ ≥ −λᵢ}` over a fan.

use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{ConeError, NormalFan};
use crate::invariants::interior_barycenter;
use crate::numeric::{int, rational_from_f64, ratio, to_f64, Rational, Vec2};
use crate::polygon::{DelzantPolygon, LatticeVector};

/// Edges of lattice length at or below this are outside the cone in float mode.
pub const CONE_BOUNDARY_TOLERANCE: f64 = 1e-12;

fn check_len(fan: &NormalFan, got: usize) -> Result<(), ConeError> {
    if fan.len() != got {
        return Err(ConeError::SupportLength {
            expected: fan.len(),
            got,
        });
    }
    Ok(())
}

/// Vertex where edges `i` and `i + 1` meet.
fn corner(a: LatticeVector, b: LatticeVector, la: &Rational, lb: &Rational) -> Vec2 {
    // a·v = −la, b·v = −lb with det(a, b) = 1
    let (r1, r2) = (-la, -lb);
    let x = &r1 * int(b.y) - &r2 * int(a.y);
    let y = int(a.x) * &r2 - int(b.x) * &r1;
    Vec2::new(x, y)
}

/// Clockwise rotation of the inward normal: the counterclockwise edge direction.
fn edge_direction(normal: LatticeVector) -> LatticeVector {
    LatticeVector {
        x: normal.y,
        y: -normal.x,
    }
}

/// Corners `v_i = edge i ∩ edge i+1` and the lattice length of every edge, in ray order.
pub fn corners_and_lengths(
    fan: &NormalFan,
    support: &[Rational],
) -> Result<(Vec<Vec2>, Vec<Rational>), ConeError> {
    check_len(fan, support.len())?;
    let rays = fan.rays();
    let n = rays.len();
    let corners: Vec<Vec2> = (0..n)
        .map(|i| corner(rays[i], rays[(i + 1) % n], &support[i], &support[(i + 1) % n]))
        .collect();
    let lengths = (0..n)
        .map(|i| {
            let d = edge_direction(rays[i]).to_vec2();
            let delta = &corners[i] - &corners[(i + n - 1) % n];
            delta.dot(&d) / d.dot(&d)
        })
        .collect();
    Ok((corners, lengths))
}

/// Intersection of the half-planes; every edge must have positive lattice length.
pub fn polygon_from_support(
    fan: &NormalFan,
    support: &[Rational],
) -> Result<DelzantPolygon, ConeError> {
    let (corners, lengths) = corners_and_lengths(fan, support)?;
    if let Some(edge) = lengths.iter().position(|l| !l.is_positive()) {
        return Err(ConeError::OutsideCone { edge });
    }
    Ok(DelzantPolygon::from_vertices(&corners)?)
}

pub fn is_inside_cone(fan: &NormalFan, support: &[Rational]) -> bool {
    corners_and_lengths(fan, support)
        .map(|(_, lengths)| lengths.iter().all(Signed::is_positive))
        .unwrap_or(false)
}

pub fn support_from_f64(support: &[f64]) -> Vec<Rational> {
    support.iter().map(|&x| rational_from_f64(x)).collect()
}

/// Float corners, or `None` when an edge is shorter than [`CONE_BOUNDARY_TOLERANCE`].
pub fn float_corners(fan: &NormalFan, support: &[f64]) -> Option<Vec<[f64; 2]>> {
    if fan.len() != support.len() || support.iter().any(|x| !x.is_finite()) {
        return None;
    }
    let rays = fan.rays();
    let n = rays.len();
    let corners: Vec<[f64; 2]> = (0..n)
        .map(|i| {
            let (a, b) = (rays[i], rays[(i + 1) % n]);
            let (r1, r2) = (-support[i], -support[(i + 1) % n]);
            [
                r1 * b.y as f64 - r2 * a.y as f64,
                a.x as f64 * r2 - b.x as f64 * r1,
            ]
        })
        .collect();
    for i in 0..n {
        let d = edge_direction(rays[i]);
        let (dx, dy) = (d.x as f64, d.y as f64);
        let prev = corners[(i + n - 1) % n];
        let length = ((corners[i][0] - prev[0]) * dx + (corners[i][1] - prev[1]) * dy) / (dx * dx + dy * dy);
        if length.is_nan() || length <= CONE_BOUNDARY_TOLERANCE {
            return None;
        }
    }
    Some(corners)
}

/// `λᵢ ↦ λᵢ − ⟨νᵢ, shift⟩`, the support of `P(λ) + shift`.
pub fn translate_support(fan: &NormalFan, support: &[Rational], shift: &Vec2) -> Vec<Rational> {
    fan.rays()
        .iter()
        .zip(support)
        .map(|(ray, l)| l - ray.pair(shift))
        .collect()
}

/// Representative with barycenter at the origin and unit area.
pub fn gauge_fix(fan: &NormalFan, support: &[f64]) -> Result<Vec<f64>, ConeError> {
    let exact = support_from_f64(support);
    let polygon = polygon_from_support(fan, &exact)?;
    let center = interior_barycenter(&polygon);
    let centered = translate_support(fan, &exact, &-&center);
    let scale = 1.0 / to_f64(&polygon.area()).sqrt();
    Ok(centered.iter().map(|l| to_f64(l) * scale).collect())
}

/// Affine chart of the reduced cone: `z ↦ λ = (0, 0, 1, z₁, …, z_{n−3})`.
///
/// Translating the corner between rays 0 and 1 to the origin makes
/// `λ₀ = λ₁ = 0` and every other `λᵢ > 0`, and rescaling fixes `λ₂ = 1`, so
/// the chart covers the whole reduced cone and its domain is an open convex
/// polyhedron.
#[derive(Debug, Clone)]
pub struct ReducedChart<'a> {
    fan: &'a NormalFan,
}

impl<'a> ReducedChart<'a> {
    pub fn new(fan: &'a NormalFan) -> Self {
        ReducedChart { fan }
    }

    pub fn dimension(&self) -> usize {
        self.fan.reduced_dimension()
    }

    pub fn support(&self, z: &[Rational]) -> Vec<Rational> {
        debug_assert_eq!(z.len(), self.dimension());
        let mut support = vec![Rational::zero(), Rational::zero(), Rational::one()];
        support.extend(z.iter().cloned());
        support
    }

    pub fn support_f64(&self, z: &[f64]) -> Vec<f64> {
        let mut support = vec![0.0, 0.0, 1.0];
        support.extend_from_slice(z);
        support
    }

    /// Chart coordinates of any λ inside the cone.
    pub fn coordinates(&self, support: &[Rational]) -> Result<Vec<Rational>, ConeError> {
        let polygon_corner = {
            let (corners, lengths) = corners_and_lengths(self.fan, support)?;
            if let Some(edge) = lengths.iter().position(|l| !l.is_positive()) {
                return Err(ConeError::OutsideCone { edge });
            }
            corners[0].clone()
        };
        let pinned = translate_support(self.fan, support, &-&polygon_corner);
        let scale = pinned[2].clone();
        Ok(pinned[3..].iter().map(|l| l / &scale).collect())
    }
}

/// The anticanonical support `(1, …, 1)` when it lies in the cone, otherwise a
/// deterministic random search.
pub fn interior_support(fan: &NormalFan) -> Result<Vec<Rational>, ConeError> {
    let ones = vec![Rational::one(); fan.len()];
    if is_inside_cone(fan, &ones) {
        return Ok(ones);
    }
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(0x5eed);
    let bound = 4 * fan.len() as i64;
    for _ in 0..20_000 {
        let candidate: Vec<Rational> = (0..fan.len())
            .map(|_| ratio(rng.gen_range(0..=bound * 8), 8))
            .collect();
        if is_inside_cone(fan, &candidate) {
            return Ok(candidate);
        }
    }
    Err(ConeError::NoInteriorPoint)
}

/// Random rational support inside the cone: a perturbed interior point, then a
/// random rational dilation and translation.
pub fn random_interior_support<R: Rng>(fan: &NormalFan, rng: &mut R) -> Result<Vec<Rational>, ConeError> {
    let base = interior_support(fan)?;
    for _ in 0..10_000 {
        // half the samples stay near the base point, the rest roam the cone
        let spread = if rng.gen_bool(0.5) { 9 } else { 96 };
        let perturbed: Vec<Rational> = base
            .iter()
            .map(|l| l + ratio(rng.gen_range(-spread..=spread), 24))
            .collect();
        if !is_inside_cone(fan, &perturbed) {
            continue;
        }
        let scale = ratio(rng.gen_range(1..=12), rng.gen_range(1..=6));
        let shift = Vec2::new(
            ratio(rng.gen_range(-20..=20), rng.gen_range(1..=5)),
            ratio(rng.gen_range(-20..=20), rng.gen_range(1..=5)),
        );
        let scaled: Vec<Rational> = perturbed.iter().map(|l| l * &scale).collect();
        return Ok(translate_support(fan, &scaled, &shift));
    }
    Err(ConeError::NoInteriorPoint)
}
