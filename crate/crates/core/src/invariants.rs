//! Polygon invariants of a toric almost-Kähler class: barycenters, the
//! displacement vector, the inertia matrix, the projected Hermitian scalar
//! curvature, the Futaki invariant, the virtual action and the Weyl bounds.
//!
//! Every quantity is exact. Factors of π are carried separately in a
//! [`PiMultiple`] and only collapse to floats when a report is printed.

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::numeric::{int, rational_string, Rational, PiMultiple, Vec2};
use crate::polygon::{DelzantPolygon, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("inertia matrix is not positive definite (leading minors {0} and {1})")]
    DegenerateInertia(Rational, Rational),
}

/// `x ↦ constant + gradient · x`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineFunction {
    pub constant: Rational,
    pub gradient: Vec2,
}

impl AffineFunction {
    pub fn new(constant: Rational, gradient: Vec2) -> Self {
        AffineFunction { constant, gradient }
    }

    pub fn constant_fn(c: Rational) -> Self {
        AffineFunction::new(c, Vec2::zero())
    }

    /// The coordinate function `x₁` (`axis = 0`) or `x₂` (`axis = 1`).
    pub fn coordinate(axis: usize) -> Self {
        let gradient = if axis == 0 {
            Vec2::from_ints(1, 0)
        } else {
            Vec2::from_ints(0, 1)
        };
        AffineFunction::new(Rational::zero(), gradient)
    }

    pub fn evaluate(&self, x: &Vec2) -> Rational {
        &self.constant + self.gradient.dot(x)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::affine(
            self.constant.clone(),
            self.gradient.x.clone(),
            self.gradient.y.clone(),
        )
    }
}

/// Central second moments `Π_jk = ∫_P (x_j − x̄_j)(x_k − x̄_k) da`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InertiaMatrix {
    entries: [[Rational; 2]; 2],
    inverse: [[Rational; 2]; 2],
}

impl InertiaMatrix {
    pub fn from_entries(xx: Rational, xy: Rational, yy: Rational) -> Result<Self, InvariantError> {
        let det = &xx * &yy - &xy * &xy;
        if !xx.is_positive() || !det.is_positive() {
            return Err(InvariantError::DegenerateInertia(xx, det));
        }
        let inverse = [
            [&yy / &det, -&xy / &det],
            [-&xy / &det, &xx / &det],
        ];
        Ok(InertiaMatrix {
            entries: [[xx, xy.clone()], [xy, yy]],
            inverse,
        })
    }

    pub fn entries(&self) -> &[[Rational; 2]; 2] {
        &self.entries
    }

    pub fn inverse(&self) -> &[[Rational; 2]; 2] {
        &self.inverse
    }

    pub fn determinant(&self) -> Rational {
        let m = &self.entries;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    pub fn apply_inverse(&self, v: &Vec2) -> Vec2 {
        let m = &self.inverse;
        Vec2::new(
            &m[0][0] * &v.x + &m[0][1] * &v.y,
            &m[1][0] * &v.x + &m[1][1] * &v.y,
        )
    }

    /// `v · Π⁻¹ v`
    pub fn inverse_norm_sq(&self, v: &Vec2) -> Rational {
        v.dot(&self.apply_inverse(v))
    }
}

/// `þ(ς) = 4π · normalized`, the L²-projection of the Hermitian scalar
/// curvature onto the affine functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectedScalarCurvature {
    pub normalized: AffineFunction,
}

impl ProjectedScalarCurvature {
    pub fn evaluate(&self, x: &Vec2) -> PiMultiple {
        PiMultiple::new(int(4) * self.normalized.evaluate(x), 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexPositivity {
    /// `min_v þ(ς)(v) / 4π` over the vertices.
    #[serde(with = "rational_string")]
    pub min_value: Rational,
    pub vertex: Vec2,
}

impl VertexPositivity {
    pub fn is_non_negative(&self) -> bool {
        !self.min_value.is_negative()
    }
}

/// `𝔉 = −4π|∂P|·𝔇` together with `‖𝔉‖²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Futaki {
    /// Rational part of the covector; multiply by 4π.
    pub covector_over_four_pi: Vec2,
    pub norm_sq: PiMultiple,
}

pub fn interior_barycenter(polygon: &DelzantPolygon) -> Vec2 {
    let area = polygon.area();
    Vec2::new(
        moment(polygon, 1, 0) / &area,
        moment(polygon, 0, 1) / &area,
    )
}

pub fn boundary_barycenter(polygon: &DelzantPolygon) -> Vec2 {
    let perimeter = polygon.lattice_perimeter();
    Vec2::new(
        boundary(polygon, 1, 0) / &perimeter,
        boundary(polygon, 0, 1) / &perimeter,
    )
}

/// `𝔇 = ⟨x⟩ − x̄`
pub fn displacement(polygon: &DelzantPolygon) -> Vec2 {
    &boundary_barycenter(polygon) - &interior_barycenter(polygon)
}

pub fn inertia_matrix(polygon: &DelzantPolygon) -> Result<InertiaMatrix, InvariantError> {
    let area = polygon.area();
    let c = interior_barycenter(polygon);
    let xx = moment(polygon, 2, 0) - &area * &c.x * &c.x;
    let xy = moment(polygon, 1, 1) - &area * &c.x * &c.y;
    let yy = moment(polygon, 0, 2) - &area * &c.y * &c.y;
    InertiaMatrix::from_entries(xx, xy, yy)
}

fn moment(polygon: &DelzantPolygon, p: u32, q: u32) -> Rational {
    polygon
        .monomial_moment(p, q)
        .expect("degree two moments are supported")
}

fn boundary(polygon: &DelzantPolygon, p: u32, q: u32) -> Rational {
    polygon
        .boundary_moment(p, q)
        .expect("degree one boundary moments are supported")
}

fn inertia(polygon: &DelzantPolygon) -> InertiaMatrix {
    inertia_matrix(polygon).expect("a valid polygon has positive definite inertia")
}

/// `þ(ς)/4π = |∂P|/|P| + |∂P|·(x − x̄)·Π⁻¹𝔇`.
///
/// The factor `|∂P|` on the linear part is what makes ∫_P f þ(ς) da equal
/// 4π∫_{∂P} f dλ for every affine f.
pub fn projected_scalar_curvature(polygon: &DelzantPolygon) -> ProjectedScalarCurvature {
    let perimeter = polygon.lattice_perimeter();
    let area = polygon.area();
    let center = interior_barycenter(polygon);
    let gradient = inertia(polygon)
        .apply_inverse(&displacement(polygon))
        .scale(&perimeter);
    let constant = &perimeter / &area - gradient.dot(&center);
    ProjectedScalarCurvature {
        normalized: AffineFunction::new(constant, gradient),
    }
}

/// Minimum of `þ(ς)/4π` over the vertices, which is its minimum over P.
pub fn vertex_positivity(polygon: &DelzantPolygon) -> VertexPositivity {
    let f = projected_scalar_curvature(polygon).normalized;
    polygon
        .vertices()
        .iter()
        .map(|v| (f.evaluate(v), v))
        .min_by(|a, b| a.0.cmp(&b.0))
        .map(|(min_value, v)| VertexPositivity {
            min_value,
            vertex: v.clone(),
        })
        .expect("polygons have vertices")
}

/// `ς̄ = 4π|∂P|/|P|`
pub fn average_hermitian_scalar(polygon: &DelzantPolygon) -> PiMultiple {
    PiMultiple::new(int(4) * polygon.lattice_perimeter() / polygon.area(), 1)
}

/// The Futaki covector and its norm.
///
/// The norm is computed as the L² norm `∫_P (þ(ς) − ς̄)² da`, which the
/// projection identifies with `16π²|∂P|²·𝔇ᵀΠ⁻¹𝔇`; the integral route is kept
/// so that the cohomological form of the virtual action does not share the
/// Π⁻¹ contraction with the polygon form.
pub fn futaki(polygon: &DelzantPolygon) -> Futaki {
    let perimeter = polygon.lattice_perimeter();
    let area = polygon.area();
    let d = displacement(polygon);
    let covector_over_four_pi = -&d.scale(&perimeter);
    let centered = {
        let mut f = projected_scalar_curvature(polygon).normalized;
        f.constant -= &perimeter / &area;
        f.to_polynomial()
    };
    let l2 = polygon
        .integrate(&centered.mul(&centered))
        .expect("quadratic integrand");
    Futaki {
        covector_over_four_pi,
        norm_sq: PiMultiple::new(int(16) * l2, 2),
    }
}

/// `𝒜 = (|∂P|²/2)(1/|P| + 𝔇·Π⁻¹𝔇)`
pub fn virtual_action(polygon: &DelzantPolygon) -> Rational {
    let perimeter = polygon.lattice_perimeter();
    let d = displacement(polygon);
    let contraction = inertia(polygon).inverse_norm_sq(&d);
    &perimeter * &perimeter / int(2) * (Rational::one() / polygon.area() + contraction)
}

/// `𝒜 = (c₁·[ω])²/[ω]² + ‖𝔉‖²/32π²` with `c₁·[ω] = |∂P|` and `[ω]² = 2|P|`.
pub fn virtual_action_cohomological(polygon: &DelzantPolygon) -> Rational {
    action_from_periods(
        &polygon.lattice_perimeter(),
        &(int(2) * polygon.area()),
        &futaki(polygon).norm_sq,
    )
}

/// `(c₁·[ω])²/[ω]² + ‖𝔉‖²/32π²` from its cohomological ingredients.
pub fn action_from_periods(c1_dot_omega: &Rational, omega_sq: &Rational, futaki_norm_sq: &PiMultiple) -> Rational {
    let futaki_term = futaki_norm_sq.div(&PiMultiple::new(int(32), 2));
    let futaki_term = futaki_term
        .as_rational()
        .expect("‖𝔉‖² carries exactly π²")
        .clone();
    c1_dot_omega * c1_dot_omega / omega_sq + futaki_term
}

/// `|∂P|²/(2|P|) = (c₁·[ω])²/[ω]²`, the Futaki-free part of 𝒜.
pub fn simple_action(polygon: &DelzantPolygon) -> Rational {
    let perimeter = polygon.lattice_perimeter();
    &perimeter * &perimeter / (int(2) * polygon.area())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylBounds {
    /// `(4π²/3)·𝒜`
    pub toric: PiMultiple,
    /// `(4π²/3)·|∂P|²/(2|P|)`
    pub simple: PiMultiple,
}

pub fn weyl_lower_bound(polygon: &DelzantPolygon) -> WeylBounds {
    let four_thirds = Rational::new(4.into(), 3.into());
    WeylBounds {
        toric: PiMultiple::new(&four_thirds * virtual_action(polygon), 2),
        simple: PiMultiple::new(four_thirds * simple_action(polygon), 2),
    }
}

/// `∫_P f·þ(ς)/4π da − ∫_{∂P} f dλ`; zero for every affine f.
pub fn lejmi_pairing_residual(polygon: &DelzantPolygon, f: &AffineFunction) -> Rational {
    let scalar = projected_scalar_curvature(polygon).normalized.to_polynomial();
    let f = f.to_polynomial();
    let interior = polygon.integrate(&f.mul(&scalar)).expect("quadratic integrand");
    let edge = polygon.boundary_integrate(&f).expect("affine integrand");
    interior - edge
}

/// Everything above, for one polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub area: Rational,
    pub perimeter: Rational,
    pub barycenter_interior: Vec2,
    pub barycenter_boundary: Vec2,
    pub displacement: Vec2,
    pub inertia: InertiaMatrix,
    pub futaki: Futaki,
    pub avg_hermitian_scalar: PiMultiple,
    pub virtual_action: Rational,
    pub weyl: WeylBounds,
    pub positivity: VertexPositivity,
}

impl InvariantReport {
    pub fn compute(polygon: &DelzantPolygon) -> Self {
        InvariantReport {
            area: polygon.area(),
            perimeter: polygon.lattice_perimeter(),
            barycenter_interior: interior_barycenter(polygon),
            barycenter_boundary: boundary_barycenter(polygon),
            displacement: displacement(polygon),
            inertia: inertia(polygon),
            futaki: futaki(polygon),
            avg_hermitian_scalar: average_hermitian_scalar(polygon),
            virtual_action: virtual_action(polygon),
            weyl: weyl_lower_bound(polygon),
            positivity: vertex_positivity(polygon),
        }
    }

    /// `‖𝔉‖²/π²`, exact.
    pub fn futaki_norm_sq_over_pi2(&self) -> Rational {
        self.futaki.norm_sq.coefficient.clone()
    }
}
