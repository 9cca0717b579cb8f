//! Exact moment integrals over a polygon and its lattice-weighted boundary.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{DelzantPolygon, PolygonError};
use crate::numeric::{Rational, Vec2};

/// Highest total degree accepted by [`DelzantPolygon::monomial_moment`].
pub const MAX_AREA_DEGREE: u32 = 4;
/// Highest total degree accepted by [`DelzantPolygon::boundary_moment`].
pub const MAX_BOUNDARY_DEGREE: u32 = 2;

/// Bivariate polynomial with exact coefficients, keyed by exponent pair.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Polynomial {
    pub fn constant(c: Rational) -> Self {
        let mut p = Polynomial::default();
        p.add_term(0, 0, c);
        p
    }

    /// `c + a·x + b·y`
    pub fn affine(c: Rational, a: Rational, b: Rational) -> Self {
        let mut p = Polynomial::constant(c);
        p.add_term(1, 0, a);
        p.add_term(0, 1, b);
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::default();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &other.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        (0..n).fold(Polynomial::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn evaluate(&self, p: &Vec2) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (&(i, j), c)| {
            acc + c * num_traits::pow(p.x.clone(), i as usize) * num_traits::pow(p.y.clone(), j as usize)
        })
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `∫_Δ u^a w^b du dw = a! b! / (a + b + 2)!` over the standard simplex.
fn simplex_monomial(a: u32, b: u32) -> Rational {
    Rational::new(factorial(a) * factorial(b), factorial(a + b + 2))
}

impl DelzantPolygon {
    /// `∫_P x^p y^q da`, by fan triangulation from vertex 0.
    pub fn monomial_moment(&self, p: u32, q: u32) -> Result<Rational, PolygonError> {
        self.monomial_moment_with_apex(0, p, q)
    }

    /// As [`monomial_moment`](Self::monomial_moment) but triangulating from vertex `apex`.
    pub fn monomial_moment_with_apex(
        &self,
        apex: usize,
        p: u32,
        q: u32,
    ) -> Result<Rational, PolygonError> {
        if p + q > MAX_AREA_DEGREE {
            return Err(PolygonError::UnsupportedDegree {
                p,
                q,
                max: MAX_AREA_DEGREE,
            });
        }
        let mut integrand = Polynomial::default();
        integrand.add_term(p, q, Rational::one());
        Ok(self.integrate_with_apex(apex, &integrand))
    }

    /// Exact integral of a polynomial of degree at most 4 over P.
    pub fn integrate(&self, poly: &Polynomial) -> Result<Rational, PolygonError> {
        let degree = poly.degree();
        if degree > MAX_AREA_DEGREE {
            return Err(PolygonError::UnsupportedDegree {
                p: degree,
                q: 0,
                max: MAX_AREA_DEGREE,
            });
        }
        Ok(self.integrate_with_apex(0, poly))
    }

    fn integrate_with_apex(&self, apex: usize, poly: &Polynomial) -> Rational {
        let v = self.vertices();
        let n = v.len();
        let origin = &v[apex % n];
        let mut total = Rational::zero();
        for step in 1..n - 1 {
            let a = &v[(apex + step) % n];
            let b = &v[(apex + step + 1) % n];
            let ea = a - origin;
            let eb = b - origin;
            let jacobian = ea.cross(&eb);
            // x = x0 + u·ea.x + w·eb.x, y likewise, in the (u, w) simplex
            let x = Polynomial::affine(origin.x.clone(), ea.x.clone(), eb.x.clone());
            let y = Polynomial::affine(origin.y.clone(), ea.y.clone(), eb.y.clone());
            let mut pulled_back = Polynomial::default();
            for (&(i, j), c) in poly.terms() {
                let term = x.pow(i).mul(&y.pow(j));
                for (&(a_exp, b_exp), d) in term.terms() {
                    pulled_back.add_term(a_exp, b_exp, c * d);
                }
            }
            let integral = pulled_back
                .terms()
                .fold(Rational::zero(), |acc, (&(a_exp, b_exp), c)| {
                    acc + c * simplex_monomial(a_exp, b_exp)
                });
            total += integral * jacobian;
        }
        total
    }

    /// `∫_{∂P} x^p y^q dλ`, with dλ the lattice length measure on each edge.
    pub fn boundary_moment(&self, p: u32, q: u32) -> Result<Rational, PolygonError> {
        if p + q > MAX_BOUNDARY_DEGREE {
            return Err(PolygonError::UnsupportedDegree {
                p,
                q,
                max: MAX_BOUNDARY_DEGREE,
            });
        }
        let mut integrand = Polynomial::default();
        integrand.add_term(p, q, Rational::one());
        Ok(self.boundary_integrate_unchecked(&integrand))
    }

    /// `∫_{∂P} f dλ` for a polynomial of degree at most 2.
    pub fn boundary_integrate(&self, poly: &Polynomial) -> Result<Rational, PolygonError> {
        let degree = poly.degree();
        if degree > MAX_BOUNDARY_DEGREE {
            return Err(PolygonError::UnsupportedDegree {
                p: degree,
                q: 0,
                max: MAX_BOUNDARY_DEGREE,
            });
        }
        Ok(self.boundary_integrate_unchecked(poly))
    }

    fn boundary_integrate_unchecked(&self, poly: &Polynomial) -> Rational {
        let mut total = Rational::zero();
        for edge in self.edges() {
            let delta = &edge.end - &edge.start;
            // x(t) = start + t·delta, t ∈ [0, 1]; reuse the bivariate type with t in slot 0
            let x = Polynomial::affine(edge.start.x.clone(), delta.x.clone(), Rational::zero());
            let y = Polynomial::affine(edge.start.y.clone(), delta.y.clone(), Rational::zero());
            let mut along = Rational::zero();
            for (&(i, j), c) in poly.terms() {
                let term = x.pow(i).mul(&y.pow(j));
                for (&(t_exp, _), d) in term.terms() {
                    along += c * d / Rational::from_integer(BigInt::from(t_exp + 1));
                }
            }
            total += along * &edge.lattice_length;
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, ratio};

    fn unit_square() -> DelzantPolygon {
        DelzantPolygon::from_int_vertices(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap()
    }

    fn blow_up_alpha_one() -> DelzantPolygon {
        DelzantPolygon::from_int_vertices(&[(0, 0), (0, 1), (1, 1), (2, 0)]).unwrap()
    }

    /// ∫_0^1∫_0^1 x^p y^q = 1/((p+1)(q+1)) computed independently.
    #[test]
    fn square_moments_match_iterated_integrals() {
        let sq = unit_square();
        for p in 0..=4u32 {
            for q in 0..=(4 - p) {
                assert_eq!(
                    sq.monomial_moment(p, q).unwrap(),
                    ratio(1, ((p + 1) * (q + 1)) as i64),
                    "p={p} q={q}"
                );
            }
        }
    }

    #[test]
    fn simplex_mixed_moment() {
        let t = DelzantPolygon::from_int_vertices(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        assert_eq!(t.monomial_moment(1, 1).unwrap(), ratio(1, 24));
        assert_eq!(t.monomial_moment(2, 0).unwrap(), ratio(1, 12));
    }

    #[test]
    fn area_equals_zeroth_moment() {
        let p = blow_up_alpha_one();
        assert_eq!(p.monomial_moment(0, 0).unwrap(), p.area());
        assert_eq!(p.area(), ratio(3, 2));
    }

    #[test]
    fn degree_limits() {
        let sq = unit_square();
        assert!(matches!(
            sq.monomial_moment(3, 2),
            Err(PolygonError::UnsupportedDegree { .. })
        ));
        assert!(matches!(
            sq.boundary_moment(2, 1),
            Err(PolygonError::UnsupportedDegree { .. })
        ));
    }

    #[test]
    fn boundary_moments() {
        let sq = unit_square();
        assert_eq!(sq.boundary_moment(0, 0).unwrap(), int(4));
        assert_eq!(sq.boundary_moment(1, 0).unwrap(), int(2));
        let p = blow_up_alpha_one();
        assert_eq!(p.boundary_moment(0, 0).unwrap(), int(5));
        // lattice-weighted midpoints (1,0)·2 + (3/2,1/2) + (1/2,1) + (0,1/2)
        assert_eq!(p.boundary_moment(1, 0).unwrap(), int(4));
        assert_eq!(p.boundary_moment(0, 1).unwrap(), int(2));
        // ∫ x² over the bottom edge (length 2, x = 2t): 2·∫4t² = 8/3; slant x=2−t: ∫(2−t)² = 7/3;
        // top x = 1−t: 1/3; left edge x = 0
        assert_eq!(p.boundary_moment(2, 0).unwrap(), ratio(8 + 7 + 1, 3));
    }

    #[test]
    fn triangulation_apex_does_not_matter() {
        let p = blow_up_alpha_one();
        for apex in 0..p.len() {
            for (i, j) in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 1), (0, 4)] {
                assert_eq!(
                    p.monomial_moment_with_apex(apex, i, j).unwrap(),
                    p.monomial_moment(i, j).unwrap()
                );
            }
        }
    }

    #[test]
    fn polynomial_integration_is_linear() {
        let p = blow_up_alpha_one();
        let f = Polynomial::affine(int(2), int(-3), ratio(1, 2));
        let expected = int(2) * p.area() - int(3) * p.monomial_moment(1, 0).unwrap()
            + ratio(1, 2) * p.monomial_moment(0, 1).unwrap();
        assert_eq!(p.integrate(&f).unwrap(), expected);
        let g = f.mul(&f);
        assert_eq!(g.degree(), 2);
        assert_eq!(
            g.evaluate(&Vec2::from_ints(1, 2)),
            num_traits::pow(f.evaluate(&Vec2::from_ints(1, 2)), 2)
        );
    }
}
