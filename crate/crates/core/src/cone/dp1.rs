//! The one-parameter family of `ℂℙ₂ # ℂℙ̄₂` polygons with vertices
//! `(0,0), (0,1), (α,1), (α+1,0)`.

use num_traits::{FromPrimitive, Num, Signed};

use super::ConeError;
use crate::numeric::{int, ratio, to_f64, Rational};

fn c<T: FromPrimitive>(n: i64) -> T {
    T::from_i64(n).expect("small integer constants are representable")
}

fn poly<T: Clone + Num + FromPrimitive>(coefficients: &[i64], x: &T) -> T {
    // Horner, highest degree first
    coefficients
        .iter()
        .fold(T::zero(), |acc, &k| acc * x.clone() + c::<T>(k))
}

fn check<T: Num + PartialOrd>(alpha: &T) -> Result<(), ConeError> {
    if *alpha < T::zero() {
        return Err(ConeError::NegativeAlpha);
    }
    Ok(())
}

/// `(12α³ + 42α² + 48α + 9)/(6α² + 6α + 1)`
pub fn dp1_action_closed_form<T>(alpha: &T) -> Result<T, ConeError>
where
    T: Clone + Num + FromPrimitive + PartialOrd,
{
    check(alpha)?;
    Ok(poly(&[12, 42, 48, 9], alpha) / poly(&[6, 6, 1], alpha))
}

/// `6(12α⁴ + 24α³ − 4α − 1)/(6α² + 6α + 1)²`
pub fn dp1_action_derivative<T>(alpha: &T) -> Result<T, ConeError>
where
    T: Clone + Num + FromPrimitive + PartialOrd,
{
    check(alpha)?;
    let q = poly(&[6, 6, 1], alpha);
    Ok(c::<T>(6) * poly(&[12, 24, 0, -4, -1], alpha) / (q.clone() * q))
}

/// `48(24α³ + 18α² + 6α + 1)/(6α² + 6α + 1)³`
pub fn dp1_action_second_derivative<T>(alpha: &T) -> Result<T, ConeError>
where
    T: Clone + Num + FromPrimitive + PartialOrd,
{
    check(alpha)?;
    let q = poly(&[6, 6, 1], alpha);
    Ok(c::<T>(48) * poly(&[24, 18, 6, 1], alpha) / (q.clone() * q.clone() * q))
}

/// Support numbers over the dp1 fan reproducing the α-polygon.
pub fn dp1_support(alpha: &Rational) -> Vec<Rational> {
    vec![int(0), int(0), alpha + int(1), int(1)]
}

/// The critical point of α ↦ 𝒜(α) on (0, ∞), by exact bisection of the
/// numerator of d𝒜/dα until the bracket is narrower than `tolerance`.
pub fn dp1_critical_alpha(tolerance: f64) -> f64 {
    assert!(tolerance > 0.0, "tolerance must be positive");
    let numerator = |a: &Rational| poly(&[12, 24, 0, -4, -1], a);
    // numerator is −1 at 0 and 31 at 1
    let (mut lo, mut hi) = (int(0), int(1));
    let width = crate::numeric::rational_from_f64(tolerance);
    while &hi - &lo > width {
        let mid = (&lo + &hi) / int(2);
        if numerator(&mid).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    to_f64(&((lo + hi) * ratio(1, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{builtin_fan, polygon_from_support, Surface};
    use crate::invariants::virtual_action;

    #[test]
    fn closed_form_values() {
        assert_eq!(dp1_action_closed_form(&int(0)).unwrap(), int(9));
        assert_eq!(dp1_action_closed_form(&int(1)).unwrap(), ratio(111, 13));
        assert_eq!(dp1_action_closed_form(&int(10)).unwrap(), ratio(16689, 661));
        assert_eq!(dp1_action_closed_form(&int(5)).unwrap(), ratio(2799, 181));
        assert_eq!(dp1_action_second_derivative(&int(0)).unwrap(), int(48));
        assert_eq!(dp1_action_second_derivative(&int(1)).unwrap(), ratio(2352, 2197));
        assert!((dp1_action_closed_form(&1.0f64).unwrap() - 111.0 / 13.0).abs() < 1e-14);
        assert_eq!(dp1_action_closed_form(&ratio(-1, 2)), Err(ConeError::NegativeAlpha));
        assert_eq!(dp1_action_second_derivative(&-1.0f64), Err(ConeError::NegativeAlpha));
    }

    #[test]
    fn polygon_pipeline_matches_closed_form() {
        let fan = builtin_fan(Surface::Dp1);
        for alpha in [ratio(1, 2), int(1), int(2), ratio(7, 3), int(10)] {
            let p = polygon_from_support(&fan, &dp1_support(&alpha)).unwrap();
            assert_eq!(virtual_action(&p), dp1_action_closed_form(&alpha).unwrap());
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let h = 1e-5;
        for k in 1..40 {
            let a = 0.125 * k as f64;
            let fd = (dp1_action_closed_form(&(a + h)).unwrap() - dp1_action_closed_form(&(a - h)).unwrap())
                / (2.0 * h);
            let exact = dp1_action_derivative(&a).unwrap();
            assert!((fd - exact).abs() <= 1e-6 * exact.abs().max(1.0), "α = {a}");
        }
    }

    #[test]
    fn second_derivative_is_positive() {
        for k in 1..200 {
            assert!(dp1_action_second_derivative(&ratio(k, 7)).unwrap().is_positive());
        }
    }

    #[test]
    fn critical_alpha() {
        let tol = 1e-12;
        let a = dp1_critical_alpha(tol);
        assert!(dp1_action_derivative(&a).unwrap().abs() < 10.0 * tol);
        assert!(dp1_action_second_derivative(&a).unwrap() > 0.0);
        let value = dp1_action_closed_form(&a).unwrap();
        assert!(value < 9.0 && value < 12.0);
        assert!((0.45..0.47).contains(&a));
    }
}
