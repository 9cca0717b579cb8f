//! Energy of the oscillating perturbations `f_k = (1/k)·sin(2πk²v/ε)·φ` on the
//! cube `[−ε/2, ε/2]⁴`, where the cut-off φ is identically one.
//!
//! Only `v` enters the integrand `|∂f_k/∂v|² = (2πk/ε)²·cos²(2πk²v/ε)`, so the
//! four-dimensional trapezoid rule factorizes into one-dimensional sums.

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AppendixError {
    #[error("grid of {grid_n} points per axis under-resolves k = {k}; need at least {required}")]
    UnderResolved { grid_n: usize, k: u32, required: usize },
    #[error("ε must be positive and finite, got {0}")]
    InvalidEpsilon(f64),
    #[error("energy must be non-negative, got {0}")]
    NegativeEnergy(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerturbationProfile {
    pub epsilon: f64,
    pub k: u32,
    pub grid_n: usize,
}

impl PerturbationProfile {
    /// `k = 0` is the zero perturbation and is allowed here.
    pub fn new(epsilon: f64, k: u32, grid_n: usize) -> Result<Self, AppendixError> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(AppendixError::InvalidEpsilon(epsilon));
        }
        let required = Self::required_grid(k);
        if grid_n < required {
            return Err(AppendixError::UnderResolved { grid_n, k, required });
        }
        Ok(PerturbationProfile { epsilon, k, grid_n })
    }

    /// `8k²` points per axis, and never fewer than two.
    pub fn required_grid(k: u32) -> usize {
        (8 * (k as usize).pow(2)).max(2)
    }

    /// `∂f_k/∂v = (2πk/ε)·cos(2πk²v/ε)`
    pub fn derivative(&self, v: f64) -> f64 {
        let k = self.k as f64;
        2.0 * PI * k / self.epsilon * (2.0 * PI * k * k * v / self.epsilon).cos()
    }

    /// Trapezoid nodes and weights on `[−ε/2, ε/2]`.
    fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let n = self.grid_n;
        let h = self.epsilon / (n - 1) as f64;
        (0..n).map(move |i| {
            let x = -self.epsilon / 2.0 + i as f64 * h;
            let w = if i == 0 || i == n - 1 { h / 2.0 } else { h };
            (x, w)
        })
    }

    fn one_dimensional(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes().map(|(x, w)| w * f(x)).sum()
    }
}

/// Tensor-product trapezoid rule for `∫ |∂f_k/∂v|² dμ` over the cube.
pub fn nijenhuis_energy_quadrature(profile: &PerturbationProfile) -> f64 {
    let flat = profile.one_dimensional(|_| 1.0);
    let v = profile.one_dimensional(|v| profile.derivative(v).powi(2));
    flat * flat * flat * v
}

/// The same integral with f a function of `(y, v)`: a two-dimensional
/// trapezoid sum over the `(y, v)` grid times the volume of the other two
/// directions.
pub fn toric_profile_energy(profile: &PerturbationProfile) -> f64 {
    let mut sum = 0.0;
    for (_, wy) in profile.nodes() {
        for (v, wv) in profile.nodes() {
            sum += wy * wv * profile.derivative(v).powi(2);
        }
    }
    let flat = profile.one_dimensional(|_| 1.0);
    flat * flat * sum
}

/// `2π²k²ε²`, the exact value of the integral.
pub fn nijenhuis_energy_closed_form(epsilon: f64, k: u32) -> f64 {
    2.0 * PI * PI * (k as f64).powi(2) * epsilon.powi(2)
}

/// `2π²k²ε⁴`, the expression displayed for the same integral in the source.
pub fn nijenhuis_energy_paper_expression(epsilon: f64, k: u32) -> f64 {
    2.0 * PI * PI * (k as f64).powi(2) * epsilon.powi(4)
}

/// `4π·c₁·[ω] − E/2`, an upper bound for `∫ s dμ` when E bounds `∫|∇ω|² dμ`
/// from below.
pub fn scalar_integral_upper_bound(c1_dot_omega: f64, grad_energy: f64) -> Result<f64, AppendixError> {
    if grad_energy < 0.0 || grad_energy.is_nan() {
        return Err(AppendixError::NegativeEnergy(grad_energy));
    }
    Ok(4.0 * PI * c1_dot_omega - grad_energy / 2.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyReport {
    pub epsilon: f64,
    pub k: u32,
    pub grid_n: usize,
    pub energy_quadrature: f64,
    pub energy_closed_form: f64,
    pub energy_paper_expression: f64,
    pub scalar_bound: f64,
    /// Paper expression over the closed form; `None` when both vanish.
    pub discrepancy_factor: Option<f64>,
}

pub fn energy_report(profile: &PerturbationProfile, c1_dot_omega: f64) -> Result<EnergyReport, AppendixError> {
    let energy_quadrature = nijenhuis_energy_quadrature(profile);
    let energy_closed_form = nijenhuis_energy_closed_form(profile.epsilon, profile.k);
    let energy_paper_expression = nijenhuis_energy_paper_expression(profile.epsilon, profile.k);
    Ok(EnergyReport {
        epsilon: profile.epsilon,
        k: profile.k,
        grid_n: profile.grid_n,
        energy_quadrature,
        energy_closed_form,
        energy_paper_expression,
        scalar_bound: scalar_integral_upper_bound(c1_dot_omega, energy_quadrature)?,
        discrepancy_factor: (energy_closed_form > 0.0).then(|| energy_paper_expression / energy_closed_form),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn reference_profile() {
        let p = PerturbationProfile::new(0.5, 2, 256).unwrap();
        let e = nijenhuis_energy_quadrature(&p);
        assert!(rel(e, 2.0 * PI * PI) < 1e-6);
        assert!(rel(e, nijenhuis_energy_closed_form(0.5, 2)) < 1e-6);
        let doubled = nijenhuis_energy_quadrature(&PerturbationProfile::new(0.5, 4, 256).unwrap());
        assert!((doubled / e - 4.0).abs() < 1e-6);
        let r = energy_report(&p, 9.0).unwrap();
        assert!(rel(r.energy_paper_expression, PI * PI / 2.0) < 1e-15);
        assert!((r.discrepancy_factor.unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn zero_profile_has_no_energy() {
        let p = PerturbationProfile::new(0.5, 0, 16).unwrap();
        assert_eq!(nijenhuis_energy_quadrature(&p), 0.0);
        assert_eq!(energy_report(&p, 1.0).unwrap().discrepancy_factor, None);
    }

    #[test]
    fn under_resolution_and_bad_epsilon() {
        assert_eq!(
            PerturbationProfile::new(0.5, 2, 31),
            Err(AppendixError::UnderResolved { grid_n: 31, k: 2, required: 32 })
        );
        assert!(PerturbationProfile::new(0.5, 2, 32).is_ok());
        assert!(matches!(PerturbationProfile::new(0.0, 1, 64), Err(AppendixError::InvalidEpsilon(_))));
        assert!(matches!(PerturbationProfile::new(f64::NAN, 1, 64), Err(AppendixError::InvalidEpsilon(_))));
    }

    #[test]
    fn closed_form_examples() {
        assert!(rel(nijenhuis_energy_closed_form(1.0, 1), 2.0 * PI * PI) < 1e-15);
        assert_eq!(nijenhuis_energy_closed_form(1.0, 1), nijenhuis_energy_paper_expression(1.0, 1));
        assert!(rel(nijenhuis_energy_closed_form(0.5, 2), 2.0 * PI * PI) < 1e-15);
        assert!(rel(nijenhuis_energy_closed_form(0.6, 3) / nijenhuis_energy_closed_form(0.3, 3), 4.0) < 1e-15);
    }

    #[test]
    fn toric_route_agrees() {
        let p = PerturbationProfile::new(1.0, 3, 128).unwrap();
        let e = toric_profile_energy(&p);
        assert!(rel(e, 18.0 * PI * PI) < 1e-6);
        assert!(rel(e, nijenhuis_energy_quadrature(&p)) < 1e-12);
        let q = PerturbationProfile::new(1.0, 6, 320).unwrap();
        assert!((toric_profile_energy(&q) / toric_profile_energy(&PerturbationProfile::new(1.0, 3, 320).unwrap()) - 4.0).abs() < 1e-6);
    }

    #[test]
    fn brute_force_four_dimensional_sum() {
        let p = PerturbationProfile::new(0.7, 1, 12).unwrap();
        let nodes: Vec<(f64, f64)> = p.nodes().collect();
        let mut sum = 0.0;
        for &(_, w1) in &nodes {
            for &(_, w2) in &nodes {
                for &(_, w3) in &nodes {
                    for &(v, w4) in &nodes {
                        sum += w1 * w2 * w3 * w4 * p.derivative(v).powi(2);
                    }
                }
            }
        }
        assert!(rel(sum, nijenhuis_energy_quadrature(&p)) < 1e-12);
    }

    #[test]
    fn refinement_does_not_lose_accuracy() {
        // the integrand is periodic over whole periods, so the error is at
        // least second order
        for k in 1..4u32 {
            let exact = nijenhuis_energy_closed_form(0.5, k);
            let n = PerturbationProfile::required_grid(k);
            let coarse = (nijenhuis_energy_quadrature(&PerturbationProfile::new(0.5, k, n).unwrap()) - exact).abs();
            let fine = (nijenhuis_energy_quadrature(&PerturbationProfile::new(0.5, k, 2 * n).unwrap()) - exact).abs();
            assert!(fine <= coarse / 4.0 + 1e-12 * exact);
        }
    }

    #[test]
    fn k_scaling() {
        for k in 1..5u32 {
            let e1 = nijenhuis_energy_quadrature(&PerturbationProfile::new(0.8, 1, 512).unwrap());
            let ek = nijenhuis_energy_quadrature(&PerturbationProfile::new(0.8, k, 512).unwrap());
            assert!(rel(ek, (k * k) as f64 * e1) < 1e-8);
        }
    }

    #[test]
    fn scalar_bound() {
        assert_eq!(scalar_integral_upper_bound(0.0, 0.0).unwrap(), 0.0);
        assert!((scalar_integral_upper_bound(6.0, 100.0).unwrap() - (24.0 * PI - 50.0)).abs() < 1e-12);
        let a = scalar_integral_upper_bound(6.0, 10.0).unwrap();
        let b = scalar_integral_upper_bound(6.0, 14.0).unwrap();
        assert_eq!(a - b, 2.0);
        let bounds: Vec<f64> = [1u32, 2, 4, 8]
            .iter()
            .map(|&k| {
                let p = PerturbationProfile::new(1.0, k, PerturbationProfile::required_grid(k)).unwrap();
                scalar_integral_upper_bound(6.0, nijenhuis_energy_quadrature(&p)).unwrap()
            })
            .collect();
        assert!(bounds.windows(2).all(|w| w[1] < w[0]));
        assert!(*bounds.last().unwrap() < 0.0);
        assert!(scalar_integral_upper_bound(1.0, -1.0).is_err());
    }
}
