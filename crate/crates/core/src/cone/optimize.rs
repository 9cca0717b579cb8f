//! Minimization of 𝒜 over the reduced cone.
//!
//! A Nelder–Mead simplex in the chart of [`ReducedChart`] does the search on a
//! double precision evaluator, rejecting points outside the cone. The result
//! is then polished by a few Newton steps whose derivatives are central
//! differences of the exact rational action; the same differences certify the
//! gradient and the Hessian.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::float_eval::float_virtual_action;
use super::support::{
    float_corners, gauge_fix, interior_support, polygon_from_support, random_interior_support, support_from_f64,
    ReducedChart,
};
use super::{ConeError, NormalFan};
use crate::invariants::{displacement, futaki, virtual_action};
use crate::numeric::{rational_from_f64, ratio, to_f64, Rational};

/// Finite difference step in chart coordinates.
const STEP: (i64, i64) = (1, 10_000);
const NEWTON_STEPS: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct MinimizeOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Full support vector to start from; the anticanonical point otherwise.
    pub initial: Option<Vec<f64>>,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        MinimizeOptions {
            tolerance: 1e-10,
            max_iterations: 10_000,
            initial: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimizerResult {
    pub name: Option<String>,
    /// Gauge-fixed minimizer: barycenter at the origin, unit area.
    pub support: Vec<f64>,
    pub reduced_coordinates: Vec<f64>,
    pub action: f64,
    pub gradient_sup_norm: f64,
    pub hessian_eigenvalues: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub displacement: [f64; 2],
    pub futaki_norm_sq_over_pi2: f64,
}

struct Objective<'a> {
    fan: &'a NormalFan,
    chart: ReducedChart<'a>,
}

impl<'a> Objective<'a> {
    fn new(fan: &'a NormalFan) -> Self {
        Objective {
            fan,
            chart: ReducedChart::new(fan),
        }
    }

    fn float(&self, z: &[f64]) -> f64 {
        match float_corners(self.fan, &self.chart.support_f64(z)) {
            Some(corners) => float_virtual_action(self.fan, &corners),
            None => f64::INFINITY,
        }
    }

    fn exact(&self, z: &[Rational]) -> Option<Rational> {
        polygon_from_support(self.fan, &self.chart.support(z))
            .ok()
            .map(|p| virtual_action(&p))
    }

    fn shifted(z: &[Rational], moves: &[(usize, Rational)]) -> Vec<Rational> {
        let mut out = z.to_vec();
        for (i, d) in moves {
            out[*i] += d;
        }
        out
    }

    fn central(&self, z: &[Rational], i: usize, h: &Rational) -> Option<Rational> {
        let up = self.exact(&Self::shifted(z, &[(i, h.clone())]))?;
        let down = self.exact(&Self::shifted(z, &[(i, -h)]))?;
        Some((up - down) / (Rational::from_integer(2.into()) * h))
    }

    /// Richardson-extrapolated central differences, `(4·D(h/2) − D(h))/3`.
    fn gradient(&self, z: &[Rational]) -> Option<Vec<f64>> {
        let h = ratio(STEP.0, STEP.1);
        let half = &h / Rational::from_integer(2.into());
        (0..z.len())
            .map(|i| {
                let coarse = self.central(z, i, &h)?;
                let fine = self.central(z, i, &half)?;
                Some(to_f64(&((Rational::from_integer(4.into()) * fine - coarse) / Rational::from_integer(3.into()))))
            })
            .collect()
    }

    fn hessian(&self, z: &[Rational]) -> Option<DMatrix<f64>> {
        let n = z.len();
        let h = ratio(STEP.0, STEP.1);
        let h2 = &h * &h;
        let center = self.exact(z)?;
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            let up = self.exact(&Self::shifted(z, &[(i, h.clone())]))?;
            let down = self.exact(&Self::shifted(z, &[(i, -&h)]))?;
            m[(i, i)] = to_f64(&((up + down - Rational::from_integer(2.into()) * &center) / &h2));
            for j in 0..i {
                let pp = self.exact(&Self::shifted(z, &[(i, h.clone()), (j, h.clone())]))?;
                let pm = self.exact(&Self::shifted(z, &[(i, h.clone()), (j, -&h)]))?;
                let mp = self.exact(&Self::shifted(z, &[(i, -&h), (j, h.clone())]))?;
                let mm = self.exact(&Self::shifted(z, &[(i, -&h), (j, -&h)]))?;
                let v = to_f64(&((pp - pm - mp + mm) / (Rational::from_integer(4.into()) * &h2)));
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        Some(m)
    }
}

fn exact_point(z: &[f64]) -> Vec<Rational> {
    z.iter().map(|&x| rational_from_f64(x)).collect()
}

fn sup_norm(g: &[f64]) -> f64 {
    g.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Nelder–Mead with the standard coefficients. Returns the best vertex and
/// the number of iterations used.
fn nelder_mead(f: &dyn Fn(&[f64]) -> f64, start: &[f64], max_iterations: usize) -> (Vec<f64>, usize) {
    let n = start.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = vec![(start.to_vec(), f(start))];
    for i in 0..n {
        let mut step = 0.1 * start[i].abs().max(0.5);
        let mut p = start.to_vec();
        loop {
            p[i] = start[i] + step;
            let v = f(&p);
            if v.is_finite() || step < 1e-9 {
                simplex.push((p, v));
                break;
            }
            step /= 2.0;
        }
    }
    let mut iterations = 0;
    while iterations < max_iterations {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[n].1;
        let diameter = simplex[1..]
            .iter()
            .map(|(p, _)| p.iter().zip(&simplex[0].0).fold(0.0f64, |m, (a, b)| m.max((a - b).abs())))
            .fold(0.0, f64::max);
        if (worst - best).abs() <= 1e-15 * best.abs().max(1.0) && diameter < 1e-9 {
            break;
        }
        iterations += 1;
        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex[..n].iter().map(|(p, _)| p[k]).sum::<f64>() / n as f64)
            .collect();
        let toward = |t: f64| -> Vec<f64> {
            (0..n)
                .map(|k| centroid[k] + t * (simplex[n].0[k] - centroid[k]))
                .collect()
        };
        let reflected = toward(-1.0);
        let fr = f(&reflected);
        if fr < simplex[0].1 {
            let expanded = toward(-2.0);
            let fe = f(&expanded);
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
        } else {
            let (contracted, fc) = if fr < worst {
                let p = toward(-0.5);
                let v = f(&p);
                (p, v)
            } else {
                let p = toward(0.5);
                let v = f(&p);
                (p, v)
            };
            if fc < fr.min(worst) {
                simplex[n] = (contracted, fc);
            } else {
                let anchor = simplex[0].0.clone();
                for (p, v) in simplex.iter_mut().skip(1) {
                    for k in 0..n {
                        p[k] = anchor[k] + 0.5 * (p[k] - anchor[k]);
                    }
                    *v = f(p);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    (simplex.swap_remove(0).0, iterations)
}

/// Newton steps on the exact objective, accepted only on exact decrease.
fn polish(objective: &Objective, mut z: Vec<f64>, tolerance: f64, budget: usize) -> (Vec<f64>, usize) {
    let mut steps = 0;
    for _ in 0..NEWTON_STEPS.min(budget) {
        let exact = exact_point(&z);
        let (Some(g), Some(h), Some(value)) = (
            objective.gradient(&exact),
            objective.hessian(&exact),
            objective.exact(&exact),
        ) else {
            break;
        };
        if sup_norm(&g) <= tolerance * 1e-3 {
            break;
        }
        let Some(delta) = h.lu().solve(&-DVector::from_vec(g)) else {
            break;
        };
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let trial: Vec<f64> = z.iter().zip(delta.iter()).map(|(a, d)| a + t * d).collect();
            if let Some(v) = objective.exact(&exact_point(&trial)) {
                if v < value {
                    z = trial;
                    accepted = true;
                    break;
                }
            }
            t /= 2.0;
        }
        if !accepted {
            break;
        }
        steps += 1;
    }
    (z, steps)
}

fn start_coordinates(fan: &NormalFan, chart: &ReducedChart, initial: Option<&[f64]>) -> Result<Vec<f64>, ConeError> {
    let support = match initial {
        Some(s) => {
            let exact = support_from_f64(s);
            polygon_from_support(fan, &exact)?;
            exact
        }
        None => interior_support(fan)?,
    };
    Ok(chart.coordinates(&support)?.iter().map(to_f64).collect())
}

/// Minimizes 𝒜 on the reduced cone. A result that fails the gradient or the
/// Hessian check comes back as [`ConeError::NotConverged`].
pub fn minimize_action(fan: &NormalFan, options: &MinimizeOptions) -> Result<MinimizerResult, ConeError> {
    let objective = Objective::new(fan);
    let start = start_coordinates(fan, &objective.chart, options.initial.as_deref())?;
    let (z, iterations) = if start.is_empty() {
        (start, 0)
    } else {
        let (z, nm) = nelder_mead(&|z| objective.float(z), &start, options.max_iterations);
        let (z, newton) = polish(&objective, z, options.tolerance, options.max_iterations - nm);
        (z, nm + newton)
    };
    let exact = exact_point(&z);
    let gradient = objective.gradient(&exact);
    let eigenvalues = objective
        .hessian(&exact)
        .filter(|h| h.nrows() > 0)
        .map(|h| {
            let mut e: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
            e.sort_by(f64::total_cmp);
            e
        });
    let gradient_sup_norm = gradient.as_deref().map(sup_norm).unwrap_or(f64::INFINITY);
    let hessian_eigenvalues = eigenvalues.unwrap_or_default();
    let converged = gradient_sup_norm <= options.tolerance
        && (z.is_empty() || hessian_eigenvalues.len() == z.len())
        && hessian_eigenvalues.iter().all(|&e| e > 0.0);

    let support = gauge_fix(fan, &objective.chart.support_f64(&z))?;
    let polygon = polygon_from_support(fan, &support_from_f64(&support))?;
    let d = displacement(&polygon).to_f64();
    let result = MinimizerResult {
        name: fan.name().map(str::to_string),
        support,
        reduced_coordinates: z.clone(),
        action: to_f64(&objective.exact(&exact).ok_or(ConeError::NoInteriorPoint)?),
        gradient_sup_norm,
        hessian_eigenvalues,
        iterations,
        converged,
        displacement: d,
        futaki_norm_sq_over_pi2: to_f64(&futaki(&polygon).norm_sq.coefficient),
    };
    if converged {
        Ok(result)
    } else {
        Err(ConeError::NotConverged(Box::new(result)))
    }
}

/// Minimizations from several seeded random interior starts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiStart {
    pub runs: Vec<MinimizerResult>,
    /// Largest minus smallest 𝒜* over the runs.
    pub spread: f64,
}

pub fn minimize_multistart(
    fan: &NormalFan,
    options: &MinimizeOptions,
    starts: usize,
    seed: u64,
) -> Result<MultiStart, ConeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut runs = Vec::with_capacity(starts);
    for _ in 0..starts {
        let start: Vec<f64> = random_interior_support(fan, &mut rng)?.iter().map(to_f64).collect();
        let opts = MinimizeOptions {
            initial: Some(start),
            ..options.clone()
        };
        runs.push(minimize_action(fan, &opts)?);
    }
    let lo = runs.iter().map(|r| r.action).fold(f64::INFINITY, f64::min);
    let hi = runs.iter().map(|r| r.action).fold(f64::NEG_INFINITY, f64::max);
    Ok(MultiStart { runs, spread: hi - lo })
}
