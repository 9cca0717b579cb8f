//! Intersection forms of del Pezzo surfaces and the cohomological Weyl and
//! Einstein inequalities.
//!
//! The pairing and the verdicts are generic over [`ExactScalar`], so classes
//! with quadratic irrational coefficients such as `F₁ + (2+√3)F₂` are decided
//! exactly. Verdicts only test the cohomological inequality; whether a
//! conformal class is of symplectic type is not something this module can
//! check.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::cone::NormalFan;
use crate::invariants::{futaki, action_from_periods};
use crate::numeric::{int, ratio, ExactScalar, ParseRationalError, PiMultiple, QuadraticSurd, Rational, RationalRepr};
use crate::polygon::DelzantPolygon;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("blow-up count {0} out of range 0..=8")]
    OutOfRange(usize),
    #[error("class has {got} coefficients but the lattice has rank {expected}")]
    LatticeMismatch { expected: usize, got: usize },
    #[error("class is not future-pointing")]
    NotFuturePointing,
    #[error("[ω]² must be positive")]
    NullOrSpacelikeOmega,
    #[error("invalid Gram matrix: {0}")]
    InvalidGram(String),
    #[error(transparent)]
    Parse(#[from] ParseRationalError),
}

/// `H²(M, ℤ)` with its intersection form, `c₁` and a future-pointing
/// timelike reference class that fixes the time orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LorentzLattice {
    gram: Vec<Vec<Rational>>,
    c1: Vec<Rational>,
    reference: Vec<Rational>,
    name: Option<String>,
}

/// Numbers of positive, negative and zero diagonal entries after
/// congruence diagonalization.
fn inertia_counts(gram: &[Vec<Rational>]) -> (usize, usize, usize) {
    let n = gram.len();
    let mut a: Vec<Vec<Rational>> = gram.to_vec();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(k, i);
                for row in a.iter_mut() {
                    row.swap(k, i);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // e_k ↦ e_k + e_j gives a nonzero diagonal entry 2·a_kj
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            }
        }
        let pivot = a[k][k].clone();
        match pivot.cmp(&Rational::zero()) {
            Ordering::Greater => pos += 1,
            Ordering::Less => neg += 1,
            Ordering::Equal => {
                zero += 1;
                continue;
            }
        }
        for i in k + 1..n {
            let factor = &a[i][k] / &pivot;
            for c in k..n {
                let v = &factor * &a[k][c];
                a[i][c] -= v;
            }
            for r in k..n {
                let v = &factor * &a[r][k];
                a[r][i] -= v;
            }
        }
    }
    (pos, neg, zero)
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

impl LorentzLattice {
    pub fn new(
        gram: Vec<Vec<Rational>>,
        c1: Vec<Rational>,
        reference: Vec<Rational>,
        name: Option<String>,
    ) -> Result<Self, CohomologyError> {
        let n = gram.len();
        if n == 0 || gram.iter().any(|row| row.len() != n) {
            return Err(CohomologyError::InvalidGram("matrix must be square and non-empty".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(CohomologyError::InvalidGram(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
            }
        }
        let (pos, neg, zero) = inertia_counts(&gram);
        if pos != 1 || zero != 0 {
            return Err(CohomologyError::InvalidGram(format!(
                "signature is ({pos}, {neg}) with {zero} null directions; expected (1, {})",
                n - 1
            )));
        }
        for v in [&c1, &reference] {
            if v.len() != n {
                return Err(CohomologyError::LatticeMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        let lattice = LorentzLattice {
            gram,
            c1,
            reference,
            name,
        };
        if !lattice.pair(&lattice.reference, &lattice.reference)?.is_positive() {
            return Err(CohomologyError::NullOrSpacelikeOmega);
        }
        Ok(lattice)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn c1(&self) -> &[Rational] {
        &self.c1
    }

    pub fn c1_class<T: ExactScalar>(&self) -> Vec<T> {
        self.c1.iter().cloned().map(T::from_rational).collect()
    }

    pub fn reference(&self) -> &[Rational] {
        &self.reference
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn c1_squared(&self) -> Rational {
        self.pair(&self.c1, &self.c1).expect("c₁ has the lattice rank")
    }

    fn check<T>(&self, a: &[T]) -> Result<(), CohomologyError> {
        if a.len() != self.rank() {
            return Err(CohomologyError::LatticeMismatch {
                expected: self.rank(),
                got: a.len(),
            });
        }
        Ok(())
    }

    pub fn pair<T: ExactScalar>(&self, a: &[T], b: &[T]) -> Result<T, CohomologyError> {
        self.check(a)?;
        self.check(b)?;
        let mut sum = T::from_int(0);
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                if !self.gram[i][j].is_zero() {
                    let g = T::from_rational(self.gram[i][j].clone());
                    sum = sum.plus(&g.times(ai).times(bj));
                }
            }
        }
        Ok(sum)
    }

    /// `a² > 0` and `a` pairs positively with the reference class.
    pub fn is_future_timelike<T: ExactScalar>(&self, a: &[T]) -> Result<bool, CohomologyError> {
        let reference: Vec<T> = self.reference.iter().cloned().map(T::from_rational).collect();
        Ok(self.pair(a, a)?.is_pos() && self.pair(a, &reference)?.is_pos())
    }

    /// Future-pointing in the closed sense: `a² ≥ 0`, `a ≠ 0`, `a·ref > 0`.
    fn is_future_causal<T: ExactScalar>(&self, a: &[T]) -> Result<bool, CohomologyError> {
        let reference: Vec<T> = self.reference.iter().cloned().map(T::from_rational).collect();
        Ok(self.pair(a, a)?.is_nonneg() && self.pair(a, &reference)?.is_pos())
    }
}

/// `ℂℙ₂ # kℂℙ̄₂` in the basis `H, E₁, …, E_k` with `c₁ = 3H − ΣEᵢ`.
pub fn del_pezzo_lattice(k: usize) -> Result<LorentzLattice, CohomologyError> {
    if k > 8 {
        return Err(CohomologyError::OutOfRange(k));
    }
    let n = k + 1;
    let gram = (0..n)
        .map(|i| (0..n).map(|j| if i != j { int(0) } else if i == 0 { int(1) } else { int(-1) }).collect())
        .collect();
    let mut c1 = vec![int(3)];
    c1.extend((0..k).map(|_| int(-1)));
    let mut reference = vec![int(1)];
    reference.extend((0..k).map(|_| int(0)));
    let name = if k == 0 { "cp2".to_string() } else { format!("dp{k}") };
    LorentzLattice::new(gram, c1, reference, Some(name))
}

/// `ℂℙ₁ × ℂℙ₁` in the basis `F₁, F₂` of fibre classes.
pub fn quadric_lattice() -> LorentzLattice {
    LorentzLattice::new(
        vec![ints(&[0, 1]), ints(&[1, 0])],
        ints(&[2, 2]),
        ints(&[1, 1]),
        Some("quadric".to_string()),
    )
    .expect("the quadric form is Lorentzian")
}

/// `[ω] = F₁ + t·F₂` on the quadric.
pub fn quadric_class<T: ExactScalar>(t: T) -> Vec<T> {
    vec![T::from_int(1), t]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CauchySchwarzMargin {
    /// `c₁·[ω] − √(c₁²)·√([ω]²)`
    pub margin: f64,
    /// `(c₁·[ω])² − c₁²·[ω]²`, zero exactly when the classes are proportional.
    #[serde(serialize_with = "crate::numeric::rational_string::serialize")]
    pub gap: Rational,
}

pub fn reverse_cauchy_schwarz_margin(
    lattice: &LorentzLattice,
    c1: &[Rational],
    omega: &[Rational],
) -> Result<CauchySchwarzMargin, CohomologyError> {
    if !lattice.is_future_causal(c1)? || !lattice.is_future_timelike(omega)? {
        return Err(CohomologyError::NotFuturePointing);
    }
    let cross = lattice.pair(c1, omega)?;
    let c1_sq = lattice.pair(c1, c1)?;
    let omega_sq = lattice.pair(omega, omega)?;
    let margin = crate::numeric::to_f64(&cross)
        - (crate::numeric::to_f64(&c1_sq) * crate::numeric::to_f64(&omega_sq)).sqrt();
    Ok(CauchySchwarzMargin {
        margin,
        gap: &cross * &cross - c1_sq * omega_sq,
    })
}

/// `(4π²/3)(c₁·[ω])²/[ω]²`
pub fn simple_weyl_bound(lattice: &LorentzLattice, omega: &[Rational]) -> Result<PiMultiple, CohomologyError> {
    let omega_sq = lattice.pair(omega, omega)?;
    if !omega_sq.is_positive() {
        return Err(CohomologyError::NullOrSpacelikeOmega);
    }
    let cross = lattice.pair(&lattice.c1, omega)?;
    Ok(PiMultiple::new(ratio(4, 3) * &cross * &cross / omega_sq, 2))
}

/// Comparison of a lower bound with `(3/2)c₁²`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionVerdict<T> {
    pub lhs: T,
    pub rhs: T,
    pub margin: T,
    /// `lhs ≥ rhs`: no Einstein metric in the conformal class.
    pub obstructed: bool,
    /// `lhs < rhs`: the class lies in the controlled cone.
    pub controlled: bool,
}

impl<T: ExactScalar> ObstructionVerdict<T> {
    pub fn new(lhs: T, rhs: T) -> Self {
        let margin = lhs.minus(&rhs);
        let obstructed = margin.is_nonneg();
        ObstructionVerdict {
            lhs,
            rhs,
            controlled: !obstructed,
            obstructed,
            margin,
        }
    }

    pub fn verdict(&self) -> &'static str {
        if self.obstructed {
            "obstructed"
        } else {
            "not_obstructed"
        }
    }
}

impl<T: ExactScalar> Serialize for ObstructionVerdict<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            lhs: String,
            lhs_float: f64,
            rhs: String,
            rhs_float: f64,
            margin: String,
            margin_float: f64,
            verdict: &'a str,
            controlled_cone: bool,
        }
        Repr {
            lhs: self.lhs.to_string(),
            lhs_float: self.lhs.to_float(),
            rhs: self.rhs.to_string(),
            rhs_float: self.rhs.to_float(),
            margin: self.margin.to_string(),
            margin_float: self.margin.to_float(),
            verdict: self.verdict(),
            controlled_cone: self.controlled,
        }
        .serialize(s)
    }
}

fn three_halves_c1_squared<T: ExactScalar>(lattice: &LorentzLattice) -> T {
    T::from_rational(ratio(3, 2) * lattice.c1_squared())
}

/// `(c₁·[ω])²/[ω]² ≥ (3/2)c₁²`
pub fn einstein_obstruction_basic<T: ExactScalar>(
    lattice: &LorentzLattice,
    omega: &[T],
) -> Result<ObstructionVerdict<T>, CohomologyError> {
    let omega_sq = lattice.pair(omega, omega)?;
    if !omega_sq.is_pos() {
        return Err(CohomologyError::NullOrSpacelikeOmega);
    }
    if !lattice.is_future_timelike(omega)? {
        return Err(CohomologyError::NotFuturePointing);
    }
    let cross = lattice.pair(&lattice.c1_class::<T>(), omega)?;
    let lhs = cross.times(&cross).over(&omega_sq);
    Ok(ObstructionVerdict::new(lhs, three_halves_c1_squared(lattice)))
}

/// `c₁² = 2χ + 3τ = 12 − d` for the toric surface of a fan with `d` rays.
pub fn c1_squared_from_fan(fan: &NormalFan) -> i64 {
    12 - fan.len() as i64
}

/// `(c₁·[ω])²/[ω]² + ‖𝔉‖²/32π² ≥ (3/2)c₁²`, the left side assembled from
/// `|∂P|`, `|P|` and `‖𝔉‖²`. `c1_squared` defaults to `12 − edges`.
pub fn einstein_obstruction_toric(polygon: &DelzantPolygon, c1_squared: Option<Rational>) -> ObstructionVerdict<Rational> {
    let c1_squared = c1_squared.unwrap_or_else(|| int(12 - polygon.len() as i64));
    let lhs = action_from_periods(
        &polygon.lattice_perimeter(),
        &(int(2) * polygon.area()),
        &futaki(polygon).norm_sq,
    );
    ObstructionVerdict::new(lhs, ratio(3, 2) * c1_squared)
}

/// `2 + √3`, the larger root of `t² − 4t + 1`.
pub fn quadric_threshold_exact() -> QuadraticSurd {
    QuadraticSurd::new(int(2), Rational::one(), 3)
}

pub fn quadric_threshold() -> f64 {
    // larger root of t² − 4t + 1 = 0
    let (b, c) = (-4.0f64, 1.0f64);
    (-b + (b * b - 4.0 * c).sqrt()) / 2.0
}

/// `{"gram": [[…]], "c1": […], "omega": […]}` with integer or rational entries.
#[derive(Debug, Clone, Deserialize)]
pub struct LatticeInput {
    pub gram: Vec<Vec<RationalRepr>>,
    pub c1: Vec<RationalRepr>,
    pub omega: Vec<RationalRepr>,
}

impl LatticeInput {
    /// The lattice, with `[ω]` as time orientation, and `[ω]` itself.
    pub fn into_lattice(self) -> Result<(LorentzLattice, Vec<Rational>), CohomologyError> {
        let convert = |v: Vec<RationalRepr>| -> Result<Vec<Rational>, CohomologyError> {
            v.into_iter().map(|x| x.into_rational().map_err(Into::into)).collect()
        };
        let gram = self.gram.into_iter().map(convert).collect::<Result<Vec<_>, _>>()?;
        let c1 = convert(self.c1)?;
        let omega = convert(self.omega)?;
        let lattice = LorentzLattice::new(gram, c1, omega.clone(), None)?;
        Ok((lattice, omega))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{builtin_fan, dp1_action_closed_form, dp1_critical_alpha, dp1_support, polygon_from_support, Surface};
    use crate::invariants::virtual_action;
    use crate::numeric::rational_from_f64;
    use rand::{Rng, SeedableRng};

    #[test]
    fn c1_squared_values() {
        assert_eq!(del_pezzo_lattice(0).unwrap().c1_squared(), int(9));
        assert_eq!(del_pezzo_lattice(3).unwrap().c1_squared(), int(6));
        assert_eq!(del_pezzo_lattice(8).unwrap().c1_squared(), int(1));
        assert_eq!(quadric_lattice().c1_squared(), int(8));
        assert_eq!(del_pezzo_lattice(9), Err(CohomologyError::OutOfRange(9)));
        let sizes: Vec<i64> = Surface::ALL.iter().map(|&s| c1_squared_from_fan(&builtin_fan(s))).collect();
        assert_eq!(sizes, vec![9, 8, 8, 7, 6]);
    }

    #[test]
    fn pairings() {
        let q = quadric_lattice();
        assert_eq!(q.pair(&ints(&[1, 0]), &ints(&[0, 1])).unwrap(), int(1));
        assert_eq!(q.pair(&ints(&[1, 0]), &ints(&[1, 0])).unwrap(), int(0));
        let t = ratio(7, 3);
        let w = quadric_class(t.clone());
        assert_eq!(q.pair(&w, &w).unwrap(), int(2) * t);
        let d = del_pezzo_lattice(2).unwrap();
        assert_eq!(d.pair(&ints(&[1, 0, 0]), &ints(&[0, 1, 0])).unwrap(), int(0));
        assert_eq!(
            d.pair(&ints(&[1, 0]), &ints(&[1, 0, 0])),
            Err(CohomologyError::LatticeMismatch { expected: 3, got: 2 })
        );
        assert!(q.is_future_timelike(&ints(&[1, 1])).unwrap());
        assert!(!q.is_future_timelike(&ints(&[-1, -1])).unwrap());
        assert!(!q.is_future_timelike(&ints(&[1, 0])).unwrap());
    }

    #[test]
    fn rejects_non_lorentzian_forms() {
        let euclidean = LorentzLattice::new(vec![ints(&[1, 0]), ints(&[0, 1])], ints(&[1, 1]), ints(&[1, 0]), None);
        assert!(matches!(euclidean, Err(CohomologyError::InvalidGram(_))));
        let degenerate = LorentzLattice::new(vec![ints(&[1, 0]), ints(&[0, 0])], ints(&[1, 0]), ints(&[1, 0]), None);
        assert!(matches!(degenerate, Err(CohomologyError::InvalidGram(_))));
        let asymmetric = LorentzLattice::new(vec![ints(&[0, 1]), ints(&[2, 0])], ints(&[1, 1]), ints(&[1, 1]), None);
        assert!(matches!(asymmetric, Err(CohomologyError::InvalidGram(_))));
        // hyperbolic plane needs the off-diagonal rescue in the diagonalization
        assert_eq!(inertia_counts(&[ints(&[0, 1]), ints(&[1, 0])]), (1, 1, 0));
        assert_eq!(inertia_counts(&[ints(&[0, 0, 1]), ints(&[0, -1, 0]), ints(&[1, 0, 0])]), (1, 2, 0));
    }

    #[test]
    fn cauchy_schwarz_examples() {
        let q = quadric_lattice();
        let c1 = q.c1().to_vec();
        let half: Vec<Rational> = c1.iter().map(|x| x / int(2)).collect();
        let m = reverse_cauchy_schwarz_margin(&q, &c1, &half).unwrap();
        assert_eq!(m.gap, int(0));
        assert!(m.margin.abs() < 1e-12);
        let m = reverse_cauchy_schwarz_margin(&q, &c1, &ints(&[1, 4])).unwrap();
        assert!((m.margin - 2.0).abs() < 1e-12);
        let d3 = del_pezzo_lattice(3).unwrap();
        let c1 = d3.c1().to_vec();
        assert_eq!(reverse_cauchy_schwarz_margin(&d3, &c1, &c1).unwrap().gap, int(0));
        assert_eq!(
            reverse_cauchy_schwarz_margin(&q, &c1[..2], &ints(&[-1, -1])),
            Err(CohomologyError::NotFuturePointing)
        );
    }

    #[test]
    fn reverse_cauchy_schwarz_on_random_pairs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let mut tested = 0;
        while tested < 1000 {
            let k = rng.gen_range(0..=8);
            let lattice = del_pezzo_lattice(k).unwrap();
            let draw = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<Rational> {
                let mut v = vec![ratio(rng.gen_range(1..=60), rng.gen_range(1..=4))];
                v.extend((0..k).map(|_| ratio(rng.gen_range(-10..=10), rng.gen_range(1..=4))));
                v
            };
            let a = draw(&mut rng);
            let b = if rng.gen_bool(0.1) {
                let c = ratio(rng.gen_range(1..=9), rng.gen_range(1..=9));
                a.iter().map(|x| x * &c).collect()
            } else {
                draw(&mut rng)
            };
            if !lattice.is_future_timelike(&a).unwrap() || !lattice.is_future_timelike(&b).unwrap() {
                continue;
            }
            tested += 1;
            let m = reverse_cauchy_schwarz_margin(&lattice, &a, &b).unwrap();
            assert!(!m.gap.is_negative());
            let proportional = (1..a.len()).all(|i| &a[i] * &b[0] == &b[i] * &a[0]);
            assert_eq!(m.gap.is_zero(), proportional);
            assert!(m.margin >= -1e-9 * crate::numeric::to_f64(&lattice.pair(&a, &b).unwrap()));
        }
    }

    #[test]
    fn weyl_examples() {
        let cp2 = del_pezzo_lattice(0).unwrap();
        let c1 = cp2.c1().to_vec();
        assert_eq!(simple_weyl_bound(&cp2, &c1).unwrap(), PiMultiple::new(int(12), 2));
        let q = quadric_lattice();
        assert_eq!(simple_weyl_bound(&q, &ints(&[1, 1])).unwrap(), PiMultiple::new(ratio(32, 3), 2));
        let t = ratio(5, 2);
        let expected = ratio(4, 3) * (int(2) * &t + int(2)).pow(2) / (int(2) * &t);
        assert_eq!(simple_weyl_bound(&q, &quadric_class(t)).unwrap(), PiMultiple::new(expected, 2));
        assert_eq!(simple_weyl_bound(&q, &ints(&[1, 0])), Err(CohomologyError::NullOrSpacelikeOmega));
    }

    #[test]
    fn quadric_basic_verdicts() {
        let q = quadric_lattice();
        let v = einstein_obstruction_basic(&q, &quadric_class(int(4))).unwrap();
        assert_eq!(v.lhs, ratio(25, 2));
        assert!(v.obstructed);
        let v = einstein_obstruction_basic(&q, &quadric_class(int(1))).unwrap();
        assert_eq!(v.lhs, int(8));
        assert!(!v.obstructed && v.controlled);
        let v = einstein_obstruction_basic(&q, &quadric_class(quadric_threshold_exact())).unwrap();
        assert!(v.margin.vanishes());
        assert!(v.obstructed && !v.controlled);
        let t = quadric_threshold();
        assert!((t - (2.0 + 3f64.sqrt())).abs() < 1e-15);
        for (dt, expected) in [(1e-9, true), (-1e-9, false)] {
            let v = einstein_obstruction_basic(&q, &quadric_class(rational_from_f64(t + dt))).unwrap();
            assert_eq!(v.obstructed, expected);
        }
        assert_eq!(
            einstein_obstruction_basic(&q, &ints(&[-1, -1])),
            Err(CohomologyError::NotFuturePointing)
        );
    }

    #[test]
    fn quadric_verdict_flips_once() {
        let q = quadric_lattice();
        let verdicts: Vec<bool> = (0..400)
            .map(|k| einstein_obstruction_basic(&q, &quadric_class(int(1) + ratio(k, 40))).unwrap().obstructed)
            .collect();
        let flips = verdicts.windows(2).filter(|w| w[0] != w[1]).count();
        assert_eq!(flips, 1);
        let first = verdicts.iter().position(|&v| v).unwrap();
        let t_first = 1.0 + first as f64 / 40.0;
        assert!(t_first >= quadric_threshold() && t_first - 1.0 / 40.0 < quadric_threshold());
    }

    #[test]
    fn toric_verdicts() {
        let hexagon = polygon_from_support(&builtin_fan(Surface::Dp3), &ints(&[1; 6])).unwrap();
        let v = einstein_obstruction_toric(&hexagon, None);
        assert_eq!((v.lhs.clone(), v.rhs.clone()), (int(6), int(9)));
        assert!(!v.obstructed);
        let dp1 = builtin_fan(Surface::Dp1);
        let p = polygon_from_support(&dp1, &dp1_support(&int(5))).unwrap();
        let v = einstein_obstruction_toric(&p, None);
        assert_eq!(v.lhs, ratio(2799, 181));
        assert_eq!(v.lhs, dp1_action_closed_form(&int(5)).unwrap());
        assert!(v.obstructed);
        let alpha = rational_from_f64(dp1_critical_alpha(1e-12));
        let p = polygon_from_support(&dp1, &dp1_support(&alpha)).unwrap();
        assert!(!einstein_obstruction_toric(&p, None).obstructed);
        let v = einstein_obstruction_toric(&p, Some(int(1)));
        assert_eq!(v.rhs, ratio(3, 2));
    }

    #[test]
    fn toric_lhs_is_the_virtual_action_and_weyl_predicate_agrees() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for s in Surface::ALL {
            let fan = builtin_fan(s);
            for _ in 0..10 {
                let support = crate::cone::random_interior_support(&fan, &mut rng).unwrap();
                let p = polygon_from_support(&fan, &support).unwrap();
                let v = einstein_obstruction_toric(&p, None);
                assert_eq!(v.lhs, virtual_action(&p));
                // (4π²/3)𝒜 ≥ 2π²c₁²  ⟺  𝒜 ≥ (3/2)c₁²
                let c1_sq = int(c1_squared_from_fan(&fan));
                let weyl = ratio(4, 3) * &v.lhs >= int(2) * c1_sq;
                assert_eq!(weyl, v.obstructed);
            }
        }
    }

    #[test]
    fn lattice_json_input() {
        let input: LatticeInput =
            serde_json::from_str(r#"{"gram": [[0,1],[1,0]], "c1": [2, 2], "omega": ["1", "7/2"]}"#).unwrap();
        let (lattice, omega) = input.into_lattice().unwrap();
        assert_eq!(lattice.pair(&omega, &omega).unwrap(), int(7));
        let verdict = einstein_obstruction_basic(&lattice, &omega).unwrap();
        assert_eq!(verdict.lhs, ratio(81, 7));
        let json = serde_json::to_value(&verdict).unwrap();
        assert_eq!(json["lhs"], "81/7");
        assert_eq!(json["verdict"], "not_obstructed");
    }
}
