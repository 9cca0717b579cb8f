use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ConeError;
use crate::polygon::LatticeVector;

/// The five toric del Pezzo surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Surface {
    /// ℂℙ₂
    Cp2,
    /// ℂℙ₁ × ℂℙ₁
    Quadric,
    /// ℂℙ₂ # ℂℙ̄₂
    Dp1,
    /// ℂℙ₂ # 2ℂℙ̄₂
    Dp2,
    /// ℂℙ₂ # 3ℂℙ̄₂
    Dp3,
}

impl Surface {
    pub const ALL: [Surface; 5] = [
        Surface::Cp2,
        Surface::Quadric,
        Surface::Dp1,
        Surface::Dp2,
        Surface::Dp3,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Surface::Cp2 => "cp2",
            Surface::Quadric => "quadric",
            Surface::Dp1 => "dp1",
            Surface::Dp2 => "dp2",
            Surface::Dp3 => "dp3",
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Surface {
    type Err = ConeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Surface::ALL
            .into_iter()
            .find(|surface| surface.name() == s)
            .ok_or_else(|| ConeError::UnknownSurface(s.to_string()))
    }
}

/// A complete smooth fan: primitive rays in strictly increasing angle, each
/// adjacent pair a ℤ²-basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalFan {
    rays: Vec<LatticeVector>,
    name: Option<String>,
}

fn upper_half(v: &LatticeVector) -> bool {
    v.y > 0 || (v.y == 0 && v.x > 0)
}

impl NormalFan {
    pub fn new(rays: Vec<(i64, i64)>, name: Option<String>) -> Result<Self, ConeError> {
        if rays.len() < 3 {
            return Err(ConeError::InvalidFan(format!(
                "need at least 3 rays, got {}",
                rays.len()
            )));
        }
        let rays = rays
            .into_iter()
            .map(|(x, y)| {
                LatticeVector::new(x, y)
                    .ok_or_else(|| ConeError::InvalidFan(format!("ray ({x}, {y}) is not primitive")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let n = rays.len();
        for i in 0..n {
            let (a, b) = (rays[i], rays[(i + 1) % n]);
            let det = a.determinant(&b);
            if det != 1 {
                return Err(ConeError::InvalidFan(format!(
                    "adjacent rays {a} and {b} have determinant {det}; expected 1 in counterclockwise order"
                )));
            }
        }
        // each gap is a left turn of less than π, so this counts full turns
        let turns = (0..n)
            .filter(|&i| !upper_half(&rays[i]) && upper_half(&rays[(i + 1) % n]))
            .count();
        if turns != 1 {
            return Err(ConeError::InvalidFan(format!(
                "rays wind {turns} times around the origin"
            )));
        }
        Ok(NormalFan { rays, name })
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    /// Dimension of the reduced symplectic cone, `b₂ − 1 = rays − 3`.
    pub fn reduced_dimension(&self) -> usize {
        self.rays.len() - 3
    }
}

pub fn builtin_fan(surface: Surface) -> NormalFan {
    let rays: &[(i64, i64)] = match surface {
        Surface::Cp2 => &[(1, 0), (0, 1), (-1, -1)],
        Surface::Quadric => &[(1, 0), (0, 1), (-1, 0), (0, -1)],
        Surface::Dp1 => &[(1, 0), (0, 1), (-1, -1), (0, -1)],
        Surface::Dp2 => &[(1, 0), (0, 1), (-1, 0), (-1, -1), (0, -1)],
        Surface::Dp3 => &[(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)],
    };
    NormalFan::new(rays.to_vec(), Some(surface.name().to_string()))
        .expect("built-in fans are smooth and complete")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_fans_are_valid() {
        let sizes: Vec<usize> = Surface::ALL.iter().map(|&s| builtin_fan(s).len()).collect();
        assert_eq!(sizes, vec![3, 4, 4, 5, 6]);
        for s in Surface::ALL {
            let fan = builtin_fan(s);
            let n = fan.len();
            for i in 0..n {
                assert_eq!(fan.rays()[i].determinant(&fan.rays()[(i + 1) % n]).abs(), 1);
            }
            assert_eq!(fan.name(), Some(s.name()));
            assert_eq!(s.name().parse::<Surface>().unwrap(), s);
        }
        assert!(matches!("dp4".parse::<Surface>(), Err(ConeError::UnknownSurface(_))));
    }

    #[test]
    fn rejects_bad_fans() {
        // clockwise order
        assert!(NormalFan::new(vec![(1, 0), (-1, -1), (0, 1)], None).is_err());
        // singular cone between (1,0) and (1,2)
        assert!(NormalFan::new(vec![(1, 0), (1, 2), (-1, -1)], None).is_err());
        // not primitive
        assert!(NormalFan::new(vec![(2, 0), (0, 1), (-1, -1)], None).is_err());
        assert!(NormalFan::new(vec![(1, 0), (0, 1)], None).is_err());
        // winds twice
        let twice = vec![(1, 0), (0, 1), (-1, -1), (1, 0), (0, 1), (-1, -1)];
        assert!(NormalFan::new(twice, None).is_err());
    }

    #[test]
    fn hirzebruch_fan_is_accepted() {
        let f2 = NormalFan::new(vec![(1, 0), (0, 1), (-1, 2), (0, -1)], None).unwrap();
        assert_eq!(f2.reduced_dimension(), 1);
    }
}
