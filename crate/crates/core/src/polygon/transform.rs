use serde::{Deserialize, Serialize};

use super::PolygonError;
use crate::numeric::{int, Vec2};

/// `x ↦ A·x + b` with `A ∈ GL(2, ℤ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnimodularAffine {
    matrix: [[i64; 2]; 2],
    translation: Vec2,
}

impl UnimodularAffine {
    pub fn new(matrix: [[i64; 2]; 2], translation: Vec2) -> Result<Self, PolygonError> {
        let det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
        if det.abs() != 1 {
            return Err(PolygonError::NotUnimodular(det));
        }
        Ok(UnimodularAffine {
            matrix,
            translation,
        })
    }

    pub fn identity() -> Self {
        UnimodularAffine {
            matrix: [[1, 0], [0, 1]],
            translation: Vec2::zero(),
        }
    }

    pub fn translation(shift: Vec2) -> Self {
        UnimodularAffine {
            matrix: [[1, 0], [0, 1]],
            translation: shift,
        }
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        self.matrix
    }

    pub fn determinant(&self) -> i64 {
        let m = self.matrix;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn apply(&self, p: &Vec2) -> Vec2 {
        let m = self.matrix;
        let x = int(m[0][0]) * &p.x + int(m[0][1]) * &p.y;
        let y = int(m[1][0]) * &p.x + int(m[1][1]) * &p.y;
        &Vec2::new(x, y) + &self.translation
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &UnimodularAffine) -> UnimodularAffine {
        let a = self.matrix;
        let b = other.matrix;
        let matrix = [
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ];
        UnimodularAffine {
            matrix,
            translation: self.apply(&other.translation),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;
    use crate::polygon::{apply_unimodular_affine, DelzantPolygon};

    fn unit_square() -> DelzantPolygon {
        DelzantPolygon::from_int_vertices(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn rejects_non_unimodular_matrix() {
        assert_eq!(
            UnimodularAffine::new([[2, 0], [0, 1]], Vec2::zero()).unwrap_err(),
            PolygonError::NotUnimodular(2)
        );
    }

    #[test]
    fn identity_is_a_no_op() {
        let sq = unit_square();
        assert_eq!(apply_unimodular_affine(&sq, &UnimodularAffine::identity()), sq);
    }

    #[test]
    fn shear_maps_square_to_parallelogram() {
        let shear = UnimodularAffine::new([[1, 1], [0, 1]], Vec2::zero()).unwrap();
        let image = apply_unimodular_affine(&unit_square(), &shear);
        let expected = DelzantPolygon::from_int_vertices(&[(0, 0), (1, 0), (2, 1), (1, 1)]).unwrap();
        assert_eq!(image, expected);
        assert_eq!(image.area(), unit_square().area());
        assert_eq!(image.lattice_perimeter(), unit_square().lattice_perimeter());
    }

    #[test]
    fn reflection_keeps_orientation_canonical() {
        let flip = UnimodularAffine::new([[0, 1], [1, 0]], Vec2::from_ints(5, -7)).unwrap();
        let p = DelzantPolygon::from_int_vertices(&[(0, 0), (0, 1), (1, 1), (2, 0)]).unwrap();
        let image = apply_unimodular_affine(&p, &flip);
        assert_eq!(image.area(), ratio(3, 2));
        assert_eq!(image.lattice_perimeter(), p.lattice_perimeter());
        assert_eq!(flip.determinant(), -1);
    }

    #[test]
    fn composition_matches_sequential_application() {
        let a = UnimodularAffine::new([[1, 1], [0, 1]], Vec2::from_ints(1, 0)).unwrap();
        let b = UnimodularAffine::new([[0, -1], [1, 0]], Vec2::new(ratio(1, 3), ratio(-2, 5))).unwrap();
        let pt = Vec2::new(ratio(3, 7), ratio(-1, 2));
        assert_eq!(a.compose(&b).apply(&pt), a.apply(&b.apply(&pt)));
    }
}
