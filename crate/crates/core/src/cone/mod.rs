//! The symplectic cone of a toric surface, parameterized by support numbers
//! over its normal fan, and the virtual action on it.

mod dp1;
mod fan;
mod float_eval;
mod optimize;
mod scan;
mod support;

use thiserror::Error;

use crate::polygon::PolygonError;

pub use dp1::{
    dp1_action_closed_form, dp1_action_derivative, dp1_action_second_derivative, dp1_critical_alpha,
    dp1_support,
};
pub use fan::{builtin_fan, NormalFan, Surface};
pub use float_eval::{action_on_cone, action_on_cone_exact, float_virtual_action};
pub use optimize::{minimize_action, minimize_multistart, MinimizeOptions, MinimizerResult, MultiStart};
pub use scan::{scan_line, ScanRow, SCAN_CSV_HEADER};
pub use support::{
    corners_and_lengths, float_corners, gauge_fix, interior_support, is_inside_cone, polygon_from_support,
    random_interior_support, support_from_f64, translate_support, ReducedChart, CONE_BOUNDARY_TOLERANCE,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConeError {
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("unknown surface '{0}' (expected cp2, quadric, dp1, dp2 or dp3)")]
    UnknownSurface(String),
    #[error("support vector has {got} entries but the fan has {expected} rays")]
    SupportLength { expected: usize, got: usize },
    #[error("support lies outside the symplectic cone: edge {edge} has non-positive lattice length")]
    OutsideCone { edge: usize },
    #[error("minimizer did not converge (gradient sup-norm {:e})", .0.gradient_sup_norm)]
    NotConverged(Box<MinimizerResult>),
    #[error("no interior point of the symplectic cone was found")]
    NoInteriorPoint,
    #[error("α must be non-negative")]
    NegativeAlpha,
    #[error(transparent)]
    Polygon(#[from] PolygonError),
}
