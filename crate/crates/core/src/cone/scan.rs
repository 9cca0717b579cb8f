use serde::Serialize;

use super::support::{float_corners, polygon_from_support, support_from_f64};
use super::{ConeError, NormalFan};
use crate::invariants::InvariantReport;
use crate::numeric::{int, to_f64};

pub const SCAN_CSV_HEADER: &str = "t,action,disp_x,disp_y,futaki_norm_sq,min_vertex_scalar,inside_cone";

/// One sample of a line scan. Quantities are `None` outside the cone.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub t: f64,
    pub action: Option<f64>,
    pub displacement: Option<[f64; 2]>,
    /// `‖𝔉‖²/16π² = |∂P|²·𝔇ᵀΠ⁻¹𝔇`
    pub futaki_norm_sq: Option<f64>,
    /// Minimum of `þ(ς)/4π` over the vertices.
    pub min_vertex_scalar: Option<f64>,
    pub inside_cone: bool,
}

impl ScanRow {
    pub fn csv_line(&self) -> String {
        let cell = |v: Option<f64>| v.map(|x| format!("{x:.17e}")).unwrap_or_default();
        format!(
            "{:.17e},{},{},{},{},{},{}",
            self.t,
            cell(self.action),
            cell(self.displacement.map(|d| d[0])),
            cell(self.displacement.map(|d| d[1])),
            cell(self.futaki_norm_sq),
            cell(self.min_vertex_scalar),
            self.inside_cone
        )
    }
}

/// Samples `λ(t) = start + t·direction` at `steps` evenly spaced `t` in
/// `[from, to]`, both ends included. Each row is evaluated exactly at the
/// double precision support and then rounded.
pub fn scan_line(
    fan: &NormalFan,
    start: &[f64],
    direction: &[f64],
    range: (f64, f64),
    steps: usize,
) -> Result<Vec<ScanRow>, ConeError> {
    for v in [start, direction] {
        if v.len() != fan.len() {
            return Err(ConeError::SupportLength {
                expected: fan.len(),
                got: v.len(),
            });
        }
    }
    let (from, to) = range;
    let rows = (0..steps)
        .map(|k| {
            let t = if steps == 1 {
                from
            } else {
                from + k as f64 * (to - from) / (steps - 1) as f64
            };
            let support: Vec<f64> = start.iter().zip(direction).map(|(s, d)| s + t * d).collect();
            evaluate(fan, t, &support)
        })
        .collect();
    Ok(rows)
}

fn evaluate(fan: &NormalFan, t: f64, support: &[f64]) -> ScanRow {
    let outside = ScanRow {
        t,
        action: None,
        displacement: None,
        futaki_norm_sq: None,
        min_vertex_scalar: None,
        inside_cone: false,
    };
    if float_corners(fan, support).is_none() {
        return outside;
    }
    let Ok(polygon) = polygon_from_support(fan, &support_from_f64(support)) else {
        return outside;
    };
    let report = InvariantReport::compute(&polygon);
    ScanRow {
        t,
        action: Some(to_f64(&report.virtual_action)),
        displacement: Some(report.displacement.to_f64()),
        futaki_norm_sq: Some(to_f64(&(report.futaki_norm_sq_over_pi2() / int(16)))),
        min_vertex_scalar: Some(to_f64(&report.positivity.min_value)),
        inside_cone: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{builtin_fan, dp1_action_closed_form, Surface};

    #[test]
    fn dp1_family_matches_closed_form() {
        let rows = scan_line(
            &builtin_fan(Surface::Dp1),
            &[0.0, 0.0, 1.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
            (0.1, 5.0),
            50,
        )
        .unwrap();
        assert_eq!(rows.len(), 50);
        assert_eq!(rows[0].t, 0.1);
        assert_eq!(rows[49].t, 5.0);
        for r in &rows {
            let expected = dp1_action_closed_form(&r.t).unwrap();
            assert!(((r.action.unwrap() - expected) / expected).abs() < 1e-10);
            assert!(r.min_vertex_scalar.unwrap() >= 0.0);
        }
    }

    #[test]
    fn quadric_action_increases_with_aspect_ratio() {
        let rows = scan_line(
            &builtin_fan(Surface::Quadric),
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
            (1.0, 4.0),
            31,
        )
        .unwrap();
        for pair in rows.windows(2) {
            assert!(pair[1].action.unwrap() > pair[0].action.unwrap());
        }
        assert!((rows[0].action.unwrap() - 8.0).abs() < 1e-12);
        // rectangles have no Futaki invariant
        assert!(rows.iter().all(|r| r.futaki_norm_sq == Some(0.0)));
    }

    #[test]
    fn zero_direction_gives_constant_rows() {
        let rows = scan_line(&builtin_fan(Surface::Dp2), &[1.0; 5], &[0.0; 5], (0.0, 1.0), 5).unwrap();
        assert!(rows.windows(2).all(|w| w[0].action == w[1].action));
    }

    #[test]
    fn rows_outside_the_cone_are_flagged() {
        let rows = scan_line(
            &builtin_fan(Surface::Dp1),
            &[0.0, 0.0, 1.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
            (-1.0, 1.0),
            3,
        )
        .unwrap();
        assert!(!rows[0].inside_cone && !rows[1].inside_cone && rows[2].inside_cone);
        assert_eq!(rows[0].csv_line(), format!("{:.17e},,,,,,false", -1.0));
        let single = scan_line(&builtin_fan(Surface::Dp1), &[0.0, 0.0, 2.0, 1.0], &[0.0; 4], (3.0, 9.0), 1).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].t, 3.0);
    }
}
