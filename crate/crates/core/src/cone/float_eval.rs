use super::support::{float_corners, polygon_from_support, support_from_f64};
use super::{ConeError, NormalFan};
use crate::invariants::virtual_action;
use crate::numeric::Rational;

/// 𝒜 of the polygon with the given corners, where corner `i` closes edge `i`
/// whose normal is `rays[i]`. Plain double precision.
pub fn float_virtual_action(fan: &NormalFan, corners: &[[f64; 2]]) -> f64 {
    let n = corners.len();
    let origin = corners[0];
    let pts: Vec<[f64; 2]> = corners
        .iter()
        .map(|p| [p[0] - origin[0], p[1] - origin[1]])
        .collect();
    let (mut area, mut mx, mut my, mut mxx, mut mxy, mut myy) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    for i in 0..n {
        let [x0, y0] = pts[i];
        let [x1, y1] = pts[(i + 1) % n];
        let c = x0 * y1 - x1 * y0;
        area += c;
        mx += (x0 + x1) * c;
        my += (y0 + y1) * c;
        mxx += (x0 * x0 + x0 * x1 + x1 * x1) * c;
        myy += (y0 * y0 + y0 * y1 + y1 * y1) * c;
        mxy += (x0 * y1 + 2.0 * x0 * y0 + 2.0 * x1 * y1 + x1 * y0) * c;
    }
    area /= 2.0;
    let (cx, cy) = (mx / 6.0 / area, my / 6.0 / area);
    let pxx = mxx / 12.0 - area * cx * cx;
    let pyy = myy / 12.0 - area * cy * cy;
    let pxy = mxy / 24.0 - area * cx * cy;

    let (mut perimeter, mut bx, mut by) = (0.0, 0.0, 0.0);
    for (i, ray) in fan.rays().iter().enumerate() {
        let (dx, dy) = (ray.y as f64, -(ray.x as f64));
        let a = pts[(i + n - 1) % n];
        let b = pts[i];
        let length = ((b[0] - a[0]) * dx + (b[1] - a[1]) * dy) / (dx * dx + dy * dy);
        perimeter += length;
        bx += length * (a[0] + b[0]) / 2.0;
        by += length * (a[1] + b[1]) / 2.0;
    }
    let (dx, dy) = (bx / perimeter - cx, by / perimeter - cy);
    let det = pxx * pyy - pxy * pxy;
    let contraction = (pyy * dx * dx - 2.0 * pxy * dx * dy + pxx * dy * dy) / det;
    perimeter * perimeter / 2.0 * (1.0 / area + contraction)
}

/// 𝒜 on the cone in floating point; edges at or below the boundary tolerance
/// count as outside.
pub fn action_on_cone(fan: &NormalFan, support: &[f64]) -> Result<f64, ConeError> {
    match float_corners(fan, support) {
        Some(corners) => Ok(float_virtual_action(fan, &corners)),
        None => {
            // locate the offending edge with exact arithmetic
            match polygon_from_support(fan, &support_from_f64(support)) {
                Err(e) => Err(e),
                Ok(_) => Err(ConeError::OutsideCone {
                    edge: shortest_edge(fan, support),
                }),
            }
        }
    }
}

fn shortest_edge(fan: &NormalFan, support: &[f64]) -> usize {
    let (_, lengths) = super::corners_and_lengths(fan, &support_from_f64(support)).expect("length checked");
    lengths
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0)
}

pub fn action_on_cone_exact(fan: &NormalFan, support: &[Rational]) -> Result<Rational, ConeError> {
    Ok(virtual_action(&polygon_from_support(fan, support)?))
}
