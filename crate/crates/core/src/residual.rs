//! Residual scale shared by every identity report.

use num_complex::Complex64;

use crate::tolerances::RESIDUAL_FLOOR;

/// |lhs - rhs| / max(|lhs|, |rhs|, floor). The floor guards instances where
/// both sides vanish by construction.
pub fn relative_residual(lhs: Complex64, rhs: Complex64) -> f64 {
    (lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(RESIDUAL_FLOOR)
}

/// Relative difference of two scalars with the same floor.
pub fn relative_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(RESIDUAL_FLOOR)
}
