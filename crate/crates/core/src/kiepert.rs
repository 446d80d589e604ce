//! Kiepert's Hankel determinant, division values, and pe(m u).
//!
//! The n x n Hankel determinant of pe', pe'', ..., pe^(2n-1) equals
//! (-1)^n (prod k!)^2 sigma((n+1)u) / sigma(u)^((n+1)^2). Rearranged, this
//! computes the division value psi_m(u) = sigma(m u) / sigma(u)^(m^2) from
//! derivatives at u alone, which is the engine behind the elliptic
//! multiplication formula pe(m u) = pe(u) - psi_(m+1) psi_(m-1) / psi_m^2.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{difference_product_f64, SquareMatrix};
use crate::residual::relative_residual;
use crate::tolerances::{KIEPERT_N_MAX, PE_MULT_M_MAX, PSI_M_MAX, PSI_NEAR_ZERO};
use crate::weierstrass::Weierstrass;

/// Both sides of Kiepert's identity at one point.
#[derive(Debug, Clone, Copy)]
pub struct KiepertReport {
    pub n: u32,
    pub u: Complex64,
    /// Hankel determinant of pe^(1), ..., pe^(2n-1).
    pub hankel: Complex64,
    /// (-1)^n (prod k!)^2 sigma((n+1)u) / sigma(u)^((n+1)^2).
    pub sigma_ratio: Complex64,
    pub relative_residual: f64,
    /// Pivot-ratio condition estimate of the Hankel determinant.
    pub condition_estimate: f64,
}

/// How a division value is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiMethod {
    /// sigma(m u) / sigma(u)^(m^2), directly.
    SigmaRatio,
    /// The Hankel determinant route: derivatives at u only.
    Hankel,
}

fn check_n(n: u32) -> Result<()> {
    if !(1..=KIEPERT_N_MAX).contains(&n) {
        return Err(Error::InvalidConfig {
            detail: format!("Kiepert order n must lie in 1..={KIEPERT_N_MAX}, got {n}"),
        });
    }
    Ok(())
}

/// Hankel determinant with entries H[i][j] = pe^(i+j+1)(u), i, j in 0..n.
pub fn kiepert_hankel(w: &Weierstrass, u: Complex64, n: u32) -> Result<Complex64> {
    Ok(kiepert_hankel_det(w, u, n)?.0)
}

fn kiepert_hankel_det(w: &Weierstrass, u: Complex64, n: u32) -> Result<(Complex64, f64)> {
    check_n(n)?;
    let matrix = SquareMatrix::from_fn(n as usize, |i, j| w.pe_derivative(u, (i + j + 1) as u32))?;
    let det = matrix.det();
    Ok((det.value, det.condition))
}

/// Right side of Kiepert's identity.
pub fn kiepert_rhs(w: &Weierstrass, u: Complex64, n: u32) -> Result<Complex64> {
    check_n(n)?;
    let sigma_u = w.sigma(u)?;
    let distance = w.lattice().distance_to_lattice(u)?;
    if sigma_u.norm() == 0.0 || distance < 1e-8 * w.shortest_vector() {
        return Err(Error::TooCloseToPole {
            point: u,
            distance,
            context: "kiepert_rhs denominator sigma(u)".to_string(),
        });
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let constant = difference_product_f64(n)?;
    let m = n as i32 + 1;
    Ok(w.sigma(u * m as f64)? * (sign * constant * constant) / sigma_u.powi(m * m))
}

/// Evaluates both sides of Kiepert's identity.
pub fn kiepert_report(w: &Weierstrass, u: Complex64, n: u32) -> Result<KiepertReport> {
    let (hankel, condition) = kiepert_hankel_det(w, u, n)?;
    let sigma_ratio = kiepert_rhs(w, u, n)?;
    Ok(KiepertReport {
        n,
        u,
        hankel,
        sigma_ratio,
        relative_residual: relative_residual(hankel, sigma_ratio),
        condition_estimate: condition,
    })
}

/// Division value psi_m(u) = sigma(m u) / sigma(u)^(m^2), for m in 2..=7,
/// by either route. psi_1 = 1 by convention (empty determinant).
pub fn psi_division_value(
    w: &Weierstrass,
    u: Complex64,
    m: u32,
    method: PsiMethod,
) -> Result<Complex64> {
    if !(2..=PSI_M_MAX).contains(&m) {
        return Err(Error::InvalidConfig {
            detail: format!("division index m must lie in 2..={PSI_M_MAX}, got {m}"),
        });
    }
    psi_value(w, u, m, method)
}

fn psi_value(w: &Weierstrass, u: Complex64, m: u32, method: PsiMethod) -> Result<Complex64> {
    if m == 1 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    match method {
        PsiMethod::SigmaRatio => {
            let sigma_u = w.sigma(u)?;
            let distance = w.lattice().distance_to_lattice(u)?;
            if sigma_u.norm() == 0.0 || distance < 1e-8 * w.shortest_vector() {
                return Err(Error::TooCloseToPole {
                    point: u,
                    distance,
                    context: "psi denominator sigma(u)".to_string(),
                });
            }
            Ok(w.sigma(u * m as f64)? / sigma_u.powi((m * m) as i32))
        }
        PsiMethod::Hankel => {
            let n = m - 1;
            let hankel = kiepert_hankel(w, u, n)?;
            let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
            let constant = difference_product_f64(n)?;
            Ok(hankel / (sign * constant * constant))
        }
    }
}

/// pe(m u) from division values at u: pe(u) - psi_(m+1) psi_(m-1) / psi_m^2.
/// Fails with the near-zero guard when u sits close to an m-division point
/// (where pe(m u) genuinely has its pole).
pub fn pe_multiplication(w: &Weierstrass, u: Complex64, m: u32) -> Result<Complex64> {
    if !(2..=PE_MULT_M_MAX).contains(&m) {
        return Err(Error::InvalidConfig {
            detail: format!("multiplier m must lie in 2..={PE_MULT_M_MAX}, got {m}"),
        });
    }
    let psi_m = psi_value(w, u, m, PsiMethod::SigmaRatio)?;
    if psi_m.norm() < PSI_NEAR_ZERO {
        let distance = w.lattice().distance_to_lattice(u * m as f64)?;
        return Err(Error::TooCloseToPole {
            point: u,
            distance,
            context: format!("psi_{m}(u) = {psi_m} below the division-point guard"),
        });
    }
    let psi_lo = psi_value(w, u, m - 1, PsiMethod::SigmaRatio)?;
    let psi_hi = psi_value(w, u, m + 1, PsiMethod::SigmaRatio)?;
    Ok(w.pe(u)? - psi_hi * psi_lo / (psi_m * psi_m))
}
