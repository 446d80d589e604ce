//! The bordered and derivative determinant identities.
//!
//! Two classical identities are evaluated with both sides on independent code
//! paths and reported with a relative residual:
//!
//! * the Frobenius-Stickelberger identity: the (n+2) x (n+2) bordered
//!   determinant with entries zeta(u_a + v_b) against a product of sigma
//!   values,
//! * Hermite's identity: the (n+1) x (n+1) determinant with rows
//!   [1, pe(u_a), pe'(u_a), ..., pe^(n-1)(u_a)] against its sigma product.
//!
//! The sign and constant conventions are anchored at n = 0, where the
//! bordered determinant reduces to -det [[0,1],[1,zeta]] = 1 = rhs.

pub mod confluence;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{difference_product_f64, SquareMatrix};
use crate::residual::relative_residual;
use crate::weierstrass::Weierstrass;

/// One evaluated identity instance.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub identity_name: &'static str,
    pub n: u32,
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// |lhs - rhs| / max(|lhs|, |rhs|, floor).
    pub relative_residual: f64,
    /// Pivot-ratio condition estimate of the determinant side.
    pub condition_estimate: f64,
    /// Reproducibility tag: campaign seed/trial or a hash of ad-hoc inputs.
    pub inputs_digest: String,
}

/// FNV-1a over the bit patterns of the inputs, for ad-hoc digests.
pub(crate) fn digest_points(points: &[&[Complex64]]) -> String {
    let mut hash = 0xcbf29ce484222325u64;
    let mut feed = |bits: u64| {
        hash ^= bits;
        hash = hash.wrapping_mul(0x100000001b3);
    };
    for group in points {
        for z in *group {
            feed(z.re.to_bits());
            feed(z.im.to_bits());
        }
    }
    format!("inputs=fnv:{hash:016x}")
}

/// Bordered matrix of the Frobenius-Stickelberger identity: entry (0,0) = 0,
/// the rest of the first row and column 1, and entry (a+1, b+1) =
/// zeta(u_a + v_b).
pub fn fs_matrix(w: &Weierstrass, us: &[Complex64], vs: &[Complex64]) -> Result<SquareMatrix> {
    if us.is_empty() || us.len() != vs.len() {
        return Err(Error::InvalidConfig {
            detail: format!(
                "argument lists must have equal nonzero length, got {} and {}",
                us.len(),
                vs.len()
            ),
        });
    }
    let dim = us.len() + 1;
    SquareMatrix::from_fn(dim, |row, col| {
        Ok(match (row, col) {
            (0, 0) => Complex64::new(0.0, 0.0),
            (0, _) | (_, 0) => Complex64::new(1.0, 0.0),
            (a, b) => w.zeta(us[a - 1] + vs[b - 1]).map_err(|e| match e {
                Error::TooCloseToPole {
                    point, distance, ..
                } => Error::TooCloseToPole {
                    point,
                    distance,
                    context: format!("fs_matrix entry u[{}] + v[{}]", a - 1, b - 1),
                },
                other => other,
            })?,
        })
    })
}

/// Evaluates the Frobenius-Stickelberger identity at one sample:
/// lhs = -det(bordered matrix), rhs = sigma(sum of all arguments) times the
/// sigma of pairwise differences (a > b) over the sigma of all sums
/// u_a + v_b.
pub fn fs_residual(w: &Weierstrass, us: &[Complex64], vs: &[Complex64]) -> Result<IdentityReport> {
    let matrix = fs_matrix(w, us, vs)?;
    let det = matrix.det();
    let lhs = -det.value;

    let n = us.len() - 1;
    let total: Complex64 = us.iter().chain(vs.iter()).sum();
    let mut rhs = w.sigma(total)?;
    for alpha in 0..=n {
        for beta in 0..alpha {
            rhs *= w.sigma(us[alpha] - us[beta])?;
            rhs *= w.sigma(vs[alpha] - vs[beta])?;
        }
    }
    for &u in us {
        for &v in vs {
            rhs /= w.sigma(u + v)?;
        }
    }

    Ok(IdentityReport {
        identity_name: "fs",
        n: n as u32,
        lhs,
        rhs,
        relative_residual: relative_residual(lhs, rhs),
        condition_estimate: det.condition,
        inputs_digest: digest_points(&[us, vs]),
    })
}

/// Evaluates Hermite's identity at one sample: lhs = det of the rows
/// [1, pe(u_a), pe'(u_a), ..., pe^(n-1)(u_a)], rhs = (-1)^n (prod k!)
/// sigma(sum u_a) prod_{a>b} sigma(u_a - u_b) / (prod_a sigma(u_a))^(n+1).
pub fn hermite_residual(w: &Weierstrass, us: &[Complex64]) -> Result<IdentityReport> {
    if us.len() < 2 {
        return Err(Error::InvalidConfig {
            detail: "Hermite's identity needs n >= 1 (at least two points)".to_string(),
        });
    }
    let n = us.len() - 1;
    let matrix = SquareMatrix::from_fn(us.len(), |row, col| {
        if col == 0 {
            Ok(Complex64::new(1.0, 0.0))
        } else {
            w.pe_derivative(us[row], col as u32 - 1)
        }
    })?;
    let det = matrix.det();
    let lhs = det.value;

    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let constant = difference_product_f64(n as u32)?;
    let total: Complex64 = us.iter().sum();
    let mut rhs = w.sigma(total)? * sign * constant;
    for alpha in 0..=n {
        for beta in 0..alpha {
            rhs *= w.sigma(us[alpha] - us[beta])?;
        }
    }
    let mut denom = Complex64::new(1.0, 0.0);
    for &u in us {
        denom *= w.sigma(u)?;
    }
    rhs /= denom.powi(n as i32 + 1);

    Ok(IdentityReport {
        identity_name: "hermite",
        n: n as u32,
        lhs,
        rhs,
        relative_residual: relative_residual(lhs, rhs),
        condition_estimate: det.condition,
        inputs_digest: digest_points(&[us]),
    })
}

/// Abel-sum vanishing of the bordered determinant with an explicit u_0:
/// scaled modulus |det| / max_entry^dim.
pub fn r_vanishing_value(
    w: &Weierstrass,
    u0: Complex64,
    rest_us: &[Complex64],
    vs: &[Complex64],
) -> Result<f64> {
    let mut us = Vec::with_capacity(rest_us.len() + 1);
    us.push(u0);
    us.extend_from_slice(rest_us);
    let matrix = fs_matrix(w, &us, vs)?;
    let det = matrix.det();
    let scale = matrix.max_entry_norm().powi(matrix.dim() as i32);
    Ok(det.value.norm() / scale)
}

/// Chooses u_0 congruent to -(u_1 + ... + u_n + v_0 + ... + v_n), reduced
/// into the fundamental cell.
pub fn abel_vanishing_point(
    w: &Weierstrass,
    rest_us: &[Complex64],
    vs: &[Complex64],
) -> Result<Complex64> {
    let total: Complex64 = rest_us.iter().chain(vs.iter()).sum();
    Ok(w.lattice().reduce_point(-total)?.reduced)
}

/// Constructs the Abel vanishing point and returns (u_0, scaled check value).
/// The bordered determinant must vanish there because the sum of all
/// arguments is a lattice point.
pub fn r_vanishing_check(
    w: &Weierstrass,
    rest_us: &[Complex64],
    vs: &[Complex64],
) -> Result<(Complex64, f64)> {
    let u0 = abel_vanishing_point(w, rest_us, vs)?;
    let value = r_vanishing_value(w, u0, rest_us, vs)?;
    Ok((u0, value))
}
