//! Odd Jacobi theta function theta1 and its v-derivatives.
//!
//! theta1(v | tau) = 2 sum_{n>=0} (-1)^n q^((n+1/2)^2) sin((2n+1) v),
//! q = exp(i pi tau). Everything the evaluation backend needs reduces to
//! theta1, theta1', theta1'', theta1''' at one point, plus the constants
//! theta1'(0) and theta1'''(0). With a reduced tau the series needs about a
//! dozen terms for full binary64 accuracy.

use num_complex::Complex64;

use crate::tolerances::{THETA_TERM_CAP, THETA_TERM_CUTOFF_ULP};

const I_PI: Complex64 = Complex64::new(0.0, std::f64::consts::PI);

/// theta1 and its first three v-derivatives at v.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Theta1Suite {
    pub t0: Complex64,
    pub t1: Complex64,
    pub t2: Complex64,
    pub t3: Complex64,
}

/// theta1'(0) and theta1'''(0).
#[derive(Debug, Clone, Copy)]
pub(crate) struct Theta1Constants {
    pub d1: Complex64,
    pub d3: Complex64,
}

pub(crate) fn theta1_suite(v: Complex64, tau: Complex64) -> Theta1Suite {
    let mut t0 = Complex64::new(0.0, 0.0);
    let mut t1 = t0;
    let mut t2 = t0;
    let mut t3 = t0;
    let mut quiet_terms = 0;
    for n in 0..THETA_TERM_CAP {
        let s = n as f64 + 0.5;
        // q^((n+1/2)^2) computed in exponent form
        let q_pow = (I_PI * tau * (s * s)).exp();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let amp = 2.0 * sign;
        let odd = 2.0 * n as f64 + 1.0;
        let arg = v * odd;
        let (sin, cos) = (arg.sin(), arg.cos());
        let base = q_pow * amp;
        t0 += base * sin;
        t1 += base * odd * cos;
        t2 -= base * odd * odd * sin;
        t3 -= base * odd * odd * odd * cos;
        // The derivative sums dominate; scale the cutoff by odd^3.
        let term_scale = base.norm() * odd * odd * odd * sin.norm().max(cos.norm()).max(1.0);
        let sum_scale = t0.norm().max(t1.norm()).max(t2.norm()).max(t3.norm());
        if term_scale <= THETA_TERM_CUTOFF_ULP * f64::EPSILON * sum_scale {
            quiet_terms += 1;
            if quiet_terms >= 2 {
                break;
            }
        } else {
            quiet_terms = 0;
        }
    }
    Theta1Suite { t0, t1, t2, t3 }
}

pub(crate) fn theta1_constants(tau: Complex64) -> Theta1Constants {
    let mut d1 = Complex64::new(0.0, 0.0);
    let mut d3 = d1;
    let mut quiet_terms = 0;
    for n in 0..THETA_TERM_CAP {
        let s = n as f64 + 0.5;
        let q_pow = (I_PI * tau * (s * s)).exp();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let odd = 2.0 * n as f64 + 1.0;
        let term1 = q_pow * (2.0 * sign * odd);
        d1 += term1;
        d3 -= term1 * odd * odd;
        if term1.norm() * odd * odd
            <= THETA_TERM_CUTOFF_ULP * f64::EPSILON * d1.norm().max(d3.norm())
        {
            quiet_terms += 1;
            if quiet_terms >= 2 {
                break;
            }
        } else {
            quiet_terms = 0;
        }
    }
    Theta1Constants { d1, d3 }
}
