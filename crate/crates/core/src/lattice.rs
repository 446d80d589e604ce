//! Period lattices: normalization, invariants, and argument reduction.
//!
//! The lattice is Z*omega1 + Z*omega2 with full periods, so pe(u + omega_k) =
//! pe(u) and zeta(u + omega_k) = zeta(u) + eta_k. Generators are normalized at
//! construction: orientation Im(omega2/omega1) > 0, then unimodular changes of
//! basis until tau = omega2/omega1 lies in the standard fundamental domain
//! |Re tau| <= 1/2, |tau| >= 1. With the orientation fixed, the Legendre
//! relation reads eta1*omega2 - eta2*omega1 = 2*pi*i.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::theta::theta1_constants;
use crate::tolerances::{
    EISENSTEIN_SERIES_CUTOFF, EISENSTEIN_TERM_CAP, LATTICE_DEGENERACY_REL, NOME_BOUND,
    TAU_REDUCE_EPS, TOL_LEGENDRE,
};

const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * std::f64::consts::PI);

/// Normalized period lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice {
    omega1: Complex64,
    omega2: Complex64,
    tau: Complex64,
    nome_q: Complex64,
}

/// Lattice invariants g2, g3 and the quasi-periods of zeta.
#[derive(Debug, Clone, Copy)]
pub struct EllipticInvariants {
    pub g2: Complex64,
    pub g3: Complex64,
    /// g2^3 - 27 g3^2, nonzero for every non-degenerate lattice.
    pub discriminant: Complex64,
    /// Increment of zeta across omega1.
    pub eta1: Complex64,
    /// Increment of zeta across omega2.
    pub eta2: Complex64,
}

/// An argument reduced into the fundamental cell centered at 0:
/// u = reduced + m*omega1 + n*omega2 with basis coefficients of `reduced`
/// in [-1/2, 1/2).
#[derive(Debug, Clone, Copy)]
pub struct CellPoint {
    pub reduced: Complex64,
    pub m: i64,
    pub n: i64,
    /// Distance from `reduced` to the nearest lattice point.
    pub distance_to_lattice: f64,
}

fn check_finite(z: Complex64, context: &'static str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFiniteInput { context })
    }
}

impl Lattice {
    /// Builds a lattice from two generators, normalizing orientation and
    /// reducing tau. The generated point set is unchanged.
    pub fn new(omega1: Complex64, omega2: Complex64) -> Result<Self> {
        check_finite(omega1, "lattice generator omega1")?;
        check_finite(omega2, "lattice generator omega2")?;
        if omega1.norm() == 0.0 {
            return Err(Error::DegenerateLattice {
                detail: "omega1 = 0".to_string(),
            });
        }
        let ratio = omega2 / omega1;
        if ratio.im.abs() <= LATTICE_DEGENERACY_REL * ratio.norm() {
            return Err(Error::DegenerateLattice {
                detail: format!("omega2/omega1 = {ratio} is real"),
            });
        }

        let (mut w1, mut w2) = if ratio.im > 0.0 {
            (omega1, omega2)
        } else {
            (omega2, omega1)
        };

        // Gauss reduction on tau: translate Re into [-1/2, 1/2), invert while
        // |tau| < 1. Terminates in a bounded number of steps; the cap is a
        // safety net for boundary float noise.
        for _ in 0..200 {
            let tau = w2 / w1;
            let shift = (tau.re + 0.5).floor();
            if shift != 0.0 {
                w2 -= w1 * shift;
                continue;
            }
            if tau.norm_sqr() < 1.0 - TAU_REDUCE_EPS {
                let (a, b) = (w1, w2);
                w1 = b;
                w2 = -a;
                continue;
            }
            break;
        }

        let tau = w2 / w1;
        let nome_q = (Complex64::new(0.0, std::f64::consts::PI) * tau).exp();
        debug_assert!(tau.re.abs() <= 0.5 + TAU_REDUCE_EPS);
        debug_assert!(tau.norm() >= 1.0 - TAU_REDUCE_EPS);
        debug_assert!(nome_q.norm() <= NOME_BOUND);
        Ok(Lattice {
            omega1: w1,
            omega2: w2,
            tau,
            nome_q,
        })
    }

    pub fn omega1(&self) -> Complex64 {
        self.omega1
    }

    pub fn omega2(&self) -> Complex64 {
        self.omega2
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn nome_q(&self) -> Complex64 {
        self.nome_q
    }

    /// Length of the shortest nonzero lattice vector. With a reduced basis the
    /// minimum is attained within the [-2, 2]^2 coefficient box.
    pub fn shortest_vector(&self) -> f64 {
        let mut best = f64::INFINITY;
        for m in -2i64..=2 {
            for n in -2i64..=2 {
                if m == 0 && n == 0 {
                    continue;
                }
                let v = self.omega1 * m as f64 + self.omega2 * n as f64;
                best = best.min(v.norm());
            }
        }
        best
    }

    /// Expresses u in the (omega1, omega2) basis over the reals.
    fn basis_coefficients(&self, u: Complex64) -> (f64, f64) {
        let det = self.omega1.re * self.omega2.im - self.omega1.im * self.omega2.re;
        let x = (u.re * self.omega2.im - u.im * self.omega2.re) / det;
        let y = (self.omega1.re * u.im - self.omega1.im * u.re) / det;
        (x, y)
    }

    /// Reduces u into the fundamental cell, recording the translation.
    pub fn reduce_point(&self, u: Complex64) -> Result<CellPoint> {
        check_finite(u, "reduce_point argument")?;
        let (x, y) = self.basis_coefficients(u);
        if x.abs() >= 4.5e15 || y.abs() >= 4.5e15 {
            return Err(Error::NonFiniteInput {
                context: "reduce_point translation exceeds integer range",
            });
        }
        let m = (x + 0.5).floor() as i64;
        let n = (y + 0.5).floor() as i64;
        let reduced = u - self.omega1 * m as f64 - self.omega2 * n as f64;
        let mut distance = f64::INFINITY;
        for i in -1i64..=1 {
            for j in -1i64..=1 {
                let p = self.omega1 * i as f64 + self.omega2 * j as f64;
                distance = distance.min((reduced - p).norm());
            }
        }
        Ok(CellPoint {
            reduced,
            m,
            n,
            distance_to_lattice: distance,
        })
    }

    /// Distance from u to the nearest lattice point.
    pub fn distance_to_lattice(&self, u: Complex64) -> Result<f64> {
        Ok(self.reduce_point(u)?.distance_to_lattice)
    }
}

/// Sum of the Lambert series sum_{n>=1} n^p Q^n / (1 - Q^n).
fn lambert_sum(big_q: Complex64, p: u32) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut q_pow = Complex64::new(1.0, 0.0);
    for n in 1..=EISENSTEIN_TERM_CAP {
        q_pow *= big_q;
        let term = q_pow * (n as f64).powi(p as i32) / (Complex64::new(1.0, 0.0) - q_pow);
        acc += term;
        if term.norm() <= EISENSTEIN_SERIES_CUTOFF * acc.norm().max(1.0) {
            return Ok(acc);
        }
    }
    Err(Error::SlowConvergence {
        context: "Eisenstein q-series",
    })
}

/// Computes g2, g3 and the quasi-periods for a lattice.
///
/// g2 = 60 sum' w^-4 and g3 = 140 sum' w^-6 over nonzero lattice points,
/// evaluated through the normalized Eisenstein series
/// E4 = 1 + 240 sum n^3 Q^n/(1-Q^n) and E6 = 1 - 504 sum n^5 Q^n/(1-Q^n)
/// with Q = exp(2 pi i tau): g2 = (4 pi^4 / 3) E4 / omega1^4 and
/// g3 = (8 pi^6 / 27) E6 / omega1^6. With a reduced tau, |Q| <= exp(-pi
/// sqrt(3)) and a handful of terms reach full binary64 accuracy, which the
/// raw lattice sum cannot (its shells decay only cubically; the direct sum
/// survives in the test suite as an independent oracle).
///
/// eta1 comes from the theta constants,
/// eta1 = -(pi^2 / (3 omega1)) theta1'''(0) / theta1'(0), and eta2 from the
/// Legendre relation. Both are cross-validated against the series oracle by
/// the evaluator's startup self-check.
pub fn eisenstein_invariants(lat: &Lattice) -> Result<EllipticInvariants> {
    let big_q = lat.nome_q * lat.nome_q;
    let e4 = Complex64::new(1.0, 0.0) + lambert_sum(big_q, 3)? * 240.0;
    let e6 = Complex64::new(1.0, 0.0) - lambert_sum(big_q, 5)? * 504.0;
    let pi = std::f64::consts::PI;
    let w1_2 = lat.omega1 * lat.omega1;
    let w1_4 = w1_2 * w1_2;
    let w1_6 = w1_4 * w1_2;
    let g2 = e4 * (4.0 * pi.powi(4) / 3.0) / w1_4;
    let g3 = e6 * (8.0 * pi.powi(6) / 27.0) / w1_6;
    let discriminant = g2 * g2 * g2 - g3 * g3 * 27.0;

    let consts = theta1_constants(lat.tau);
    let eta1 = -(pi * pi / 3.0) / lat.omega1 * (consts.d3 / consts.d1);
    let eta2 = (eta1 * lat.omega2 - TWO_PI_I) / lat.omega1;

    let inv = EllipticInvariants {
        g2,
        g3,
        discriminant,
        eta1,
        eta2,
    };
    let scale = (g2.norm().powi(3)).max(g3.norm().powi(2));
    if discriminant.norm() <= 1e-12 * scale {
        return Err(Error::DegenerateLattice {
            detail: format!("vanishing discriminant {discriminant}"),
        });
    }
    let legendre = inv.legendre_residual(lat);
    if legendre > TOL_LEGENDRE {
        return Err(Error::SelfCheckFailed {
            detail: format!("Legendre relation residual {legendre:.3e}"),
        });
    }
    Ok(inv)
}

impl EllipticInvariants {
    /// |eta1 omega2 - eta2 omega1 - 2 pi i| relative to the term magnitudes.
    pub fn legendre_residual(&self, lat: &Lattice) -> f64 {
        let lhs = self.eta1 * lat.omega2 - self.eta2 * lat.omega1;
        (lhs - TWO_PI_I).norm()
            / ((self.eta1 * lat.omega2).norm() + (self.eta2 * lat.omega1).norm())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn square_lattice_is_already_reduced() {
        let lat = Lattice::new(c(2.0, 0.0), c(0.0, 2.0)).unwrap();
        assert_eq!(lat.omega1(), c(2.0, 0.0));
        assert_eq!(lat.omega2(), c(0.0, 2.0));
        assert!((lat.tau() - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn swapped_generators_restore_orientation() {
        let lat = Lattice::new(c(0.0, 2.0), c(2.0, 0.0)).unwrap();
        assert!(lat.tau().im > 0.0);
        assert_eq!(lat.omega1(), c(2.0, 0.0));
    }

    #[test]
    fn generic_tau_lands_in_fundamental_domain() {
        // (2, 1+2i): tau = (1+2i)/2 reduces by one translation to -1/2 + i.
        let lat = Lattice::new(c(2.0, 0.0), c(1.0, 2.0)).unwrap();
        let tau = lat.tau();
        assert!(tau.re.abs() <= 0.5 + 1e-12);
        assert!(tau.norm() >= 1.0 - 1e-12);
        assert!((tau - c(-0.5, 1.0)).norm() < 1e-14);
        assert!(lat.nome_q().norm() <= NOME_BOUND);
    }

    // Oracle for the reduction: scan unimodular changes of basis with bounded
    // entries for the tau of least |Re| subject to |tau| >= 1.
    #[test]
    fn reduction_agrees_with_brute_force_search() {
        let w1 = c(2.0, 0.0);
        let w2 = c(1.0, 2.0);
        let mut best: Option<Complex64> = None;
        let range = 20i64;
        for a in -range..=range {
            for b in -range..=range {
                for c_ in -range..=range {
                    for d in -range..=range {
                        if (a * d - b * c_).abs() != 1 {
                            continue;
                        }
                        let nw2 = w2 * a as f64 + w1 * b as f64;
                        let nw1 = w2 * c_ as f64 + w1 * d as f64;
                        if nw1.norm() == 0.0 {
                            continue;
                        }
                        let t = nw2 / nw1;
                        if t.im <= 0.0 || t.norm() < 1.0 - 1e-12 {
                            continue;
                        }
                        let better = match best {
                            None => true,
                            Some(cur) => t.re.abs() < cur.re.abs() - 1e-12,
                        };
                        if better {
                            best = Some(t);
                        }
                    }
                }
            }
        }
        let oracle = best.unwrap();
        let lat = Lattice::new(w1, w2).unwrap();
        // |Re tau| matches the minimum; tau itself may differ by reflection.
        assert!((lat.tau().re.abs() - oracle.re.abs()).abs() < 1e-12);
        assert!((lat.tau().norm() - oracle.norm()).abs() < 1e-12);
    }

    #[test]
    fn reduction_is_idempotent() {
        for (w1, w2) in [
            (c(2.0, 0.0), c(1.0, 2.0)),
            (c(1.0, 0.5), c(-0.3, 1.7)),
            (c(3.0, 1.0), c(10.0, 11.0)),
        ] {
            let lat = Lattice::new(w1, w2).unwrap();
            let again = Lattice::new(lat.omega1(), lat.omega2()).unwrap();
            assert_eq!(lat.omega1(), again.omega1());
            assert_eq!(lat.omega2(), again.omega2());
        }
    }

    #[test]
    fn degenerate_generators_are_rejected() {
        assert!(matches!(
            Lattice::new(c(0.0, 0.0), c(1.0, 1.0)),
            Err(Error::DegenerateLattice { .. })
        ));
        assert!(matches!(
            Lattice::new(c(2.0, 0.0), c(4.0, 0.0)),
            Err(Error::DegenerateLattice { .. })
        ));
    }

    #[test]
    fn reduce_point_examples() {
        let lat = Lattice::new(c(2.0, 0.0), c(0.0, 2.0)).unwrap();
        let zero = lat.reduce_point(c(0.0, 0.0)).unwrap();
        assert_eq!((zero.m, zero.n), (0, 0));
        assert_eq!(zero.reduced, c(0.0, 0.0));
        assert_eq!(zero.distance_to_lattice, 0.0);

        let at_omega1 = lat.reduce_point(lat.omega1()).unwrap();
        assert_eq!((at_omega1.m, at_omega1.n), (1, 0));
        assert!(at_omega1.reduced.norm() < 1e-15);

        let u = lat.omega1() * 0.3 + lat.omega2() * 1.7;
        let p = lat.reduce_point(u).unwrap();
        assert_eq!((p.m, p.n), (0, 2));
        let expected = lat.omega1() * 0.3 - lat.omega2() * 0.3;
        assert!((p.reduced - expected).norm() < 1e-14);
    }

    #[test]
    fn reduce_point_reconstructs_input() {
        let lat = Lattice::new(c(2.0, 0.0), c(1.0, 2.0)).unwrap();
        let points = [c(17.3, -41.9), c(-3.25, 0.125), c(1e6, 3e5)];
        for u in points {
            let p = lat.reduce_point(u).unwrap();
            let back = p.reduced + lat.omega1() * p.m as f64 + lat.omega2() * p.n as f64;
            assert!((back - u).norm() <= 4.0 * f64::EPSILON * u.norm());
            let (x, y) = lat.basis_coefficients(p.reduced);
            assert!((-0.5..0.5 + 1e-12).contains(&x), "x = {x}");
            assert!((-0.5..0.5 + 1e-12).contains(&y), "y = {y}");
        }
    }

    #[test]
    fn shortest_vector_examples() {
        let square = Lattice::new(c(2.0, 0.0), c(0.0, 2.0)).unwrap();
        assert!((square.shortest_vector() - 2.0).abs() < 1e-15);

        let angle = std::f64::consts::PI / 3.0;
        let hex = Lattice::new(c(2.0, 0.0), c(2.0 * angle.cos(), 2.0 * angle.sin())).unwrap();
        assert!((hex.shortest_vector() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn shortest_vector_matches_brute_force() {
        let lat = Lattice::new(c(2.0, 0.0), c(1.0, 2.0)).unwrap();
        let mut best = f64::INFINITY;
        for m in -10i64..=10 {
            for n in -10i64..=10 {
                if m == 0 && n == 0 {
                    continue;
                }
                best = best.min((lat.omega1() * m as f64 + lat.omega2() * n as f64).norm());
            }
        }
        assert!((lat.shortest_vector() - best).abs() < 1e-14);
    }

    #[test]
    fn square_lattice_kills_g3() {
        let lat = Lattice::new(c(2.0, 0.0), c(0.0, 2.0)).unwrap();
        let inv = eisenstein_invariants(&lat).unwrap();
        assert!(inv.g3.norm() < 1e-12 * inv.g2.norm());
    }

    #[test]
    fn hexagonal_lattice_kills_g2() {
        let angle = std::f64::consts::PI / 3.0;
        let lat = Lattice::new(c(2.0, 0.0), c(2.0 * angle.cos(), 2.0 * angle.sin())).unwrap();
        let inv = eisenstein_invariants(&lat).unwrap();
        assert!(inv.g2.norm() < 1e-12 * inv.g3.norm());
    }

    #[test]
    fn legendre_relation_holds_on_random_lattices() {
        // Deterministic pseudo-random generator pairs.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..20 {
            let w1 = c(0.5 + 2.0 * next(), -1.0 + 2.0 * next());
            let w2 = c(-1.0 + 2.0 * next(), 0.5 + 2.0 * next());
            let Ok(lat) = Lattice::new(w1, w2) else {
                continue;
            };
            let inv = eisenstein_invariants(&lat).unwrap();
            assert!(inv.legendre_residual(&lat) < 1e-10);
        }
    }
}
