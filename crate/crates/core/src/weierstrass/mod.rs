//! Numeric evaluation of sigma, zeta, pe, pe' and higher derivatives.
//!
//! Arguments are reduced into the fundamental cell and evaluated through
//! theta1 with nome q; translations are restored through the quasi-period
//! corrections. With v = pi u / omega1 and g = theta1'/theta1:
//!
//! ```text
//! sigma(u) = (omega1/pi) exp(eta1 u^2 / (2 omega1)) theta1(v) / theta1'(0)
//! zeta(u)  = eta1 u / omega1 + (pi/omega1) g(v)
//! pe(u)    = -eta1/omega1 - (pi/omega1)^2 g'(v)
//! pe'(u)   = -(pi/omega1)^3 g''(v)
//! ```
//!
//! Every convention-sensitive constant is pinned by a construction-time
//! self-check against the series oracle rather than trusted from
//! transcription.

mod derivative;

pub use derivative::{derivative_polynomial, DerivativePolynomial};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{eisenstein_invariants, CellPoint, EllipticInvariants, Lattice};
use crate::series::{pe_series, sigma_series, zeta_series};
use crate::theta::{theta1_constants, theta1_suite};
use crate::tolerances::{POLE_GUARD_FACTOR, SERIES_DEFAULT_ORDER, TOL_SELF_CHECK};

/// Evaluation context: a lattice with its invariants and theta constants.
#[derive(Debug, Clone)]
pub struct Weierstrass {
    lattice: Lattice,
    invariants: EllipticInvariants,
    shortest: f64,
    theta1_prime_zero: Complex64,
    pole_guard: f64,
}

impl Weierstrass {
    /// Builds the evaluator and runs the mandatory self-check against the
    /// series oracle (sign and scale of eta1, sigma normalization, the
    /// quasi-period corrections).
    pub fn new(lattice: Lattice) -> Result<Self> {
        let invariants = eisenstein_invariants(&lattice)?;
        let shortest = lattice.shortest_vector();
        let consts = theta1_constants(lattice.tau());
        let w = Weierstrass {
            lattice,
            invariants,
            shortest,
            theta1_prime_zero: consts.d1,
            pole_guard: POLE_GUARD_FACTOR * shortest,
        };
        w.self_check()?;
        Ok(w)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn invariants(&self) -> &EllipticInvariants {
        &self.invariants
    }

    pub fn shortest_vector(&self) -> f64 {
        self.shortest
    }

    fn reduce(&self, u: Complex64) -> Result<CellPoint> {
        self.lattice.reduce_point(u)
    }

    fn guard_pole(&self, point: &CellPoint, u: Complex64, context: &str) -> Result<()> {
        if point.distance_to_lattice < self.pole_guard {
            return Err(Error::TooCloseToPole {
                point: u,
                distance: point.distance_to_lattice,
                context: context.to_string(),
            });
        }
        Ok(())
    }

    /// Quasi-period increment for the translation m*omega1 + n*omega2.
    fn eta_shift(&self, m: i64, n: i64) -> Complex64 {
        self.invariants.eta1 * m as f64 + self.invariants.eta2 * n as f64
    }

    /// The Weierstrass sigma function. Defined for every argument; its zeros
    /// are exactly the lattice points.
    pub fn sigma(&self, u: Complex64) -> Result<Complex64> {
        let point = self.reduce(u)?;
        let w1 = self.lattice.omega1();
        let pi = std::f64::consts::PI;
        let v = point.reduced * (pi / w1);
        let suite = theta1_suite(v, self.lattice.tau());
        let gaussian = (self.invariants.eta1 * point.reduced * point.reduced / (w1 * 2.0)).exp();
        let base = w1 / pi * gaussian * suite.t0 / self.theta1_prime_zero;
        if point.m == 0 && point.n == 0 {
            return Ok(base);
        }
        // sigma(z + t) = (-1)^(m+n+mn) sigma(z) exp(eta_t (z + t/2))
        let t = self.lattice.omega1() * point.m as f64 + self.lattice.omega2() * point.n as f64;
        let eta_t = self.eta_shift(point.m, point.n);
        let parity = point.m + point.n + point.m * point.n;
        let sign = if parity % 2 == 0 { 1.0 } else { -1.0 };
        Ok(base * sign * (eta_t * (point.reduced + t * 0.5)).exp())
    }

    /// The Weierstrass zeta function (logarithmic derivative of sigma).
    pub fn zeta(&self, u: Complex64) -> Result<Complex64> {
        let point = self.reduce(u)?;
        self.guard_pole(&point, u, "zeta")?;
        let w1 = self.lattice.omega1();
        let pi = std::f64::consts::PI;
        let v = point.reduced * (pi / w1);
        let suite = theta1_suite(v, self.lattice.tau());
        let g = suite.t1 / suite.t0;
        Ok(self.invariants.eta1 * point.reduced / w1
            + g * (pi / w1)
            + self.eta_shift(point.m, point.n))
    }

    /// The Weierstrass pe function.
    pub fn pe(&self, u: Complex64) -> Result<Complex64> {
        let point = self.reduce(u)?;
        self.guard_pole(&point, u, "pe")?;
        Ok(self.pe_reduced(&point))
    }

    fn pe_reduced(&self, point: &CellPoint) -> Complex64 {
        let w1 = self.lattice.omega1();
        let pi = std::f64::consts::PI;
        let v = point.reduced * (pi / w1);
        let suite = theta1_suite(v, self.lattice.tau());
        let g = suite.t1 / suite.t0;
        let g_prime = suite.t2 / suite.t0 - g * g;
        let scale = pi / w1;
        -self.invariants.eta1 / w1 - scale * scale * g_prime
    }

    /// Derivative of pe.
    pub fn pe_prime(&self, u: Complex64) -> Result<Complex64> {
        let point = self.reduce(u)?;
        self.guard_pole(&point, u, "pe_prime")?;
        Ok(self.pe_prime_reduced(&point))
    }

    fn pe_prime_reduced(&self, point: &CellPoint) -> Complex64 {
        let w1 = self.lattice.omega1();
        let pi = std::f64::consts::PI;
        let v = point.reduced * (pi / w1);
        let suite = theta1_suite(v, self.lattice.tau());
        let g = suite.t1 / suite.t0;
        let g_second = suite.t3 / suite.t0 - g * (suite.t2 / suite.t0) * 3.0 + g * g * g * 2.0;
        let scale = pi / w1;
        -scale * scale * scale * g_second
    }

    /// k-th derivative of pe, through the exact (pe, pe') polynomial.
    pub fn pe_derivative(&self, u: Complex64, k: u32) -> Result<Complex64> {
        match k {
            0 => self.pe(u),
            1 => self.pe_prime(u),
            _ => {
                let point = self.reduce(u)?;
                self.guard_pole(&point, u, "pe_derivative")?;
                let poly = derivative_polynomial(k)?;
                let pe = self.pe_reduced(&point);
                let pe_prime = self.pe_prime_reduced(&point);
                Ok(poly.evaluate(pe, pe_prime, self.invariants.g2, self.invariants.g3))
            }
        }
    }

    /// Cross-checks the theta backend against the series oracle at small
    /// arguments, including one period shift per generator so the
    /// quasi-period constants and translation signs are exercised.
    pub fn self_check(&self) -> Result<()> {
        let g2 = self.invariants.g2;
        let g3 = self.invariants.g3;
        let order = SERIES_DEFAULT_ORDER;
        let pe_s = pe_series(&g2, &g3, order);
        let zeta_s = zeta_series(&g2, &g3, order);
        let sigma_s = sigma_series(&g2, &g3, order);

        let u = (self.lattice.omega1() / self.lattice.omega1().norm())
            * (self.shortest * 0.17)
            * Complex64::new(0.96, 0.28);
        let mut failures = Vec::new();
        let mut check = |name: &str, backend: Complex64, oracle: Complex64| {
            let scale = backend.norm().max(oracle.norm()).max(1e-30);
            if (backend - oracle).norm() > TOL_SELF_CHECK * scale {
                failures.push(format!("{name}: backend {backend} vs series {oracle}"));
            }
        };

        check("pe", self.pe(u)?, pe_s.evaluate(u));
        check("zeta", self.zeta(u)?, zeta_s.evaluate(u));
        check("sigma", self.sigma(u)?, sigma_s.evaluate(u));
        // One period shift in each generator.
        check(
            "zeta(u + omega1)",
            self.zeta(u + self.lattice.omega1())?,
            zeta_s.evaluate(u) + self.invariants.eta1,
        );
        let t = self.lattice.omega2();
        check(
            "sigma(u + omega2)",
            self.sigma(u + t)?,
            -sigma_s.evaluate(u) * (self.invariants.eta2 * (u + t * 0.5)).exp(),
        );
        if failures.is_empty() {
            Ok(())
        } else {
            Err(Error::SelfCheckFailed {
                detail: failures.join("; "),
            })
        }
    }
}
