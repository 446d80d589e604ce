//! Shared fixtures for the benchmark targets.

use num_complex::Complex64;
use sigmadet::{Lattice, Weierstrass};

/// The generic benchmark lattice (tau = 0.3 + 1.1i).
pub fn generic_evaluator() -> Weierstrass {
    let lattice =
        Lattice::new(Complex64::new(2.0, 0.0), Complex64::new(0.6, 2.2)).expect("valid lattice");
    Weierstrass::new(lattice).expect("backend self-check")
}

/// A safe evaluation point well inside the fundamental cell.
pub fn sample_point() -> Complex64 {
    Complex64::new(0.47, 0.53)
}
