//! Small dense complex matrices and a pivoted determinant.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::One;

use crate::error::{Error, Result};
use crate::tolerances::{DET_DIM_MAX, DIFF_PRODUCT_N_MAX};

/// Row-major square complex matrix, dimension 1..=16.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

/// Determinant value with a pivot-ratio condition estimate. A singular matrix
/// reports value 0 and condition infinity.
#[derive(Debug, Clone, Copy)]
pub struct Determinant {
    pub value: Complex64,
    pub condition: f64,
}

impl SquareMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || dim > DET_DIM_MAX {
            return Err(Error::DimensionTooLarge {
                dim,
                max: DET_DIM_MAX,
            });
        }
        assert_eq!(entries.len(), dim * dim, "entry count must be dim^2");
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFiniteInput {
                context: "matrix entries",
            });
        }
        Ok(SquareMatrix { dim, entries })
    }

    /// Builds entry (row, col) from a fallible generator.
    pub fn from_fn<F>(dim: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<Complex64>,
    {
        let mut entries = Vec::with_capacity(dim * dim);
        for row in 0..dim {
            for col in 0..dim {
                entries.push(f(row, col)?);
            }
        }
        SquareMatrix::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for col in 0..self.dim {
            self.entries.swap(a * self.dim + col, b * self.dim + col);
        }
    }

    /// Largest entry modulus.
    pub fn max_entry_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// LU with partial pivoting (largest-modulus pivot); the determinant is
    /// the signed product of pivots, the condition estimate the ratio of the
    /// extreme pivot moduli.
    pub fn det(&self) -> Determinant {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut sign = 1.0;
        let mut max_pivot: f64 = 0.0;
        let mut min_pivot = f64::INFINITY;
        for k in 0..n {
            let mut pivot_row = k;
            let mut pivot_norm = a[k * n + k].norm();
            for i in (k + 1)..n {
                let norm = a[i * n + k].norm();
                if norm > pivot_norm {
                    pivot_norm = norm;
                    pivot_row = i;
                }
            }
            if pivot_norm == 0.0 {
                return Determinant {
                    value: Complex64::new(0.0, 0.0),
                    condition: f64::INFINITY,
                };
            }
            if pivot_row != k {
                for col in 0..n {
                    a.swap(k * n + col, pivot_row * n + col);
                }
                sign = -sign;
            }
            max_pivot = max_pivot.max(pivot_norm);
            min_pivot = min_pivot.min(pivot_norm);
            let pivot = a[k * n + k];
            for i in (k + 1)..n {
                let factor = a[i * n + k] / pivot;
                if factor.norm() == 0.0 {
                    continue;
                }
                for j in (k + 1)..n {
                    let sub = factor * a[k * n + j];
                    a[i * n + j] -= sub;
                }
            }
        }
        let mut value = Complex64::new(sign, 0.0);
        for k in 0..n {
            value *= a[k * n + k];
        }
        Determinant {
            value,
            condition: max_pivot / min_pivot,
        }
    }
}

/// Product of (alpha - beta) over all pairs n >= alpha > beta >= 0, i.e.
/// 1! 2! ... n!. Exact; n is capped so downstream floating-point use stays
/// meaningful.
pub fn difference_product_constant(n: u32) -> Result<BigUint> {
    if n > DIFF_PRODUCT_N_MAX {
        return Err(Error::DimensionTooLarge {
            dim: n as usize,
            max: DIFF_PRODUCT_N_MAX as usize,
        });
    }
    let mut product = BigUint::one();
    let mut factorial = BigUint::one();
    for k in 1..=u64::from(n) {
        factorial *= k;
        product *= &factorial;
    }
    Ok(product)
}

/// The same constant as a float, for use inside identity right-hand sides.
pub fn difference_product_f64(n: u32) -> Result<f64> {
    use num_traits::ToPrimitive;
    Ok(difference_product_constant(n)?
        .to_f64()
        .expect("superfactorial of n <= 16 fits in f64 range"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_matrix_has_unit_determinant() {
        let m = SquareMatrix::from_fn(3, |i, j| Ok(if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) }))
            .unwrap();
        let d = m.det();
        assert_eq!(d.value, c(1.0, 0.0));
        assert_eq!(d.condition, 1.0);
    }

    #[test]
    fn antidiagonal_two_by_two() {
        let m =
            SquareMatrix::new(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(5.0, 0.0)]).unwrap();
        assert_eq!(m.det().value, c(-1.0, 0.0));
    }

    #[test]
    fn singular_matrix_reports_zero_with_infinite_condition() {
        let m =
            SquareMatrix::new(2, vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)]).unwrap();
        let d = m.det();
        assert_eq!(d.value, c(0.0, 0.0));
        assert!(d.condition.is_infinite());
    }

    #[test]
    fn row_swap_negates_determinant() {
        // Deterministic pseudo-random 4x4 matrices.
        let mut state = 0x853c49e6748fea9bu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for _ in 0..25 {
            let m = SquareMatrix::from_fn(4, |_, _| Ok(c(next(), next()))).unwrap();
            let mut swapped = m.clone();
            swapped.swap_rows(1, 3);
            let d = m.det().value;
            let ds = swapped.det().value;
            assert!((d + ds).norm() <= 1e-12 * d.norm().max(1e-30));
        }
    }

    #[test]
    fn dimension_cap_is_enforced() {
        assert!(matches!(
            SquareMatrix::from_fn(17, |_, _| Ok(c(1.0, 0.0))),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn difference_product_small_values() {
        let val = |n| difference_product_constant(n).unwrap().to_string();
        assert_eq!(val(0), "1");
        assert_eq!(val(1), "1");
        assert_eq!(val(2), "2");
        assert_eq!(val(3), "12");
        assert_eq!(val(4), "288");
        assert!(matches!(
            difference_product_constant(17),
            Err(Error::DimensionTooLarge { .. })
        ));
    }
}
