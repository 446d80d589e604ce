//! Truncated Laurent series around u = 0 with exact or floating coefficients.
//!
//! This module is the independent oracle for the evaluation backend: the
//! expansions of pe, zeta, sigma are generated from the differential-equation
//! recurrence alone and never touch theta functions. With rational g2, g3 the
//! coefficients are exact, so structural checks (the differential equation,
//! parity, zeta' = -pe) hold with zero residual.
//!
//! A series holds the coefficients of u^k for `lowest_order <= k <
//! truncation_order`; everything at or above `truncation_order` is unknown.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};
use std::ops::{Div, Neg, Sub};

use crate::error::{Error, Result};

/// Coefficient ring of a [`TruncatedSeries`]: exact rationals for the oracle,
/// complex floats for general lattices.
pub trait Coefficient:
    Clone + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self> + Div<Output = Self>
{
    fn from_integer(n: i64) -> Self;
    fn to_complex(&self) -> Complex64;
}

impl Coefficient for BigRational {
    fn from_integer(n: i64) -> Self {
        BigRational::from_i64(n).expect("i64 always embeds in BigRational")
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

impl Coefficient for Complex64 {
    fn from_integer(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }
}

/// One-variable truncated Laurent series.
///
/// Invariants: `coefficients.len() == truncation_order - lowest_order`, and
/// the leading coefficient is nonzero unless the series is identically zero
/// to truncation (then the list is empty and `lowest_order ==
/// truncation_order`).
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<C> {
    lowest_order: i64,
    coefficients: Vec<C>,
    truncation_order: i64,
}

impl<C: Coefficient> TruncatedSeries<C> {
    /// Builds a series from raw coefficients, trimming leading zeros.
    pub fn new(lowest_order: i64, coefficients: Vec<C>, truncation_order: i64) -> Self {
        assert_eq!(
            coefficients.len() as i64,
            truncation_order - lowest_order,
            "coefficient count must equal truncation_order - lowest_order"
        );
        let mut s = TruncatedSeries {
            lowest_order,
            coefficients,
            truncation_order,
        };
        s.trim();
        s
    }

    /// The zero series, known up to `truncation_order`.
    pub fn zero(truncation_order: i64) -> Self {
        TruncatedSeries {
            lowest_order: truncation_order,
            coefficients: Vec::new(),
            truncation_order,
        }
    }

    /// The series `coefficient * u^order`.
    pub fn monomial(coefficient: C, order: i64, truncation_order: i64) -> Self {
        assert!(order < truncation_order, "monomial above truncation");
        let mut coefficients = vec![C::zero(); (truncation_order - order) as usize];
        coefficients[0] = coefficient;
        TruncatedSeries::new(order, coefficients, truncation_order)
    }

    /// The constant series 1.
    pub fn one(truncation_order: i64) -> Self {
        Self::monomial(C::one(), 0, truncation_order)
    }

    fn trim(&mut self) {
        let leading_zeros = self.coefficients.iter().take_while(|c| c.is_zero()).count();
        if leading_zeros > 0 {
            self.coefficients.drain(..leading_zeros);
            self.lowest_order += leading_zeros as i64;
        }
    }

    pub fn lowest_order(&self) -> i64 {
        self.lowest_order
    }

    pub fn truncation_order(&self) -> i64 {
        self.truncation_order
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Coefficient of u^order; `None` if the order is at or above truncation.
    pub fn coefficient(&self, order: i64) -> Option<C> {
        if order >= self.truncation_order {
            return None;
        }
        if order < self.lowest_order {
            return Some(C::zero());
        }
        Some(self.coefficients[(order - self.lowest_order) as usize].clone())
    }

    /// Known (order, coefficient) pairs, including interior zeros.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        let lo = self.lowest_order;
        self.coefficients
            .iter()
            .enumerate()
            .map(move |(k, c)| (lo + k as i64, c))
    }

    /// Restricts the series to a lower truncation order.
    pub fn truncated_to(&self, truncation_order: i64) -> Self {
        assert!(truncation_order <= self.truncation_order);
        if truncation_order <= self.lowest_order {
            return Self::zero(truncation_order);
        }
        let keep = (truncation_order - self.lowest_order) as usize;
        TruncatedSeries::new(
            self.lowest_order,
            self.coefficients[..keep].to_vec(),
            truncation_order,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let truncation = self.truncation_order.min(other.truncation_order);
        let lowest = self.lowest_order.min(other.lowest_order).min(truncation);
        let mut coefficients = vec![C::zero(); (truncation - lowest) as usize];
        for (series, _) in [(self, 0), (other, 1)] {
            for (order, c) in series.terms() {
                if order < truncation {
                    let slot = &mut coefficients[(order - lowest) as usize];
                    *slot = slot.clone() + c.clone();
                }
            }
        }
        TruncatedSeries::new(lowest, coefficients, truncation)
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            lowest_order: self.lowest_order,
            coefficients: self.coefficients.iter().map(|c| -c.clone()).collect(),
            truncation_order: self.truncation_order,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: &C) -> Self {
        TruncatedSeries::new(
            self.lowest_order,
            self.coefficients
                .iter()
                .map(|c| c.clone() * factor.clone())
                .collect(),
            self.truncation_order,
        )
    }

    /// Cauchy product. The result is valid up to the order where the first
    /// unknown coefficient of either factor could contribute.
    pub fn mul(&self, other: &Self) -> Self {
        let truncation = (self.truncation_order + other.lowest_order)
            .min(other.truncation_order + self.lowest_order);
        if self.is_zero() || other.is_zero() {
            return Self::zero(truncation);
        }
        let lowest = self.lowest_order + other.lowest_order;
        let mut coefficients = vec![C::zero(); (truncation - lowest) as usize];
        for (i, a) in self.terms() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.terms() {
                let order = i + j;
                if order >= truncation {
                    break;
                }
                let slot = &mut coefficients[(order - lowest) as usize];
                *slot = slot.clone() + a.clone() * b.clone();
            }
        }
        TruncatedSeries::new(lowest, coefficients, truncation)
    }

    /// Multiplicative inverse; requires a nonzero leading coefficient.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ReciprocalOfZero);
        }
        // 1 / (u^l * (a0 + a1 u + ...)) = u^-l * (b0 + b1 u + ...)
        let l = self.lowest_order;
        let len = self.coefficients.len();
        let a0_inv = C::one() / self.coefficients[0].clone();
        let mut b = Vec::with_capacity(len);
        b.push(a0_inv.clone());
        for n in 1..len {
            let mut acc = C::zero();
            for i in 1..=n {
                acc = acc + self.coefficients[i].clone() * b[n - i].clone();
            }
            b.push(-(a0_inv.clone() * acc));
        }
        Ok(TruncatedSeries::new(-l, b, self.truncation_order - 2 * l))
    }

    /// Term-by-term derivative; the truncation order drops by one.
    pub fn differentiate(&self) -> Self {
        let truncation = self.truncation_order - 1;
        if self.is_zero() {
            return Self::zero(truncation);
        }
        let lowest = self.lowest_order - 1;
        let coefficients = self
            .terms()
            .map(|(order, c)| c.clone() * C::from_integer(order))
            .collect();
        TruncatedSeries::new(lowest, coefficients, truncation)
    }

    /// Term-by-term antiderivative with zero constant; fails on a u^-1 term.
    pub fn integrate(&self) -> Result<Self> {
        if let Some(residue) = self.coefficient(-1) {
            if !residue.is_zero() {
                return Err(Error::IntegrateLogTerm);
            }
        }
        let truncation = self.truncation_order + 1;
        if self.is_zero() {
            return Ok(Self::zero(truncation));
        }
        let lowest = self.lowest_order + 1;
        let mut coefficients = Vec::with_capacity(self.coefficients.len());
        for (order, c) in self.terms() {
            if order == -1 {
                // Known-zero residue; avoid the 0/0 division.
                coefficients.push(C::zero());
            } else {
                coefficients.push(c.clone() / C::from_integer(order + 1));
            }
        }
        Ok(TruncatedSeries::new(lowest, coefficients, truncation))
    }

    /// Series exponential; requires lowest order >= 1 (or the zero series).
    pub fn exp(&self) -> Result<Self> {
        let truncation = self.truncation_order;
        if self.is_zero() {
            return Ok(Self::one(truncation));
        }
        if self.lowest_order < 1 {
            return Err(Error::ExpConstantTerm);
        }
        // E' = s' E with E(0) = 1:  n e_n = sum_{j=1..n} j s_j e_{n-j}.
        let n_terms = truncation.max(1) as usize;
        let s_at = |j: i64| self.coefficient(j).unwrap_or_else(C::zero);
        let mut e = Vec::with_capacity(n_terms);
        e.push(C::one());
        for n in 1..n_terms as i64 {
            let mut acc = C::zero();
            for j in 1..=n {
                let sj = s_at(j);
                if sj.is_zero() {
                    continue;
                }
                acc = acc + C::from_integer(j) * sj * e[(n - j) as usize].clone();
            }
            e.push(acc / C::from_integer(n));
        }
        Ok(TruncatedSeries::new(0, e, truncation))
    }

    /// Horner evaluation of the truncated sum at u.
    pub fn evaluate(&self, u: Complex64) -> Complex64 {
        self.evaluate_with_tail(u).0
    }

    /// Evaluation plus a crude tail bound: the modulus of the last kept term.
    pub fn evaluate_with_tail(&self, u: Complex64) -> (Complex64, f64) {
        if self.is_zero() {
            return (Complex64::new(0.0, 0.0), 0.0);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coefficients.iter().rev() {
            acc = acc * u + c.to_complex();
        }
        let lead = u.powi(self.lowest_order as i32);
        let value = acc * lead;
        let last = self.coefficients.last().expect("nonempty").to_complex();
        let tail = (last * u.powi((self.truncation_order - 1) as i32)).norm();
        (value, tail)
    }

    /// Converts the coefficients to complex floats.
    pub fn to_complex_series(&self) -> TruncatedSeries<Complex64> {
        TruncatedSeries::new(
            self.lowest_order,
            self.coefficients.iter().map(|c| c.to_complex()).collect(),
            self.truncation_order,
        )
    }
}

/// Expansion of pe around 0: u^-2 + sum_{k>=2} c_k u^(2k-2), where
/// c_2 = g2/20, c_3 = g3/28, and for k >= 4
/// c_k = 3 (sum_{m=2..k-2} c_m c_{k-m}) / ((2k+1)(k-3)),
/// the recurrence obtained by matching coefficients in
/// pe'^2 = 4 pe^3 - g2 pe - g3. Terms through u^order are kept.
pub fn pe_series<C: Coefficient>(g2: &C, g3: &C, order: i64) -> TruncatedSeries<C> {
    assert!(order >= 4, "pe_series needs order >= 4");
    let truncation = order + 1;
    let k_max = ((order + 2) / 2) as usize; // exponent 2k-2 <= order
    let mut c = vec![C::zero(); k_max + 1];
    if k_max >= 2 {
        c[2] = g2.clone() / C::from_integer(20);
    }
    if k_max >= 3 {
        c[3] = g3.clone() / C::from_integer(28);
    }
    for k in 4..=k_max {
        let mut acc = C::zero();
        for m in 2..=(k - 2) {
            acc = acc + c[m].clone() * c[k - m].clone();
        }
        let k_i = k as i64;
        c[k] = C::from_integer(3) * acc / C::from_integer((2 * k_i + 1) * (k_i - 3));
    }
    let mut coefficients = vec![C::zero(); (truncation + 2) as usize];
    coefficients[0] = C::one(); // u^-2
    for (k, ck) in c.iter().enumerate().skip(2) {
        let exponent = 2 * k as i64 - 2;
        if exponent < truncation {
            coefficients[(exponent + 2) as usize] = ck.clone();
        }
    }
    TruncatedSeries::new(-2, coefficients, truncation)
}

/// Expansion of zeta around 0: 1/u - integral of (pe - u^-2). Odd series
/// starting with u^-1; terms through u^order are kept.
pub fn zeta_series<C: Coefficient>(g2: &C, g3: &C, order: i64) -> TruncatedSeries<C> {
    let pe = pe_series(g2, g3, order + 1);
    let pole = TruncatedSeries::monomial(C::one(), -2, pe.truncation_order());
    let analytic = pe.sub(&pole);
    let integral = analytic
        .integrate()
        .expect("pe - u^-2 has even orders only");
    TruncatedSeries::monomial(C::one(), -1, order + 1).sub(&integral.truncated_to(order + 1))
}

/// Expansion of sigma around 0: u * exp(integral of (zeta - 1/u)); odd series
/// u - g2 u^5/240 - g3 u^7/840 - ...; terms through u^order are kept.
pub fn sigma_series<C: Coefficient>(g2: &C, g3: &C, order: i64) -> TruncatedSeries<C> {
    let zeta = zeta_series(g2, g3, order);
    let pole = TruncatedSeries::monomial(C::one(), -1, zeta.truncation_order());
    let integral = zeta
        .sub(&pole)
        .integrate()
        .expect("zeta - 1/u has odd orders only");
    let exp = integral.exp().expect("integral has lowest order 4");
    TruncatedSeries::monomial(C::one(), 1, order + 1)
        .mul(&exp)
        .truncated_to(order + 1)
}

pub type RationalSeries = TruncatedSeries<BigRational>;
pub type ComplexSeries = TruncatedSeries<Complex64>;
