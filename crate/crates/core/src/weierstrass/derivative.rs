//! pe^(k) as an exact polynomial in (pe, pe').
//!
//! Differentiating with d(pe)/du = pe' and d(pe')/du = 6 pe^2 - g2/2, and
//! reducing pe'^2 -> 4 pe^3 - g2 pe - g3 after every step, keeps the
//! pe'-degree at most one. Coefficients are exact rationals in g2 and g3, so
//! every derivative order up to the cap evaluates from two backend calls.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::Coefficient;
use crate::tolerances::DERIVATIVE_ORDER_MAX;

/// Polynomial in g2, g3 with rational coefficients: (a, b) -> coeff of g2^a g3^b.
type InvariantPoly = BTreeMap<(u32, u32), BigRational>;

fn poly_add_term(poly: &mut InvariantPoly, key: (u32, u32), value: BigRational) {
    let entry = poly.entry(key).or_insert_with(BigRational::zero);
    *entry += value;
    if entry.is_zero() {
        poly.remove(&key);
    }
}

/// pe^(k) written as sum over (i, j) of c_{ij}(g2, g3) * pe^i * pe'^j, j <= 1.
#[derive(Debug, Clone)]
pub struct DerivativePolynomial {
    order: u32,
    terms: BTreeMap<(u32, u8), InvariantPoly>,
}

impl DerivativePolynomial {
    fn pe() -> Self {
        let mut terms = BTreeMap::new();
        let mut poly = InvariantPoly::new();
        poly.insert((0, 0), BigRational::from_integer(1.into()));
        terms.insert((1, 0), poly);
        DerivativePolynomial { order: 0, terms }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Terms as (pe power, pe' power, g2 power, g3 power, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (u32, u8, u32, u32, &BigRational)> {
        self.terms
            .iter()
            .flat_map(|(&(i, j), poly)| poly.iter().map(move |(&(a, b), c)| (i, j, a, b, c)))
    }

    fn add_term(&mut self, pe_pow: u32, pep_pow: u8, g_key: (u32, u32), value: BigRational) {
        if value.is_zero() {
            return;
        }
        let poly = self.terms.entry((pe_pow, pep_pow)).or_default();
        poly_add_term(poly, g_key, value);
        if self.terms[&(pe_pow, pep_pow)].is_empty() {
            self.terms.remove(&(pe_pow, pep_pow));
        }
    }

    /// One derivative step with the pe'^2 reduction applied.
    fn differentiate(&self) -> Self {
        let mut next = DerivativePolynomial {
            order: self.order + 1,
            terms: BTreeMap::new(),
        };
        let rat = |n: i64| BigRational::from_integer(n.into());
        for (&(i, j), poly) in &self.terms {
            for (&(a, b), c) in poly {
                match j {
                    0 => {
                        // d/du pe^i = i pe^(i-1) pe'
                        if i > 0 {
                            next.add_term(i - 1, 1, (a, b), c * rat(i as i64));
                        }
                    }
                    1 => {
                        // d/du (pe^i pe') = i pe^(i-1) pe'^2 + pe^i (6 pe^2 - g2/2)
                        // with pe'^2 -> 4 pe^3 - g2 pe - g3:
                        //   (4i + 6) pe^(i+2)  -  (i + 1/2) g2 pe^i  -  i g3 pe^(i-1)
                        next.add_term(i + 2, 0, (a, b), c * rat(4 * i as i64 + 6));
                        next.add_term(
                            i,
                            0,
                            (a + 1, b),
                            c * (-rat(i as i64) - BigRational::new(1.into(), 2.into())),
                        );
                        if i > 0 {
                            next.add_term(i - 1, 0, (a, b + 1), c * (-rat(i as i64)));
                        }
                    }
                    _ => unreachable!("pe'-degree stays at most one"),
                }
            }
        }
        next
    }

    /// Numeric value at (pe, pe', g2, g3).
    pub fn evaluate(
        &self,
        pe: Complex64,
        pe_prime: Complex64,
        g2: Complex64,
        g3: Complex64,
    ) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(i, j), poly) in &self.terms {
            let mut coeff = Complex64::new(0.0, 0.0);
            for (&(a, b), c) in poly {
                coeff += g2.powi(a as i32) * g3.powi(b as i32) * c.to_complex();
            }
            let mut term = coeff * pe.powi(i as i32);
            if j == 1 {
                term *= pe_prime;
            }
            acc += term;
        }
        acc
    }

    /// Checks the weight bookkeeping: every term satisfies
    /// 2i + 3j + 4a + 6b = order + 2.
    pub fn weights_consistent(&self) -> bool {
        self.terms()
            .all(|(i, j, a, b, _)| 2 * i + 3 * j as u32 + 4 * a + 6 * b == self.order + 2)
    }
}

static TABLE: OnceLock<RwLock<Vec<Arc<DerivativePolynomial>>>> = OnceLock::new();

/// The polynomial for pe^(k), from a synchronized memo table.
pub fn derivative_polynomial(k: u32) -> Result<Arc<DerivativePolynomial>> {
    if k > DERIVATIVE_ORDER_MAX {
        return Err(Error::OrderTooLarge {
            order: k,
            max: DERIVATIVE_ORDER_MAX,
        });
    }
    let table = TABLE.get_or_init(|| RwLock::new(vec![Arc::new(DerivativePolynomial::pe())]));
    {
        let read = table.read().expect("memo table poisoned");
        if let Some(p) = read.get(k as usize) {
            return Ok(Arc::clone(p));
        }
    }
    let mut write = table.write().expect("memo table poisoned");
    while write.len() <= k as usize {
        let next = write.last().expect("table seeded").differentiate();
        write.push(Arc::new(next));
    }
    Ok(Arc::clone(&write[k as usize]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn order_zero_is_pe_itself() {
        let p = derivative_polynomial(0).unwrap();
        let terms: Vec<_> = p.terms().collect();
        assert_eq!(terms.len(), 1);
        let (i, j, a, b, c) = terms[0];
        assert_eq!((i, j, a, b), (1, 0, 0, 0));
        assert!(c.is_one());
    }

    #[test]
    fn second_derivative_is_six_pe_squared_minus_half_g2() {
        let p = derivative_polynomial(2).unwrap();
        let terms: Vec<_> = p.terms().collect();
        assert_eq!(terms.len(), 2);
        assert!(terms
            .iter()
            .any(|&(i, j, a, b, c)| (i, j, a, b) == (2, 0, 0, 0) && *c == rat(6, 1)));
        assert!(terms
            .iter()
            .any(|&(i, j, a, b, c)| (i, j, a, b) == (0, 0, 1, 0) && *c == rat(-1, 2)));
    }

    #[test]
    fn third_derivative_is_twelve_pe_pe_prime() {
        let p = derivative_polynomial(3).unwrap();
        let terms: Vec<_> = p.terms().collect();
        assert_eq!(terms.len(), 1);
        let (i, j, a, b, c) = terms[0];
        assert_eq!((i, j, a, b), (1, 1, 0, 0));
        assert_eq!(*c, rat(12, 1));
    }

    #[test]
    fn weights_are_consistent_up_to_the_cap() {
        for k in 0..=DERIVATIVE_ORDER_MAX {
            let p = derivative_polynomial(k).unwrap();
            assert!(p.weights_consistent(), "weight violation at order {k}");
        }
    }

    #[test]
    fn order_beyond_cap_is_rejected() {
        assert!(matches!(
            derivative_polynomial(DERIVATIVE_ORDER_MAX + 1),
            Err(Error::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn memo_table_survives_concurrent_access() {
        let handles: Vec<_> = (0..8)
            .map(|thread| {
                std::thread::spawn(move || {
                    for k in 0..=DERIVATIVE_ORDER_MAX {
                        let order = (k + thread) % (DERIVATIVE_ORDER_MAX + 1);
                        let p = derivative_polynomial(order).unwrap();
                        assert_eq!(p.order(), order);
                    }
                })
            })
            .collect();
        for handle in handles {
            handle.join().unwrap();
        }
    }
}
