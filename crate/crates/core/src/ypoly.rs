//! Compact polynomials in `y_1..y_32` for the inner loops of the factorial
//! Schur oracle. Exponents are bytes, coefficients are `i128`; both are
//! checked, and an overflow aborts instead of wrapping.

use std::collections::hash_map::Entry;

use rustc_hash::FxHashMap;

use crate::poly::{Monomial, Poly, Var};

pub(crate) const MAX_Y: usize = 32;

type Key = [u8; MAX_Y];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct YPoly {
    terms: FxHashMap<Key, i128>,
}

fn mul_keys(a: &Key, b: &Key) -> Key {
    let mut out = [0u8; MAX_Y];
    for i in 0..MAX_Y {
        out[i] = a[i].checked_add(b[i]).expect("y exponent overflow");
    }
    out
}

fn mul_coeffs(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("coefficient overflow")
}

impl YPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i128) -> Self {
        let mut p = Self::zero();
        if c != 0 {
            p.terms.insert([0; MAX_Y], c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// `y_i`, 1-based.
    pub fn y(i: usize) -> Self {
        assert!((1..=MAX_Y).contains(&i), "y index {i} out of range");
        let mut key = [0; MAX_Y];
        key[i - 1] = 1;
        let mut p = Self::zero();
        p.terms.insert(key, 1);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&[0; MAX_Y]) == Some(&1)
    }

    fn add_term(&mut self, key: Key, c: i128) {
        match self.terms.entry(key) {
            Entry::Occupied(mut e) => {
                let v = e.get().checked_add(c).expect("coefficient overflow");
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                if c != 0 {
                    e.insert(c);
                }
            }
        }
    }

    /// `self += sign * a * b`.
    pub fn add_product(&mut self, a: &YPoly, b: &YPoly, sign: i128) {
        for (ka, ca) in &a.terms {
            let ca = mul_coeffs(*ca, sign);
            for (kb, cb) in &b.terms {
                self.add_term(mul_keys(ka, kb), mul_coeffs(ca, *cb));
            }
        }
    }

    pub fn add_assign(&mut self, other: &YPoly) {
        for (k, c) in &other.terms {
            self.add_term(*k, *c);
        }
    }

    pub fn to_poly(&self) -> Poly {
        let mut out = Poly::zero();
        for (key, c) in &self.terms {
            let exps = key
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| (Var::Y(i as u16 + 1), u32::from(*e)))
                .collect();
            out.add_term(Monomial::from_exponents(exps), (*c).into());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_matches_poly() {
        let a = {
            let mut p = YPoly::y(1);
            p.add_product(&YPoly::y(3), &YPoly::constant(-2), 1);
            p
        };
        let b = {
            let mut p = YPoly::y(2);
            p.add_assign(&YPoly::one());
            p
        };
        let expected = &(&Poly::y(1) - &(&Poly::y(3) + &Poly::y(3))) * &(&Poly::y(2) + &Poly::one());
        let mut c = YPoly::zero();
        c.add_product(&a, &b, 1);
        assert_eq!(c.to_poly(), expected);
        c.add_product(&a, &b, -1);
        assert!(c.is_zero());
        assert!(YPoly::one().is_one());
        assert!(YPoly::constant(0).is_zero());
    }
}
