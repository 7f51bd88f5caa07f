use std::fmt;
use std::ops::{Add, Mul};

use crate::error::{Error, Result};
use crate::gf2n::{Elem, Field};

/// Polynomial over GF(2) in `x`; bit `i` of the packed words is the
/// coefficient of `x^i`. The word vector never ends in a zero word, so the
/// zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    words: Vec<u64>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { words: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly::monomial(0)
    }

    pub fn x() -> Self {
        UPoly::monomial(1)
    }

    pub fn monomial(deg: usize) -> Self {
        let mut words = vec![0u64; deg / 64 + 1];
        words[deg / 64] = 1 << (deg % 64);
        UPoly { words }
    }

    /// From a small bit pattern, e.g. `0b1011` for `x^3 + x + 1`.
    pub fn from_bits(bits: u64) -> Self {
        let mut p = UPoly { words: vec![bits] };
        p.normalize();
        p
    }

    pub fn from_words(words: Vec<u64>) -> Self {
        let mut p = UPoly { words };
        p.normalize();
        p
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    fn flip(&mut self, i: usize) {
        if self.words.len() <= i / 64 {
            self.words.resize(i / 64 + 1, 0);
        }
        self.words[i / 64] ^= 1 << (i % 64);
    }

    /// Exponents with nonzero coefficient, highest first.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate().rev() {
            let mut w = w;
            while w != 0 {
                let b = 63 - w.leading_zeros() as usize;
                out.push(wi * 64 + b);
                w ^= 1 << b;
            }
        }
        out
    }

    /// `self ^= other << shift`
    fn xor_shifted(&mut self, other: &UPoly, shift: usize) {
        if other.is_zero() {
            return;
        }
        let (ws, bs) = (shift / 64, shift % 64);
        let need = other.words.len() + ws + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i + ws] ^= w << bs;
            if bs != 0 {
                self.words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        self.normalize();
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        UPoly::from_words(words)
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        if self.is_zero() || other.is_zero() {
            return acc;
        }
        let (a, b) = if self.words.len() <= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        for e in a.exponents() {
            acc.xor_shifted(b, e);
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> UPoly {
        let mut base = self.clone();
        let mut acc = UPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `(quot, rem)` with `self = divisor * quot + rem`, `deg rem < deg divisor`.
    pub fn divrem(&self, divisor: &UPoly) -> Result<(UPoly, UPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = UPoly::zero();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            quot.flip(dr - dd);
            rem.xor_shifted(divisor, dr - dd);
        }
        quot.normalize();
        Ok((quot, rem))
    }

    /// Value at a field element (coefficients embedded as 0/1).
    pub fn eval(&self, field: &Field, x: Elem) -> Elem {
        let Some(deg) = self.degree() else { return 0 };
        let mut acc = 0;
        for i in (0..=deg).rev() {
            acc = field.mul(acc, x) ^ self.coeff(i) as Elem;
        }
        acc
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        UPoly::add(self, rhs)
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        UPoly::mul(self, rhs)
    }
}

/// Writes `x^e`, `x` or `1` for a single term.
pub(crate) fn write_x_power(f: &mut fmt::Formatter<'_>, e: usize) -> fmt::Result {
    match e {
        0 => write!(f, "1"),
        1 => write!(f, "x"),
        _ => write!(f, "x^{e}"),
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, e) in self.exponents().into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write_x_power(f, e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

/// Multiplies out `prod p_i^{k_i}`.
pub fn expand_product(factors: &[(UPoly, u32)]) -> UPoly {
    factors
        .iter()
        .fold(UPoly::one(), |acc, (p, k)| acc.mul(&p.pow(*k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(bits: u64) -> UPoly {
        UPoly::from_bits(bits)
    }

    #[test]
    fn ring_examples() {
        assert_eq!(p(0b11).mul(&p(0b11)), p(0b101));
        assert!(p(0b1101).add(&p(0b1101)).is_zero());
        assert_eq!(p(0b111).mul(&p(0b11)), p(0b1001));
        assert_eq!(p(0b1011).to_string(), "x^3 + x + 1");
        assert_eq!(UPoly::zero().to_string(), "0");
    }

    #[test]
    fn divrem_examples() {
        assert_eq!(
            p(0b1001).divrem(&p(0b11)).unwrap(),
            (p(0b111), UPoly::zero())
        );
        let q = p(0b110101);
        assert_eq!(q.divrem(&UPoly::one()).unwrap(), (q.clone(), UPoly::zero()));
        assert_eq!(p(0b101).divrem(&p(0b110)).unwrap(), (p(1), p(0b11)));
        assert_eq!(q.divrem(&UPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn wide_polynomials() {
        let a = UPoly::monomial(70).add(&UPoly::one());
        let b = UPoly::monomial(65).add(&UPoly::x());
        let prod = a.mul(&b);
        assert_eq!(prod.degree(), Some(135));
        assert_eq!(prod.exponents(), vec![135, 71, 65, 1]);
        let (q, r) = prod.divrem(&b).unwrap();
        assert_eq!(q, a);
        assert!(r.is_zero());
    }

    fn arb_poly() -> impl Strategy<Value = UPoly> {
        prop::collection::vec(any::<u64>(), 0..3).prop_map(UPoly::from_words)
    }

    proptest! {
        #[test]
        fn divrem_reconstructs(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b).unwrap();
            prop_assert_eq!(b.mul(&q).add(&r), a);
            prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
        }

        #[test]
        fn mul_distributes(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }
    }
}
