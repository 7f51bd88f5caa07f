use std::fmt;

use super::upoly::{write_x_power, UPoly};
use crate::gf2n::{Elem, Field};

/// Polynomial over GF(2) in `x` and `y`, stored by powers of `y`: entry `i`
/// is the coefficient of `y^i`. The last entry is nonzero unless the
/// polynomial is zero (empty).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BPoly {
    y_coeffs: Vec<UPoly>,
}

impl BPoly {
    pub fn zero() -> Self {
        BPoly::default()
    }

    pub fn one() -> Self {
        BPoly::from_upoly(UPoly::one())
    }

    pub fn y() -> Self {
        BPoly::from_y_coeffs(vec![UPoly::zero(), UPoly::one()])
    }

    pub fn from_upoly(p: UPoly) -> Self {
        BPoly::from_y_coeffs(vec![p])
    }

    pub fn from_y_coeffs(y_coeffs: Vec<UPoly>) -> Self {
        let mut p = BPoly { y_coeffs };
        while p.y_coeffs.last().is_some_and(UPoly::is_zero) {
            p.y_coeffs.pop();
        }
        p
    }

    pub fn y_coeffs(&self) -> &[UPoly] {
        &self.y_coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.y_coeffs.is_empty()
    }

    /// Degree in `y`; the zero polynomial reports 0.
    pub fn y_degree(&self) -> usize {
        self.y_coeffs.len().saturating_sub(1)
    }

    pub fn add(&self, other: &BPoly) -> BPoly {
        let len = self.y_coeffs.len().max(other.y_coeffs.len());
        let zero = UPoly::zero();
        BPoly::from_y_coeffs(
            (0..len)
                .map(|i| {
                    let a = self.y_coeffs.get(i).unwrap_or(&zero);
                    let b = other.y_coeffs.get(i).unwrap_or(&zero);
                    a.add(b)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &BPoly) -> BPoly {
        if self.is_zero() || other.is_zero() {
            return BPoly::zero();
        }
        let mut out = vec![UPoly::zero(); self.y_coeffs.len() + other.y_coeffs.len() - 1];
        for (i, a) in self.y_coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.y_coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        BPoly::from_y_coeffs(out)
    }

    pub fn pow(&self, mut e: u32) -> BPoly {
        let mut base = self.clone();
        let mut acc = BPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The polynomial itself when it does not involve `y`.
    pub fn as_upoly(&self) -> Option<UPoly> {
        match self.y_coeffs.len() {
            0 => Some(UPoly::zero()),
            1 => Some(self.y_coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, field: &Field, x: Elem, y: Elem) -> Elem {
        self.y_coeffs
            .iter()
            .rev()
            .fold(0, |acc, c| field.mul(acc, y) ^ c.eval(field, x))
    }
}

impl fmt::Display for BPoly {
    /// Terms by descending `y` degree, then descending `x` degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (yd, c) in self.y_coeffs.iter().enumerate().rev() {
            for xd in c.exponents() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                match (xd, yd) {
                    (_, 0) => write_x_power(f, xd)?,
                    (0, _) => {}
                    _ => {
                        write_x_power(f, xd)?;
                        write!(f, "*")?;
                    }
                }
                match yd {
                    0 => {}
                    1 => write!(f, "y")?,
                    _ => write!(f, "y^{yd}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BPoly({self})")
    }
}
