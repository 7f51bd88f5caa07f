//! Parser for polynomials over GF(2) in `x` and `y`.
//!
//! Grammar (whitespace ignored, integer constants taken mod 2):
//!
//! ```text
//! sum     := product ('+' product)*
//! product := power ('*'? power)*
//! power   := atom ('^' digits)?
//! atom    := 'x' | 'y' | digits | '(' sum ')'
//! ```

use super::bpoly::BPoly;
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Largest exponent accepted in the input.
pub const MAX_EXPONENT: u32 = 1 << 16;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(format!("unexpected `{}`", c as char)),
        }
    }

    /// Digits as a `u32`; `None` on overflow.
    fn digits(&mut self) -> Result<Option<u32>> {
        self.skip_ws();
        let start = self.pos;
        let mut value: Option<u32> = Some(0);
        while let Some(c) = self.src.get(self.pos).filter(|c| c.is_ascii_digit()) {
            value = value
                .and_then(|v| v.checked_mul(10))
                .and_then(|v| v.checked_add((c - b'0') as u32));
            self.pos += 1;
        }
        if self.pos == start {
            return self.error("expected a number");
        }
        Ok(value)
    }

    fn exponent(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        match self.digits()? {
            Some(e) if e <= MAX_EXPONENT => Ok(e),
            _ => Err(Error::ExponentOverflow { pos: start }),
        }
    }

    fn sum(&mut self) -> Result<BPoly> {
        let mut acc = self.product()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            acc = acc.add(&self.product()?);
        }
        Ok(acc)
    }

    fn starts_atom(c: Option<u8>) -> bool {
        matches!(c, Some(b'x' | b'y' | b'('))
    }

    fn product(&mut self) -> Result<BPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                c if Self::starts_atom(c) => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<BPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BPoly> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(BPoly::from_upoly(UPoly::x()))
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(BPoly::y())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return self.error("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                // only the parity of a constant matters
                let start = self.pos;
                let mut last = b'0';
                while let Some(&c) = self.src.get(self.pos).filter(|c| c.is_ascii_digit()) {
                    last = c;
                    self.pos += 1;
                }
                debug_assert!(self.pos > start);
                Ok(if (last - b'0') % 2 == 1 {
                    BPoly::one()
                } else {
                    BPoly::zero()
                })
            }
            Some(c) => self.error(format!("unexpected `{}`", c as char)),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses a polynomial in `x` and `y`.
pub fn parse_bpoly(s: &str) -> Result<BPoly> {
    let mut p = Parser::new(s);
    let out = p.sum()?;
    p.finish()?;
    Ok(out)
}

/// Parses a polynomial in `x` only.
pub fn parse_upoly(s: &str) -> Result<UPoly> {
    let b = parse_bpoly(s)?;
    b.as_upoly().ok_or_else(|| Error::Syntax {
        pos: s.find('y').unwrap_or(0),
        msg: "`y` is not allowed here".into(),
    })
}

/// Parses a factored form `(p1)^k1 * (p2)^k2 * ...` into its factors.
pub fn parse_factored(s: &str) -> Result<Vec<(UPoly, u32)>> {
    let mut p = Parser::new(s);
    let mut factors = Vec::new();
    loop {
        let start = p.pos;
        let base = p.atom()?;
        let base = base.as_upoly().ok_or(Error::Syntax {
            pos: start,
            msg: "`y` is not allowed in a factored form".into(),
        })?;
        let mut k = 1;
        if p.peek() == Some(b'^') {
            p.pos += 1;
            k = p.exponent()?;
        }
        factors.push((base, k));
        match p.peek() {
            Some(b'*') => p.pos += 1,
            c if Parser::starts_atom(c) => {}
            None => return Ok(factors),
            Some(_) => return p.error("expected `*` between factors"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        let f = parse_bpoly("x^2*y^4 + x*y^4 + y^2 + x + 1").unwrap();
        assert_eq!(f.y_degree(), 4);
        assert_eq!(f.to_string(), "x^2*y^4 + x*y^4 + y^2 + x + 1");
        assert_eq!(parse_bpoly("(x+1)^2").unwrap().to_string(), "x^2 + 1");
        assert_eq!(
            parse_bpoly("x^2y^4 + x y").unwrap().to_string(),
            "x^2*y^4 + x*y"
        );
        assert_eq!(parse_bpoly("3x + 2").unwrap().to_string(), "x");
        assert_eq!(parse_bpoly("x + x").unwrap().to_string(), "0");
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(
            parse_bpoly("x^"),
            Err(Error::Syntax { pos: 2, .. })
        ));
        assert!(matches!(parse_bpoly("x + "), Err(Error::Syntax { .. })));
        assert!(matches!(parse_bpoly("(x + 1"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_bpoly("x + z"),
            Err(Error::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_bpoly("x^99999999999"),
            Err(Error::ExponentOverflow { pos: 2 })
        ));
        assert!(matches!(
            parse_upoly("x + y"),
            Err(Error::Syntax { pos: 4, .. })
        ));
    }

    #[test]
    fn factored_forms() {
        let fs = parse_factored("x^2 (x+1)^2 * (x^2+x+1)^3").unwrap();
        assert_eq!(fs.len(), 3);
        assert_eq!(fs[2], (UPoly::from_bits(0b111), 3));
        assert!(parse_factored("x + 1").is_err());
    }

    fn arb_bpoly() -> impl Strategy<Value = BPoly> {
        prop::collection::vec(any::<u16>(), 0..5).prop_map(|cs| {
            BPoly::from_y_coeffs(cs.into_iter().map(|c| UPoly::from_bits(c as u64)).collect())
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(p in arb_bpoly()) {
            prop_assert_eq!(parse_bpoly(&p.to_string()).unwrap(), p);
        }
    }
}
