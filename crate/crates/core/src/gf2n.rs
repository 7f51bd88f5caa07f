//! Arithmetic in GF(2^n) for 2 <= n <= 24.
//!
//! Elements are plain integers: bit `i` is the coefficient of `x^i` in the
//! polynomial basis, so field addition is XOR. Multiplication is carryless
//! multiply followed by reduction, or a log/antilog lookup when the field is
//! small enough to carry tables (n <= 20).

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// A field element, `value < 2^n`.
pub type Elem = u32;

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 24;
pub const MAX_TABLE_DEGREE: u32 = 20;

/// Lexicographically smallest irreducible polynomial of each degree 2..=24.
const DEFAULT_MODULI: [u32; 23] = [
    0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x203, 0x409, 0x805, 0x1009, 0x201b, 0x4021, 0x8003,
    0x1002b, 0x20009, 0x40009, 0x80027, 0x100009, 0x200005, 0x400003, 0x800021, 0x100001b,
];

/// Default modulus for GF(2^n), if `n` is supported.
pub fn default_modulus(n: u32) -> Option<u32> {
    if (MIN_DEGREE..=MAX_DEGREE).contains(&n) {
        Some(DEFAULT_MODULI[(n - MIN_DEGREE) as usize])
    } else {
        None
    }
}

/// Carryless product of two polynomials over GF(2) packed in `u64`s.
/// Inputs must have combined degree below 64.
#[inline]
fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
    }
    acc
}

#[inline]
fn degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

/// Remainder of `p` modulo `f` over GF(2).
fn poly_rem(mut p: u64, f: u64) -> u64 {
    let df = degree(f);
    while p != 0 && degree(p) >= df {
        p ^= f << (degree(p) - df);
    }
    p
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test: `f` of degree `n` is irreducible iff
/// gcd(f, x^(2^i) - x) = 1 for every 1 <= i <= n/2.
pub fn is_irreducible(f: u64, n: u32) -> bool {
    if n == 0 || degree(f) != n as i32 || n > 31 {
        return false;
    }
    let x = 0b10u64;
    let mut t = x;
    for _ in 1..=n / 2 {
        t = poly_rem(clmul(t, t), f);
        if poly_gcd(f, t ^ x) != 1 {
            return false;
        }
    }
    true
}

fn prime_factors(mut q: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            out.push(p);
            while q % p == 0 {
                q /= p;
            }
        }
        p += 1;
    }
    if q > 1 {
        out.push(q);
    }
    out
}

struct LogTables {
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
    /// `antilog[k] = g^k` for `0 <= k < 2^n - 1`.
    antilog: Vec<u32>,
}

/// Echelon basis of the image of `y -> y^2 + y`, each row paired with a
/// preimage. Indexed by leading bit.
struct QuadraticSolver {
    pivots: Vec<Option<(u32, u32)>>,
}

impl QuadraticSolver {
    fn build(field: &Field) -> Self {
        let n = field.n as usize;
        let mut pivots: Vec<Option<(u32, u32)>> = vec![None; n];
        for i in 0..n {
            let e = 1u32 << i;
            let (img, pre) = Self::reduce(&pivots, field.square(e) ^ e, e);
            if img != 0 {
                let lead = 31 - img.leading_zeros() as usize;
                pivots[lead] = Some((img, pre));
            }
        }
        QuadraticSolver { pivots }
    }

    fn reduce(pivots: &[Option<(u32, u32)>], mut img: u32, mut pre: u32) -> (u32, u32) {
        for bit in (0..pivots.len()).rev() {
            if img >> bit & 1 == 1 {
                if let Some((pi, pp)) = pivots[bit] {
                    img ^= pi;
                    pre ^= pp;
                }
            }
        }
        (img, pre)
    }

    /// One solution of `y^2 + y = c`, if any. The other is `y + 1`.
    fn solve(&self, c: u32) -> Option<u32> {
        let (residue, pre) = Self::reduce(&self.pivots, c, 0);
        (residue == 0).then_some(pre)
    }
}

/// Immutable description of GF(2^n).
pub struct Field {
    n: u32,
    modulus: u32,
    generator: Elem,
    trace_mask: u32,
    tables: Option<LogTables>,
    quadratic: OnceLock<QuadraticSolver>,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Field")
            .field("n", &self.n)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .field("tables", &self.tables.is_some())
            .finish()
    }
}

impl Field {
    /// GF(2^n) with the default modulus.
    pub fn new(n: u32) -> Result<Field> {
        let modulus = default_modulus(n).ok_or(Error::DegreeOutOfRange(n))?;
        Field::with_modulus(n, modulus).map_err(|e| match e {
            Error::NotIrreducible { .. } => {
                Error::Internal(format!("built-in modulus for n = {n} is reducible"))
            }
            other => other,
        })
    }

    /// GF(2^n) defined by an explicit irreducible `modulus` (bit `n` set).
    pub fn with_modulus(n: u32, modulus: u32) -> Result<Field> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
            return Err(Error::DegreeOutOfRange(n));
        }
        if !is_irreducible(modulus as u64, n) {
            return Err(Error::NotIrreducible {
                n,
                modulus: modulus as u64,
            });
        }
        let mut field = Field {
            n,
            modulus,
            generator: 0,
            trace_mask: 0,
            tables: None,
            quadratic: OnceLock::new(),
        };
        field.generator = field.find_generator();
        field.trace_mask = (0..n)
            .filter(|&i| field.trace_by_squaring(1 << i) == 1)
            .fold(0, |m, i| m | 1 << i);
        if n <= MAX_TABLE_DEGREE {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Number of elements, `2^n`.
    pub fn size(&self) -> usize {
        1usize << self.n
    }

    /// Order of the multiplicative group, `2^n - 1`.
    pub fn unit_order(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    /// A primitive element (the smallest one, as an integer).
    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn contains(&self, a: u64) -> bool {
        a < self.size() as u64
    }

    pub fn check(&self, a: u64) -> Result<Elem> {
        if self.contains(a) {
            Ok(a as Elem)
        } else {
            Err(Error::NotAnElement(a))
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        a ^ b
    }

    /// Carryless multiply and reduce, never using tables.
    #[inline]
    pub fn mul_reduce(&self, a: Elem, b: Elem) -> Elem {
        let mut p = clmul(a as u64, b as u64);
        let n = self.n;
        let m = self.modulus as u64;
        let mut bit = 2 * n - 2;
        while bit >= n {
            if p >> bit & 1 == 1 {
                p ^= m << (bit - n);
            }
            bit -= 1;
        }
        p as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => {
                if a == 0 || b == 0 {
                    return 0;
                }
                let q = t.antilog.len() as u32;
                let mut k = t.log[a as usize] + t.log[b as usize];
                if k >= q {
                    k -= q;
                }
                t.antilog[k as usize]
            }
            None => self.mul_reduce(a, b),
        }
    }

    #[inline]
    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    /// Maps any positive exponent into `[1, 2^n - 1]` without changing the
    /// power map it defines.
    pub fn reduce_exponent(&self, d: u64) -> Result<u64> {
        if d == 0 {
            return Err(Error::ZeroExponent);
        }
        let q = self.unit_order();
        Ok(match d % q {
            0 => q,
            r => r,
        })
    }

    /// `a^d` for `d >= 1`; `0^d = 0`.
    pub fn pow(&self, a: Elem, d: u64) -> Result<Elem> {
        let d = self.reduce_exponent(d)?;
        Ok(self.pow_reduced(a, d))
    }

    fn pow_reduced(&self, a: Elem, d: u64) -> Elem {
        if a == 0 {
            return 0;
        }
        if let Some(t) = &self.tables {
            let q = t.antilog.len() as u64;
            return t.antilog[((t.log[a as usize] as u64 * d) % q) as usize];
        }
        self.pow_by_squaring(a, d)
    }

    fn pow_by_squaring(&self, a: Elem, mut d: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while d > 0 {
            if d & 1 == 1 {
                acc = self.mul_reduce(acc, base);
            }
            base = self.mul_reduce(base, base);
            d >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `inv(0)` is defined as 0.
    pub fn inv(&self, a: Elem) -> Elem {
        if a == 0 {
            return 0;
        }
        self.pow_reduced(a, self.unit_order() - 1)
    }

    /// Table of `x^d` for every `x` in the field, indexed by `x`.
    pub fn power_table(&self, d: u64) -> Result<Vec<Elem>> {
        let d = self.reduce_exponent(d)?;
        let q = self.unit_order();
        let mut out = vec![0 as Elem; self.size()];
        match &self.tables {
            Some(t) => {
                let step = (d % q) as usize;
                let q = q as usize;
                let mut k = 0usize;
                for &x in &t.antilog {
                    out[x as usize] = t.antilog[k];
                    k += step;
                    if k >= q {
                        k -= q;
                    }
                }
            }
            None => {
                let g = self.generator;
                let gd = self.pow_by_squaring(g, d);
                let (mut x, mut y) = (1, 1);
                for _ in 0..q {
                    out[x as usize] = y;
                    x = self.mul_reduce(x, g);
                    y = self.mul_reduce(y, gd);
                }
            }
        }
        Ok(out)
    }

    fn find_generator(&self) -> Elem {
        let q = self.unit_order();
        let factors = prime_factors(q);
        (2..self.size() as Elem)
            .find(|&g| factors.iter().all(|&p| self.pow_by_squaring(g, q / p) != 1))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    fn build_tables(&self) -> LogTables {
        let q = self.unit_order() as usize;
        let mut log = vec![0u32; self.size()];
        let mut antilog = Vec::with_capacity(q);
        let mut x: Elem = 1;
        for k in 0..q {
            antilog.push(x);
            log[x as usize] = k as u32;
            x = self.mul_reduce(x, self.generator);
        }
        LogTables { log, antilog }
    }

    /// Checks the log/antilog invariants; `true` when no tables are present.
    pub fn tables_consistent(&self) -> bool {
        let Some(t) = &self.tables else { return true };
        let mut seen = vec![false; self.size()];
        for &a in &t.antilog {
            if a == 0 || seen[a as usize] {
                return false;
            }
            seen[a as usize] = true;
        }
        (1..self.size()).all(|a| t.antilog[t.log[a] as usize] == a as u32)
    }

    fn trace_by_squaring(&self, a: Elem) -> u32 {
        let mut acc = 0;
        let mut s = a;
        for _ in 0..self.n {
            acc ^= s;
            s = self.mul_reduce(s, s);
        }
        debug_assert!(acc <= 1);
        acc
    }

    /// Absolute trace `sum_{i<n} a^(2^i)`, as a bit.
    #[inline]
    pub fn abs_trace(&self, a: Elem) -> u32 {
        (a & self.trace_mask).count_ones() & 1
    }

    /// `a^(2^m) == a`.
    pub fn in_subfield(&self, m: u32, a: Elem) -> bool {
        let mut s = a;
        for _ in 0..m {
            s = self.square(s);
        }
        s == a
    }

    fn check_subfield_degree(&self, m: u32) -> Result<()> {
        if m == 0 || self.n % m != 0 {
            return Err(Error::BadSubfield { m, n: self.n });
        }
        Ok(())
    }

    /// Trace from the subfield GF(2^m) down to GF(2), for `a` in that subfield.
    pub fn subfield_trace(&self, m: u32, a: Elem) -> Result<u32> {
        self.check_subfield_degree(m)?;
        if !self.in_subfield(m, a) {
            return Err(Error::NotInSubfield { elem: a, m });
        }
        let mut acc = 0;
        let mut s = a;
        for _ in 0..m {
            acc ^= s;
            s = self.square(s);
        }
        Ok(acc)
    }

    /// All elements of the subfield GF(2^m), sorted.
    pub fn subfield_elements(&self, m: u32) -> Result<Vec<Elem>> {
        self.check_subfield_degree(m)?;
        let q = self.unit_order();
        let sub_q = (1u64 << m) - 1;
        let h = self.pow_reduced(self.generator, q / sub_q);
        let mut out = Vec::with_capacity(1 << m);
        out.push(0);
        let mut x = 1;
        for _ in 0..sub_q {
            out.push(x);
            x = self.mul(x, h);
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Roots of `x^2 + alpha x + beta` in the field: either none or two
    /// roots differing by `alpha`, returned in increasing order.
    pub fn solve_quadratic(&self, alpha: Elem, beta: Elem) -> Result<Vec<Elem>> {
        if alpha == 0 {
            return Err(Error::DegenerateQuadratic);
        }
        // x = alpha*y turns the equation into y^2 + y = beta / alpha^2
        let c = self.mul(beta, self.inv(self.square(alpha)));
        let solver = self.quadratic.get_or_init(|| QuadraticSolver::build(self));
        Ok(match solver.solve(c) {
            None => Vec::new(),
            Some(y) => {
                let (r0, r1) = (self.mul(alpha, y), self.mul(alpha, y ^ 1));
                vec![r0.min(r1), r0.max(r1)]
            }
        })
    }
}
