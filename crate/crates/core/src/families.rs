//! Catalog of power-exponent families and the integer arithmetic behind
//! them.
//!
//! Exponents are always taken modulo `2^n - 1`. Any generated exponent that
//! reduces to 0 (the map `x^(2^n - 1)`) is dropped, since it lies outside
//! the coset space `[1, 2^n - 2]` the scans work over.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::ClassificationRecord;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m`.
pub fn modinv(a: u64, m: u64) -> Result<u64> {
    let not_invertible = Error::NotInvertible {
        value: a,
        modulus: m,
    };
    if m == 0 {
        return Err(not_invertible);
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(not_invertible);
    }
    Ok(t0.rem_euclid(m as i128) as u64)
}

fn unit_order(n: u32) -> u64 {
    (1u64 << n) - 1
}

/// Reduces `d` into `[1, 2^n - 1]`; 0 stays 0.
fn reduce(d: u64, n: u32) -> u64 {
    let q = unit_order(n);
    match d % q {
        0 if d != 0 => q,
        r => r,
    }
}

/// Cyclotomic coset `{d * 2^i mod (2^n - 1)}`, sorted.
///
/// An exponent divisible by `2^n - 1` has the singleton coset `{2^n - 1}`.
pub fn coset(d: u64, n: u32) -> Vec<u64> {
    let q = unit_order(n);
    let d = reduce(d, n);
    if d == q || d == 0 {
        return vec![d];
    }
    let mut out = BTreeSet::new();
    let mut x = d;
    for _ in 0..n {
        out.insert(x);
        x = x * 2 % q;
    }
    out.into_iter().collect()
}

pub fn coset_rep(d: u64, n: u32) -> u64 {
    coset(d, n)[0]
}

/// Coset representative of the compositional inverse of `x^d`, when `x^d`
/// is a permutation.
pub fn inverse_coset_rep(d: u64, n: u32) -> Option<u64> {
    let q = unit_order(n);
    let d = reduce(d, n);
    if gcd(d, q) != 1 {
        return None;
    }
    modinv(d, q).ok().map(|inv| coset_rep(inv, n))
}

/// Pairs `(2^t - 1, 2^(n-t+1) - 1)` for `2 <= t <= n - 1`, whose
/// locally-APN status is known to agree.
pub fn blondeau_pairs(n: u32) -> Vec<(u64, u64)> {
    if n < 3 {
        return Vec::new();
    }
    (2..n)
        .map(|t| (reduce((1 << t) - 1, n), reduce((1 << (n - t + 1)) - 1, n)))
        .collect()
}

/// Property a family is known to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Apn,
    ZeroApn,
    LocallyApn,
    Bu2,
}

impl Claim {
    pub fn name(self) -> &'static str {
        match self {
            Claim::Apn => "apn",
            Claim::ZeroApn => "zero_apn",
            Claim::LocallyApn => "locally_apn",
            Claim::Bu2 => "bu2",
        }
    }

    /// Checks the claim against a record; `None` if the record lacks the
    /// boomerang value needed.
    pub fn holds_for(self, r: &ClassificationRecord) -> Option<bool> {
        Some(match self {
            Claim::Apn => r.is_apn,
            Claim::ZeroApn => r.is_zero_apn,
            Claim::LocallyApn => r.is_locally_apn,
            Claim::Bu2 => r.bu? == 2,
        })
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A named exponent family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Gold,
    Kasami,
    Welch,
    Niho,
    Inverse,
    Dobbertin,
    C1,
    C2,
    C3,
    C4,
    C5,
    F1,
    F2,
    T32_1,
    T32_2,
    T32_3,
    T33_1,
    T33_2,
    T33_3,
}

/// One generated exponent with the parameters that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub d: u64,
    pub params: BTreeMap<&'static str, u64>,
}

impl Family {
    pub const ALL: [Family; 19] = [
        Family::Gold,
        Family::Kasami,
        Family::Welch,
        Family::Niho,
        Family::Inverse,
        Family::Dobbertin,
        Family::C1,
        Family::C2,
        Family::C3,
        Family::C4,
        Family::C5,
        Family::F1,
        Family::F2,
        Family::T32_1,
        Family::T32_2,
        Family::T32_3,
        Family::T33_1,
        Family::T33_2,
        Family::T33_3,
    ];

    /// The known APN power families.
    pub const APN_TABLE: [Family; 6] = [
        Family::Gold,
        Family::Kasami,
        Family::Welch,
        Family::Niho,
        Family::Inverse,
        Family::Dobbertin,
    ];

    /// The known 0-APN (not APN) power families.
    pub const ZERO_APN_TABLE: [Family; 5] =
        [Family::C1, Family::C2, Family::C3, Family::C4, Family::C5];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gold => "gold",
            Family::Kasami => "kasami",
            Family::Welch => "welch",
            Family::Niho => "niho",
            Family::Inverse => "inverse",
            Family::Dobbertin => "dobbertin",
            Family::C1 => "c1",
            Family::C2 => "c2",
            Family::C3 => "c3",
            Family::C4 => "c4",
            Family::C5 => "c5",
            Family::F1 => "f1",
            Family::F2 => "f2",
            Family::T32_1 => "t32_1",
            Family::T32_2 => "t32_2",
            Family::T32_3 => "t32_3",
            Family::T33_1 => "t33_1",
            Family::T33_2 => "t33_2",
            Family::T33_3 => "t33_3",
        }
    }

    /// Properties the family is proven to have.
    pub fn claims(self) -> &'static [Claim] {
        use Family::*;
        match self {
            Gold | Kasami | Welch | Niho | Inverse | Dobbertin => &[Claim::Apn],
            C1 | C2 | C3 | C4 | C5 => &[Claim::ZeroApn],
            F1 => &[Claim::LocallyApn, Claim::Bu2, Claim::ZeroApn],
            F2 => &[Claim::LocallyApn],
            T32_1 | T32_2 | T32_3 | T33_1 | T33_2 | T33_3 => &[Claim::ZeroApn],
        }
    }

    pub fn has_claim(self, claim: Claim) -> bool {
        self.claims().contains(&claim)
    }

    fn shape_error(self, n: u32, reason: &'static str) -> Error {
        Error::FamilyShape {
            family: self.name(),
            n,
            reason,
        }
    }

    /// Every valid parameterization at degree `n`, exponents reduced
    /// modulo `2^n - 1`.
    pub fn generate(self, n: u32) -> Result<Vec<Instance>> {
        use Family::*;
        if !(2..=crate::gf2n::MAX_DEGREE).contains(&n) {
            return Err(Error::DegreeOutOfRange(n));
        }
        let pow2 = |e: u32| 1i128 << e;
        let odd = n % 2 == 1;
        let half = n / 2;
        let mut raw: Vec<(i128, Vec<(&'static str, u64)>)> = Vec::new();
        let need_odd = |fam: Family| {
            if odd {
                Ok(())
            } else {
                Err(fam.shape_error(n, "n must be odd"))
            }
        };
        let need_even_m = |fam: Family| {
            if n % 4 == 0 {
                Ok(())
            } else {
                Err(fam.shape_error(n, "n must be 2m with m even"))
            }
        };
        match self {
            Gold | Kasami => {
                for i in (1..=half).filter(|&i| gcd(i as u64, n as u64) == 1) {
                    let d = if self == Gold {
                        pow2(i) + 1
                    } else {
                        pow2(2 * i) - pow2(i) + 1
                    };
                    raw.push((d, vec![("i", i as u64)]));
                }
            }
            Welch => {
                need_odd(self)?;
                let t = (n - 1) / 2;
                raw.push((pow2(t) + 3, vec![("t", t as u64)]));
            }
            Niho => {
                need_odd(self)?;
                let t = (n - 1) / 2;
                let d = if t % 2 == 0 {
                    pow2(t) + pow2(t / 2) - 1
                } else {
                    pow2(t) + pow2((3 * t + 1) / 2) - 1
                };
                raw.push((d, vec![("t", t as u64)]));
            }
            Inverse => {
                need_odd(self)?;
                let t = (n - 1) / 2;
                raw.push((pow2(2 * t) - 1, vec![("t", t as u64)]));
            }
            Dobbertin => {
                if n % 5 != 0 {
                    return Err(self.shape_error(n, "n must be a multiple of 5"));
                }
                let i = n / 5;
                let d = pow2(4 * i) + pow2(3 * i) + pow2(2 * i) + pow2(i) - 1;
                raw.push((d, vec![("i", i as u64)]));
            }
            C1 => {
                for i in (2..=n).filter(|&i| gcd(i as u64 - 1, n as u64) == 1) {
                    raw.push((pow2(i) - 1, vec![("i", i as u64)]));
                }
            }
            C2 => {
                if n % 6 != 0 {
                    raw.push((21, vec![]));
                }
            }
            C3 => {
                let coprime: Vec<u32> = (1..n).filter(|&k| gcd(k as u64, n as u64) == 1).collect();
                for (a, &r) in coprime.iter().enumerate() {
                    for &t in &coprime[a..] {
                        raw.push((
                            pow2(r) + pow2(t) - 1,
                            vec![("r", r as u64), ("t", t as u64)],
                        ));
                    }
                }
            }
            C4 => {
                if n % 8 != 0 {
                    return Err(self.shape_error(n, "n must be 4t with t even"));
                }
                let t = n / 4;
                raw.push((pow2(2 * t) + pow2(t) + 1, vec![("t", t as u64)]));
            }
            C5 => {
                for s in (0..n).filter(|&s| gcd(n as u64, s as u64 + 1) == 1) {
                    raw.push((pow2(n) - pow2(s), vec![("s", s as u64)]));
                }
            }
            F1 => {
                need_even_m(self)?;
                let m = half;
                let modulus = (1u64 << m) + 1;
                // d depends on j only modulo 2^m + 1
                for j in (1..modulus).filter(|&j| gcd(j, modulus) == 1) {
                    let d = j as i128 * (pow2(m) - 1);
                    raw.push((d, vec![("m", m as u64), ("j", j)]));
                }
            }
            F2 => {
                need_even_m(self)?;
                let m = half;
                let j = (pow2(m) + 2) / 3;
                raw.push((
                    (pow2(m) - 1) * j + 1,
                    vec![("m", m as u64), ("j", j as u64)],
                ));
            }
            T32_1 => {
                need_even_m(self)?;
                let m = half;
                if m % 3 != 0 {
                    raw.push((pow2(2 * m - 1) - pow2(m) - 1, vec![("m", m as u64)]));
                }
            }
            T32_2 => {
                if n % 4 != 2 {
                    return Err(self.shape_error(n, "n must be 2m with m odd"));
                }
                let m = half;
                raw.push((pow2(2 * m - 1) - pow2(m - 1) - 1, vec![("m", m as u64)]));
            }
            T32_3 => {
                if n % 8 != 0 {
                    return Err(self.shape_error(n, "n must be 2m with m = 2k, k even"));
                }
                let k = n / 4;
                raw.push((
                    pow2(3 * k) - pow2(2 * k) + pow2(k) - 1,
                    vec![("m", 2 * k as u64), ("k", k as u64)],
                ));
            }
            T33_1 | T33_2 | T33_3 => {
                need_odd(self)?;
                let m = half;
                let d = match self {
                    T33_1 if m % 3 == 1 => None,
                    T33_1 => Some(pow2(2 * m) - pow2(m) - 1),
                    T33_2 => Some(pow2(2 * m - 1) - pow2(m - 1) - 1),
                    _ => Some(pow2(2 * m - 1) - pow2(m) - 1),
                };
                raw.extend(d.map(|d| (d, vec![("m", m as u64)])));
            }
        }
        let q = unit_order(n) as i128;
        Ok(raw
            .into_iter()
            .filter_map(|(d, params)| {
                let d = d.rem_euclid(q) as u64;
                (d != 0).then(|| Instance {
                    d,
                    params: params.into_iter().collect(),
                })
            })
            .collect())
    }

    /// Coset representatives of every generated exponent; empty when the
    /// family is not defined at `n`.
    pub fn coset_reps(self, n: u32) -> BTreeSet<u64> {
        self.generate(n)
            .map(|v| v.into_iter().map(|i| coset_rep(i.d, n)).collect())
            .unwrap_or_default()
    }

    /// Whether the cyclotomic coset of `d` contains a generated exponent.
    pub fn covers(self, n: u32, d: u64) -> bool {
        self.coset_reps(n).contains(&coset_rep(d, n))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

pub fn gen_exponents(family: Family, n: u32) -> Result<Vec<Instance>> {
    family.generate(n)
}

pub fn covered_by(family: Family, n: u32, d: u64) -> bool {
    family.covers(n, d)
}

/// Coset reps of every catalog family at degree `n`.
#[derive(Debug, Clone)]
pub struct Catalog {
    n: u32,
    reps: Vec<(Family, BTreeSet<u64>)>,
}

impl Catalog {
    pub fn new(n: u32) -> Self {
        Catalog {
            n,
            reps: Family::ALL.iter().map(|&f| (f, f.coset_reps(n))).collect(),
        }
    }

    /// Families whose coset set contains the coset of `d`.
    pub fn matches(&self, d: u64) -> Vec<Family> {
        let rep = coset_rep(d, self.n);
        self.reps
            .iter()
            .filter(|(_, set)| set.contains(&rep))
            .map(|&(f, _)| f)
            .collect()
    }
}

/// Fills `record.matched_families` from the catalog.
pub fn annotate(record: &mut ClassificationRecord, catalog: &Catalog) {
    record.matched_families = catalog
        .matches(record.coset_rep)
        .into_iter()
        .map(|f| f.name().to_string())
        .collect();
}
