//! Dickson polynomials of the first kind in characteristic 2.
//!
//! `D_k(x, a)` satisfies `D_k(x1 + x2, x1*x2) = x1^k + x2^k`. Over GF(2) the
//! sign of the parameter disappears and `D_0 = 2 = 0`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gf2n::{Elem, Field};

/// Nonzero terms of `D_k(x, a)` reduced mod 2. Each term is
/// `(x_degree, a_power)` with `x_degree = k - 2 * a_power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DicksonCoeffs {
    pub k: u32,
    pub terms: Vec<(u32, u32)>,
}

fn binomial(n: u32, r: u32) -> BigUint {
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Coefficients of `D_k` from the closed formula
/// `sum_j k/(k-j) * C(k-j, j) * a^j * x^(k-2j)`, reduced mod 2.
pub fn dickson_coeffs(k: u32) -> Result<DicksonCoeffs> {
    if k == 0 {
        return Err(Error::DicksonDegree);
    }
    let mut terms = Vec::new();
    for j in 0..=k / 2 {
        let num = binomial(k - j, j) * k;
        let den = BigUint::from(k - j);
        let coef = &num / &den;
        // k/(k-j) * C(k-j, j) is always an integer
        assert!((&num % &den).is_zero(), "non-integral Dickson coefficient");
        if (coef % 2u32).to_u32() == Some(1) {
            terms.push((k - 2 * j, j));
        }
    }
    Ok(DicksonCoeffs { k, terms })
}

/// `D_k(x, a)` via `D_k = x D_{k-1} + a D_{k-2}`, `D_0 = 0`, `D_1 = x`.
pub fn dickson_eval(field: &Field, k: u32, x: Elem, a: Elem) -> Elem {
    if k == 0 {
        return 0;
    }
    let (mut prev, mut cur) = (0, x);
    for _ in 1..k {
        let next = field.mul(x, cur) ^ field.mul(a, prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// `D_k(x, a)` for every `x`, for `k = 0..=k_max`; entry `[k][x]`.
pub fn dickson_value_table(field: &Field, a: Elem, k_max: u32) -> Vec<Vec<Elem>> {
    let size = field.size();
    let mut table = vec![vec![0 as Elem; size]; k_max as usize + 1];
    if k_max >= 1 {
        table[1] = (0..size as Elem).collect();
    }
    for k in 2..=k_max as usize {
        let (done, rest) = table.split_at_mut(k);
        let (p2, p1) = (&done[k - 2], &done[k - 1]);
        for (x, out) in rest[0].iter_mut().enumerate() {
            *out = field.mul(x as Elem, p1[x]) ^ field.mul(a, p2[x]);
        }
    }
    table
}

/// `T_1 = { x in GF(2^m) : tr_m(1/x) = 1 }`, sorted. `m` must divide `n`.
pub fn t1_set(field: &Field, m: u32) -> Result<Vec<Elem>> {
    let sub = field.subfield_elements(m)?;
    let mut out = Vec::with_capacity(sub.len() / 2);
    for x in sub.into_iter().filter(|&x| x != 0) {
        if field.subfield_trace(m, field.inv(x))? == 1 {
            out.push(x);
        }
    }
    Ok(out)
}

fn is_bijection_onto(image: impl Iterator<Item = Elem>, target: &[Elem]) -> bool {
    let seen: BTreeSet<Elem> = image.collect();
    seen.len() == target.len() && seen.iter().copied().eq(target.iter().copied())
}

/// Whether `u -> D_j(u, 1)` maps `T_1` bijectively onto itself.
pub fn dickson_permutes_t1(field: &Field, m: u32, j: u32) -> Result<bool> {
    if j == 0 {
        return Err(Error::DicksonDegree);
    }
    let t1 = t1_set(field, m)?;
    Ok(is_bijection_onto(
        t1.iter().map(|&u| dickson_eval(field, j, u, 1)),
        &t1,
    ))
}

/// Whether `x -> D_k(x, a)` is a permutation of the field.
pub fn dickson_permutes_field(field: &Field, k: u32, a: Elem) -> Result<bool> {
    if a == 0 {
        return Err(Error::ZeroParameter);
    }
    if k == 0 {
        return Err(Error::DicksonDegree);
    }
    let mut seen = vec![false; field.size()];
    for x in 0..field.size() as Elem {
        let v = dickson_eval(field, k, x, a) as usize;
        if seen[v] {
            return Ok(false);
        }
        seen[v] = true;
    }
    Ok(true)
}

/// `result[k]` tells whether `D_k(., a)` permutes the field, for
/// `1 <= k <= k_max` (`result[0]` is `false`).
pub fn field_permutation_profile(field: &Field, a: Elem, k_max: u32) -> Result<Vec<bool>> {
    if a == 0 {
        return Err(Error::ZeroParameter);
    }
    let table = dickson_value_table(field, a, k_max);
    let mut seen = vec![0u32; field.size()];
    let mut out = vec![false; k_max as usize + 1];
    for (k, row) in table.iter().enumerate().skip(1) {
        let stamp = k as u32;
        out[k] = row.iter().all(|&v| {
            let fresh = seen[v as usize] != stamp;
            seen[v as usize] = stamp;
            fresh
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::gcd;
    use std::collections::BTreeSet;

    /// Expansion of the recurrence with symbolic x and a, coefficients mod 2.
    fn recurrence_terms(k: u32) -> Vec<(u32, u32)> {
        let mut prev: BTreeSet<(u32, u32)> = BTreeSet::new();
        let mut cur: BTreeSet<(u32, u32)> = [(1, 0)].into();
        if k == 0 {
            return Vec::new();
        }
        for _ in 1..k {
            let mut next: BTreeSet<(u32, u32)> = BTreeSet::new();
            let terms = cur
                .iter()
                .map(|&(xd, ap)| (xd + 1, ap))
                .chain(prev.iter().map(|&(xd, ap)| (xd, ap + 1)));
            for t in terms {
                if !next.remove(&t) {
                    next.insert(t);
                }
            }
            prev = cur;
            cur = next;
        }
        let mut v: Vec<_> = cur.into_iter().collect();
        v.sort_by(|a, b| b.cmp(a));
        v
    }

    #[test]
    fn coeff_examples() {
        assert_eq!(dickson_coeffs(1).unwrap().terms, vec![(1, 0)]);
        assert_eq!(dickson_coeffs(3).unwrap().terms, vec![(3, 0), (1, 1)]);
        assert_eq!(
            dickson_coeffs(5).unwrap().terms,
            vec![(5, 0), (3, 1), (1, 2)]
        );
        assert_eq!(dickson_coeffs(0), Err(Error::DicksonDegree));
    }

    #[test]
    fn closed_formula_matches_recurrence() {
        for k in 1..=64 {
            let c = dickson_coeffs(k).unwrap();
            assert_eq!(c.terms, recurrence_terms(k), "k = {k}");
            assert_eq!(c.terms[0], (k, 0));
            assert!(c.terms.iter().all(|&(xd, ap)| xd + 2 * ap == k));
        }
    }

    #[test]
    fn eval_matches_coeffs() {
        let f = Field::new(7).unwrap();
        for k in 1..=20 {
            let c = dickson_coeffs(k).unwrap();
            for (x, a) in [(3, 5), (17, 1), (100, 77), (0, 9)] {
                let expect = c.terms.iter().fold(0, |acc, &(xd, ap)| {
                    let xp = if xd == 0 {
                        1
                    } else {
                        f.pow(x, xd as u64).unwrap()
                    };
                    let apw = if ap == 0 {
                        1
                    } else {
                        f.pow(a, ap as u64).unwrap()
                    };
                    acc ^ f.mul(xp, apw)
                });
                assert_eq!(dickson_eval(&f, k, x, a), expect);
            }
        }
    }

    #[test]
    fn functional_identity_exhaustive() {
        for n in 2..=6 {
            let f = Field::new(n).unwrap();
            let s = f.size() as Elem;
            for k in 1..=12u32 {
                for x1 in 0..s {
                    for x2 in 0..s {
                        let lhs = dickson_eval(&f, k, x1 ^ x2, f.mul(x1, x2));
                        let rhs = f.pow(x1, k as u64).unwrap() ^ f.pow(x2, k as u64).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn scaling_identity_exhaustive() {
        for n in 2..=5 {
            let f = Field::new(n).unwrap();
            let s = f.size() as Elem;
            for k in 1..=9u32 {
                for b in 1..s {
                    let bk = f.pow(b, k as u64).unwrap();
                    for x in 0..s {
                        for a in 0..s {
                            assert_eq!(
                                f.mul(bk, dickson_eval(&f, k, x, a)),
                                dickson_eval(&f, k, f.mul(b, x), f.mul(f.square(b), a))
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn value_table_matches_eval() {
        let f = Field::new(5).unwrap();
        let t = dickson_value_table(&f, 7, 40);
        for k in 0..=40 {
            for x in 0..32 {
                assert_eq!(t[k as usize][x as usize], dickson_eval(&f, k, x, 7));
            }
        }
    }

    #[test]
    fn t1_examples() {
        let f4 = Field::new(4).unwrap();
        let t1 = t1_set(&f4, 4).unwrap();
        assert_eq!(t1.len(), 8);
        assert!(!t1.contains(&1));
        let f3 = Field::new(3).unwrap();
        assert!(t1_set(&f3, 3).unwrap().contains(&1));
        // T_1 inside GF(2^8) for m = 4
        let f8 = Field::new(8).unwrap();
        let t1 = t1_set(&f8, 4).unwrap();
        assert_eq!(t1.len(), 8);
        assert!(t1.iter().all(|&x| f8.in_subfield(4, x)));
    }

    #[test]
    fn t1_permutation_examples() {
        let f4 = Field::new(4).unwrap();
        assert!(dickson_permutes_t1(&f4, 4, 3).unwrap());
        assert!(!dickson_permutes_t1(&f4, 4, 17).unwrap());
        let f3 = Field::new(3).unwrap();
        assert!(!dickson_permutes_t1(&f3, 3, 3).unwrap());
        // same verdict from inside the quadratic extension
        let f8 = Field::new(8).unwrap();
        assert!(dickson_permutes_t1(&f8, 4, 3).unwrap());
        assert!(!dickson_permutes_t1(&f8, 4, 17).unwrap());
    }

    #[test]
    fn field_permutation_examples() {
        let f3 = Field::new(3).unwrap();
        assert!(dickson_permutes_field(&f3, 5, 1).unwrap());
        assert!(!dickson_permutes_field(&f3, 3, 1).unwrap());
        assert!(dickson_permutes_field(&Field::new(2).unwrap(), 1, 1).unwrap());
        assert_eq!(dickson_permutes_field(&f3, 5, 0), Err(Error::ZeroParameter));
    }

    #[test]
    fn profile_matches_single_checks() {
        let f = Field::new(4).unwrap();
        for a in 1..16 {
            let prof = field_permutation_profile(&f, a, 60).unwrap();
            for k in 1..=60 {
                assert_eq!(prof[k as usize], dickson_permutes_field(&f, k, a).unwrap());
                assert_eq!(prof[k as usize], gcd(k as u64, 255) == 1);
            }
        }
    }
}
