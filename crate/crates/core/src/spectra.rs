//! Differential and boomerang analysis of power maps `x -> x^d`.
//!
//! For a power map the derivative in direction `a` is a relabeling of the
//! derivative in direction 1 (substitute `x = a*y`), so all the work happens
//! at `a = 1`. The `full_*` functions drop that shortcut and exist to check
//! it.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{coset_rep, gcd};
use crate::gf2n::{Elem, Field};

/// Largest degree accepted by the all-directions oracles.
pub const ORACLE_MAX_DEGREE: u32 = 8;

/// Solution counts of `(x+1)^d + x^d = b`, indexed by `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffRow {
    pub n: u32,
    pub d: u64,
    pub counts: Vec<u32>,
}

impl DiffRow {
    pub fn count(&self, b: Elem) -> u32 {
        self.counts[b as usize]
    }

    /// Maximum over every `b`, including 0.
    pub fn max(&self) -> u32 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    /// Maximum over `b` outside `{0, 1}`.
    pub fn max_off_01(&self) -> u32 {
        self.counts.iter().skip(2).copied().max().unwrap_or(0)
    }

    pub fn is_apn(&self) -> bool {
        self.max() <= 2
    }

    pub fn is_locally_apn(&self) -> bool {
        self.max_off_01() <= 2
    }

    pub fn is_zero_apn(&self) -> bool {
        self.count(1) == 2
    }

    /// Sum is `2^n`, every count even, and `b = 1` has at least `{0, 1}`.
    pub fn invariants_hold(&self) -> bool {
        let total: u64 = self.counts.iter().map(|&c| c as u64).sum();
        total == 1u64 << self.n && self.counts.iter().all(|c| c % 2 == 0) && self.count(1) >= 2
    }
}

/// `(x+1)^d + x^d` for every `x`, from a power table.
fn derivative(powers: &[Elem]) -> Vec<Elem> {
    (0..powers.len())
        .map(|x| powers[x ^ 1] ^ powers[x])
        .collect()
}

fn row_from_powers(n: u32, d: u64, powers: &[Elem]) -> DiffRow {
    let mut counts = vec![0u32; powers.len()];
    for x in 0..powers.len() {
        counts[(powers[x ^ 1] ^ powers[x]) as usize] += 1;
    }
    DiffRow { n, d, counts }
}

pub fn ddt_row(field: &Field, d: u64) -> Result<DiffRow> {
    let powers = field.power_table(d)?;
    Ok(row_from_powers(field.n(), d, &powers))
}

pub fn differential_uniformity(field: &Field, d: u64) -> Result<u32> {
    Ok(ddt_row(field, d)?.max())
}

pub fn is_apn(field: &Field, d: u64) -> Result<bool> {
    Ok(ddt_row(field, d)?.is_apn())
}

pub fn is_locally_apn(field: &Field, d: u64) -> Result<bool> {
    Ok(ddt_row(field, d)?.is_locally_apn())
}

pub fn is_zero_apn(field: &Field, d: u64) -> Result<bool> {
    Ok(ddt_row(field, d)?.is_zero_apn())
}

/// Per-`b` boomerang counts at `a = 1` from a power table.
///
/// The system `x^d + y^d = b`, `(x+1)^d + (y+1)^d = b` is equivalent to
/// `x^d + y^d = b` together with equal derivatives at `x` and `y`, so only
/// pairs inside one derivative fibre are visited.
fn boomerang_counts_from_powers(powers: &[Elem]) -> Vec<u64> {
    let size = powers.len();
    let der = derivative(powers);

    // bucket the x's by derivative value
    let mut start = vec![0usize; size + 1];
    for &v in &der {
        start[v as usize + 1] += 1;
    }
    for i in 0..size {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut members = vec![0 as Elem; size];
    for (x, &v) in der.iter().enumerate() {
        members[fill[v as usize]] = x as Elem;
        fill[v as usize] += 1;
    }

    let mut counts = vec![0u64; size];
    for v in 0..size {
        let fibre = &members[start[v]..start[v + 1]];
        for (i, &x) in fibre.iter().enumerate() {
            let px = powers[x as usize];
            for &y in &fibre[i + 1..] {
                let b = px ^ powers[y as usize];
                // (x, y) and (y, x)
                counts[b as usize] += 2;
            }
        }
    }
    counts[0] = 0;
    counts
}

/// Number of `(x, y)` solving the boomerang system at `a = 1`, per `b`.
/// Entry 0 is always 0.
pub fn boomerang_counts(field: &Field, d: u64) -> Result<Vec<u64>> {
    let powers = field.power_table(d)?;
    Ok(boomerang_counts_from_powers(&powers))
}

pub fn boomerang_uniformity(field: &Field, d: u64) -> Result<u64> {
    Ok(boomerang_counts(field, d)?.into_iter().max().unwrap_or(0))
}

/// Straight `O(4^n)` pass over all `(x, y)` at `a = 1`, sharded by `x`.
pub fn boomerang_uniformity_direct(field: &Field, d: u64) -> Result<u64> {
    let powers = field.power_table(d)?;
    let size = powers.len();
    let counts = (0..size)
        .into_par_iter()
        .fold(
            || vec![0u64; size],
            |mut acc, x| {
                let (fx, fx1) = (powers[x], powers[x ^ 1]);
                for y in 0..size {
                    let b = fx ^ powers[y];
                    if b != 0 && fx1 ^ powers[y ^ 1] == b {
                        acc[b as usize] += 1;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; size],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(s, v)| *s += v);
                a
            },
        );
    Ok(counts.into_iter().max().unwrap_or(0))
}

fn oracle_budget(field: &Field) -> Result<()> {
    if field.n() > ORACLE_MAX_DEGREE {
        return Err(Error::Budget {
            what: "oracle",
            n: field.n(),
            max: ORACLE_MAX_DEGREE,
        });
    }
    Ok(())
}

/// Differential uniformity over every direction `a != 0`, no shortcut.
pub fn full_ddt_max(field: &Field, d: u64) -> Result<u32> {
    oracle_budget(field)?;
    let powers = field.power_table(d)?;
    let size = powers.len();
    let mut best = 0;
    let mut counts = vec![0u32; size];
    for a in 1..size {
        counts.iter_mut().for_each(|c| *c = 0);
        for x in 0..size {
            counts[(powers[x ^ a] ^ powers[x]) as usize] += 1;
        }
        best = best.max(*counts.iter().max().unwrap());
    }
    Ok(best)
}

/// Boomerang uniformity over every `a != 0`, `b != 0`, no shortcut.
pub fn full_bct_max(field: &Field, d: u64) -> Result<u64> {
    oracle_budget(field)?;
    let powers = field.power_table(d)?;
    let size = powers.len();
    let mut best = 0;
    let mut counts = vec![0u64; size];
    for a in 1..size {
        counts.iter_mut().for_each(|c| *c = 0);
        for x in 0..size {
            for y in 0..size {
                let b = powers[x] ^ powers[y];
                if b != 0 && powers[x ^ a] ^ powers[y ^ a] == b {
                    counts[b as usize] += 1;
                }
            }
        }
        best = best.max(*counts.iter().max().unwrap());
    }
    Ok(best)
}

/// Everything known about one exponent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub n: u32,
    pub d: u64,
    pub coset_rep: u64,
    pub du: u32,
    pub bu: Option<u64>,
    pub is_apn: bool,
    pub is_locally_apn: bool,
    pub is_zero_apn: bool,
    pub is_permutation: bool,
    pub matched_families: Vec<String>,
}

/// Classifies `x^d`. `matched_families` is left empty; see
/// [`crate::families::annotate`].
pub fn classify(field: &Field, d: u64, with_bu: bool) -> Result<ClassificationRecord> {
    let n = field.n();
    let reduced = field.reduce_exponent(d)?;
    let powers = field.power_table(reduced)?;
    let row = row_from_powers(n, d, &powers);
    let bu = with_bu.then(|| {
        boomerang_counts_from_powers(&powers)
            .into_iter()
            .max()
            .unwrap_or(0)
    });
    Ok(ClassificationRecord {
        n,
        d,
        coset_rep: coset_rep(reduced, n),
        du: row.max(),
        bu,
        is_apn: row.is_apn(),
        is_locally_apn: row.is_locally_apn(),
        is_zero_apn: row.is_zero_apn(),
        is_permutation: gcd(reduced, field.unit_order()) == 1,
        matched_families: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(n: u32) -> Field {
        Field::new(n).unwrap()
    }

    #[test]
    fn linear_row() {
        for n in [3, 6, 9] {
            let row = ddt_row(&field(n), 1).unwrap();
            assert_eq!(row.count(1), 1 << n);
            assert_eq!(row.counts.iter().filter(|&&c| c != 0).count(), 1);
            assert!(row.is_locally_apn());
            assert!(!row.is_zero_apn());
        }
    }

    #[test]
    fn f1_zero_column() {
        // n = 8, d = 15 is the j = 1 member of x^(j(2^m - 1)), m = 4
        let row = ddt_row(&field(8), 15).unwrap();
        assert_eq!(row.count(0), 14);
        assert_eq!(row.max(), 14);
        assert!(row.invariants_hold());
    }

    #[test]
    fn gold_rows() {
        assert_eq!(ddt_row(&field(4), 3).unwrap().max(), 2);
        assert_eq!(differential_uniformity(&field(5), 3).unwrap(), 2);
    }

    #[test]
    fn f2_differential_uniformity() {
        assert_eq!(differential_uniformity(&field(8), 91).unwrap(), 16);
    }

    #[test]
    fn predicates() {
        let f10 = field(10);
        assert!(is_locally_apn(&f10, 219).unwrap());
        assert!(!is_apn(&f10, 219).unwrap());
        assert!(is_zero_apn(&field(8), 111).unwrap());
        assert_eq!(ddt_row(&f10, 0), Err(Error::ZeroExponent));
    }

    #[test]
    fn boomerang_examples() {
        assert_eq!(boomerang_uniformity(&field(8), 15).unwrap(), 2);
        assert_eq!(boomerang_uniformity(&field(5), 3).unwrap(), 2);
        assert_eq!(boomerang_uniformity(&field(4), 1).unwrap(), 16);
    }

    #[test]
    fn fibre_pass_matches_direct_pass() {
        for n in 2..=8 {
            let f = field(n);
            for d in 1..(1u64 << n) - 1 {
                assert_eq!(
                    boomerang_uniformity(&f, d).unwrap(),
                    boomerang_uniformity_direct(&f, d).unwrap(),
                    "n={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn boomerang_counts_are_symmetric() {
        // (x, y) -> (y, x) and (x, y) -> (x+1, y+1) preserve the system
        let f = field(6);
        for d in [3u64, 5, 7, 9, 21, 27] {
            let powers = f.power_table(d).unwrap();
            let size = powers.len();
            let mut sols = std::collections::HashSet::new();
            for x in 0..size {
                for y in 0..size {
                    let b = powers[x] ^ powers[y];
                    if b != 0 && powers[x ^ 1] ^ powers[y ^ 1] == b {
                        sols.insert((x, y));
                    }
                }
            }
            for &(x, y) in &sols {
                assert!(sols.contains(&(y, x)));
                assert!(sols.contains(&(x ^ 1, y ^ 1)));
            }
            let counts = boomerang_counts(&f, d).unwrap();
            assert_eq!(counts.iter().sum::<u64>(), sols.len() as u64);
            assert!(counts.iter().all(|c| c % 2 == 0));
        }
    }

    #[test]
    fn oracle_budget_enforced() {
        let f = field(9);
        assert!(matches!(full_ddt_max(&f, 3), Err(Error::Budget { .. })));
        assert!(matches!(full_bct_max(&f, 3), Err(Error::Budget { .. })));
        assert_eq!(full_ddt_max(&field(4), 1).unwrap(), 16);
    }

    #[test]
    fn oracle_equivalence_n4() {
        let f = field(4);
        for d in 1..15 {
            assert_eq!(
                full_ddt_max(&f, d).unwrap(),
                differential_uniformity(&f, d).unwrap()
            );
            assert_eq!(
                full_bct_max(&f, d).unwrap(),
                boomerang_uniformity(&f, d).unwrap()
            );
        }
    }

    #[test]
    fn classify_examples() {
        let r = classify(&field(8), 15, true).unwrap();
        assert_eq!((r.du, r.bu), (14, Some(2)));
        assert!(!r.is_apn && r.is_locally_apn && r.is_zero_apn && !r.is_permutation);

        let r = classify(&field(8), 91, false).unwrap();
        assert_eq!((r.du, r.bu), (16, None));
        assert!(r.is_locally_apn && !r.is_apn);

        let r = classify(&field(3), 3, false).unwrap();
        assert_eq!(r.du, 2);
        assert!(r.is_apn && r.is_locally_apn && r.is_zero_apn && r.is_permutation);
    }

    #[test]
    fn classify_record_invariants() {
        for n in 3..=7 {
            let f = field(n);
            for d in 1..(1u64 << n) - 1 {
                let r = classify(&f, d, true).unwrap();
                assert!(!r.is_apn || (r.is_locally_apn && r.is_zero_apn));
                if r.is_permutation {
                    assert!(r.bu.unwrap() >= r.du as u64, "n={n} d={d}");
                }
                if r.is_apn {
                    assert_eq!(r.bu, Some(2));
                }
                assert!(ddt_row(&f, d).unwrap().invariants_hold());
            }
        }
    }
}
