//! Exhaustive classification of every power exponent over GF(2^n), one
//! cyclotomic coset at a time, and coverage of the results by the family
//! catalog.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{coset, inverse_coset_rep, Catalog, Claim, Family};
use crate::gf2n::Field;
use crate::spectra::{classify, ClassificationRecord};

pub const SCAN_MAX_DEGREE: u32 = 14;
pub const SCAN_BU_MAX_DEGREE: u32 = 12;
pub const REPORT_VERSION: u32 = 1;

/// Sorted minimal representatives of the nonzero cyclotomic cosets
/// modulo `2^n - 1`.
pub fn coset_reps(n: u32) -> Result<Vec<u64>> {
    if !(2..=SCAN_MAX_DEGREE).contains(&n) {
        return Err(Error::Budget {
            what: "scan",
            n,
            max: SCAN_MAX_DEGREE,
        });
    }
    let q = (1u64 << n) - 1;
    let mut seen = vec![false; q as usize];
    let mut reps = Vec::new();
    for d in 1..q {
        if seen[d as usize] {
            continue;
        }
        reps.push(d);
        let mut x = d;
        loop {
            seen[x as usize] = true;
            x = x * 2 % q;
            if x == d {
                break;
            }
        }
    }
    Ok(reps)
}

/// One coset in a scan report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub rep: u64,
    pub coset_size: u32,
    pub du: u32,
    pub bu: Option<u64>,
    pub apn: bool,
    pub locally_apn: bool,
    pub zero_apn: bool,
    pub permutation: bool,
    pub families: Vec<String>,
}

impl ReportRow {
    fn from_record(r: &ClassificationRecord, coset_size: u32) -> Self {
        ReportRow {
            rep: r.coset_rep,
            coset_size,
            du: r.du,
            bu: r.bu,
            apn: r.is_apn,
            locally_apn: r.is_locally_apn,
            zero_apn: r.is_zero_apn,
            permutation: r.is_permutation,
            families: r.matched_families.clone(),
        }
    }

    fn flag(&self, atom: Atom) -> Option<bool> {
        Some(match atom {
            Atom::Apn => self.apn,
            Atom::LocallyApn => self.locally_apn,
            Atom::ZeroApn => self.zero_apn,
            Atom::Permutation => self.permutation,
            Atom::Bu2 => self.bu? == 2,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub cosets: usize,
    pub exponents: u64,
    pub apn: usize,
    pub locally_apn: usize,
    pub zero_apn: usize,
    pub permutation: usize,
    pub locally_apn_not_apn: usize,
    pub zero_apn_not_apn: usize,
    pub bu2: Option<usize>,
    pub bu2_not_apn: Option<usize>,
    /// Coset count per `apn/locally_apn/zero_apn` flag pattern, e.g. `"011"`.
    pub flag_patterns: BTreeMap<String, usize>,
    /// Claim -> coset reps satisfying it (and not APN) that no family
    /// with that claim covers.
    pub unexplained: BTreeMap<String, Vec<u64>>,
}

impl Summary {
    fn compute(n: u32, rows: &[ReportRow], with_bu: bool) -> Self {
        let count = |pred: &dyn Fn(&ReportRow) -> bool| rows.iter().filter(|r| pred(r)).count();
        let mut flag_patterns = BTreeMap::new();
        for r in rows {
            let key: String = [r.apn, r.locally_apn, r.zero_apn]
                .iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect();
            *flag_patterns.entry(key).or_insert(0) += 1;
        }
        let mut unexplained = BTreeMap::new();
        let mut claims = vec![Claim::LocallyApn, Claim::ZeroApn];
        if with_bu {
            claims.push(Claim::Bu2);
        }
        for claim in claims {
            let pred = ClaimPredicate::not_apn(claim);
            let cov = coverage_of_rows(n, rows, &pred, &Basis::ByClaim, Equivalence::Cyclotomic)
                .expect("bu present when requested");
            unexplained.insert(pred.to_string(), cov.unexplained);
        }
        Summary {
            cosets: rows.len(),
            exponents: rows.iter().map(|r| r.coset_size as u64).sum(),
            apn: count(&|r| r.apn),
            locally_apn: count(&|r| r.locally_apn),
            zero_apn: count(&|r| r.zero_apn),
            permutation: count(&|r| r.permutation),
            locally_apn_not_apn: count(&|r| r.locally_apn && !r.apn),
            zero_apn_not_apn: count(&|r| r.zero_apn && !r.apn),
            bu2: with_bu.then(|| count(&|r| r.bu == Some(2))),
            bu2_not_apn: with_bu.then(|| count(&|r| r.bu == Some(2) && !r.apn)),
            flag_patterns,
            unexplained,
        }
    }
}

/// Classification of every coset at one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub version: u32,
    pub n: u32,
    pub with_bu: bool,
    pub rows: Vec<ReportRow>,
    pub summary: Summary,
}

impl ScanReport {
    pub fn row(&self, rep: u64) -> Option<&ReportRow> {
        self.rows
            .binary_search_by_key(&rep, |r| r.rep)
            .ok()
            .map(|i| &self.rows[i])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<ScanReport> {
        serde_json::from_str(s)
    }

    /// Summary recomputed from the rows matches the stored one.
    pub fn summary_consistent(&self) -> bool {
        Summary::compute(self.n, &self.rows, self.with_bu) == self.summary
    }
}

/// Classifies every coset rep of GF(2^n). `threads` caps the worker count;
/// the report does not depend on it.
pub fn scan(n: u32, with_bu: bool, threads: Option<usize>) -> Result<ScanReport> {
    if with_bu && n > SCAN_BU_MAX_DEGREE {
        return Err(Error::Budget {
            what: "boomerang scan",
            n,
            max: SCAN_BU_MAX_DEGREE,
        });
    }
    let reps = coset_reps(n)?;
    let field = Field::new(n)?;
    let catalog = Catalog::new(n);
    let work = || -> Result<Vec<ReportRow>> {
        let mut rows = reps
            .par_iter()
            .map(|&d| {
                let mut rec = classify(&field, d, with_bu)?;
                crate::families::annotate(&mut rec, &catalog);
                Ok(ReportRow::from_record(&rec, coset(d, n).len() as u32))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.sort_by_key(|r| r.rep);
        Ok(rows)
    };
    let rows = match threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    let summary = Summary::compute(n, &rows, with_bu);
    Ok(ScanReport {
        version: REPORT_VERSION,
        n,
        with_bu,
        rows,
        summary,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Atom {
    Apn,
    LocallyApn,
    ZeroApn,
    Permutation,
    Bu2,
}

impl Atom {
    fn name(self) -> &'static str {
        match self {
            Atom::Apn => "apn",
            Atom::LocallyApn => "locally_apn",
            Atom::ZeroApn => "zero_apn",
            Atom::Permutation => "permutation",
            Atom::Bu2 => "bu2",
        }
    }

    fn claim(self) -> Option<Claim> {
        match self {
            Atom::Apn => Some(Claim::Apn),
            Atom::LocallyApn => Some(Claim::LocallyApn),
            Atom::ZeroApn => Some(Claim::ZeroApn),
            Atom::Bu2 => Some(Claim::Bu2),
            Atom::Permutation => None,
        }
    }
}

/// Conjunction of possibly negated flags, e.g. `locally_apn & !apn`.
///
/// Accepted spellings: `&`, `∧`, `and`, `,` between literals; `!`, `¬`,
/// `not ` for negation; `bu2` or `bu=2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimPredicate {
    literals: Vec<(Atom, bool)>,
}

impl ClaimPredicate {
    /// `claim ∧ ¬apn`.
    pub fn not_apn(claim: Claim) -> Self {
        let atom = match claim {
            Claim::Apn => Atom::Apn,
            Claim::ZeroApn => Atom::ZeroApn,
            Claim::LocallyApn => Atom::LocallyApn,
            Claim::Bu2 => Atom::Bu2,
        };
        ClaimPredicate {
            literals: vec![(atom, true), (Atom::Apn, false)],
        }
    }

    pub fn needs_bu(&self) -> bool {
        self.literals.iter().any(|&(a, _)| a == Atom::Bu2)
    }

    /// Claims a family must carry to explain a coset satisfying this
    /// predicate: every positive literal that names a claim.
    pub fn required_claims(&self) -> Vec<Claim> {
        self.literals
            .iter()
            .filter(|&&(_, positive)| positive)
            .filter_map(|&(a, _)| a.claim())
            .collect()
    }

    fn eval(&self, row: &ReportRow) -> Option<bool> {
        let mut all = true;
        for &(atom, positive) in &self.literals {
            all &= row.flag(atom)? == positive;
        }
        Some(all)
    }
}

impl FromStr for ClaimPredicate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownClaim(s.to_string());
        let normalized = s
            .replace('∧', "&")
            .replace(" and ", "&")
            .replace(',', "&")
            .replace('¬', "!");
        let mut literals = Vec::new();
        for part in normalized.split('&') {
            let part = part.trim();
            let (positive, name) = match part.strip_prefix('!') {
                Some(rest) => (false, rest.trim()),
                None => match part.strip_prefix("not ") {
                    Some(rest) => (false, rest.trim()),
                    None => (true, part),
                },
            };
            let atom = match name.replace(' ', "").as_str() {
                "apn" => Atom::Apn,
                "locally_apn" | "locally-apn" => Atom::LocallyApn,
                "zero_apn" | "0-apn" | "0apn" => Atom::ZeroApn,
                "permutation" => Atom::Permutation,
                "bu2" | "bu=2" => Atom::Bu2,
                _ => return Err(bad()),
            };
            literals.push((atom, positive));
        }
        if literals.is_empty() {
            return Err(bad());
        }
        Ok(ClaimPredicate { literals })
    }
}

impl fmt::Display for ClaimPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(atom, positive)) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            if !positive {
                f.write_str("!")?;
            }
            f.write_str(atom.name())?;
        }
        Ok(())
    }
}

/// How exponents are identified when matching against family cosets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Equivalence {
    /// `d ~ 2d` only.
    #[default]
    Cyclotomic,
    /// Also identify a permutation exponent with its inverse.
    CyclotomicAndInverse,
}

/// Families allowed to explain a coset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Basis {
    /// Every catalog family carrying the predicate's positive claims.
    ByClaim,
    /// Exactly these families.
    Families(Vec<Family>),
}

impl Basis {
    fn families(&self, pred: &ClaimPredicate) -> Vec<Family> {
        match self {
            Basis::Families(fs) => fs.clone(),
            Basis::ByClaim => {
                let need = pred.required_claims();
                Family::ALL
                    .iter()
                    .copied()
                    .filter(|f| need.iter().all(|&c| f.has_claim(c)))
                    .collect()
            }
        }
    }
}

/// Cosets satisfying a predicate, split by whether a family explains them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub n: u32,
    pub claim: String,
    pub families: Vec<String>,
    pub explained: BTreeMap<u64, Vec<String>>,
    pub unexplained: Vec<u64>,
}

fn coverage_of_rows(
    n: u32,
    rows: &[ReportRow],
    pred: &ClaimPredicate,
    basis: &Basis,
    equivalence: Equivalence,
) -> Result<Coverage> {
    let families = basis.families(pred);
    let sets: Vec<(Family, BTreeSet<u64>)> =
        families.iter().map(|&f| (f, f.coset_reps(n))).collect();
    let mut explained = BTreeMap::new();
    let mut unexplained = Vec::new();
    for row in rows {
        let satisfied = pred
            .eval(row)
            .ok_or_else(|| Error::ClaimNeedsBoomerang(pred.to_string()))?;
        if !satisfied {
            continue;
        }
        let inverse = match equivalence {
            Equivalence::Cyclotomic => None,
            Equivalence::CyclotomicAndInverse => inverse_coset_rep(row.rep, n),
        };
        let by: Vec<String> = sets
            .iter()
            .filter(|(_, set)| set.contains(&row.rep) || inverse.is_some_and(|r| set.contains(&r)))
            .map(|(f, _)| f.name().to_string())
            .collect();
        if by.is_empty() {
            unexplained.push(row.rep);
        } else {
            explained.insert(row.rep, by);
        }
    }
    Ok(Coverage {
        n,
        claim: pred.to_string(),
        families: families.iter().map(|f| f.name().to_string()).collect(),
        explained,
        unexplained,
    })
}

/// Splits the cosets of `report` satisfying `pred` into explained and
/// unexplained ones.
pub fn coverage(
    report: &ScanReport,
    pred: &ClaimPredicate,
    basis: &Basis,
    equivalence: Equivalence,
) -> Result<Coverage> {
    if pred.needs_bu() && !report.with_bu {
        return Err(Error::ClaimNeedsBoomerang(pred.to_string()));
    }
    coverage_of_rows(report.n, &report.rows, pred, basis, equivalence)
}
