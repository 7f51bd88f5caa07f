//! `apnlike`: command-line front end for the power-function toolkit.
//!
//! Exit codes: 0 success, 1 a checked claim failed, 2 usage or input error,
//! 3 refused because the request exceeds a computation budget.

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use apnlike::dickson::{dickson_coeffs, dickson_permutes_field, dickson_permutes_t1};
use apnlike::families::{annotate, gcd, Catalog, Family};
use apnlike::resultant::{expand_product, parse_bpoly, parse_factored, resultant_y};
use apnlike::scan::{self, Basis, ClaimPredicate, Equivalence, ScanReport};
use apnlike::spectra::{classify, ClassificationRecord};
use apnlike::{Error, Field};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "apnlike",
    version,
    about = "Differential and boomerang analysis of power maps over GF(2^n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Show the field GF(2^n) used by every other command.
    Field {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Classify a single exponent.
    Analyze {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u64,
        /// Also compute the boomerang uniformity.
        #[arg(long)]
        bu: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Classify every cyclotomic coset of exponents.
    Scan {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        bu: bool,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        threads: Threads,
    },
    /// Check a family's proven properties on every exponent it generates.
    Verify {
        family: String,
        #[arg(long)]
        n: u32,
        /// Check boomerang claims too.
        #[arg(long)]
        bu: bool,
        #[command(flatten)]
        threads: Threads,
    },
    /// Scan, then list cosets satisfying a claim that no family explains.
    Coverage {
        #[arg(long)]
        n: u32,
        /// Conjunction of flags, e.g. "locally_apn & !apn" or "bu=2 & !apn".
        #[arg(long)]
        claim: String,
        /// Comma-separated families allowed to explain (default: every
        /// family carrying the claim).
        #[arg(long, value_delimiter = ',')]
        families: Option<Vec<String>>,
        /// Also identify permutation exponents with their inverses.
        #[arg(long)]
        inverse: bool,
        /// Comma-separated coset reps expected to stay unexplained.
        #[arg(long, value_delimiter = ',')]
        expect: Vec<u64>,
        #[command(flatten)]
        threads: Threads,
    },
    /// Dickson polynomial checks.
    Dickson(DicksonArgs),
    /// Resultant with respect to y of two polynomials over GF(2).
    Resultant {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        /// Factored form the resultant must expand to, e.g. "x^2 (x+1)^2".
        #[arg(long)]
        expect: Option<String>,
    },
}

#[derive(Args, Debug)]
struct Threads {
    /// Worker cap; results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args, Debug)]
struct DicksonArgs {
    /// Check whether D_j(., 1) permutes T_1 inside GF(2^m).
    #[arg(long, requires_all = ["m", "j"])]
    check_t1: bool,
    /// Check whether D_k(., a) permutes GF(2^n).
    #[arg(long, requires_all = ["n", "k"], conflicts_with = "check_t1")]
    check_field: bool,
    /// Print the coefficients of D_k.
    #[arg(long)]
    coeffs: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    j: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, default_value_t = 1)]
    a: u32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

enum Failure {
    /// A checked property did not hold.
    Claim(String),
    Usage(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Field { n, format } => field_cmd(n, format),
        Command::Analyze { n, d, bu, format } => analyze_cmd(n, d, bu, format),
        Command::Scan {
            n,
            bu,
            out,
            format,
            threads,
        } => scan_cmd(n, bu, out, format, threads.threads),
        Command::Verify {
            family,
            n,
            bu,
            threads,
        } => verify_cmd(&family, n, bu, threads.threads),
        Command::Coverage {
            n,
            claim,
            families,
            inverse,
            expect,
            threads,
        } => coverage_cmd(n, &claim, families, inverse, expect, threads.threads),
        Command::Dickson(args) => dickson_cmd(args),
        Command::Resultant { f, g, expect } => resultant_cmd(&f, &g, expect.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Claim(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(3)
        }
    }
}

fn json<T: serde::Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn field_cmd(n: u32, format: Format) -> Outcome {
    let field = Field::new(n)?;
    let modulus_poly = apnlike::resultant::UPoly::from_bits(field.modulus() as u64);
    match format {
        Format::Json => println!(
            "{}",
            json(&serde_json::json!({
                "n": n,
                "modulus": format!("{:#x}", field.modulus()),
                "polynomial": modulus_poly.to_string(),
                "generator": field.generator(),
                "tables": field.has_tables(),
            }))
        ),
        _ => {
            println!("n: {n}");
            println!("modulus: {:#x} ({modulus_poly})", field.modulus());
            println!("generator: {:#x}", field.generator());
            println!(
                "tables: {}",
                if field.has_tables() {
                    "log/antilog"
                } else {
                    "none (carryless multiply)"
                }
            );
        }
    }
    Ok(())
}

fn check_exponent(d: u64) -> Outcome {
    if d == 0 {
        return Err(Error::ZeroExponent.into());
    }
    Ok(())
}

fn bu_budget(n: u32, bu: bool) -> Outcome {
    const BU_MAX: u32 = 14;
    if bu && n > BU_MAX {
        return Err(Failure::Budget(format!(
            "boomerang uniformity is limited to n <= {BU_MAX} (got {n}); drop --bu"
        )));
    }
    Ok(())
}

fn classify_annotated(
    field: &Field,
    catalog: &Catalog,
    d: u64,
    bu: bool,
) -> Result<ClassificationRecord, Failure> {
    let mut rec = classify(field, d, bu)?;
    annotate(&mut rec, catalog);
    Ok(rec)
}

fn print_record(rec: &ClassificationRecord) {
    println!("n: {}", rec.n);
    println!("d: {}", rec.d);
    println!("coset_rep: {}", rec.coset_rep);
    println!("du: {}", rec.du);
    match rec.bu {
        Some(bu) => println!("bu: {bu}"),
        None => println!("bu: -"),
    }
    println!("apn: {}", rec.is_apn);
    println!("locally_apn: {}", rec.is_locally_apn);
    println!("zero_apn: {}", rec.is_zero_apn);
    println!("permutation: {}", rec.is_permutation);
    println!("families: {}", rec.matched_families.join(", "));
}

fn analyze_cmd(n: u32, d: u64, bu: bool, format: Format) -> Outcome {
    check_exponent(d)?;
    bu_budget(n, bu)?;
    let field = Field::new(n)?;
    let rec = classify_annotated(&field, &Catalog::new(n), d, bu)?;
    match format {
        Format::Json => println!("{}", json(&rec)),
        _ => print_record(&rec),
    }
    Ok(())
}

fn report_csv(report: &ScanReport) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io_err = |e: csv::Error| Failure::Usage(e.to_string());
    w.write_record([
        "rep",
        "coset_size",
        "du",
        "bu",
        "apn",
        "locally_apn",
        "zero_apn",
        "permutation",
        "families",
    ])
    .map_err(io_err)?;
    for r in &report.rows {
        w.write_record([
            r.rep.to_string(),
            r.coset_size.to_string(),
            r.du.to_string(),
            r.bu.map(|b| b.to_string()).unwrap_or_default(),
            r.apn.to_string(),
            r.locally_apn.to_string(),
            r.zero_apn.to_string(),
            r.permutation.to_string(),
            r.families.join("|"),
        ])
        .map_err(io_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn report_text(report: &ScanReport) -> String {
    let mut s = String::new();
    let bu = |b: Option<u64>| b.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
    s.push_str(&format!("n = {}, {} cosets\n", report.n, report.rows.len()));
    s.push_str("rep\tsize\tdu\tbu\tapn\tlocal\tzero\tperm\tfamilies\n");
    for r in &report.rows {
        s.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            r.rep,
            r.coset_size,
            r.du,
            bu(r.bu),
            r.apn as u8,
            r.locally_apn as u8,
            r.zero_apn as u8,
            r.permutation as u8,
            r.families.join(",")
        ));
    }
    for (claim, reps) in &report.summary.unexplained {
        s.push_str(&format!("unexplained [{claim}]: {reps:?}\n"));
    }
    s
}

fn scan_cmd(
    n: u32,
    bu: bool,
    out: Option<String>,
    format: Format,
    threads: Option<usize>,
) -> Outcome {
    let report = scan::scan(n, bu, threads)?;
    let body = match format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report_csv(&report)?,
        Format::Text => report_text(&report),
    };
    match out {
        Some(path) => fs::write(path, body)?,
        None => io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn verify_cmd(family: &str, n: u32, bu: bool, threads: Option<usize>) -> Outcome {
    let family: Family = family.parse()?;
    bu_budget(n, bu)?;
    let field = Field::new(n)?;
    let catalog = Catalog::new(n);
    let instances = family.generate(n)?;
    let run = || -> Result<Vec<ClassificationRecord>, Failure> {
        use rayon::prelude::*;
        instances
            .par_iter()
            .map(|inst| classify_annotated(&field, &catalog, inst.d, bu))
            .collect()
    };
    let records = match threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Failure::Usage(e.to_string()))?
            .install(run)?,
        None => run()?,
    };

    let claims = family.claims();
    println!(
        "family {family} at n = {n}: {} exponent(s), claims: {}",
        instances.len(),
        claims
            .iter()
            .map(|c| c.name())
            .collect::<Vec<_>>()
            .join(", ")
    );
    let mut failures = 0;
    for (inst, rec) in instances.iter().zip(&records) {
        let params: Vec<String> = inst
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let mut verdicts = Vec::new();
        for &claim in claims {
            match claim.holds_for(rec) {
                Some(true) => verdicts.push(format!("{claim}:ok")),
                Some(false) => {
                    failures += 1;
                    verdicts.push(format!("{claim}:FAIL"));
                }
                None => verdicts.push(format!("{claim}:skipped (needs --bu)")),
            }
        }
        // stronger properties are informational only
        let info: Vec<&str> = [
            (rec.is_apn, "apn"),
            (rec.is_locally_apn, "locally_apn"),
            (rec.is_zero_apn, "zero_apn"),
        ]
        .iter()
        .filter(|&&(flag, name)| flag && !claims.iter().any(|c| c.name() == name))
        .map(|&(_, name)| name)
        .collect();
        println!(
            "d={} [{}] du={} bu={} {}{}",
            inst.d,
            params.join(" "),
            rec.du,
            rec.bu.map(|b| b.to_string()).unwrap_or_else(|| "-".into()),
            verdicts.join(" "),
            if info.is_empty() {
                String::new()
            } else {
                format!(" (also: {})", info.join(", "))
            }
        );
    }
    if failures > 0 {
        return Err(Failure::Claim(format!("{failures} claim check(s) failed")));
    }
    println!("all claims hold");
    Ok(())
}

fn coverage_cmd(
    n: u32,
    claim: &str,
    families: Option<Vec<String>>,
    inverse: bool,
    expect: Vec<u64>,
    threads: Option<usize>,
) -> Outcome {
    let pred: ClaimPredicate = claim.parse()?;
    let basis = match families {
        Some(names) => Basis::Families(
            names
                .iter()
                .map(|s| s.trim().parse::<Family>())
                .collect::<Result<_, _>>()?,
        ),
        None => Basis::ByClaim,
    };
    let equivalence = if inverse {
        Equivalence::CyclotomicAndInverse
    } else {
        Equivalence::Cyclotomic
    };
    let report = scan::scan(n, pred.needs_bu(), threads)?;
    let cov = scan::coverage(&report, &pred, &basis, equivalence)?;
    println!("claim: {}", cov.claim);
    println!("families: {}", cov.families.join(", "));
    for (rep, by) in &cov.explained {
        println!("explained {rep}: {}", by.join(", "));
    }
    println!("unexplained: {:?}", cov.unexplained);
    let expected: BTreeSet<u64> = expect.into_iter().collect();
    let got: BTreeSet<u64> = cov.unexplained.iter().copied().collect();
    if got != expected {
        return Err(Failure::Claim(format!(
            "unexplained set {got:?} differs from expected {expected:?}"
        )));
    }
    Ok(())
}

fn dickson_cmd(args: DicksonArgs) -> Outcome {
    if let Some(k) = args.coeffs {
        let c = dickson_coeffs(k)?;
        let terms: Vec<String> = c
            .terms
            .iter()
            .map(|&(xd, ap)| {
                let x = match xd {
                    0 => String::new(),
                    1 => "x".into(),
                    _ => format!("x^{xd}"),
                };
                let a = match ap {
                    0 => String::new(),
                    1 => "a".into(),
                    _ => format!("a^{ap}"),
                };
                match (x.is_empty(), a.is_empty()) {
                    (true, true) => "1".into(),
                    (false, true) => x,
                    (true, false) => a,
                    (false, false) => format!("{a}*{x}"),
                }
            })
            .collect();
        println!("D_{k}(x, a) = {}", terms.join(" + "));
    }
    if args.check_t1 {
        let (m, j) = (args.m.unwrap(), args.j.unwrap());
        let field = Field::new(m)?;
        let permutes = dickson_permutes_t1(&field, m, j)?;
        let g = gcd(j as u64, (1u64 << m) + 1);
        println!(
            "m={m} j={j} permutes_t1={permutes} gcd(j, 2^m+1)={g} criterion={}",
            g == 1
        );
        if permutes != (g == 1) {
            return Err(Failure::Claim(
                "permutation verdict disagrees with gcd criterion".into(),
            ));
        }
    } else if args.check_field {
        let (n, k) = (args.n.unwrap(), args.k.unwrap());
        let field = Field::new(n)?;
        let a = field.check(args.a as u64)?;
        let permutes = dickson_permutes_field(&field, k, a)?;
        let g = gcd(k as u64, (1u64 << (2 * n)) - 1);
        println!(
            "n={n} k={k} a={a} permutes_field={permutes} gcd(k, 2^2n-1)={g} criterion={}",
            g == 1
        );
        if permutes != (g == 1) {
            return Err(Failure::Claim(
                "permutation verdict disagrees with gcd criterion".into(),
            ));
        }
    } else if args.coeffs.is_none() {
        return Err(Failure::Usage(
            "nothing to do: pass --check-t1, --check-field or --coeffs".into(),
        ));
    }
    Ok(())
}

fn resultant_cmd(f: &str, g: &str, expect: Option<&str>) -> Outcome {
    let fp = parse_bpoly(f)?;
    let gp = parse_bpoly(g)?;
    let res = resultant_y(&fp, &gp);
    println!("{res}");
    if let Some(expect) = expect {
        let want = expand_product(&parse_factored(expect)?);
        if want != res {
            return Err(Failure::Claim(format!("expected {want}")));
        }
        println!("matches {expect}");
    }
    Ok(())
}
