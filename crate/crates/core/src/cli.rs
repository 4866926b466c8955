//! Command-line front end: tables of `(Psi_d, Xi_d)` and verification suites.

use crate::bounds::{check_coefficient_bounds, check_corollary, g_d, BoundValue, Verdict};
use crate::kraitchik::{check_symmetry, pair_for, verify_identity, KraitchikPair};
use crate::numtheory::odd_squarefree_range;
use crate::poly::DensePoly;
use crate::powersums::{
    encloses_exact, gauss_sum_numeric, power_sum_s, residue_power_sum_numeric, roots_of_unity,
};
use crate::qfield::QuadElem;
use crate::ratio::check_ratio_estimate;
use crate::realint::DEFAULT_PRECISION_MAX;
use crate::ring::BigRat;
use crate::symfunc::{binomial_polynomial, pm_polynomial};
use crate::Error;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_UNRESOLVED: i32 = 2;
/// Bad arguments or an invalid modulus.
pub const EXIT_USAGE: i32 = 3;

/// One `(Psi_d, Xi_d)` pair as printed and serialized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub d: u64,
    #[serde(rename = "D")]
    pub disc: i64,
    pub phi: u64,
    /// `a_{d,0..d'}`.
    pub a: Vec<i64>,
    /// `b_{d,1..d'}`.
    pub b: Vec<i64>,
}

impl TableRow {
    pub fn from_pair(pair: &KraitchikPair) -> Result<Self, Error> {
        Ok(Self {
            d: pair.d(),
            disc: pair.ctx.disc(),
            phi: pair.ctx.phi(),
            a: pair.a_i64()?,
            b: pair.b_i64()?,
        })
    }

    pub fn dprime(&self) -> u64 {
        self.phi / 2
    }

    pub fn psi(&self) -> DensePoly<BigInt> {
        DensePoly::from_i64(&self.a.iter().rev().copied().collect::<Vec<_>>())
    }

    pub fn xi(&self) -> DensePoly<BigInt> {
        DensePoly::from_i64(&self.b.iter().rev().copied().collect::<Vec<_>>())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(line: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(line)
    }

    /// `d,n,a_n,b_n` rows, `b_0` empty.
    /// One `[d, n, a_n, b_n]` record per index; `b_0` is empty.
    pub fn csv_records(&self) -> Vec<[String; 4]> {
        self.a
            .iter()
            .enumerate()
            .map(|(n, a)| {
                let b = n
                    .checked_sub(1)
                    .map_or(String::new(), |i| self.b[i].to_string());
                [self.d.to_string(), n.to_string(), a.to_string(), b]
            })
            .collect()
    }
}

/// Polynomial in the compact form `2X^2+X+2`.
fn compact(p: &DensePoly<BigInt>) -> String {
    p.to_string().replace(' ', "")
}

/// Aligned text table; widths adapt to the rows given.
pub fn render_text(rows: &[TableRow]) -> String {
    let header = ["d", "D", "phi", "Psi_d", "Xi_d"];
    let cells: Vec<[String; 5]> = rows
        .iter()
        .map(|r| {
            [
                r.d.to_string(),
                r.disc.to_string(),
                r.phi.to_string(),
                compact(&r.psi()),
                compact(&r.xi()),
            ]
        })
        .collect();
    let mut width = header.map(str::len);
    for c in &cells {
        for (w, s) in width.iter_mut().zip(c) {
            *w = (*w).max(s.len());
        }
    }
    let mut out = String::new();
    let mut line = |c: [&str; 5]| {
        let _ = writeln!(
            out,
            "{:>w0$}  {:>w1$}  {:>w2$}  {:<w3$}  {}",
            c[0],
            c[1],
            c[2],
            c[3],
            c[4],
            w0 = width[0],
            w1 = width[1],
            w2 = width[2],
            w3 = width[3]
        );
    };
    line(header);
    for c in &cells {
        line([&c[0], &c[1], &c[2], &c[3], &c[4]]);
    }
    out
}

pub fn render(rows: &[TableRow], format: Format) -> String {
    match format {
        Format::Text => render_text(rows),
        Format::Json => rows.iter().map(|r| r.to_json() + "\n").collect(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["d", "n", "a_n", "b_n"])
                .expect("in-memory write");
            for r in rows {
                for rec in r.csv_records() {
                    w.write_record(&rec).expect("in-memory write");
                }
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identity,
    Symmetry,
    Bounds,
    Corollary,
    Ratio,
    Symfunc,
    GaussOracle,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Identity => "identity",
            Suite::Symmetry => "symmetry",
            Suite::Bounds => "bounds",
            Suite::Corollary => "corollary",
            Suite::Ratio => "ratio",
            Suite::Symfunc => "symfunc",
            Suite::GaussOracle => "gauss-oracle",
        }
    }

    pub fn default_dmax(self) -> u64 {
        match self {
            Suite::Ratio => 149,
            Suite::GaussOracle => 101,
            Suite::Symfunc => 20,
            _ => 255,
        }
    }

    /// Indices swept by the suite: moduli `d`, or `m` for `symfunc`.
    pub fn indices(self, dmax: u64) -> Vec<u64> {
        match self {
            Suite::Symfunc => (1..=dmax).collect(),
            Suite::Identity | Suite::GaussOracle => odd_squarefree_range(3, dmax),
            _ => odd_squarefree_range(5, dmax),
        }
    }

    fn key(self) -> &'static str {
        match self {
            Suite::Symfunc => "m",
            _ => "d",
        }
    }
}

/// Outcome for one index of a suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteLine {
    pub suite: &'static str,
    pub key: &'static str,
    pub index: u64,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub verified: usize,
    pub falsified: usize,
    pub unresolved: usize,
}

impl Summary {
    pub fn of(lines: &[SuiteLine]) -> Self {
        let mut s = Summary::default();
        for l in lines {
            match l.verdict {
                Verdict::Verified => s.verified += 1,
                Verdict::Falsified => s.falsified += 1,
                Verdict::Unresolved => s.unresolved += 1,
            }
        }
        s
    }

    pub fn exit_code(&self) -> i32 {
        if self.falsified > 0 {
            EXIT_FALSIFIED
        } else if self.unresolved > 0 {
            EXIT_UNRESOLVED
        } else {
            EXIT_OK
        }
    }
}

fn bool_verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Verified
    } else {
        Verdict::Falsified
    }
}

/// Smallest integer `m` with `m >= k * v`.
fn ceil_multiple(v: &BoundValue, k: u64) -> u64 {
    (0u64..)
        .find(|&m| v.cmp_rat(&BigRat::new(BigInt::from(m), BigInt::from(k))) != Ordering::Greater)
        .expect("bound is finite")
}

/// Sample points for the ratio suite: `ceil(2G)+1`, `2 ceil(G)+5`, `100`.
pub fn ratio_points(pair: &KraitchikPair) -> Vec<u64> {
    let g = g_d(&pair.ctx);
    vec![ceil_multiple(&g, 2) + 1, 2 * ceil_multiple(&g, 1) + 5, 100]
}

fn identity_line(pair: &KraitchikPair) -> Result<(Verdict, String), Error> {
    let check = verify_identity(pair)?;
    let detail = match check.first_mismatch {
        None => format!(
            "4*Phi = Psi^2 - ({})*Xi^2, degree {}",
            pair.ctx.disc(),
            pair.ctx.phi()
        ),
        Some(k) => format!("mismatch at X^{k}"),
    };
    Ok((bool_verdict(check.holds), detail))
}

fn symmetry_line(pair: &KraitchikPair) -> (Verdict, String) {
    let r = check_symmetry(pair);
    let observed: Vec<String> = r
        .b_signs_observed
        .iter()
        .map(|s| format!("{s:+}"))
        .collect();
    let mut detail = format!(
        "a sign {:+}, b sign expected {:+}, observed [{}]",
        if pair.dprime().is_multiple_of(2) {
            1
        } else {
            -1
        },
        r.b_sign_expected,
        observed.join(",")
    );
    if let Some(n) = r.a_first_violation {
        let _ = write!(detail, ", a violation at n={n}");
    }
    if !r.b_rule_holds() {
        detail.push_str(", b rule deviates");
    }
    (bool_verdict(r.a_holds), detail)
}

fn bounds_line(pair: &KraitchikPair, max_prec: u32) -> Result<(Verdict, String), Error> {
    let mut verdicts = Vec::new();
    let mut conjugate = Vec::new();
    let mut bad = Vec::new();
    for n in 0..=pair.dprime() {
        let r = check_coefficient_bounds(pair, n, max_prec)?;
        if r.verdict() != Verdict::Verified {
            bad.push(format!("n={n}: modulus {}, l1 {}", r.modulus, r.l1));
        }
        verdicts.push(r.verdict());
        conjugate.push(r.conjugate);
    }
    let mut detail = format!(
        "n=0..{}, conjugate variant {}",
        pair.dprime(),
        Verdict::combine(conjugate)
    );
    for b in bad {
        let _ = write!(detail, "; {b}");
    }
    Ok((Verdict::combine(verdicts), detail))
}

fn corollary_line(pair: &KraitchikPair, max_prec: u32) -> Result<(Verdict, String), Error> {
    let mut literal = Vec::new();
    let mut disc = Vec::new();
    let mut bad = Vec::new();
    for n in 1..=pair.dprime() {
        let r = check_corollary(pair, n, max_prec)?;
        if r.literal != Verdict::Verified {
            bad.push(format!("n={n}: {}", r.literal));
        }
        literal.push(r.literal);
        disc.push(r.disc_variant);
    }
    let mut detail = format!(
        "n=1..{}, D variant {}",
        pair.dprime(),
        Verdict::combine(disc)
    );
    for b in bad {
        let _ = write!(detail, "; {b}");
    }
    Ok((Verdict::combine(literal), detail))
}

fn ratio_line(pair: &KraitchikPair, max_prec: u32) -> Result<(Verdict, String), Error> {
    let mut verdicts = Vec::new();
    let mut parts = Vec::new();
    for x in ratio_points(pair) {
        let r = check_ratio_estimate(pair, &BigRat::from_integer(BigInt::from(x)), max_prec)?;
        verdicts.push(r.verdict);
        if r.verdict == Verdict::Verified {
            parts.push(format!("x={x} {}", r.verdict));
        } else {
            parts.push(format!(
                "x={x} {} (lhs {:.6e} vs rhs {:.6e})",
                r.verdict,
                r.lhs_exact_f64(),
                r.rhs_enclosure.mid_f64()
            ));
        }
    }
    Ok((Verdict::combine(verdicts), parts.join(", ")))
}

fn symfunc_line(m: u64) -> (Verdict, String) {
    let ok = pm_polynomial(m as u32) == binomial_polynomial(m as u32);
    (bool_verdict(ok), format!("P_{m} = binom(X, {m})"))
}

/// Enclosure width target for the numeric power-sum oracle, as `2^-30 < 1e-9`.
const ORACLE_WIDTH_LOG2: i64 = -30;
const ORACLE_PRECISION: u32 = 96;

fn gauss_oracle_line(d: u64) -> Result<(Verdict, String), Error> {
    let ctx = crate::powersums::DiscriminantContext::new(d)?;
    let roots = roots_of_unity(d, ORACLE_PRECISION);
    let mut worst = i64::MIN;
    let mut misses = Vec::new();
    for k in 1..=d {
        let iv = residue_power_sum_numeric(&roots, k);
        let w = iv.width();
        worst = worst.max(if w.is_zero() { i64::MIN } else { w.magnitude() });
        if !encloses_exact(&iv, &power_sum_s(&ctx, k)) {
            misses.push(k);
        }
    }
    let g = gauss_sum_numeric(d, 1, 20);
    let g_ok = encloses_exact(&g, &QuadElem::sqrt_of(ctx.disc())?);
    let ok = misses.is_empty() && worst < ORACLE_WIDTH_LOG2 && g_ok;
    let mut detail = format!("k=1..{d}, width < 2^{}", worst.max(-999) + 1);
    if !misses.is_empty() {
        let _ = write!(detail, ", outside enclosure at k={misses:?}");
    }
    if !g_ok {
        detail.push_str(", g_1 != sqrt(D)");
    }
    Ok((bool_verdict(ok), detail))
}

/// Runs one suite at one index.
pub fn run_one(suite: Suite, index: u64, max_prec: u32) -> SuiteLine {
    let result = match suite {
        Suite::Symfunc => Ok(symfunc_line(index)),
        Suite::GaussOracle => gauss_oracle_line(index),
        _ => pair_for(index).and_then(|pair| match suite {
            Suite::Identity => identity_line(&pair),
            Suite::Symmetry => Ok(symmetry_line(&pair)),
            Suite::Bounds => bounds_line(&pair, max_prec),
            Suite::Corollary => corollary_line(&pair, max_prec),
            Suite::Ratio => ratio_line(&pair, max_prec),
            Suite::Symfunc | Suite::GaussOracle => unreachable!(),
        }),
    };
    let (verdict, detail) = result.unwrap_or_else(|e| (Verdict::Falsified, format!("error: {e}")));
    SuiteLine {
        suite: suite.name(),
        key: suite.key(),
        index,
        verdict,
        detail,
    }
}

/// Runs a suite over all its indices up to `dmax`, results in ascending order.
pub fn run_suite(suite: Suite, dmax: u64, max_prec: u32, jobs: usize) -> Vec<SuiteLine> {
    let indices = suite.indices(dmax);
    let work = || {
        indices
            .par_iter()
            .map(|&i| run_one(suite, i, max_prec))
            .collect::<Vec<_>>()
    };
    if jobs <= 1 {
        indices
            .iter()
            .map(|&i| run_one(suite, i, max_prec))
            .collect()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map(|pool| pool.install(work))
            .unwrap_or_else(|_| work())
    }
}

pub fn render_suite(
    lines: &[SuiteLine],
    summary: &Summary,
    suite: Suite,
    format: Format,
) -> String {
    let mut out = String::new();
    match format {
        Format::Text => {
            let iw = lines
                .iter()
                .map(|l| l.index.to_string().len())
                .max()
                .unwrap_or(1);
            for l in lines {
                let _ = writeln!(
                    out,
                    "{}={:<iw$}  {:<10}  {}",
                    l.key,
                    l.index,
                    l.verdict.to_string(),
                    l.detail
                );
            }
            let _ = writeln!(
                out,
                "{}: {} verified, {} falsified, {} unresolved",
                suite.name(),
                summary.verified,
                summary.falsified,
                summary.unresolved
            );
        }
        Format::Json => {
            for l in lines {
                out.push_str(&serde_json::to_string(l).expect("plain data"));
                out.push('\n');
            }
            let s = serde_json::json!({"suite": suite.name(), "summary": summary});
            out.push_str(&s.to_string());
            out.push('\n');
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["suite", "key", "index", "verdict", "detail"])
                .expect("in-memory write");
            for l in lines {
                w.write_record([
                    l.suite.to_string(),
                    l.key.to_string(),
                    l.index.to_string(),
                    l.verdict.to_string(),
                    l.detail.clone(),
                ])
                .expect("in-memory write");
            }
            let bytes = w.into_inner().expect("in-memory flush");
            out.push_str(&String::from_utf8(bytes).expect("utf-8 fields"));
        }
    }
    out
}

/// Inclusive range `lo..hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DRange {
    pub lo: u64,
    pub hi: u64,
}

impl FromStr for DRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s
            .split_once("..")
            .ok_or_else(|| format!("expected <lo>..<hi>, got {s:?}"))?;
        let parse = |t: &str| {
            t.trim_start_matches('=')
                .parse::<u64>()
                .map_err(|e| format!("{t:?}: {e}"))
        };
        let (lo, hi) = (parse(lo)?, parse(hi)?);
        if lo < 3 {
            return Err(format!("lower bound {lo} is below 3"));
        }
        if hi < lo {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(DRange { lo, hi })
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "kraitchik",
    version,
    about = "Gauss-Kraitchik polynomials: tables and verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print (Psi_d, Xi_d) for one odd squarefree d.
    Compute {
        d: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print rows for every odd squarefree d in an inclusive range.
    Table {
        range: DRange,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Largest index swept (suite-specific default).
        #[arg(long)]
        dmax: Option<u64>,
        /// Interval precision ceiling in bits.
        #[arg(long, env = "KRAITCHIK_PRECISION_MAX", default_value_t = DEFAULT_PRECISION_MAX)]
        precision_max: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn compute_row(d: u64) -> Result<TableRow, Error> {
    let pair = pair_for(d)?;
    let check = verify_identity(&pair)?;
    assert!(check.holds, "identity fails for d = {d}");
    TableRow::from_pair(&pair)
}

pub fn table_rows(range: DRange, jobs: usize) -> Result<Vec<TableRow>, Error> {
    let ds = odd_squarefree_range(range.lo, range.hi);
    let work = || {
        ds.par_iter()
            .map(|&d| pair_for(d).and_then(|p| TableRow::from_pair(&p)))
            .collect()
    };
    if jobs <= 1 {
        ds.iter()
            .map(|&d| pair_for(d).and_then(|p| TableRow::from_pair(&p)))
            .collect()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map(|pool| pool.install(work))
            .unwrap_or_else(|_| work())
    }
}

/// Executes a parsed command, writing to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let written = match cli.command {
        Command::Compute { d, format } => match compute_row(d) {
            Ok(row) => out.write_all(render(&[row], format).as_bytes()),
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
        },
        Command::Table {
            range,
            format,
            jobs,
        } => match table_rows(range, jobs) {
            Ok(rows) => out.write_all(render(&rows, format).as_bytes()),
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
        },
        Command::Verify {
            suite,
            dmax,
            precision_max,
            jobs,
            format,
        } => {
            let lines = run_suite(
                suite,
                dmax.unwrap_or(suite.default_dmax()),
                precision_max,
                jobs,
            );
            let summary = Summary::of(&lines);
            if let Err(e) = out.write_all(render_suite(&lines, &summary, suite, format).as_bytes())
            {
                let _ = writeln!(err, "error: {e}");
            }
            return summary.exit_code();
        }
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        assert_eq!("5..13".parse::<DRange>(), Ok(DRange { lo: 5, hi: 13 }));
        assert_eq!("5..=13".parse::<DRange>(), Ok(DRange { lo: 5, hi: 13 }));
        assert!("1..13".parse::<DRange>().is_err());
        assert!("13..5".parse::<DRange>().is_err());
        assert!("13".parse::<DRange>().is_err());
    }

    #[test]
    fn row_for_five() {
        let row = compute_row(5).unwrap();
        assert_eq!((row.a.clone(), row.b.clone()), (vec![2, 1, 2], vec![1, 0]));
        assert_eq!(compact(&row.psi()), "2X^2+X+2");
        assert_eq!(compact(&row.xi()), "X");
        assert_eq!(
            row.to_json(),
            r#"{"d":5,"D":5,"phi":4,"a":[2,1,2],"b":[1,0]}"#
        );
        assert_eq!(
            render(&[row], Format::Csv),
            "d,n,a_n,b_n\n5,0,2,\n5,1,1,1\n5,2,2,0\n"
        );
    }

    #[test]
    fn compute_rejects_bad_moduli() {
        let msg = |d| compute_row(d).unwrap_err().to_string();
        assert!(msg(9).contains("not squarefree"));
        assert!(msg(10).contains("even"));
        assert!(msg(1).contains("too small"));
    }

    #[test]
    fn table_counts() {
        let rows = table_rows(DRange { lo: 5, hi: 13 }, 1).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.d).collect::<Vec<_>>(),
            vec![5, 7, 11, 13]
        );
        assert_eq!(table_rows(DRange { lo: 5, hi: 5 }, 1).unwrap().len(), 1);
        let sieve = (5..=149u64)
            .filter(|&d| d % 2 == 1 && (3..=12u64).all(|p| d % (p * p) != 0))
            .count();
        assert_eq!(
            table_rows(DRange { lo: 5, hi: 149 }, 2).unwrap().len(),
            sieve
        );
    }

    #[test]
    fn ratio_points_for_small_d() {
        // G_5 = golden ratio: ceil(2G)+1 = 5, 2 ceil(G)+5 = 9
        assert_eq!(ratio_points(&pair_for(5).unwrap()), vec![5, 9, 100]);
        // G_15 = (1+sqrt(15))/2 = 2.43...
        assert_eq!(ratio_points(&pair_for(15).unwrap()), vec![6, 11, 100]);
    }

    #[test]
    fn exit_codes() {
        let s = |v, f, u| Summary {
            verified: v,
            falsified: f,
            unresolved: u,
        };
        assert_eq!(s(3, 0, 0).exit_code(), EXIT_OK);
        assert_eq!(s(3, 1, 1).exit_code(), EXIT_FALSIFIED);
        assert_eq!(s(3, 0, 1).exit_code(), EXIT_UNRESOLVED);
    }

    #[test]
    fn small_suites_pass() {
        for suite in [
            Suite::Identity,
            Suite::Symmetry,
            Suite::Symfunc,
            Suite::GaussOracle,
        ] {
            let lines = run_suite(suite, 15, 4096, 1);
            assert!(
                lines.iter().all(|l| l.verdict == Verdict::Verified),
                "{lines:?}"
            );
        }
    }
}
