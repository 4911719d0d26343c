//! Prime scans over the condition p = 9 mod 16, (2/p)_4 = -1, per-pair
//! verification bundles, stability checks on layer sequences, and validation
//! of imported class-group records.

mod oracle;
mod stability;
mod verify;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{condition_one, is_prime_u64, jacobi, norm_equation_solvable, quartic_symbol_2_u64, solve_norm_equation_bounded};
use crate::error::{Error, Result};
use crate::zsqrt2::{prime_pair, ZSqrt2};

pub use oracle::{
    bundled_fixtures, mutation_corpus, oracle_validate, parse_records, table_rows, Finding, MutationCase, OracleRecord,
    OracleReport,
};
pub use stability::{check_stability, Stability};
pub use verify::{verify_pair, CheckResult, Provenance, VerificationReport, Verdict};

pub const MAX_SCAN: u64 = 100_000_000;
pub const MAX_PELL_SCAN: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CondOnePair {
    pub p: u64,
    pub r: u64,
    /// p = p1 p2 in Z[sqrt2].
    pub p_splitting: (ZSqrt2, ZSqrt2),
    /// p = a^2 - 2 b^2 with a, b > 0 and a least.
    pub ab: (u64, u64),
}

fn check_range(p_max: u64, limit: u64) -> Result<()> {
    if p_max > limit {
        return Err(Error::BoundExceeded { value: p_max.to_string(), bound: limit.to_string() });
    }
    Ok(())
}

/// Primes p <= p_max with p = 9 mod 16 and (2/p)_4 = -1, ascending.
pub fn qualifying_primes(p_max: u64) -> Result<Vec<u64>> {
    check_range(p_max, MAX_SCAN)?;
    let count = if p_max < 9 { 0 } else { (p_max - 9) / 16 + 1 };
    let mut out: Vec<u64> = (0..count)
        .into_par_iter()
        .map(|k| 9 + 16 * k)
        .filter(|&p| is_prime_u64(p) && quartic_symbol_2_u64(p).expect("p = 1 mod 8") == -1)
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// The least positive (a, b) with a^2 - 2 b^2 = p.
pub fn ab_decomposition(p: u64) -> Result<(u64, u64)> {
    let (x, y) = solve_norm_equation_bounded(2, p as i64, u64::MAX)?
        .ok_or_else(|| Error::InvalidArgument(format!("{p} is not of the form a^2 - 2b^2")))?;
    let (a, b) = (x.to_u64().expect("a^2 < 2p"), y.to_u64().expect("b^2 < p"));
    debug_assert_eq!(a as u128 * a as u128 - 2 * b as u128 * b as u128, p as u128);
    Ok((a, b))
}

/// All pairs (p, r) with p <= p_max, r in `r_set`, satisfying the prime condition.
pub fn enumerate_condition1(p_max: u64, r_set: &[u64]) -> Result<Vec<CondOnePair>> {
    check_range(p_max, MAX_SCAN)?;
    for &r in r_set {
        if r == 2 || !is_prime_u64(r) {
            return Err(Error::NotOddPrime(r.to_string()));
        }
    }
    let primes = qualifying_primes(p_max)?;
    let mut pairs: Vec<CondOnePair> = primes
        .par_iter()
        .flat_map_iter(|&p| r_set.iter().filter(move |&&r| condition_one(p, r).is_ok()).map(move |&r| (p, r)))
        .map(|(p, r)| {
            Ok(CondOnePair { p, r, p_splitting: prime_pair(p)?, ab: ab_decomposition(p)? })
        })
        .collect::<Result<_>>()?;
    pairs.sort_by_key(|c| (c.p, c.r));
    Ok(pairs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionRow {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub a_symbol: i8,
    pub b_symbol: i8,
    /// (a/p) = -1 exactly when (b/p) = 1.
    pub equivalence_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionReport {
    pub p_max: u64,
    pub rows: Vec<QuestionRow>,
    /// Primes with (a/p) = +1.
    pub counterexamples: Vec<u64>,
    pub equivalence_failures: Vec<u64>,
}

/// (a/p) and (b/p) for every qualifying p <= p_max.
pub fn question_scan(p_max: u64) -> Result<QuestionReport> {
    let primes = qualifying_primes(p_max)?;
    let rows: Vec<QuestionRow> = primes
        .par_iter()
        .map(|&p| {
            let (a, b) = ab_decomposition(p)?;
            let a_symbol = jacobi(a as i128, p as i128)?;
            let b_symbol = jacobi(b as i128, p as i128)?;
            Ok(QuestionRow { p, a, b, a_symbol, b_symbol, equivalence_holds: (a_symbol == -1) == (b_symbol == 1) })
        })
        .collect::<Result<_>>()?;
    let counterexamples = rows.iter().filter(|r| r.a_symbol == 1).map(|r| r.p).collect();
    let equivalence_failures = rows.iter().filter(|r| !r.equivalence_holds).map(|r| r.p).collect();
    Ok(QuestionReport { p_max, rows, counterexamples, equivalence_failures })
}

/// Whether x^2 - p y^2 = 8 or -8 has an integer solution.
pub fn pell8_solvable(p: u64) -> Result<bool> {
    Ok(norm_equation_solvable(p, 8)? || norm_equation_solvable(p, -8)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pell8Report {
    pub p_max: u64,
    pub scanned: usize,
    /// Qualifying primes for which x^2 - p y^2 = +-8 has no solution.
    pub exceptional: Vec<u64>,
}

pub fn pell8_scan(p_max: u64) -> Result<Pell8Report> {
    check_range(p_max, MAX_PELL_SCAN)?;
    let primes = qualifying_primes(p_max)?;
    let flags: Vec<bool> = primes.par_iter().map(|&p| pell8_solvable(p)).collect::<Result<_>>()?;
    let exceptional = primes.iter().zip(&flags).filter(|(_, &ok)| !ok).map(|(&p, _)| p).collect();
    Ok(Pell8Report { p_max, scanned: primes.len(), exceptional })
}
