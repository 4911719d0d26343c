//! Hilbert symbols over Q and the ambiguous class number formula for
//! quadratic extensions.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, fundamental_unit, jacobi, squarefree_part};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Place {
    Real,
    Prime(u64),
}

/// p-adic valuation and unit part of a nonzero integer.
fn split_off(mut n: i128, p: i128) -> (u32, i128) {
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    (k, n)
}

/// Integer in the same square class as a nonzero rational.
fn square_class(x: Ratio<i64>) -> i128 {
    assert!(*x.numer() != 0, "Hilbert symbol of zero");
    *x.numer() as i128 * *x.denom() as i128
}

/// (a, b)_v for nonzero rationals a, b.
pub fn hilbert_symbol(a: Ratio<i64>, b: Ratio<i64>, v: Place) -> i8 {
    let (a, b) = (square_class(a), square_class(b));
    match v {
        Place::Real => {
            if a < 0 && b < 0 { -1 } else { 1 }
        }
        Place::Prime(2) => {
            let (alpha, u) = split_off(a, 2);
            let (beta, w) = split_off(b, 2);
            let eps = |x: i128| ((x - 1) / 2).rem_euclid(2);
            let omega = |x: i128| ((x * x - 1) / 8).rem_euclid(2);
            let e = eps(u) * eps(w) + alpha as i128 * omega(w) + beta as i128 * omega(u);
            if e % 2 == 0 { 1 } else { -1 }
        }
        Place::Prime(p) => {
            let pi = p as i128;
            let (alpha, u) = split_off(a, pi);
            let (beta, w) = split_off(b, pi);
            let mut s: i8 = if (alpha * beta) % 2 == 1 && p % 4 == 3 { -1 } else { 1 };
            if beta % 2 == 1 {
                s *= jacobi(u, pi).expect("odd prime");
            }
            if alpha % 2 == 1 {
                s *= jacobi(w, pi).expect("odd prime");
            }
            s
        }
    }
}

/// The real place and every prime dividing 2ab.
pub fn relevant_places(a: Ratio<i64>, b: Ratio<i64>) -> Vec<Place> {
    let mut primes: Vec<u64> = vec![2];
    for x in [a, b] {
        for n in [*x.numer(), *x.denom()] {
            for (p, _) in factorize(n.unsigned_abs()) {
                primes.push(p);
            }
        }
    }
    primes.sort_unstable();
    primes.dedup();
    let mut out = vec![Place::Real];
    out.extend(primes.into_iter().map(Place::Prime));
    out
}

/// Whether -1 is a norm from Q(sqrt d), by the local symbols at 2d and infinity.
pub fn minus_one_is_norm(d: u64) -> bool {
    let minus = Ratio::from_integer(-1);
    let dd = Ratio::from_integer(d as i64);
    relevant_places(minus, dd).into_iter().all(|v| hilbert_symbol(minus, dd, v) == 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusInput {
    pub base_class_number_2part: u64,
    pub t: u32,
    pub unit_norm_index: u64,
    pub unit_norm_index_units_only: Option<u64>,
}

impl GenusInput {
    fn validate(&self) -> Result<()> {
        if self.t == 0 {
            return Err(Error::InconsistentGenus("no ramified place".into()));
        }
        let pow2 = |v: u64| v.is_power_of_two();
        if !pow2(self.base_class_number_2part) || !pow2(self.unit_norm_index) {
            return Err(Error::InconsistentGenus("2-parts and indices must be powers of 2".into()));
        }
        if let Some(u) = self.unit_norm_index_units_only {
            if !pow2(u) || u < self.unit_norm_index {
                return Err(Error::InconsistentGenus(format!("units-only index {u} is invalid")));
            }
        }
        Ok(())
    }
}

/// (#A(F)^G, #B(F)^G) from the ambiguous class number formula.
pub fn ambiguous_order(input: &GenusInput) -> Result<(u64, Option<u64>)> {
    input.validate()?;
    let top = input.base_class_number_2part << (input.t - 1);
    let div = |idx: u64| {
        if !top.is_multiple_of(idx) {
            Err(Error::InconsistentGenus(format!("{top} is not divisible by the index {idx}")))
        } else {
            Ok(top / idx)
        }
    };
    let a = div(input.unit_norm_index)?;
    let b = input.unit_norm_index_units_only.map(div).transpose()?;
    Ok((a, b))
}

/// 2-rank of A(F) when the base 2-class group is trivial.
pub fn rank_bound(input: &GenusInput) -> Result<u32> {
    input.validate()?;
    if input.base_class_number_2part != 1 {
        return Err(Error::Hypothesis("base field must have trivial 2-class group".into()));
    }
    let drop = input.unit_norm_index.trailing_zeros();
    if drop > input.t - 1 {
        return Err(Error::InconsistentGenus("unit index exceeds 2^(t-1)".into()));
    }
    Ok(input.t - 1 - drop)
}

/// Real places of Q ramified in Q(sqrt d): none when d > 0.
pub fn ramified_infinite_places(d: i64) -> u32 {
    if d < 0 { 1 } else { 0 }
}

/// Genus data for the real quadratic field Q(sqrt d) over Q.
pub fn quadratic_genus_input(d: u64) -> Result<GenusInput> {
    if d < 2 || squarefree_part(d) != d {
        return Err(Error::InvalidArgument(format!("{d} is not a squarefree radicand > 1")));
    }
    let infinite = ramified_infinite_places(d as i64);
    assert_eq!(infinite, 0, "real quadratic fields are unramified at infinity");
    let disc = if d % 4 == 1 { d } else { 4 * d };
    let t = factorize(disc).len() as u32 + infinite;
    let unit_norm_index = if minus_one_is_norm(d) { 1 } else { 2 };
    let units_only = if fundamental_unit(d)?.norm_value == -1 { 1 } else { 2 };
    Ok(GenusInput {
        base_class_number_2part: 1,
        t,
        unit_norm_index,
        unit_norm_index_units_only: Some(units_only),
    })
}
