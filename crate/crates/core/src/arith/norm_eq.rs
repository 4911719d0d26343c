//! Generalised Pell equations x^2 - d y^2 = m.
//!
//! Complete decision procedure: for every f with f^2 | m and every root z of
//! z^2 = d (mod |m/f^2|) in (-|m'|/2, |m'|/2], expand (z + sqrt d)/|m'| until
//! some later complete quotient has denominator +-1 or the (P, Q) pairs cycle.
//! Every primitive solution class is reached this way, so no search bound on y
//! is needed.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::cf::fundamental_unit;
use super::{is_prime_u64, isqrt, sqrt_mod_prime};
use crate::error::{Error, Result};

pub const DEFAULT_NORM_BOUND: u64 = 1_000_000;

/// Outcome of one expansion started at (P0, Q0) = (z, |m'|).
struct Hit {
    p0: i128,
    q0: i128,
    quotients: Vec<i128>,
    /// r^2 - d s^2 for the convergent preceding the +-1 denominator.
    value: i128,
}

fn expand(d: u64, z: i128, q0: i128) -> Option<Hit> {
    let dd = d as i128;
    let s = isqrt(d as u128) as i128;
    let (mut p, mut q) = (z, q0);
    let mut seen = HashSet::new();
    let mut quotients = Vec::new();
    loop {
        if !seen.insert((p, q)) {
            return None;
        }
        let a = if q > 0 { Integer::div_floor(&(p + s), &q) } else { Integer::div_floor(&(p + s + 1), &q) };
        quotients.push(a);
        let p_next = a * q - p;
        let q_next = (dd - p_next * p_next) / q;
        let i = quotients.len() as u32;
        if q_next == 1 || q_next == -1 {
            let sign = if i.is_multiple_of(2) { 1 } else { -1 };
            return Some(Hit { p0: z, q0, quotients, value: sign * q_next * q0 });
        }
        p = p_next;
        q = q_next;
    }
}

fn convergent(d: u64, hit: &Hit) -> (BigInt, BigInt) {
    let (mut g2, mut g1) = (BigInt::from(-hit.p0), BigInt::from(hit.q0));
    let (mut b2, mut b1) = (BigInt::from(1), BigInt::zero());
    for &a in &hit.quotients {
        let a = BigInt::from(a);
        let g = &a * &g1 + &g2;
        let b = &a * &b1 + &b2;
        g2 = std::mem::replace(&mut g1, g);
        b2 = std::mem::replace(&mut b1, b);
    }
    debug_assert_eq!(&g1 * &g1 - BigInt::from(d) * &b1 * &b1, BigInt::from(hit.value));
    (g1, b1)
}

fn roots_mod(d: u64, n: u64) -> Vec<i128> {
    let half = (n / 2) as i128;
    let lo = -(((n - 1) / 2) as i128);
    if n == 1 {
        return vec![0];
    }
    if n > 2 && is_prime_u64(n) {
        let mut out = Vec::new();
        if let Some(r) = sqrt_mod_prime(d % n, n) {
            for v in [r, (n - r) % n] {
                let c = if (v as i128) > half { v as i128 - n as i128 } else { v as i128 };
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
        out.sort();
        return out;
    }
    let dm = (d % n) as i128;
    (lo..=half).filter(|&z| (z * z).rem_euclid(n as i128) == dm).collect()
}

struct Class {
    f: u64,
    hit: Hit,
    /// The convergent solves x^2 - d y^2 = -m' and needs a norm -1 unit.
    flip: bool,
}

fn classes(d: u64, m: i64) -> Vec<Class> {
    let am = m.unsigned_abs();
    let neg_pell = fundamental_unit(d).map(|u| u.norm_value == -1).unwrap_or(false);
    let mut out = Vec::new();
    let mut f = 1u64;
    while f * f <= am {
        if am.is_multiple_of(f * f) {
            let mp = m / (f * f) as i64;
            let amp = mp.unsigned_abs();
            for z in roots_mod(d, amp) {
                if let Some(hit) = expand(d, z, amp as i128) {
                    if hit.value == mp as i128 {
                        out.push(Class { f, hit, flip: false });
                    } else if hit.value == -(mp as i128) && neg_pell {
                        out.push(Class { f, hit, flip: true });
                    }
                }
            }
        }
        f += 1;
    }
    out
}

fn check(d: u64, m: i64, bound: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument("right-hand side must be nonzero".into()));
    }
    if m.unsigned_abs() > bound {
        return Err(Error::BoundExceeded { value: m.to_string(), bound: bound.to_string() });
    }
    if d < 2 || isqrt(d as u128).pow(2) == d as u128 {
        return Err(Error::PerfectSquare(d.to_string()));
    }
    Ok(())
}

/// Whether x^2 - d y^2 = m has an integer solution, without building it.
pub fn norm_equation_solvable(d: u64, m: i64) -> Result<bool> {
    check(d, m, u64::MAX)?;
    Ok(!classes(d, m).is_empty())
}

pub fn solve_norm_equation(d: u64, m: i64) -> Result<Option<(BigInt, BigInt)>> {
    solve_norm_equation_bounded(d, m, DEFAULT_NORM_BOUND)
}

/// Nonnegative solution of x^2 - d y^2 = m with the least y (ties broken by x).
pub fn solve_norm_equation_bounded(d: u64, m: i64, bound: u64) -> Result<Option<(BigInt, BigInt)>> {
    check(d, m, bound)?;
    let unit = fundamental_unit(d)?;
    let (t, u) = (unit.x.clone(), unit.y.clone());
    let db = BigInt::from(d);
    // +1 unit used to shrink each witness
    let (x1, y1) = if unit.norm_value == 1 {
        (t.clone(), u.clone())
    } else {
        (&t * &t + &db * &u * &u, BigInt::from(2) * &t * &u)
    };
    let mut best: Option<(BigInt, BigInt)> = None;
    for class in classes(d, m) {
        let (r, s) = convergent(d, &class.hit);
        let (mut x, mut y) = if class.flip {
            (&r * &t + &s * &db * &u, &r * &u + &s * &t)
        } else {
            (r, s)
        };
        x *= class.f;
        y *= class.f;
        x = x.abs();
        y = y.abs();
        loop {
            let nx = (&x * &x1 - &db * &y * &y1).abs();
            let ny = (&y * &x1 - &x * &y1).abs();
            if ny < y {
                x = nx;
                y = ny;
            } else {
                break;
            }
        }
        let better = match &best {
            None => true,
            Some((bx, by)) => (&y, &x) < (by, bx),
        };
        if better {
            best = Some((x, y));
        }
    }
    Ok(best)
}
