use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::isqrt;

/// Periodic expansion sqrt(d) = [a0; (period)].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    pub a0: u64,
    pub period: Vec<u64>,
}

/// A solution of x^2 - d y^2 = norm_value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellSolution {
    pub x: BigInt,
    pub y: BigInt,
    pub norm_value: i64,
    pub d: u64,
}

impl PellSolution {
    pub fn holds(&self) -> bool {
        &self.x * &self.x - BigInt::from(self.d) * &self.y * &self.y == BigInt::from(self.norm_value)
    }
}

pub fn sqrt_cont_frac(d: u64) -> Result<ContinuedFraction> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("radicand {d} must be at least 2")));
    }
    let a0 = isqrt(d as u128) as u64;
    if a0 * a0 == d {
        return Err(Error::PerfectSquare(d.to_string()));
    }
    let (mut m, mut q, mut a) = (0u64, 1u64, a0);
    let mut period = Vec::new();
    loop {
        m = a * q - m;
        q = (d - m * m) / q;
        a = (a0 + m) / q;
        period.push(a);
        if a == 2 * a0 {
            break;
        }
    }
    Ok(ContinuedFraction { a0, period })
}

/// Minimal positive (x, y) with x^2 - d y^2 = +-1, i.e. the fundamental unit of Z[sqrt d].
pub fn fundamental_unit(d: u64) -> Result<PellSolution> {
    let cf = sqrt_cont_frac(d)?;
    let l = cf.period.len();
    let (mut p_prev, mut p) = (BigInt::from(1), BigInt::from(cf.a0));
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::from(1));
    for &a in &cf.period[..l - 1] {
        let a = BigInt::from(a);
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    let norm_value = if l % 2 == 0 { 1 } else { -1 };
    Ok(PellSolution { x: p, y: q, norm_value, d })
}

/// A unit (x + y sqrt d) / denom of the maximal order of Q(sqrt d), denom in {1, 2}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadUnit {
    pub d: u64,
    pub x: BigInt,
    pub y: BigInt,
    pub denom: u8,
    pub norm: i8,
}

impl QuadUnit {
    /// Natural logarithm of the unit (> 1) as a float.
    pub fn ln(&self) -> f64 {
        // eps = (x + sqrt(x^2 - 4N/denom^2...)) / denom; for large x the second
        // term equals x to working precision.
        let x = ln_bigint(&self.x);
        let xf = self.x.to_f64().unwrap_or(f64::INFINITY);
        let den = self.denom as f64;
        if xf.is_finite() && xf < 1e15 {
            let yf = self.y.to_f64().unwrap();
            return ((xf + yf * (self.d as f64).sqrt()) / den).ln();
        }
        x + std::f64::consts::LN_2 - den.ln()
    }
}

pub(crate) fn ln_bigint(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits < 1000 {
        return v.to_f64().unwrap().abs().ln();
    }
    let shift = bits - 64;
    let top: BigInt = v.abs() >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// Fundamental unit of the full ring of integers of Q(sqrt d), d squarefree.
///
/// For d = 1 mod 4 the unit of Z[sqrt d] is either the fundamental unit or its cube.
pub fn maximal_order_unit(d: u64) -> Result<QuadUnit> {
    let pell = fundamental_unit(d)?;
    let norm = pell.norm_value as i8;
    if d % 4 == 1 {
        // (u + v sqrt d)/2 cubed = X + Y sqrt d forces u^3 - 3 N u = 2X.
        let two_x: BigInt = &pell.x * 2;
        let guess = two_x.cbrt();
        let n = BigInt::from(norm);
        for du in -2i64..=2 {
            let u = &guess + du;
            if !u.is_positive() {
                continue;
            }
            if &u * &u * &u - BigInt::from(3) * &n * &u != two_x {
                continue;
            }
            let num = &u * &u - BigInt::from(4) * &n;
            if num.is_negative() || (&num % BigInt::from(d)) != BigInt::zero() {
                continue;
            }
            let v2 = num / BigInt::from(d);
            let v = v2.sqrt();
            if &v * &v != v2 {
                continue;
            }
            let unit = QuadUnit { d, x: u, y: v, denom: 2, norm };
            if cube_matches(&unit, &pell) {
                return Ok(unit);
            }
        }
    }
    Ok(QuadUnit { d, x: pell.x, y: pell.y, denom: 1, norm })
}

fn cube_matches(u: &QuadUnit, pell: &PellSolution) -> bool {
    // ((x + y w)/2)^3 with w^2 = d
    let d = BigInt::from(u.d);
    let (x, y) = (&u.x, &u.y);
    let cx = x * x * x + BigInt::from(3) * x * y * y * &d;
    let cy = BigInt::from(3) * x * x * y + y * y * y * &d;
    cx == &pell.x * 8 && cy == &pell.y * 8
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansions() {
        assert_eq!(sqrt_cont_frac(2).unwrap(), ContinuedFraction { a0: 1, period: vec![2] });
        assert_eq!(sqrt_cont_frac(3).unwrap(), ContinuedFraction { a0: 1, period: vec![1, 2] });
        let cf41 = sqrt_cont_frac(41).unwrap();
        assert_eq!(cf41.a0, 6);
        assert_eq!(cf41.period, vec![2, 2, 12]);
        assert!(matches!(sqrt_cont_frac(49), Err(Error::PerfectSquare(_))));
        assert!(sqrt_cont_frac(1).is_err());
    }

    #[test]
    fn palindromic_periods() {
        for d in 2..500u64 {
            if let Ok(cf) = sqrt_cont_frac(d) {
                let body = &cf.period[..cf.period.len() - 1];
                let rev: Vec<u64> = body.iter().rev().copied().collect();
                assert_eq!(body, rev.as_slice(), "d = {d}");
                assert_eq!(*cf.period.last().unwrap(), 2 * cf.a0);
            }
        }
    }

    #[test]
    fn unit_examples() {
        let u2 = fundamental_unit(2).unwrap();
        assert_eq!((u2.x, u2.y, u2.norm_value), (BigInt::from(1), BigInt::from(1), -1));
        let u3 = fundamental_unit(3).unwrap();
        assert_eq!((u3.x, u3.y, u3.norm_value), (BigInt::from(2), BigInt::from(1), 1));
        let u123 = fundamental_unit(123).unwrap();
        assert_eq!((u123.x.clone(), u123.y.clone(), u123.norm_value), (BigInt::from(122), BigInt::from(11), 1));
        assert!(u123.holds());
        let u41 = fundamental_unit(41).unwrap();
        assert_eq!((u41.x, u41.y, u41.norm_value), (BigInt::from(32), BigInt::from(5), -1));
    }

    #[test]
    fn maximal_order_units() {
        let u5 = maximal_order_unit(5).unwrap();
        assert_eq!((u5.x, u5.y, u5.denom, u5.norm), (BigInt::from(1), BigInt::from(1), 2, -1));
        let u13 = maximal_order_unit(13).unwrap();
        assert_eq!((u13.x, u13.y, u13.denom), (BigInt::from(3), BigInt::from(1), 2));
        // d = 1 mod 8 never needs the half-integral unit.
        let u17 = maximal_order_unit(17).unwrap();
        assert_eq!((u17.x, u17.y, u17.denom), (BigInt::from(4), BigInt::from(1), 1));
        let u41 = maximal_order_unit(41).unwrap();
        assert_eq!(u41.denom, 1);
        assert!((maximal_order_unit(2).unwrap().ln() - (1.0 + 2f64.sqrt()).ln()).abs() < 1e-12);
    }
}
