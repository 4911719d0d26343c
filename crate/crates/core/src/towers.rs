//! Layers of the cyclotomic Z2-extension: generators 2cos(pi/2^(n+1)), their
//! minimal polynomials, and the field labels used by imported records.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest layer whose minimal polynomial is materialised.
pub const MAX_LAYER: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerGenerator {
    pub n: u32,
    /// Coefficients in ascending degree.
    pub min_poly: Vec<BigInt>,
    pub radicand_chain: String,
}

/// Minimal polynomial of 2cos(pi/2^(n+1)), coefficients in ascending degree.
///
/// This is the Dickson polynomial D_N(x) = sum_k (-1)^k N/(N-k) C(N-k, k) x^(N-2k)
/// with N = 2^n; for n = 0 it is x.
pub fn layer_min_poly(n: u32) -> Result<Vec<BigInt>> {
    if n > MAX_LAYER {
        return Err(Error::LayerOutOfRange(n));
    }
    let big_n: u64 = 1 << n;
    if n == 0 {
        return Ok(vec![BigInt::zero(), BigInt::one()]);
    }
    let mut coeffs = vec![BigInt::zero(); big_n as usize + 1];
    let mut a = BigInt::one();
    coeffs[big_n as usize] = a.clone();
    for k in 1..=big_n / 2 {
        let num = BigInt::from((big_n - 2 * k + 2) * (big_n - 2 * k + 1));
        let den = BigInt::from(k * (big_n - k));
        let (q, rem) = (-(&a * num)).div_rem(&den);
        debug_assert!(rem.is_zero());
        a = q;
        coeffs[(big_n - 2 * k) as usize] = a.clone();
    }
    Ok(coeffs)
}

pub fn layer_generator(n: u32) -> Result<LayerGenerator> {
    let min_poly = layer_min_poly(n)?;
    let mut chain = String::from(if n == 0 { "0" } else { "sqrt(2)" });
    for _ in 1..n {
        chain = format!("sqrt(2 + {chain})");
    }
    Ok(LayerGenerator { n, min_poly, radicand_chain: chain })
}

/// Eisenstein criterion at 2: leading coefficient odd, the rest even, constant
/// term not divisible by 4.
pub fn eisenstein_at_2(poly: &[BigInt]) -> bool {
    let two = BigInt::from(2);
    let four = BigInt::from(4);
    let (lead, rest) = poly.split_last().expect("nonempty polynomial");
    lead.is_odd()
        && rest.iter().all(|c| (c % &two).is_zero())
        && !(&poly[0] % &four).is_zero()
}

/// |f(2cos(pi/2^(n+1)))| evaluated in fixed point with `bits` fractional bits.
pub fn residual_at_root(n: u32, bits: u64) -> Result<f64> {
    let poly = layer_min_poly(n)?;
    let one = BigInt::one() << bits;
    let two = &one << 1;
    // omega_1 = sqrt2, omega_{k+1} = sqrt(2 + omega_k); omega_0 = 0
    let mut w = BigInt::zero();
    for _ in 0..n {
        let t: BigInt = (&two + &w) << bits;
        w = t.sqrt();
    }
    let mut acc = BigInt::zero();
    for c in poly.iter().rev() {
        acc = ((&acc * &w) >> bits) + (c << bits);
    }
    let shift = acc.bits().saturating_sub(60);
    let mant = (acc.abs() >> shift).to_string().parse::<f64>().unwrap();
    Ok(mant * 2f64.powi(shift as i32 - bits as i32))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    /// Q_n, the n-th layer over Q.
    Qn,
    /// Q_n(sqrt p).
    QnSqrtP,
    /// k_n, the n-th layer over Q(sqrt pr).
    SmallKn,
    /// K_n, the n-th layer over Q(sqrt p, sqrt r).
    Kn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldLabel {
    pub kind: FieldKind,
    pub n: u32,
    pub p: Option<u64>,
    pub r: Option<u64>,
    pub pr: Option<u64>,
}

impl fmt::Display for FieldLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        match self.kind {
            FieldKind::Qn => write!(f, "Q{n}"),
            FieldKind::QnSqrtP => write!(f, "Q{n}(sqrt{})", self.p.unwrap()),
            FieldKind::SmallKn => write!(f, "k{n}(pr={})", self.pr.unwrap()),
            FieldKind::Kn => write!(f, "K{n}(p={},r={})", self.p.unwrap(), self.r.unwrap()),
        }
    }
}

/// Canonical label: `Q<n>`, `Q<n>(sqrt<p>)`, `k<n>(pr=<pr>)` or `K<n>(p=<p>,r=<r>)`.
pub fn field_label(kind: FieldKind, n: u32, p: Option<u64>, r: Option<u64>) -> Result<String> {
    let bad = |msg: &str| Err(Error::BadLabel(format!("{kind:?} with n={n}: {msg}")));
    let label = match kind {
        FieldKind::Qn => {
            if p.is_some() || r.is_some() {
                return bad("Q_n takes no primes");
            }
            FieldLabel { kind, n, p: None, r: None, pr: None }
        }
        FieldKind::QnSqrtP => {
            if p.is_none() || r.is_some() {
                return bad("Q_n(sqrt p) takes exactly p");
            }
            FieldLabel { kind, n, p, r: None, pr: None }
        }
        FieldKind::SmallKn | FieldKind::Kn => {
            let (Some(pv), Some(rv)) = (p, r) else {
                return bad("both p and r are required");
            };
            let pr = pv.checked_mul(rv).ok_or_else(|| Error::BadLabel("p r overflows".into()))?;
            FieldLabel { kind, n, p, r, pr: Some(pr) }
        }
    };
    Ok(label.to_string())
}

fn parse_num<T: FromStr>(s: &str, whole: &str) -> Result<T> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::BadLabel(whole.to_string()));
    }
    s.parse().map_err(|_| Error::BadLabel(whole.to_string()))
}

impl FromStr for FieldLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadLabel(s.to_string());
        let first = s.chars().next().ok_or_else(bad)?;
        let body = &s[1..];
        let (n_str, args) = match body.find('(') {
            Some(i) => {
                let inner = body[i + 1..].strip_suffix(')').ok_or_else(bad)?;
                (&body[..i], Some(inner))
            }
            None => (body, None),
        };
        let n: u32 = parse_num(n_str, s)?;
        let label = match (first, args) {
            ('Q', None) => FieldLabel { kind: FieldKind::Qn, n, p: None, r: None, pr: None },
            ('Q', Some(a)) => {
                let p = parse_num(a.strip_prefix("sqrt").ok_or_else(bad)?, s)?;
                FieldLabel { kind: FieldKind::QnSqrtP, n, p: Some(p), r: None, pr: None }
            }
            ('k', Some(a)) => {
                let pr = parse_num(a.strip_prefix("pr=").ok_or_else(bad)?, s)?;
                FieldLabel { kind: FieldKind::SmallKn, n, p: None, r: None, pr: Some(pr) }
            }
            ('K', Some(a)) => {
                let (ps, rs) = a.split_once(',').ok_or_else(bad)?;
                let p: u64 = parse_num(ps.strip_prefix("p=").ok_or_else(bad)?, s)?;
                let r: u64 = parse_num(rs.strip_prefix("r=").ok_or_else(bad)?, s)?;
                FieldLabel { kind: FieldKind::Kn, n, p: Some(p), r: Some(r), pr: p.checked_mul(r) }
            }
            _ => return Err(bad()),
        };
        if label.to_string() != s {
            return Err(bad());
        }
        Ok(label)
    }
}
