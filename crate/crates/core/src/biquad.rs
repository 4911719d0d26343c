//! Real biquadratic fields Q(sqrt m, sqrt n): unit index and class number via
//! Kuroda's formula h = q h1 h2 h3 / 4.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{condition_one, maximal_order_unit, squarefree_part, QuadUnit};
use crate::error::{Error, Result};
use crate::quadforms::class_number;
use crate::zsqrt2::{is_square_mod4, prime_pair, ZSqrt2};

/// x + y sqrt d with rational x, y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadFieldElement {
    pub x: BigRational,
    pub y: BigRational,
    pub d: u64,
}

impl fmt::Display for QuadFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})√{}", self.x, self.y, self.d)
    }
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl QuadFieldElement {
    pub fn new(x: BigRational, y: BigRational, d: u64) -> Self {
        QuadFieldElement { x, y, d }
    }

    pub fn from_ints(x: i64, y: i64, d: u64) -> Self {
        QuadFieldElement::new(rat(x), rat(y), d)
    }

    pub fn rational(x: BigRational, d: u64) -> Self {
        QuadFieldElement::new(x, BigRational::zero(), d)
    }

    pub fn from_unit(u: &QuadUnit) -> Self {
        let den = BigInt::from(u.denom);
        QuadFieldElement::new(
            BigRational::new(u.x.clone(), den.clone()),
            BigRational::new(u.y.clone(), den),
            u.d,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn norm(&self) -> BigRational {
        &self.x * &self.x - rat(self.d as i64) * &self.y * &self.y
    }

    pub fn trace(&self) -> BigRational {
        &self.x + &self.x
    }

    pub fn conj(&self) -> Self {
        QuadFieldElement::new(self.x.clone(), -self.y.clone(), self.d)
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(QuadFieldElement::new(&self.x / &n, -(&self.y / &n), self.d))
    }
}

impl Add for &QuadFieldElement {
    type Output = QuadFieldElement;
    fn add(self, o: &QuadFieldElement) -> QuadFieldElement {
        debug_assert_eq!(self.d, o.d);
        QuadFieldElement::new(&self.x + &o.x, &self.y + &o.y, self.d)
    }
}

impl Sub for &QuadFieldElement {
    type Output = QuadFieldElement;
    fn sub(self, o: &QuadFieldElement) -> QuadFieldElement {
        debug_assert_eq!(self.d, o.d);
        QuadFieldElement::new(&self.x - &o.x, &self.y - &o.y, self.d)
    }
}

impl Mul for &QuadFieldElement {
    type Output = QuadFieldElement;
    fn mul(self, o: &QuadFieldElement) -> QuadFieldElement {
        debug_assert_eq!(self.d, o.d);
        let d = rat(self.d as i64);
        QuadFieldElement::new(&self.x * &o.x + d * &self.y * &o.y, &self.x * &o.y + &self.y * &o.x, self.d)
    }
}

impl Neg for &QuadFieldElement {
    type Output = QuadFieldElement;
    fn neg(self) -> QuadFieldElement {
        QuadFieldElement::new(-self.x.clone(), -self.y.clone(), self.d)
    }
}

/// Square root of a rational number, if it is a square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

/// beta with beta^2 = alpha in Q(sqrt d), if one exists.
pub fn is_square_in_quadfield(alpha: &QuadFieldElement) -> Option<QuadFieldElement> {
    let d = alpha.d;
    if alpha.y.is_zero() {
        if let Some(s) = rational_sqrt(&alpha.x) {
            return Some(QuadFieldElement::rational(s, d));
        }
        let t = rational_sqrt(&(&alpha.x / rat(d as i64)))?;
        return Some(QuadFieldElement::new(BigRational::zero(), t, d));
    }
    let n = rational_sqrt(&alpha.norm())?;
    let two = rat(2);
    for c in [n.clone(), -n] {
        if let Some(s) = rational_sqrt(&((&alpha.x + &c) / &two)) {
            if s.is_zero() {
                continue;
            }
            let t = &alpha.y / (&two * &s);
            let beta = QuadFieldElement::new(s, t, d);
            if &beta * &beta == *alpha {
                return Some(beta);
            }
        }
    }
    None
}

/// alpha + beta sqrt n with alpha, beta in F = Q(sqrt m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiquadElement {
    pub alpha: QuadFieldElement,
    pub beta: QuadFieldElement,
    pub n: u64,
}

impl BiquadElement {
    pub fn one(m: u64, n: u64) -> Self {
        BiquadElement {
            alpha: QuadFieldElement::from_ints(1, 0, m),
            beta: QuadFieldElement::from_ints(0, 0, m),
            n,
        }
    }

    pub fn mul(&self, o: &BiquadElement) -> BiquadElement {
        let n = QuadFieldElement::rational(rat(self.n as i64), self.alpha.d);
        let alpha = &(&self.alpha * &o.alpha) + &(&n * &(&self.beta * &o.beta));
        let beta = &(&self.alpha * &o.beta) + &(&self.beta * &o.alpha);
        BiquadElement { alpha, beta, n: self.n }
    }

    pub fn neg(&self) -> BiquadElement {
        BiquadElement { alpha: -&self.alpha, beta: -&self.beta, n: self.n }
    }

    /// Square root in F(sqrt n), if any.
    pub fn sqrt(&self) -> Option<BiquadElement> {
        let m = self.alpha.d;
        let nf = QuadFieldElement::rational(rat(self.n as i64), m);
        let zero = QuadFieldElement::from_ints(0, 0, m);
        if self.beta.is_zero() {
            if let Some(g) = is_square_in_quadfield(&self.alpha) {
                return Some(BiquadElement { alpha: g, beta: zero, n: self.n });
            }
            let q = &self.alpha * &nf.inverse().unwrap();
            let g = is_square_in_quadfield(&q)?;
            return Some(BiquadElement { alpha: zero, beta: g, n: self.n });
        }
        let norm = &(&self.alpha * &self.alpha) - &(&nf * &(&self.beta * &self.beta));
        let c = is_square_in_quadfield(&norm)?;
        let half = QuadFieldElement::rational(BigRational::new(BigInt::one(), BigInt::from(2)), m);
        for cc in [c.clone(), -&c] {
            let g2 = &half * &(&self.alpha + &cc);
            if let Some(g) = is_square_in_quadfield(&g2) {
                if g.is_zero() {
                    continue;
                }
                let two_g = &g + &g;
                let dlt = &self.beta * &two_g.inverse().unwrap();
                let root = BiquadElement { alpha: g, beta: dlt, n: self.n };
                if root.mul(&root) == *self {
                    return Some(root);
                }
            }
        }
        None
    }
}

impl fmt::Display for BiquadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] + [{}]√{}", self.alpha, self.beta, self.n)
    }
}

/// A unit product (+-) e1^a e2^b e3^c that is a square in K.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareWitness {
    pub exponents: [u8; 3],
    pub sign: i8,
    pub root: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitIndex {
    pub q: u64,
    pub witnesses: Vec<SquareWitness>,
}

fn check_radicands(m: u64, n: u64) -> Result<u64> {
    for v in [m, n] {
        if v < 2 || squarefree_part(v) != v {
            return Err(Error::InvalidArgument(format!("{v} is not a squarefree radicand > 1")));
        }
    }
    if m == n {
        return Err(Error::InvalidArgument("radicands must differ".into()));
    }
    Ok(squarefree_part(m * n))
}

/// Index q = [E_K : <-1, e1, e2, e3>] with the square roots that witness it.
pub fn unit_index(m: u64, n: u64) -> Result<UnitIndex> {
    let k = check_radicands(m, n)?;
    let g = isqrt_exact(m * n / k);
    let e1 = QuadFieldElement::from_unit(&maximal_order_unit(m)?);
    let e2 = QuadFieldElement::from_unit(&maximal_order_unit(n)?);
    let e3 = QuadFieldElement::from_unit(&maximal_order_unit(k)?);
    // embed into K = Q(sqrt m)(sqrt n)
    let zero = QuadFieldElement::from_ints(0, 0, m);
    let u1 = BiquadElement { alpha: e1, beta: zero.clone(), n };
    let u2 = BiquadElement {
        alpha: QuadFieldElement::rational(e2.x.clone(), m),
        beta: QuadFieldElement::rational(e2.y.clone(), m),
        n,
    };
    // sqrt k = sqrt m sqrt n / g
    let u3 = BiquadElement {
        alpha: QuadFieldElement::rational(e3.x.clone(), m),
        beta: QuadFieldElement::new(BigRational::zero(), &e3.y / rat(g as i64), m),
        n,
    };
    let units = [u1, u2, u3];
    let mut witnesses = Vec::new();
    for mask in 0u8..8 {
        let mut u = BiquadElement::one(m, n);
        for (i, e) in units.iter().enumerate() {
            if mask >> i & 1 == 1 {
                u = u.mul(e);
            }
        }
        for sign in [1i8, -1] {
            let v = if sign == 1 { u.clone() } else { u.neg() };
            if let Some(root) = v.sqrt() {
                witnesses.push(SquareWitness {
                    exponents: [mask & 1, mask >> 1 & 1, mask >> 2 & 1],
                    sign,
                    root: root.to_string(),
                });
                break;
            }
        }
    }
    let q = witnesses.len() as u64;
    if ![1, 2, 4, 8].contains(&q) {
        return Err(Error::Hypothesis(format!("unit index {q} for ({m}, {n}) is not 1, 2, 4 or 8")));
    }
    Ok(UnitIndex { q, witnesses })
}

fn isqrt_exact(v: u64) -> u64 {
    let r = crate::arith::isqrt(v as u128) as u64;
    assert_eq!(r * r, v);
    r
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiquadField {
    pub m: u64,
    pub n: u64,
    pub k: u64,
    pub h1: u64,
    pub h2: u64,
    pub h3: u64,
    pub q: u64,
    pub h: u64,
    pub unit_index: UnitIndex,
}

impl BiquadField {
    pub fn two_part(&self) -> u64 {
        1 << self.h.trailing_zeros()
    }
}

/// Class number of Q(sqrt m, sqrt n).
pub fn kuroda_h(m: u64, n: u64) -> Result<BiquadField> {
    let k = check_radicands(m, n)?;
    let (h1, h2, h3) = (class_number(m)?, class_number(n)?, class_number(k)?);
    let unit_index = unit_index(m, n)?;
    let q = unit_index.q;
    let num = q * h1 * h2 * h3;
    if num % 4 != 0 || num == 0 {
        return Err(Error::Hypothesis(format!("q h1 h2 h3 = {num} is not divisible by 4 for ({m}, {n})")));
    }
    Ok(BiquadField { m, n, k, h1, h2, h3, q, h: num / 4, unit_index })
}

pub fn two_part(v: u64) -> u64 {
    1 << v.trailing_zeros()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub p: u64,
    pub r: u64,
    pub order: u64,
    pub p1: ZSqrt2,
    pub p1_square_mod4: Option<ZSqrt2>,
    pub extensions_distinct: bool,
    pub structure: Vec<u64>,
    pub chain: Vec<String>,
}

/// The 2-class group of k1 = Q(sqrt2, sqrt pr) is (2,2): order 4 from
/// Kuroda, plus the two distinct unramified quadratic extensions by sqrt p and
/// sqrt p1.
pub fn rank_certificate_k1(p: u64, r: u64) -> Result<RankCertificate> {
    condition_one(p, r)?;
    let field = kuroda_h(2, p * r)?;
    let order = field.two_part();
    let (p1, _) = prime_pair(p)?;
    let p1_square_mod4 = is_square_mod4(&p1)?;
    // k1(sqrt p) = k1(sqrt p1) iff p p1 is a square in k1 = Q(sqrt2)(sqrt pr)
    let pp1 = BiquadElement {
        alpha: QuadFieldElement::from_ints((p as i128 * p1.a) as i64, (p as i128 * p1.b) as i64, 2),
        beta: QuadFieldElement::from_ints(0, 0, 2),
        n: p * r,
    };
    let extensions_distinct = pp1.sqrt().is_none();
    let mut chain = vec![
        format!("#A(k1) = {order} (h = {}, q = {})", field.h, field.q),
        "k1(sqrt p)/k1 is unramified".to_string(),
    ];
    match &p1_square_mod4 {
        Some(w) => chain.push(format!("p1 = {p1} = ({w})^2 mod 4, so k1(sqrt p1)/k1 is unramified above 2")),
        None => chain.push(format!("p1 = {p1} is not a square mod 4; unramifiedness above 2 not confirmed")),
    }
    chain.push(format!("k1(sqrt p) != k1(sqrt p1): {extensions_distinct}"));
    let structure = if order == 4 && p1_square_mod4.is_some() && extensions_distinct {
        chain.push("rank >= 2 and order 4 give (2,2)".to_string());
        vec![2, 2]
    } else {
        return Err(Error::Hypothesis(chain.join("; ")));
    };
    Ok(RankCertificate { p, r, order, p1, p1_square_mod4, extensions_distinct, structure, chain })
}
