//! Arithmetic in Z[sqrt2]: exact signs under both real embeddings, prime
//! splitting, quadratic residue symbols and Hecke reciprocity.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{self, condition_one, factorize, is_prime_u64, jacobi, pow_mod, solve_norm_equation_bounded, OddPrime};
use crate::error::{Error, Result};

/// a + b sqrt2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ZSqrt2 {
    pub a: i128,
    pub b: i128,
}

/// 1 + sqrt2, the fundamental unit (norm -1).
pub const FUNDAMENTAL_UNIT: ZSqrt2 = ZSqrt2 { a: 1, b: 1 };

impl ZSqrt2 {
    pub const ONE: ZSqrt2 = ZSqrt2 { a: 1, b: 0 };

    pub const fn new(a: i128, b: i128) -> Self {
        ZSqrt2 { a, b }
    }

    pub fn norm(&self) -> i128 {
        self.a * self.a - 2 * self.b * self.b
    }

    pub fn conj(&self) -> Self {
        ZSqrt2 { a: self.a, b: -self.b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Coprime to sqrt2, i.e. a odd.
    pub fn is_odd(&self) -> bool {
        self.a % 2 != 0
    }

    /// Sign of the image under sqrt2 -> +sqrt2 (embedding 0) or -sqrt2 (embedding 1).
    pub fn sign_at(&self, embedding: usize) -> i8 {
        let b = if embedding == 0 { self.b } else { -self.b };
        sign_of(self.a, b)
    }

    pub fn totally_positive(&self) -> bool {
        self.sign_at(0) > 0 && self.sign_at(1) > 0
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = *self;
        let mut acc = ZSqrt2::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// self / other when the quotient lies in Z[sqrt2].
    pub fn div_exact(&self, other: &ZSqrt2) -> Option<ZSqrt2> {
        let n = other.norm();
        if n == 0 {
            return None;
        }
        let t = *self * other.conj();
        if t.a % n == 0 && t.b % n == 0 {
            Some(ZSqrt2 { a: t.a / n, b: t.b / n })
        } else {
            None
        }
    }

    pub fn divides(&self, other: &ZSqrt2) -> bool {
        other.div_exact(self).is_some()
    }

    /// Inverse unit (1 + sqrt2)^-1 = -1 + sqrt2 raised to k.
    fn unit_pow(k: i32) -> ZSqrt2 {
        if k >= 0 {
            FUNDAMENTAL_UNIT.pow(k as u32)
        } else {
            ZSqrt2::new(-1, 1).pow((-k) as u32)
        }
    }

    /// Canonical associate: positive norm, totally positive, least |b| among
    /// the totally positive associates, b >= 0 on a tie.
    pub fn canonical_associate(&self) -> ZSqrt2 {
        assert!(!self.is_zero(), "zero has no canonical associate");
        let mut x = *self;
        if x.norm() < 0 {
            x = x * FUNDAMENTAL_UNIT;
        }
        if x.sign_at(0) < 0 {
            x = -x;
        }
        let up = ZSqrt2::unit_pow(2);
        let down = ZSqrt2::unit_pow(-2);
        loop {
            let cands = [x * up, x * down];
            let best = cands.into_iter().min_by_key(|c| c.b.abs()).unwrap();
            if best.b.abs() < x.b.abs() {
                x = best;
            } else {
                break;
            }
        }
        if x.b < 0 {
            // a tie between b and -b among associates
            for c in [x * up, x * down] {
                if c.b == -x.b {
                    x = c;
                }
            }
        }
        x
    }
}

fn sign_of(a: i128, b: i128) -> i8 {
    if a == 0 && b == 0 {
        return 0;
    }
    if a >= 0 && b >= 0 {
        return 1;
    }
    if a <= 0 && b <= 0 {
        return -1;
    }
    let (a2, b2) = (a * a, 2 * b * b);
    if a > 0 {
        if a2 > b2 { 1 } else { -1 }
    } else if b2 > a2 {
        1
    } else {
        -1
    }
}

impl fmt::Display for ZSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}√2"),
            (a, b) if b < 0 => write!(f, "{a} - {}√2", -b),
            (a, b) => write!(f, "{a} + {b}√2"),
        }
    }
}

impl Add for ZSqrt2 {
    type Output = ZSqrt2;
    fn add(self, o: ZSqrt2) -> ZSqrt2 {
        ZSqrt2::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for ZSqrt2 {
    type Output = ZSqrt2;
    fn sub(self, o: ZSqrt2) -> ZSqrt2 {
        ZSqrt2::new(self.a - o.a, self.b - o.b)
    }
}

impl Mul for ZSqrt2 {
    type Output = ZSqrt2;
    fn mul(self, o: ZSqrt2) -> ZSqrt2 {
        ZSqrt2::new(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)
    }
}

impl Neg for ZSqrt2 {
    type Output = ZSqrt2;
    fn neg(self) -> ZSqrt2 {
        ZSqrt2::new(-self.a, -self.b)
    }
}

impl From<i128> for ZSqrt2 {
    fn from(a: i128) -> Self {
        ZSqrt2::new(a, 0)
    }
}

/// An odd prime element of Z[sqrt2] together with the rational prime below it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZSqrt2Prime {
    generator: ZSqrt2,
    residue_degree: u8,
    below: u64,
}

impl ZSqrt2Prime {
    pub fn new(generator: ZSqrt2) -> Result<Self> {
        let bad = || Error::NotZSqrt2Prime(generator.to_string());
        let n = generator.norm().unsigned_abs();
        let n64 = u64::try_from(n).map_err(|_| bad())?;
        if n64 > 2 && is_prime_u64(n64) {
            return Ok(ZSqrt2Prime { generator, residue_degree: 1, below: n64 });
        }
        if generator.b == 0 {
            let q = generator.a.unsigned_abs();
            if let Ok(q) = u64::try_from(q) {
                if is_prime_u64(q) && (q % 8 == 3 || q % 8 == 5) {
                    return Ok(ZSqrt2Prime { generator, residue_degree: 2, below: q });
                }
            }
        }
        Err(bad())
    }

    pub fn generator(&self) -> ZSqrt2 {
        self.generator
    }

    pub fn residue_degree(&self) -> u8 {
        self.residue_degree
    }

    pub fn below(&self) -> u64 {
        self.below
    }

    /// Image of sqrt2 in Z/q for a degree-one prime.
    fn sqrt2_image(&self) -> u64 {
        let q = self.below as i128;
        let a = self.generator.a.rem_euclid(q) as u64;
        let b = self.generator.b.rem_euclid(q) as u64;
        let b_inv = pow_mod(b, self.below - 2, self.below);
        let s = arith::mul_mod(a, b_inv, self.below);
        (self.below - s) % self.below
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Splitting {
    Split { first: ZSqrt2Prime, second: ZSqrt2Prime },
    Inert { prime: ZSqrt2Prime },
}

/// Decomposition of an odd rational prime in Z[sqrt2]. Split primes come back as
/// (a + b sqrt2, a - b sqrt2) with a^2 - 2b^2 = q and b >= 0 least, which is the
/// canonical associate of the first factor.
pub fn split_rational_prime(q: &OddPrime) -> Result<Splitting> {
    let qv = q
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument("prime exceeds 64 bits".into()))?;
    match qv % 8 {
        1 | 7 => {
            let (a, b) = solve_norm_equation_bounded(2, qv as i64, u64::MAX)?
                .expect("primes = +-1 mod 8 are norms from Z[sqrt2]");
            let a = a.to_i128().expect("fits");
            let b = b.to_i128().expect("fits");
            let first = ZSqrt2Prime::new(ZSqrt2::new(a, b))?;
            let second = ZSqrt2Prime::new(ZSqrt2::new(a, -b))?;
            Ok(Splitting::Split { first, second })
        }
        _ => Ok(Splitting::Inert { prime: ZSqrt2Prime::new(ZSqrt2::from(qv as i128))? }),
    }
}

/// Canonical pair (p1, p2) of a prime p = 1 or 7 mod 8; p1 has b >= 0.
pub fn prime_pair(p: u64) -> Result<(ZSqrt2, ZSqrt2)> {
    match split_rational_prime(&OddPrime::from_u64(p)?)? {
        Splitting::Split { first, second } => Ok((first.generator, second.generator)),
        Splitting::Inert { .. } => Err(Error::InvalidArgument(format!("{p} is inert in Z[sqrt2]"))),
    }
}

fn mul_pair(x: (u64, u64), y: (u64, u64), q: u64) -> (u64, u64) {
    let q = q as u128;
    let (a, b) = (x.0 as u128, x.1 as u128);
    let (c, d) = (y.0 as u128, y.1 as u128);
    (((a * c + 2 * ((b * d) % q)) % q) as u64, ((a * d + b * c) % q) as u64)
}

/// Quadratic residue symbol of x in the residue field of a prime.
pub fn symbol_mod_prime(x: &ZSqrt2, pi: &ZSqrt2Prime) -> i8 {
    let q = pi.below;
    let qi = q as i128;
    let (a, b) = (x.a.rem_euclid(qi) as u64, x.b.rem_euclid(qi) as u64);
    if pi.residue_degree == 1 {
        let s = pi.sqrt2_image();
        let v = (a + arith::mul_mod(b, s, q)) % q;
        return jacobi(v as i128, qi).expect("odd prime modulus");
    }
    if a == 0 && b == 0 {
        return 0;
    }
    let mut e = (q as u128 * q as u128 - 1) / 2;
    let mut base = (a, b);
    let mut acc = (1u64, 0u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_pair(acc, base, q);
        }
        base = mul_pair(base, base, q);
        e >>= 1;
    }
    match acc {
        (1, 0) => 1,
        (v, 0) if v == q - 1 => -1,
        other => unreachable!("Euler criterion gave {other:?}"),
    }
}

/// Prime factorisation of a nonzero, non-unit-free element up to a unit.
pub fn factor(y: &ZSqrt2) -> Result<Vec<(ZSqrt2Prime, u32)>> {
    if y.is_zero() {
        return Err(Error::InvalidArgument("cannot factor zero".into()));
    }
    if !y.is_odd() {
        return Err(Error::EvenElement);
    }
    let n = u64::try_from(y.norm().unsigned_abs()).map_err(|_| Error::InvalidArgument(format!("norm of {y} too large")))?;
    let mut rest = *y;
    let mut out = Vec::new();
    for (q, _) in factorize(n) {
        let primes = match split_rational_prime(&OddPrime::from_u64(q)?)? {
            Splitting::Split { first, second } => vec![first, second],
            Splitting::Inert { prime } => vec![prime],
        };
        for pi in primes {
            let mut e = 0;
            while let Some(z) = rest.div_exact(&pi.generator) {
                rest = z;
                e += 1;
            }
            if e > 0 {
                out.push((pi, e));
            }
        }
    }
    debug_assert_eq!(rest.norm().abs(), 1);
    Ok(out)
}

/// (x / y): product of residue symbols over the prime factorisation of y.
pub fn jacobi_symbol(x: &ZSqrt2, y: &ZSqrt2) -> Result<i8> {
    let mut s = 1i8;
    for (pi, e) in factor(y)? {
        let v = symbol_mod_prime(x, &pi);
        if e % 2 == 1 || v == 0 {
            s *= v;
        }
    }
    Ok(s)
}

/// Square root of x modulo 4 Z[sqrt2], if any. x must be odd.
pub fn is_square_mod4(x: &ZSqrt2) -> Result<Option<ZSqrt2>> {
    if !x.is_odd() {
        return Err(Error::EvenElement);
    }
    let (a, b) = (x.a.rem_euclid(4), x.b.rem_euclid(4));
    for c in 0..4 {
        for d in 0..4 {
            let sq = ZSqrt2::new(c, d) * ZSqrt2::new(c, d);
            if sq.a.rem_euclid(4) == a && sq.b.rem_euclid(4) == b {
                return Ok(Some(ZSqrt2::new(c, d)));
            }
        }
    }
    Ok(None)
}

/// Product over the real embeddings of -1 when both images are negative.
pub fn hecke_sign(x: &ZSqrt2, y: &ZSqrt2) -> i8 {
    (0..2)
        .map(|i| if x.sign_at(i) < 0 && y.sign_at(i) < 0 { -1 } else { 1 })
        .product()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReciprocityCheck {
    pub x_over_y: i8,
    pub sign: i8,
    pub y_over_x: i8,
    pub holds: bool,
}

/// Both sides of (x/y) = sign(x, y) (y/x).
pub fn check_hecke_reciprocity(x: &ZSqrt2, y: &ZSqrt2) -> Result<ReciprocityCheck> {
    if !x.is_odd() || !y.is_odd() {
        return Err(Error::Hypothesis("both elements must be prime to sqrt2".into()));
    }
    if is_square_mod4(x)?.is_none() && is_square_mod4(y)?.is_none() {
        return Err(Error::Hypothesis("neither element is a square mod 4".into()));
    }
    let x_over_y = jacobi_symbol(x, y)?;
    let y_over_x = jacobi_symbol(y, x)?;
    if x_over_y == 0 || y_over_x == 0 {
        return Err(Error::Hypothesis("elements are not coprime".into()));
    }
    let sign = hecke_sign(x, y);
    Ok(ReciprocityCheck { x_over_y, sign, y_over_x, holds: x_over_y == sign * y_over_x })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Inertia {
    /// r = 3 mod 8: (p_i / r) for i = 1, 2.
    RInert { symbols: [i8; 2] },
    /// r = 7 mod 8: matrix[i][j] = (p_i / r_j).
    RSplit { r1: ZSqrt2, r2: ZSqrt2, matrix: [[i8; 2]; 2] },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InertiaClassification {
    pub p: u64,
    pub r: u64,
    pub p1: ZSqrt2,
    pub p2: ZSqrt2,
    pub inertia: Inertia,
    pub holds: bool,
}

/// Residue symbols of the factors of p modulo the primes above r, with the
/// expected pattern: both -1 when r is inert, one -1 per row and column when r
/// splits.
pub fn inertia_classification(p: u64, r: u64) -> Result<InertiaClassification> {
    condition_one(p, r)?;
    let (p1, p2) = prime_pair(p)?;
    let inertia = match split_rational_prime(&OddPrime::from_u64(r)?)? {
        Splitting::Inert { prime } => Inertia::RInert {
            symbols: [symbol_mod_prime(&p1, &prime), symbol_mod_prime(&p2, &prime)],
        },
        Splitting::Split { first, second } => {
            let mut matrix = [[0i8; 2]; 2];
            for (i, pi) in [p1, p2].iter().enumerate() {
                for (j, rj) in [first, second].iter().enumerate() {
                    matrix[i][j] = symbol_mod_prime(pi, rj);
                }
            }
            Inertia::RSplit { r1: first.generator(), r2: second.generator(), matrix }
        }
    };
    let holds = match &inertia {
        Inertia::RInert { symbols } => symbols == &[-1, -1],
        Inertia::RSplit { matrix, .. } => {
            let rows = matrix.iter().all(|row| row[0] * row[1] == -1);
            let cols = (0..2).all(|j| matrix[0][j] * matrix[1][j] == -1);
            rows && cols
        }
    };
    Ok(InertiaClassification { p, r, p1, p2, inertia, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(a: i128, b: i128) -> ZSqrt2 {
        ZSqrt2::new(a, b)
    }

    fn prime(q: u64) -> Splitting {
        split_rational_prime(&OddPrime::from_u64(q).unwrap()).unwrap()
    }

    #[test]
    fn splitting_examples() {
        let Splitting::Split { first, second } = prime(41) else { panic!() };
        assert_eq!((first.generator(), second.generator()), (z(7, 2), z(7, -2)));
        assert!(first.generator().totally_positive() && second.generator().totally_positive());
        assert_eq!(first.generator() * second.generator(), z(41, 0));
        let Splitting::Split { first, second } = prime(7) else { panic!() };
        assert_eq!((first.generator(), second.generator()), (z(3, 1), z(3, -1)));
        let Splitting::Inert { prime: p3 } = prime(3) else { panic!() };
        assert_eq!((p3.residue_degree(), p3.below()), (2, 3));
    }

    #[test]
    fn prime_constructor_rejects() {
        assert!(ZSqrt2Prime::new(z(7, 0)).is_err());
        assert!(ZSqrt2Prime::new(z(9, 0)).is_err());
        assert!(ZSqrt2Prime::new(z(0, 1)).is_err());
        assert!(ZSqrt2Prime::new(z(5, 0)).is_ok());
    }

    #[test]
    fn exact_signs() {
        assert_eq!(z(1, -1).sign_at(0), -1);
        assert_eq!(z(1, -1).sign_at(1), 1);
        assert!(z(3, 2).totally_positive());
        assert!(!z(1, 1).totally_positive());
        assert!(!z(-3, 2).totally_positive());
        assert_eq!(z(0, 0).sign_at(0), 0);
        // 99^2 = 9801 > 2 * 70^2 = 9800
        assert_eq!(z(99, -70).sign_at(0), 1);
        assert_eq!(z(-99, 70).sign_at(0), -1);
    }

    #[test]
    fn symbol_examples() {
        let Splitting::Inert { prime: p3 } = prime(3) else { panic!() };
        assert_eq!(symbol_mod_prime(&z(7, 2), &p3), -1);
        assert_eq!(symbol_mod_prime(&z(7, -2), &p3), -1);
        assert_eq!(symbol_mod_prime(&z(3, 0), &p3), 0);
        let Splitting::Split { first, .. } = prime(17) else { panic!() };
        assert_eq!(symbol_mod_prime(&z(3, 1), &first), brute_symbol(&z(3, 1), &first));
    }

    /// Residue symbol from the list of all squares in Z[sqrt2]/pi.
    fn brute_symbol(x: &ZSqrt2, pi: &ZSqrt2Prime) -> i8 {
        let g = pi.generator();
        let q = pi.below() as i128;
        let reps: Vec<ZSqrt2> = if pi.residue_degree() == 1 {
            (0..q).map(|a| z(a, 0)).collect()
        } else {
            (0..q).flat_map(|a| (0..q).map(move |b| z(a, b))).collect()
        };
        let congruent = |u: &ZSqrt2, v: &ZSqrt2| g.divides(&(*u - *v));
        if congruent(x, &z(0, 0)) {
            return 0;
        }
        if reps.iter().any(|r| congruent(&(*r * *r), x)) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn symbols_match_square_enumeration() {
        for q in [3u64, 5, 7, 11, 13, 17, 23, 31, 41] {
            let primes = match prime(q) {
                Splitting::Split { first, second } => vec![first, second],
                Splitting::Inert { prime } => vec![prime],
            };
            for pi in primes {
                for a in -6..7 {
                    for b in -6..7 {
                        assert_eq!(symbol_mod_prime(&z(a, b), &pi), brute_symbol(&z(a, b), &pi), "{a}+{b}√2 mod {q}");
                    }
                }
            }
        }
    }

    #[test]
    fn squares_mod_four() {
        assert_eq!(is_square_mod4(&z(3, 2)).unwrap(), Some(z(1, 1)));
        assert_eq!(is_square_mod4(&z(1, 0)).unwrap(), Some(z(1, 0)));
        assert!(matches!(is_square_mod4(&z(2, 1)), Err(Error::EvenElement)));
        // 7 + 2 sqrt2 = 3 + 2 sqrt2 mod 4
        assert_eq!(is_square_mod4(&z(7, 2)).unwrap(), Some(z(1, 1)));
        assert_eq!(is_square_mod4(&z(3, 0)).unwrap(), None);
        let odd_squares: Vec<(i128, i128)> = (0..4)
            .flat_map(|a| (0..4).map(move |b| (a, b)))
            .filter(|&(a, b)| a % 2 == 1 && is_square_mod4(&z(a, b)).unwrap().is_some())
            .collect();
        assert_eq!(odd_squares, vec![(1, 0), (3, 2)]);
    }

    #[test]
    fn sign_examples() {
        assert_eq!(hecke_sign(&z(3, 2), &z(7, 2)), 1);
        assert_eq!(hecke_sign(&z(-1, 0), &z(-1, 0)), 1);
        assert_eq!(hecke_sign(&z(1, -1), &z(3, -3)), -1);
    }

    #[test]
    fn reciprocity_examples() {
        let c = check_hecke_reciprocity(&z(7, 2), &z(3, 0)).unwrap();
        assert_eq!((c.x_over_y, c.sign, c.y_over_x), (-1, 1, -1));
        let (q1, _) = prime_pair(17).unwrap();
        let c = check_hecke_reciprocity(&z(7, 2), &q1).unwrap();
        assert!(c.holds);
        let c = check_hecke_reciprocity(&z(9, 0), &z(7, 2)).unwrap();
        assert_eq!((c.x_over_y, c.y_over_x), (1, 1));
        assert!(matches!(check_hecke_reciprocity(&z(3, 0), &z(9, 0)), Err(Error::Hypothesis(_))));
        assert!(matches!(check_hecke_reciprocity(&z(2, 1), &z(3, 0)), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn canonical_is_fixed_point() {
        for q in arith::primes_in_class(2000, 1, 8).into_iter().chain(arith::primes_in_class(2000, 7, 8)) {
            let (p1, p2) = prime_pair(q).unwrap();
            assert_eq!(p1.canonical_associate(), p1);
            assert_eq!(p1.canonical_associate().canonical_associate(), p1);
            assert!(p1.b >= 0 && p2 == p1.conj());
            for k in -3..4 {
                let assoc = p1 * ZSqrt2::unit_pow(k);
                assert_eq!(assoc.canonical_associate(), p1, "q = {q}, k = {k}");
                assert_eq!((-assoc).canonical_associate(), p1);
            }
        }
    }

    #[test]
    fn factorisation_recovers_element() {
        for a in (1..60i128).step_by(2) {
            for b in -20..20 {
                let x = z(a, b);
                if x.norm() == 0 {
                    continue;
                }
                let mut prod = ZSqrt2::ONE;
                for (pi, e) in factor(&x).unwrap() {
                    prod = prod * pi.generator().pow(e);
                }
                let u = x.div_exact(&prod).expect("product divides x");
                assert_eq!(u.norm().abs(), 1);
            }
        }
    }

    #[test]
    fn inertia_examples() {
        let c = inertia_classification(41, 3).unwrap();
        assert_eq!(c.inertia, Inertia::RInert { symbols: [-1, -1] });
        assert!(c.holds);
        assert!(inertia_classification(41, 7).unwrap().holds);
        assert!(inertia_classification(313, 7).unwrap().holds);
        assert!(matches!(inertia_classification(73, 3), Err(Error::ConditionFailed { .. })));
    }

    #[test]
    fn inertia_sweep() {
        for p in arith::primes_in_class(10_000, 9, 16) {
            for r in arith::primes_in_class(100, 3, 4) {
                if condition_one(p, r).is_ok() {
                    assert!(inertia_classification(p, r).unwrap().holds, "p={p} r={r}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in -1_000_000i128..1_000_000, b in -1_000_000i128..1_000_000,
                                  c in -1_000_000i128..1_000_000, d in -1_000_000i128..1_000_000) {
            let (x, y) = (z(a, b), z(c, d));
            prop_assert_eq!((x * y).norm(), x.norm() * y.norm());
            prop_assert_eq!(x * x.conj(), z(x.norm(), 0));
        }

        #[test]
        fn unit_powers_flip_norm_sign(a in -1000i128..1000, b in -1000i128..1000, k in 0u32..8) {
            let x = z(a, b);
            prop_assume!(x.norm() != 0);
            let y = x * FUNDAMENTAL_UNIT.pow(k);
            let expected = if k % 2 == 0 { x.norm() } else { -x.norm() };
            prop_assert_eq!(y.norm(), expected);
        }

        #[test]
        fn signs_match_floating_point_away_from_zero(a in -10_000i128..10_000, b in -10_000i128..10_000) {
            let v = a as f64 + b as f64 * 2f64.sqrt();
            prop_assume!(v.abs() > 1e-6);
            prop_assert_eq!(z(a, b).sign_at(0), if v > 0.0 { 1 } else { -1 });
        }
    }
}
