//! Indefinite binary quadratic forms and the class groups of real quadratic
//! fields: reduction, rho-cycles, composition and group structure.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{self, fundamental_unit, isqrt, squarefree_part};
use crate::error::{Error, Result};
use crate::smith;

pub const MAX_DISCRIMINANT: i64 = 10_000_000;

/// (a, b, c) standing for a x^2 + b xy + c y^2 with discriminant b^2 - 4ac.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub disc: i128,
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

fn check_disc(d: i128) -> Result<()> {
    if d <= 0 {
        return Err(Error::InvalidArgument(format!("discriminant {d} is not positive")));
    }
    if arith::is_square(d as u128) {
        return Err(Error::PerfectSquare(d.to_string()));
    }
    Ok(())
}

impl QuadForm {
    pub fn new(a: i128, b: i128, c: i128) -> Result<Self> {
        let disc = b * b - 4 * a * c;
        check_disc(disc)?;
        Ok(QuadForm { a, b, c, disc })
    }

    /// Builds the form and checks it against a declared discriminant.
    pub fn with_discriminant(a: i128, b: i128, c: i128, disc: i128) -> Result<Self> {
        let actual = b * b - 4 * a * c;
        if actual != disc {
            return Err(Error::DiscriminantMismatch { actual, expected: disc });
        }
        check_disc(disc)?;
        Ok(QuadForm { a, b, c, disc })
    }

    /// The form (1, b, c) of discriminant d.
    pub fn principal(disc: i128) -> Result<Self> {
        let b = disc.rem_euclid(2);
        QuadForm::with_discriminant(1, b, (b * b - disc) / 4, disc)
    }

    fn sqrt_floor(&self) -> i128 {
        isqrt(self.disc as u128) as i128
    }

    /// 0 < b < sqrt D and sqrt D - b < 2|a| < sqrt D + b.
    pub fn is_reduced(&self) -> bool {
        let s = self.sqrt_floor();
        let two_a = 2 * self.a.abs();
        self.b > 0 && self.b <= s && two_a + self.b > s && two_a - self.b <= s
    }

    /// One step of the reduction operator.
    pub fn rho(&self) -> QuadForm {
        let s = self.sqrt_floor();
        let c = self.c;
        let m = 2 * c.abs();
        let r = if c.abs() <= s {
            s - (s + self.b).rem_euclid(m)
        } else {
            let r = (-self.b).rem_euclid(m);
            if r > c.abs() { r - m } else { r }
        };
        QuadForm { a: c, b: r, c: (r * r - self.disc) / (4 * c), disc: self.disc }
    }

    pub fn reduce(&self) -> QuadForm {
        let mut f = *self;
        while !f.is_reduced() {
            f = f.rho();
        }
        f
    }

    /// Dirichlet composition followed by reduction.
    pub fn compose(&self, other: &QuadForm) -> QuadForm {
        assert_eq!(self.disc, other.disc, "composition needs equal discriminants");
        let (a1, b1) = (self.a, self.b);
        let (a2, b2, c2) = (other.a, other.b, other.c);
        let s = (b1 + b2) / 2;
        let g1 = a1.extended_gcd(&a2);
        let g2 = g1.gcd.extended_gcd(&s);
        let e = g2.gcd;
        let (u, v, w) = (g1.x * g2.x, g1.y * g2.x, g2.y);
        debug_assert_eq!(u * a1 + v * a2 + w * s, e);
        let a3 = a1 * a2 / (e * e);
        let m = 2 * a3.abs();
        let b3 = (b2 + 2 * (a2 / e) * ((v * (s - b2) - w * c2).rem_euclid(m))).rem_euclid(m);
        let num = b3 * b3 - self.disc;
        debug_assert_eq!(num % (4 * a3), 0);
        QuadForm { a: a3, b: b3, c: num / (4 * a3), disc: self.disc }.reduce()
    }
}

/// D = 1 mod 4 squarefree, or D = 4m with m squarefree and m = 2, 3 mod 4.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d <= 1 {
        return false;
    }
    let d = d as u64;
    match d % 4 {
        1 => arith::is_squarefree(d),
        0 => {
            let m = d / 4;
            (m % 4 == 2 || m % 4 == 3) && arith::is_squarefree(m)
        }
        _ => false,
    }
}

/// Discriminant of Q(sqrt d) for squarefree d > 1.
pub fn field_discriminant(d: u64) -> Result<i64> {
    if d < 2 || squarefree_part(d) != d {
        return Err(Error::InvalidArgument(format!("{d} is not a squarefree radicand")));
    }
    Ok(if d % 4 == 1 { d as i64 } else { 4 * d as i64 })
}

/// Every reduced form of discriminant d.
pub fn reduced_forms(disc: i128) -> Vec<QuadForm> {
    let s = isqrt(disc as u128) as i128;
    let mut out = Vec::new();
    let mut b = if disc % 2 == 0 { 2 } else { 1 };
    while b <= s {
        let n = (disc - b * b) / 4;
        let mut a = 1;
        while a * a <= n {
            if n % a == 0 {
                let pair = if a * a == n { vec![a] } else { vec![a, n / a] };
                for x in pair {
                    if 2 * x + b > s && 2 * x - b <= s {
                        for sa in [x, -x] {
                            out.push(QuadForm { a: sa, b, c: -n / sa, disc });
                        }
                    }
                }
            }
            a += 1;
        }
        b += 2;
    }
    out
}

/// Partition of the reduced forms into rho-cycles.
#[derive(Debug, Clone)]
pub struct Cycles {
    pub disc: i128,
    pub cycles: Vec<Vec<QuadForm>>,
    index: HashMap<(i128, i128), usize>,
}

impl Cycles {
    pub fn new(disc: i128) -> Result<Self> {
        check_disc(disc)?;
        let forms = reduced_forms(disc);
        let mut index = HashMap::new();
        let mut cycles = Vec::new();
        // the principal cycle first
        let start = QuadForm::principal(disc)?.reduce();
        let mut order = vec![start];
        order.extend(forms.iter().copied());
        for f in order {
            if index.contains_key(&(f.a, f.b)) {
                continue;
            }
            let id = cycles.len();
            let mut cyc = Vec::new();
            let mut g = f;
            loop {
                index.insert((g.a, g.b), id);
                cyc.push(g);
                g = g.rho();
                if g == f {
                    break;
                }
            }
            cycles.push(cyc);
        }
        Ok(Cycles { disc, cycles, index })
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Cycle containing a reduced form.
    pub fn class_of(&self, f: &QuadForm) -> usize {
        let r = f.reduce();
        self.index[&(r.a, r.b)]
    }

    pub fn compose(&self, x: usize, y: usize) -> usize {
        self.class_of(&self.cycles[x][0].compose(&self.cycles[y][0]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadClassGroup {
    pub disc: i64,
    pub h_narrow: u64,
    pub h_wide: u64,
    /// Invariant factors of the narrow class group.
    pub invariant_factors: Vec<u64>,
    /// Invariant factors of the (wide) ideal class group.
    pub wide_invariant_factors: Vec<u64>,
    /// 2-parts of the wide invariant factors: the 2-class group.
    pub two_sylow: Vec<u64>,
    pub generators: Vec<QuadForm>,
}

/// Narrow and wide class groups of the real quadratic field of discriminant d.
pub fn class_group(disc: i64) -> Result<QuadClassGroup> {
    if disc > MAX_DISCRIMINANT {
        return Err(Error::BoundExceeded { value: disc.to_string(), bound: MAX_DISCRIMINANT.to_string() });
    }
    if !is_fundamental_discriminant(disc) {
        return Err(Error::NotFundamental(disc));
    }
    let cyc = Cycles::new(disc as i128)?;
    let h = cyc.len();

    let pres = smith::greedy_presentation(h, 0, |x, y| cyc.compose(x, y));
    let (gens, logs, relations) = (pres.generators, pres.logs, pres.relations);
    let n = gens.len();
    let invariant_factors = smith::invariant_factors(&relations, n);

    let minus = QuadForm::principal(disc as i128)?;
    let minus = QuadForm { a: -1, b: minus.b, c: -minus.c, disc: minus.disc };
    let j_class = cyc.class_of(&minus);
    let mut wide_rel = relations.clone();
    if n > 0 {
        wide_rel.push(logs[&j_class].clone());
    }
    let wide_invariant_factors = smith::invariant_factors(&wide_rel, n);
    let h_narrow = h as u64;
    let h_wide = if j_class == 0 { h_narrow } else { h_narrow / 2 };
    debug_assert_eq!(wide_invariant_factors.iter().product::<u64>(), h_wide);
    Ok(QuadClassGroup {
        disc,
        h_narrow,
        h_wide,
        two_sylow: smith::two_parts(&wide_invariant_factors),
        invariant_factors,
        wide_invariant_factors,
        generators: gens.iter().map(|&g| cyc.cycles[g][0]).collect(),
    })
}

/// Class group of Q(sqrt d) for a squarefree radicand d.
pub fn class_group_of_field(d: u64) -> Result<QuadClassGroup> {
    class_group(field_discriminant(d)?)
}

pub fn two_sylow_structure(g: &QuadClassGroup) -> Vec<u64> {
    g.two_sylow.clone()
}

/// Wide class number of Q(sqrt d).
pub fn class_number(d: u64) -> Result<u64> {
    Ok(class_group_of_field(d)?.h_wide)
}

/// h_narrow = h_wide exactly when the fundamental unit has norm -1.
pub fn narrow_wide_consistent(g: &QuadClassGroup) -> Result<bool> {
    let d = squarefree_part(g.disc as u64);
    let unit = fundamental_unit(d)?;
    let expected = if unit.norm_value == 1 { g.h_narrow / 2 } else { g.h_narrow };
    Ok(expected == g.h_wide)
}
