//! Named constructors, the catalogs of groups of order at most 16, and
//! fingerprint identification against them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{AbelianType, FiniteGroup2, MAX_ORDER};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum GroupSpec {
    Dihedral(usize),
    Quaternion(usize),
    Semidihedral(usize),
    Modular16,
    C4SemiC4,
    V4SemiC4,
    D8CentralC4,
    Q8xC2,
    D8xC2,
    Abelian(AbelianType),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Dihedral(n) => write!(f, "dihedral({n})"),
            GroupSpec::Quaternion(n) => write!(f, "quaternion({n})"),
            GroupSpec::Semidihedral(n) => write!(f, "semidihedral({n})"),
            GroupSpec::Modular16 => write!(f, "modular16"),
            GroupSpec::C4SemiC4 => write!(f, "C4_semi_C4"),
            GroupSpec::V4SemiC4 => write!(f, "V4_semi_C4"),
            GroupSpec::D8CentralC4 => write!(f, "D8_central_C4"),
            GroupSpec::Q8xC2 => write!(f, "Q8_x_C2"),
            GroupSpec::D8xC2 => write!(f, "D8_x_C2"),
            GroupSpec::Abelian(t) => {
                let parts: Vec<String> = t.factors().iter().map(u64::to_string).collect();
                write!(f, "abelian({})", parts.join(","))
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownGroup(s.to_string());
        let fixed = match s {
            "modular16" => Some(GroupSpec::Modular16),
            "C4_semi_C4" => Some(GroupSpec::C4SemiC4),
            "V4_semi_C4" => Some(GroupSpec::V4SemiC4),
            "D8_central_C4" => Some(GroupSpec::D8CentralC4),
            "Q8_x_C2" => Some(GroupSpec::Q8xC2),
            "D8_x_C2" => Some(GroupSpec::D8xC2),
            _ => None,
        };
        if let Some(spec) = fixed {
            return Ok(spec);
        }
        let (head, rest) = s.split_once('(').ok_or_else(unknown)?;
        let args = rest.strip_suffix(')').ok_or_else(unknown)?;
        let nums: Vec<u64> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',').map(|a| a.trim().parse::<u64>().map_err(|_| unknown())).collect::<Result<_>>()?
        };
        let single = || match nums[..] {
            [n] if n.is_power_of_two() => Ok(n as usize),
            _ => Err(unknown()),
        };
        match head {
            "dihedral" => Ok(GroupSpec::Dihedral(single()?)),
            "quaternion" => Ok(GroupSpec::Quaternion(single()?)),
            "semidihedral" => Ok(GroupSpec::Semidihedral(single()?)),
            "abelian" => Ok(GroupSpec::Abelian(AbelianType::new(nums).map_err(|_| unknown())?)),
            _ => Err(unknown()),
        }
    }
}

impl From<GroupSpec> for String {
    fn from(spec: GroupSpec) -> String {
        spec.to_string()
    }
}

impl TryFrom<String> for GroupSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// <r, s | r^n, s^m = r^t, s r s^-1 = r^k>, element r^i s^j stored at i + n j.
fn metacyclic(name: &str, n: usize, m: usize, t: usize, k: usize) -> Result<FiniteGroup2> {
    let k_pow: Vec<usize> = (0..m).scan(1usize, |acc, _| {
        let v = *acc;
        *acc = *acc * k % n;
        Some(v)
    })
    .collect();
    FiniteGroup2::from_operation(name, n * m, |x, y| {
        let (i, j) = (x % n, x / n);
        let (a, b) = (y % n, y / n);
        let mut e = i + a * k_pow[j];
        let mut f = j + b;
        if f >= m {
            f -= m;
            e += t;
        }
        e % n + n * f
    })
}

fn cyclic(n: usize) -> Result<FiniteGroup2> {
    metacyclic(&format!("cyclic({n})"), n, 1, 0, 1)
}

/// 2x2 matrices over Z[i], entries as (re, im).
type GaussMatrix = [(i64, i64); 4];

fn gauss_mul(x: &GaussMatrix, y: &GaussMatrix) -> GaussMatrix {
    let m = |(a, b): (i64, i64), (c, d): (i64, i64)| (a * c - b * d, a * d + b * c);
    let add = |(a, b): (i64, i64), (c, d): (i64, i64)| (a + c, b + d);
    [
        add(m(x[0], y[0]), m(x[1], y[2])),
        add(m(x[0], y[1]), m(x[1], y[3])),
        add(m(x[2], y[0]), m(x[3], y[2])),
        add(m(x[2], y[1]), m(x[3], y[3])),
    ]
}

pub fn construct(spec: &GroupSpec) -> Result<FiniteGroup2> {
    let name = spec.to_string();
    let order_ok = |n: usize, min: usize| {
        if n > MAX_ORDER {
            Err(Error::GroupTooLarge(n))
        } else if n < min {
            Err(Error::UnknownGroup(name.clone()))
        } else {
            Ok(n / 2)
        }
    };
    match spec {
        GroupSpec::Dihedral(n) => {
            let h = order_ok(*n, 4)?;
            metacyclic(&name, h, 2, 0, h - 1)
        }
        GroupSpec::Quaternion(n) => {
            let h = order_ok(*n, 8)?;
            metacyclic(&name, h, 2, h / 2, h - 1)
        }
        GroupSpec::Semidihedral(n) => {
            let h = order_ok(*n, 16)?;
            metacyclic(&name, h, 2, 0, h / 2 - 1)
        }
        GroupSpec::Modular16 => metacyclic(&name, 8, 2, 0, 5),
        GroupSpec::C4SemiC4 => metacyclic(&name, 4, 4, 0, 3),
        GroupSpec::V4SemiC4 => {
            // (v, c) at v + 4c; the generator of C4 swaps the two bits of v
            let act = |v: usize, c: usize| if c % 2 == 1 { (v & 1) << 1 | v >> 1 } else { v };
            FiniteGroup2::from_operation(&name, 16, |x, y| {
                let (v, c) = (x % 4, x / 4);
                let (w, d) = (y % 4, y / 4);
                (v ^ act(w, c)) + 4 * ((c + d) % 4)
            })
        }
        GroupSpec::D8CentralC4 => {
            // Pauli group generated by X, Z and iI
            let one = [(1, 0), (0, 0), (0, 0), (1, 0)];
            let x = [(0, 0), (1, 0), (1, 0), (0, 0)];
            let z = [(1, 0), (0, 0), (0, 0), (-1, 0)];
            let i = [(0, 1), (0, 0), (0, 0), (0, 1)];
            FiniteGroup2::from_generators(&name, one, &[x, z, i], gauss_mul)
        }
        GroupSpec::Q8xC2 => construct(&GroupSpec::Quaternion(8))?.direct_product(&cyclic(2)?, &name),
        GroupSpec::D8xC2 => construct(&GroupSpec::Dihedral(8))?.direct_product(&cyclic(2)?, &name),
        GroupSpec::Abelian(t) => {
            let order = t.order() as usize;
            if order > MAX_ORDER {
                return Err(Error::GroupTooLarge(order));
            }
            let mut g = cyclic(1)?;
            for &f in t.factors() {
                g = g.direct_product(&cyclic(f as usize)?, &name)?;
            }
            Ok(FiniteGroup2 { name, ..g })
        }
    }
}

pub fn construct_named(name: &str) -> Result<FiniteGroup2> {
    construct(&name.parse()?)
}

fn abelian(f: &[u64]) -> GroupSpec {
    GroupSpec::Abelian(AbelianType::new(f.to_vec()).expect("valid invariant factors"))
}

/// Every group of the given order up to isomorphism, for orders 1 to 16.
pub fn catalog(order: usize) -> Vec<GroupSpec> {
    match order {
        1 => vec![abelian(&[])],
        2 => vec![abelian(&[2])],
        4 => vec![abelian(&[4]), abelian(&[2, 2])],
        8 => vec![
            abelian(&[8]),
            abelian(&[2, 4]),
            abelian(&[2, 2, 2]),
            GroupSpec::Dihedral(8),
            GroupSpec::Quaternion(8),
        ],
        16 => vec![
            abelian(&[16]),
            abelian(&[2, 8]),
            abelian(&[4, 4]),
            abelian(&[2, 2, 4]),
            abelian(&[2, 2, 2, 2]),
            GroupSpec::Dihedral(16),
            GroupSpec::Quaternion(16),
            GroupSpec::Semidihedral(16),
            GroupSpec::Modular16,
            GroupSpec::C4SemiC4,
            GroupSpec::V4SemiC4,
            GroupSpec::D8CentralC4,
            GroupSpec::Q8xC2,
            GroupSpec::D8xC2,
        ],
        _ => Vec::new(),
    }
}

/// Isomorphism invariants that separate every catalogued group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: usize,
    /// Number of elements of order 2^k, k = 0..=5.
    pub order_counts: [usize; 6],
    pub center: usize,
    pub abelianization: AbelianType,
    pub subgroups: usize,
    pub normal_subgroups: usize,
}

pub fn fingerprint(g: &FiniteGroup2) -> Fingerprint {
    let mut order_counts = [0; 6];
    for a in 0..g.order() {
        order_counts[g.element_order(a).trailing_zeros() as usize] += 1;
    }
    let subs = g.all_subgroups().expect("order is bounded by construction");
    Fingerprint {
        order: g.order(),
        order_counts,
        center: g.center().order,
        abelianization: g.abelianization(),
        subgroups: subs.len(),
        normal_subgroups: subs.iter().filter(|s| s.normal).count(),
    }
}

/// Catalog entry with the same fingerprint, for orders up to 16.
pub fn identify(g: &FiniteGroup2) -> Option<GroupSpec> {
    let target = fingerprint(g);
    catalog(g.order())
        .into_iter()
        .find(|s| construct(s).map(|h| fingerprint(&h) == target).unwrap_or(false))
}
