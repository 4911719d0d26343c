//! Finite 2-groups of order at most 32 held as Cayley tables: subgroup
//! lattices, commutator subgroups, abelian invariants, and the structural
//! claims about small 2-groups that the tower arguments rely on.

mod catalog;
mod claims;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::smith;

pub use catalog::{catalog, construct, construct_named, fingerprint, identify, Fingerprint, GroupSpec};
pub use claims::{
    index2_subgroup_abelianizations, verify_abelianization_22_classification, verify_order16_subgroup_claims,
    verify_product_claims, ClaimCheck, ClaimReport, ClassificationReport, ClassificationRow, Index2Subgroup,
};

pub const MAX_ORDER: usize = 32;

/// Invariant factors of a finite abelian 2-group, each dividing the next.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianType(Vec<u64>);

impl AbelianType {
    pub fn new(mut factors: Vec<u64>) -> Result<Self> {
        factors.retain(|&f| f != 1);
        if factors.iter().any(|&f| !f.is_power_of_two()) {
            return Err(Error::InvalidArgument(format!("{factors:?} are not powers of 2")));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidArgument(format!("{factors:?} is not a divisibility chain")));
        }
        Ok(AbelianType(factors))
    }

    pub fn factors(&self) -> &[u64] {
        &self.0
    }

    pub fn order(&self) -> u64 {
        self.0.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.0.len() <= 1
    }
}

impl fmt::Display for AbelianType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "(1)");
        }
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    /// Bit i is set when element i belongs to the subgroup.
    pub mask: u32,
    pub order: usize,
    pub normal: bool,
}

impl Subgroup {
    pub fn elements(&self) -> Vec<usize> {
        elements_of(self.mask)
    }
}

fn elements_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup2 {
    name: String,
    order: usize,
    /// Row-major Cayley table; element 0 is the identity.
    table: Vec<u8>,
    inverses: Vec<u8>,
}

impl FiniteGroup2 {
    /// Validates a Cayley table: 2-power order at most 32, identity at index 0,
    /// two-sided inverses and associativity over all triples.
    pub fn from_table(name: &str, order: usize, table: Vec<u8>) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::GroupTooLarge(order));
        }
        if !order.is_power_of_two() || table.len() != order * order {
            return Err(Error::InvalidArgument(format!("{name}: table of order {order} is malformed")));
        }
        let bad = |what: &str| Err(Error::InvalidArgument(format!("{name}: {what}")));
        if table.iter().any(|&x| x as usize >= order) {
            return bad("entry out of range");
        }
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        if (0..order).any(|a| at(0, a) != a || at(a, 0) != a) {
            return bad("element 0 is not the identity");
        }
        let mut inverses = Vec::with_capacity(order);
        for a in 0..order {
            match (0..order).find(|&b| at(a, b) == 0) {
                Some(b) if at(b, a) == 0 => inverses.push(b as u8),
                _ => return bad("missing two-sided inverse"),
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return bad("not associative");
                    }
                }
            }
        }
        Ok(FiniteGroup2 { name: name.to_string(), order, table, inverses })
    }

    /// Group on `0..order` with the given operation; 0 must be the identity.
    pub fn from_operation(name: &str, order: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::GroupTooLarge(order));
        }
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let c = op(a, b);
                if c >= order {
                    return Err(Error::InvalidArgument(format!("{name}: product out of range")));
                }
                table.push(c as u8);
            }
        }
        Self::from_table(name, order, table)
    }

    /// The group generated by `gens` inside an ambient multiplicative structure.
    pub fn from_generators<T: Clone + Eq + Hash>(
        name: &str,
        identity: T,
        gens: &[T],
        mul: impl Fn(&T, &T) -> T,
    ) -> Result<Self> {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let x = mul(&elems[i], g);
                if !index.contains_key(&x) {
                    if elems.len() == MAX_ORDER {
                        return Err(Error::GroupTooLarge(elems.len() + 1));
                    }
                    index.insert(x.clone(), elems.len());
                    elems.push(x);
                }
            }
            i += 1;
        }
        let n = elems.len();
        Self::from_operation(name, n, |a, b| index[&mul(&elems[a], &elems[b])])
    }

    pub fn direct_product(&self, other: &FiniteGroup2, name: &str) -> Result<Self> {
        let m = other.order;
        Self::from_operation(name, self.order * m, |a, b| self.mul(a / m, b / m) * m + other.mul(a % m, b % m))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn cayley(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).map(|a| self.element_order(a)).max().unwrap_or(1)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn full_mask(&self) -> u32 {
        if self.order == 32 { u32::MAX } else { (1u32 << self.order) - 1 }
    }

    /// Subgroup generated by the elements in `mask`.
    pub fn closure(&self, mask: u32) -> u32 {
        let gens = elements_of(mask);
        let mut elems = vec![0usize];
        let mut seen: u32 = 1;
        let mut i = 0;
        while i < elems.len() {
            for &g in &gens {
                let x = self.mul(elems[i], g);
                if seen >> x & 1 == 0 {
                    seen |= 1 << x;
                    elems.push(x);
                }
            }
            i += 1;
        }
        seen
    }

    pub fn is_normal(&self, mask: u32) -> bool {
        (0..self.order).all(|g| {
            elements_of(mask).into_iter().all(|h| mask >> self.mul(self.mul(g, h), self.inv(g)) & 1 == 1)
        })
    }

    fn subgroup(&self, mask: u32) -> Subgroup {
        Subgroup { mask, order: mask.count_ones() as usize, normal: self.is_normal(mask) }
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// G', generated by all commutators.
    pub fn commutator_subgroup(&self) -> Subgroup {
        let mut mask = 0u32;
        for a in 0..self.order {
            for b in 0..self.order {
                mask |= 1 << self.commutator(a, b);
            }
        }
        self.subgroup(self.closure(mask))
    }

    pub fn center(&self) -> Subgroup {
        let mask = (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
            .fold(0u32, |m, a| m | 1 << a);
        self.subgroup(mask)
    }

    pub fn conjugacy_classes(&self) -> Vec<u32> {
        let mut seen = 0u32;
        let mut classes = Vec::new();
        for a in 0..self.order {
            if seen >> a & 1 == 1 {
                continue;
            }
            let class = (0..self.order).fold(0u32, |m, g| m | 1 << self.mul(self.mul(g, a), self.inv(g)));
            seen |= class;
            classes.push(class);
        }
        classes
    }

    /// Every subgroup, sorted by order then mask. Starts from the cyclic
    /// subgroups and adds pairwise joins until the list is closed under joins;
    /// every subgroup is the join of its cyclic subgroups, so the fixpoint is
    /// the full lattice.
    pub fn all_subgroups(&self) -> Result<Vec<Subgroup>> {
        if self.order > MAX_ORDER {
            return Err(Error::GroupTooLarge(self.order));
        }
        let mut set: BTreeSet<u32> = (0..self.order).map(|a| self.closure(1 << a)).collect();
        loop {
            let list: Vec<u32> = set.iter().copied().collect();
            let mut grew = false;
            for (i, &x) in list.iter().enumerate() {
                for &y in &list[i + 1..] {
                    if x & y == y || x & y == x {
                        continue;
                    }
                    grew |= set.insert(self.closure(x | y));
                }
            }
            if !grew {
                break;
            }
        }
        let mut subs: Vec<Subgroup> = set.into_iter().map(|m| self.subgroup(m)).collect();
        subs.sort_by_key(|s| (s.order, s.mask));
        Ok(subs)
    }

    /// The subgroup on `mask` as a group in its own right.
    pub fn subgroup_group(&self, mask: u32, name: &str) -> Result<FiniteGroup2> {
        if self.closure(mask) != mask {
            return Err(Error::InvalidArgument(format!("{mask:#x} is not a subgroup of {}", self.name)));
        }
        let elems = elements_of(mask);
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Self::from_operation(name, elems.len(), |a, b| pos[&self.mul(elems[a], elems[b])])
    }

    /// G/N for a normal subgroup N.
    pub fn quotient(&self, normal: u32, name: &str) -> Result<FiniteGroup2> {
        if self.closure(normal) != normal || !self.is_normal(normal) {
            return Err(Error::InvalidArgument(format!("{normal:#x} is not a normal subgroup of {}", self.name)));
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for n in elements_of(normal) {
                coset_of[self.mul(g, n)] = reps.len();
            }
            reps.push(g);
        }
        Self::from_operation(name, reps.len(), |a, b| coset_of[self.mul(reps[a], reps[b])])
    }

    /// Invariant factors of an abelian group.
    pub fn abelian_invariants(&self) -> Result<AbelianType> {
        if !self.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let pres = smith::greedy_presentation(self.order, 0, |a, b| self.mul(a, b));
        AbelianType::new(pres.invariant_factors())
    }

    /// Invariant factors of G/G'.
    pub fn abelianization(&self) -> AbelianType {
        let g1 = self.commutator_subgroup();
        let q = self.quotient(g1.mask, "abelianization").expect("G' is normal");
        q.abelian_invariants().expect("G/G' is abelian")
    }

    /// Isomorphism type of a subgroup: its invariants when abelian, else its
    /// catalog name when the order is catalogued.
    pub fn subgroup_type(&self, mask: u32) -> Result<String> {
        let h = self.subgroup_group(mask, "subgroup")?;
        Ok(match h.abelian_invariants() {
            Ok(t) => t.to_string(),
            Err(_) => identify(&h).map_or_else(|| format!("nonabelian of order {}", h.order), |s| s.to_string()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(name: &str) -> FiniteGroup2 {
        construct_named(name).unwrap()
    }

    /// Invariant factors recovered from the element-order counts of an abelian 2-group.
    fn invariants_by_counting(grp: &FiniteGroup2) -> Vec<u64> {
        // #{x : x^(2^k) = 1} = prod min(f, 2^k), so successive ratios count the factors >= 2^k
        let count = |k: u32| (0..grp.order()).filter(|&a| grp.element_order(a) <= 1 << k).count();
        let at_least: Vec<u32> = (1..=7).map(|k| (count(k) / count(k - 1)).trailing_zeros()).collect();
        let mut factors = Vec::new();
        for k in 0..6 {
            for _ in 0..at_least[k] - at_least[k + 1] {
                factors.push(1u64 << (k + 1));
            }
        }
        factors
    }

    #[test]
    fn basic_properties() {
        let d8 = g("dihedral(8)");
        assert_eq!((d8.order(), d8.is_abelian(), d8.exponent()), (8, false, 4));
        let q8 = g("quaternion(8)");
        assert_eq!((0..8).filter(|&a| q8.element_order(a) == 2).count(), 1);
        assert!(matches!(construct_named("dihedral(64)"), Err(Error::GroupTooLarge(64))));
        assert!(matches!(construct_named("cyclic(8)"), Err(Error::UnknownGroup(_))));
        assert!(matches!(construct_named("semidihedral(8)"), Err(Error::UnknownGroup(_))));
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup2::from_table("t", 2, vec![0, 1, 1, 1]).is_err());
        assert!(FiniteGroup2::from_table("t", 3, vec![0; 9]).is_err());
        let z4: Vec<u8> = (0..16).map(|i| ((i / 4 + i % 4) % 4) as u8).collect();
        assert!(FiniteGroup2::from_table("t", 4, z4).is_ok());
        let bad = [0u8, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 1, 2, 0];
        assert!(FiniteGroup2::from_table("t", 4, bad.to_vec()).is_err());
    }

    #[test]
    fn commutator_subgroups() {
        for name in ["abelian(2,4)", "abelian(2,2,2,2)", "abelian(16)"] {
            assert_eq!(g(name).commutator_subgroup().order, 1);
        }
        let d16 = g("dihedral(16)");
        let c = d16.commutator_subgroup();
        assert_eq!(c.order, 4);
        assert_eq!(d16.subgroup_type(c.mask).unwrap(), "(4)");
        assert_eq!(d16.abelianization().to_string(), "(2,2)");
        assert_eq!(g("quaternion(16)").abelianization().to_string(), "(2,2)");
    }

    #[test]
    fn subgroup_lattices() {
        assert_eq!(g("abelian(2,2)").all_subgroups().unwrap().len(), 5);
        // known subgroup counts: C8 4, D8 10, Q8 6, (2,2,2) 16
        for (name, n) in [("abelian(8)", 4), ("dihedral(8)", 10), ("quaternion(8)", 6), ("abelian(2,2,2)", 16)] {
            assert_eq!(g(name).all_subgroups().unwrap().len(), n, "{name}");
        }
        assert_eq!(g("abelian(2,2,2,2,2)").all_subgroups().unwrap().len(), 374);
    }

    #[test]
    fn lattice_is_closed_under_joins_and_meets() {
        for spec in catalog(16).into_iter().chain(catalog(8)) {
            let grp = construct(&spec).unwrap();
            let subs = grp.all_subgroups().unwrap();
            let masks: BTreeSet<u32> = subs.iter().map(|s| s.mask).collect();
            for &x in &masks {
                for &y in &masks {
                    assert!(masks.contains(&grp.closure(x | y)));
                    assert!(masks.contains(&(x & y)));
                }
            }
            // brute force over all subsets is too slow at 16; check every
            // 2-generated subgroup is listed instead
            for a in 0..grp.order() {
                for b in 0..grp.order() {
                    assert!(masks.contains(&grp.closure(1 << a | 1 << b)));
                }
            }
        }
    }

    #[test]
    fn lattice_matches_subset_brute_force_at_order_8() {
        for spec in catalog(8) {
            let grp = construct(&spec).unwrap();
            let brute: BTreeSet<u32> = (0u32..256).filter(|&m| m & 1 == 1 && grp.closure(m) == m).collect();
            let listed: BTreeSet<u32> = grp.all_subgroups().unwrap().iter().map(|s| s.mask).collect();
            assert_eq!(brute, listed, "{spec}");
        }
    }

    #[test]
    fn abelian_invariants_match_element_orders() {
        for t in [vec![2], vec![8], vec![2, 4], vec![4, 4], vec![2, 2, 4], vec![2, 8], vec![2, 2, 2, 2], vec![2, 16], vec![4, 8]] {
            let grp = construct(&GroupSpec::Abelian(AbelianType::new(t.clone()).unwrap())).unwrap();
            assert_eq!(grp.abelian_invariants().unwrap().factors(), &t[..]);
            assert_eq!(invariants_by_counting(&grp), t);
        }
        assert!(matches!(g("dihedral(8)").abelian_invariants(), Err(Error::NotAbelian)));
        assert_eq!(g("abelian(8)").abelian_invariants().unwrap().to_string(), "(8)");
    }

    #[test]
    fn class_equation_and_abelianization_order() {
        for spec in catalog(16).into_iter().chain(catalog(8)).chain(["dihedral(32)", "quaternion(32)", "semidihedral(32)"].map(|s| s.parse().unwrap())) {
            let grp = construct(&spec).unwrap();
            let classes = grp.conjugacy_classes();
            assert_eq!(classes.iter().map(|c| c.count_ones() as usize).sum::<usize>(), grp.order());
            assert!(classes.iter().all(|c| grp.order().is_multiple_of(c.count_ones() as usize)));
            let z = grp.center().order;
            assert_eq!(classes.iter().filter(|c| c.count_ones() == 1).count(), z);
            let g1 = grp.commutator_subgroup().order;
            assert_eq!(g1 as u64 * grp.abelianization().order(), grp.order() as u64, "{spec}");
        }
    }

    #[test]
    fn fingerprints_distinguish_catalogs() {
        for order in [2, 4, 8, 16] {
            let specs = catalog(order);
            let prints: BTreeSet<Fingerprint> = specs.iter().map(|s| fingerprint(&construct(s).unwrap())).collect();
            assert_eq!(prints.len(), specs.len(), "order {order}");
        }
        assert_eq!(catalog(16).len(), 14);
        assert_eq!(catalog(8).len(), 5);
        for s in catalog(16) {
            assert_eq!(identify(&construct(&s).unwrap()), Some(s.clone()));
        }
    }

    #[test]
    fn quotient_and_subgroup_groups() {
        let d16 = g("dihedral(16)");
        let z = d16.center();
        assert_eq!(z.order, 2);
        let q = d16.quotient(z.mask, "D16/Z").unwrap();
        assert_eq!(identify(&q).unwrap().to_string(), "dihedral(8)");
        assert!(d16.quotient(0b101, "bad").is_err());
    }

    proptest! {
        #[test]
        fn random_products_of_subgroups(seed_a in 0usize..16, seed_b in 0usize..16, k in 0usize..14) {
            let grp = construct(&catalog(16)[k]).unwrap();
            let h = grp.closure(1 << seed_a | 1 << seed_b);
            prop_assert_eq!(grp.closure(h), h);
            prop_assert_eq!(grp.order() % h.count_ones() as usize, 0);
        }
    }
}
