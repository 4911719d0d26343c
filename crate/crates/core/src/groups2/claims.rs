//! Exhaustive checks of the subgroup and abelianization claims about 2-groups
//! of order 8 and 16.

use serde::{Deserialize, Serialize};

use super::{catalog, construct, identify, AbelianType, FiniteGroup2, GroupSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub id: String,
    pub group: String,
    pub statement: String,
    pub expected: String,
    pub observed: String,
    pub witness_count: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub checks: Vec<ClaimCheck>,
}

impl ClaimReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn group(spec: GroupSpec) -> FiniteGroup2 {
    construct(&spec).expect("catalogued group")
}

/// Types of all subgroups of `g` with the given order, sorted.
fn subgroup_types(g: &FiniteGroup2, order: usize) -> Vec<String> {
    let mut types: Vec<String> = g
        .all_subgroups()
        .expect("order is bounded")
        .iter()
        .filter(|s| s.order == order)
        .map(|s| g.subgroup_type(s.mask).expect("listed subgroup"))
        .collect();
    types.sort();
    types
}

fn count_type(g: &FiniteGroup2, order: usize, ty: &str) -> usize {
    subgroup_types(g, order).iter().filter(|t| *t == ty).count()
}

fn check(id: &str, g: &FiniteGroup2, statement: &str, expected: String, observed: String, witnesses: usize) -> ClaimCheck {
    ClaimCheck {
        id: id.to_string(),
        group: g.name().to_string(),
        statement: statement.to_string(),
        holds: expected == observed,
        expected,
        observed,
        witness_count: witnesses,
    }
}

/// The four subgroup claims about groups of order 16, by full lattice scan.
pub fn verify_order16_subgroup_claims() -> ClaimReport {
    let mut checks = Vec::new();
    for spec in [GroupSpec::Dihedral(16), GroupSpec::Quaternion(16), GroupSpec::Semidihedral(16)] {
        let g = group(spec);
        let n = count_type(&g, 8, "(2,4)");
        checks.push(check("no-(2,4)-subgroup", &g, "no subgroup of type (2,4)", "0".into(), n.to_string(), n));
    }

    let g = group(GroupSpec::C4SemiC4);
    let n = count_type(&g, 4, "(2,2)");
    checks.push(check("one-(2,2)-subgroup", &g, "exactly one subgroup of type (2,2)", "1".into(), n.to_string(), n));

    let g = group(GroupSpec::Modular16);
    let types = subgroup_types(&g, 8);
    let n = types.len();
    checks.push(check(
        "three-order-8-subgroups",
        &g,
        "exactly 3 subgroups of order 8: (8) twice and (2,4)",
        "(2,4),(8),(8)".into(),
        types.join(","),
        n,
    ));
    let quotients = g.abelianization().factors().len();
    let index2 = (1usize << quotients) - 1;
    checks.push(check(
        "three-quotients-of-order-2",
        &g,
        "exactly 3 quotients of type (2)",
        "3".into(),
        index2.to_string(),
        index2,
    ));

    let g = group(GroupSpec::V4SemiC4);
    let n = g
        .all_subgroups()
        .expect("order is bounded")
        .iter()
        .filter(|s| s.order == 4 && s.normal && g.subgroup_type(s.mask).unwrap() == "(4)")
        .count();
    checks.push(check("no-normal-cyclic-4", &g, "no normal cyclic subgroup of order 4", "0".into(), n.to_string(), n));
    ClaimReport { checks }
}

/// Subgroup claims about the central product D8 * C4 and about D8 x C2.
pub fn verify_product_claims() -> ClaimReport {
    let mut checks = Vec::new();
    let g = group(GroupSpec::D8CentralC4);
    let n = g.all_subgroups().expect("order is bounded").iter().filter(|s| s.order == 2 && s.normal).count();
    checks.push(check("one-normal-order-2", &g, "exactly one normal subgroup of order 2", "1".into(), n.to_string(), n));

    let g = group(GroupSpec::D8xC2);
    let types = subgroup_types(&g, 8);
    let d8 = types.iter().filter(|t| *t == "dihedral(8)").count();
    let e8 = types.iter().filter(|t| *t == "(2,2,2)").count();
    let c24 = types.iter().filter(|t| *t == "(2,4)").count();
    checks.push(check(
        "order-8-subgroups-of-D8xC2",
        &g,
        "four subgroups isomorphic to D8, two of type (2,2,2), one of type (2,4)",
        "D8:4,(2,2,2):2,(2,4):1".into(),
        format!("D8:{d8},(2,2,2):{e8},(2,4):{c24}"),
        types.len(),
    ));
    ClaimReport { checks }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRow {
    pub group: GroupSpec,
    pub abelianization: AbelianType,
    pub is_22: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub order: usize,
    pub rows: Vec<ClassificationRow>,
    pub selected: Vec<GroupSpec>,
    pub expected: Vec<GroupSpec>,
    /// Catalog fingerprints are pairwise distinct, so no group is listed twice.
    pub catalog_distinct: bool,
    pub holds: bool,
}

/// Among all groups of order 8 and of order 16, exactly the dihedral,
/// quaternion and semidihedral ones have abelianization (2,2).
pub fn verify_abelianization_22_classification() -> Vec<ClassificationReport> {
    let target = AbelianType::new(vec![2, 2]).expect("valid type");
    [8usize, 16]
        .into_iter()
        .map(|order| {
            let specs = catalog(order);
            let groups: Vec<FiniteGroup2> = specs.iter().map(|s| group(s.clone())).collect();
            let prints: std::collections::BTreeSet<_> = groups.iter().map(super::fingerprint).collect();
            let rows: Vec<ClassificationRow> = specs
                .iter()
                .zip(&groups)
                .map(|(s, g)| {
                    let ab = g.abelianization();
                    ClassificationRow { group: s.clone(), is_22: ab == target, abelianization: ab }
                })
                .collect();
            let selected: Vec<GroupSpec> = rows.iter().filter(|r| r.is_22).map(|r| r.group.clone()).collect();
            let mut expected = vec![GroupSpec::Dihedral(order), GroupSpec::Quaternion(order)];
            if order >= 16 {
                expected.push(GroupSpec::Semidihedral(order));
            }
            let catalog_distinct = prints.len() == specs.len();
            ClassificationReport {
                order,
                holds: catalog_distinct && selected == expected,
                rows,
                selected,
                expected,
                catalog_distinct,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Index2Subgroup {
    pub mask: u32,
    /// Catalog name, or the invariants when abelian.
    pub isomorphism_type: String,
    pub abelianization: AbelianType,
    /// Whether the type is among (2,2), cyclic of order 2, 4 or 2^(m-1),
    /// dihedral or quaternion of order 2^(m-1).
    pub allowed: bool,
}

/// The three index-2 subgroups of a 2-group with abelianization (2,2).
pub fn index2_subgroup_abelianizations(g: &FiniteGroup2) -> Result<Vec<Index2Subgroup>> {
    let v4 = AbelianType::new(vec![2, 2]).expect("valid type");
    if g.order() < 8 || g.is_abelian() || g.abelianization() != v4 {
        return Err(Error::NotMaximalClass(g.name().to_string()));
    }
    let half = g.order() / 2;
    let mut allowed: Vec<String> = ["(2,2)", "(2)", "(4)"].map(String::from).to_vec();
    allowed.push(format!("({half})"));
    allowed.push(GroupSpec::Dihedral(half).to_string());
    allowed.push(GroupSpec::Quaternion(half).to_string());
    let mut out = Vec::new();
    for s in g.all_subgroups()?.into_iter().filter(|s| s.order == half) {
        let h = g.subgroup_group(s.mask, "index-2 subgroup")?;
        let isomorphism_type = match h.abelian_invariants() {
            Ok(t) => t.to_string(),
            Err(_) => identify(&h).map_or_else(|| format!("nonabelian of order {half}"), |s| s.to_string()),
        };
        out.push(Index2Subgroup {
            mask: s.mask,
            allowed: allowed.contains(&isomorphism_type),
            abelianization: h.abelianization(),
            isomorphism_type,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups2::construct_named;

    #[test]
    fn order16_subgroup_claims_hold() {
        let report = verify_order16_subgroup_claims();
        for c in &report.checks {
            assert!(c.holds, "{c:?}");
        }
        assert_eq!(report.checks.len(), 7);
    }

    #[test]
    fn product_claims_hold() {
        let report = verify_product_claims();
        assert!(report.all_hold(), "{report:?}");
    }

    #[test]
    fn classification_at_orders_8_and_16() {
        let reports = verify_abelianization_22_classification();
        assert_eq!(reports.len(), 2);
        for r in &reports {
            assert!(r.holds, "{r:?}");
        }
        assert_eq!(reports[1].selected.len(), 3);
        let row = reports[1].rows.iter().find(|r| r.group.to_string() == "abelian(4,4)").unwrap();
        assert_eq!(row.abelianization.to_string(), "(4,4)");
        assert!(!row.is_22);
    }

    fn types(name: &str) -> Vec<String> {
        let mut t: Vec<String> = index2_subgroup_abelianizations(&construct_named(name).unwrap())
            .unwrap()
            .into_iter()
            .map(|s| {
                assert!(s.allowed, "{name}: {}", s.isomorphism_type);
                s.isomorphism_type
            })
            .collect();
        t.sort();
        t
    }

    #[test]
    fn index2_subgroups() {
        assert_eq!(types("semidihedral(16)"), ["(8)", "dihedral(8)", "quaternion(8)"]);
        assert_eq!(types("dihedral(16)"), ["(8)", "dihedral(8)", "dihedral(8)"]);
        assert_eq!(types("quaternion(16)"), ["(8)", "quaternion(8)", "quaternion(8)"]);
        assert_eq!(types("quaternion(8)"), ["(4)", "(4)", "(4)"]);
        assert_eq!(types("dihedral(8)"), ["(2,2)", "(2,2)", "(4)"]);
        assert_eq!(types("dihedral(32)"), ["(16)", "dihedral(16)", "dihedral(16)"]);
        assert_eq!(types("semidihedral(32)"), ["(16)", "dihedral(16)", "quaternion(16)"]);
        for bad in ["modular16", "abelian(2,2)", "Q8_x_C2"] {
            assert!(matches!(
                index2_subgroup_abelianizations(&construct_named(bad).unwrap()),
                Err(Error::NotMaximalClass(_))
            ));
        }
    }
}
