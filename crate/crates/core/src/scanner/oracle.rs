//! Imported class-group records for layers that are not computed here, and
//! their validation against the structural bounds and the bundled tables.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::arith::{condition_one, is_prime_u64, quartic_symbol_2_u64};
use crate::error::{Error, Result};
use crate::towers::{FieldKind, FieldLabel};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleRecord {
    pub field: String,
    pub order: u64,
    pub invariants: Vec<u64>,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub check_id: String,
    pub field: String,
    pub p: Option<u64>,
    pub r: Option<u64>,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub records: usize,
    /// (p, r, n) triples where both Q_n(sqrt p) and K_n were present.
    pub pairs_checked: usize,
    pub fixture_matches: usize,
    pub findings: Vec<Finding>,
}

pub fn parse_records(json: &str) -> Result<Vec<OracleRecord>> {
    serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
}

const TABLE_R3: &str = include_str!("../../fixtures/table1_r3.json");
const TABLE_R7: &str = include_str!("../../fixtures/table2_r7.json");
const MUTATIONS: &str = include_str!("../../fixtures/mutations.json");

/// The bundled published tables as (file name, records).
pub fn bundled_fixtures() -> Vec<(&'static str, Vec<OracleRecord>)> {
    [("table1_r3.json", TABLE_R3), ("table2_r7.json", TABLE_R7)]
        .into_iter()
        .map(|(name, text)| (name, parse_records(text).expect("bundled fixture parses")))
        .collect()
}

/// Rows (p, #A(Q_2(sqrt p)), #A(K_2)) of the bundled table for r.
pub fn table_rows(r: u64) -> Vec<(u64, u64, u64)> {
    let mut q2: BTreeMap<u64, u64> = BTreeMap::new();
    let mut k2: BTreeMap<u64, u64> = BTreeMap::new();
    for (_, records) in bundled_fixtures() {
        for rec in records {
            let label: FieldLabel = rec.field.parse().expect("bundled labels parse");
            match label.kind {
                FieldKind::QnSqrtP => {
                    q2.insert(label.p.unwrap(), rec.order);
                }
                FieldKind::Kn if label.r == Some(r) => {
                    k2.insert(label.p.unwrap(), rec.order);
                }
                _ => {}
            }
        }
    }
    k2.into_iter().map(|(p, k)| (p, q2[&p], k)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationCase {
    pub name: String,
    pub expected_check: String,
    pub records: Vec<OracleRecord>,
}

/// Corrupted record sets, each expected to raise exactly one finding.
pub fn mutation_corpus() -> Vec<MutationCase> {
    serde_json::from_str(MUTATIONS).expect("bundled mutation corpus parses")
}

/// p = 1 mod 8 prime with (2/p)_4 = -1.
fn quartic_minus(p: u64) -> bool {
    is_prime_u64(p) && p % 8 == 1 && quartic_symbol_2_u64(p) == Ok(-1)
}

fn shape(rec: &OracleRecord) -> std::result::Result<(), (&'static str, String, String)> {
    let inv = &rec.invariants;
    let chain = inv.iter().all(|&f| f >= 2 && f.is_power_of_two()) && inv.windows(2).all(|w| w[1] % w[0] == 0);
    if !chain {
        return Err(("invariants", "2-power divisibility chain".into(), format!("{inv:?}")));
    }
    let product = inv.iter().try_fold(1u64, |acc, &f| acc.checked_mul(f));
    if rec.order == 0 || product != Some(rec.order) {
        return Err(("order", format!("order = product of invariants = {product:?}"), rec.order.to_string()));
    }
    Ok(())
}

/// Validates records: each must parse and be internally consistent; the K_n
/// groups must be cyclic; #A(Q_n(sqrt p)) <= #A(K_n) <= 2 #A(Q_n(sqrt p));
/// #A(Q_2(sqrt p)) <= 4; and records matching a bundled table entry must agree
/// with it.
pub fn oracle_validate(records: &[OracleRecord]) -> OracleReport {
    let mut report = OracleReport { records: records.len(), ..Default::default() };
    let mut finding = |id: &str, field: &str, label: Option<&FieldLabel>, expected: String, computed: String| {
        report.findings.push(Finding {
            check_id: id.to_string(),
            field: field.to_string(),
            p: label.and_then(|l| l.p),
            r: label.and_then(|l| l.r),
            expected,
            computed,
        });
    };

    // per-record well-formedness; malformed records take no further part
    let mut by_label: BTreeMap<String, Vec<(FieldLabel, &OracleRecord)>> = BTreeMap::new();
    for rec in records {
        let label = match rec.field.parse::<FieldLabel>() {
            Ok(l) => l,
            Err(_) => {
                finding("label", &rec.field, None, "label in the field grammar".into(), rec.field.clone());
                continue;
            }
        };
        if let Err((id, expected, computed)) = shape(rec) {
            finding(id, &rec.field, Some(&label), expected, computed);
            continue;
        }
        by_label.entry(label.to_string()).or_default().push((label, rec));
    }

    let mut accepted: HashMap<String, (FieldLabel, &OracleRecord)> = HashMap::new();
    for (key, recs) in by_label {
        let (label, first) = recs[0];
        if recs.iter().any(|(_, r)| r.order != first.order || r.invariants != first.invariants) {
            let orders: Vec<String> = recs.iter().map(|(_, r)| format!("{:?}", r.invariants)).collect();
            finding("conflict", &key, Some(&label), "one value per field".into(), orders.join(" vs "));
            continue;
        }
        accepted.insert(key, (label, first));
    }

    let fixture: HashMap<String, u64> =
        bundled_fixtures().into_iter().flat_map(|(_, recs)| recs).map(|r| (r.field, r.order)).collect();

    let mut keys: Vec<&String> = accepted.keys().collect();
    keys.sort();
    for key in keys {
        let (label, rec) = accepted[key];
        if let Some(&expected) = fixture.get(key) {
            if expected == rec.order {
                report.fixture_matches += 1;
            } else {
                finding("fixture", key, Some(&label), expected.to_string(), rec.order.to_string());
            }
        }
        match label.kind {
            FieldKind::Kn => {
                let (p, r) = (label.p.unwrap(), label.r.unwrap());
                if condition_one(p, r).is_err() {
                    continue;
                }
                if rec.invariants.len() > 1 {
                    finding("cyclic", key, Some(&label), "cyclic".into(), format!("{:?}", rec.invariants));
                }
                let q_key = format!("Q{}(sqrt{p})", label.n);
                if let Some((_, q)) = accepted.get(&q_key) {
                    report.pairs_checked += 1;
                    if !(q.order <= rec.order && rec.order <= 2 * q.order) {
                        finding(
                            "sandwich",
                            key,
                            Some(&label),
                            format!("{} <= #A(K{}) <= {}", q.order, label.n, 2 * q.order),
                            rec.order.to_string(),
                        );
                    }
                }
            }
            FieldKind::QnSqrtP => {
                let p = label.p.unwrap();
                if !quartic_minus(p) {
                    continue;
                }
                if rec.invariants.len() > 1 {
                    finding("cyclic", key, Some(&label), "cyclic".into(), format!("{:?}", rec.invariants));
                }
                if label.n == 2 && p % 16 == 9 && rec.order > 4 {
                    finding("bound", key, Some(&label), "<= 4".into(), rec.order.to_string());
                }
            }
            FieldKind::Qn | FieldKind::SmallKn => {}
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_tables_are_clean() {
        let all: Vec<OracleRecord> = bundled_fixtures().into_iter().flat_map(|(_, r)| r).collect();
        let rep = oracle_validate(&all);
        assert!(rep.findings.is_empty(), "{:?}", rep.findings);
        assert_eq!(rep.pairs_checked, 14);
        assert_eq!(table_rows(3).len(), 8);
        assert_eq!(table_rows(7).len(), 6);
        assert_eq!(table_rows(3)[0], (41, 4, 4));
        assert_eq!(table_rows(3)[2], (521, 2, 4));
    }

    #[test]
    fn each_mutation_raises_one_finding() {
        let corpus = mutation_corpus();
        assert!(corpus.len() >= 8);
        for case in corpus {
            let rep = oracle_validate(&case.records);
            assert_eq!(rep.findings.len(), 1, "{}: {:?}", case.name, rep.findings);
            assert_eq!(rep.findings[0].check_id, case.expected_check, "{}", case.name);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_records("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_records(r#"[{"field": "Q1", "order": 1, "invariants": [], "source": "", "x": 1}]"#), Err(Error::Parse(_))));
        assert!(matches!(parse_records(r#"[{"field": "Q1", "order": -1, "invariants": [], "source": ""}]"#), Err(Error::Parse(_))));
    }
}
