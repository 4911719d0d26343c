//! Exhaustive sweeps over the prime families: 2-class groups of Q(sqrt pr),
//! of the biquadratic fields below K_1, and the per-pair verification bundle.

use rayon::prelude::*;
use towerlab_core::arith::{is_prime_u64, jacobi};
use towerlab_core::biquad::kuroda_h;
use towerlab_core::genus::{quadratic_genus_input, rank_bound};
use towerlab_core::quadforms::class_group_of_field;
use towerlab_core::scanner::{enumerate_condition1, qualifying_primes, verify_pair, Verdict};

const RS: [u64; 5] = [3, 7, 11, 19, 23];

/// (p, r) with p = 1 mod 4, r = 3 mod 4, (p/r) = -1 and p r < bound.
fn two_prime_family(bound: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for r in (3..bound / 5).filter(|&r| r % 4 == 3 && is_prime_u64(r)) {
        for p in (5..=(bound - 1) / r).filter(|&p| p % 4 == 1 && is_prime_u64(p)) {
            if jacobi(p as i128, r as i128).unwrap() == -1 {
                out.push((p, r));
            }
        }
    }
    out
}

#[test]
fn two_class_group_of_pr_is_order_2() {
    let family = two_prime_family(100_000);
    assert!(family.len() > 2000, "{}", family.len());
    let bad: Vec<(u64, u64, Vec<u64>, u32)> = family
        .par_iter()
        .filter_map(|&(p, r)| {
            let g = class_group_of_field(p * r).unwrap();
            let rank = rank_bound(&quadratic_genus_input(p * r).unwrap()).unwrap();
            (g.two_sylow != [2] || rank as usize != g.two_sylow.len()).then_some((p, r, g.two_sylow, rank))
        })
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn biquadratic_two_parts_over_condition_pairs() {
    let pairs = enumerate_condition1(10_000, &RS).unwrap();
    assert!(!pairs.is_empty());
    let bad: Vec<(u64, u64, u64, u64, u64)> = pairs
        .par_iter()
        .filter_map(|c| {
            let kk = kuroda_h(c.p, c.r).unwrap();
            let k1 = kuroda_h(2, c.p * c.r).unwrap();
            assert!([1, 2, 4, 8].contains(&kk.q) && [1, 2, 4, 8].contains(&k1.q));
            (kk.two_part() != 1 || k1.two_part() != 4).then(|| (c.p, c.r, kk.two_part(), k1.two_part(), k1.q))
        })
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn two_part_of_q_sqrt2_sqrtp_is_2() {
    let bad: Vec<u64> = qualifying_primes(10_000)
        .unwrap()
        .into_par_iter()
        .filter(|&p| kuroda_h(2, p).unwrap().two_part() != 2)
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn verification_bundle_passes_below_2000() {
    let pairs = enumerate_condition1(2000, &RS).unwrap();
    let failures: Vec<String> = pairs
        .par_iter()
        .flat_map_iter(|c| {
            let rep = verify_pair(c.p, c.r).unwrap();
            assert_eq!(rep.checks.len(), 8);
            rep.checks.into_iter().filter(|k| k.verdict.is_finding()).map(|k| format!("{}/{}: {:?}", c.p, c.r, k))
        })
        .collect();
    assert!(failures.is_empty(), "{failures:?}");
    // every pair gets a prediction from at least one criterion
    for c in &pairs {
        assert_eq!(verify_pair(c.p, c.r).unwrap().check("C8").unwrap().verdict, Verdict::Pass);
    }
}
