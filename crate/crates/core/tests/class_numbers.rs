//! Cycle counts against the analytic class number formula, and composition
//! being well defined on cycles.

use std::f64::consts::PI;

use towerlab_core::arith::{kronecker, maximal_order_unit, squarefree_part};
use towerlab_core::quadforms::{class_group, is_fundamental_discriminant, Cycles};

/// h * log(eps) = -1/2 sum_{0<a<D} chi_D(a) log sin(pi a / D).
fn analytic_h(disc: u64) -> u64 {
    let d = squarefree_part(disc);
    let mut s = 0.0f64;
    for a in 1..disc {
        let chi = kronecker(disc as i64, a);
        if chi != 0 {
            s += chi as f64 * (PI * a as f64 / disc as f64).sin().ln();
        }
    }
    let reg = maximal_order_unit(d).unwrap().ln();
    let h = -0.5 * s / reg;
    let r = h.round();
    assert!((h - r).abs() < 1e-6, "D = {disc}: analytic value {h} is not near an integer");
    r as u64
}

#[test]
fn cycle_counts_match_analytic_formula_below_ten_thousand() {
    for disc in 5..10_000u64 {
        if !is_fundamental_discriminant(disc as i64) {
            continue;
        }
        let g = class_group(disc as i64).unwrap();
        let d = squarefree_part(disc);
        let norm = maximal_order_unit(d).unwrap().norm;
        let h = analytic_h(disc);
        let h_plus = if norm == 1 { 2 * h } else { h };
        assert_eq!(g.h_wide, h, "D = {disc}");
        assert_eq!(g.h_narrow, h_plus, "D = {disc}");
    }
}

#[test]
fn composition_is_well_defined_on_cycles() {
    for disc in 5..2000i64 {
        if !is_fundamental_discriminant(disc) {
            continue;
        }
        let cyc = Cycles::new(disc as i128).unwrap();
        for x in &cyc.cycles {
            for y in &cyc.cycles {
                let target = cyc.class_of(&x[0].compose(&y[0]));
                for f in x {
                    for g in y {
                        assert_eq!(cyc.class_of(&f.compose(g)), target, "D = {disc}: {f} * {g}");
                    }
                }
            }
        }
    }
}
