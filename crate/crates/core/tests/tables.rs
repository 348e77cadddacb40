mod oracles;

use hunl_core::budget::{check_gate, raise_gate, BudgetValue};
use hunl_core::context::PressureTable;
use hunl_core::units::Milli;
use proptest::prelude::*;

#[test]
fn pressure_pairs() {
    let t = PressureTable::default();
    for (pct, w) in oracles::PRESSURE_PAIRS {
        assert_eq!(t.weight(pct).unwrap(), Milli::from_f64(w), "{pct}%");
    }
    for &(edge, under, at) in oracles::PRESSURE_EDGES {
        assert_eq!(t.weight(edge - 0.01).unwrap(), Milli::from_f64(under), "just under {edge}%");
        assert_eq!(t.weight(edge).unwrap(), Milli::from_f64(at), "at {edge}%");
    }
    assert_eq!(t.cap, Milli::from_f64(oracles::PRESSURE_CAP));
    assert_eq!(t.weight(1e9).unwrap(), Milli::from_f64(oracles::PRESSURE_CAP));
    assert!(t.weight(-1.0).is_err());
}

#[test]
fn pressure_is_monotone_over_the_grid() {
    let t = PressureTable::default();
    let mut prev = Milli::ZERO;
    for i in 0..=200_000 {
        let w = t.weight(i as f64 / 100.0).unwrap();
        assert!(w >= prev && w <= Milli::from_f64(oracles::PRESSURE_CAP), "{}%", i as f64 / 100.0);
        prev = w;
    }
}

proptest! {
    #[test]
    fn pressure_monotone(a in 0.0f64..2000.0, b in 0.0f64..2000.0) {
        let t = PressureTable::default();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(t.weight(lo).unwrap() <= t.weight(hi).unwrap());
    }

    #[test]
    fn gates_are_the_stated_inequalities(att in 0i64..10_000, bets in 0u32..6, rem in 0u32..3, w in 0i64..10_000) {
        let a = BudgetValue::Finite(Milli(att));
        prop_assert_eq!(raise_gate(a, bets, rem), att >= (bets as i64 + rem as i64 + 1) * 1000);
        prop_assert_eq!(check_gate(a, Milli(w), rem), att < w + (rem as i64 + 1) * 1000);
        prop_assert!(raise_gate(BudgetValue::Unlimited, bets, rem));
        prop_assert!(!check_gate(BudgetValue::Unlimited, Milli(w), rem));
    }
}

#[test]
fn gate_examples() {
    // Four units of attack against one bet with two streets to come.
    assert!(raise_gate(BudgetValue::Finite(Milli::from_units(4)), 1, 2));
    assert!(!raise_gate(BudgetValue::Finite(Milli(3999)), 1, 2));
    // 1.35 already spent, one street after this one: the threshold is 3.35.
    let spent = Milli::from_f64(1.35);
    assert!(check_gate(BudgetValue::Finite(Milli::from_units(2)), spent, 1));
    assert!(check_gate(BudgetValue::Finite(Milli(3349)), spent, 1));
    assert!(!check_gate(BudgetValue::Finite(Milli(3350)), spent, 1));
}
