use super::*;
use crate::budget::{compute_budget, verdict, BudgetContext};
use crate::cards::parse_cards;
use crate::context::build_report;
use crate::game::apply_compact;
use proptest::prelude::*;

fn lib() -> SkillLibrary {
    SkillLibrary::bundled()
}

fn trace_state(history: &str) -> GameState {
    let hole = parse_cards("AhKd5c4c").unwrap();
    let runout = parse_cards("7s6hJc6c9h").unwrap();
    let s = GameState::new_hand(Seat::Zero, [[hole[0], hole[1]], [hole[2], hole[3]]], runout).unwrap();
    apply_compact(s, history).unwrap()
}

fn viable_for(state: &GameState, lib: &SkillLibrary) -> ViableActionSet {
    let report = build_report(state, &lib.context_tables()).unwrap();
    if state.street == Street::Preflop {
        return compute_viable(state, &report, None, lib, &ViableConfig::default()).unwrap();
    }
    let cls = report.hand.clone().unwrap();
    let ctx = BudgetContext::from_report(&report).unwrap();
    let b = compute_budget(&cls, &ctx, &lib.budgets).unwrap();
    let v = verdict(&b, &report, &lib.budgets);
    compute_viable(state, &report, Some((&b, &v)), lib, &ViableConfig::default()).unwrap()
}

fn labels(v: &ViableActionSet) -> Vec<OptionLabel> {
    v.options.iter().map(|o| o.label).collect()
}

#[test]
fn sizing_caps() {
    let m = sizing_menu(Chips::from_bb(18), Chips::from_bb(191), Street::Flop, PotType::ThreeBet);
    assert_eq!(m.all_in_cap.fixed2(), "54.00");
    assert_eq!(m.rows.len(), 10);
    assert_eq!(m.rows[2].amount.fixed2(), "5.94");
    let m = sizing_menu(Chips::from_bb(28), Chips::from_bb(186), Street::River, PotType::ThreeBet);
    assert_eq!(m.all_in_cap.fixed2(), "84.00");
    assert_eq!(m.rows[0].pct, 66);
    let m = sizing_menu(Chips::from_bb(2), Chips::from_bb(199), Street::Flop, PotType::Limp);
    assert_eq!(m.default_bet, Some(Chips::from_bb(1)));
    // A short stack caps below three pots.
    let m = sizing_menu(Chips::from_bb(40), Chips::from_bb(30), Street::Turn, PotType::Srp);
    assert_eq!(m.all_in_cap, Chips::from_bb(30));
}

#[test]
fn geometric() {
    assert!((geometric_fraction(6.64, 1) - 6.64).abs() < 1e-12);
    assert!((geometric_fraction(0.5, 1) - 0.5).abs() < 1e-12);
    let e = geometric_fraction(10.6, 3);
    // Independent check: grow the pot by (1 + 2e) per street.
    assert!(((1.0 + 2.0 * e).powi(3) - (1.0 + 2.0 * 10.6)).abs() < 1e-9);
    assert_eq!((e * 100.0).round(), 91.0);
}

#[test]
fn strong_draw_thresholds() {
    let t = BudgetTables::default();
    let d = DrawClass::StrongDraw;
    assert_eq!(defense_thresholds(&t, d, Street::Flop, true, Facing::Bet).unwrap(), DefenseThreshold::MaxBetPct(500.0));
    assert_eq!(defense_thresholds(&t, d, Street::Turn, true, Facing::Bet).unwrap(), DefenseThreshold::MaxBetPct(190.0));
    assert_eq!(defense_thresholds(&t, d, Street::Turn, false, Facing::AllIn).unwrap(), DefenseThreshold::Equity(60.0));
    assert_eq!(defense_thresholds(&t, d, Street::Flop, true, Facing::CheckRaise).unwrap(), DefenseThreshold::Any);
    assert!(defense_thresholds(&t, d, Street::River, true, Facing::Bet).is_err());
}

#[test]
fn trace_menus() {
    let lib = lib();
    let pre = viable_for(&trace_state("r2.75"), &lib);
    assert_eq!(labels(&pre), vec![OptionLabel::Call, OptionLabel::Raise]);
    assert_eq!(pre.options[1].amount, Some([Chips(825), Chips(1100)]));

    let flop = viable_for(&trace_state("r2.75 r9 c"), &lib);
    assert_eq!(labels(&flop), vec![OptionLabel::Check, OptionLabel::CBet]);
    assert_eq!(flop.options[1].amount, Some([Chips(450), Chips(594)]));
    assert_eq!(flop.conservative_index, 0);

    let turn = viable_for(&trace_state("r2.75 r9 c / b5 c"), &lib);
    assert_eq!(labels(&turn), vec![OptionLabel::Check]);

    let river = viable_for(&trace_state("r2.75 r9 c / b5 c / x x"), &lib);
    assert_eq!(labels(&river), vec![OptionLabel::Check, OptionLabel::BlockBet, OptionLabel::PolarizedBet]);
    assert_eq!(river.options[1].amount, Some([Chips(560), Chips(980)]));
    assert_eq!(river.options[2].amount, Some([Chips(1848), Chips(5600)]));
    let legal = trace_state("r2.75 r9 c / b5 c / x x").legal_actions().unwrap();
    assert!(river.admits(&Action::BetTo(Chips::from_bb(21)), &legal));
}

#[test]
fn facing_bets() {
    let lib = lib();
    // Trash facing a large river bet folds.
    let v = viable_for(&trace_state("r2.75 r9 c / b5 c / x x / x b20"), &lib);
    assert_eq!(labels(&v), vec![OptionLabel::Fold]);
    // Strong draw facing a flop check-raise continues.
    let v = viable_for(&trace_state("r2.75 r9 c / b5 r15"), &lib);
    assert!(v.has(OptionLabel::Call));
}

#[test]
fn ordering_knob() {
    let lib = lib();
    let st = trace_state("r2.75 r9 c");
    let report = build_report(&st, &lib.context_tables()).unwrap();
    let b = compute_budget(report.hand.as_ref().unwrap(), &BudgetContext::from_report(&report).unwrap(), &lib.budgets).unwrap();
    let v = verdict(&b, &report, &lib.budgets);
    let cfg = ViableConfig { order: OptionOrder::AggressiveFirst };
    let set = compute_viable(&st, &report, Some((&b, &v)), &lib, &cfg).unwrap();
    assert_eq!(set.options[0].label, OptionLabel::CBet);
    assert_eq!(set.conservative().label, OptionLabel::Check);
}

fn random_state(seed: u64, steps: usize) -> Option<GameState> {
    use rand::seq::IndexedRandom;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut deck = crate::cards::Card::deck();
    use rand::seq::SliceRandom;
    deck.shuffle(&mut rng);
    let mut s = GameState::new_hand(Seat::Zero, [[deck[0], deck[1]], [deck[2], deck[3]]], deck[4..9].to_vec()).ok()?;
    for _ in 0..steps {
        if s.is_terminal() {
            return None;
        }
        let l = s.legal_actions().ok()?;
        let mut acts = vec![];
        if l.check {
            acts.push(Action::Check);
        }
        if l.call_to.is_some() {
            acts.push(Action::Call);
        }
        if let Some(b) = l.bet {
            let x = rng.random_range(b.min_to.0..=b.max_to.0.min(b.min_to.0 + s.pot().0 * 2));
            acts.push(Action::BetTo(Chips(x)));
        }
        let a = *acts.choose(&mut rng)?;
        s = s.apply(a).ok()?;
    }
    (!s.is_terminal()).then_some(s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]
    #[test]
    fn viable_subset_of_legal(seed in any::<u64>(), steps in 0usize..12) {
        let lib = lib();
        if let Some(st) = random_state(seed, steps) {
            let v = viable_for(&st, &lib);
            let legal = st.legal_actions().unwrap();
            prop_assert!(!v.options.is_empty());
            prop_assert!(v.conservative_index < v.options.len());
            let cap = Chips(st.pot().0 * POT_CAP_MULTIPLE);
            for o in &v.options {
                prop_assert!(legal.contains(&o.midpoint_action(&legal)), "{:?}", o);
                if let Some([lo, hi]) = o.amount {
                    prop_assert!(legal.contains(&Action::BetTo(lo)) && legal.contains(&Action::BetTo(hi)));
                    if st.street != Street::Preflop {
                        prop_assert!(hi <= cap);
                    }
                }
            }
            let c = v.conservative().label;
            if v.has(OptionLabel::Check) {
                prop_assert_eq!(c, OptionLabel::Check);
            } else if v.has(OptionLabel::Fold) {
                prop_assert_eq!(c, OptionLabel::Fold);
            }
        }
    }
}
