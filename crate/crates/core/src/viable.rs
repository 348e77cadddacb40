//! The bounded action menu offered to a policy at one decision.
//!
//! Budget rulings, role, street and sizing heuristics are turned into a
//! short list of labelled options with concrete "raise to" ranges that are
//! always inside the legal bounds.

use crate::budget::{BudgetPair, BudgetTables, BudgetVerdict, Ruling};
use crate::chips::Chips;
use crate::context::{ContextReport, DrawClass, Facing, MadeClass, PrimaryClass, Role};
use crate::game::{Action, GameError, GameState, LegalActionSet, PotType, Seat, Street};
use crate::skills::{RaiseSizing, RangeEntry, SkillLibrary};
use serde::{Deserialize, Serialize};
use std::fmt;

pub use crate::budget::{check_gate, raise_gate};

/// Standard bet-size rows, percent of pot.
pub const SIZING_ROWS: [u32; 10] = [20, 25, 33, 50, 66, 75, 100, 125, 150, 200];
/// River rows start at this size; small river bets are offered only as block bets.
pub const RIVER_MIN_ROW: u32 = 66;
/// Emitted amounts never exceed this multiple of the pot after the flop.
pub const POT_CAP_MULTIPLE: i64 = 3;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ViableError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("draw defense is not defined on the {0}")]
    NoDrawDefense(Street),
    #[error("no defense thresholds for {0}")]
    UnknownDraw(String),
    #[error("postflop node without a budget verdict")]
    MissingVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OptionLabel {
    Check,
    Fold,
    Call,
    Limp,
    #[serde(rename = "C-BET")]
    CBet,
    Bet,
    Stab,
    Probe,
    Donk,
    ValueBet,
    BlockBet,
    PolarizedBet,
    Raise,
    CheckRaise,
    AllIn,
}

impl OptionLabel {
    pub fn text(self) -> &'static str {
        match self {
            OptionLabel::Check => "CHECK",
            OptionLabel::Fold => "FOLD",
            OptionLabel::Call => "CALL",
            OptionLabel::Limp => "LIMP",
            OptionLabel::CBet => "C-BET",
            OptionLabel::Bet => "BET",
            OptionLabel::Stab => "STAB",
            OptionLabel::Probe => "PROBE",
            OptionLabel::Donk => "DONK",
            OptionLabel::ValueBet => "VALUE BET",
            OptionLabel::BlockBet => "BLOCK BET",
            OptionLabel::PolarizedBet => "POLARIZED BET",
            OptionLabel::Raise => "RAISE",
            OptionLabel::CheckRaise => "CHECK-RAISE",
            OptionLabel::AllIn => "ALL-IN",
        }
    }

    pub fn is_aggressive(self) -> bool {
        !matches!(self, OptionLabel::Check | OptionLabel::Fold | OptionLabel::Call | OptionLabel::Limp)
    }

    /// Rank under the conservative ordering: check, fold, call, then bets.
    fn passive_rank(self) -> u8 {
        match self {
            OptionLabel::Check => 0,
            OptionLabel::Fold => 1,
            OptionLabel::Call | OptionLabel::Limp => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for OptionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.text())
    }
}

/// How the size of an aggressive option was expressed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SizeSpec {
    PctOfPot { lo: f64, hi: f64 },
    /// Multiple of the bet level faced.
    Multiple { lo: f64, hi: f64 },
    /// Fixed big-blind amounts (preflop opens).
    Bb { lo: f64, hi: f64 },
    AllIn,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViableOption {
    pub label: OptionLabel,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub size: Option<SizeSpec>,
    /// Inclusive "raise to" bounds, inside the legal range.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub amount: Option<[Chips; 2]>,
    /// Short qualifier shown next to the label, e.g. "bluff".
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    /// Range-table frequency, preflop only.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub freq: Option<f64>,
}

impl ViableOption {
    fn passive(label: OptionLabel) -> ViableOption {
        ViableOption { label, size: None, amount: None, note: None, freq: None }
    }

    fn with_note(mut self, note: &str) -> ViableOption {
        self.note = Some(note.to_string());
        self
    }

    /// Whether `a` is an instance of this option.
    pub fn admits(&self, a: &Action, legal: &LegalActionSet) -> bool {
        match (self.label, a) {
            (OptionLabel::Check, Action::Check) => true,
            (OptionLabel::Fold, Action::Fold) => true,
            (OptionLabel::Call | OptionLabel::Limp, Action::Call) => true,
            (l, Action::BetTo(x)) if l.is_aggressive() => self.amount.is_some_and(|[lo, hi]| lo <= *x && *x <= hi),
            (l, Action::AllIn) if l.is_aggressive() => {
                matches!((self.amount, legal.all_in_to), (Some([lo, hi]), Some(ai)) if lo <= ai && ai <= hi)
            }
            _ => false,
        }
    }

    /// The concrete action at the midpoint of the option's range.
    pub fn midpoint_action(&self, legal: &LegalActionSet) -> Action {
        match self.label {
            OptionLabel::Check => Action::Check,
            OptionLabel::Fold => Action::Fold,
            OptionLabel::Call | OptionLabel::Limp => Action::Call,
            _ => {
                let [lo, hi] = self.amount.expect("aggressive options carry amounts");
                let mid = Chips((lo.0 + hi.0 + 1) / 2);
                if legal.all_in_to == Some(mid) {
                    Action::AllIn
                } else {
                    Action::BetTo(mid)
                }
            }
        }
    }

    /// One-line rendering: `C-BET (25-33% pot = 4.50-5.94 BB)`.
    pub fn describe(&self) -> String {
        let mut s = self.label.text().to_string();
        if let Some(n) = &self.note {
            s.push_str(&format!(" ({n})"));
        }
        let amount = |s: &mut String, desc: String| {
            if let Some([lo, hi]) = self.amount {
                let bb = if lo == hi { format!("{} BB", lo.fixed2()) } else { format!("{}-{} BB", lo.fixed2(), hi.fixed2()) };
                if desc.is_empty() {
                    s.push_str(&format!(" ({bb})"));
                } else {
                    s.push_str(&format!(" ({desc} = {bb})"));
                }
            }
        };
        match self.size {
            Some(SizeSpec::PctOfPot { lo, hi }) => amount(&mut s, format!("{}-{}% pot", trim(lo), trim(hi))),
            Some(SizeSpec::Multiple { lo, hi }) => amount(&mut s, format!("{}-{}x", trim(lo), trim(hi))),
            Some(SizeSpec::Bb { .. }) | Some(SizeSpec::AllIn) | None => amount(&mut s, String::new()),
        }
        if let Some(f) = self.freq {
            s.push_str(&format!(" [{:.0}%]", f * 100.0));
        }
        s
    }
}

fn trim(x: f64) -> String {
    let s = format!("{x:.2}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptionOrder {
    #[default]
    ConservativeFirst,
    AggressiveFirst,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViableActionSet {
    pub options: Vec<ViableOption>,
    pub conservative_index: usize,
}

impl ViableActionSet {
    fn build(mut options: Vec<ViableOption>, legal: &LegalActionSet, order: OptionOrder) -> ViableActionSet {
        if options.is_empty() {
            options.push(ViableOption::passive(if legal.check { OptionLabel::Check } else { OptionLabel::Fold }));
        }
        let key = |o: &ViableOption| (o.label.passive_rank(), o.amount.map(|a| a[0]).unwrap_or_default());
        options.sort_by_key(key);
        if order == OptionOrder::AggressiveFirst {
            options.reverse();
        }
        let conservative_index = options.iter().enumerate().min_by_key(|(_, o)| key(o)).map(|(i, _)| i).unwrap_or(0);
        ViableActionSet { options, conservative_index }
    }

    pub fn conservative(&self) -> &ViableOption {
        &self.options[self.conservative_index]
    }

    pub fn admits(&self, a: &Action, legal: &LegalActionSet) -> bool {
        self.options.iter().any(|o| o.admits(a, legal))
    }

    pub fn has(&self, label: OptionLabel) -> bool {
        self.options.iter().any(|o| o.label == label)
    }

    pub fn describe(&self) -> String {
        self.options.iter().map(|o| o.describe()).collect::<Vec<_>>().join(", ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizingRow {
    pub pct: u32,
    pub amount: Chips,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizingMenu {
    pub pot: Chips,
    pub rows: Vec<SizingRow>,
    pub all_in_cap: Chips,
    /// Limped pots use a one-big-blind default bet.
    pub default_bet: Option<Chips>,
}

impl SizingMenu {
    /// The cap as a percentage of the pot.
    pub fn cap_pct(&self) -> f64 {
        self.all_in_cap.pct_of(self.pot)
    }
}

/// Reference bet sizes for the pot, capped at `min(stack, 3 x pot)`.
pub fn sizing_menu(pot: Chips, stack: Chips, street: Street, pot_type: PotType) -> SizingMenu {
    let min_row = if street == Street::River { RIVER_MIN_ROW } else { 0 };
    let rows = SIZING_ROWS.iter().filter(|p| **p >= min_row).map(|&pct| SizingRow { pct, amount: pot.percent(pct as f64) }).collect();
    SizingMenu {
        pot,
        rows,
        all_in_cap: stack.min(Chips(pot.0 * POT_CAP_MULTIPLE)),
        default_bet: (pot_type == PotType::Limp).then_some(Chips::BIG_BLIND),
    }
}

/// Equal per-street bet, as a fraction of the pot, that moves `spr` pots of
/// stack in over `streets` bet-and-call streets: (1 + 2e)^n = 1 + 2 spr.
pub fn geometric_fraction(spr: f64, streets: u32) -> f64 {
    if spr <= 0.0 || streets == 0 {
        return 0.0;
    }
    ((1.0 + 2.0 * spr).powf(1.0 / streets as f64) - 1.0) / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum DefenseThreshold {
    /// Continue against bets up to this percent of the pot.
    MaxBetPct(f64),
    /// Continue against any bet.
    Any,
    /// Fold to any bet.
    Never,
    /// Facing an all-in: continue only with at least this equity (percent).
    Equity(f64),
}

/// Largest bet a draw continues against. Out-of-position figures are the
/// same as in position.
pub fn defense_thresholds(
    tables: &BudgetTables,
    draw: DrawClass,
    street: Street,
    _ip: bool,
    facing: Facing,
) -> Result<DefenseThreshold, ViableError> {
    let dd = tables.draw_defense.get(draw.key()).ok_or_else(|| ViableError::UnknownDraw(draw.key().to_string()))?;
    if !matches!(street, Street::Flop | Street::Turn) {
        return Err(ViableError::NoDrawDefense(street));
    }
    if facing == Facing::AllIn {
        return Ok(match dd.all_in_equity {
            Some(e) => DefenseThreshold::Equity(e),
            None => DefenseThreshold::Never,
        });
    }
    let pct = dd.max_pct(street, facing).ok_or(ViableError::NoDrawDefense(street))?;
    Ok(if pct.is_infinite() {
        DefenseThreshold::Any
    } else if pct < 0.0 {
        DefenseThreshold::Never
    } else {
        DefenseThreshold::MaxBetPct(pct)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ViableConfig {
    pub order: OptionOrder,
}

/// Clamps amounts against the legal range and, postflop, the pot cap.
struct Bounds<'a> {
    legal: &'a LegalActionSet,
    pot: Chips,
    committed: Chips,
    bet_level: Chips,
    cap: Option<Chips>,
}

impl Bounds<'_> {
    fn upper(&self) -> Option<Chips> {
        let max = self.legal.max_to()?;
        Some(match self.cap {
            Some(c) => max.min(c),
            None => max,
        })
    }

    /// Legal "raise to" range inside `[lo, hi]`, moved to the nearest legal
    /// size if it lies wholly outside.
    fn clamp(&self, lo: Chips, hi: Chips) -> Option<[Chips; 2]> {
        let upper = self.upper()?;
        let Some(b) = self.legal.bet else {
            // Only an all-in (possibly incomplete) is available.
            let ai = self.legal.all_in_to?;
            return (ai <= upper).then_some([ai, ai]);
        };
        if upper < b.min_to {
            return None;
        }
        let lo = lo.max(b.min_to).min(upper);
        let hi = hi.min(upper).max(lo);
        Some([lo, hi])
    }

    fn pct(&self, label: OptionLabel, lo: f64, hi: f64) -> Option<ViableOption> {
        let amount = self.clamp(self.committed + self.pot.percent(lo), self.committed + self.pot.percent(hi))?;
        Some(ViableOption { label, size: Some(SizeSpec::PctOfPot { lo, hi }), amount: Some(amount), note: None, freq: None })
    }

    fn multiple(&self, label: OptionLabel, lo: f64, hi: f64) -> Option<ViableOption> {
        let amount = self.clamp(self.bet_level.percent(lo * 100.0), self.bet_level.percent(hi * 100.0))?;
        Some(ViableOption { label, size: Some(SizeSpec::Multiple { lo, hi }), amount: Some(amount), note: None, freq: None })
    }

    fn all_in(&self) -> Option<ViableOption> {
        let ai = self.legal.all_in_to?;
        if self.cap.is_some_and(|c| ai > c) {
            return None;
        }
        Some(ViableOption { label: OptionLabel::AllIn, size: Some(SizeSpec::AllIn), amount: Some([ai, ai]), note: None, freq: None })
    }
}

/// Computes the option menu for the player to act.
pub fn compute_viable(
    state: &GameState,
    report: &ContextReport,
    decision: Option<(&BudgetPair, &BudgetVerdict)>,
    lib: &SkillLibrary,
    cfg: &ViableConfig,
) -> Result<ViableActionSet, ViableError> {
    let legal = state.legal_actions()?;
    let pot = state.pot();
    let bounds = Bounds {
        legal: &legal,
        pot,
        committed: legal.committed,
        bet_level: state.bet_level,
        cap: (state.street != Street::Preflop).then(|| Chips(pot.0 * POT_CAP_MULTIPLE)),
    };
    let options = if state.street == Street::Preflop {
        preflop_options(report, lib, &legal, &bounds)
    } else {
        let (budget, verdict) = decision.ok_or(ViableError::MissingVerdict)?;
        postflop_options(state, report, budget, verdict, &legal, &bounds)
    };
    let options = options.into_iter().filter(|o| legal_option(o, &legal)).collect();
    Ok(ViableActionSet::build(options, &legal, cfg.order))
}

fn legal_option(o: &ViableOption, legal: &LegalActionSet) -> bool {
    match o.label {
        OptionLabel::Check => legal.check,
        OptionLabel::Fold => legal.fold,
        OptionLabel::Call | OptionLabel::Limp => legal.call_to.is_some(),
        _ => o.amount.is_some_and(|[lo, hi]| {
            lo <= hi && [lo, hi].iter().all(|x| legal.contains(&Action::BetTo(*x)))
        }),
    }
}

fn preflop_options(report: &ContextReport, lib: &SkillLibrary, legal: &LegalActionSet, bounds: &Bounds) -> Vec<ViableOption> {
    let Some(sc) = report.preflop else { return Vec::new() };
    let entry: RangeEntry = lib.ranges.entry(sc, report.hole);
    let sizing = lib.ranges.scenario(sc).sizing;
    let mut out = Vec::new();
    let freq = |o: ViableOption, f: f64| ViableOption { freq: Some(f), ..o };
    if legal.check {
        out.push(freq(ViableOption::passive(OptionLabel::Check), entry.fold() + entry.call));
    } else {
        if entry.fold() > 0.0 {
            out.push(freq(ViableOption::passive(OptionLabel::Fold), entry.fold()));
        }
        if entry.call > 0.0 {
            let label = if sc == crate::skills::PreflopScenarioId::UnopenedButton { OptionLabel::Limp } else { OptionLabel::Call };
            out.push(freq(ViableOption::passive(label), entry.call));
        }
    }
    if entry.raise > 0.0 {
        let raise = match sizing {
            RaiseSizing::ToBb { lo, hi } => bounds
                .clamp(Chips::from_bb_f64(lo).unwrap_or_default(), Chips::from_bb_f64(hi).unwrap_or_default())
                .map(|a| ViableOption { label: OptionLabel::Raise, size: Some(SizeSpec::Bb { lo, hi }), amount: Some(a), note: None, freq: None }),
            RaiseSizing::Multiple { lo, hi } => bounds.multiple(OptionLabel::Raise, lo, hi),
            RaiseSizing::AllIn => None,
        };
        // A raise that cannot be made at its size becomes a shove.
        if let Some(o) = raise.or_else(|| bounds.all_in()) {
            out.push(freq(o, entry.raise));
        }
    }
    if out.is_empty() {
        out.push(ViableOption::passive(if legal.check { OptionLabel::Check } else { OptionLabel::Fold }));
    }
    out
}

/// Seat that made the last aggressive action on `street`.
fn last_aggressor(state: &GameState, street: Street) -> Option<Seat> {
    state.street_history(street).filter(|h| h.record.kind.is_aggressive()).last().map(|h| h.seat)
}

/// Label for an unprompted bet by the hero.
fn bet_label(state: &GameState, report: &ContextReport) -> OptionLabel {
    let hero = report.hero;
    if report.street == Street::Flop {
        return match report.role {
            Role::Aggressor => OptionLabel::CBet,
            Role::Defender if !report.is_oop() => OptionLabel::Stab,
            Role::Defender => OptionLabel::Donk,
            Role::Neutral => OptionLabel::Probe,
        };
    }
    let prev = report.street.prev().and_then(|s| last_aggressor(state, s));
    match prev {
        Some(s) if s == hero => OptionLabel::Bet,
        Some(_) if report.is_oop() => OptionLabel::Donk,
        _ if !report.is_oop() => OptionLabel::Stab,
        _ => OptionLabel::Probe,
    }
}

/// Size range (percent of pot) for a role bet.
fn role_bet_size(label: OptionLabel, report: &ContextReport) -> (f64, f64) {
    match label {
        OptionLabel::CBet => {
            let tex = report.texture.as_ref();
            match report.pot_type {
                PotType::FourBetPlus => (20.0, 25.0),
                PotType::ThreeBet => (25.0, 33.0),
                _ => match tex {
                    Some(t) if t.paired() || t.high_low == crate::context::HighLow::High => (25.0, 33.0),
                    Some(t) if matches!(t.wetness, crate::context::Wetness::Wet | crate::context::Wetness::VeryWet) => (50.0, 75.0),
                    _ => (50.0, 66.0),
                },
            }
        }
        OptionLabel::Stab => (20.0, 35.0),
        OptionLabel::Donk => (25.0, 33.0),
        OptionLabel::Probe => (33.0, 50.0),
        _ if report.street == Street::River => (66.0, 100.0),
        _ => (50.0, 75.0),
    }
}

/// The turn paired a flop card other than the top one: an aggressor with
/// less than trips checks.
fn turn_pair_check(state: &GameState, report: &ContextReport) -> bool {
    if report.street != Street::Turn || report.role != Role::Aggressor {
        return false;
    }
    let Some(hand) = &report.hand else { return false };
    if hand.made_class.ladder_index() <= MadeClass::Trip.ladder_index() {
        return false;
    }
    let board = &state.board;
    if board.len() < 4 {
        return false;
    }
    let turn = board[3].rank;
    let flop_top = board[..3].iter().map(|c| c.rank).max();
    board[..3].iter().any(|c| c.rank == turn) && Some(turn) != flop_top
}

fn is_value_made(report: &ContextReport) -> bool {
    report.hand.as_ref().is_some_and(|h| matches!(h.primary_class(), PrimaryClass::Made(m) if m.ladder_index() <= MadeClass::TopPair.ladder_index()))
}

fn postflop_options(
    state: &GameState,
    report: &ContextReport,
    budget: &BudgetPair,
    verdict: &BudgetVerdict,
    legal: &LegalActionSet,
    bounds: &Bounds,
) -> Vec<ViableOption> {
    use OptionLabel as L;
    let mut out: Vec<ViableOption> = Vec::new();
    let p = &report.pressure;
    let gate = raise_gate(budget.att, p.bets_placed, report.remaining_streets);
    // Geometric sizing spreads the stack over this street and the ones after it.
    let geo_pct = geometric_fraction(report.spr, report.remaining_streets + 1) * 100.0;
    let geometric = |out: &mut Vec<ViableOption>| {
        if gate && is_value_made(report) {
            let hi = geo_pct.clamp(100.0, 200.0);
            if let Some(o) = bounds.pct(L::PolarizedBet, RIVER_MIN_ROW as f64, hi) {
                out.push(o.with_note("value, geometric"));
            }
        }
    };

    if !report.facing.is_facing() {
        if turn_pair_check(state, report) {
            return vec![ViableOption::passive(L::Check)];
        }
        match verdict.ruling {
            Ruling::CheckForced | Ruling::ShowdownCheck => out.push(ViableOption::passive(L::Check)),
            Ruling::PolarizedBluffOrCheck => {
                out.push(ViableOption::passive(L::Check));
                out.extend(bounds.pct(L::BlockBet, 20.0, 35.0));
                out.extend(bounds.pct(L::PolarizedBet, RIVER_MIN_ROW as f64, 200.0).map(|o| o.with_note("bluff")));
            }
            Ruling::ValueBetRequired => {
                out.extend(bounds.pct(L::ValueBet, 50.0, 100.0));
                geometric(&mut out);
                if out.is_empty() {
                    out.extend(bounds.all_in());
                }
            }
            _ => {
                out.push(ViableOption::passive(L::Check));
                let label = bet_label(state, report);
                let (lo, hi) = role_bet_size(label, report);
                out.extend(bounds.pct(label, lo, hi));
                geometric(&mut out);
            }
        }
        return out;
    }

    let hero_checked = state.street_history(report.street).any(|h| h.seat == report.hero && h.record.kind == crate::game::ActionKind::Check);
    let raise_label = if hero_checked { L::CheckRaise } else { L::Raise };
    let raise = |out: &mut Vec<ViableOption>| {
        let o = bounds.multiple(raise_label, 2.5, 3.5).or_else(|| bounds.all_in());
        out.extend(o);
    };
    match verdict.ruling {
        Ruling::Fold => out.push(ViableOption::passive(L::Fold)),
        Ruling::Call | Ruling::AllInDecision => {
            out.push(ViableOption::passive(L::Fold));
            out.push(ViableOption::passive(L::Call));
        }
        Ruling::RaiseRequired => {
            raise(&mut out);
            if out.is_empty() {
                out.push(ViableOption::passive(L::Call));
            }
        }
        _ => {
            if !budget.def.is_unlimited() {
                out.push(ViableOption::passive(L::Fold));
            }
            out.push(ViableOption::passive(L::Call));
            raise(&mut out);
        }
    }
    // Low stack-to-pot: top pair and better is committed.
    if report.spr < 4.0 && is_value_made(report) && out.iter().any(|o| o.label == L::Call) {
        out.retain(|o| o.label != L::Fold);
    }
    if legal.call_to.is_none() {
        out.retain(|o| o.label != L::Call);
    }
    out
}

#[cfg(test)]
mod tests;
