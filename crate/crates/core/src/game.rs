//! Heads-up no-limit hold'em hand state.
//!
//! `GameState` is a value: `apply` returns a successor and never mutates the
//! input. The button posts the small blind, acts first preflop and last on
//! every later street.

use crate::cards::{format_cards, Card};
use crate::chips::Chips;
use crate::eval::{evaluate_best5, HandRank};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Seat {
    Zero,
    One,
}

impl Seat {
    pub const BOTH: [Seat; 2] = [Seat::Zero, Seat::One];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn other(self) -> Seat {
        match self {
            Seat::Zero => Seat::One,
            Seat::One => Seat::Zero,
        }
    }
}

impl From<Seat> for u8 {
    fn from(s: Seat) -> u8 {
        s as u8
    }
}

impl TryFrom<u8> for Seat {
    type Error = String;
    fn try_from(v: u8) -> Result<Self, Self::Error> {
        match v {
            0 => Ok(Seat::Zero),
            1 => Ok(Seat::One),
            _ => Err(format!("invalid seat {v}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Street {
    Preflop,
    Flop,
    Turn,
    River,
}

impl Street {
    pub const ALL: [Street; 4] = [Street::Preflop, Street::Flop, Street::Turn, Street::River];

    pub fn board_len(self) -> usize {
        match self {
            Street::Preflop => 0,
            Street::Flop => 3,
            Street::Turn => 4,
            Street::River => 5,
        }
    }

    /// Betting streets still to come after this one.
    pub fn remaining_streets(self) -> u32 {
        match self {
            Street::Preflop => 3,
            Street::Flop => 2,
            Street::Turn => 1,
            Street::River => 0,
        }
    }

    pub fn next(self) -> Option<Street> {
        match self {
            Street::Preflop => Some(Street::Flop),
            Street::Flop => Some(Street::Turn),
            Street::Turn => Some(Street::River),
            Street::River => None,
        }
    }

    pub fn prev(self) -> Option<Street> {
        match self {
            Street::Preflop => None,
            Street::Flop => Some(Street::Preflop),
            Street::Turn => Some(Street::Flop),
            Street::River => Some(Street::Turn),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Street::Preflop => "preflop",
            Street::Flop => "flop",
            Street::Turn => "turn",
            Street::River => "river",
        }
    }
}

impl fmt::Display for Street {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Table position. The button is in position after the flop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Position {
    Button,
    BigBlind,
}

impl Position {
    pub fn is_ip(self) -> bool {
        self == Position::Button
    }

    pub fn short(self) -> &'static str {
        match self {
            Position::Button => "BTN",
            Position::BigBlind => "BB",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionKind {
    Fold,
    Check,
    Call,
    Bet,
    Raise,
    AllIn,
}

impl ActionKind {
    /// Bets, raises and aggressive all-ins.
    pub fn is_aggressive(self) -> bool {
        matches!(self, ActionKind::Bet | ActionKind::Raise | ActionKind::AllIn)
    }
}

/// A decision as requested by a player. Amounts are total bet levels for
/// the street ("raise to"), never increments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", content = "to", rename_all = "snake_case")]
pub enum Action {
    Fold,
    Check,
    Call,
    BetTo(Chips),
    AllIn,
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Fold => f.write_str("f"),
            Action::Check => f.write_str("k"),
            Action::Call => f.write_str("c"),
            Action::BetTo(x) => write!(f, "b {}", x.fixed2()),
            Action::AllIn => f.write_str("allin"),
        }
    }
}

/// What actually happened at a node, as stored in the history.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ActionRecord {
    pub kind: ActionKind,
    /// Street bet level after the action; absent for fold and check.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub amount_to: Option<Chips>,
    /// Total pot immediately before the action.
    pub pot_before: Chips,
    /// Chips moved from the stack by this action.
    pub added: Chips,
}

impl ActionRecord {
    /// Chips added as a percentage of the pot before the action.
    pub fn pct_of_pot(&self) -> f64 {
        self.added.pct_of(self.pot_before)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub street: Street,
    pub seat: Seat,
    pub record: ActionRecord,
}

/// Inclusive bet-level bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetBounds {
    pub min_to: Chips,
    pub max_to: Chips,
}

impl BetBounds {
    pub fn contains(&self, x: Chips) -> bool {
        self.min_to <= x && x <= self.max_to
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegalActionSet {
    pub seat: Seat,
    pub fold: bool,
    pub check: bool,
    /// Level reached by calling (may be an all-in for less).
    pub call_to: Option<Chips>,
    /// Full bet/raise range, when one exists.
    pub bet: Option<BetBounds>,
    /// Level of a shove. Present whenever a raise is permitted; below
    /// `bet.min_to` it is an incomplete raise.
    pub all_in_to: Option<Chips>,
    /// Whether an aggressive action here is a first bet rather than a raise.
    pub is_opening_bet: bool,
    /// The player's street commitment before acting.
    pub committed: Chips,
    pub stack: Chips,
}

impl LegalActionSet {
    pub fn call_cost(&self) -> Chips {
        self.call_to.map(|c| c - self.committed).unwrap_or(Chips::ZERO)
    }

    pub fn contains(&self, a: &Action) -> bool {
        match a {
            Action::Fold => self.fold,
            Action::Check => self.check,
            Action::Call => self.call_to.is_some(),
            Action::BetTo(x) => {
                self.bet.map(|b| b.contains(*x)).unwrap_or(false) || self.all_in_to == Some(*x)
            }
            Action::AllIn => self.all_in_to.is_some() || self.call_to.is_some_and(|c| c - self.committed == self.stack),
        }
    }

    /// Highest level any aggressive action may reach.
    pub fn max_to(&self) -> Option<Chips> {
        self.all_in_to.or(self.bet.map(|b| b.max_to))
    }

    /// Compact rendering: `check (k), bet/raise (b) [1 - 191]`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if self.fold {
            parts.push("fold (f)".to_string());
        }
        if self.check {
            parts.push("check (k)".to_string());
        }
        if let Some(c) = self.call_to {
            let cost = c - self.committed;
            if cost == self.stack {
                parts.push(format!("call all-in (c) {cost}"));
            } else {
                parts.push(format!("call (c) {cost}"));
            }
        }
        match (self.bet, self.all_in_to) {
            (Some(b), _) => parts.push(format!("bet/raise (b) [{} - {}]", b.min_to, b.max_to)),
            (None, Some(a)) => parts.push(format!("all-in (allin) {a}")),
            _ => {}
        }
        parts.join(", ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PotType {
    Limp,
    #[serde(rename = "SRP")]
    Srp,
    #[serde(rename = "3BP")]
    ThreeBet,
    #[serde(rename = "4BP+")]
    FourBetPlus,
}

impl PotType {
    pub fn from_raises(n: usize) -> PotType {
        match n {
            0 => PotType::Limp,
            1 => PotType::Srp,
            2 => PotType::ThreeBet,
            _ => PotType::FourBetPlus,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PotType::Limp => "Limp",
            PotType::Srp => "SRP",
            PotType::ThreeBet => "3BP",
            PotType::FourBetPlus => "4BP+",
        }
    }

    /// Key used in data files.
    pub fn key(self) -> &'static str {
        match self {
            PotType::Limp => "limp",
            PotType::Srp => "srp",
            PotType::ThreeBet => "3bp",
            PotType::FourBetPlus => "4bp",
        }
    }

    pub fn from_key(s: &str) -> Option<PotType> {
        match s {
            "limp" => Some(PotType::Limp),
            "srp" => Some(PotType::Srp),
            "3bp" => Some(PotType::ThreeBet),
            "4bp" => Some(PotType::FourBetPlus),
            _ => None,
        }
    }
}

impl fmt::Display for PotType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableConfig {
    pub small_blind: Chips,
    pub big_blind: Chips,
    pub stacks: [Chips; 2],
}

impl Default for TableConfig {
    fn default() -> Self {
        TableConfig {
            small_blind: Chips::SMALL_BLIND,
            big_blind: Chips::BIG_BLIND,
            stacks: [Chips::from_bb(200), Chips::from_bb(200)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    /// Net chips won (+) or lost (−) per seat.
    pub net: [Chips; 2],
    pub showdown: bool,
    /// `None` on a split pot.
    pub winner: Option<Seat>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("hand is over")]
    Terminal,
    #[error("illegal action {action} for seat {seat:?}: legal {legal}")]
    Illegal { action: Action, seat: Seat, legal: String },
    #[error("board runout exhausted before {0}")]
    MissingBoard(Street),
    #[error("hole cards unknown for seat {0:?} at showdown")]
    UnknownHole(Seat),
    #[error("pot is zero")]
    ZeroPot,
    #[error("invalid setup: {0}")]
    Setup(String),
    #[error("bad history token `{0}`")]
    Token(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameState {
    pub config: TableConfig,
    pub button: Seat,
    pub hole: [Option<[Card; 2]>; 2],
    pub board: Vec<Card>,
    /// Cards still to be revealed, in order.
    pub runout: Vec<Card>,
    pub street: Street,
    pub stacks: [Chips; 2],
    pub street_committed: [Chips; 2],
    pub total_committed: [Chips; 2],
    /// Highest street commitment; zero when nobody has bet this street.
    pub bet_level: Chips,
    /// Size of the last full raise increment this street.
    pub last_raise: Chips,
    pub acted: [bool; 2],
    pub may_raise: [bool; 2],
    pub to_act: Option<Seat>,
    pub history: Vec<HistoryEntry>,
    pub outcome: Option<Outcome>,
}

impl GameState {
    /// Posts blinds and positions the button to act.
    ///
    /// `runout` holds the board cards in dealing order; it may be shorter
    /// than five if the caller never intends to reach later streets.
    pub fn new(
        config: TableConfig,
        button: Seat,
        hole: [Option<[Card; 2]>; 2],
        runout: Vec<Card>,
    ) -> Result<GameState, GameError> {
        if runout.len() > 5 {
            return Err(GameError::Setup("runout exceeds five cards".into()));
        }
        let mut all: Vec<Card> = runout.clone();
        for h in hole.iter().flatten() {
            all.extend_from_slice(h);
        }
        crate::cards::check_distinct(&all).map_err(|e| GameError::Setup(e.to_string()))?;
        if config.stacks.iter().any(|s| *s <= Chips::ZERO) {
            return Err(GameError::Setup("stacks must be positive".into()));
        }
        if config.small_blind <= Chips::ZERO || config.big_blind < config.small_blind {
            return Err(GameError::Setup("blinds must satisfy 0 < sb <= bb".into()));
        }
        let bb_seat = button.other();
        let mut st = GameState {
            config,
            button,
            hole,
            board: Vec::new(),
            runout,
            street: Street::Preflop,
            stacks: config.stacks,
            street_committed: [Chips::ZERO; 2],
            total_committed: [Chips::ZERO; 2],
            bet_level: Chips::ZERO,
            last_raise: config.big_blind,
            acted: [false; 2],
            may_raise: [true; 2],
            to_act: Some(button),
            history: Vec::new(),
            outcome: None,
        };
        st.post(button, config.small_blind);
        st.post(bb_seat, config.big_blind);
        st.bet_level = st.street_committed[0].max(st.street_committed[1]);
        if st.stacks.iter().any(|s| s.is_zero()) {
            // A blind put someone all in; nothing left to decide.
            st.to_act = None;
            st.run_out_and_settle()?;
        }
        Ok(st)
    }

    /// Standard 200 BB hand with both hole cards and a full runout.
    pub fn new_hand(button: Seat, hole: [[Card; 2]; 2], runout: Vec<Card>) -> Result<GameState, GameError> {
        GameState::new(TableConfig::default(), button, [Some(hole[0]), Some(hole[1])], runout)
    }

    fn post(&mut self, seat: Seat, amount: Chips) {
        let i = seat.index();
        let a = amount.min(self.stacks[i]);
        self.stacks[i] -= a;
        self.street_committed[i] += a;
        self.total_committed[i] += a;
    }

    pub fn pot(&self) -> Chips {
        self.total_committed[0] + self.total_committed[1]
    }

    /// Pot at the start of the current street.
    pub fn pot_at_street_start(&self) -> Chips {
        self.pot() - self.street_committed[0] - self.street_committed[1]
    }

    pub fn is_terminal(&self) -> bool {
        self.outcome.is_some()
    }

    pub fn position(&self, seat: Seat) -> Position {
        if seat == self.button {
            Position::Button
        } else {
            Position::BigBlind
        }
    }

    pub fn seat_at(&self, pos: Position) -> Seat {
        match pos {
            Position::Button => self.button,
            Position::BigBlind => self.button.other(),
        }
    }

    pub fn to_call(&self, seat: Seat) -> Chips {
        let i = seat.index();
        (self.bet_level - self.street_committed[i]).min(self.stacks[i]).max(Chips::ZERO)
    }

    pub fn facing_bet(&self, seat: Seat) -> bool {
        self.bet_level > self.street_committed[seat.index()]
    }

    /// Stack-to-pot ratio: the smaller stack behind over the total pot.
    pub fn spr(&self) -> Result<f64, GameError> {
        let pot = self.pot();
        if pot.is_zero() {
            return Err(GameError::ZeroPot);
        }
        Ok(self.stacks[0].min(self.stacks[1]).as_bb() / pot.as_bb())
    }

    pub fn effective_stack(&self) -> Chips {
        self.stacks[0].min(self.stacks[1])
    }

    pub fn street_history(&self, street: Street) -> impl Iterator<Item = &HistoryEntry> {
        self.history.iter().filter(move |h| h.street == street)
    }

    pub fn preflop_raises(&self) -> usize {
        self.street_history(Street::Preflop)
            .filter(|h| h.record.kind.is_aggressive())
            .count()
    }

    pub fn pot_type(&self) -> PotType {
        PotType::from_raises(self.preflop_raises())
    }

    /// Seat that made the last preflop raise, if any.
    pub fn preflop_aggressor(&self) -> Option<Seat> {
        self.street_history(Street::Preflop)
            .filter(|h| h.record.kind.is_aggressive())
            .last()
            .map(|h| h.seat)
    }

    pub fn legal_actions(&self) -> Result<LegalActionSet, GameError> {
        let seat = self.to_act.ok_or(GameError::Terminal)?;
        if self.is_terminal() {
            return Err(GameError::Terminal);
        }
        let i = seat.index();
        let opp = seat.other().index();
        let committed = self.street_committed[i];
        let stack = self.stacks[i];
        let owed = self.bet_level - committed;
        let mut set = LegalActionSet {
            seat,
            fold: owed > Chips::ZERO,
            check: owed <= Chips::ZERO,
            call_to: None,
            bet: None,
            all_in_to: None,
            is_opening_bet: self.bet_level.is_zero(),
            committed,
            stack,
        };
        if owed > Chips::ZERO {
            set.call_to = Some(committed + owed.min(stack));
        }
        let can_raise = self.may_raise[i] && stack > owed && self.stacks[opp] > Chips::ZERO;
        if can_raise {
            let my_max = committed + stack;
            let opp_max = self.street_committed[opp] + self.stacks[opp];
            let max_to = my_max.min(opp_max);
            let inc = if self.bet_level.is_zero() {
                self.config.big_blind
            } else {
                self.last_raise.max(self.config.big_blind)
            };
            let min_to = self.bet_level + inc;
            if max_to > self.bet_level {
                set.all_in_to = Some(max_to);
                if min_to < max_to {
                    set.bet = Some(BetBounds { min_to, max_to });
                }
            }
        }
        Ok(set)
    }

    /// Deterministic successor state.
    pub fn apply(&self, action: Action) -> Result<GameState, GameError> {
        let legal = self.legal_actions()?;
        if !legal.contains(&action) {
            return Err(GameError::Illegal { action, seat: legal.seat, legal: legal.describe() });
        }
        let seat = legal.seat;
        let i = seat.index();
        let mut next = self.clone();
        let pot_before = self.pot();

        // Resolve shoves into either an aggressive level or a call.
        let action = match action {
            Action::AllIn => match legal.all_in_to {
                Some(level) => Action::BetTo(level),
                None => Action::Call,
            },
            a => a,
        };

        let record = match action {
            Action::Fold => ActionRecord { kind: ActionKind::Fold, amount_to: None, pot_before, added: Chips::ZERO },
            Action::Check => ActionRecord { kind: ActionKind::Check, amount_to: None, pot_before, added: Chips::ZERO },
            Action::Call => {
                let to = legal.call_to.expect("validated");
                let added = to - legal.committed;
                next.commit(seat, added);
                ActionRecord { kind: ActionKind::Call, amount_to: Some(to), pot_before, added }
            }
            Action::BetTo(to) => {
                let added = to - legal.committed;
                let increment = to - self.bet_level;
                let full = increment >= self.min_increment();
                if full {
                    next.last_raise = increment;
                    next.may_raise[seat.other().index()] = true;
                }
                next.bet_level = to;
                next.commit(seat, added);
                // Reaching the shove level counts as all-in even when the
                // larger stack keeps chips behind.
                let kind = if Some(to) == legal.all_in_to {
                    ActionKind::AllIn
                } else if legal.is_opening_bet {
                    ActionKind::Bet
                } else {
                    ActionKind::Raise
                };
                ActionRecord { kind, amount_to: Some(to), pot_before, added }
            }
            Action::AllIn => unreachable!("resolved above"),
        };
        next.acted[i] = true;
        next.may_raise[i] = false;
        next.history.push(HistoryEntry { street: self.street, seat, record });

        if record.kind == ActionKind::Fold {
            next.to_act = None;
            next.settle_fold(seat.other());
            return Ok(next);
        }

        let other = seat.other();
        if next.needs_action(other) {
            next.to_act = Some(other);
            return Ok(next);
        }
        next.close_street()?;
        Ok(next)
    }

    fn min_increment(&self) -> Chips {
        if self.bet_level.is_zero() {
            self.config.big_blind
        } else {
            self.last_raise.max(self.config.big_blind)
        }
    }

    fn commit(&mut self, seat: Seat, amount: Chips) {
        let i = seat.index();
        self.stacks[i] -= amount;
        self.street_committed[i] += amount;
        self.total_committed[i] += amount;
    }

    fn needs_action(&self, seat: Seat) -> bool {
        let i = seat.index();
        self.stacks[i] > Chips::ZERO && (!self.acted[i] || self.street_committed[i] < self.bet_level)
    }

    fn close_street(&mut self) -> Result<(), GameError> {
        let someone_all_in = self.stacks.iter().any(|s| s.is_zero());
        if someone_all_in || self.street == Street::River {
            self.to_act = None;
            return self.run_out_and_settle();
        }
        let next = self.street.next().expect("not river");
        self.deal_to(next)?;
        self.street = next;
        self.street_committed = [Chips::ZERO; 2];
        self.bet_level = Chips::ZERO;
        self.last_raise = self.config.big_blind;
        self.acted = [false; 2];
        self.may_raise = [true; 2];
        self.to_act = Some(self.button.other());
        Ok(())
    }

    fn deal_to(&mut self, street: Street) -> Result<(), GameError> {
        let need = street.board_len();
        while self.board.len() < need {
            if self.runout.is_empty() {
                return Err(GameError::MissingBoard(street));
            }
            let c = self.runout.remove(0);
            self.board.push(c);
        }
        Ok(())
    }

    fn run_out_and_settle(&mut self) -> Result<(), GameError> {
        self.deal_to(Street::River)?;
        self.street = Street::River;
        let h0 = self.hole[0].ok_or(GameError::UnknownHole(Seat::Zero))?;
        let h1 = self.hole[1].ok_or(GameError::UnknownHole(Seat::One))?;
        let r0 = evaluate_best5(&h0, &self.board).expect("valid cards");
        let r1 = evaluate_best5(&h1, &self.board).expect("valid cards");
        self.settle_showdown(r0, r1);
        Ok(())
    }

    /// Returns any uncalled excess to its owner.
    fn refund_uncalled(&mut self) {
        let (a, b) = (self.total_committed[0], self.total_committed[1]);
        if a > b {
            self.stacks[0] += a - b;
            self.total_committed[0] = b;
        } else if b > a {
            self.stacks[1] += b - a;
            self.total_committed[1] = a;
        }
    }

    fn settle_fold(&mut self, winner: Seat) {
        self.refund_uncalled();
        let pot = self.pot();
        self.stacks[winner.index()] += pot;
        self.finish(false, Some(winner));
    }

    fn settle_showdown(&mut self, r0: HandRank, r1: HandRank) {
        self.refund_uncalled();
        let pot = self.pot();
        let winner = match r0.cmp(&r1) {
            std::cmp::Ordering::Greater => Some(Seat::Zero),
            std::cmp::Ordering::Less => Some(Seat::One),
            std::cmp::Ordering::Equal => None,
        };
        match winner {
            Some(w) => self.stacks[w.index()] += pot,
            None => {
                // Odd hundredth goes to the big blind, first to act postflop.
                let half = Chips(pot.0 / 2);
                let odd = pot - half - half;
                let bb = self.button.other().index();
                self.stacks[bb] += half + odd;
                self.stacks[1 - bb] += half;
            }
        }
        self.finish(true, winner);
    }

    fn finish(&mut self, showdown: bool, winner: Option<Seat>) {
        self.street_committed = [Chips::ZERO; 2];
        self.total_committed = [Chips::ZERO; 2];
        self.bet_level = Chips::ZERO;
        self.to_act = None;
        let net = [
            self.stacks[0] - self.config.stacks[0],
            self.stacks[1] - self.config.stacks[1],
        ];
        self.outcome = Some(Outcome { net, showdown, winner });
    }

    /// Human-readable action history, one line per street.
    pub fn history_lines(&self) -> Vec<String> {
        let mut lines = Vec::new();
        for street in [Street::Preflop, Street::Flop, Street::Turn, Street::River] {
            let acts: Vec<String> = self
                .street_history(street)
                .map(|h| describe_record(&h.record))
                .collect();
            if !acts.is_empty() {
                lines.push(format!("{street}: {}", acts.join(" -> ")));
            }
        }
        lines
    }

    pub fn board_string(&self) -> String {
        format_cards(&self.board)
    }
}

pub fn describe_record(r: &ActionRecord) -> String {
    match r.kind {
        ActionKind::Fold => "fold".into(),
        ActionKind::Check => "check".into(),
        ActionKind::Call => "call".into(),
        ActionKind::Bet | ActionKind::Raise => format!("bet/raise to {}", r.amount_to.unwrap_or_default()),
        ActionKind::AllIn => format!("all-in to {}", r.amount_to.unwrap_or_default()),
    }
}

/// Parses one compact history token: `f`, `x`/`k`, `c`, `b5`, `r9`, `a`.
pub fn parse_action_token(tok: &str) -> Result<Action, GameError> {
    let t = tok.trim();
    let bad = || GameError::Token(t.to_string());
    match t {
        "f" => return Ok(Action::Fold),
        "x" | "k" => return Ok(Action::Check),
        "c" => return Ok(Action::Call),
        "a" | "allin" => return Ok(Action::AllIn),
        _ => {}
    }
    let rest = t.strip_prefix('b').or_else(|| t.strip_prefix('r')).ok_or_else(bad)?;
    let amt: Chips = rest.parse().map_err(|_| bad())?;
    Ok(Action::BetTo(amt))
}

/// Applies a compact history such as `r2.75 r9 c / b5 c / x x`.
///
/// Street separators (`/`) are checked against the state machine: each one
/// must coincide with a street change.
pub fn apply_compact(mut state: GameState, history: &str) -> Result<GameState, GameError> {
    for (n, segment) in history.split('/').enumerate() {
        if n > 0 && state.street as usize != n && !state.is_terminal() {
            return Err(GameError::Token(format!("street separator #{n} does not close a betting round")));
        }
        for tok in segment.split_whitespace() {
            state = state.apply(parse_action_token(tok)?)?;
        }
    }
    Ok(state)
}
