//! Deterministic context extraction for a decision node.

pub mod board;
pub mod hand;
pub mod pressure;
pub mod scenario;

pub use board::{classify_board, BoardTexture, HighLow, PairStructure, SpecialBoard, StraightLabel, SuitLabel, Wetness};
pub use hand::{classify_hand, DrawClass, HandClassification, MadeClass, PrimaryClass, SpecialTier};
pub use pressure::{cumulative_pressure, pressure_weight, PressureSummary, PressureTable};
pub use scenario::{detect_scenario, Role, ScenarioCatalog, ScenarioId};

use crate::cards::{hand_label, Card};
use crate::chips::Chips;
use crate::game::{ActionKind, GameError, GameState, Position, PotType, Seat, Street};
use crate::skills::preflop::{preflop_scenario, PreflopConfig, PreflopScenarioId};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Facing {
    Nothing,
    Bet,
    Raise,
    CheckRaise,
    AllIn,
}

impl Facing {
    pub fn is_facing(self) -> bool {
        self != Facing::Nothing
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContextReport {
    pub street: Street,
    pub hero: Seat,
    pub position: Position,
    pub hole: [Card; 2],
    pub hand_label: String,
    pub board: Vec<Card>,
    pub pot_type: PotType,
    pub role: Role,
    pub pot: Chips,
    pub hero_stack: Chips,
    pub villain_stack: Chips,
    pub effective_stack: Chips,
    pub spr: f64,
    pub to_call: Chips,
    pub facing: Facing,
    /// Size of the bet or raise faced, percent of the pot before it.
    pub facing_pct: Option<f64>,
    /// Hero is out of position and nobody has acted on this street.
    pub first_to_act: bool,
    pub remaining_streets: u32,
    /// The turn card paired the board.
    pub turn_paired: bool,
    /// River raise faced after hero bet or raised the river.
    pub river_reraise: bool,
    pub texture: Option<BoardTexture>,
    pub hand: Option<HandClassification>,
    pub scenario: Option<ScenarioId>,
    pub preflop: Option<PreflopScenarioId>,
    pub pressure: PressureSummary,
}

impl ContextReport {
    pub fn is_oop(&self) -> bool {
        !self.position.is_ip()
    }

    pub fn spr_display(&self) -> String {
        format!("{:.1}", self.spr)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ContextError {
    #[error("hand is over; no decision to analyze")]
    Terminal,
    #[error("hole cards for seat {0:?} are unknown")]
    UnknownHole(Seat),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Board(#[from] board::BoardSizeError),
    #[error(transparent)]
    Classify(#[from] hand::ClassifyError),
    #[error(transparent)]
    Scenario(#[from] scenario::ScenarioError),
    #[error(transparent)]
    Preflop(#[from] crate::skills::preflop::PreflopError),
}

/// Data the context engine consults.
#[derive(Debug, Clone)]
pub struct ContextTables<'a> {
    pub pressure: &'a PressureTable,
    pub scenarios: &'a ScenarioCatalog,
    pub preflop: &'a PreflopConfig,
}

fn facing_kind(state: &GameState, hero: Seat) -> (Facing, Option<f64>) {
    if !state.facing_bet(hero) {
        return (Facing::Nothing, None);
    }
    let cur: Vec<_> = state.street_history(state.street).collect();
    let last = cur.iter().rev().find(|h| h.seat != hero && h.record.kind.is_aggressive());
    let pct = last.map(|h| h.record.pct_of_pot());
    let all_in = state.to_call(hero) >= state.stacks[hero.index()] || last.map(|h| h.record.kind == ActionKind::AllIn).unwrap_or(false);
    if all_in {
        return (Facing::AllIn, pct);
    }
    let hero_aggr = cur.iter().any(|h| h.seat == hero && h.record.kind.is_aggressive());
    if hero_aggr {
        let villain_checked_first = cur.iter().find(|h| h.seat != hero).map(|h| h.record.kind == ActionKind::Check).unwrap_or(false);
        if villain_checked_first {
            return (Facing::CheckRaise, pct);
        }
        return (Facing::Raise, pct);
    }
    (Facing::Bet, pct)
}

/// Builds the report for the seat to act.
pub fn build_report(state: &GameState, tables: &ContextTables) -> Result<ContextReport, ContextError> {
    let hero = state.to_act.ok_or(ContextError::Terminal)?;
    let hole = state.hole[hero.index()].ok_or(ContextError::UnknownHole(hero))?;
    let street = state.street;
    let pot = state.pot();
    let spr = state.spr()?;
    let (facing, facing_pct) = facing_kind(state, hero);
    let cur_empty = state.street_history(street).next().is_none();
    let position = state.position(hero);
    let pot_type = state.pot_type();

    let (texture, hand, scenario, preflop) = if street == Street::Preflop {
        (None, None, None, Some(preflop_scenario(state, tables.preflop)?))
    } else {
        let t = classify_board(&state.board, street)?;
        let h = classify_hand(hole, &state.board, &t, pot_type, street)?;
        let s = detect_scenario(state, tables.scenarios)?;
        (Some(t), Some(h), Some(s), None)
    };
    let role = scenario.as_ref().map(|s| s.role).unwrap_or_else(|| scenario::role_for(state, hero));
    let turn_paired = street == Street::Turn && state.board[..3].iter().any(|c| c.rank == state.board[3].rank);
    let river_reraise = street == Street::River && matches!(facing, Facing::Raise | Facing::CheckRaise);

    Ok(ContextReport {
        street,
        hero,
        position,
        hole,
        hand_label: hand_label(hole),
        board: state.board.clone(),
        pot_type,
        role,
        pot,
        hero_stack: state.stacks[hero.index()],
        villain_stack: state.stacks[hero.other().index()],
        effective_stack: state.effective_stack(),
        spr,
        to_call: state.to_call(hero),
        facing,
        facing_pct,
        first_to_act: cur_empty && !position.is_ip(),
        remaining_streets: street.remaining_streets(),
        turn_paired,
        river_reraise,
        texture,
        hand,
        scenario,
        preflop,
        pressure: cumulative_pressure(tables.pressure, state, hero),
    })
}
