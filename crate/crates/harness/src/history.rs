//! JSON-lines hand histories.

use crate::deal::{deal, Deal};
use hunl_core::agent::DecisionRecord;
use hunl_core::cards::{check_distinct, Card};
use hunl_core::chips::Chips;
use hunl_core::game::{Action, ActionKind, GameError, GameState, Seat, Street};
use serde::{Deserialize, Serialize};
use std::io::{self, BufRead, Write};

/// Table state when a decision was requested.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateSnapshot {
    pub street: Street,
    pub board: Vec<Card>,
    pub pot: Chips,
    pub stacks: [Chips; 2],
    pub to_call: Chips,
    /// Compact action history (`r2.75 r9 c / b5 c`), accepted by `advise`.
    pub history: String,
}

impl StateSnapshot {
    pub fn of(state: &GameState) -> StateSnapshot {
        let seat = state.to_act.unwrap_or(state.button);
        StateSnapshot {
            street: state.street,
            board: state.board.clone(),
            pot: state.pot(),
            stacks: state.stacks,
            to_call: state.to_call(seat),
            history: compact_history(state),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionEntry {
    pub seat: Seat,
    pub state: StateSnapshot,
    pub action: Action,
    pub fallback: bool,
    /// Engine failure at this node; the action is then check or fold.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<DecisionRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HandHistoryRecord {
    pub hand_id: u64,
    pub seed: u64,
    /// Which deal of the seed's sequence was used.
    pub deal_index: u64,
    /// Set in duplicate matches: the two hands sharing a deal.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pair: Option<u64>,
    /// Hole cards were exchanged relative to the seeded deal.
    pub mirrored: bool,
    pub button: Seat,
    pub agents: [String; 2],
    pub hole: [[Card; 2]; 2],
    pub runout: Vec<Card>,
    /// Cards actually revealed.
    pub board: Vec<Card>,
    pub decisions: Vec<DecisionEntry>,
    /// Net result per seat, in BB.
    pub result: [Chips; 2],
    pub showdown: bool,
    pub library_hash: String,
}

impl HandHistoryRecord {
    pub fn deal(&self) -> Deal {
        Deal { hole: self.hole, runout: self.runout.clone() }
    }

    pub fn fallbacks(&self) -> usize {
        self.decisions.iter().filter(|d| d.fallback).count()
    }
}

/// Inverse of `apply_compact`: one token per action, streets split by `/`.
pub fn compact_history(state: &GameState) -> String {
    let mut out = String::new();
    let mut street = Street::Preflop;
    for h in &state.history {
        while street < h.street {
            out.push_str(" /");
            street = street.next().unwrap_or(Street::River);
        }
        if !out.is_empty() {
            out.push(' ');
        }
        let amt = h.record.amount_to.unwrap_or_default();
        match h.record.kind {
            ActionKind::Fold => out.push('f'),
            ActionKind::Check => out.push('x'),
            ActionKind::Call => out.push('c'),
            ActionKind::Bet => out.push_str(&format!("b{amt}")),
            ActionKind::Raise => out.push_str(&format!("r{amt}")),
            ActionKind::AllIn => out.push('a'),
        }
    }
    out
}

#[derive(Debug, thiserror::Error)]
pub enum HistoryError {
    #[error("io: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Corrupt { line: usize, message: String },
}

pub fn write_record<W: Write>(w: &mut W, rec: &HandHistoryRecord) -> io::Result<()> {
    serde_json::to_writer(&mut *w, rec)?;
    w.write_all(b"\n")
}

pub fn write_history<W: Write>(mut w: W, records: &[HandHistoryRecord]) -> io::Result<()> {
    for r in records {
        write_record(&mut w, r)?;
    }
    w.flush()
}

/// Reads every well-formed record up to the first bad line, returning the
/// error for that line alongside what was read.
pub fn read_history_partial<R: BufRead>(r: R) -> (Vec<HandHistoryRecord>, Option<HistoryError>) {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = match line {
            Ok(l) => l,
            Err(e) => return (out, Some(e.into())),
        };
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str(&line) {
            Ok(rec) => out.push(rec),
            Err(e) => return (out, Some(HistoryError::Corrupt { line: i + 1, message: e.to_string() })),
        }
    }
    (out, None)
}

pub fn read_history<R: BufRead>(r: R) -> Result<Vec<HandHistoryRecord>, HistoryError> {
    match read_history_partial(r) {
        (recs, None) => Ok(recs),
        (_, Some(e)) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReplayError {
    #[error("hand {hand}: cards do not match seed {seed} deal {index}")]
    DealMismatch { hand: u64, seed: u64, index: u64 },
    #[error("hand {hand}: invalid cards: {message}")]
    Cards { hand: u64, message: String },
    #[error("hand {hand}, decision {decision}: {source}")]
    Game { hand: u64, decision: usize, source: GameError },
    #[error("hand {hand}, decision {decision}: recorded seat {recorded:?} but {actual:?} is to act")]
    WrongSeat { hand: u64, decision: usize, recorded: Seat, actual: Option<Seat> },
    #[error("hand {hand}: actions end before the hand does")]
    Unfinished { hand: u64 },
    #[error("hand {hand}: replayed result {replayed:?} differs from recorded {recorded:?}")]
    Result { hand: u64, replayed: [Chips; 2], recorded: [Chips; 2] },
}

/// Re-deals from the seed, re-applies every recorded action and checks the
/// settlement.
pub fn verify_record(rec: &HandHistoryRecord) -> Result<(), ReplayError> {
    let hand = rec.hand_id;
    let seeded = deal(rec.seed, rec.deal_index);
    let expect = if rec.mirrored { seeded.mirrored() } else { seeded };
    if expect != rec.deal() {
        return Err(ReplayError::DealMismatch { hand, seed: rec.seed, index: rec.deal_index });
    }
    let all: Vec<Card> = rec.hole.iter().flatten().chain(&rec.runout).copied().collect();
    check_distinct(&all).map_err(|e| ReplayError::Cards { hand, message: e.to_string() })?;
    let mut st = GameState::new_hand(rec.button, rec.hole, rec.runout.clone())
        .map_err(|source| ReplayError::Game { hand, decision: 0, source })?;
    for (i, d) in rec.decisions.iter().enumerate() {
        if st.to_act != Some(d.seat) {
            return Err(ReplayError::WrongSeat { hand, decision: i, recorded: d.seat, actual: st.to_act });
        }
        st = st.apply(d.action).map_err(|source| ReplayError::Game { hand, decision: i, source })?;
    }
    let out = st.outcome.ok_or(ReplayError::Unfinished { hand })?;
    if out.net != rec.result {
        return Err(ReplayError::Result { hand, replayed: out.net, recorded: rec.result });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use hunl_core::cards::parse_cards;
    use hunl_core::game::apply_compact;

    fn trace() -> GameState {
        let c = parse_cards("AhKd5c4c").unwrap();
        let s = GameState::new_hand(Seat::Zero, [[c[0], c[1]], [c[2], c[3]]], parse_cards("7s6hJc6c9h").unwrap()).unwrap();
        apply_compact(s, "r2.75 r9 c / b5 c / x x").unwrap()
    }

    #[test]
    fn compact_round_trip() {
        let st = trace();
        let h = compact_history(&st);
        assert_eq!(h, "r2.75 r9 c / b5 c / x x");
        let c = parse_cards("AhKd5c4c").unwrap();
        let fresh = GameState::new_hand(Seat::Zero, [[c[0], c[1]], [c[2], c[3]]], parse_cards("7s6hJc6c9h").unwrap()).unwrap();
        assert_eq!(apply_compact(fresh, &h).unwrap(), st);
    }

    #[test]
    fn empty_history_and_checked_street() {
        let c = parse_cards("AhKd5c4c").unwrap();
        let s = GameState::new_hand(Seat::Zero, [[c[0], c[1]], [c[2], c[3]]], parse_cards("7s6hJc6c9h").unwrap()).unwrap();
        assert_eq!(compact_history(&s), "");
        let s = apply_compact(s, "c x / x x / b3").unwrap();
        assert_eq!(compact_history(&s), "c x / x x / b3");
    }
}
