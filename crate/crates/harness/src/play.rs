//! Playing hands and matches.

use crate::deal::{deal, Deal};
use crate::history::{write_record, DecisionEntry, HandHistoryRecord, StateSnapshot};
use crate::stats::MatchStats;
use hunl_core::agent::{ActionSource, Agent, Conversation};
use hunl_core::game::{Action, GameError, GameState, Seat};
use std::collections::BTreeMap;
use std::io::{self, Write};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::mpsc;

/// Where a hand sits in a match.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HandSlot {
    pub hand_id: u64,
    pub seed: u64,
    pub deal_index: u64,
    pub pair: Option<u64>,
    pub mirrored: bool,
    pub button: Seat,
}

impl HandSlot {
    /// Non-duplicate hands alternate the button. Duplicate hands come in
    /// pairs on one deal: the second hand swaps both the hole cards and the
    /// button, so each agent plays the other's cards from the other's seat.
    pub fn schedule(seed: u64, hand_id: u64, duplicate: bool) -> HandSlot {
        if duplicate {
            let pair = hand_id / 2;
            let mirrored = hand_id % 2 == 1;
            let base = if pair.is_multiple_of(2) { Seat::Zero } else { Seat::One };
            HandSlot { hand_id, seed, deal_index: pair, pair: Some(pair), mirrored, button: if mirrored { base.other() } else { base } }
        } else {
            let button = if hand_id.is_multiple_of(2) { Seat::Zero } else { Seat::One };
            HandSlot { hand_id, seed, deal_index: hand_id, pair: None, mirrored: false, button }
        }
    }

    pub fn deal(&self) -> Deal {
        let d = deal(self.seed, self.deal_index);
        if self.mirrored {
            d.mirrored()
        } else {
            d
        }
    }
}

/// Plays one hand to settlement. Agent failures at a node are absorbed as
/// a check or fold flagged as fallback; only a broken state machine errors.
pub fn play_hand(slot: HandSlot, agents: [&Agent; 2]) -> Result<HandHistoryRecord, GameError> {
    let d = slot.deal();
    let mut st = GameState::new_hand(slot.button, d.hole, d.runout.clone())?;
    let mut convos = [Conversation::default(), Conversation::default()];
    let mut decisions = Vec::new();
    while let Some(seat) = st.to_act {
        let agent = agents[seat.index()];
        let snapshot = StateSnapshot::of(&st);
        let entry = match agent.act(&st, &mut convos[seat.index()]) {
            Ok(rec) => DecisionEntry {
                seat,
                state: snapshot,
                action: rec.grounded.action,
                fallback: rec.grounded.source == ActionSource::Fallback,
                error: None,
                detail: Some(rec),
            },
            Err(e) => {
                agent.counter.record(true);
                let legal = st.legal_actions()?;
                let action = if legal.check { Action::Check } else { Action::Fold };
                log::warn!("hand {}: engine error, playing {action}: {e}", slot.hand_id);
                DecisionEntry { seat, state: snapshot, action, fallback: true, error: Some(e.to_string()), detail: None }
            }
        };
        st = st.apply(entry.action)?;
        decisions.push(entry);
    }
    let outcome = st.outcome.clone().ok_or(GameError::Terminal)?;
    Ok(HandHistoryRecord {
        hand_id: slot.hand_id,
        seed: slot.seed,
        deal_index: slot.deal_index,
        pair: slot.pair,
        mirrored: slot.mirrored,
        button: slot.button,
        agents: [agents[0].policy.name(), agents[1].policy.name()],
        hole: d.hole,
        runout: d.runout,
        board: st.board.clone(),
        decisions,
        result: outcome.net,
        showdown: outcome.showdown,
        library_hash: agents[0].lib.hash().to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchConfig {
    pub hands: u64,
    pub seed: u64,
    pub duplicate: bool,
    pub workers: usize,
}

impl Default for MatchConfig {
    fn default() -> Self {
        MatchConfig { hands: 1000, seed: 0, duplicate: false, workers: 1 }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum MatchError {
    #[error("need at least one hand")]
    NoHands,
    #[error("duplicate matches need an even number of hands, got {0}")]
    OddDuplicate(u64),
    #[error("hand {hand}: {source}")]
    Game { hand: u64, source: GameError },
    #[error("writing history: {0}")]
    Io(#[from] io::Error),
}

/// Plays the match on `workers` threads. Records reach `sink` in hand order
/// whatever the scheduling, so output depends only on seed and agents.
pub fn play_match<W: Write>(cfg: &MatchConfig, agents: [&Agent; 2], sink: &mut W) -> Result<MatchStats, MatchError> {
    if cfg.hands == 0 {
        return Err(MatchError::NoHands);
    }
    if cfg.duplicate && cfg.hands % 2 == 1 {
        return Err(MatchError::OddDuplicate(cfg.hands));
    }
    let next = AtomicU64::new(0);
    let workers = cfg.workers.clamp(1, cfg.hands as usize);
    let mut stats = MatchStats::builder();
    std::thread::scope(|scope| -> Result<(), MatchError> {
        let (tx, rx) = mpsc::channel::<(u64, Result<HandHistoryRecord, GameError>)>();
        for _ in 0..workers {
            let tx = tx.clone();
            let next = &next;
            scope.spawn(move || loop {
                let id = next.fetch_add(1, Ordering::Relaxed);
                if id >= cfg.hands {
                    break;
                }
                let slot = HandSlot::schedule(cfg.seed, id, cfg.duplicate);
                if tx.send((id, play_hand(slot, agents))).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        let mut pending = BTreeMap::new();
        let mut want = 0u64;
        for (id, res) in rx {
            pending.insert(id, res);
            while let Some(res) = pending.remove(&want) {
                let rec = res.map_err(|source| {
                    // Stop the workers early; they check the counter.
                    next.store(cfg.hands, Ordering::Relaxed);
                    MatchError::Game { hand: want, source }
                })?;
                write_record(sink, &rec)?;
                stats.add(&rec);
                want += 1;
            }
        }
        Ok(())
    })?;
    sink.flush()?;
    Ok(stats.finish())
}
