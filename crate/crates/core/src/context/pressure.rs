//! Bet-size pressure weights.

use crate::game::{GameState, Seat, Street};
use crate::units::Milli;
use serde::{Deserialize, Serialize};

/// Step table: the first row whose `below` exceeds the bet percentage wins;
/// sizes at or above every threshold use `cap`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PressureTable {
    pub version: u32,
    pub rows: Vec<PressureRow>,
    pub cap: Milli,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PressureRow {
    /// Exclusive upper bound, percent of pot.
    pub below: f64,
    pub weight: Milli,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PressureError {
    #[error("bet percentage must be nonnegative, got {0}")]
    Negative(f64),
    #[error("pressure table: {0}")]
    Table(String),
}

impl PressureTable {
    pub fn from_toml(text: &str) -> Result<PressureTable, PressureError> {
        let t: PressureTable = toml::from_str(text).map_err(|e| PressureError::Table(e.to_string()))?;
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), PressureError> {
        if self.rows.is_empty() {
            return Err(PressureError::Table("no rows".into()));
        }
        for w in self.rows.windows(2) {
            if w[1].below <= w[0].below {
                return Err(PressureError::Table(format!("thresholds not increasing at {}", w[1].below)));
            }
            if w[1].weight < w[0].weight {
                return Err(PressureError::Table(format!("weights decrease at {}", w[1].below)));
            }
        }
        if self.cap < self.rows.last().unwrap().weight {
            return Err(PressureError::Table("cap below last weight".into()));
        }
        Ok(())
    }

    pub fn weight(&self, bet_pct: f64) -> Result<Milli, PressureError> {
        if bet_pct < 0.0 || bet_pct.is_nan() {
            return Err(PressureError::Negative(bet_pct));
        }
        Ok(self.rows.iter().find(|r| bet_pct < r.below).map(|r| r.weight).unwrap_or(self.cap))
    }
}

impl Default for PressureTable {
    fn default() -> Self {
        PressureTable::from_toml(include_str!("../../data/tables/pressure.toml")).expect("bundled pressure table")
    }
}

pub fn pressure_weight(table: &PressureTable, bet_pct: f64) -> Result<Milli, PressureError> {
    table.weight(bet_pct)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PressureSummary {
    pub total_weighted: Milli,
    pub hero_weighted: Milli,
    pub opponent_weighted: Milli,
    pub next_bet_index: Milli,
    /// Count of postflop bets and raises by either player.
    pub bets_placed: u32,
    pub hero_bets: u32,
    /// Per-action weights in order, for display.
    pub entries: Vec<PressureEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PressureEntry {
    pub street: Street,
    pub seat: Seat,
    /// Bet size as percent of the pot before it, in hundredths of a percent.
    pub pct_centi: i64,
    pub weight: Milli,
}

/// Sums weights over every postflop bet and raise in the hand.
pub fn cumulative_pressure(table: &PressureTable, state: &GameState, hero: Seat) -> PressureSummary {
    let mut s = PressureSummary {
        total_weighted: Milli::ZERO,
        hero_weighted: Milli::ZERO,
        opponent_weighted: Milli::ZERO,
        next_bet_index: Milli::ONE,
        bets_placed: 0,
        hero_bets: 0,
        entries: Vec::new(),
    };
    for h in state.history.iter().filter(|h| h.street != Street::Preflop) {
        if !h.record.kind.is_aggressive() {
            continue;
        }
        let pct = h.record.pct_of_pot();
        // Recorded pots are positive postflop, so the lookup cannot fail.
        let w = table.weight(pct).unwrap_or(table.cap);
        s.total_weighted += w;
        s.bets_placed += 1;
        if h.seat == hero {
            s.hero_weighted += w;
            s.hero_bets += 1;
        } else {
            s.opponent_weighted += w;
        }
        s.entries.push(PressureEntry { street: h.street, seat: h.seat, pct_centi: (pct * 100.0).round() as i64, weight: w });
    }
    s.next_bet_index = s.total_weighted + Milli::ONE;
    s
}
