//! Action-line scenario codes.
//!
//! A code is built structurally from the street, the betting pattern of the
//! earlier postflop streets, the current node and hero's position, then the
//! catalog supplies the one-line gloss. Codes:
//!
//! * flop `F-{X}{p}`: A/D/N not facing a bet as aggressor/defender/neutral,
//!   B/C/L facing a bet as aggressor/defender/neutral, R facing a raise;
//! * turn `T-{X}{p}`: by flop line, not facing / facing — hero bet (A/B),
//!   checked through (C/E), villain bet (F/D), raised (G/H); R facing a raise;
//! * river `R-{L}{S}{p}`: line L over flop+turn (A hero-hero, B hero-none,
//!   C none-hero, D villain-villain, E villain-none, F none-villain,
//!   G none-none, H mixed, I a street with a raise), node S (A checked to,
//!   C first to act, B facing a bet, R facing a raise).
//!
//! `p` is 1 in position, 2 out of position.

use crate::game::{GameState, Seat, Street};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Aggressor,
    Defender,
    Neutral,
}

impl Role {
    pub fn key(self) -> &'static str {
        match self {
            Role::Aggressor => "aggressor",
            Role::Defender => "defender",
            Role::Neutral => "neutral",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScenarioId {
    pub street_prefix: char,
    pub code: String,
    pub role: Role,
    pub summary: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScenarioError {
    #[error("scenarios are defined from the flop onward")]
    Preflop,
    #[error("no decision pending")]
    Terminal,
    #[error("scenario code {0} missing from catalog")]
    Unmatched(String),
    #[error("scenario catalog: {0}")]
    Catalog(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioCatalog {
    pub version: u32,
    pub scenarios: BTreeMap<String, String>,
}

impl ScenarioCatalog {
    pub fn from_toml(text: &str) -> Result<ScenarioCatalog, ScenarioError> {
        let c: ScenarioCatalog = toml::from_str(text).map_err(|e| ScenarioError::Catalog(e.to_string()))?;
        if let Some(missing) = all_codes().into_iter().find(|k| !c.scenarios.contains_key(k)) {
            return Err(ScenarioError::Catalog(format!("missing entry {missing}")));
        }
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.scenarios.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scenarios.is_empty()
    }
}

impl Default for ScenarioCatalog {
    fn default() -> Self {
        ScenarioCatalog::from_toml(include_str!("../../data/tables/scenarios.toml")).expect("bundled scenario catalog")
    }
}

/// Every code the detector can produce.
pub fn all_codes() -> Vec<String> {
    let mut out = Vec::new();
    for p in ['1', '2'] {
        for x in ['A', 'D', 'N', 'B', 'C', 'L', 'R'] {
            out.push(format!("F-{x}{p}"));
        }
        for x in ['A', 'B', 'C', 'E', 'F', 'D', 'G', 'H', 'R'] {
            out.push(format!("T-{x}{p}"));
        }
        for l in 'A'..='I' {
            for s in ['A', 'C', 'B', 'R'] {
                out.push(format!("R-{l}{s}{p}"));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum StreetLine {
    Hero,
    Villain,
    Checked,
    Raised,
}

fn street_line(state: &GameState, street: Street, hero: Seat) -> StreetLine {
    let aggr: Vec<Seat> = state.street_history(street).filter(|h| h.record.kind.is_aggressive()).map(|h| h.seat).collect();
    match aggr.as_slice() {
        [] => StreetLine::Checked,
        [s] if *s == hero => StreetLine::Hero,
        [_] => StreetLine::Villain,
        _ => StreetLine::Raised,
    }
}

/// Who holds the initiative entering the current street.
pub fn role_for(state: &GameState, hero: Seat) -> Role {
    let last_aggressor = match state.street {
        Street::Preflop | Street::Flop => state.preflop_aggressor(),
        s => {
            let prev = s.prev().unwrap();
            state.street_history(prev).filter(|h| h.record.kind.is_aggressive()).map(|h| h.seat).last()
        }
    };
    match last_aggressor {
        Some(s) if s == hero => Role::Aggressor,
        Some(_) => Role::Defender,
        None => Role::Neutral,
    }
}

pub fn detect_scenario(state: &GameState, catalog: &ScenarioCatalog) -> Result<ScenarioId, ScenarioError> {
    if state.street == Street::Preflop {
        return Err(ScenarioError::Preflop);
    }
    let hero = state.to_act.ok_or(ScenarioError::Terminal)?;
    let role = role_for(state, hero);
    let p = if state.position(hero).is_ip() { '1' } else { '2' };
    let cur: Vec<_> = state.street_history(state.street).collect();
    let facing = state.facing_bet(hero);
    let hero_aggr_now = cur.iter().any(|h| h.seat == hero && h.record.kind.is_aggressive());
    let facing_raise = facing && hero_aggr_now;

    let code = match state.street {
        Street::Flop => {
            let x = if facing_raise {
                'R'
            } else {
                match (facing, role) {
                    (false, Role::Aggressor) => 'A',
                    (false, Role::Defender) => 'D',
                    (false, Role::Neutral) => 'N',
                    (true, Role::Aggressor) => 'B',
                    (true, Role::Defender) => 'C',
                    (true, Role::Neutral) => 'L',
                }
            };
            format!("F-{x}{p}")
        }
        Street::Turn => {
            let x = if facing_raise {
                'R'
            } else {
                match (street_line(state, Street::Flop, hero), facing) {
                    (StreetLine::Hero, false) => 'A',
                    (StreetLine::Hero, true) => 'B',
                    (StreetLine::Checked, false) => 'C',
                    (StreetLine::Checked, true) => 'E',
                    (StreetLine::Villain, false) => 'F',
                    (StreetLine::Villain, true) => 'D',
                    (StreetLine::Raised, false) => 'G',
                    (StreetLine::Raised, true) => 'H',
                }
            };
            format!("T-{x}{p}")
        }
        Street::River => {
            use StreetLine::*;
            let l = match (street_line(state, Street::Flop, hero), street_line(state, Street::Turn, hero)) {
                (Raised, _) | (_, Raised) => 'I',
                (Hero, Hero) => 'A',
                (Hero, Checked) => 'B',
                (Checked, Hero) => 'C',
                (Villain, Villain) => 'D',
                (Villain, Checked) => 'E',
                (Checked, Villain) => 'F',
                (Checked, Checked) => 'G',
                (Hero, Villain) | (Villain, Hero) => 'H',
            };
            let s = if facing_raise {
                'R'
            } else if facing {
                'B'
            } else if cur.is_empty() {
                'C'
            } else {
                'A'
            };
            format!("R-{l}{s}{p}")
        }
        Street::Preflop => unreachable!(),
    };
    let summary = catalog.scenarios.get(&code).cloned().ok_or_else(|| ScenarioError::Unmatched(code.clone()))?;
    Ok(ScenarioId { street_prefix: code.chars().next().unwrap(), code, role, summary })
}
