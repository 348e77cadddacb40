//! Preflop scenario detection and range tables.
//!
//! The twelve scenarios are keyed by who is to act, whether the button
//! limped, and how many raises have gone in. Two stack conditions take
//! precedence: a shove to face (`allin_faced`), and an effective stack at or
//! under the short-stack threshold (`shortstack_allin`).

use crate::cards::{hand_label, Card, Rank};
use crate::chips::Chips;
use crate::game::{ActionKind, GameState, Position, Street};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PreflopScenarioId {
    /// Button's first decision.
    UnopenedButton,
    /// Big blind after a button open.
    BbVsOpen,
    /// Big blind after a button limp.
    LimpPot,
    /// Button limped and faces the big blind's raise.
    ButtonVsIso,
    /// Button opened and faces a 3-bet.
    #[serde(rename = "3bet_pot")]
    ThreeBetPot,
    /// Big blind raised a limp and faces the button's re-raise.
    SqueezeLike,
    /// Big blind 3-bet and faces a 4-bet.
    #[serde(rename = "4bet_pot")]
    FourBetPot,
    /// Limp, raise, re-raise, and a further raise faced.
    Limp4betPot,
    /// Button faces a 5-bet.
    #[serde(rename = "5bet_pot")]
    FiveBetPot,
    /// Anything deeper.
    RaiseWar,
    AllinFaced,
    ShortstackAllin,
}

impl PreflopScenarioId {
    pub const ALL: [PreflopScenarioId; 12] = [
        PreflopScenarioId::UnopenedButton,
        PreflopScenarioId::BbVsOpen,
        PreflopScenarioId::LimpPot,
        PreflopScenarioId::ButtonVsIso,
        PreflopScenarioId::ThreeBetPot,
        PreflopScenarioId::SqueezeLike,
        PreflopScenarioId::FourBetPot,
        PreflopScenarioId::Limp4betPot,
        PreflopScenarioId::FiveBetPot,
        PreflopScenarioId::RaiseWar,
        PreflopScenarioId::AllinFaced,
        PreflopScenarioId::ShortstackAllin,
    ];

    pub fn key(self) -> &'static str {
        match self {
            PreflopScenarioId::UnopenedButton => "unopened_button",
            PreflopScenarioId::BbVsOpen => "bb_vs_open",
            PreflopScenarioId::LimpPot => "limp_pot",
            PreflopScenarioId::ButtonVsIso => "button_vs_iso",
            PreflopScenarioId::ThreeBetPot => "3bet_pot",
            PreflopScenarioId::SqueezeLike => "squeeze_like",
            PreflopScenarioId::FourBetPot => "4bet_pot",
            PreflopScenarioId::Limp4betPot => "limp_4bet_pot",
            PreflopScenarioId::FiveBetPot => "5bet_pot",
            PreflopScenarioId::RaiseWar => "raise_war",
            PreflopScenarioId::AllinFaced => "allin_faced",
            PreflopScenarioId::ShortstackAllin => "shortstack_allin",
        }
    }

    pub fn from_key(s: &str) -> Option<PreflopScenarioId> {
        PreflopScenarioId::ALL.into_iter().find(|p| p.key() == s)
    }
}

impl fmt::Display for PreflopScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PreflopConfig {
    /// Effective stack, in big blinds, at or below which every spot is
    /// treated as push/fold.
    pub shortstack_bb: f64,
}

impl Default for PreflopConfig {
    fn default() -> Self {
        PreflopConfig { shortstack_bb: 15.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PreflopError {
    #[error("preflop scenario requested on the {0}")]
    NotPreflop(Street),
    #[error("no decision pending")]
    Terminal,
    #[error("range table: {0}")]
    Table(String),
}

pub fn preflop_scenario(state: &GameState, cfg: &PreflopConfig) -> Result<PreflopScenarioId, PreflopError> {
    if state.street != Street::Preflop {
        return Err(PreflopError::NotPreflop(state.street));
    }
    let hero = state.to_act.ok_or(PreflopError::Terminal)?;
    let hist: Vec<_> = state.street_history(Street::Preflop).collect();
    let raises = hist.iter().filter(|h| h.record.kind.is_aggressive()).count();
    let limped = hist.first().map(|h| h.record.kind == ActionKind::Call).unwrap_or(false);
    let facing_shove = state.facing_bet(hero)
        && (state.to_call(hero) >= state.stacks[hero.index()]
            || state.stacks[hero.other().index()].is_zero());
    if facing_shove {
        return Ok(PreflopScenarioId::AllinFaced);
    }
    let short = Chips::from_bb_f64(cfg.shortstack_bb).unwrap_or(Chips::ZERO);
    // Effective depth counts what each player had at the start of the hand.
    let start_eff = state.config.stacks[0].min(state.config.stacks[1]);
    if start_eff <= short {
        return Ok(PreflopScenarioId::ShortstackAllin);
    }
    use PreflopScenarioId::*;
    let button = state.position(hero) == Position::Button;
    Ok(match (button, limped, raises) {
        (true, _, 0) if hist.is_empty() => UnopenedButton,
        (false, true, 0) => LimpPot,
        (false, false, 1) => BbVsOpen,
        (true, true, 1) => ButtonVsIso,
        (true, false, 2) => ThreeBetPot,
        (false, true, 2) => SqueezeLike,
        (false, false, 3) => FourBetPot,
        (true, true, 3) => Limp4betPot,
        (true, false, 4) => FiveBetPot,
        _ => RaiseWar,
    })
}

/// What a raise means in a scenario, and how big it should be.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum RaiseSizing {
    /// Raise to a fixed range of big blinds.
    ToBb { lo: f64, hi: f64 },
    /// Raise to a multiple of the bet faced.
    Multiple { lo: f64, hi: f64 },
    AllIn,
}

/// Frequencies for one hand in one scenario. Unlisted hands fold.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RangeEntry {
    pub raise: f64,
    pub call: f64,
}

impl RangeEntry {
    pub fn fold(&self) -> f64 {
        (1.0 - self.raise - self.call).max(0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioRange {
    pub note: String,
    pub sizing: RaiseSizing,
    pub hands: BTreeMap<String, RangeEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RangeTable {
    pub version: u32,
    pub placeholder: bool,
    pub scenarios: BTreeMap<String, ScenarioRange>,
}

#[derive(Debug, Deserialize)]
struct RawScenario {
    #[serde(default)]
    note: String,
    sizing: RaiseSizing,
    #[serde(default)]
    raise: Vec<String>,
    #[serde(default)]
    call: Vec<String>,
}

#[derive(Debug, Deserialize)]
struct RawTable {
    version: u32,
    #[serde(default)]
    placeholder: bool,
    scenarios: BTreeMap<String, RawScenario>,
}

impl RangeTable {
    pub fn from_toml(text: &str) -> Result<RangeTable, PreflopError> {
        let raw: RawTable = toml::from_str(text).map_err(|e| PreflopError::Table(e.to_string()))?;
        let mut scenarios = BTreeMap::new();
        for (key, rs) in raw.scenarios {
            if PreflopScenarioId::from_key(&key).is_none() {
                return Err(PreflopError::Table(format!("unknown scenario `{key}`")));
            }
            let mut hands: BTreeMap<String, RangeEntry> = BTreeMap::new();
            for (list, is_raise) in [(&rs.raise, true), (&rs.call, false)] {
                for tok in list {
                    let (combos, freq) = expand_token(tok).map_err(|e| PreflopError::Table(format!("{key}: {e}")))?;
                    for c in combos {
                        let e = hands.entry(c).or_default();
                        if is_raise {
                            e.raise += freq;
                        } else {
                            e.call += freq;
                        }
                    }
                }
            }
            if let Some((h, _)) = hands.iter().find(|(_, e)| e.raise + e.call > 1.0 + 1e-9) {
                return Err(PreflopError::Table(format!("{key}: frequencies for {h} exceed 1")));
            }
            scenarios.insert(key, ScenarioRange { note: rs.note, sizing: rs.sizing, hands });
        }
        if let Some(missing) = PreflopScenarioId::ALL.iter().find(|p| !scenarios.contains_key(p.key())) {
            return Err(PreflopError::Table(format!("missing scenario `{missing}`")));
        }
        Ok(RangeTable { version: raw.version, placeholder: raw.placeholder, scenarios })
    }

    pub fn scenario(&self, id: PreflopScenarioId) -> &ScenarioRange {
        // Presence of every key is checked at load.
        &self.scenarios[id.key()]
    }

    pub fn entry(&self, id: PreflopScenarioId, hole: [Card; 2]) -> RangeEntry {
        self.scenario(id).hands.get(&hand_label(hole)).copied().unwrap_or_default()
    }
}

fn parse_rank(c: char, tok: &str) -> Result<Rank, String> {
    Rank::from_char(c).ok_or_else(|| format!("bad rank `{c}` in `{tok}`"))
}

/// Expands `AA`, `AKs`, `AKo`, `AK`, `TT+`, `A5s+`, `K9o+` with an optional
/// `:freq` suffix into canonical hand labels.
fn expand_token(tok: &str) -> Result<(Vec<String>, f64), String> {
    let (body, freq) = match tok.split_once(':') {
        Some((b, f)) => (b, f.trim().parse::<f64>().map_err(|_| format!("bad frequency in `{tok}`"))?),
        None => (tok, 1.0),
    };
    if !(0.0..=1.0).contains(&freq) {
        return Err(format!("frequency out of range in `{tok}`"));
    }
    let body = body.trim();
    let (body, plus) = match body.strip_suffix('+') {
        Some(b) => (b, true),
        None => (body, false),
    };
    let chars: Vec<char> = body.chars().collect();
    if chars.len() < 2 || chars.len() > 3 {
        return Err(format!("bad hand `{tok}`"));
    }
    let a = parse_rank(chars[0], tok)?;
    let b = parse_rank(chars[1], tok)?;
    let suffix = chars.get(2).copied();
    if !matches!(suffix, None | Some('s') | Some('o')) {
        return Err(format!("bad suffix in `{tok}`"));
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    let mut out = Vec::new();
    if hi == lo {
        if suffix.is_some() {
            return Err(format!("pairs take no suffix: `{tok}`"));
        }
        let top = if plus { Rank::Ace } else { hi };
        for r in Rank::ALL.iter().filter(|r| **r >= hi && **r <= top) {
            out.push(format!("{0}{0}", r.to_char()));
        }
    } else {
        let top = if plus { Rank::from_value(hi.value() - 1).unwrap() } else { lo };
        for k in Rank::ALL.iter().filter(|r| **r >= lo && **r <= top) {
            let suits: &[char] = match suffix {
                Some('s') => &['s'],
                Some('o') => &['o'],
                _ => &['s', 'o'],
            };
            for s in suits {
                out.push(format!("{}{}{}", hi.to_char(), k.to_char(), s));
            }
        }
    }
    Ok((out, freq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cards::parse_cards;
    use crate::game::{apply_compact, Seat, TableConfig};

    fn state(history: &str) -> GameState {
        let c = parse_cards("AhKd5c4c").unwrap();
        let s = GameState::new_hand(Seat::Zero, [[c[0], c[1]], [c[2], c[3]]], parse_cards("7s6hJc6c9h").unwrap()).unwrap();
        apply_compact(s, history).unwrap()
    }

    #[test]
    fn scenario_mapping() {
        let cfg = PreflopConfig::default();
        let cases = [
            ("", "unopened_button"),
            ("r2.75", "bb_vs_open"),
            ("c", "limp_pot"),
            ("c r4", "button_vs_iso"),
            ("r2.75 r9", "3bet_pot"),
            ("c r4 r12", "squeeze_like"),
            ("r2.5 r9 r21", "4bet_pot"),
            ("c r4 r12 r30", "limp_4bet_pot"),
            ("r2.5 r9 r21 r50", "5bet_pot"),
            ("r2.5 r9 r21 r50 r100", "raise_war"),
            ("r2.5 allin", "allin_faced"),
        ];
        for (h, want) in cases {
            assert_eq!(preflop_scenario(&state(h), &cfg).unwrap().key(), want, "history `{h}`");
        }
    }

    #[test]
    fn short_stacks_and_errors() {
        let c = parse_cards("AhKd5c4c").unwrap();
        let cfg = TableConfig { stacks: [Chips::from_bb(12), Chips::from_bb(200)], ..TableConfig::default() };
        let s = GameState::new(cfg, Seat::Zero, [Some([c[0], c[1]]), Some([c[2], c[3]])], vec![]).unwrap();
        assert_eq!(preflop_scenario(&s, &PreflopConfig::default()).unwrap(), PreflopScenarioId::ShortstackAllin);
        assert!(matches!(preflop_scenario(&state("r2.75 c"), &PreflopConfig::default()), Err(PreflopError::NotPreflop(_))));
    }

    #[test]
    fn token_expansion() {
        assert_eq!(expand_token("QQ+").unwrap().0, vec!["QQ", "KK", "AA"]);
        assert_eq!(expand_token("KTs+").unwrap().0, vec!["KTs", "KJs", "KQs"]);
        assert_eq!(expand_token("54").unwrap().0, vec!["54s", "54o"]);
        assert_eq!(expand_token("54s:0.4").unwrap().1, 0.4);
        assert!(expand_token("AKx").is_err());
        assert!(expand_token("AK:2").is_err());
    }
}
