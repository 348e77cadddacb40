//! Budget table parsing.

use super::BudgetValue;
use crate::context::{DrawClass, Facing, MadeClass, SpecialBoard};
use crate::game::{PotType, Street};
use crate::units::Milli;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("budget table: {0}")]
    Parse(String),
    #[error("budget table: {0}")]
    Invalid(String),
    #[error("no budget cell {0}")]
    Missing(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Todo {
    Att,
    Def,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub att: BudgetValue,
    pub def: BudgetValue,
    /// Part of this cell is a provisional value.
    pub todo: Option<Todo>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawValue {
    Num(f64),
    Word(String),
}

impl RawValue {
    fn into_value<E: de::Error>(self) -> Result<BudgetValue, E> {
        match self {
            RawValue::Num(n) => Ok(BudgetValue::Finite(Milli::from_f64(n))),
            RawValue::Word(w) if w == "unlimited" => Ok(BudgetValue::Unlimited),
            RawValue::Word(w) if w == "threshold" => Ok(BudgetValue::Threshold),
            RawValue::Word(w) => Err(E::custom(format!("unknown budget value {w:?}"))),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCell {
    Pair(RawValue, RawValue),
    Table { att: RawValue, def: RawValue, todo: Option<Todo> },
}

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match RawCell::deserialize(d)? {
            RawCell::Pair(a, b) => Ok(Cell { att: a.into_value()?, def: b.into_value()?, todo: None }),
            RawCell::Table { att, def, todo } => Ok(Cell { att: att.into_value()?, def: def.into_value()?, todo }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OcfOverride {
    pub att: Milli,
    pub def_cap: Milli,
}

/// Drop sizes are in ladder levels; per-street arrays are [flop, turn, river].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelDrops {
    pub flush_possible: [Milli; 3],
    pub one_card_flush: Milli,
    pub ocs_open_ended: Milli,
    pub ocs_gutshot: Milli,
    pub straight_multi: [Milli; 3],
    pub straight_single: [Milli; 3],
    pub gutshot_classes: Vec<String>,
    #[serde(default)]
    pub ocf_override: BTreeMap<String, OcfOverride>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HighCard {
    pub paired_def_scale: f64,
    pub flush_possible: [Milli; 3],
    pub straight_multi: [Milli; 3],
    pub straight_single: [Milli; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TextureDeltas {
    pub set_flush3_per_combo: Milli,
    pub trip_per_combo: Milli,
    pub two_pair_per_combo: Milli,
    pub set_ocs_flush3: Milli,
    pub trip_ocs_flush3: Milli,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Adjust {
    pub oop_def: Milli,
    pub oop_min_spr: f64,
    pub river_reraise_def: Milli,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrawDefense {
    /// Largest callable bet, percent of pot.
    pub flop: f64,
    pub turn: f64,
    /// "call" or "fold" versus any check-raise.
    #[serde(default)]
    pub check_raise: Option<String>,
    #[serde(default)]
    pub check_raise_flop: Option<f64>,
    #[serde(default)]
    pub check_raise_turn: Option<f64>,
    #[serde(default)]
    pub all_in_equity: Option<f64>,
}

impl DrawDefense {
    /// Largest bet (percent of pot) this draw continues against.
    pub fn max_pct(&self, street: Street, facing: Facing) -> Option<f64> {
        let base = match street {
            Street::Flop => self.flop,
            Street::Turn => self.turn,
            _ => return None,
        };
        if facing == Facing::CheckRaise {
            match self.check_raise.as_deref() {
                Some("call") => return Some(f64::INFINITY),
                Some(_) => return Some(-1.0),
                None => {}
            }
            let cr = match street {
                Street::Flop => self.check_raise_flop,
                _ => self.check_raise_turn,
            };
            return Some(cr.unwrap_or(base));
        }
        Some(base)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BudgetTables {
    pub version: u32,
    pub cells: BTreeMap<String, BTreeMap<String, BTreeMap<String, Cell>>>,
    pub level_drops: LevelDrops,
    pub ladder: BTreeMap<String, BTreeMap<String, [Milli; 2]>>,
    pub paired_delta: BTreeMap<String, Milli>,
    pub high_card: HighCard,
    pub texture: TextureDeltas,
    pub adjust: Adjust,
    pub combo_add: BTreeMap<String, Milli>,
    pub combo_paired_base: BTreeMap<String, Milli>,
    pub draw_defense: BTreeMap<String, DrawDefense>,
    pub special: BTreeMap<String, BTreeMap<String, Cell>>,
}

impl BudgetTables {
    pub fn from_toml(text: &str) -> Result<BudgetTables, TableError> {
        let t: BudgetTables = toml::from_str(text).map_err(|e| TableError::Parse(e.to_string()))?;
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<(), TableError> {
        for c in MadeClass::ALL {
            if !self.cells.contains_key(c.key()) {
                return Err(TableError::Invalid(format!("no cells for class {}", c.key())));
            }
        }
        for d in DrawClass::ALL {
            let ok = self.cells.get(d.key()).and_then(|p| p.get("all")).map(|v| v.contains_key("base")).unwrap_or(false);
            if !ok {
                return Err(TableError::Invalid(format!("no floor cell for {}", d.key())));
            }
            if !self.draw_defense.contains_key(d.key()) {
                return Err(TableError::Invalid(format!("no draw defense for {}", d.key())));
            }
        }
        for (class, pots) in &self.cells {
            if MadeClass::from_key(class).is_none() && DrawClass::from_key(class).is_none() {
                return Err(TableError::Invalid(format!("unknown class {class}")));
            }
            for pot in pots.keys() {
                if pot != "all" && PotType::from_key(pot).is_none() {
                    return Err(TableError::Invalid(format!("unknown pot {pot} for {class}")));
                }
            }
        }
        for pot in ["srp", "3bp", "4bp"] {
            let rungs = self.ladder.get(pot).ok_or_else(|| TableError::Invalid(format!("no ladder for {pot}")))?;
            for c in MadeClass::ALL.iter().filter(|c| c.ladder_index() >= MadeClass::Overpair.ladder_index()) {
                if !rungs.contains_key(c.key()) {
                    return Err(TableError::Invalid(format!("ladder {pot} lacks {}", c.key())));
                }
            }
        }
        for board in self.special.keys() {
            if SpecialBoard::from_key(board).is_none() {
                return Err(TableError::Invalid(format!("unknown special board {board}")));
            }
        }
        if self.combo_add.keys().any(|k| DrawClass::from_key(k).is_none()) {
            return Err(TableError::Invalid("combo_add names an unknown draw class".into()));
        }
        Ok(())
    }

    /// Looks up a cell; `limp` falls back to `srp`, then `all`.
    pub fn cell(&self, class: &str, pot: PotType, variant: &str) -> Result<Cell, TableError> {
        let pots = self.cells.get(class).ok_or_else(|| TableError::Missing(class.to_string()))?;
        let mut order = vec![pot.key()];
        if pot == PotType::Limp {
            order.push("srp");
        }
        order.push("all");
        for p in order {
            if let Some(c) = pots.get(p).and_then(|v| v.get(variant)) {
                return Ok(*c);
            }
        }
        Err(TableError::Missing(format!("{class}.{}.{variant}", pot.key())))
    }

    pub fn ladder_cell(&self, pot: PotType, class: MadeClass) -> Option<(Milli, Milli)> {
        let key = match pot {
            PotType::Limp => "srp",
            p => p.key(),
        };
        self.ladder.get(key).and_then(|r| r.get(class.key())).map(|[a, d]| (*a, *d))
    }

    /// Special-board cell; tiers without their own cell use `trash`.
    pub fn special(&self, board: &str, tier: &str) -> Result<Cell, TableError> {
        let cells = self.special.get(board).ok_or_else(|| TableError::Missing(format!("special.{board}")))?;
        cells
            .get(tier)
            .or_else(|| cells.get("trash"))
            .or_else(|| cells.get("shared"))
            .copied()
            .ok_or_else(|| TableError::Missing(format!("special.{board}.{tier}")))
    }

    /// Every cell that carries a provisional value, as `class.pot.variant`.
    pub fn provisional_cells(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (class, pots) in &self.cells {
            for (pot, vars) in pots {
                for (v, c) in vars {
                    if c.todo.is_some() {
                        out.push(format!("{class}.{pot}.{v}"));
                    }
                }
            }
        }
        for (board, cells) in &self.special {
            for (tier, c) in cells {
                if c.todo.is_some() {
                    out.push(format!("special.{board}.{tier}"));
                }
            }
        }
        out
    }
}

impl Default for BudgetTables {
    fn default() -> Self {
        BudgetTables::from_toml(include_str!("../../data/tables/budgets.toml")).expect("bundled budget tables")
    }
}
