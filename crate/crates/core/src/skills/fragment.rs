//! Skill fragment records and their line-oriented file format.
//!
//! See `data/FORMAT.md` for the authoring reference.

use crate::context::{board::StraightLabel, scenario, ContextReport, Facing, MadeClass, PrimaryClass, SpecialBoard};
use crate::game::{PotType, Street};
use serde::{Deserialize, Serialize};
use std::fmt;

use super::preflop::PreflopScenarioId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Layer {
    P1,
    P2,
    P3,
    P4,
    P5,
}

impl Layer {
    pub const ALL: [Layer; 5] = [Layer::P1, Layer::P2, Layer::P3, Layer::P4, Layer::P5];

    pub fn parse(s: &str) -> Option<Layer> {
        match s {
            "P1" => Some(Layer::P1),
            "P2" => Some(Layer::P2),
            "P3" => Some(Layer::P3),
            "P4" => Some(Layer::P4),
            "P5" => Some(Layer::P5),
            _ => None,
        }
    }

    pub fn dir(self) -> &'static str {
        match self {
            Layer::P1 => "p1",
            Layer::P2 => "p2",
            Layer::P3 => "p3",
            Layer::P4 => "p4",
            Layer::P5 => "p5",
        }
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Facts a predicate can test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredKey {
    Street,
    PotType,
    Role,
    Position,
    Facing,
    HandClass,
    MadeClass,
    DrawClass,
    SuitLabel,
    Wetness,
    PairStructure,
    StraightLabel,
    HighLow,
    SpecialBoard,
    Scenario,
    PreflopScenario,
    TurnPaired,
}

impl PredKey {
    const ALL: [PredKey; 17] = [
        PredKey::Street,
        PredKey::PotType,
        PredKey::Role,
        PredKey::Position,
        PredKey::Facing,
        PredKey::HandClass,
        PredKey::MadeClass,
        PredKey::DrawClass,
        PredKey::SuitLabel,
        PredKey::Wetness,
        PredKey::PairStructure,
        PredKey::StraightLabel,
        PredKey::HighLow,
        PredKey::SpecialBoard,
        PredKey::Scenario,
        PredKey::PreflopScenario,
        PredKey::TurnPaired,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PredKey::Street => "street",
            PredKey::PotType => "pot_type",
            PredKey::Role => "role",
            PredKey::Position => "position",
            PredKey::Facing => "facing",
            PredKey::HandClass => "hand_class",
            PredKey::MadeClass => "made_class",
            PredKey::DrawClass => "draw_class",
            PredKey::SuitLabel => "suit_label",
            PredKey::Wetness => "wetness",
            PredKey::PairStructure => "pair_structure",
            PredKey::StraightLabel => "straight_label",
            PredKey::HighLow => "high_low",
            PredKey::SpecialBoard => "special_board",
            PredKey::Scenario => "scenario",
            PredKey::PreflopScenario => "preflop_scenario",
            PredKey::TurnPaired => "turn_paired",
        }
    }

    pub fn parse(s: &str) -> Option<PredKey> {
        PredKey::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Accepted values; `None` for scenario codes, which are checked separately.
    fn allowed(self) -> Option<Vec<&'static str>> {
        use crate::context::board::{HighLow, PairStructure, SuitLabel, Wetness};
        use crate::context::{DrawClass, Role};
        Some(match self {
            PredKey::Street => vec!["preflop", "flop", "turn", "river"],
            PredKey::PotType => vec!["limp", "srp", "3bp", "4bp"],
            PredKey::Role => [Role::Aggressor, Role::Defender, Role::Neutral].iter().map(|r| r.key()).collect(),
            PredKey::Position => vec!["ip", "oop"],
            PredKey::Facing => vec!["none", "bet", "raise", "check_raise", "all_in"],
            PredKey::HandClass => PrimaryClass::all_keys(),
            PredKey::MadeClass => MadeClass::ALL.iter().map(|m| m.key()).collect(),
            PredKey::DrawClass => DrawClass::ALL.iter().map(|d| d.key()).chain(["none"]).collect(),
            PredKey::SuitLabel => [SuitLabel::Rainbow, SuitLabel::TwoTone, SuitLabel::Monotone, SuitLabel::FlushPossible, SuitLabel::OneCardFlush]
                .iter()
                .map(|s| s.key())
                .collect(),
            PredKey::Wetness => [Wetness::Dry, Wetness::SlightlyWet, Wetness::Wet, Wetness::VeryWet].iter().map(|w| w.key()).collect(),
            PredKey::PairStructure => [
                PairStructure::Unpaired,
                PairStructure::Paired,
                PairStructure::TripsBoard,
                PairStructure::DoublePaired,
                PairStructure::QuadsBoard,
                PairStructure::FullHouseBoard,
            ]
            .iter()
            .map(|p| p.key())
            .collect(),
            PredKey::StraightLabel => vec!["none", "straight_possible", "one_card_straight"],
            PredKey::HighLow => [HighLow::High, HighLow::Low, HighLow::Mixed].iter().map(|h| h.key()).collect(),
            PredKey::SpecialBoard => [
                SpecialBoard::TripsBoard,
                SpecialBoard::DoublePaired,
                SpecialBoard::TripsPlusSide,
                SpecialBoard::QuadsBoard,
                SpecialBoard::FullHouseBoard,
                SpecialBoard::BoardFlush,
                SpecialBoard::BoardStraight,
            ]
            .iter()
            .map(|b| b.key())
            .chain(["none"])
            .collect(),
            PredKey::PreflopScenario => PreflopScenarioId::ALL.iter().map(|p| p.key()).collect(),
            PredKey::TurnPaired => vec!["yes", "no"],
            PredKey::Scenario => return None,
        })
    }

    fn validate_value(self, v: &str) -> bool {
        match self.allowed() {
            Some(vals) => vals.contains(&v),
            None => {
                let codes = scenario::all_codes();
                match v.strip_suffix('*') {
                    Some(prefix) => !prefix.is_empty() && codes.iter().any(|c| c.starts_with(prefix)),
                    None => codes.iter().any(|c| c == v),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Predicate {
    pub key: PredKey,
    pub negate: bool,
    /// Sorted and deduplicated.
    pub values: Vec<String>,
}

impl Predicate {
    fn test(&self, facts: &Facts) -> bool {
        let hit = match facts.get(self.key) {
            Some(f) => self.values.iter().any(|v| match v.strip_suffix('*') {
                Some(prefix) if self.key == PredKey::Scenario => f.starts_with(prefix),
                _ => v == f,
            }),
            // A fact that does not exist at this node never matches `=`.
            None => false,
        };
        hit != self.negate
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.key.name(), if self.negate { "!=" } else { "=" }, self.values.join(", "))
    }
}

/// Where a fragment was defined.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Site {
    pub file: String,
    pub line: usize,
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.file, self.line)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkillFragment {
    pub id: String,
    pub layer: Layer,
    pub slot: String,
    pub order: i32,
    /// Heading rendered above the fragment; consecutive fragments under
    /// the same heading share it.
    pub section: Option<String>,
    pub predicates: Vec<Predicate>,
    pub body: String,
    pub site: Site,
}

impl SkillFragment {
    pub fn matches(&self, facts: &Facts) -> bool {
        self.predicates.iter().all(|p| p.test(facts))
    }

    pub fn specificity(&self) -> usize {
        self.predicates.len()
    }

    fn has_key(&self, k: PredKey) -> bool {
        self.predicates.iter().any(|p| p.key == k)
    }

    /// A hand-slot fragment keyed on nothing but the listed classes.
    pub fn is_catch_all_for(&self, class: &str) -> bool {
        self.slot == "hand"
            && self.predicates.len() == 1
            && self.predicates[0].key == PredKey::HandClass
            && !self.predicates[0].negate
            && self.predicates[0].values.iter().any(|v| v == class)
    }
}

/// Node facts as predicate values.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Facts {
    values: Vec<(PredKey, String)>,
}

impl Facts {
    fn set(&mut self, k: PredKey, v: impl Into<String>) {
        self.values.push((k, v.into()));
    }

    pub fn get(&self, k: PredKey) -> Option<&str> {
        self.values.iter().find(|(key, _)| *key == k).map(|(_, v)| v.as_str())
    }

    pub fn from_report(r: &ContextReport) -> Facts {
        let mut f = Facts::default();
        f.set(PredKey::Street, r.street.name());
        f.set(PredKey::PotType, r.pot_type.key());
        f.set(PredKey::Role, r.role.key());
        f.set(PredKey::Position, if r.position.is_ip() { "ip" } else { "oop" });
        f.set(
            PredKey::Facing,
            match r.facing {
                Facing::Nothing => "none",
                Facing::Bet => "bet",
                Facing::Raise => "raise",
                Facing::CheckRaise => "check_raise",
                Facing::AllIn => "all_in",
            },
        );
        if let Some(h) = &r.hand {
            f.set(PredKey::HandClass, h.primary_class().key());
            f.set(PredKey::MadeClass, h.made_class.key());
            f.set(PredKey::DrawClass, h.draw_class.map(|d| d.key()).unwrap_or("none"));
        }
        if let Some(t) = &r.texture {
            f.set(PredKey::SuitLabel, t.suit_label.key());
            f.set(PredKey::Wetness, t.wetness.key());
            f.set(PredKey::PairStructure, t.pair_structure.key());
            f.set(
                PredKey::StraightLabel,
                match t.straight_label {
                    StraightLabel::None => "none",
                    StraightLabel::StraightPossible { .. } => "straight_possible",
                    StraightLabel::OneCardStraight { .. } => "one_card_straight",
                },
            );
            f.set(PredKey::HighLow, t.high_low.key());
            f.set(PredKey::SpecialBoard, t.special.map(|s| s.key()).unwrap_or("none"));
        }
        if let Some(s) = &r.scenario {
            f.set(PredKey::Scenario, s.code.clone());
        }
        if let Some(p) = r.preflop {
            f.set(PredKey::PreflopScenario, p.key());
        }
        if r.street == Street::Turn {
            f.set(PredKey::TurnPaired, if r.turn_paired { "yes" } else { "no" });
        }
        f
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub site: Site,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.site, self.message)
    }
}

const FENCE: &str = "~~~";

struct Draft {
    id: String,
    site: Site,
    layer: Option<Layer>,
    slot: Option<String>,
    order: i32,
    section: Option<String>,
    predicates: Vec<Predicate>,
}

/// Parses one fragment file. Every problem is reported; nothing is returned
/// for a file with errors.
pub fn parse_fragments(file: &str, text: &str) -> Result<Vec<SkillFragment>, Vec<Diagnostic>> {
    let mut out = Vec::new();
    let mut errs = Vec::new();
    let mut draft: Option<Draft> = None;
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let diag = |line: usize, message: String| Diagnostic { site: Site { file: file.to_string(), line }, message };

    while let Some((n, raw)) = lines.next() {
        let line = raw.trim_end();
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(id) = trimmed.strip_prefix("@fragment") {
            if let Some(d) = draft.take() {
                errs.push(diag(d.site.line, format!("fragment `{}` has no body", d.id)));
            }
            let id = id.trim();
            let valid_id = !id.is_empty() && id.chars().all(|c| c.is_ascii_alphanumeric() || "._-".contains(c));
            if !valid_id {
                errs.push(diag(n, format!("bad fragment id `{id}`")));
            }
            draft = Some(Draft {
                id: id.to_string(),
                site: Site { file: file.to_string(), line: n },
                layer: None,
                slot: None,
                order: 100,
                section: None,
                predicates: Vec::new(),
            });
            continue;
        }
        let Some(d) = draft.as_mut() else {
            errs.push(diag(n, "content outside a fragment".into()));
            continue;
        };
        if trimmed == FENCE {
            let mut body = Vec::new();
            let mut closed = false;
            for (_, l) in lines.by_ref() {
                if l.trim_end() == FENCE {
                    closed = true;
                    break;
                }
                body.push(l.trim_end());
            }
            let d = draft.take().unwrap();
            if !closed {
                errs.push(diag(n, "unterminated body".into()));
                break;
            }
            let body = body.join("\n");
            if body.trim().is_empty() {
                errs.push(diag(n, format!("fragment `{}` has an empty body", d.id)));
            }
            match (d.layer, d.slot) {
                (Some(layer), Some(slot)) => out.push(SkillFragment {
                    id: d.id,
                    layer,
                    slot,
                    order: d.order,
                    section: d.section,
                    predicates: d.predicates,
                    body,
                    site: d.site,
                }),
                (None, _) => errs.push(diag(d.site.line, format!("fragment `{}` has no layer", d.id))),
                (_, None) => errs.push(diag(d.site.line, format!("fragment `{}` has no slot", d.id))),
            }
            continue;
        }
        let Some((field, value)) = trimmed.split_once(':') else {
            errs.push(diag(n, format!("expected `field: value`, got `{trimmed}`")));
            continue;
        };
        let value = value.trim();
        match field.trim() {
            "layer" => match Layer::parse(value) {
                Some(l) => d.layer = Some(l),
                None => errs.push(diag(n, format!("unknown layer `{value}`"))),
            },
            "slot" => {
                if value.is_empty() {
                    errs.push(diag(n, "empty slot".into()));
                } else {
                    d.slot = Some(value.to_string());
                }
            }
            "order" => match value.parse() {
                Ok(o) => d.order = o,
                Err(_) => errs.push(diag(n, format!("bad order `{value}`"))),
            },
            "section" => d.section = Some(value.to_string()),
            "when" => match parse_predicate(value) {
                Ok(p) => {
                    if d.predicates.iter().any(|q| q.key == p.key && q.negate == p.negate) {
                        errs.push(diag(n, format!("repeated `{}` condition", p.key.name())));
                    }
                    d.predicates.push(p);
                }
                Err(m) => errs.push(diag(n, m)),
            },
            other => errs.push(diag(n, format!("unknown field `{other}`"))),
        }
    }
    if let Some(d) = draft {
        errs.push(diag(d.site.line, format!("fragment `{}` has no body", d.id)));
    }
    for f in &out {
        if let Some(m) = layer_rule(f) {
            errs.push(Diagnostic { site: f.site.clone(), message: m });
        }
    }
    if errs.is_empty() {
        for f in &mut out {
            f.predicates.sort();
        }
        Ok(out)
    } else {
        Err(errs)
    }
}

fn parse_predicate(s: &str) -> Result<Predicate, String> {
    let (key, negate, rest) = if let Some((k, v)) = s.split_once("!=") {
        (k, true, v)
    } else if let Some((k, v)) = s.split_once('=') {
        (k, false, v)
    } else {
        return Err(format!("expected `key = values`, got `{s}`"));
    };
    let key_name = key.trim();
    let key = PredKey::parse(key_name).ok_or_else(|| format!("unknown condition key `{key_name}`"))?;
    let mut values: Vec<String> = rest.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect();
    if values.is_empty() {
        return Err(format!("condition `{key_name}` lists no values"));
    }
    if let Some(bad) = values.iter().find(|v| !key.validate_value(v)) {
        return Err(format!("unknown value `{bad}` for `{key_name}`"));
    }
    values.sort();
    values.dedup();
    Ok(Predicate { key, negate, values })
}

fn street_values(f: &SkillFragment) -> Option<&[String]> {
    f.predicates.iter().find(|p| p.key == PredKey::Street && !p.negate).map(|p| p.values.as_slice())
}

/// Per-layer constraints.
fn layer_rule(f: &SkillFragment) -> Option<String> {
    let streets = street_values(f);
    match f.layer {
        Layer::P1 if !f.predicates.is_empty() => Some("P1 fragments apply everywhere and take no conditions".into()),
        Layer::P2 if !f.has_key(PredKey::PreflopScenario) => Some("P2 fragments need a `preflop_scenario` condition".into()),
        Layer::P2 if streets.is_some_and(|s| s != ["preflop"]) => Some("P2 fragments are preflop only".into()),
        Layer::P3 | Layer::P4 if streets.is_some_and(|s| s.iter().any(|v| v == "preflop")) => {
            Some(format!("{} fragments are postflop only", f.layer))
        }
        Layer::P3 | Layer::P4 if f.has_key(PredKey::PreflopScenario) => Some("`preflop_scenario` is only meaningful in P2".into()),
        Layer::P5 if streets.is_some_and(|s| s != ["river"]) => Some("P5 fragments are river only".into()),
        Layer::P4 if f.slot == "hand" && !f.has_key(PredKey::HandClass) => Some("hand-slot fragments need a `hand_class` condition".into()),
        _ => None,
    }
}

/// Key used to detect two fragments competing for the same spot.
pub fn identity(f: &SkillFragment) -> (Layer, String, Vec<Predicate>) {
    let mut p = f.predicates.clone();
    p.sort();
    (f.layer, f.slot.clone(), p)
}

#[allow(dead_code)]
fn _assert_pot_keys() {
    // Keep the predicate vocabulary in sync with pot type keys.
    for p in [PotType::Limp, PotType::Srp, PotType::ThreeBet, PotType::FourBetPlus] {
        debug_assert!(PredKey::PotType.validate_value(p.key()));
    }
}
