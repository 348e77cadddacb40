//! Attack/defense budgets, remaining budget and the binding verdict.

mod tables;

pub use tables::{BudgetTables, Cell, DrawDefense, TableError, Todo};

use crate::context::{BoardTexture, ContextReport, DrawClass, Facing, HandClassification, MadeClass, PressureSummary, Role, SpecialTier};
use crate::game::{PotType, Street};
use crate::units::Milli;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A budget amount. Unlimited is a sentinel so finite arithmetic can never
/// reach or erode it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum BudgetValue {
    Finite(Milli),
    Unlimited,
    /// Draw defense is a max bet size, handled by the action menu.
    Threshold,
}

impl BudgetValue {
    pub fn finite(self) -> Option<Milli> {
        match self {
            BudgetValue::Finite(m) => Some(m),
            _ => None,
        }
    }

    pub fn is_unlimited(self) -> bool {
        self == BudgetValue::Unlimited
    }

    fn map(self, f: impl FnOnce(Milli) -> Milli) -> BudgetValue {
        match self {
            BudgetValue::Finite(m) => BudgetValue::Finite(f(m)),
            other => other,
        }
    }

    /// `x >= n`, with unlimited above everything and thresholds below.
    pub fn at_least(self, n: Milli) -> bool {
        match self {
            BudgetValue::Finite(m) => m >= n,
            BudgetValue::Unlimited => true,
            BudgetValue::Threshold => false,
        }
    }
}

impl fmt::Display for BudgetValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BudgetValue::Finite(m) => write!(f, "{m}"),
            BudgetValue::Unlimited => f.write_str("unlimited"),
            BudgetValue::Threshold => f.write_str("by bet size"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "op")]
pub enum ModOp {
    /// Sets both sides from a table cell.
    Base { att: BudgetValue, def: BudgetValue },
    Delta { att: Milli, def: Milli },
    Set { att: Option<BudgetValue>, def: Option<BudgetValue> },
    ScaleDef { num: i64, den: i64 },
    CapDef { cap: Milli },
    FloorAtt { floor: Milli },
    ClampZero,
}

impl ModOp {
    fn apply(self, (att, def): (BudgetValue, BudgetValue)) -> (BudgetValue, BudgetValue) {
        match self {
            ModOp::Base { att, def } => (att, def),
            ModOp::Delta { att: da, def: dd } => (att.map(|m| m + da), def.map(|m| m + dd)),
            ModOp::Set { att: a, def: d } => (a.unwrap_or(att), d.unwrap_or(def)),
            ModOp::ScaleDef { num, den } => (att, def.map(|m| m.scale(num, den))),
            ModOp::CapDef { cap } => (
                att,
                match def {
                    BudgetValue::Finite(m) => BudgetValue::Finite(m.min(cap)),
                    BudgetValue::Unlimited => BudgetValue::Finite(cap),
                    t => t,
                },
            ),
            ModOp::FloorAtt { floor } => (att.map(|m| m.max(floor)), def),
            ModOp::ClampZero => (att.map(|m| m.max(Milli::ZERO)), def.map(|m| m.max(Milli::ZERO))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Modifier {
    /// Stable tag, e.g. `base`, `flush_possible`, `paired_board`.
    pub name: String,
    pub note: String,
    pub op: ModOp,
}

/// Which classification produced the attack figure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Governing {
    Made,
    Draw,
    Special,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetPair {
    pub att: BudgetValue,
    pub def: BudgetValue,
    pub modifier_trail: Vec<Modifier>,
    pub governing: Governing,
    /// Attack from the made-hand pipeline, before any draw floor.
    pub made_att: BudgetValue,
    pub draw_floor: Option<Milli>,
    /// Some input cell was a provisional value.
    pub provisional: bool,
}

impl BudgetPair {
    /// Re-applies the trail from zero.
    pub fn replay(&self) -> (BudgetValue, BudgetValue) {
        self.modifier_trail
            .iter()
            .fold((BudgetValue::Finite(Milli::ZERO), BudgetValue::Finite(Milli::ZERO)), |acc, m| m.op.apply(acc))
    }

    pub fn has_modifier(&self, name: &str) -> bool {
        self.modifier_trail.iter().any(|m| m.name == name)
    }

    /// "5 (base 0.5, draw floor 5)".
    pub fn attack_summary(&self) -> String {
        match self.draw_floor {
            Some(f) => format!("{} (base {}, draw floor {})", self.att, self.made_att, f),
            None => format!("{} (base {})", self.att, self.made_att),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BudgetError {
    #[error("no budget cell {class}.{pot}.{variant}")]
    MissingCell { class: String, pot: String, variant: String },
    #[error("budgets are defined from the flop onward")]
    Preflop,
    #[error(transparent)]
    Table(#[from] TableError),
}

/// Context inputs the budget pipeline reads.
#[derive(Debug, Clone, Copy)]
pub struct BudgetContext<'a> {
    pub pot_type: PotType,
    pub texture: &'a BoardTexture,
    pub street: Street,
    pub oop: bool,
    pub spr: f64,
    pub role: Role,
    pub river_reraise: bool,
}

impl<'a> BudgetContext<'a> {
    pub fn from_report(r: &'a ContextReport) -> Option<BudgetContext<'a>> {
        Some(BudgetContext {
            pot_type: r.pot_type,
            texture: r.texture.as_ref()?,
            street: r.street,
            oop: r.is_oop(),
            spr: r.spr,
            role: r.role,
            river_reraise: r.river_reraise,
        })
    }

    fn street_idx(&self) -> usize {
        match self.street {
            Street::Turn => 1,
            Street::River => 2,
            _ => 0,
        }
    }
}

struct Builder {
    state: (BudgetValue, BudgetValue),
    trail: Vec<Modifier>,
    provisional: bool,
}

impl Builder {
    fn new() -> Builder {
        Builder { state: (BudgetValue::Finite(Milli::ZERO), BudgetValue::Finite(Milli::ZERO)), trail: Vec::new(), provisional: false }
    }

    fn push(&mut self, name: &str, note: impl Into<String>, op: ModOp) {
        self.state = op.apply(self.state);
        self.trail.push(Modifier { name: name.to_string(), note: note.into(), op });
    }

    fn base(&mut self, note: String, cell: &Cell) {
        self.provisional |= cell.todo.is_some();
        self.push("base", note, ModOp::Base { att: cell.att, def: cell.def });
    }

    fn delta(&mut self, name: &str, note: impl Into<String>, d: Milli) {
        self.push(name, note, ModOp::Delta { att: d, def: d });
    }

    fn att(&self) -> BudgetValue {
        self.state.0
    }

    fn def(&self) -> BudgetValue {
        self.state.1
    }
}

fn lerp(lo: Milli, hi: Milli, num: i64, den: i64) -> Milli {
    if den == 0 {
        return hi;
    }
    lo + (hi - lo).scale(num, den)
}

fn lerp_value(lo: BudgetValue, hi: BudgetValue, num: i64, den: i64) -> BudgetValue {
    match (lo, hi) {
        (BudgetValue::Finite(a), BudgetValue::Finite(b)) => BudgetValue::Finite(lerp(a, b, num, den)),
        _ => hi,
    }
}

/// Cell between two endpoints, `num/den` of the way from `lo` to `hi`.
fn interpolated(lo: &Cell, hi: &Cell, num: i64, den: i64) -> Cell {
    Cell {
        att: lerp_value(lo.att, hi.att, num, den),
        def: lerp_value(lo.def, hi.def, num, den),
        todo: lo.todo.or(hi.todo),
    }
}

/// Chooses the base cell for a made class: `(variant, cell)`.
fn base_cell(cls: &HandClassification, ctx: &BudgetContext, t: &BudgetTables) -> Result<(String, Cell), BudgetError> {
    let tex = ctx.texture;
    let class = cls.made_class;
    let d = &cls.detail;
    let get = |v: &str| -> Result<(String, Cell), BudgetError> {
        t.cell(class.key(), ctx.pot_type, v).map(|c| (v.to_string(), c)).map_err(|_| BudgetError::MissingCell {
            class: class.key().into(),
            pot: ctx.pot_type.key().into(),
            variant: v.into(),
        })
    };
    let kicker = cls.kicker_tier.unwrap_or(99);
    let first = |names: &[String]| -> Result<(String, Cell), BudgetError> {
        for n in names {
            if let Ok(c) = get(n) {
                return Ok(c);
            }
        }
        get(names.last().unwrap())
    };
    match class {
        MadeClass::Nuts | MadeClass::Trash => get("base"),
        MadeClass::Flush => {
            let tier = d.flush_tier.unwrap_or(99);
            if tex.one_card_flush() {
                if tex.paired() && tier == 1 {
                    return get("ocf_paired_nut");
                }
                first(&[format!("ocf_{tier}"), "ocf_low".into()])
            } else {
                let size = if tier == 1 {
                    "nut"
                } else if d.flush_high.map(|h| h.value() > 9).unwrap_or(false) {
                    "big"
                } else {
                    "small"
                };
                if tex.paired() {
                    get(&format!("paired_{size}"))
                } else {
                    get(size)
                }
            }
        }
        MadeClass::Straight => {
            let two = d.straight_two_card.unwrap_or(false);
            let top = d.straight_top_end.unwrap_or(false);
            let flush = if tex.one_card_flush() {
                "_flush4"
            } else if tex.flush_possible() {
                "_flush3"
            } else {
                ""
            };
            if two {
                if tex.paired() && top && flush.is_empty() {
                    get("two_card_paired_nut")
                } else {
                    get(&format!("two_card{flush}"))
                }
            } else if top {
                get(&format!("one_top{flush}"))
            } else {
                get(&format!("one_low{flush}"))
            }
        }
        MadeClass::Set => {
            let types = tex.one_card_ranks.len();
            if tex.has_ocs() {
                if tex.one_card_flush() {
                    get("ocs_flush4")
                } else {
                    get(if types == 1 { "ocs1" } else { "ocs2" })
                }
            } else if tex.one_card_flush() {
                get("flush4")
            } else if tex.flush_possible() {
                get("flush3")
            } else {
                match tex.two_card_combos {
                    0 => get("dry"),
                    1 => get("str1"),
                    2 => get("str2"),
                    _ => get("str3"),
                }
            }
        }
        MadeClass::Trip => {
            let types = tex.one_card_ranks.len();
            let family = if tex.has_ocs() {
                if tex.one_card_flush() {
                    return get("ocs_flush4");
                }
                if types == 1 {
                    "ocs1"
                } else {
                    "ocs2"
                }
            } else if tex.one_card_flush() {
                return get("flush4");
            } else if tex.flush_possible() {
                "flush3"
            } else {
                "dry"
            };
            let (_, lo) = get(&format!("{family}_lo"))?;
            let (_, hi) = get(&format!("{family}_hi"))?;
            // Kicker 2 maps to the low end, ace to the high end.
            let k = d.kicker.map(|r| r.value() as i64).unwrap_or(2);
            Ok((format!("{family}[kicker {}]", k), interpolated(&lo, &hi, k - 2, 12)))
        }
        MadeClass::TwoPair => {
            let r = d.two_pair_index.unwrap_or(10) as i64;
            let ocs2 = tex.one_card_ranks.len() >= 2;
            if tex.one_card_flush() {
                get(if tex.has_ocs() { "ocf_ocs" } else { "ocf" })
            } else if tex.has_ocs() {
                let n = if ocs2 { "2" } else { "1" };
                if tex.flush_possible() {
                    get(&format!("ocs{n}_flush3"))
                } else {
                    get(&format!("ocs{n}"))
                }
            } else if tex.flush_possible() {
                let (_, top) = get("flush3_r1")?;
                let (_, bottom) = get("flush3_r10")?;
                Ok((format!("flush3[r{r}]"), interpolated(&top, &bottom, r - 1, 9)))
            } else {
                get(&format!("r{r}"))
            }
        }
        MadeClass::Overpair => {
            let key = d.pair_rank.map(|p| format!("{0}{0}", p.to_char())).unwrap_or_default();
            first(&[key, "other".into()])
        }
        MadeClass::TopPair => first(&[format!("k{kicker}"), "other".into()]),
        MadeClass::SecondPair => {
            if d.pocket_pair {
                get("pocket")
            } else {
                first(&[format!("k{kicker}"), "other".into()])
            }
        }
        MadeClass::ThirdPair => {
            if d.pocket_pair {
                get("pocket")
            } else {
                first(&[format!("k{kicker}"), "board_hit".into(), "other".into()])
            }
        }
        MadeClass::FourthFifthPair => {
            let depth = format!("p{}", d.pair_depth.unwrap_or(5));
            if d.pocket_pair {
                first(&["pocket".into(), depth])
            } else {
                first(&["board_hit".into(), depth])
            }
        }
        MadeClass::NutsHigh | MadeClass::SecondHigh => {
            let (_, lo) = get("lo")?;
            let (_, hi) = get("hi")?;
            let (pos, n) = d.kicker_span.unwrap_or((1, 1));
            // Best kicker gets the top of the range.
            let (pos, n) = (pos as i64, n as i64);
            Ok((format!("kicker {pos}/{n}"), interpolated(&hi, &lo, pos - 1, (n - 1).max(0))))
        }
        MadeClass::WeakShowdown => {
            if tex.paired() {
                let p = d.high_card_position.unwrap_or(3);
                first(&[format!("paired_{p}"), "base".into()])
            } else {
                get("base")
            }
        }
    }
}

fn special_key(tier: SpecialTier) -> String {
    match tier {
        SpecialTier::Kicker(n) => format!("kicker{}", n.min(3)),
        SpecialTier::Suited(n) => format!("suited{}", n.min(6)),
        t => t.key(),
    }
}

/// Computes the base budget pair for a classified hand in context.
pub fn compute_budget(cls: &HandClassification, ctx: &BudgetContext, t: &BudgetTables) -> Result<BudgetPair, BudgetError> {
    if ctx.street == Street::Preflop {
        return Err(BudgetError::Preflop);
    }
    let mut b = Builder::new();
    let tex = ctx.texture;
    let si = ctx.street_idx();

    if let Some((board, tier)) = cls.special_board_override {
        let key = special_key(tier);
        let cell = t.special(board.key(), &key)?;
        b.base(format!("special board {} / {key}", board.key()), &cell);
        b.push("floor", "clamp at zero", ModOp::ClampZero);
        let att = b.att();
        return Ok(BudgetPair {
            att,
            def: b.def(),
            modifier_trail: b.trail,
            governing: Governing::Special,
            made_att: att,
            draw_floor: None,
            provisional: b.provisional,
        });
    }

    let class = cls.made_class;
    let (variant, cell) = base_cell(cls, ctx, t)?;
    b.base(format!("{} {} {variant}", class.key(), ctx.pot_type.label()), &cell);

    // Per-class texture adjustments that are not level drops.
    let combos = tex.two_card_combos as i64;
    match class {
        MadeClass::Set if !tex.has_ocs() && tex.three_flush() && combos > 0 => {
            b.delta("straight_possible", format!("{combos} two-card straight combo(s)"), t.texture.set_flush3_per_combo.scale(combos, 1))
        }
        MadeClass::Set if tex.has_ocs() && tex.three_flush() => b.delta("flush_possible", "one-card straight plus three-flush", t.texture.set_ocs_flush3),
        MadeClass::Trip if !tex.has_ocs() && !tex.one_card_flush() && combos > 0 => {
            b.delta("straight_possible", format!("{combos} two-card straight combo(s)"), t.texture.trip_per_combo.scale(combos, 1))
        }
        MadeClass::Trip if tex.has_ocs() && tex.three_flush() => b.delta("flush_possible", "one-card straight plus three-flush", t.texture.trip_ocs_flush3),
        MadeClass::TwoPair if !tex.has_ocs() && !tex.one_card_flush() && combos > 0 => {
            b.delta("straight_possible", format!("{combos} two-card straight combo(s)"), t.texture.two_pair_per_combo.scale(combos, 1))
        }
        _ => {}
    }

    if class.uses_level_drops() {
        level_drops(&mut b, class, ctx, t);
    }

    // Paired-board deltas.
    if tex.paired() {
        let delta = match class {
            MadeClass::Flush if tex.one_card_flush() && cls.detail.flush_tier != Some(1) => t.paired_delta.get("flush_ocf").copied(),
            MadeClass::Straight => {
                let two = cls.detail.straight_two_card.unwrap_or(false);
                let nut_cell = two && cls.detail.straight_top_end == Some(true) && !tex.flush_possible();
                if nut_cell {
                    None
                } else if two {
                    t.paired_delta.get("straight_two_card").copied()
                } else {
                    t.paired_delta.get("straight_one_card").copied()
                }
            }
            c if c.uses_level_drops() => t.paired_delta.get(c.key()).copied(),
            _ => None,
        };
        if let Some(d) = delta {
            b.delta("paired_board", format!("paired board {d}"), d);
        }
    }

    if matches!(class, MadeClass::NutsHigh | MadeClass::SecondHigh) {
        let h = &t.high_card;
        if tex.paired() {
            let (num, den) = ratio(h.paired_def_scale);
            b.push("paired_board", format!("paired board DEF x{}", h.paired_def_scale), ModOp::ScaleDef { num, den });
        }
        let zero = Some(BudgetValue::Finite(Milli::ZERO));
        if tex.one_card_flush() {
            b.push("one_card_flush", "one-card flush: DEF to 0", ModOp::Set { att: None, def: zero });
        } else if tex.flush_possible() {
            let d = h.flush_possible[si];
            b.push("flush_possible", format!("flush possible DEF {d}"), ModOp::Delta { att: Milli::ZERO, def: d });
        }
        if tex.has_ocs() {
            b.push("one_card_straight", "one-card straight: DEF to 0", ModOp::Set { att: None, def: zero });
        } else if tex.two_card_combos > 0 {
            let d = if tex.two_card_combos >= 2 { h.straight_multi[si] } else { h.straight_single[si] };
            b.push("straight_possible", format!("straight possible DEF {d}"), ModOp::Delta { att: Milli::ZERO, def: d });
        }
    }

    let made_hand = class != MadeClass::Trash && class != MadeClass::Nuts;
    if made_hand && ctx.oop && matches!(ctx.street, Street::Flop | Street::Turn) && ctx.spr > t.adjust.oop_min_spr {
        let d = t.adjust.oop_def;
        b.push("oop", format!("out of position DEF {d}"), ModOp::Delta { att: Milli::ZERO, def: d });
    }
    if ctx.street == Street::River && ctx.river_reraise {
        let d = t.adjust.river_reraise_def;
        b.push("river_reraise", format!("river re-raise DEF {d}"), ModOp::Delta { att: Milli::ZERO, def: d });
    }

    let mut governing = Governing::Made;
    let mut draw_floor = None;
    if let Some(dc) = cls.draw_class {
        if class.is_showdown_class() {
            combo_add(&mut b, cls, dc, t, tex.paired());
        }
        let dcell = t.cell(dc.key(), ctx.pot_type, "base")?;
        if let Some(floor) = dcell.att.finite() {
            draw_floor = Some(floor);
            if !b.att().at_least(floor) {
                governing = Governing::Draw;
            }
            b.push("draw_floor", format!("{} floor {floor}", dc.key()), ModOp::FloorAtt { floor });
        }
        if class == MadeClass::Trash {
            b.push("draw_defense", "defense governed by bet-size thresholds", ModOp::Set { att: None, def: Some(BudgetValue::Threshold) });
        }
    }
    let made_att = b
        .trail
        .iter()
        .take_while(|m| m.name != "draw_floor")
        .fold((BudgetValue::Finite(Milli::ZERO), BudgetValue::Finite(Milli::ZERO)), |acc, m| m.op.apply(acc))
        .0
        .map(|m| m.max(Milli::ZERO));
    b.push("floor", "clamp at zero", ModOp::ClampZero);

    Ok(BudgetPair {
        att: b.att(),
        def: b.def(),
        modifier_trail: b.trail,
        governing,
        made_att,
        draw_floor,
        provisional: b.provisional,
    })
}

fn ratio(x: f64) -> (i64, i64) {
    ((x * 1000.0).round() as i64, 1000)
}

fn combo_add(b: &mut Builder, cls: &HandClassification, dc: DrawClass, t: &BudgetTables, paired: bool) {
    let Some(add) = t.combo_add.get(dc.key()).copied() else { return };
    let high_card = matches!(cls.made_class, MadeClass::NutsHigh | MadeClass::SecondHigh | MadeClass::WeakShowdown);
    if high_card && paired {
        // A paired board: the high-card baseline is tiered by top-card position.
        let pos = cls.detail.high_card_position.unwrap_or(3).to_string();
        if let Some(base) = t.combo_paired_base.get(&pos) {
            b.push("combo_baseline", format!("paired-board baseline DEF {base}"), ModOp::Set { att: None, def: Some(BudgetValue::Finite(*base)) });
        }
    }
    b.push("combo", format!("{} adds DEF {add}", dc.key()), ModOp::Delta { att: Milli::ZERO, def: add });
}

/// Texture level drops, walked down the made-class ladder.
fn level_drops(b: &mut Builder, class: MadeClass, ctx: &BudgetContext, t: &BudgetTables) {
    let tex = ctx.texture;
    let si = ctx.street_idx();
    let ld = &t.level_drops;
    let ocf_override = ld.ocf_override.get(class.key()).copied();

    let flush = if tex.one_card_flush() {
        if ocf_override.is_some() {
            None
        } else {
            Some(("one_card_flush", ld.one_card_flush))
        }
    } else if tex.flush_possible() {
        Some(("flush_possible", ld.flush_possible[si]))
    } else {
        None
    };

    // More severe of one-card straight and two-card straight combos.
    let ocs = if tex.ocs_open_ended() {
        Some(("one_card_straight", ld.ocs_open_ended))
    } else if tex.has_ocs() && ld.gutshot_classes.iter().any(|c| c == class.key()) {
        Some(("one_card_straight", ld.ocs_gutshot))
    } else {
        None
    };
    let sp = match tex.two_card_combos {
        0 => None,
        1 => Some(("straight_possible", ld.straight_single[si])),
        _ => Some(("straight_possible", ld.straight_multi[si])),
    };
    let straight = match (ocs, sp) {
        (Some(a), Some(b)) => Some(if b.1 > a.1 { b } else { a }),
        (a, b) => a.or(b),
    };

    let own = (b.att(), b.def());
    let pot = ctx.pot_type;
    let rung = |idx: usize| -> (Milli, Milli) {
        if idx == class.ladder_index() {
            return (own.0.finite().unwrap_or(Milli::ZERO), own.1.finite().unwrap_or(Milli::ZERO));
        }
        let c = MadeClass::ALL[idx.min(MadeClass::ALL.len() - 1)];
        t.ladder_cell(pot, c).unwrap_or((Milli::ZERO, Milli::ZERO))
    };
    let last = MadeClass::Trash.ladder_index();
    let mut pos = class.ladder_index() as i64 * 1000;
    for (name, drop) in [flush, straight].into_iter().flatten() {
        pos += drop.0;
        let lo = ((pos / 1000) as usize).min(last);
        let frac = if lo == last { 0 } else { pos % 1000 };
        let (a0, d0) = rung(lo);
        let (a1, d1) = rung((lo + 1).min(last));
        let att = lerp(a0, a1, frac, 1000);
        let def = lerp(d0, d1, frac, 1000);
        let landed = MadeClass::ALL[lo];
        b.push(
            name,
            format!("drop {drop} levels (to {}{})", landed.key(), if frac > 0 { "+" } else { "" }),
            ModOp::Set { att: Some(BudgetValue::Finite(att)), def: Some(BudgetValue::Finite(def)) },
        );
    }
    if let (true, Some(o)) = (tex.one_card_flush(), ocf_override) {
        b.push("one_card_flush", "one-card flush, no flush held", ModOp::Set { att: Some(BudgetValue::Finite(o.att)), def: None });
        b.push("one_card_flush_cap", format!("DEF capped at {}", o.def_cap), ModOp::CapDef { cap: o.def_cap });
    }
}

/// What is left of one budget side after the weighted pressure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Remaining {
    pub value: BudgetValue,
    pub used: Milli,
}

impl Remaining {
    /// True when at least `n` remains (unlimited always qualifies).
    pub fn at_least(&self, n: Milli) -> bool {
        self.value.at_least(n)
    }

    pub fn display(&self) -> String {
        match self.value {
            BudgetValue::Finite(m) => m.fmt1_signed(),
            v => v.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemainingBudget {
    pub att: Remaining,
    pub def: Remaining,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Attack,
    Defense,
}

pub fn remaining(b: &BudgetPair, p: &PressureSummary, side: Side) -> Remaining {
    let (v, used) = match side {
        Side::Attack => (b.att, p.hero_weighted),
        Side::Defense => (b.def, p.opponent_weighted),
    };
    Remaining { value: v.map(|m| m - used), used }
}

pub fn remaining_budget(b: &BudgetPair, p: &PressureSummary) -> RemainingBudget {
    RemainingBudget { att: remaining(b, p, Side::Attack), def: remaining(b, p, Side::Defense) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Ruling {
    /// Betting permitted, but the check threshold favours pot control.
    BetAllowed,
    CheckForced,
    BetOrCheckRaise,
    /// River, zero showdown value, not facing a bet.
    PolarizedBluffOrCheck,
    /// River value hand not acting first out of position: bet.
    ValueBetRequired,
    /// River thin value: check back.
    ShowdownCheck,
    CallOrRaise,
    /// River value hand facing a bet: raise.
    RaiseRequired,
    Call,
    Fold,
    /// Facing a shove: continue only with enough equity.
    AllInDecision,
}

impl Ruling {
    pub fn label(self) -> &'static str {
        match self {
            Ruling::BetAllowed => "BET allowed (CHECK preferred for pot control)",
            Ruling::CheckForced => "CHECK",
            Ruling::BetOrCheckRaise => "BET or CHECK-RAISE",
            Ruling::PolarizedBluffOrCheck => "POLARIZED BET (bluff) or CHECK or BLOCK BET",
            Ruling::ValueBetRequired => "BET for value",
            Ruling::ShowdownCheck => "CHECK (showdown value only)",
            Ruling::CallOrRaise => "CALL or RAISE",
            Ruling::RaiseRequired => "RAISE for value",
            Ruling::Call => "CALL",
            Ruling::Fold => "FOLD",
            Ruling::AllInDecision => "CALL only with enough equity, else FOLD",
        }
    }

    pub fn allows_aggression(self) -> bool {
        matches!(
            self,
            Ruling::BetAllowed
                | Ruling::BetOrCheckRaise
                | Ruling::PolarizedBluffOrCheck
                | Ruling::ValueBetRequired
                | Ruling::CallOrRaise
                | Ruling::RaiseRequired
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetVerdict {
    pub remaining: RemainingBudget,
    pub ruling: Ruling,
    pub reason: String,
}

/// `att_total >= bets_placed + remaining_streets + 1`.
pub fn raise_gate(att_total: BudgetValue, bets_placed: u32, remaining_streets: u32) -> bool {
    att_total.at_least(Milli::from_units(bets_placed as i64 + remaining_streets as i64 + 1))
}

/// True when checking is preferred: `att_total < weighted + remaining + 1`.
pub fn check_gate(att_total: BudgetValue, weighted_so_far: Milli, remaining_streets: u32) -> bool {
    !att_total.at_least(weighted_so_far + Milli::from_units(remaining_streets as i64 + 1))
}

fn draw_defends(cls: &HandClassification, r: &ContextReport, t: &BudgetTables) -> Option<bool> {
    let dc = cls.draw_class?;
    let dd = t.draw_defense.get(dc.key())?;
    let pct = r.facing_pct.unwrap_or(0.0);
    let max = dd.max_pct(r.street, r.facing)?;
    Some(pct <= max)
}

/// Turns remaining budget into the binding ruling.
pub fn verdict(b: &BudgetPair, report: &ContextReport, t: &BudgetTables) -> BudgetVerdict {
    let rem = remaining_budget(b, &report.pressure);
    let made = report.hand.as_ref().map(|h| h.made_class).unwrap_or(MadeClass::Trash);
    let river = report.street == Street::River;
    let oop_first = report.first_to_act;
    let p = &report.pressure;
    let value_rem = Milli::ONE;
    let showdown_rem = Milli(500);
    let att_left = |n: Milli| rem.att.at_least(n);
    let positive = !rem.att.value.finite().map(|m| m <= Milli::ZERO).unwrap_or(false);

    let (ruling, reason) = if !report.facing.is_facing() {
        if river && made == MadeClass::Trash {
            (Ruling::PolarizedBluffOrCheck, "river bluff: no showdown value, not facing a bet".to_string())
        } else if !positive {
            (Ruling::CheckForced, format!("attack remaining {} <= 0", rem.att.display()))
        } else if river && !oop_first && att_left(value_rem) {
            (Ruling::ValueBetRequired, "river value: attack remaining >= 1 and not acting first out of position".into())
        } else if river && !oop_first && !att_left(showdown_rem + Milli(1)) && report.spr > 0.5 {
            (Ruling::ShowdownCheck, "river showdown: attack remaining <= 0.5".into())
        } else if check_gate(b.att, p.total_weighted, report.remaining_streets) {
            (
                Ruling::BetAllowed,
                format!(
                    "attack {} < weighted {} + remaining streets {} + 1",
                    b.att,
                    p.total_weighted,
                    report.remaining_streets
                ),
            )
        } else {
            (Ruling::BetOrCheckRaise, format!("attack remaining {}", rem.att.display()))
        }
    } else {
        let gate = raise_gate(b.att, p.bets_placed, report.remaining_streets) && positive;
        let def_ok = match b.def {
            BudgetValue::Threshold => report.hand.as_ref().and_then(|h| draw_defends(h, report, t)).unwrap_or(false),
            _ => rem.def.at_least(Milli::ZERO),
        };
        if b.def.is_unlimited() {
            (Ruling::CallOrRaise, "unlimited defense".to_string())
        } else if report.facing == Facing::AllIn {
            if def_ok {
                (Ruling::AllInDecision, "facing all-in: implied odds are zero".into())
            } else {
                (Ruling::Fold, "facing all-in without the defense to continue".into())
            }
        } else if river && made != MadeClass::Trash && att_left(value_rem) && b.def != BudgetValue::Threshold {
            (Ruling::RaiseRequired, "river value: raise, never flat".into())
        } else if gate && !(river && !att_left(showdown_rem + Milli(1))) {
            (Ruling::CallOrRaise, format!("attack {} meets raise threshold {}", b.att, p.bets_placed + report.remaining_streets + 1))
        } else if def_ok {
            (Ruling::Call, format!("defense remaining {}", rem.def.display()))
        } else {
            (Ruling::Fold, format!("defense remaining {}", rem.def.display()))
        }
    };
    BudgetVerdict { remaining: rem, ruling, reason }
}
