//! Prompt assembly. Rendering is a pure function of the node, so the same
//! decision always produces byte-identical text.

use super::NodeAnalysis;
use crate::budget::{BudgetValue, Ruling};
use crate::chips::Chips;
use crate::context::{ContextReport, PrimaryClass};
use crate::game::{GameState, PotType, Street};
use crate::skills::{render_fragments, Layer, RaiseSizing, SkillFragment, SkillLibrary};
use crate::units::Milli;
use crate::viable::{defense_thresholds, geometric_fraction, DefenseThreshold};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

pub const OUTPUT_SCHEMA_LINE: &str = r#"What is your action? Respond in JSON: {"action": "X", "amount": N, "reasoning": "..."}"#;
pub const FINAL_LINE: &str = "Return JSON only.";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptSection {
    pub name: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptBundle {
    /// Standing instructions (P1 system fragments), sent as the system turn.
    pub system: String,
    /// Situation, computed context, budget verdict, selected skills, viable
    /// options, output, in that order.
    pub sections: Vec<PromptSection>,
    pub rendered_text: String,
    pub manifest_hash: String,
}

pub const SECTION_NAMES: [&str; 6] = ["situation", "computed_context", "budget_verdict", "selected_skills", "viable_options", "output"];

pub fn build_prompt(state: &GameState, node: &NodeAnalysis, lib: &SkillLibrary) -> PromptBundle {
    let r = &node.report;
    let (system, skills, output): (Vec<&SkillFragment>, Vec<&SkillFragment>, Vec<&SkillFragment>) = {
        let mut sys = Vec::new();
        let mut sk = Vec::new();
        let mut out = Vec::new();
        for f in &node.fragments {
            match (f.layer, f.slot.as_str()) {
                (Layer::P1, "system") => sys.push(*f),
                (Layer::P1, "output") => out.push(*f),
                _ => sk.push(*f),
            }
        }
        (sys, sk, out)
    };
    let texture = r.texture.as_ref().map(|t| format!("{} {}", r.street.name().to_uppercase(), t.describe())).unwrap_or_default();
    let bodies = [
        situation(state, node),
        computed_context(r, lib),
        budget_verdict(node, lib),
        render_fragments(&skills, &[("texture", texture.as_str())]),
        viable_options(node),
        output_section(&output),
    ];
    let sections: Vec<PromptSection> =
        SECTION_NAMES.iter().zip(bodies).map(|(n, t)| PromptSection { name: n.to_string(), text: t.trim_end().to_string() }).collect();
    let rendered_text = sections.iter().filter(|s| !s.text.is_empty()).map(|s| s.text.as_str()).collect::<Vec<_>>().join("\n\n") + "\n";
    PromptBundle { system: render_fragments(&system, &[]).trim_end().to_string(), sections, rendered_text, manifest_hash: lib.hash().to_string() }
}

fn bb(c: Chips) -> String {
    format!("{} BB", c.fixed2())
}

fn situation(state: &GameState, node: &NodeAnalysis) -> String {
    let r = &node.report;
    let mut s = String::new();
    let _ = writeln!(s, "[SITUATION]");
    let _ = writeln!(
        s,
        "Street: {} | Pot: {} | To call: {}",
        r.street.name().to_uppercase(),
        bb(r.pot),
        bb(r.to_call)
    );
    let _ = writeln!(
        s,
        "Hero: {} ({}), holding {}{} ({})",
        r.position.short(),
        if r.position.is_ip() { "in position" } else { "out of position" },
        r.hole[0],
        r.hole[1],
        r.hand_label
    );
    if !r.board.is_empty() {
        let board: Vec<String> = r.board.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(s, "Board: {}", board.join(" "));
    }
    let _ = writeln!(
        s,
        "Stacks: hero {}, villain {}, effective {} | SPR: {}",
        bb(r.hero_stack),
        bb(r.villain_stack),
        bb(r.effective_stack),
        r.spr_display()
    );
    let _ = writeln!(s, "Action history:");
    let lines = state.history_lines();
    if lines.is_empty() {
        let _ = writeln!(s, "  (none; blinds posted)");
    }
    for l in lines {
        let _ = writeln!(s, "  {l}");
    }
    let _ = writeln!(s, "LEGAL ACTIONS: {}", node.legal.describe());
    s
}

/// Weakest class that still bets for value, given how many weighted bets
/// the next bet would make and the pot type.
pub fn value_baseline(pot: PotType, next_bet: Milli) -> (&'static str, Milli, &'static str) {
    let (tag, shift) = match pot {
        PotType::ThreeBet => ("3bp", Milli(500)),
        PotType::FourBetPlus => ("4bp", Milli(1000)),
        _ => ("none", Milli::ZERO),
    };
    let eff = next_bet - shift;
    let class = if eff < Milli(1500) {
        "second pair"
    } else if eff < Milli(2500) {
        "top pair"
    } else if eff < Milli(3500) {
        "overpair"
    } else {
        "two pair"
    };
    (tag, shift, class)
}

fn computed_context(r: &ContextReport, lib: &SkillLibrary) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "[COMPUTED CONTEXT]");
    let _ = writeln!(
        s,
        "Pot type: {} | Role: {} | Position: {}{}",
        r.pot_type.label(),
        r.role.key(),
        if r.position.is_ip() { "IP" } else { "OOP" },
        if r.first_to_act { ", first to act" } else { "" }
    );
    if let Some(sc) = r.preflop {
        let entry = lib.ranges.entry(sc, r.hole);
        let range = lib.ranges.scenario(sc);
        let _ = writeln!(s, "[RANGE TABLE] scenario={} hand={}", sc.key(), r.hand_label);
        let _ = writeln!(
            s,
            "raise {:.0}% | call {:.0}% | fold {:.0}%",
            entry.raise * 100.0,
            entry.call * 100.0,
            entry.fold() * 100.0
        );
        let sizing = match range.sizing {
            RaiseSizing::ToBb { lo, hi } => format!("raise to {lo}-{hi} BB"),
            RaiseSizing::Multiple { lo, hi } => format!("raise to {lo}-{hi}x the current bet"),
            RaiseSizing::AllIn => "raises are all-in".to_string(),
        };
        let _ = writeln!(s, "Sizing: {sizing}");
        if lib.ranges.placeholder {
            let _ = writeln!(s, "(Range data is a placeholder chart.)");
        }
        return s;
    }
    if let Some(t) = &r.texture {
        let _ = writeln!(s, "Board texture: {} ({})", t.describe(), t.wetness.key());
    }
    if let Some(h) = &r.hand {
        let primary = match h.primary_class() {
            PrimaryClass::Made(_) => "made hand",
            PrimaryClass::Draw(_) => "draw",
        };
        let _ = writeln!(s, "Hand class: {} [{}; plays as {}]", h.describe(), h.headline(), primary);
    }
    if let Some(sc) = &r.scenario {
        let _ = writeln!(s, "Scenario: {} -- {}", sc.code, sc.summary);
    }
    let p = &r.pressure;
    let _ = writeln!(
        s,
        "Weighted postflop bets so far: {} (hero: {}). Next bet counts as #{}.",
        p.total_weighted, p.hero_weighted, p.next_bet_index
    );
    let _ = writeln!(s, "Cumulative attacks so far: {} weighted bets", p.hero_weighted.fmt1());
    let (tag, shift, class) = value_baseline(r.pot_type, p.next_bet_index);
    let _ = writeln!(
        s,
        "Value threshold ({}, {} -{}, {} weighted bets): {}+ bets for value.",
        r.pot_type.label(),
        tag,
        shift,
        p.next_bet_index,
        class
    );
    s
}

fn budget_verdict(node: &NodeAnalysis, lib: &SkillLibrary) -> String {
    let r = &node.report;
    let mut s = String::new();
    let _ = writeln!(s, "[BUDGET VERDICT]");
    let (Some(b), Some(v)) = (&node.budget, &node.verdict) else {
        let _ = writeln!(s, "Preflop: follow the range table; no street budgets apply yet.");
        return s;
    };
    let _ = writeln!(
        s,
        ">>> ATTACK BUDGET: {} | used: {} | remaining: {} | {} <<<",
        b.attack_summary(),
        v.remaining.att.used,
        v.remaining.att.display(),
        if r.facing.is_facing() { "facing a bet" } else { v.ruling.label() }
    );
    let def = match b.def {
        BudgetValue::Threshold => {
            let thr = r
                .hand
                .as_ref()
                .and_then(|h| h.draw_class)
                .and_then(|d| defense_thresholds(&lib.budgets, d, r.street, r.position.is_ip(), if r.facing.is_facing() { r.facing } else { crate::context::Facing::Bet }).ok());
            match thr {
                Some(DefenseThreshold::MaxBetPct(p)) => format!("pot odds: continue against bets up to {p:.0}% pot"),
                Some(DefenseThreshold::Any) => "pot odds: continue against any bet".to_string(),
                Some(DefenseThreshold::Never) => "pot odds: fold to bets".to_string(),
                Some(DefenseThreshold::Equity(e)) => format!("all-in: need equity >= {e:.0}%"),
                None => "no draw left".to_string(),
            }
        }
        other => other.to_string(),
    };
    let _ = writeln!(
        s,
        ">>> DEFENSE BUDGET: {} | used: {} | remaining: {} | {} <<<",
        def,
        v.remaining.def.used,
        v.remaining.def.display(),
        if r.facing.is_facing() { v.ruling.label() } else { "no bet faced" }
    );
    if b.provisional {
        let _ = writeln!(s, "(Budget uses a provisional table value.)");
    }
    let _ = writeln!(s, "Reason: {}", v.reason);
    if v.ruling == Ruling::CheckForced {
        let _ = writeln!(s, "Attack budget exhausted: do not bet.");
    }
    s
}

fn viable_options(node: &NodeAnalysis) -> String {
    let r = &node.report;
    let mut s = String::new();
    let _ = writeln!(s, "[VIABLE OPTIONS]");
    let _ = writeln!(s, "-> Viable options: {}", node.viable.describe());
    if let Some(m) = &node.menu {
        let _ = writeln!(s);
        let _ = writeln!(s, "[BET SIZING REFERENCE (pot = {}, amounts in BB)]", bb(m.pot));
        for row in &m.rows {
            let _ = writeln!(s, "- {}% pot = {}", row.pct, row.amount.fixed2());
        }
        let _ = writeln!(s, "- MAX ALL-IN (capped): {} ({:.0}% pot)", bb(m.all_in_cap), m.cap_pct());
        if let Some(d) = m.default_bet {
            let _ = writeln!(s, "- Limped pot: default bet {}", bb(d));
        }
        let streets = r.remaining_streets + 1;
        if r.street != Street::Preflop && r.spr > 0.0 {
            let pct = geometric_fraction(r.spr, streets) * 100.0;
            let _ = writeln!(s);
            let _ = writeln!(s, "[GEOMETRIC SIZING]");
            let _ = writeln!(
                s,
                "- Geometric bet would be {:.0}% pot per street over {} street{} ({} now)",
                pct,
                streets,
                if streets == 1 { "" } else { "s" },
                bb(r.pot.percent(pct))
            );
        }
    }
    s
}

fn output_section(frags: &[&SkillFragment]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "[OUTPUT]");
    let body = render_fragments(frags, &[]);
    if !body.is_empty() {
        s.push_str(&body);
    }
    let _ = writeln!(s, "{OUTPUT_SCHEMA_LINE}");
    let _ = writeln!(s, "{FINAL_LINE}");
    s
}
