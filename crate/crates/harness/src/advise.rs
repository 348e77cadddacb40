//! Single-node analysis for inspection from the command line.

use hunl_core::agent::{analyze, build_prompt, rule_policy, AgentError, NodeDigest, PromptBundle};
use hunl_core::budget::{BudgetPair, BudgetVerdict};
use hunl_core::cards::{parse_cards, CardError};
use hunl_core::chips::Chips;
use hunl_core::context::ContextReport;
use hunl_core::game::{apply_compact, Action, GameError, GameState, Position, Seat, TableConfig};
use hunl_core::skills::SkillLibrary;
use hunl_core::viable::{ViableActionSet, ViableConfig};
use serde::Serialize;
use std::fmt::Write as _;

/// A decision point described from the hero's side.
#[derive(Debug, Clone, PartialEq)]
pub struct AdviseInput {
    pub hole: String,
    /// Revealed board; must match the street the history reaches.
    pub board: String,
    /// Compact history, e.g. `r2.75 r9 c / b5 c`.
    pub history: String,
    pub hero: Position,
    /// Starting stacks in BB: hero, villain.
    pub stacks: [f64; 2],
}

impl Default for AdviseInput {
    fn default() -> Self {
        AdviseInput { hole: String::new(), board: String::new(), history: String::new(), hero: Position::BigBlind, stacks: [200.0, 200.0] }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum AdviseError {
    #[error("hole cards: {0}")]
    Hole(CardError),
    #[error("board: {0}")]
    Board(CardError),
    #[error("need exactly two hole cards, got {0}")]
    HoleCount(usize),
    #[error("stack {0} BB is not a positive amount")]
    Stack(f64),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("history reaches the {street} ({need} board cards) but {have} were given")]
    BoardLength { street: &'static str, need: usize, have: usize },
    #[error("after the history it is not the hero's turn")]
    NotHeroTurn,
    #[error(transparent)]
    Agent(#[from] AgentError),
}

#[derive(Debug, Clone, Serialize)]
pub struct AdvisorReport {
    pub digest: NodeDigest,
    pub report: ContextReport,
    pub budget: Option<BudgetPair>,
    pub verdict: Option<BudgetVerdict>,
    pub viable: ViableActionSet,
    pub fragment_ids: Vec<String>,
    pub prompt: PromptBundle,
    pub rule_action: Action,
}

pub fn build_state(input: &AdviseInput) -> Result<GameState, AdviseError> {
    let hole = parse_cards(&input.hole).map_err(AdviseError::Hole)?;
    if hole.len() != 2 {
        return Err(AdviseError::HoleCount(hole.len()));
    }
    let board = parse_cards(&input.board).map_err(AdviseError::Board)?;
    let mut stacks = [Chips::ZERO; 2];
    for (i, bb) in input.stacks.iter().enumerate() {
        stacks[i] = Chips::from_bb_f64(*bb).filter(|c| *c > Chips::ZERO).ok_or(AdviseError::Stack(*bb))?;
    }
    // Button is seat 0.
    let hero = if input.hero == Position::Button { Seat::Zero } else { Seat::One };
    let mut holes = [None, None];
    holes[hero.index()] = Some([hole[0], hole[1]]);
    let seat_stacks = if hero == Seat::Zero { stacks } else { [stacks[1], stacks[0]] };
    let cfg = TableConfig { stacks: seat_stacks, ..TableConfig::default() };
    let st = GameState::new(cfg, Seat::Zero, holes, board.clone())?;
    let st = apply_compact(st, &input.history)?;
    if st.board.len() != board.len() {
        return Err(AdviseError::BoardLength { street: st.street.name(), need: st.street.board_len(), have: board.len() });
    }
    if st.to_act != Some(hero) {
        return Err(AdviseError::NotHeroTurn);
    }
    Ok(st)
}

/// Pure analysis of a node; nothing is sent anywhere.
pub fn advise(input: &AdviseInput, lib: &SkillLibrary, cfg: &ViableConfig) -> Result<(GameState, AdvisorReport), AdviseError> {
    let st = build_state(input)?;
    let node = analyze(&st, lib, cfg)?;
    let prompt = build_prompt(&st, &node, lib);
    let rule_action = rule_policy(&node.viable, &node.legal).action;
    let rep = AdvisorReport {
        digest: NodeDigest::of(&node),
        fragment_ids: node.fragments.iter().map(|f| f.id.clone()).collect(),
        report: node.report,
        budget: node.budget,
        verdict: node.verdict,
        viable: node.viable,
        prompt,
        rule_action,
    };
    Ok((st, rep))
}

impl AdvisorReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.prompt.rendered_text.trim_end());
        let _ = writeln!(s);
        let _ = writeln!(s, "---");
        if let Some(v) = &self.verdict {
            let _ = writeln!(s, "Verdict: attack remaining {} | {}", v.remaining.att.display(), v.ruling.label());
        }
        let _ = writeln!(s, "Viable: {}", self.viable.describe());
        let _ = writeln!(s, "Rule policy: {}", self.rule_action);
        let _ = writeln!(s, "Skills: {}", self.fragment_ids.join(", "));
        s
    }
}
