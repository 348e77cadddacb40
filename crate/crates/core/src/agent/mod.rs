//! Decision assembly: analyse a node, build the prompt, ask a policy and
//! ground its answer to a legal action.

pub mod ground;
pub mod llm;
pub mod prompt;

pub use ground::{parse_decision, rule_policy, validate_and_ground, ActionSource, FallbackCounter, GroundedAction, ParseError, ParsedDecision};
pub use llm::{Flavor, LlmClient, LlmClientConfig, LlmError};
pub use prompt::{build_prompt, PromptBundle, PromptSection};

use crate::budget::{compute_budget, verdict, BudgetContext, BudgetError, BudgetPair, BudgetVerdict};
use crate::context::{build_report, ContextError, ContextReport};
use crate::game::{GameError, GameState, LegalActionSet, Street};
use crate::skills::{SkillFragment, SkillLibrary};
use crate::viable::{compute_viable, sizing_menu, SizingMenu, ViableActionSet, ViableConfig, ViableError};
use serde::{Deserialize, Serialize};
use crate::chips::Chips;
use sha2::{Digest, Sha256};
use std::collections::VecDeque;
use std::time::Instant;
use std::sync::{Arc, Mutex};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AgentError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error(transparent)]
    Budget(#[from] BudgetError),
    #[error(transparent)]
    Viable(#[from] ViableError),
}

/// Everything the engine computes for one decision.
#[derive(Debug, Clone)]
pub struct NodeAnalysis<'a> {
    pub report: ContextReport,
    pub legal: LegalActionSet,
    pub budget: Option<BudgetPair>,
    pub verdict: Option<BudgetVerdict>,
    pub viable: ViableActionSet,
    /// Postflop only.
    pub menu: Option<SizingMenu>,
    pub fragments: Vec<&'a SkillFragment>,
}

pub fn analyze<'a>(state: &GameState, lib: &'a SkillLibrary, cfg: &ViableConfig) -> Result<NodeAnalysis<'a>, AgentError> {
    let legal = state.legal_actions()?;
    let report = build_report(state, &lib.context_tables())?;
    let (budget, verdict_) = match (&report.hand, BudgetContext::from_report(&report)) {
        (Some(cls), Some(ctx)) if report.street != Street::Preflop => {
            let b = compute_budget(cls, &ctx, &lib.budgets)?;
            let v = verdict(&b, &report, &lib.budgets);
            (Some(b), Some(v))
        }
        _ => (None, None),
    };
    let decision = budget.as_ref().zip(verdict_.as_ref());
    let viable = compute_viable(state, &report, decision, lib, cfg)?;
    let menu = (report.street != Street::Preflop)
        .then(|| sizing_menu(report.pot, report.effective_stack, report.street, report.pot_type));
    let fragments = lib.select_fragments(&report);
    Ok(NodeAnalysis { report, legal, budget, verdict: verdict_, viable, menu, fragments })
}

/// One prompt/response exchange earlier in the same hand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exchange {
    pub prompt: String,
    pub response: String,
}

/// Prior exchanges replayed to a chat policy; cleared between hands.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conversation {
    pub exchanges: Vec<Exchange>,
}

impl Conversation {
    pub fn reset(&mut self) {
        self.exchanges.clear();
    }
}

/// What a policy produced for a prompt.
#[derive(Debug, Clone, PartialEq)]
pub enum PolicyOutput {
    /// Text to be parsed.
    Raw(String),
    /// A decision made without text (the rule policy).
    Grounded(GroundedAction),
    /// The policy could not answer; grounding falls back.
    Failed(String),
}

pub trait Policy: Send + Sync {
    fn name(&self) -> String;
    /// Remote policies get their latency recorded; local ones stay
    /// deterministic.
    fn is_remote(&self) -> bool {
        false
    }
    fn decide(&self, node: &NodeAnalysis, prompt: &PromptBundle, convo: &Conversation) -> PolicyOutput;
}

/// Always takes the first viable option at its midpoint size.
#[derive(Debug, Clone, Copy, Default)]
pub struct RulePolicy;

impl Policy for RulePolicy {
    fn name(&self) -> String {
        "rule".into()
    }

    fn decide(&self, node: &NodeAnalysis, _prompt: &PromptBundle, _convo: &Conversation) -> PolicyOutput {
        PolicyOutput::Grounded(rule_policy(&node.viable, &node.legal))
    }
}

/// A chat model behind an HTTP endpoint.
pub struct LlmPolicy {
    pub client: LlmClient,
}

impl Policy for LlmPolicy {
    fn name(&self) -> String {
        format!("llm:{}", self.client.config().model)
    }

    fn is_remote(&self) -> bool {
        true
    }

    fn decide(&self, _node: &NodeAnalysis, prompt: &PromptBundle, convo: &Conversation) -> PolicyOutput {
        match self.client.complete(prompt, convo) {
            Ok(text) => PolicyOutput::Raw(text),
            Err(e) => PolicyOutput::Failed(e.to_string()),
        }
    }
}

/// Replays canned replies in order; `Failed` once they run out.
#[derive(Debug, Default)]
pub struct ScriptedPolicy {
    replies: Mutex<VecDeque<String>>,
}

impl ScriptedPolicy {
    pub fn new<I: IntoIterator<Item = S>, S: Into<String>>(replies: I) -> ScriptedPolicy {
        ScriptedPolicy { replies: Mutex::new(replies.into_iter().map(Into::into).collect()) }
    }
}

impl Policy for ScriptedPolicy {
    fn name(&self) -> String {
        "scripted".into()
    }

    fn decide(&self, _node: &NodeAnalysis, _prompt: &PromptBundle, _convo: &Conversation) -> PolicyOutput {
        match self.replies.lock().unwrap_or_else(|e| e.into_inner()).pop_front() {
            Some(r) => PolicyOutput::Raw(r),
            None => PolicyOutput::Failed("script exhausted".into()),
        }
    }
}

/// The engine's reading of a node, compact enough to log per decision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeDigest {
    pub street: Street,
    pub pot: Chips,
    pub to_call: Chips,
    /// Two decimals.
    pub spr: f64,
    pub pot_type: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hand_class: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub scenario: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub preflop: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ruling: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub att_remaining: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub def_remaining: Option<String>,
}

impl NodeDigest {
    pub fn of(node: &NodeAnalysis) -> NodeDigest {
        let r = &node.report;
        NodeDigest {
            street: r.street,
            pot: r.pot,
            to_call: r.to_call,
            spr: (r.spr * 100.0).round() / 100.0,
            pot_type: r.pot_type.label().to_string(),
            hand_class: r.hand.as_ref().map(|h| h.headline()),
            scenario: r.scenario.as_ref().map(|s| s.code.clone()),
            preflop: r.preflop.map(|p| p.key().to_string()),
            ruling: node.verdict.as_ref().map(|v| v.ruling.label().to_string()),
            att_remaining: node.verdict.as_ref().map(|v| v.remaining.att.display()),
            def_remaining: node.verdict.as_ref().map(|v| v.remaining.def.display()),
        }
    }
}

/// A decision with the material needed to audit it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionRecord {
    pub digest: NodeDigest,
    pub grounded: GroundedAction,
    pub viable: ViableActionSet,
    pub fragment_ids: Vec<String>,
    /// sha256 of the rendered prompt.
    pub prompt_hash: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub prompt: Option<String>,
    /// Remote policies only.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub latency_ms: Option<u64>,
}

/// Policy plus the shared library and grounding counter.
#[derive(Clone)]
pub struct Agent {
    pub lib: Arc<SkillLibrary>,
    pub policy: Arc<dyn Policy>,
    pub viable_cfg: ViableConfig,
    pub counter: Arc<FallbackCounter>,
    /// Keep the rendered prompt in decision records.
    pub keep_prompts: bool,
}

impl Agent {
    pub fn new(lib: Arc<SkillLibrary>, policy: Arc<dyn Policy>) -> Agent {
        Agent { lib, policy, viable_cfg: ViableConfig::default(), counter: Arc::new(FallbackCounter::default()), keep_prompts: false }
    }

    /// Decides for the player to act. Conversation context is extended
    /// with this exchange when the policy answered in text.
    pub fn act(&self, state: &GameState, convo: &mut Conversation) -> Result<DecisionRecord, AgentError> {
        let node = analyze(state, &self.lib, &self.viable_cfg)?;
        let prompt = build_prompt(state, &node, &self.lib);
        let started = Instant::now();
        let output = self.policy.decide(&node, &prompt, convo);
        let latency_ms = self.policy.is_remote().then(|| started.elapsed().as_millis() as u64);
        let grounded = match output {
            PolicyOutput::Grounded(g) => {
                self.counter.record(g.source == ActionSource::Fallback);
                g
            }
            PolicyOutput::Raw(text) => {
                let g = validate_and_ground(parse_decision(&text), Some(&text), &node.legal, &node.viable);
                self.counter.record(g.source == ActionSource::Fallback);
                convo.exchanges.push(Exchange { prompt: prompt.rendered_text.clone(), response: text });
                g
            }
            PolicyOutput::Failed(msg) => {
                let g = validate_and_ground(Err(ParseError::Policy(msg)), None, &node.legal, &node.viable);
                self.counter.record(true);
                g
            }
        };
        Ok(DecisionRecord {
            digest: NodeDigest::of(&node),
            grounded,
            prompt_hash: hex::encode(Sha256::digest(prompt.rendered_text.as_bytes())),
            latency_ms,
            viable: node.viable.clone(),
            fragment_ids: node.fragments.iter().map(|f| f.id.clone()).collect(),
            prompt: self.keep_prompts.then(|| prompt.rendered_text.clone()),
        })
    }
}

#[cfg(test)]
mod tests;
