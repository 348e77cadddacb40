//! Parsing policy replies and grounding them to legal actions.

use crate::chips::Chips;
use crate::game::{Action, LegalActionSet};
use crate::viable::ViableActionSet;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::sync::atomic::{AtomicU64, Ordering};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("no JSON object in response")]
    NoJson,
    #[error("malformed JSON: {0}")]
    Malformed(String),
    #[error("missing `action` field")]
    MissingAction,
    #[error("unknown action `{0}`")]
    UnknownAction(String),
    #[error("bet or raise without a usable amount")]
    MissingAmount,
    #[error("policy failure: {0}")]
    Policy(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParsedDecision {
    pub action: Action,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reasoning: Option<String>,
}

/// Extracts `{action, amount, reasoning?}` from a reply. Accepts a bare
/// object, or one embedded in surrounding text or a code fence.
pub fn parse_decision(raw: &str) -> Result<ParsedDecision, ParseError> {
    let obj = extract_object(raw)?;
    let action = obj.get("action").ok_or(ParseError::MissingAction)?;
    let code = match action {
        Value::String(s) => s.trim().to_ascii_lowercase(),
        other => return Err(ParseError::UnknownAction(other.to_string())),
    };
    let amount = match obj.get("amount") {
        None | Some(Value::Null) => None,
        Some(Value::Number(n)) => n.as_f64(),
        Some(Value::String(s)) => s.trim().parse::<f64>().ok(),
        Some(_) => None,
    };
    let reasoning = obj.get("reasoning").and_then(|r| r.as_str()).map(str::to_string);
    let action = match code.as_str() {
        "f" | "fold" => Action::Fold,
        "k" | "x" | "check" => Action::Check,
        "c" | "call" => Action::Call,
        "a" | "allin" | "all-in" | "all_in" | "shove" | "jam" => Action::AllIn,
        "b" | "r" | "bet" | "raise" => {
            let bb = amount.filter(|a| a.is_finite() && *a > 0.0).ok_or(ParseError::MissingAmount)?;
            Action::BetTo(Chips::from_bb_f64(bb).ok_or(ParseError::MissingAmount)?)
        }
        other => return Err(ParseError::UnknownAction(other.to_string())),
    };
    Ok(ParsedDecision { action, reasoning })
}

fn extract_object(raw: &str) -> Result<serde_json::Map<String, Value>, ParseError> {
    if let Ok(Value::Object(m)) = serde_json::from_str::<Value>(raw.trim()) {
        return Ok(m);
    }
    // First balanced-looking object in the text.
    let start = raw.find('{').ok_or(ParseError::NoJson)?;
    let end = raw.rfind('}').filter(|e| *e > start).ok_or(ParseError::NoJson)?;
    match serde_json::from_str::<Value>(&raw[start..=end]) {
        Ok(Value::Object(m)) => Ok(m),
        Ok(_) => Err(ParseError::NoJson),
        Err(e) => Err(ParseError::Malformed(e.to_string())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionSource {
    Policy,
    Fallback,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundedAction {
    pub action: Action,
    pub source: ActionSource,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub raw_response: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reasoning: Option<String>,
    /// Why the policy's answer was rejected.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fallback_reason: Option<String>,
}

/// Shoves that can only be calls are calls.
fn normalize(a: Action, legal: &LegalActionSet) -> Action {
    match a {
        Action::AllIn if legal.all_in_to.is_none() && legal.call_to.is_some() => Action::Call,
        Action::BetTo(x) if legal.bet.is_none() && legal.all_in_to == Some(x) => Action::AllIn,
        a => a,
    }
}

fn fallback(viable: &ViableActionSet, legal: &LegalActionSet, raw: Option<&str>, reason: String) -> GroundedAction {
    GroundedAction {
        action: viable.conservative().midpoint_action(legal),
        source: ActionSource::Fallback,
        raw_response: raw.map(str::to_string),
        reasoning: None,
        fallback_reason: Some(reason),
    }
}

/// Passes a parsed decision through when it is legal and matches a viable
/// option; anything else becomes the conservative option. Never clamps.
pub fn validate_and_ground(
    parsed: Result<ParsedDecision, ParseError>,
    raw: Option<&str>,
    legal: &LegalActionSet,
    viable: &ViableActionSet,
) -> GroundedAction {
    let p = match parsed {
        Ok(p) => p,
        Err(e) => return fallback(viable, legal, raw, e.to_string()),
    };
    let action = normalize(p.action, legal);
    if !legal.contains(&action) {
        return fallback(viable, legal, raw, format!("illegal action {action}"));
    }
    if !viable.admits(&action, legal) {
        return fallback(viable, legal, raw, format!("{action} is not among the viable options"));
    }
    GroundedAction { action, source: ActionSource::Policy, raw_response: raw.map(str::to_string), reasoning: p.reasoning, fallback_reason: None }
}

/// First option under the configured ordering, at its midpoint size.
pub fn rule_policy(viable: &ViableActionSet, legal: &LegalActionSet) -> GroundedAction {
    GroundedAction {
        action: normalize(viable.options[0].midpoint_action(legal), legal),
        source: ActionSource::Policy,
        raw_response: None,
        reasoning: None,
        fallback_reason: None,
    }
}

/// Decision and fallback totals, shared across tables.
#[derive(Debug, Default)]
pub struct FallbackCounter {
    decisions: AtomicU64,
    fallbacks: AtomicU64,
}

impl FallbackCounter {
    pub fn record(&self, fell_back: bool) {
        self.decisions.fetch_add(1, Ordering::Relaxed);
        if fell_back {
            self.fallbacks.fetch_add(1, Ordering::Relaxed);
        }
    }

    pub fn decisions(&self) -> u64 {
        self.decisions.load(Ordering::Relaxed)
    }

    pub fn fallbacks(&self) -> u64 {
        self.fallbacks.load(Ordering::Relaxed)
    }

    pub fn rate(&self) -> f64 {
        let d = self.decisions();
        if d == 0 {
            0.0
        } else {
            self.fallbacks() as f64 / d as f64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_wire_forms() {
        let p = parse_decision(r#"{"action":"b","amount":5,"reasoning":"semi-bluff"}"#).unwrap();
        assert_eq!(p.action, Action::BetTo(Chips::from_bb(5)));
        assert_eq!(p.reasoning.as_deref(), Some("semi-bluff"));
        assert_eq!(parse_decision(r#"{"action":"k"}"#).unwrap().action, Action::Check);
        assert_eq!(parse_decision(r#"{"action": "b", "amount": 9.0, "reasoning": "x"}"#).unwrap().action, Action::BetTo(Chips(900)));
        let fenced = "Here you go:\n```json\n{\"action\": \"call\", \"amount\": null}\n```";
        assert_eq!(parse_decision(fenced).unwrap().action, Action::Call);
        assert_eq!(parse_decision(r#"{"action":"raise","amount":"12.5"}"#).unwrap().action, Action::BetTo(Chips(1250)));
        assert_eq!(parse_decision(r#"{"action":"allin"}"#).unwrap().action, Action::AllIn);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_decision("I would check here."), Err(ParseError::NoJson));
        assert_eq!(parse_decision(r#"{"action":"b"}"#), Err(ParseError::MissingAmount));
        assert_eq!(parse_decision(r#"{"action":"b","amount":-3}"#), Err(ParseError::MissingAmount));
        assert!(matches!(parse_decision(r#"{"action":"q"}"#), Err(ParseError::UnknownAction(_))));
        assert_eq!(parse_decision(r#"{"amount":3}"#), Err(ParseError::MissingAction));
        assert!(matches!(parse_decision("{action: b}"), Err(ParseError::Malformed(_))));
    }

    #[test]
    fn counter() {
        let c = FallbackCounter::default();
        c.record(false);
        c.record(true);
        assert_eq!((c.decisions(), c.fallbacks()), (2, 1));
        assert_eq!(c.rate(), 0.5);
    }
}
