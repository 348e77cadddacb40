//! Match runner, hand histories and advisor for `hunl-core` agents.

pub mod advise;
pub mod deal;
pub mod history;
pub mod play;
pub mod stats;

pub use advise::{advise, AdviseError, AdviseInput, AdvisorReport};
pub use deal::{deal, Deal};
pub use history::{read_history, read_history_partial, verify_record, write_history, DecisionEntry, HandHistoryRecord, HistoryError};
pub use play::{play_hand, play_match, HandSlot, MatchConfig, MatchError};
pub use stats::MatchStats;

use hunl_core::agent::{Agent, LlmClient, LlmClientConfig, LlmError, LlmPolicy, RulePolicy};
use hunl_core::skills::SkillLibrary;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

/// `rule` or `llm:<path to client config TOML>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AgentSpec {
    Rule,
    Llm(PathBuf),
}

impl FromStr for AgentSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            None if s == "rule" => Ok(AgentSpec::Rule),
            Some(("llm", p)) if !p.is_empty() => Ok(AgentSpec::Llm(PathBuf::from(p))),
            _ => Err(format!("expected `rule` or `llm:<config.toml>`, got `{s}`")),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error(transparent)]
    Client(#[from] LlmError),
}

pub fn load_llm_config(path: &Path) -> Result<LlmClientConfig, ConfigError> {
    let p = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Read { path: p.clone(), message: e.to_string() })?;
    toml::from_str(&text).map_err(|e| ConfigError::Parse { path: p, message: e.to_string() })
}

pub fn build_agent(spec: &AgentSpec, lib: Arc<SkillLibrary>) -> Result<Agent, ConfigError> {
    Ok(match spec {
        AgentSpec::Rule => Agent::new(lib, Arc::new(RulePolicy)),
        AgentSpec::Llm(path) => {
            let client = LlmClient::new(load_llm_config(path)?)?;
            Agent::new(lib, Arc::new(LlmPolicy { client }))
        }
    })
}
