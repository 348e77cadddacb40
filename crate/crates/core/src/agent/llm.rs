//! Blocking chat-completion client with a forced `submit_action` tool.
//!
//! Two wire flavours are supported: OpenAI-compatible `chat/completions`
//! and Anthropic `messages`. Transient failures (429, 5xx, timeouts,
//! connection errors) are retried with exponential backoff; other client
//! errors are returned immediately.

use super::prompt::PromptBundle;
use super::Conversation;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::sync::{Condvar, Mutex};
use std::time::Duration;

pub const TOOL_NAME: &str = "submit_action";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    #[default]
    #[serde(rename = "openai")]
    OpenAi,
    Anthropic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LlmClientConfig {
    /// Full URL of the completion endpoint.
    pub endpoint: String,
    pub model: String,
    /// Environment variable holding the API key; empty means no auth header.
    pub api_key_env: String,
    pub flavor: Flavor,
    pub temperature: f64,
    pub max_tokens: u32,
    /// Concurrent requests allowed through this client.
    pub max_in_flight: usize,
    pub timeout_ms: u64,
    /// Retries after the first attempt.
    pub retries: u32,
    pub backoff_ms: u64,
}

impl Default for LlmClientConfig {
    fn default() -> Self {
        LlmClientConfig {
            endpoint: "https://api.openai.com/v1/chat/completions".into(),
            model: "gpt-4o".into(),
            api_key_env: "OPENAI_API_KEY".into(),
            flavor: Flavor::OpenAi,
            temperature: 1.0,
            max_tokens: 1024,
            max_in_flight: 4,
            timeout_ms: 60_000,
            retries: 4,
            backoff_ms: 500,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LlmError {
    #[error("missing API key: environment variable {0} is not set")]
    MissingKey(String),
    #[error("http client: {0}")]
    Client(String),
    #[error("HTTP {status}: {body}")]
    Status { status: u16, body: String },
    #[error("transport: {0}")]
    Transport(String),
    #[error("unexpected response shape: {0}")]
    Shape(String),
    #[error("gave up after {attempts} attempts: {last}")]
    Exhausted { attempts: u32, last: String },
}

/// Counting semaphore; std has none.
struct Gate {
    free: Mutex<usize>,
    cv: Condvar,
}

struct Permit<'a>(&'a Gate);

impl Gate {
    fn new(n: usize) -> Gate {
        Gate { free: Mutex::new(n.max(1)), cv: Condvar::new() }
    }

    fn acquire(&self) -> Permit<'_> {
        let mut free = self.free.lock().unwrap_or_else(|e| e.into_inner());
        while *free == 0 {
            free = self.cv.wait(free).unwrap_or_else(|e| e.into_inner());
        }
        *free -= 1;
        Permit(self)
    }
}

impl Drop for Permit<'_> {
    fn drop(&mut self) {
        *self.0.free.lock().unwrap_or_else(|e| e.into_inner()) += 1;
        self.0.cv.notify_one();
    }
}

pub struct LlmClient {
    cfg: LlmClientConfig,
    http: reqwest::blocking::Client,
    key: Option<String>,
    gate: Gate,
}

enum Attempt {
    Done(String),
    Retry { reason: String, wait: Option<Duration> },
    Fatal(LlmError),
}

impl LlmClient {
    pub fn new(cfg: LlmClientConfig) -> Result<LlmClient, LlmError> {
        let key = if cfg.api_key_env.is_empty() {
            None
        } else {
            Some(std::env::var(&cfg.api_key_env).map_err(|_| LlmError::MissingKey(cfg.api_key_env.clone()))?)
        };
        let http = reqwest::blocking::Client::builder()
            .timeout(Duration::from_millis(cfg.timeout_ms))
            .build()
            .map_err(|e| LlmError::Client(e.to_string()))?;
        let gate = Gate::new(cfg.max_in_flight);
        Ok(LlmClient { cfg, http, key, gate })
    }

    pub fn config(&self) -> &LlmClientConfig {
        &self.cfg
    }

    /// Sends the prompt (after replaying earlier exchanges of the hand) and
    /// returns the tool arguments as JSON text, or the plain text reply if
    /// the model ignored the tool.
    pub fn complete(&self, prompt: &PromptBundle, convo: &Conversation) -> Result<String, LlmError> {
        let body = self.request_body(prompt, convo);
        let _permit = self.gate.acquire();
        let mut last = String::new();
        let attempts = self.cfg.retries + 1;
        for i in 0..attempts {
            match self.attempt(&body) {
                Attempt::Done(s) => return Ok(s),
                Attempt::Fatal(e) => return Err(e),
                Attempt::Retry { reason, wait } => {
                    log::warn!("llm attempt {} failed: {reason}", i + 1);
                    last = reason;
                    if i + 1 < attempts {
                        let backoff = Duration::from_millis(self.cfg.backoff_ms.saturating_mul(1 << i.min(16)));
                        std::thread::sleep(wait.unwrap_or(backoff));
                    }
                }
            }
        }
        Err(LlmError::Exhausted { attempts, last })
    }

    fn attempt(&self, body: &Value) -> Attempt {
        let mut req = self.http.post(&self.cfg.endpoint).json(body);
        req = match (self.cfg.flavor, &self.key) {
            (Flavor::OpenAi, Some(k)) => req.bearer_auth(k),
            (Flavor::Anthropic, Some(k)) => req.header("x-api-key", k),
            (_, None) => req,
        };
        if self.cfg.flavor == Flavor::Anthropic {
            req = req.header("anthropic-version", "2023-06-01");
        }
        let resp = match req.send() {
            Ok(r) => r,
            Err(e) if e.is_timeout() || e.is_connect() || e.is_request() => {
                return Attempt::Retry { reason: e.to_string(), wait: None }
            }
            Err(e) => return Attempt::Fatal(LlmError::Transport(e.to_string())),
        };
        let status = resp.status();
        let retry_after = resp
            .headers()
            .get(reqwest::header::RETRY_AFTER)
            .and_then(|v| v.to_str().ok())
            .and_then(|v| v.trim().parse::<u64>().ok())
            .map(Duration::from_secs);
        let text = match resp.text() {
            Ok(t) => t,
            Err(e) => return Attempt::Retry { reason: e.to_string(), wait: None },
        };
        if status.as_u16() == 429 || status.is_server_error() {
            return Attempt::Retry { reason: format!("HTTP {}", status.as_u16()), wait: retry_after };
        }
        if !status.is_success() {
            return Attempt::Fatal(LlmError::Status { status: status.as_u16(), body: truncate(&text, 500) });
        }
        match serde_json::from_str::<Value>(&text) {
            Ok(v) => match extract_reply(self.cfg.flavor, &v) {
                Some(s) => Attempt::Done(s),
                None => Attempt::Fatal(LlmError::Shape(truncate(&text, 500))),
            },
            Err(e) => Attempt::Fatal(LlmError::Shape(e.to_string())),
        }
    }

    pub fn request_body(&self, prompt: &PromptBundle, convo: &Conversation) -> Value {
        let mut turns = Vec::new();
        for ex in &convo.exchanges {
            turns.push(json!({"role": "user", "content": ex.prompt}));
            turns.push(json!({"role": "assistant", "content": ex.response}));
        }
        turns.push(json!({"role": "user", "content": prompt.rendered_text}));
        match self.cfg.flavor {
            Flavor::OpenAi => {
                let mut messages = vec![json!({"role": "system", "content": prompt.system})];
                messages.extend(turns);
                json!({
                    "model": self.cfg.model,
                    "messages": messages,
                    "temperature": self.cfg.temperature,
                    "max_tokens": self.cfg.max_tokens,
                    "tools": [{"type": "function", "function": {
                        "name": TOOL_NAME,
                        "description": "Submit the poker action.",
                        "parameters": action_schema(),
                    }}],
                    "tool_choice": {"type": "function", "function": {"name": TOOL_NAME}},
                })
            }
            Flavor::Anthropic => json!({
                "model": self.cfg.model,
                "system": prompt.system,
                "messages": turns,
                "temperature": self.cfg.temperature,
                "max_tokens": self.cfg.max_tokens,
                "tools": [{"name": TOOL_NAME, "description": "Submit the poker action.", "input_schema": action_schema()}],
                "tool_choice": {"type": "tool", "name": TOOL_NAME},
            }),
        }
    }
}

pub fn action_schema() -> Value {
    json!({
        "type": "object",
        "properties": {
            "action": {"type": "string", "enum": ["f", "k", "c", "b", "a"]},
            "amount": {"type": ["number", "null"], "description": "Total bet/raise-to amount in BB for b."},
            "reasoning": {"type": "string"},
        },
        "required": ["action"],
    })
}

/// Tool arguments as JSON text, falling back to the text content.
pub fn extract_reply(flavor: Flavor, v: &Value) -> Option<String> {
    match flavor {
        Flavor::OpenAi => {
            let msg = v.get("choices")?.get(0)?.get("message")?;
            let tool = msg
                .get("tool_calls")
                .and_then(|t| t.get(0))
                .and_then(|t| t.get("function"))
                .and_then(|f| f.get("arguments"));
            match tool {
                Some(Value::String(s)) => Some(s.clone()),
                Some(o @ Value::Object(_)) => Some(o.to_string()),
                _ => msg.get("content").and_then(Value::as_str).map(str::to_string),
            }
        }
        Flavor::Anthropic => {
            let blocks = v.get("content")?.as_array()?;
            if let Some(b) = blocks.iter().find(|b| b.get("type").and_then(Value::as_str) == Some("tool_use")) {
                return b.get("input").map(Value::to_string);
            }
            let text: Vec<&str> = blocks
                .iter()
                .filter(|b| b.get("type").and_then(Value::as_str) == Some("text"))
                .filter_map(|b| b.get("text").and_then(Value::as_str))
                .collect();
            (!text.is_empty()).then(|| text.join(""))
        }
    }
}

fn truncate(s: &str, n: usize) -> String {
    match s.char_indices().nth(n) {
        Some((i, _)) => format!("{}...", &s[..i]),
        None => s.to_string(),
    }
}
