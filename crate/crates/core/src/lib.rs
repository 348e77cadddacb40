//! Deterministic decision scaffolding for heads-up no-limit hold'em agents.
//!
//! The pipeline runs in fixed stages: the game state is summarized into a
//! [`context::ContextReport`], a hand-class budget is computed and turned
//! into a binding verdict, the verdict is mapped to a bounded menu of viable
//! actions, matching skill fragments are retrieved, and a policy (rule based
//! or a remote language model) picks one option, which is then validated.

pub mod cards;
pub mod chips;
pub mod eval;
pub mod game;
pub mod units;
pub mod context;
pub mod skills;
pub mod budget;

pub use cards::{Card, Rank, Suit};
pub use chips::Chips;
pub use eval::{evaluate_best5, Category, HandRank};
pub use game::{Action, ActionKind, ActionRecord, GameState, LegalActionSet, PotType, Seat, Street};
pub mod viable;
pub mod agent;
