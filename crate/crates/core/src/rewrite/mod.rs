//! Contexts, the Buchholz-style hydra rules, the two termination-proof
//! harnesses, and a game engine that checks strict `⋘`-descent on every
//! step.

mod context;
mod game;
mod methods;
mod rules;
mod trace;

use thiserror::Error;

use crate::labels::OrderError;
use crate::terms::{Position, TermError};

pub use context::{CiContext, Context};
pub use game::{
    has_initial_shape, is_terminal_shape, play, FirstStrategy, GameConfig, GameError, GameTrace, GreedyLargest,
    Interactive, Outcome, RandomStrategy, Redex, Scripted, Step, Strategy,
};
pub use methods::{
    check_generic_method, check_rule_decrease, full_substitution_counterexample, random_numeral,
    random_numeral_substitution, CounterexampleReport, DecreaseReport, GenericOptions, GenericReport,
};
pub use rules::{
    apply_rule, enumerate_moves, instantiate, Bounds, HydraRule, InstanceDetail, Move, RuleInstance, RuleTag,
};
pub use trace::{parse_trace, render_trace, replay, ReplayReport, TraceError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("{rule} does not match: {reason}")]
    Shape { rule: RuleTag, reason: String },
    #[error("invalid rule parameter: {0}")]
    Parameter(String),
    #[error("position {0} does not address a node")]
    BadPosition(Position),
    #[error("the term is not path comparable")]
    NotInDomain,
    #[error("the result is not path comparable")]
    NotPathComparable,
    #[error("the order has no rho element")]
    NoRho,
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Order(#[from] OrderError),
}
