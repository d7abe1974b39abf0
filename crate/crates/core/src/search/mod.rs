//! Searches over voltage assignments: exhaustive backtracking, tabu search
//! and hill climbing over growing base graphs.

mod bta;
pub mod config;
pub mod cost;
mod hill;
pub mod sink;
mod tabu;

pub use bta::{bta, BtaOutcome};
pub use config::{ConfigError, SearchConfig, TabuMode};
pub use cost::{cost_girth, cost_reg, walk_cost};
pub use hill::{admissible_moves, hill_climb, HillOutcome, Move};
pub use sink::{CollectSink, Collected, Found, Offer, Problem, ProblemParseError, Sink};
pub use tabu::{tabu_search, TabuList, TabuOutcome, TabuStatus};
