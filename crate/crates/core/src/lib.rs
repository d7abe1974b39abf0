//! Search engine for small regular graphs of prescribed girth built as
//! lifts of voltage assignments on pregraphs.

pub mod group;
pub mod graph;
pub mod pregraph;
pub mod voltage;
pub mod lift;
pub mod verify;
pub mod basegen;
pub mod search;
pub mod excision;
pub mod catalog;
pub mod fixtures;
pub mod runner;
