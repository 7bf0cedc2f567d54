//! Positional scoring elections over incomplete preferences.
//!
//! Necessary- and possible-winner solvers, the score gadget, the matching
//! reductions and brute-force oracles that check all of them.

pub mod candidates;
pub mod error;
pub mod flow;
pub mod gadget;
pub mod gen;
pub mod io;
pub mod oracle;
pub mod order;
pub mod profile;
pub mod pw;
pub mod reductions;
pub mod rule;
pub mod truncated;
pub mod winners;

pub use candidates::CandidateSet;
pub use error::{Error, Result};
pub use order::{classify_order, OrderClass, PartialOrder, TotalOrder, Vote};
pub use profile::Profile;
pub use pw::{possible_winner, PwAnswer, PwStats, SearchConfig};
pub use rule::{parse_rule, RuleClass, ScoringRule, ScoringVector};
pub use winners::{necessary_winner, score, winners, ScoreTable, Semantics};
