//! Possible-winner decisions.
//!
//! Plurality and veto go through flow feasibility; every other rule uses the
//! pruned search in [`search`].

mod classify;
mod plurality;
mod search;
mod veto;

pub use classify::{classify_rule, rule_family, solver_kind, Classification, Complexity, RuleFamily, SolverKind};
pub use plurality::pw_plurality;
pub use search::{pw_search, pw_search_with, SearchConfig, DEFAULT_BUDGET};
pub use veto::pw_veto;

use crate::candidates::CandidateSet;
use crate::error::Result;
use crate::order::{PartialOrder, TotalOrder, Vote};
use crate::profile::Profile;
use crate::rule::ScoringRule;
use crate::winners::Semantics;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PwStats {
    /// Partial assignments extended during search.
    pub nodes: u64,
    /// Full completions whose scores were tested.
    pub completions: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PwAnswer {
    pub is_possible_winner: bool,
    /// A completion in which `c` wins; present on every yes answer.
    pub witness: Option<Profile>,
    pub stats: PwStats,
}

impl PwAnswer {
    pub(crate) fn no(stats: PwStats) -> Self {
        PwAnswer {
            is_possible_winner: false,
            witness: None,
            stats,
        }
    }

    pub(crate) fn yes(witness: Profile, stats: PwStats) -> Self {
        PwAnswer {
            is_possible_winner: true,
            witness: Some(witness),
            stats,
        }
    }
}

/// Decides whether `c` wins some completion, using the solver chosen by
/// [`solver_kind`] and the default search budget.
pub fn possible_winner(profile: &Profile, rule: &ScoringRule, c: usize, semantics: Semantics) -> Result<PwAnswer> {
    possible_winner_with(profile, rule, c, semantics, &SearchConfig::default())
}

pub fn possible_winner_with(
    profile: &Profile,
    rule: &ScoringRule,
    c: usize,
    semantics: Semantics,
    config: &SearchConfig,
) -> Result<PwAnswer> {
    profile.candidates().check_index(c)?;
    match solver_kind(rule) {
        SolverKind::Plurality => pw_plurality(profile, c, semantics),
        SolverKind::Veto => pw_veto(profile, c, semantics),
        SolverKind::Search => pw_search_with(profile, rule, c, semantics, config),
    }
}

/// Completes `p` greedily, earliest name first, with `top` forced first and
/// `bottom` forced last. Both must be placeable there.
pub(crate) fn complete_greedy(
    p: &PartialOrder,
    candidates: &CandidateSet,
    top: Option<usize>,
    bottom: Option<usize>,
) -> TotalOrder {
    let m = p.m();
    let rank = candidates.name_rank();
    let mut pending: Vec<usize> = (0..m).map(|x| p.n_above(x)).collect();
    let mut used = vec![false; m];
    let mut out = Vec::with_capacity(m);
    let place = |x: usize, pending: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<usize>| {
        used[x] = true;
        out.push(x);
        for y in 0..m {
            if p.prefers(x, y) {
                pending[y] -= 1;
            }
        }
    };
    if let Some(t) = top {
        debug_assert_eq!(pending[t], 0, "forced top must be maximal");
        place(t, &mut pending, &mut used, &mut out);
    }
    while out.len() < m {
        let next = (0..m)
            .filter(|&x| !used[x] && pending[x] == 0)
            .filter(|&x| Some(x) != bottom || out.len() == m - 1)
            .min_by_key(|&x| rank[x])
            .expect("a poset always has a maximal element");
        place(next, &mut pending, &mut used, &mut out);
    }
    TotalOrder::new(out).expect("greedy completion is a permutation")
}

/// Maximal elements (possible tops) of a vote.
pub(crate) fn maximal(p: &PartialOrder) -> Vec<usize> {
    (0..p.m()).filter(|&x| p.n_above(x) == 0).collect()
}

/// Minimal elements (possible bottoms) of a vote.
pub(crate) fn minimal(p: &PartialOrder) -> Vec<usize> {
    (0..p.m()).filter(|&x| p.n_below(x) == 0).collect()
}

/// The trivial completion of a single-candidate profile.
pub(crate) fn trivial_completion(profile: &Profile) -> Profile {
    let votes = profile
        .votes()
        .iter()
        .map(|v| match v {
            Vote::Total(t) => Vote::Total(t.clone()),
            Vote::Partial(p) => Vote::Total(complete_greedy(p, profile.candidates(), None, None)),
        })
        .collect();
    Profile::new(profile.candidates().clone(), votes).expect("same size")
}
