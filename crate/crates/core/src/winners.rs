//! Scores, winner sets and the necessary-winner test.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::order::{PartialOrder, TotalOrder, Vote};
use crate::profile::Profile;
use crate::rule::{ScoringRule, ScoringVector};

/// Co-winner (c has a maximum score) or unique winner (c alone on top).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Semantics {
    #[default]
    Cowinner,
    Unique,
}

impl std::str::FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "cowinner" | "co-winner" => Ok(Semantics::Cowinner),
            "unique" => Ok(Semantics::Unique),
            _ => Err(format!("unknown semantics `{s}` (cowinner|unique)")),
        }
    }
}

/// Per-candidate totals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoreTable {
    scores: Vec<BigInt>,
}

impl ScoreTable {
    pub fn zeros(m: usize) -> Self {
        ScoreTable {
            scores: vec![BigInt::zero(); m],
        }
    }

    pub fn get(&self, c: usize) -> &BigInt {
        &self.scores[c]
    }

    pub fn scores(&self) -> &[BigInt] {
        &self.scores
    }

    pub fn into_scores(self) -> Vec<BigInt> {
        self.scores
    }

    pub fn total(&self) -> BigInt {
        self.scores.iter().sum()
    }

    pub fn add_vote(&mut self, t: &TotalOrder, vector: &ScoringVector) {
        for (pos, c) in t.iter().enumerate() {
            self.scores[c] += vector.get(pos);
        }
    }

    pub fn winners(&self, semantics: Semantics) -> Vec<usize> {
        winners_from_scores(&self.scores, semantics)
    }
}

/// Vector for `m` candidates, or `None` when there is a single candidate.
pub(crate) fn vector_for(rule: &ScoringRule, m: usize) -> Result<Option<ScoringVector>> {
    if m <= 1 {
        Ok(None)
    } else {
        rule.vector(m).map(Some)
    }
}

pub fn score(profile: &Profile, rule: &ScoringRule) -> Result<ScoreTable> {
    match vector_for(rule, profile.m())? {
        Some(v) => score_with(profile, &v),
        None => {
            profile.total_votes()?;
            Ok(ScoreTable::zeros(profile.m()))
        }
    }
}

pub fn score_with(profile: &Profile, vector: &ScoringVector) -> Result<ScoreTable> {
    if vector.len() != profile.m() {
        return Err(Error::InvalidVector(format!(
            "length {} for {} candidates",
            vector.len(),
            profile.m()
        )));
    }
    let mut table = ScoreTable::zeros(profile.m());
    for t in profile.total_votes()? {
        table.add_vote(t, vector);
    }
    Ok(table)
}

pub fn score_orders<'a, I>(m: usize, votes: I, vector: &ScoringVector) -> ScoreTable
where
    I: IntoIterator<Item = &'a TotalOrder>,
{
    let mut table = ScoreTable::zeros(m);
    for t in votes {
        table.add_vote(t, vector);
    }
    table
}

pub fn winners_from_scores(scores: &[BigInt], semantics: Semantics) -> Vec<usize> {
    let Some(best) = scores.iter().max() else {
        return Vec::new();
    };
    let top: Vec<usize> = (0..scores.len()).filter(|&c| &scores[c] == best).collect();
    match semantics {
        Semantics::Cowinner => top,
        Semantics::Unique if top.len() == 1 => top,
        Semantics::Unique => Vec::new(),
    }
}

pub fn is_winner(scores: &[BigInt], c: usize, semantics: Semantics) -> bool {
    let sc = &scores[c];
    scores.iter().enumerate().all(|(r, s)| {
        r == c
            || match semantics {
                Semantics::Cowinner => s <= sc,
                Semantics::Unique => s < sc,
            }
    })
}

pub fn winners(profile: &Profile, rule: &ScoringRule, semantics: Semantics) -> Result<Vec<usize>> {
    Ok(score(profile, rule)?.winners(semantics))
}

/// Max over linear extensions of `vote` of `s_pos(u) - s_pos(v)`.
///
/// Exact for every partial order: the positions `u` can take form the
/// interval `[above(u), m-1-below(u)]`, and when `v ≻ u` the closest feasible
/// pair for a given position `j` of `v` puts `u` at
/// `max(above(u), j + 1 + between(v, u))`.
pub fn pairwise_vote_max_advantage(
    vote: &PartialOrder,
    vector: &ScoringVector,
    u: usize,
    v: usize,
) -> BigInt {
    assert_ne!(u, v, "advantage of a candidate over itself");
    let m = vote.m();
    assert_eq!(m, vector.len(), "vector length");
    let s = |p: usize| vector.get(p);
    let above_u = vote.n_above(u);
    let below_u = vote.n_below(u);
    let above_v = vote.n_above(v);
    let below_v = vote.n_below(v);
    if !vote.prefers(v, u) {
        return s(above_u) - s(m - 1 - below_v);
    }
    let between = vote.n_between(v, u);
    let mut best: Option<BigInt> = None;
    for j in above_v..=(m - 1 - below_v) {
        let i = above_u.max(j + 1 + between);
        if i > m - 1 - below_u {
            break;
        }
        let d = s(i) - s(j);
        if best.as_ref().is_none_or(|b| &d > b) {
            best = Some(d);
        }
    }
    best.expect("v ≻ u leaves a feasible placement")
}

fn vote_max_advantage(vote: &Vote, vector: &ScoringVector, u: usize, v: usize) -> BigInt {
    match vote {
        Vote::Total(t) => {
            let pos = t.positions();
            vector.get(pos[u]) - vector.get(pos[v])
        }
        Vote::Partial(p) => pairwise_vote_max_advantage(p, vector, u, v),
    }
}

/// True iff `c` wins in every completion.
///
/// For each rival the worst case over completions decomposes vote by vote,
/// so no completion is enumerated.
pub fn necessary_winner(
    profile: &Profile,
    rule: &ScoringRule,
    c: usize,
    semantics: Semantics,
) -> Result<bool> {
    profile.candidates().check_index(c)?;
    match vector_for(rule, profile.m())? {
        None => Ok(true),
        Some(v) => necessary_winner_with(profile, &v, c, semantics),
    }
}

pub fn necessary_winner_with(
    profile: &Profile,
    vector: &ScoringVector,
    c: usize,
    semantics: Semantics,
) -> Result<bool> {
    profile.candidates().check_index(c)?;
    let m = profile.m();
    for r in (0..m).filter(|&r| r != c) {
        let worst: BigInt = profile
            .votes()
            .iter()
            .map(|v| vote_max_advantage(v, vector, r, c))
            .sum();
        let beaten = match semantics {
            Semantics::Cowinner => worst > BigInt::zero(),
            Semantics::Unique => worst >= BigInt::zero(),
        };
        if beaten {
            return Ok(false);
        }
    }
    Ok(true)
}
