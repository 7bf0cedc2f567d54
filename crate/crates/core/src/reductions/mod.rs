//! 3DM instances and the partial-chain hardness reductions, with
//! certificate translation in both directions.

pub(crate) mod build;
mod pvalued;
mod threedm;
mod two_valued;
mod unbounded;

pub use pvalued::{find_run, reduce_pvalued, RunCase};
pub use threedm::{solve_3dm_bruteforce, Matching, ThreeDm};
pub use two_valued::{reduce_2approval, reduce_2valued};
pub use unbounded::reduce_unbounded;


use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::candidates::CandidateSet;
use crate::error::{Error, Result};
use crate::order::{PartialOrder, TotalOrder, Vote};
use crate::profile::Profile;
use crate::rule::ScoringVector;
use crate::winners::{is_winner, score_orders, Semantics};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    TwoApproval,
    TwoValued,
    PValued,
    Unbounded,
    Ttb,
    Btb,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::TwoApproval => "2approval",
            Variant::TwoValued => "2valued",
            Variant::PValued => "pvalued",
            Variant::Unbounded => "unbounded",
            Variant::Ttb => "ttb",
            Variant::Btb => "btb",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "2approval" => Variant::TwoApproval,
            "2valued" => Variant::TwoValued,
            "pvalued" => Variant::PValued,
            "unbounded" => Variant::Unbounded,
            "ttb" => Variant::Ttb,
            "btb" => Variant::Btb,
            _ => return Err(Error::Reduction(format!("unknown variant `{s}`"))),
        })
    }
}

/// How a variable vote shows that its triple was picked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// The special candidate sits in the top `k` positions.
    TopK(usize),
    XBelowY,
    /// The special candidate sits below `z`.
    GBelowZ,
    YAboveX,
    XBelowZ,
}

impl Pattern {
    /// `roles` is `[x, y, z]` of the vote's triple.
    pub fn activated(&self, order: &TotalOrder, roles: [usize; 3], special: Option<usize>) -> bool {
        let [x, y, z] = roles;
        match *self {
            Pattern::TopK(k) => special.is_some_and(|d| order.position_of(d) < k),
            Pattern::XBelowY => order.prefers(y, x),
            Pattern::GBelowZ => special.is_some_and(|g| order.prefers(z, g)),
            Pattern::YAboveX => order.prefers(y, x),
            Pattern::XBelowZ => order.prefers(z, x),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::TopK(k) => write!(f, "top-k:{k}"),
            Pattern::XBelowY => f.write_str("x-below-y"),
            Pattern::GBelowZ => f.write_str("g-below-z"),
            Pattern::YAboveX => f.write_str("y-above-x"),
            Pattern::XBelowZ => f.write_str("x-below-z"),
        }
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(k) = s.strip_prefix("top-k:") {
            return k
                .parse()
                .map(Pattern::TopK)
                .map_err(|_| Error::Reduction(format!("bad pattern `{s}`")));
        }
        Ok(match s {
            "x-below-y" => Pattern::XBelowY,
            "g-below-z" => Pattern::GBelowZ,
            "y-above-x" => Pattern::YAboveX,
            "x-below-z" => Pattern::XBelowZ,
            _ => return Err(Error::Reduction(format!("bad pattern `{s}`"))),
        })
    }
}

/// Score of a candidate in the reference completion plus `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Exact(BigInt),
    /// Strictly below the bound.
    Below(BigInt),
}

impl Target {
    pub fn accepts(&self, s: &BigInt) -> bool {
        match self {
            Target::Exact(t) => s == t,
            Target::Below(t) => s < t,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub variant: Variant,
    pub rule: String,
    pub instance: ThreeDm,
    pub candidates: CandidateSet,
    /// Normalised vector for `candidates.len()` positions.
    pub vector: ScoringVector,
    /// `P`, one vote per triple.
    pub variable: Vec<PartialOrder>,
    /// `Q`.
    pub rigid: Vec<TotalOrder>,
    /// `s(Q, ·)`, cached.
    pub rigid_scores: Vec<BigInt>,
    /// The unactivated completion `P′` of every vote.
    pub reference: Vec<TotalOrder>,
    /// The completion each vote takes when its triple is picked.
    pub activated: Vec<TotalOrder>,
    pub c: usize,
    pub sink: usize,
    /// `d1` or `g` where the pattern needs one.
    pub special: Option<usize>,
    pub lambda: BigInt,
    /// Scores of `P′ ∪ Q`.
    pub targets: Vec<Target>,
    /// Maximum partial scores, for the truncated variants. `None` for `c`
    /// and the sink.
    pub mu: Option<Vec<Option<BigInt>>>,
    pub vote_to_triple: Vec<usize>,
    /// `x`, `y`, `z` candidates by element index (0-based).
    pub elements: [Vec<usize>; 3],
    pub pattern: Pattern,
}

impl ReductionOutput {
    pub fn m(&self) -> usize {
        self.candidates.len()
    }

    /// `P ∪ Q` as one profile, variable votes first.
    pub fn profile(&self) -> Profile {
        let votes = self
            .variable
            .iter()
            .cloned()
            .map(Vote::Partial)
            .chain(self.rigid.iter().cloned().map(Vote::Total))
            .collect();
        Profile::new(self.candidates.clone(), votes).expect("reduction builds consistent votes")
    }

    /// Candidates `[x, y, z]` of the triple behind variable vote `k`.
    pub fn roles(&self, k: usize) -> [usize; 3] {
        let t = self.instance.triple(self.vote_to_triple[k]);
        [self.elements[0][t[0] - 1], self.elements[1][t[1] - 1], self.elements[2][t[2] - 1]]
    }

    /// Scores of `completion ∪ Q` where `completion` holds one order per
    /// variable vote.
    pub fn scores_with(&self, completion: &[TotalOrder]) -> Vec<BigInt> {
        let part = score_orders(self.m(), completion, &self.vector);
        part.scores()
            .iter()
            .zip(&self.rigid_scores)
            .map(|(a, b)| a + b)
            .collect()
    }

    /// Checks that `P′ ∪ Q` hits the target table.
    pub fn reference_matches(&self) -> bool {
        let s = self.scores_with(&self.reference);
        s.iter().zip(&self.targets).all(|(v, t)| t.accepts(v))
    }

    /// Every candidate at most `λ`, `c` exactly `λ`, the sink strictly below.
    /// With a `μ` table, every constrained rival must be exactly at `λ`.
    pub fn audit(&self, scores: &[BigInt]) -> std::result::Result<(), String> {
        let name = |i: usize| self.candidates.name(i).to_string();
        if scores[self.c] != self.lambda {
            return Err(format!("c scores {}, expected {}", scores[self.c], self.lambda));
        }
        if scores[self.sink] >= self.lambda {
            return Err(format!("sink {} reaches {}", name(self.sink), scores[self.sink]));
        }
        for (i, s) in scores.iter().enumerate() {
            if s > &self.lambda {
                return Err(format!("{} scores {} > {}", name(i), s, self.lambda));
            }
            if let Some(mu) = &self.mu {
                if mu[i].is_some() && s != &self.lambda {
                    return Err(format!("{} scores {}, tight instances need {}", name(i), s, self.lambda));
                }
            }
        }
        Ok(())
    }

    /// Checks that `completion` extends `P` vote by vote.
    pub fn check_extends(&self, completion: &[TotalOrder]) -> Result<()> {
        if completion.len() != self.variable.len() {
            return Err(Error::Witness(format!(
                "{} variable votes, expected {}",
                completion.len(),
                self.variable.len()
            )));
        }
        for (k, (t, p)) in completion.iter().zip(&self.variable).enumerate() {
            if t.len() != self.m() || !t.extends(p) {
                return Err(Error::Witness(format!("vote {} does not extend its partial vote", k + 1)));
            }
        }
        Ok(())
    }
}

/// The completion that picks the triples of `matching` and leaves every
/// other vote at its reference order.
pub fn matching_to_completion(out: &ReductionOutput, matching: &Matching) -> Result<Vec<TotalOrder>> {
    let checked = Matching::new(&out.instance, matching.selected().to_vec())?;
    Ok(out
        .vote_to_triple
        .iter()
        .enumerate()
        .map(|(k, &i)| {
            if checked.contains(i) {
                out.activated[k].clone()
            } else {
                out.reference[k].clone()
            }
        })
        .collect())
}

/// [`matching_to_completion`] plus `Q`, as a total profile.
pub fn completion_profile(out: &ReductionOutput, completion: &[TotalOrder]) -> Profile {
    let votes = completion.iter().chain(&out.rigid).cloned().collect();
    Profile::from_total(out.candidates.clone(), votes).expect("orders over the reduction's candidates")
}

/// Reads a matching off a winning completion.
///
/// `witness` is either the variable votes alone or the full `P* ∪ Q`; in
/// the second case the rigid tail must equal `Q`.
pub fn completion_to_matching(out: &ReductionOutput, witness: &Profile) -> Result<Matching> {
    if witness.candidates().names() != out.candidates.names() {
        return Err(Error::Witness("candidate list differs from the reduction".into()));
    }
    let orders: Vec<TotalOrder> = witness
        .total_votes()
        .map_err(|e| Error::Witness(e.to_string()))?
        .into_iter()
        .cloned()
        .collect();
    let t = out.variable.len();
    if orders.len() != t && orders.len() != t + out.rigid.len() {
        return Err(Error::Witness(format!(
            "{} votes, expected {t} or {}",
            orders.len(),
            t + out.rigid.len()
        )));
    }
    if orders.len() > t && orders[t..] != out.rigid[..] {
        return Err(Error::Witness("rigid votes differ from Q".into()));
    }
    let completion = &orders[..t];
    out.check_extends(completion)?;
    let scores = out.scores_with(completion);
    if !is_winner(&scores, out.c, Semantics::Cowinner) {
        return Err(Error::Witness("c does not win this completion".into()));
    }
    let picked = completion
        .iter()
        .enumerate()
        .filter(|(k, o)| out.pattern.activated(o, out.roles(*k), out.special))
        .map(|(k, _)| out.vote_to_triple[k])
        .collect();
    Matching::new(&out.instance, picked)
}
