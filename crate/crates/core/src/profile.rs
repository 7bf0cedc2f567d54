use crate::candidates::CandidateSet;
use crate::error::{Error, Result};
use crate::order::{TotalOrder, Vote};

/// A list of votes over one candidate set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    candidates: CandidateSet,
    votes: Vec<Vote>,
}

impl Profile {
    pub fn new(candidates: CandidateSet, votes: Vec<Vote>) -> Result<Self> {
        let m = candidates.len();
        for (i, v) in votes.iter().enumerate() {
            if v.m() != m {
                return Err(Error::SizeMismatch {
                    vote: i,
                    found: v.m(),
                    expected: m,
                });
            }
        }
        Ok(Profile { candidates, votes })
    }

    pub fn from_total(candidates: CandidateSet, votes: Vec<TotalOrder>) -> Result<Self> {
        Profile::new(candidates, votes.into_iter().map(Vote::Total).collect())
    }

    pub fn candidates(&self) -> &CandidateSet {
        &self.candidates
    }

    pub fn m(&self) -> usize {
        self.candidates.len()
    }

    pub fn votes(&self) -> &[Vote] {
        &self.votes
    }

    pub fn len(&self) -> usize {
        self.votes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.votes.is_empty()
    }

    pub fn push(&mut self, v: Vote) -> Result<()> {
        if v.m() != self.m() {
            return Err(Error::SizeMismatch {
                vote: self.votes.len(),
                found: v.m(),
                expected: self.m(),
            });
        }
        self.votes.push(v);
        Ok(())
    }

    pub fn is_total(&self) -> bool {
        self.votes.iter().all(Vote::is_total)
    }

    /// The rankings of a total profile.
    pub fn total_votes(&self) -> Result<Vec<&TotalOrder>> {
        self.votes
            .iter()
            .enumerate()
            .map(|(i, v)| v.as_total().ok_or(Error::NotTotal(i)))
            .collect()
    }

    /// True when `other` is total and extends this profile vote by vote.
    pub fn is_extended_by(&self, other: &Profile) -> bool {
        other.candidates == self.candidates
            && other.len() == self.len()
            && self
                .votes
                .iter()
                .zip(other.votes())
                .all(|(v, w)| matches!(w, Vote::Total(t) if v.accepts(t)))
    }
}
