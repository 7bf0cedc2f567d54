//! Brute-force ground truth: linear extensions and exhaustive PW/NW.
//!
//! Nothing here calls into the solvers; scores are recomputed from positions.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::order::{PartialOrder, TotalOrder, Vote};
use crate::profile::Profile;
use crate::rule::{ScoringRule, ScoringVector};
use crate::winners::Semantics;

/// Default number of extensions an oracle decision may enumerate.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// Streams the linear extensions of a partial order.
///
/// At each step the candidates with no unplaced predecessor are tried in
/// increasing index order, so extensions come out lexicographically.
pub struct ExtensionIterator {
    order: PartialOrder,
    pending: Vec<usize>,
    placed: Vec<usize>,
    used: Vec<bool>,
    choice: Vec<usize>,
    started: bool,
    done: bool,
}

impl ExtensionIterator {
    pub fn new(order: PartialOrder) -> Self {
        let m = order.m();
        let pending = (0..m).map(|x| order.n_above(x)).collect();
        ExtensionIterator {
            order,
            pending,
            placed: Vec::with_capacity(m),
            used: vec![false; m],
            choice: Vec::with_capacity(m),
            started: false,
            done: false,
        }
    }

    fn place(&mut self, x: usize) {
        self.used[x] = true;
        self.placed.push(x);
        for y in 0..self.order.m() {
            if self.order.prefers(x, y) {
                self.pending[y] -= 1;
            }
        }
    }

    fn unplace(&mut self) -> usize {
        let x = self.placed.pop().expect("something placed");
        self.used[x] = false;
        for y in 0..self.order.m() {
            if self.order.prefers(x, y) {
                self.pending[y] += 1;
            }
        }
        x
    }

    fn next_available(&self, from: usize) -> Option<usize> {
        (from..self.order.m()).find(|&x| !self.used[x] && self.pending[x] == 0)
    }

    /// Extends the current prefix greedily to a full order.
    fn descend(&mut self) {
        while self.placed.len() < self.order.m() {
            let x = self.next_available(0).expect("a poset always has a maximal element");
            self.choice.push(x);
            self.place(x);
        }
    }

    fn advance(&mut self) -> bool {
        while let Some(last) = self.choice.pop() {
            self.unplace();
            if let Some(x) = self.next_available(last + 1) {
                self.choice.push(x);
                self.place(x);
                self.descend();
                return true;
            }
        }
        false
    }
}

impl Iterator for ExtensionIterator {
    type Item = TotalOrder;

    fn next(&mut self) -> Option<TotalOrder> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.descend();
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(TotalOrder::new(self.placed.clone()).expect("extension is a permutation"))
    }
}

/// Extensions of `p`. Past `cap` the stream yields one error and stops.
pub fn enumerate_extensions(p: &PartialOrder, cap: u64) -> impl Iterator<Item = Result<TotalOrder>> {
    ExtensionIterator::new(p.clone())
        .zip(1u64..)
        .map_while(move |(t, n)| match n.cmp(&cap.saturating_add(1)) {
            std::cmp::Ordering::Less => Some(Ok(t)),
            std::cmp::Ordering::Equal => Some(Err(Error::CapExceeded(cap))),
            std::cmp::Ordering::Greater => None,
        })
}

pub fn collect_extensions(p: &PartialOrder, cap: u64) -> Result<Vec<TotalOrder>> {
    let limit = usize::try_from(cap.saturating_add(1)).unwrap_or(usize::MAX);
    let out: Vec<TotalOrder> = ExtensionIterator::new(p.clone()).take(limit).collect();
    if out.len() as u64 > cap {
        Err(Error::CapExceeded(cap))
    } else {
        Ok(out)
    }
}

/// Distinct per-vote score contributions of one vote, with the first
/// extension realizing each.
struct VoteOptions {
    rows: Vec<Vec<BigInt>>,
    witness: Vec<TotalOrder>,
}

fn vote_options(vote: &PartialOrder, vector: &ScoringVector, budget: &mut u64, cap: u64) -> Result<VoteOptions> {
    let m = vote.m();
    let mut seen: HashMap<Vec<BigInt>, usize> = HashMap::new();
    let mut rows = Vec::new();
    let mut witness = Vec::new();
    for t in ExtensionIterator::new(vote.clone()) {
        if *budget == 0 {
            return Err(Error::CapExceeded(cap));
        }
        *budget -= 1;
        let mut row = vec![BigInt::zero(); m];
        for (pos, c) in t.iter().enumerate() {
            row[c] = vector.get(pos).clone();
        }
        if !seen.contains_key(&row) {
            seen.insert(row.clone(), rows.len());
            rows.push(row);
            witness.push(t);
        }
    }
    Ok(VoteOptions { rows, witness })
}

struct Split {
    offset: Vec<BigInt>,
    variable: Vec<usize>,
    options: Vec<VoteOptions>,
}

/// Folds total votes into a constant offset and expands the others.
fn split(profile: &Profile, vector: &ScoringVector, cap: u64) -> Result<Split> {
    let m = profile.m();
    let mut offset = vec![BigInt::zero(); m];
    let mut variable = Vec::new();
    let mut options = Vec::new();
    let mut budget = cap;
    for (i, v) in profile.votes().iter().enumerate() {
        match v {
            Vote::Total(t) => {
                for (pos, c) in t.iter().enumerate() {
                    offset[c] += vector.get(pos);
                }
            }
            Vote::Partial(p) => {
                variable.push(i);
                options.push(vote_options(p, vector, &mut budget, cap)?);
            }
        }
    }
    let product = options
        .iter()
        .try_fold(1u64, |acc, o| acc.checked_mul(o.rows.len() as u64));
    match product {
        Some(n) if n <= cap => Ok(Split {
            offset,
            variable,
            options,
        }),
        _ => Err(Error::CapExceeded(cap)),
    }
}

fn wins(scores: &[BigInt], c: usize, semantics: Semantics) -> bool {
    scores.iter().enumerate().all(|(r, s)| {
        r == c
            || match semantics {
                Semantics::Cowinner => s <= &scores[c],
                Semantics::Unique => s < &scores[c],
            }
    })
}

/// Walks the product of per-vote options; `visit` returns true to stop.
fn walk<F>(split: &Split, mut visit: F)
where
    F: FnMut(&[BigInt], &[usize]) -> bool,
{
    fn rec<F>(split: &Split, k: usize, acc: &mut Vec<BigInt>, pick: &mut Vec<usize>, visit: &mut F) -> bool
    where
        F: FnMut(&[BigInt], &[usize]) -> bool,
    {
        if k == split.options.len() {
            return visit(acc, pick);
        }
        for (i, row) in split.options[k].rows.iter().enumerate() {
            for (a, r) in acc.iter_mut().zip(row) {
                *a += r;
            }
            pick.push(i);
            let stop = rec(split, k + 1, acc, pick, visit);
            pick.pop();
            for (a, r) in acc.iter_mut().zip(row) {
                *a -= r;
            }
            if stop {
                return true;
            }
        }
        false
    }
    let mut acc = split.offset.clone();
    let mut pick = Vec::new();
    rec(split, 0, &mut acc, &mut pick, &mut visit);
}

fn oracle_vector(rule: &ScoringRule, m: usize) -> Result<Option<ScoringVector>> {
    if m <= 1 {
        Ok(None)
    } else {
        rule.vector(m).map(Some)
    }
}

fn single_candidate_completion(profile: &Profile) -> Profile {
    let votes = profile
        .votes()
        .iter()
        .map(|_| Vote::Total(TotalOrder::identity(profile.m())))
        .collect();
    Profile::new(profile.candidates().clone(), votes).expect("same size")
}

/// Result of an exhaustive possible-winner decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteAnswer {
    pub is_winner: bool,
    pub witness: Option<Profile>,
}

pub fn pw_bruteforce(
    profile: &Profile,
    rule: &ScoringRule,
    c: usize,
    semantics: Semantics,
    cap: u64,
) -> Result<BruteAnswer> {
    profile.candidates().check_index(c)?;
    match oracle_vector(rule, profile.m())? {
        None => Ok(BruteAnswer {
            is_winner: true,
            witness: Some(single_candidate_completion(profile)),
        }),
        Some(v) => pw_bruteforce_with(profile, &v, c, semantics, cap),
    }
}

pub fn pw_bruteforce_with(
    profile: &Profile,
    vector: &ScoringVector,
    c: usize,
    semantics: Semantics,
    cap: u64,
) -> Result<BruteAnswer> {
    profile.candidates().check_index(c)?;
    let split = split(profile, vector, cap)?;
    let mut found: Option<Vec<usize>> = None;
    walk(&split, |scores, pick| {
        if wins(scores, c, semantics) {
            found = Some(pick.to_vec());
            true
        } else {
            false
        }
    });
    let witness = found.map(|pick| {
        let mut votes = profile.votes().to_vec();
        for (k, &i) in split.variable.iter().enumerate() {
            votes[i] = Vote::Total(split.options[k].witness[pick[k]].clone());
        }
        Profile::new(profile.candidates().clone(), votes).expect("same size")
    });
    Ok(BruteAnswer {
        is_winner: witness.is_some(),
        witness,
    })
}

pub fn nw_bruteforce(
    profile: &Profile,
    rule: &ScoringRule,
    c: usize,
    semantics: Semantics,
    cap: u64,
) -> Result<bool> {
    profile.candidates().check_index(c)?;
    match oracle_vector(rule, profile.m())? {
        None => Ok(true),
        Some(v) => nw_bruteforce_with(profile, &v, c, semantics, cap),
    }
}

pub fn nw_bruteforce_with(
    profile: &Profile,
    vector: &ScoringVector,
    c: usize,
    semantics: Semantics,
    cap: u64,
) -> Result<bool> {
    profile.candidates().check_index(c)?;
    let split = split(profile, vector, cap)?;
    let mut always = true;
    walk(&split, |scores, _| {
        if !wins(scores, c, semantics) {
            always = false;
        }
        !always
    });
    Ok(always)
}

/// Calls `f` with the total scores of every completion (duplicates included).
pub fn for_each_completion<F>(profile: &Profile, vector: &ScoringVector, cap: u64, mut f: F) -> Result<u64>
where
    F: FnMut(&[BigInt], &[TotalOrder]),
{
    let m = profile.m();
    let mut offset = vec![BigInt::zero(); m];
    let mut lists: Vec<Vec<TotalOrder>> = Vec::new();
    for v in profile.votes() {
        match v {
            Vote::Total(t) => {
                for (pos, c) in t.iter().enumerate() {
                    offset[c] += vector.get(pos);
                }
            }
            Vote::Partial(p) => lists.push(collect_extensions(p, cap)?),
        }
    }
    let total = lists
        .iter()
        .try_fold(1u64, |acc, l| acc.checked_mul(l.len() as u64))
        .filter(|&n| n <= cap)
        .ok_or(Error::CapExceeded(cap))?;
    let rows: Vec<Vec<Vec<BigInt>>> = lists
        .iter()
        .map(|l| {
            l.iter()
                .map(|t| {
                    let mut row = vec![BigInt::zero(); m];
                    for (pos, c) in t.iter().enumerate() {
                        row[c] = vector.get(pos).clone();
                    }
                    row
                })
                .collect()
        })
        .collect();
    let mut idx = vec![0usize; lists.len()];
    for _ in 0..total {
        let mut scores = offset.clone();
        for (k, &i) in idx.iter().enumerate() {
            for (a, r) in scores.iter_mut().zip(&rows[k][i]) {
                *a += r;
            }
        }
        let chosen: Vec<TotalOrder> = idx.iter().enumerate().map(|(k, &i)| lists[k][i].clone()).collect();
        f(&scores, &chosen);
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
    Ok(total)
}
