use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::order::{PartialOrder, TotalOrder, Vote};
use crate::profile::Profile;
use crate::rule::{ScoringRule, ScoringVector};
use crate::winners::{vector_for, Semantics};

use super::{trivial_completion, PwAnswer, PwStats};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Above this many distinct options per vote the quadratic dominance filter
/// is skipped.
const DOMINANCE_LIMIT: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Limit on search nodes plus extension steps.
    pub budget: u64,
    /// Restrict `c` to locally highest placements, drop dominated options and
    /// cut branches by score bounds. Off leaves exact deduplication only.
    pub prune: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            prune: true,
        }
    }
}

pub fn pw_search(
    profile: &Profile,
    rule: &ScoringRule,
    c: usize,
    semantics: Semantics,
    budget: u64,
) -> Result<PwAnswer> {
    pw_search_with(profile, rule, c, semantics, &SearchConfig { budget, prune: true })
}

pub fn pw_search_with(
    profile: &Profile,
    rule: &ScoringRule,
    c: usize,
    semantics: Semantics,
    config: &SearchConfig,
) -> Result<PwAnswer> {
    profile.candidates().check_index(c)?;
    match vector_for(rule, profile.m())? {
        None => Ok(PwAnswer::yes(
            trivial_completion(profile),
            PwStats { nodes: 0, completions: 1 },
        )),
        Some(v) => Search::new(profile, &v, c, semantics, config)?.run(),
    }
}

struct Counter {
    used: u64,
    budget: u64,
}

impl Counter {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.budget {
            Err(Error::BudgetExceeded(self.budget))
        } else {
            Ok(())
        }
    }
}

/// One distinct placement of a vote: `diff[r] = s(r) - s(c)` and an extension
/// realizing it.
struct Option_ {
    diff: Vec<BigInt>,
    order: TotalOrder,
}

struct Search<'a> {
    profile: &'a Profile,
    c: usize,
    semantics: Semantics,
    prune: bool,
    counter: Counter,
    base: Vec<BigInt>,
    variable: Vec<usize>,
    options: Vec<Vec<Option_>>,
    /// `min_rest[k][r]`: least total diff the votes `k..` can give rival `r`.
    min_rest: Vec<Vec<BigInt>>,
    stats: PwStats,
}

impl<'a> Search<'a> {
    fn new(
        profile: &'a Profile,
        vector: &ScoringVector,
        c: usize,
        semantics: Semantics,
        config: &SearchConfig,
    ) -> Result<Self> {
        let m = profile.m();
        let mut counter = Counter {
            used: 0,
            budget: config.budget,
        };
        let mut base = vec![BigInt::zero(); m];
        let mut variable = Vec::new();
        let mut options = Vec::new();
        let rank = profile.candidates().name_rank();
        for (i, v) in profile.votes().iter().enumerate() {
            match v {
                Vote::Total(t) => add_diff(&mut base, t, vector, c),
                Vote::Partial(p) => {
                    let mut opts = vote_options(p, vector, c, config.prune, &mut counter)?;
                    opts.sort_by_cached_key(|o| o.order.iter().map(|x| rank[x]).collect::<Vec<_>>());
                    if config.prune && opts.len() <= DOMINANCE_LIMIT {
                        opts = undominated(opts);
                    }
                    variable.push(i);
                    options.push(opts);
                }
            }
        }
        let mut min_rest = vec![vec![BigInt::zero(); m]; options.len() + 1];
        for k in (0..options.len()).rev() {
            for r in 0..m {
                let best = options[k]
                    .iter()
                    .map(|o| &o.diff[r])
                    .min()
                    .expect("every vote has an extension");
                min_rest[k][r] = &min_rest[k + 1][r] + best;
            }
        }
        Ok(Search {
            profile,
            c,
            semantics,
            prune: config.prune,
            counter,
            base,
            variable,
            options,
            min_rest,
            stats: PwStats::default(),
        })
    }

    fn beaten(&self, d: &BigInt) -> bool {
        match self.semantics {
            Semantics::Cowinner => d > &BigInt::zero(),
            Semantics::Unique => d >= &BigInt::zero(),
        }
    }

    /// True when some rival beats `c` even with the best remaining votes.
    fn hopeless(&self, acc: &[BigInt], k: usize) -> bool {
        (0..acc.len()).any(|r| r != self.c && self.beaten(&(&acc[r] + &self.min_rest[k][r])))
    }

    fn run(mut self) -> Result<PwAnswer> {
        let mut acc = self.base.clone();
        let mut pick = Vec::with_capacity(self.options.len());
        let found = self.dfs(0, &mut acc, &mut pick)?;
        let stats = self.stats;
        if !found {
            return Ok(PwAnswer::no(stats));
        }
        let mut votes = self.profile.votes().to_vec();
        for (k, &i) in self.variable.iter().enumerate() {
            votes[i] = Vote::Total(self.options[k][pick[k]].order.clone());
        }
        let witness = Profile::new(self.profile.candidates().clone(), votes)?;
        Ok(PwAnswer::yes(witness, stats))
    }

    fn dfs(&mut self, k: usize, acc: &mut Vec<BigInt>, pick: &mut Vec<usize>) -> Result<bool> {
        if k == self.options.len() {
            self.stats.completions += 1;
            return Ok(!self.hopeless(acc, k));
        }
        if self.prune && self.hopeless(acc, k) {
            return Ok(false);
        }
        for i in 0..self.options[k].len() {
            self.counter.tick()?;
            self.stats.nodes += 1;
            for (a, d) in acc.iter_mut().zip(&self.options[k][i].diff) {
                *a += d;
            }
            pick.push(i);
            if self.dfs(k + 1, acc, pick)? {
                return Ok(true);
            }
            pick.pop();
            for (a, d) in acc.iter_mut().zip(&self.options[k][i].diff) {
                *a -= d;
            }
        }
        Ok(false)
    }
}

fn add_diff(acc: &mut [BigInt], t: &TotalOrder, vector: &ScoringVector, c: usize) {
    let sc = vector.get(t.position_of(c));
    for (pos, x) in t.iter().enumerate() {
        if x != c {
            acc[x] += vector.get(pos) - sc;
        }
    }
}

/// Distinct diff vectors over the extensions of `p`.
///
/// With `restrict`, only extensions where `c` cannot move up by one swap are
/// generated: `c` is first or sits right below one of its predecessors.
/// Swapping `c` with an incomparable neighbour above it never hurts `c`.
fn vote_options(
    p: &PartialOrder,
    vector: &ScoringVector,
    c: usize,
    restrict: bool,
    counter: &mut Counter,
) -> Result<Vec<Option_>> {
    let m = p.m();
    let mut pending: Vec<usize> = (0..m).map(|x| p.n_above(x)).collect();
    let mut used = vec![false; m];
    let mut prefix = Vec::with_capacity(m);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    extend(
        p,
        vector,
        c,
        restrict,
        counter,
        &mut pending,
        &mut used,
        &mut prefix,
        &mut seen,
        &mut out,
    )?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    p: &PartialOrder,
    vector: &ScoringVector,
    c: usize,
    restrict: bool,
    counter: &mut Counter,
    pending: &mut Vec<usize>,
    used: &mut Vec<bool>,
    prefix: &mut Vec<usize>,
    seen: &mut HashSet<Vec<BigInt>>,
    out: &mut Vec<Option_>,
) -> Result<()> {
    let m = p.m();
    if prefix.len() == m {
        let t = TotalOrder::new(prefix.clone()).expect("extension is a permutation");
        let mut diff = vec![BigInt::zero(); m];
        add_diff(&mut diff, &t, vector, c);
        if seen.insert(diff.clone()) {
            out.push(Option_ { diff, order: t });
        }
        return Ok(());
    }
    for x in 0..m {
        if used[x] || pending[x] != 0 {
            continue;
        }
        if restrict && x == c {
            if let Some(&above) = prefix.last() {
                if !p.prefers(above, c) {
                    continue;
                }
            }
        }
        counter.tick()?;
        used[x] = true;
        prefix.push(x);
        for y in 0..m {
            if p.prefers(x, y) {
                pending[y] -= 1;
            }
        }
        extend(p, vector, c, restrict, counter, pending, used, prefix, seen, out)?;
        for y in 0..m {
            if p.prefers(x, y) {
                pending[y] += 1;
            }
        }
        prefix.pop();
        used[x] = false;
    }
    Ok(())
}

/// Drops options whose diff is componentwise no better than another's.
/// Diffs are distinct, so dominance between two options is one-way.
fn undominated(opts: Vec<Option_>) -> Vec<Option_> {
    let dominates = |a: &Option_, b: &Option_| a.diff.iter().zip(&b.diff).all(|(x, y)| x <= y);
    let keep: Vec<bool> = (0..opts.len())
        .map(|i| !(0..opts.len()).any(|j| j != i && dominates(&opts[j], &opts[i])))
        .collect();
    opts.into_iter()
        .zip(keep)
        .filter_map(|(o, k)| k.then_some(o))
        .collect()
}
