//! Total and partial orders over candidate indices, and their structural classes.

use crate::error::{Error, Result};

/// A ranking of all candidates, most preferred first.
///
/// Positions are 0-based in this API: `at(0)` is the top candidate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TotalOrder {
    ranking: Vec<u32>,
}

impl TotalOrder {
    pub fn new(ranking: Vec<usize>) -> Result<Self> {
        let m = ranking.len();
        let mut seen = vec![false; m];
        for &c in &ranking {
            if c >= m || seen[c] {
                return Err(Error::NotPermutation(m));
            }
            seen[c] = true;
        }
        Ok(TotalOrder {
            ranking: ranking.into_iter().map(|c| c as u32).collect(),
        })
    }

    pub fn identity(m: usize) -> Self {
        TotalOrder {
            ranking: (0..m as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.ranking.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranking.is_empty()
    }

    /// Candidate at 0-based position `pos`.
    pub fn at(&self, pos: usize) -> usize {
        self.ranking[pos] as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.ranking.iter().map(|&c| c as usize)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// `positions()[c]` is the 0-based position of candidate `c`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.len()];
        for (p, &c) in self.ranking.iter().enumerate() {
            pos[c as usize] = p;
        }
        pos
    }

    pub fn position_of(&self, c: usize) -> usize {
        self.ranking
            .iter()
            .position(|&x| x as usize == c)
            .expect("candidate in ranking")
    }

    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.position_of(a) < self.position_of(b)
    }

    pub fn extends(&self, p: &PartialOrder) -> bool {
        if p.m() != self.len() {
            return false;
        }
        let pos = self.positions();
        p.pairs().all(|(a, b)| pos[a] < pos[b])
    }

    pub fn to_partial(&self) -> PartialOrder {
        PartialOrder::from_chain(self.len(), &self.to_vec()).expect("total order is acyclic")
    }
}

/// An irreflexive, transitively closed relation. `prefers(a, b)` means a ≻ b.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialOrder {
    m: usize,
    rel: Vec<bool>,
}

impl PartialOrder {
    pub fn empty(m: usize) -> Self {
        PartialOrder {
            m,
            rel: vec![false; m * m],
        }
    }

    /// Builds the transitive closure of `pairs` and rejects cycles.
    pub fn from_pairs<I>(m: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut p = PartialOrder::empty(m);
        for (a, b) in pairs {
            if a >= m || b >= m {
                return Err(Error::CandidateOutOfRange {
                    index: a.max(b),
                    m,
                });
            }
            p.rel[a * m + b] = true;
        }
        p.close();
        for a in 0..m {
            if p.rel[a * m + a] {
                return Err(Error::Cyclic(a.to_string()));
            }
        }
        Ok(p)
    }

    /// a ≻ b for every earlier a and later b in `chain`; others unconstrained.
    pub fn from_chain(m: usize, chain: &[usize]) -> Result<Self> {
        let pairs = chain
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| chain[i + 1..].iter().map(move |&b| (a, b)));
        PartialOrder::from_pairs(m, pairs)
    }

    /// Every member of an earlier block beats every member of a later block.
    pub fn from_blocks(m: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut pairs = Vec::new();
        for (i, hi) in blocks.iter().enumerate() {
            for lo in &blocks[i + 1..] {
                for &a in hi {
                    for &b in lo {
                        pairs.push((a, b));
                    }
                }
            }
        }
        PartialOrder::from_pairs(m, pairs)
    }

    fn close(&mut self) {
        let m = self.m;
        for k in 0..m {
            for i in 0..m {
                if !self.rel[i * m + k] {
                    continue;
                }
                for j in 0..m {
                    if self.rel[k * m + j] {
                        self.rel[i * m + j] = true;
                    }
                }
            }
        }
    }

    /// Re-closes the relation; a no-op on any valid value.
    pub fn closure(&self) -> Self {
        let mut p = self.clone();
        p.close();
        p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.rel[a * self.m + b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.prefers(a, b) || self.prefers(b, a)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.m;
        (0..m * m)
            .filter(move |&k| self.rel[k])
            .map(move |k| (k / m, k % m))
    }

    pub fn pair_count(&self) -> usize {
        self.rel.iter().filter(|&&b| b).count()
    }

    /// Pairs of the Hasse diagram (transitive reduction).
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs()
            .filter(|&(a, b)| !(0..self.m).any(|k| self.prefers(a, k) && self.prefers(k, b)))
            .collect()
    }

    pub fn n_above(&self, x: usize) -> usize {
        (0..self.m).filter(|&a| self.prefers(a, x)).count()
    }

    pub fn n_below(&self, x: usize) -> usize {
        (0..self.m).filter(|&b| self.prefers(x, b)).count()
    }

    /// Number of candidates strictly between `hi` and `lo` (hi ≻ k ≻ lo).
    pub fn n_between(&self, hi: usize, lo: usize) -> usize {
        (0..self.m)
            .filter(|&k| self.prefers(hi, k) && self.prefers(k, lo))
            .count()
    }

    pub fn is_total(&self) -> bool {
        self.pair_count() == self.m * self.m.saturating_sub(1) / 2
    }

    /// The unique ranking when the order is total.
    pub fn as_total(&self) -> Option<TotalOrder> {
        if !self.is_total() {
            return None;
        }
        let mut ranking: Vec<usize> = (0..self.m).collect();
        ranking.sort_by_key(|&x| self.n_above(x));
        Some(TotalOrder::new(ranking).expect("permutation"))
    }

    /// Ordered blocks when the order is partitioned (a weak order).
    pub fn blocks(&self) -> Option<Vec<Vec<usize>>> {
        let m = self.m;
        for a in 0..m {
            for b in a + 1..m {
                if self.comparable(a, b) {
                    continue;
                }
                for x in 0..m {
                    if self.prefers(x, a) != self.prefers(x, b)
                        || self.prefers(a, x) != self.prefers(b, x)
                    {
                        return None;
                    }
                }
            }
        }
        let mut levels: Vec<(usize, usize)> = (0..m).map(|x| (self.n_above(x), x)).collect();
        levels.sort();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut last = usize::MAX;
        for (lvl, x) in levels {
            if lvl != last {
                blocks.push(Vec::new());
                last = lvl;
            }
            blocks.last_mut().expect("block").push(x);
        }
        Some(blocks)
    }

    /// Members of the relation's support when it is a single chain.
    pub fn chain(&self) -> Option<Vec<usize>> {
        let support: Vec<usize> = (0..self.m)
            .filter(|&x| self.n_above(x) + self.n_below(x) > 0)
            .collect();
        for (i, &a) in support.iter().enumerate() {
            for &b in &support[i + 1..] {
                if !self.comparable(a, b) {
                    return None;
                }
            }
        }
        let mut chain = support;
        chain.sort_by_key(|&x| self.n_above(x));
        Some(chain)
    }
}

/// Structural class flags of a partial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderClass {
    pub is_total: bool,
    pub is_partial_chain: bool,
    pub is_partitioned: bool,
    /// `(t, b)`: lengths of the linear top and bottom segments around a single
    /// unordered middle block. Total orders report `(m, 0)`.
    pub truncation: Option<(usize, usize)>,
}

pub fn classify_order(p: &PartialOrder) -> OrderClass {
    let is_total = p.is_total();
    let is_partial_chain = p.chain().is_some();
    let blocks = p.blocks();
    let truncation = blocks.as_ref().and_then(|bs| {
        let wide: Vec<usize> = (0..bs.len()).filter(|&i| bs[i].len() > 1).collect();
        match wide.as_slice() {
            [] => Some((p.m(), 0)),
            [i] => Some((*i, bs.len() - i - 1)),
            _ => None,
        }
    });
    OrderClass {
        is_total,
        is_partial_chain,
        is_partitioned: blocks.is_some(),
        truncation,
    }
}

/// One ballot: total votes keep a compact ranking.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Vote {
    Total(TotalOrder),
    Partial(PartialOrder),
}

impl Vote {
    pub fn m(&self) -> usize {
        match self {
            Vote::Total(t) => t.len(),
            Vote::Partial(p) => p.m(),
        }
    }

    pub fn is_total(&self) -> bool {
        matches!(self, Vote::Total(_))
    }

    pub fn as_total(&self) -> Option<&TotalOrder> {
        match self {
            Vote::Total(t) => Some(t),
            Vote::Partial(_) => None,
        }
    }

    pub fn to_partial(&self) -> PartialOrder {
        match self {
            Vote::Total(t) => t.to_partial(),
            Vote::Partial(p) => p.clone(),
        }
    }

    pub fn accepts(&self, t: &TotalOrder) -> bool {
        match self {
            Vote::Total(x) => x == t,
            Vote::Partial(p) => t.extends(p),
        }
    }
}

impl From<TotalOrder> for Vote {
    fn from(t: TotalOrder) -> Self {
        Vote::Total(t)
    }
}

impl From<PartialOrder> for Vote {
    fn from(p: PartialOrder) -> Self {
        match p.as_total() {
            Some(t) => Vote::Total(t),
            None => Vote::Partial(p),
        }
    }
}
