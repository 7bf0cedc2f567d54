//! Rigid profiles with prescribed relative scores.
//!
//! Candidates are `0..m`; the sink `d` is index `m`. Vectors have length
//! `m + 1` and positions in this module are 1-based, as in `β(d, j)`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::order::TotalOrder;
use crate::rule::ScoringVector;
use crate::winners::score_orders;

/// Per-row bound on `Σ_j |η_{i,j}|` is `ETA_BUDGET_FACTOR · m^4`.
pub const ETA_BUDGET_FACTOR: u128 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Swap {
    Plus,
    Minus,
}

/// Relative targets `R_i = Σ_j η_{i,j} δ_j` for candidates `0..m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoreTargets {
    m: usize,
    eta: Vec<Vec<i64>>,
}

impl ScoreTargets {
    /// `eta` has one row of length `m` per candidate.
    pub fn new(eta: Vec<Vec<i64>>) -> Result<Self> {
        let m = eta.len();
        if let Some((i, row)) = eta.iter().enumerate().find(|(_, r)| r.len() != m) {
            return Err(Error::SizeMismatch {
                vote: i,
                found: row.len(),
                expected: m,
            });
        }
        let budget = ETA_BUDGET_FACTOR * (m as u128).pow(4);
        for (row, r) in eta.iter().enumerate() {
            let sum: u128 = r.iter().map(|e| e.unsigned_abs() as u128).sum();
            if sum > budget {
                return Err(Error::EtaBudget { row, sum, budget });
            }
        }
        Ok(ScoreTargets { m, eta })
    }

    pub fn zeros(m: usize) -> Self {
        ScoreTargets {
            m,
            eta: vec![vec![0; m]; m],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn eta(&self) -> &[Vec<i64>] {
        &self.eta
    }

    pub fn abs_sum(&self) -> u128 {
        self.eta
            .iter()
            .flatten()
            .map(|e| e.unsigned_abs() as u128)
            .sum()
    }

    /// `R_i` under `vector` (length `m + 1`).
    pub fn relative(&self, vector: &ScoringVector) -> Vec<BigInt> {
        self.eta
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(j, &e)| BigInt::from(e) * vector.delta(j))
                    .sum()
            })
            .collect()
    }
}

/// A total profile over `m` candidates plus the sink, and its baseline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetProfile {
    pub votes: Vec<TotalOrder>,
    pub lambda_q: BigInt,
}

impl GadgetProfile {
    /// Renames gadget index `i` to `map[i]`; `map` has length `m + 1`.
    pub fn relabel(&self, map: &[usize]) -> Vec<TotalOrder> {
        self.votes
            .iter()
            .map(|t| TotalOrder::new(t.iter().map(|x| map[x]).collect()).expect("map is a bijection"))
            .collect()
    }
}

fn check_position(j: usize, max: usize) -> Result<()> {
    if (1..=max).contains(&j) {
        Ok(())
    } else {
        Err(Error::Position { pos: j, max })
    }
}

/// `β(d, j)` over candidates `0..m` with sink `m`: vote `k` is the rotation
/// of `0..m` starting at `k`, with the sink inserted at position `j`.
pub fn block(m: usize, j: usize) -> Result<Vec<TotalOrder>> {
    check_position(j, m + 1)?;
    Ok((0..m)
        .map(|k| {
            let mut v: Vec<usize> = (0..m).map(|i| (k + i) % m).collect();
            v.insert(j - 1, m);
            TotalOrder::new(v).expect("rotation is a permutation")
        })
        .collect())
}

/// `β⁺(d, j)` (target moves from `j+1` up to `j`) or `β⁻(d, j)` (target moves
/// from `j` down to `j+1`, built from `β(d, j+1)`).
pub fn block_swapped(m: usize, j: usize, target: usize, dir: Swap) -> Result<Vec<TotalOrder>> {
    check_position(j, m)?;
    if target >= m {
        return Err(Error::CandidateOutOfRange { index: target, m });
    }
    let (base, target_pos) = match dir {
        Swap::Plus => (j, j + 1),
        Swap::Minus => (j + 1, j),
    };
    let mut votes = block(m, base)?;
    let k = votes
        .iter()
        .position(|t| t.at(target_pos - 1) == target)
        .expect("rotation puts every candidate at every free position");
    let mut v = votes[k].to_vec();
    v.swap(j - 1, j);
    votes[k] = TotalOrder::new(v).expect("swap keeps a permutation");
    Ok(votes)
}

/// `λ_{β(d,j)} = Σ_k s_k - s_j`.
pub fn block_lambda(vector: &ScoringVector, j: usize) -> BigInt {
    vector.sum() - vector.get(j - 1)
}

/// `η_j = l_j + Σ_{k≤j} h_k`, so that `Σ η_j δ_j = Σ l_k δ_k + Σ h_k s_k`
/// (with the last gap `δ_n = s_n`). The result has the vector's length.
pub fn eta_from_mixed(l: &[i64], h: &[i64], vector: &ScoringVector) -> Vec<i64> {
    let n = vector.len();
    assert!(l.len() <= n && h.len() <= n, "coefficients longer than the vector");
    let mut prefix = 0i64;
    (0..n)
        .map(|j| {
            prefix += h.get(j).copied().unwrap_or(0);
            l.get(j).copied().unwrap_or(0) + prefix
        })
        .collect()
}

/// Builds `Q` with `s(Q, i) = λ_Q + R_i` for every `i < m` and
/// `s(Q, sink) < λ_Q`.
///
/// Each unit of `η` contributes one swapped block. The sink is then kept
/// below `λ_Q` with the fewest padding blocks `β(d, m+1)` that do it, at
/// least one. That is never more than the `m` blocks per unit the general
/// bound allows for.
pub fn build_gadget(targets: &ScoreTargets, vector: &ScoringVector) -> Result<GadgetProfile> {
    let m = targets.m();
    if vector.len() != m + 1 {
        return Err(Error::InvalidVector(format!(
            "gadget over {m} candidates needs length {}, got {}",
            m + 1,
            vector.len()
        )));
    }
    if !vector.is_normalised() {
        return Err(Error::InvalidVector("gadget vector must be normalised".into()));
    }
    let padding = block(m, m + 1)?;
    let pad_lambda = block_lambda(vector, m + 1);
    let mut votes = Vec::new();
    let mut lambda_q = BigInt::zero();
    let mut sink = BigInt::zero();
    for (i, row) in targets.eta().iter().enumerate() {
        for (j0, &e) in row.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let j = j0 + 1;
            let n = e.unsigned_abs() as usize;
            let (dir, lam) = if e > 0 {
                (Swap::Plus, block_lambda(vector, j))
            } else {
                (Swap::Minus, block_lambda(vector, j + 1))
            };
            let swapped = block_swapped(m, j, i, dir)?;
            let sink_here: BigInt = swapped.iter().map(|t| vector.get(t.position_of(m))).sum();
            for _ in 0..n {
                votes.extend_from_slice(&swapped);
            }
            lambda_q += BigInt::from(n) * lam;
            sink += BigInt::from(n) * sink_here;
        }
    }
    // smallest k >= 1 with sink < lambda_q + k · pad_lambda
    let excess = &sink - &lambda_q;
    let copies = if excess.is_negative() {
        BigInt::from(1)
    } else {
        excess / &pad_lambda + 1
    };
    let copies: usize = copies.try_into().expect("padding count fits in memory");
    for _ in 0..copies {
        votes.extend_from_slice(&padding);
    }
    lambda_q += BigInt::from(copies) * &pad_lambda;
    Ok(GadgetProfile { votes, lambda_q })
}

/// Scores the gadget and checks both invariants exactly.
pub fn verify_gadget(g: &GadgetProfile, targets: &ScoreTargets, vector: &ScoringVector) -> bool {
    let m = targets.m();
    let scores = score_orders(m + 1, &g.votes, vector).into_scores();
    let rel = targets.relative(vector);
    (0..m).all(|i| scores[i] == &g.lambda_q + &rel[i]) && scores[m] < g.lambda_q && !g.lambda_q.is_negative()
}

/// Vote-count bound `(m + m²) Σ|η| + m`.
pub fn vote_bound(targets: &ScoreTargets) -> u128 {
    let m = targets.m() as u128;
    (m + m * m) * targets.abs_sum() + m
}
