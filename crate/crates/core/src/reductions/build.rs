use num_bigint::BigInt;

use crate::candidates::CandidateSet;
use crate::error::{Error, Result};
use crate::gadget::{build_gadget, eta_from_mixed, ScoreTargets};
use crate::order::{PartialOrder, TotalOrder};
use crate::rule::ScoringVector;
use crate::winners::score_orders;

use super::{Pattern, ReductionOutput, Target, ThreeDm, Variant};

/// Everything a gadget-backed reduction decides before `Q` is built.
pub(crate) struct GadgetPlan {
    pub variant: Variant,
    pub rule: String,
    pub instance: ThreeDm,
    pub names: Vec<String>,
    pub vector: ScoringVector,
    pub variable: Vec<PartialOrder>,
    pub reference: Vec<TotalOrder>,
    pub activated: Vec<TotalOrder>,
    pub c: usize,
    pub sink: usize,
    pub special: Option<usize>,
    /// Per candidate, coefficients of `δ_j` (0-based `j`) in its score
    /// offset from `λ` in `P′ ∪ Q`.
    pub offsets: Vec<Vec<i64>>,
    pub elements: [Vec<usize>; 3],
    pub pattern: Pattern,
}

/// 0-based position of the last slot of block `u` (1-based), where
/// `δ_j = a_u - a_{u+1}`.
pub(crate) fn block_position(lengths: &[usize], u: usize) -> usize {
    lengths[..u].iter().sum::<usize>() - 1
}

/// Position counts per candidate over a list of total orders.
pub(crate) fn position_counts(m: usize, orders: &[TotalOrder]) -> Vec<Vec<i64>> {
    let mut counts = vec![vec![0i64; m]; m];
    for t in orders {
        for (pos, x) in t.iter().enumerate() {
            counts[x][pos] += 1;
        }
    }
    counts
}

/// Builds `Q` over all candidates but the sink so that every candidate's
/// score in `P′ ∪ Q` is `λ` plus its offset.
pub(crate) fn assemble(plan: GadgetPlan) -> Result<ReductionOutput> {
    let m = plan.names.len();
    let candidates = CandidateSet::new(plan.names.iter().cloned())?;
    if plan.vector.len() != m {
        return Err(Error::InvalidVector(format!("length {} for {m} candidates", plan.vector.len())));
    }
    let counts = position_counts(m, &plan.reference);
    let nonsink: Vec<usize> = (0..m).filter(|&e| e != plan.sink).collect();
    let rows = nonsink
        .iter()
        .map(|&e| {
            let h: Vec<i64> = (0..m).map(|k| counts[plan.c][k] - counts[e][k]).collect();
            let mut eta = eta_from_mixed(&plan.offsets[e], &h, &plan.vector);
            eta.truncate(m - 1);
            eta
        })
        .collect();
    let gadget = build_gadget(&ScoreTargets::new(rows)?, &plan.vector)?;
    let mut map = nonsink.clone();
    map.push(plan.sink);
    let rigid = gadget.relabel(&map);
    let rigid_scores = score_orders(m, &rigid, &plan.vector).into_scores();
    let base_c = score_orders(m, &plan.reference, &plan.vector).get(plan.c).clone();
    let lambda = base_c + &gadget.lambda_q;
    let targets = (0..m)
        .map(|e| {
            if e == plan.sink {
                Target::Below(lambda.clone())
            } else {
                let off: BigInt = plan.offsets[e]
                    .iter()
                    .enumerate()
                    .map(|(j, &k)| BigInt::from(k) * plan.vector.delta(j))
                    .sum();
                Target::Exact(&lambda + off)
            }
        })
        .collect();
    let out = ReductionOutput {
        variant: plan.variant,
        rule: plan.rule,
        vote_to_triple: (0..plan.instance.t()).collect(),
        instance: plan.instance,
        candidates,
        vector: plan.vector,
        variable: plan.variable,
        rigid,
        rigid_scores,
        reference: plan.reference,
        activated: plan.activated,
        c: plan.c,
        sink: plan.sink,
        special: plan.special,
        lambda,
        targets,
        mu: None,
        elements: plan.elements,
        pattern: plan.pattern,
    };
    if !out.reference_matches() {
        return Err(Error::Reduction("reference completion misses the target table".into()));
    }
    Ok(out)
}

/// Candidate names and the element candidates of a reduction.
pub(crate) struct Roster {
    pub names: Vec<String>,
    pub elements: [Vec<usize>; 3],
}

impl Roster {
    /// `x1..xq, y1..yq, z1..zq` followed by `extra`.
    pub fn new(q: usize, extra: &[&str]) -> Self {
        let mut names = Vec::new();
        let mut elements: [Vec<usize>; 3] = Default::default();
        for (axis, prefix) in ["x", "y", "z"].iter().enumerate() {
            for i in 1..=q {
                elements[axis].push(names.len());
                names.push(format!("{prefix}{i}"));
            }
        }
        names.extend(extra.iter().map(|s| s.to_string()));
        Roster { names, elements }
    }

    pub fn add_dummies(&mut self, n: usize) -> Vec<usize> {
        let start = self.names.len();
        for i in 1..=n {
            self.names.push(format!("h{i}"));
        }
        (start..start + n).collect()
    }

    pub fn index(&self, name: &str) -> usize {
        self.names.iter().position(|n| n == name).expect("roster name")
    }

    /// `set` ordered by name.
    pub fn sorted(&self, mut set: Vec<usize>) -> Vec<usize> {
        set.sort_by(|&a, &b| self.names[a].cmp(&self.names[b]));
        set
    }

    /// The triple's `[x, y, z]` candidates.
    pub fn roles(&self, t: [usize; 3]) -> [usize; 3] {
        [self.elements[0][t[0] - 1], self.elements[1][t[1] - 1], self.elements[2][t[2] - 1]]
    }

    /// Everything except `drop`, by name.
    pub fn rest(&self, drop: &[usize]) -> Vec<usize> {
        self.sorted((0..self.names.len()).filter(|e| !drop.contains(e)).collect())
    }
}

pub(crate) fn total(order: Vec<usize>) -> TotalOrder {
    TotalOrder::new(order).expect("reduction orders are permutations")
}

/// The chain `order` over `m` candidates.
pub(crate) fn chain(m: usize, order: &[usize]) -> PartialOrder {
    PartialOrder::from_chain(m, order).expect("reduction chains are duplicate-free")
}

/// `order` with `x` removed and reinserted right after `after`.
pub(crate) fn move_after(order: &[usize], x: usize, after: usize) -> Vec<usize> {
    let mut v: Vec<usize> = order.iter().copied().filter(|&e| e != x).collect();
    let at = v.iter().position(|&e| e == after).expect("anchor present") + 1;
    v.insert(at, x);
    v
}

/// Offsets vector with `coef` at position `pos` for each given pair.
pub(crate) fn offsets(m: usize, terms: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; m];
    for &(pos, coef) in terms {
        v[pos] += coef;
    }
    v
}
