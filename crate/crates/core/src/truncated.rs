//! Fixed candidates, maximum partial scores and tightness, plus the
//! hardness reductions for top- and bottom-truncated votes.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::gadget::{block, block_lambda, build_gadget, eta_from_mixed, ScoreTargets};
use crate::order::{PartialOrder, TotalOrder};
use crate::reductions::build::{total, Roster};
use crate::reductions::{Pattern, ReductionOutput, Target, ThreeDm, Variant};
use crate::rule::{ScoringRule, ScoringVector};
use crate::winners::score_orders;

/// Which candidates each vote pins down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedProfileView {
    /// `fixed[v][e]` is the 0-based position of `e` in vote `v` when every
    /// extension agrees on it.
    pub fixed: Vec<Vec<Option<usize>>>,
    /// Per vote, 0-based positions that no fixed candidate occupies.
    pub available: Vec<Vec<usize>>,
    /// `fixed_P(e)`: score collected where `e` is fixed.
    pub fixed_score: Vec<BigInt>,
}

impl FixedProfileView {
    pub fn is_fixed(&self, vote: usize, e: usize) -> bool {
        self.fixed[vote][e].is_some()
    }

    /// Votes in which `e` is not fixed.
    pub fn unfixed_count(&self, e: usize) -> usize {
        self.fixed.iter().filter(|v| v[e].is_none()).count()
    }

    /// Sum of the values of all available positions.
    pub fn available_mass(&self, vector: &ScoringVector) -> BigInt {
        self.available.iter().flatten().map(|&j| vector.get(j)).sum()
    }
}

/// A candidate's position ranges over `n_above ..= m - 1 - n_below` across
/// extensions, so it is fixed exactly when it is comparable to everyone.
pub fn analyze_fixed(votes: &[PartialOrder], vector: &ScoringVector) -> Result<FixedProfileView> {
    let m = vector.len();
    let mut fixed = Vec::with_capacity(votes.len());
    let mut available = Vec::with_capacity(votes.len());
    let mut fixed_score = vec![BigInt::zero(); m];
    for (v, p) in votes.iter().enumerate() {
        if p.m() != m {
            return Err(Error::SizeMismatch {
                vote: v,
                found: p.m(),
                expected: m,
            });
        }
        let row: Vec<Option<usize>> = (0..m)
            .map(|e| (p.n_above(e) + p.n_below(e) == m - 1).then(|| p.n_above(e)))
            .collect();
        let mut taken = vec![false; m];
        for (e, pos) in row.iter().enumerate() {
            if let Some(j) = *pos {
                taken[j] = true;
                fixed_score[e] += vector.get(j);
            }
        }
        available.push((0..m).filter(|&j| !taken[j]).collect());
        fixed.push(row);
    }
    Ok(FixedProfileView {
        fixed,
        available,
        fixed_score,
    })
}

fn require_fixed(view: &FixedProfileView, c: usize, property: u8, what: &str) -> Result<()> {
    match view.fixed.iter().position(|v| v[c].is_none()) {
        Some(v) => Err(Error::Precondition {
            property,
            detail: format!("{what} is not fixed in vote {}", v + 1),
        }),
        None => Ok(()),
    }
}

/// Available score mass equals `Σ (μ(e) - fixed_P(e))` over the rivals that
/// carry a `μ` value. `mu[e] = None` leaves `e` out (the sink).
pub fn check_tightness(votes: &[PartialOrder], vector: &ScoringVector, c: usize, mu: &[Option<BigInt>]) -> Result<bool> {
    let view = analyze_fixed(votes, vector)?;
    require_fixed(&view, c, 1, "c")?;
    let allowance: BigInt = mu
        .iter()
        .enumerate()
        .filter(|&(e, _)| e != c)
        .filter_map(|(e, m)| m.as_ref().map(|m| m - &view.fixed_score[e]))
        .sum();
    Ok(view.available_mass(vector) == allowance)
}

/// `λ - s(Q, e)` with `λ = fixed_P(c) + s(Q, c)`.
pub fn realized_mu(votes: &[PartialOrder], rigid: &[TotalOrder], c: usize, vector: &ScoringVector) -> Result<Vec<BigInt>> {
    let view = analyze_fixed(votes, vector)?;
    require_fixed(&view, c, 1, "c")?;
    let q = score_orders(vector.len(), rigid, vector).into_scores();
    let lambda = &view.fixed_score[c] + &q[c];
    Ok(q.iter().map(|s| &lambda - s).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxPartial {
    pub rigid: Vec<TotalOrder>,
    /// Score of `c` in every extension of `P` plus `Q`.
    pub lambda: BigInt,
}

/// Writes `target` as `Σ n_j s_j` with `Σ n_j <= limit`, using the first
/// position of each distinct nonzero value.
fn represent(target: &BigInt, vector: &ScoringVector, limit: usize) -> Option<Vec<i64>> {
    let mut firsts = Vec::new();
    let mut pos = 0;
    for (value, len) in vector.blocks() {
        if !value.is_zero() {
            firsts.push((pos, value));
        }
        pos += len;
    }
    fn rec(
        i: usize,
        rest: &BigInt,
        left: usize,
        firsts: &[(usize, BigInt)],
        dead: &mut HashSet<(usize, BigInt, usize)>,
        pick: &mut Vec<i64>,
    ) -> bool {
        if rest.is_zero() {
            return true;
        }
        if i == firsts.len() || left == 0 || rest.is_negative() {
            return false;
        }
        let key = (i, rest.clone(), left);
        if dead.contains(&key) {
            return false;
        }
        let v = &firsts[i].1;
        let most = (rest / v).min(BigInt::from(left));
        let most: usize = most.try_into().expect("bounded by limit");
        for n in (0..=most).rev() {
            pick[firsts[i].0] = n as i64;
            if rec(i + 1, &(rest - v * n), left - n, firsts, dead, pick) {
                return true;
            }
        }
        pick[firsts[i].0] = 0;
        dead.insert(key);
        false
    }
    let mut pick = vec![0; vector.len()];
    let mut dead = HashSet::new();
    rec(0, target, limit, &firsts, &mut dead, &mut pick).then_some(pick)
}

/// Builds `Q` so that `λ - s(Q, e) = μ(e)` for every `e` other than `c` and
/// `sink`.
///
/// Preconditions: `c` is fixed in every vote (1); each `μ(e)` is a sum of
/// at most `|P|` score values (2); `sink` is fixed below `c` in every vote
/// (3). The sink is padded until `λ - s(Q, sink) >= |P| · s_1`.
pub fn build_maxpartial_profile(
    votes: &[PartialOrder],
    c: usize,
    sink: usize,
    mu: &[Option<BigInt>],
    vector: &ScoringVector,
) -> Result<MaxPartial> {
    let view = analyze_fixed(votes, vector)?;
    require_fixed(&view, c, 1, "c")?;
    require_fixed(&view, sink, 3, "the sink")?;
    if let Some(v) = (0..votes.len()).find(|&v| view.fixed[v][sink] <= view.fixed[v][c]) {
        return Err(Error::Precondition {
            property: 3,
            detail: format!("the sink is not below c in vote {}", v + 1),
        });
    }
    let m = vector.len();
    let mut reps = vec![None; m];
    for e in (0..m).filter(|&e| e != c && e != sink) {
        let target = mu.get(e).and_then(|x| x.as_ref()).ok_or_else(|| Error::Precondition {
            property: 2,
            detail: format!("no maximum partial score for candidate {e}"),
        })?;
        reps[e] = Some(represent(target, vector, votes.len()).ok_or_else(|| Error::Precondition {
            property: 2,
            detail: format!("{target} is not a sum of at most {} score values", votes.len()),
        })?);
    }
    realize(votes, &view, c, sink, &reps, vector)
}

/// `reps[e]` gives `μ(e)` as position counts; coefficients may be negative.
fn realize(
    votes: &[PartialOrder],
    view: &FixedProfileView,
    c: usize,
    sink: usize,
    reps: &[Option<Vec<i64>>],
    vector: &ScoringVector,
) -> Result<MaxPartial> {
    let m = vector.len();
    let mut counts_c = vec![0i64; m];
    for row in &view.fixed {
        counts_c[row[c].expect("c is fixed")] += 1;
    }
    let nonsink: Vec<usize> = (0..m).filter(|&e| e != sink).collect();
    let rows = nonsink
        .iter()
        .map(|&e| {
            let h: Vec<i64> = match &reps[e] {
                Some(n) => (0..m).map(|k| counts_c[k] - n[k]).collect(),
                None => vec![0; m],
            };
            let mut eta = eta_from_mixed(&[], &h, vector);
            eta.truncate(m - 1);
            eta
        })
        .collect();
    let gadget = build_gadget(&ScoreTargets::new(rows)?, vector)?;
    let mut map = nonsink;
    map.push(sink);
    let mut rigid = gadget.relabel(&map);
    let mut lambda_q = gadget.lambda_q;
    let sink_q = score_orders(m, &rigid, vector).get(sink).clone();
    let need = BigInt::from(votes.len()) * vector.get(0) - (&lambda_q - &sink_q);
    if need.is_positive() {
        // Each padding block keeps the sink last and adds Σs to everyone else.
        let per = block_lambda(vector, m);
        let copies: usize = need.div_ceil(&per).try_into().expect("small padding");
        let pad: Vec<TotalOrder> = block(m - 1, m)?
            .iter()
            .map(|t| TotalOrder::new(t.iter().map(|x| map[x]).collect()).expect("relabel"))
            .collect();
        for _ in 0..copies {
            rigid.extend_from_slice(&pad);
        }
        lambda_q += per * copies;
    }
    Ok(MaxPartial {
        rigid,
        lambda: &view.fixed_score[c] + lambda_q,
    })
}

/// True when `(n1, n2)` is the only pair with the same total count giving
/// `n1·a1 + n2·a2`.
pub fn check_linear_combination_uniqueness(a1: &BigInt, a2: &BigInt, n1: u64, n2: u64) -> Result<bool> {
    if a1 == a2 {
        return Err(Error::InvalidVector("the two values must differ".into()));
    }
    let total = n1 + n2;
    let s = a1 * n1 + a2 * n2;
    Ok((0..=total).all(|n3| n3 == n1 || a1 * n3 + a2 * (total - n3) != s))
}

/// Block layout at `m = g(q)` with the sizes the truncated reductions need.
struct Setup {
    m: usize,
    vector: ScoringVector,
    /// 0-based first position of each block.
    starts: Vec<usize>,
    lengths: Vec<usize>,
}

fn setup(inst: &ThreeDm, rule: &ScoringRule) -> Result<Setup> {
    let q = inst.q();
    let m = rule
        .growth(q)
        .ok_or_else(|| Error::Reduction(format!("`{}` has no growth function", rule.name())))?;
    let vector = rule.vector(m)?;
    let lengths: Vec<usize> = rule.layout(m)?.into_iter().map(|(_, l)| l).collect();
    if lengths.len() < 3 {
        return Err(Error::Reduction(format!(
            "`{}` has {} values at m={m}, need 3",
            rule.name(),
            lengths.len()
        )));
    }
    if m < 3 * q + 2 {
        return Err(Error::Reduction(format!("m={m} is below 3q+2")));
    }
    let starts = lengths
        .iter()
        .scan(0, |acc, &l| {
            let s = *acc;
            *acc += l;
            Some(s)
        })
        .collect();
    Ok(Setup {
        m,
        vector,
        starts,
        lengths,
    })
}

struct Roles {
    roster: Roster,
    c: usize,
    w: usize,
    /// The two blocks of dummies that go into the unordered part.
    h_a: Vec<usize>,
    h_b: Vec<usize>,
}

fn roles(inst: &ThreeDm, s: &Setup, len_a: usize, len_b: usize) -> Roles {
    let mut roster = Roster::new(inst.q(), &["c", "w"]);
    let dummies = roster.add_dummies(s.m - 3 * inst.q() - 2);
    let h_a = dummies[..len_a - 1].to_vec();
    let h_b = dummies[len_a - 1..len_a + len_b - 2].to_vec();
    Roles {
        c: roster.index("c"),
        w: roster.index("w"),
        roster,
        h_a,
        h_b,
    }
}

/// `μ` terms for one element: `(block, count)` pairs over the unfixed
/// votes, added to its fixed counts.
fn element_rep(view: &FixedProfileView, s: &Setup, e: usize, terms: &[(usize, i64)]) -> Vec<i64> {
    let mut n = vec![0i64; s.m];
    for row in &view.fixed {
        if let Some(j) = row[e] {
            n[j] += 1;
        }
    }
    for &(blk, k) in terms {
        n[s.starts[blk]] += k;
    }
    n
}

struct TruncatedPlan {
    variant: Variant,
    pattern: Pattern,
    variable: Vec<PartialOrder>,
    reference: Vec<TotalOrder>,
    activated: Vec<TotalOrder>,
    /// Per axis: blocks for the one unfixed vote that picks the element,
    /// and for the others.
    element_blocks: [(usize, usize); 3],
    dummy_blocks: [(usize, usize); 2],
}

fn finish(inst: &ThreeDm, rule: &ScoringRule, s: Setup, r: Roles, plan: TruncatedPlan) -> Result<ReductionOutput> {
    let m = s.m;
    let t = inst.t() as i64;
    let view = analyze_fixed(&plan.variable, &s.vector)?;
    let mut reps: Vec<Option<Vec<i64>>> = vec![None; m];
    for e in (0..m).filter(|&e| e != r.c && e != r.w) {
        reps[e] = Some(element_rep(&view, &s, e, &[]));
    }
    for (axis, &(once, rest)) in plan.element_blocks.iter().enumerate() {
        for i in 0..inst.q() {
            let e = r.roster.elements[axis][i];
            let f = view.unfixed_count(e) as i64;
            reps[e] = Some(element_rep(&view, &s, e, &[(once, 1), (rest, f - 1)]));
        }
    }
    for (group, &(blk, _)) in [&r.h_a, &r.h_b].into_iter().zip(&plan.dummy_blocks) {
        for &h in group {
            reps[h] = Some(element_rep(&view, &s, h, &[(blk, t)]));
        }
    }
    let mu: Vec<Option<BigInt>> = reps
        .iter()
        .map(|rep| {
            rep.as_ref().map(|n| {
                n.iter()
                    .enumerate()
                    .map(|(j, &k)| BigInt::from(k) * s.vector.get(j))
                    .sum()
            })
        })
        .collect();
    let built = realize(&plan.variable, &view, r.c, r.w, &reps, &s.vector)?;
    let rigid_scores = score_orders(m, &built.rigid, &s.vector).into_scores();
    let reference_scores = score_orders(m, &plan.reference, &s.vector);
    let targets = (0..m)
        .map(|e| {
            if e == r.w {
                Target::Below(built.lambda.clone())
            } else {
                Target::Exact(reference_scores.get(e) + &rigid_scores[e])
            }
        })
        .collect();
    let candidates = crate::candidates::CandidateSet::new(r.roster.names.iter().cloned())?;
    Ok(ReductionOutput {
        variant: plan.variant,
        rule: rule.name().to_string(),
        vote_to_triple: (0..inst.t()).collect(),
        instance: inst.clone(),
        candidates,
        vector: s.vector,
        variable: plan.variable,
        rigid: built.rigid,
        rigid_scores,
        reference: plan.reference,
        activated: plan.activated,
        c: r.c,
        sink: r.w,
        special: None,
        lambda: built.lambda,
        targets,
        mu: Some(mu),
        elements: r.roster.elements.clone(),
        pattern: plan.pattern,
    })
}

/// Top-truncated votes: a ranked top over `C′` and an unordered bottom
/// holding the triple and the last two dummy groups. Needs `g` on the rule.
pub fn reduce_ttb(inst: &ThreeDm, rule: &ScoringRule) -> Result<ReductionOutput> {
    let s = setup(inst, rule)?;
    let mp = s.lengths.len();
    let (la, lb) = (s.lengths[mp - 2], s.lengths[mp - 1]);
    if s.m < la + lb + 3 * inst.q() {
        return Err(Error::Reduction(format!(
            "m={} minus the last two block lengths is below 3q={}",
            s.m,
            3 * inst.q()
        )));
    }
    let r = roles(inst, &s, la, lb);
    let mut variable = Vec::new();
    let mut reference = Vec::new();
    let mut activated = Vec::new();
    for &tr in inst.triples() {
        let [x, y, z] = r.roster.roles(tr);
        let mut drop = vec![x, y, z];
        drop.extend(r.h_a.iter().chain(&r.h_b));
        let top = r.roster.rest(&drop);
        let mut blocks: Vec<Vec<usize>> = top.iter().map(|&e| vec![e]).collect();
        blocks.push(drop.clone());
        variable.push(PartialOrder::from_blocks(s.m, &blocks)?);
        reference.push(total([&top[..], &[x, y], &r.h_a, &[z], &r.h_b].concat()));
        activated.push(total([&top[..], &[y, z], &r.h_a, &[x], &r.h_b].concat()));
    }
    // 0-based block indices m′-3, m′-2, m′-1.
    let (b2, b1, b0) = (mp - 3, mp - 2, mp - 1);
    let plan = TruncatedPlan {
        variant: Variant::Ttb,
        pattern: Pattern::YAboveX,
        variable,
        reference,
        activated,
        element_blocks: [(b0, b2), (b2, b1), (b1, b0)],
        dummy_blocks: [(b1, 0), (b0, 0)],
    };
    finish(inst, rule, s, r, plan)
}

/// Bottom-truncated votes: an unordered top holding the first two dummy
/// groups and the triple, then `C′` ranked.
pub fn reduce_btb(inst: &ThreeDm, rule: &ScoringRule) -> Result<ReductionOutput> {
    let s = setup(inst, rule)?;
    let (la, lb) = (s.lengths[0], s.lengths[1]);
    if s.m < la + lb + 3 * inst.q() {
        return Err(Error::Reduction(format!(
            "m={} minus the first two block lengths is below 3q={}",
            s.m,
            3 * inst.q()
        )));
    }
    let r = roles(inst, &s, la, lb);
    let mut variable = Vec::new();
    let mut reference = Vec::new();
    let mut activated = Vec::new();
    for &tr in inst.triples() {
        let [x, y, z] = r.roster.roles(tr);
        let mut drop = vec![x, y, z];
        drop.extend(r.h_a.iter().chain(&r.h_b));
        let bottom = r.roster.rest(&drop);
        let mut blocks = vec![drop.clone()];
        blocks.extend(bottom.iter().map(|&e| vec![e]));
        variable.push(PartialOrder::from_blocks(s.m, &blocks)?);
        reference.push(total([&r.h_a[..], &[x, y], &r.h_b, &[z], &bottom].concat()));
        activated.push(total([&r.h_a[..], &[y, z], &r.h_b, &[x], &bottom].concat()));
    }
    let plan = TruncatedPlan {
        variant: Variant::Btb,
        pattern: Pattern::XBelowZ,
        variable,
        reference,
        activated,
        element_blocks: [(2, 0), (0, 1), (1, 2)],
        dummy_blocks: [(0, 0), (1, 0)],
    };
    finish(inst, rule, s, r, plan)
}
