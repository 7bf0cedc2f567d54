use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rule::{approval, ScoringRule};

use super::build::{assemble, chain, offsets, total, GadgetPlan, Roster};
use super::{Pattern, ReductionOutput, ThreeDm, Variant};

/// 2-approval with `m = 3q + 3` candidates.
pub fn reduce_2approval(inst: &ThreeDm) -> Result<ReductionOutput> {
    build(inst, &approval(2), Variant::TwoApproval)
}

/// Any 2-valued rule whose vector at `m = 3q + 3` is `(1^k, 0^{m-k})` with
/// `2 <= k <= m - 2`.
pub fn reduce_2valued(inst: &ThreeDm, rule: &ScoringRule) -> Result<ReductionOutput> {
    build(inst, rule, Variant::TwoValued)
}

fn build(inst: &ThreeDm, rule: &ScoringRule, variant: Variant) -> Result<ReductionOutput> {
    let q = inst.q();
    let m = 3 * q + 3;
    let vector = rule.vector(m)?;
    let k = vector.values().iter().take_while(|v| v.is_one()).count();
    let shape_ok = vector.values()[k..].iter().all(|v| v.is_zero()) && vector.values().iter().all(|v| v <= &BigInt::one());
    if !shape_ok || vector.distinct() != 2 {
        return Err(Error::Reduction(format!("`{}` is not 2-valued at m={m}", rule.name())));
    }
    if k < 2 || k > m - 2 {
        return Err(Error::Reduction(format!(
            "`{}` has k={k} at m={m}; plurality and veto shapes are excluded",
            rule.name()
        )));
    }
    let roster = Roster::new(q, &["c", "d1", "w"]);
    let (c, d1, w) = (roster.index("c"), roster.index("d1"), roster.index("w"));
    let mut variable = Vec::new();
    let mut reference = Vec::new();
    let mut activated = Vec::new();
    for &t in inst.triples() {
        let [x, y, z] = roster.roles(t);
        let rest = roster.rest(&[x, y, z, d1]);
        let (c1, c2) = rest.split_at(k - 2);
        let join = |mid: &[usize]| [c1, mid, c2].concat();
        variable.push(chain(m, &join(&[x, y])));
        reference.push(total(join(&[x, y, z, d1])));
        activated.push(total(join(&[d1, z, x, y])));
    }
    // δ at position k is the only nonzero gap.
    let gap = k - 1;
    let mut offs = vec![vec![0; m]; m];
    for i in 0..q {
        offs[roster.elements[0][i]] = offsets(m, &[(gap, 1)]);
        offs[roster.elements[1][i]] = offsets(m, &[(gap, 1)]);
        offs[roster.elements[2][i]] = offsets(m, &[(gap, -1)]);
    }
    offs[d1] = offsets(m, &[(gap, -(q as i64))]);
    assemble(GadgetPlan {
        variant,
        rule: rule.name().to_string(),
        instance: inst.clone(),
        elements: roster.elements.clone(),
        names: roster.names,
        vector,
        variable,
        reference,
        activated,
        c,
        sink: w,
        special: Some(d1),
        offsets: offs,
        pattern: Pattern::TopK(k),
    })
}
