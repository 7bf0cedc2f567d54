use crate::error::{Error, Result};
use crate::rule::ScoringRule;

use super::build::{assemble, block_position, chain, move_after, offsets, total, GadgetPlan, Roster};
use super::pvalued::{build_from_run, find_run};
use super::{Pattern, ReductionOutput, ThreeDm, Variant};

/// Unbounded rules. Looks at `m = (3q + 4) · 3q`: a block of length at
/// least `3q` there sends the instance through the p-valued construction
/// (scanning up to that `m`), otherwise the layout has at least `3q + 4`
/// blocks and the `g`/`d` construction is used.
pub fn reduce_unbounded(inst: &ThreeDm, rule: &ScoringRule) -> Result<ReductionOutput> {
    let q = inst.q();
    let m = (3 * q + 4) * 3 * q;
    let lengths: Vec<usize> = rule.layout(m)?.into_iter().map(|(_, l)| l).collect();
    if lengths.iter().any(|&l| l >= 3 * q) {
        let run = find_run(rule, q, m)?.ok_or_else(|| {
            Error::Reduction(format!(
                "`{}` has a block of length >= {} at m={m} but none of length exactly {} below it",
                rule.name(),
                3 * q,
                3 * q
            ))
        })?;
        return build_from_run(inst, rule, &run, Variant::Unbounded);
    }
    if lengths.len() < 3 * q + 4 {
        return Err(Error::Reduction(format!(
            "`{}` has {} values at m={m}, need {} or a block of length {}",
            rule.name(),
            lengths.len(),
            3 * q + 4,
            3 * q
        )));
    }
    many_values(inst, rule, m, &lengths)
}

fn many_values(inst: &ThreeDm, rule: &ScoringRule, m: usize, ell: &[usize]) -> Result<ReductionOutput> {
    let q = inst.q();
    let mp = ell.len();
    let vector = rule.vector(m)?;
    let mut roster = Roster::new(q, &["c", "g", "d", "w"]);
    let (c, g, d, w) = (roster.index("c"), roster.index("g"), roster.index("d"), roster.index("w"));
    let dummies = roster.add_dummies(m - 3 * q - 4);
    // H_j has ℓ_j - 1 members; the rest are spare dummies used as block heads.
    let mut groups = Vec::with_capacity(mp);
    let mut next = 0;
    for &l in ell {
        groups.push(dummies[next..next + l - 1].to_vec());
        next += l - 1;
    }
    let spare = &dummies[next..];
    let mut variable = Vec::new();
    let mut reference = Vec::new();
    let mut activated = Vec::new();
    for &t in inst.triples() {
        let [x, y, z] = roster.roles(t);
        let mut drop = vec![x, y, z, g, d];
        drop.extend_from_slice(&dummies);
        let mut heads = roster.rest(&drop);
        heads.extend_from_slice(spare);
        let heads = roster.sorted(heads);
        debug_assert_eq!(heads.len(), mp - 5);
        let mut order = Vec::with_capacity(m);
        for (j, &head) in heads.iter().enumerate() {
            order.push(head);
            order.extend_from_slice(&groups[j]);
        }
        for (j, e) in [g, d, x, y, z].into_iter().enumerate() {
            order.push(e);
            order.extend_from_slice(&groups[mp - 5 + j]);
        }
        let without_g: Vec<usize> = order.iter().copied().filter(|&e| e != g).collect();
        variable.push(chain(m, &without_g));
        activated.push(total(move_after(&order, g, z)));
        reference.push(total(order));
    }
    // gap(j) is the slot of δ_{m′-j}.
    let gap = |j: usize| block_position(ell, mp - j);
    let qi = q as i64;
    let mut offs = vec![vec![0; m]; m];
    offs[g] = offsets(m, &[(gap(1), qi), (gap(2), qi), (gap(3), qi), (gap(4), qi)]);
    offs[d] = offsets(m, &[(gap(4), -qi)]);
    for i in 0..q {
        offs[roster.elements[0][i]] = offsets(m, &[(gap(3), -1)]);
        offs[roster.elements[1][i]] = offsets(m, &[(gap(2), -1)]);
        offs[roster.elements[2][i]] = offsets(m, &[(gap(1), -1)]);
    }
    assemble(GadgetPlan {
        variant: Variant::Unbounded,
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
        special: Some(g),
        offsets: offs,
        pattern: Pattern::GBelowZ,
    })
}
