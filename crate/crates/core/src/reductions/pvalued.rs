use crate::error::{Error, Result};
use crate::rule::{RuleClass, ScoringRule};

use super::build::{assemble, block_position, chain, move_after, offsets, total, GadgetPlan, Roster};
use super::{Pattern, ReductionOutput, ThreeDm, Variant};

/// Where the block of length `3q` sits in the layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunCase {
    First,
    Middle,
    Last,
}

/// A vector length whose layout has a block of length exactly `3q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub m: usize,
    pub lengths: Vec<usize>,
    /// 1-based block index.
    pub u: usize,
    pub case: RunCase,
}

/// Scans `m` upward over `lo..=hi` for the first layout with at least three
/// blocks and a block of length `3q`; picks the smallest such block.
pub fn find_run(rule: &ScoringRule, q: usize, hi: usize) -> Result<Option<Run>> {
    let lo = rule.min_m().max(3 * q + 2);
    for m in lo..=hi {
        let lengths: Vec<usize> = rule.layout(m)?.into_iter().map(|(_, l)| l).collect();
        let p = lengths.len();
        if p < 3 {
            continue;
        }
        if let Some(i) = lengths.iter().position(|&l| l == 3 * q) {
            let u = i + 1;
            let case = match u {
                1 => RunCase::First,
                _ if u == p => RunCase::Last,
                _ => RunCase::Middle,
            };
            return Ok(Some(Run { m, lengths, u, case }));
        }
    }
    Ok(None)
}

/// p-valued rules, `p >= 3`. The scan bound is `3q · p`.
pub fn reduce_pvalued(inst: &ThreeDm, rule: &ScoringRule) -> Result<ReductionOutput> {
    let p = match rule.declared_class() {
        RuleClass::PValued(p) if p >= 3 => p,
        other => {
            return Err(Error::Reduction(format!(
                "`{}` is declared {other}, need p-valued with p >= 3",
                rule.name()
            )))
        }
    };
    let bound = 3 * inst.q() * p;
    let run = find_run(rule, inst.q(), bound)?.ok_or_else(|| {
        Error::Reduction(format!(
            "`{}` has no block of length {} for m <= {bound}",
            rule.name(),
            3 * inst.q()
        ))
    })?;
    build_from_run(inst, rule, &run, Variant::PValued)
}

pub(crate) fn build_from_run(inst: &ThreeDm, rule: &ScoringRule, run: &Run, variant: Variant) -> Result<ReductionOutput> {
    let q = inst.q();
    let m = run.m;
    let ell = &run.lengths;
    let p = ell.len();
    let vector = rule.vector(m)?;
    let mut roster = Roster::new(q, &["c", "w"]);
    let dummies = roster.add_dummies(m - 3 * q - 2);
    let (c, w) = (roster.index("c"), roster.index("w"));
    // Block gaps the moved candidates cross.
    let (b1, b2, h1_len) = match run.case {
        RunCase::First => (1, 2, ell[1] - 1),
        RunCase::Last => (p - 2, p - 1, ell[p - 2] - 1),
        RunCase::Middle => (run.u - 1, run.u, ell[..run.u - 1].iter().sum::<usize>() - 1),
    };
    let h1 = &dummies[..h1_len];
    let h_rest = &dummies[h1_len..];
    let mut variable = Vec::new();
    let mut reference = Vec::new();
    let mut activated = Vec::new();
    for &t in inst.triples() {
        let [x, y, z] = roster.roles(t);
        let mut drop = vec![x, y, z];
        drop.extend_from_slice(&dummies);
        let cp = roster.rest(&drop);
        let order = match run.case {
            RunCase::First => [&cp[..], &[x, y], h1, &[z], h_rest].concat(),
            RunCase::Last => [h_rest, &[x, y], h1, &[z], &cp[..]].concat(),
            RunCase::Middle => [h1, &[x, y], &cp[..], &[z], h_rest].concat(),
        };
        let without_x: Vec<usize> = order.iter().copied().filter(|&e| e != x).collect();
        variable.push(chain(m, &without_x));
        activated.push(total(move_after(&order, x, z)));
        reference.push(total(order));
    }
    let (g1, g2) = (block_position(ell, b1), block_position(ell, b2));
    let mut offs = vec![vec![0; m]; m];
    for i in 0..q {
        offs[roster.elements[0][i]] = offsets(m, &[(g1, 1), (g2, 1)]);
        offs[roster.elements[1][i]] = offsets(m, &[(g1, -1)]);
        offs[roster.elements[2][i]] = offsets(m, &[(g2, -1)]);
    }
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
        special: None,
        offsets: offs,
        pattern: Pattern::XBelowY,
    })
}
