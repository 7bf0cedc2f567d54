use std::fmt;

use num_bigint::BigInt;

use crate::rule::{RuleClass, ScoringRule, DEFAULT_HORIZON};

/// Which possible-winner solver a rule is routed to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SolverKind {
    Plurality,
    Veto,
    Search,
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverKind::Plurality => "plurality-flow",
            SolverKind::Veto => "veto-flow",
            SolverKind::Search => "search",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Complexity {
    Polynomial,
    NpComplete,
    /// NP-complete under extra conditions on the block layout.
    NpCompleteRestricted,
    Open,
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Complexity::Polynomial => "P",
            Complexity::NpComplete => "NP-c",
            Complexity::NpCompleteRestricted => "NP-c*",
            Complexity::Open => "?",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleFamily {
    PluralityOrVeto,
    TwoValued,
    /// `(2, 1, ..., 1, 0)`.
    R11,
    /// `R(f, l)` with `f + l > 2`.
    Rfl { f: usize, l: usize },
    OtherThreeValued,
    PValued(usize),
    Unbounded,
}

impl fmt::Display for RuleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleFamily::PluralityOrVeto => write!(f, "plurality/veto"),
            RuleFamily::TwoValued => write!(f, "2-valued"),
            RuleFamily::R11 => write!(f, "R(1,1)"),
            RuleFamily::Rfl { f: a, l } => write!(f, "R({a},{l})"),
            RuleFamily::OtherThreeValued => write!(f, "3-valued"),
            RuleFamily::PValued(p) => write!(f, "{p}-valued"),
            RuleFamily::Unbounded => write!(f, "unbounded"),
        }
    }
}

/// Complexity of PW and its restrictions (partial chains, partitioned,
/// doubly/top/bottom-truncated preferences) for one rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub family: RuleFamily,
    pub solver: SolverKind,
    pub pw: Complexity,
    pub pw_pc: Complexity,
    pub pw_pp: Complexity,
    pub pw_dtb: Complexity,
    pub pw_ttb: Complexity,
    pub pw_btb: Complexity,
}

fn matches_shape(rule: &ScoringRule, shape: impl Fn(usize) -> Vec<u64>) -> bool {
    (rule.min_m()..=DEFAULT_HORIZON.max(rule.min_m())).all(|m| match rule.vector(m) {
        Ok(v) => {
            let want: Vec<BigInt> = shape(m).into_iter().map(BigInt::from).collect();
            v.values() == want.as_slice()
        }
        Err(_) => false,
    }) && rule.min_m() <= 2
}

fn is_plurality(rule: &ScoringRule) -> bool {
    matches_shape(rule, |m| {
        let mut v = vec![0; m];
        v[0] = 1;
        v
    })
}

fn is_veto(rule: &ScoringRule) -> bool {
    matches_shape(rule, |m| {
        let mut v = vec![1; m];
        v[m - 1] = 0;
        v
    })
}

/// Routes plurality-shaped and veto-shaped rules to their flow solvers,
/// everything else to search. Plurality wins the tie at `m = 2`.
pub fn solver_kind(rule: &ScoringRule) -> SolverKind {
    if is_plurality(rule) {
        SolverKind::Plurality
    } else if is_veto(rule) {
        SolverKind::Veto
    } else {
        SolverKind::Search
    }
}

/// `Some((f, l))` when every checked vector is `(2^f, 1^*, 0^l)` with fixed
/// `f` and `l`.
fn r_fl_shape(rule: &ScoringRule) -> Option<(usize, usize)> {
    let lo = rule.min_m();
    let hi = DEFAULT_HORIZON.max(lo + 1);
    let mut shape = None;
    for m in lo..=hi {
        let blocks = rule.vector(m).ok()?.blocks();
        let [(a, f), (b, _), (z, l)] = blocks.as_slice() else {
            return None;
        };
        if *a != BigInt::from(2) || *b != BigInt::from(1) || *z != BigInt::from(0) {
            return None;
        }
        match shape {
            None => shape = Some((*f, *l)),
            Some(s) if s == (*f, *l) => {}
            Some(_) => return None,
        }
    }
    shape
}

pub fn rule_family(rule: &ScoringRule) -> RuleFamily {
    if is_plurality(rule) || is_veto(rule) {
        return RuleFamily::PluralityOrVeto;
    }
    match rule.check(DEFAULT_HORIZON).checked {
        RuleClass::TwoValued => RuleFamily::TwoValued,
        RuleClass::PValued(3) => match r_fl_shape(rule) {
            Some((1, 1)) => RuleFamily::R11,
            Some((f, l)) => RuleFamily::Rfl { f, l },
            None => RuleFamily::OtherThreeValued,
        },
        RuleClass::PValued(p) => RuleFamily::PValued(p),
        RuleClass::Unbounded => RuleFamily::Unbounded,
    }
}

/// The classification table row for `rule`.
pub fn classify_rule(rule: &ScoringRule) -> Classification {
    use Complexity::{NpComplete as Npc, NpCompleteRestricted as NpcR, Open, Polynomial as P};
    let family = rule_family(rule);
    let [pw, pw_pc, pw_pp, pw_dtb, pw_ttb, pw_btb] = match family {
        RuleFamily::PluralityOrVeto => [P, P, P, P, P, P],
        RuleFamily::TwoValued | RuleFamily::R11 => [Npc, Npc, P, P, P, P],
        RuleFamily::Rfl { .. } => [Npc, Npc, Open, Open, Open, Open],
        RuleFamily::OtherThreeValued | RuleFamily::PValued(_) => [Npc, Npc, Npc, Npc, NpcR, NpcR],
        RuleFamily::Unbounded => [Npc, Npc, Npc, NpcR, NpcR, NpcR],
    };
    Classification {
        family,
        solver: solver_kind(rule),
        pw,
        pw_pc,
        pw_pp,
        pw_dtb,
        pw_ttb,
        pw_btb,
    }
}
