use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pwsolve_core::oracle::collect_extensions;
use pwsolve_core::reductions::{matching_to_completion, solve_3dm_bruteforce, ReductionOutput, ThreeDm};
use pwsolve_core::rule::{borda, lexicographic, RuleClass, ScoringVector};
use pwsolve_core::truncated::{
    analyze_fixed, build_maxpartial_profile, check_linear_combination_uniqueness, check_tightness, realized_mu,
    reduce_btb, reduce_ttb,
};
use pwsolve_core::{possible_winner, Error, PartialOrder, ScoringRule, Semantics, TotalOrder};

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Fixed positions by brute force: the set of positions over all extensions.
fn fixed_by_enumeration(p: &PartialOrder) -> Vec<Option<usize>> {
    let exts = collect_extensions(p, 1_000_000).unwrap();
    (0..p.m())
        .map(|e| {
            let first = exts[0].position_of(e);
            exts.iter().all(|t| t.position_of(e) == first).then_some(first)
        })
        .collect()
}

fn fixed_score_by_enumeration(votes: &[PartialOrder], v: &ScoringVector, e: usize) -> BigInt {
    votes
        .iter()
        .filter_map(|p| fixed_by_enumeration(p)[e])
        .map(|j| v.get(j).clone())
        .sum()
}

#[test]
fn fixed_candidates_in_the_worked_example() {
    // e1..e7 are 0..6, c is 7
    let (c, e) = (7, |i: usize| i - 1);
    let p1 = PartialOrder::from_blocks(
        8,
        &[vec![e(3)], vec![c], vec![e(1)], vec![e(2), e(4), e(7)], vec![e(6)], vec![e(5)]],
    )
    .unwrap();
    let p2 = PartialOrder::from_blocks(
        8,
        &[vec![e(1)], vec![e(2), e(4), e(7), e(3)], vec![e(6)], vec![c], vec![e(5)]],
    )
    .unwrap();
    let v = borda().vector(8).unwrap();
    let view = analyze_fixed(&[p1, p2], &v).unwrap();
    assert!(view.is_fixed(0, c) && view.is_fixed(1, c));
    assert!(view.is_fixed(0, e(3)));
    assert!(!view.is_fixed(1, e(3)));
    assert_eq!(view.unfixed_count(e(3)), 1);
}

#[test]
fn total_vote_fixes_everyone() {
    let t = TotalOrder::new(vec![2, 0, 3, 1]).unwrap().to_partial();
    let v = borda().vector(4).unwrap();
    let view = analyze_fixed(&[t], &v).unwrap();
    assert!(view.available[0].is_empty());
    assert_eq!(view.fixed[0], vec![Some(1), Some(3), Some(0), Some(2)]);
    assert_eq!(view.fixed_score, vec![big(2), big(0), big(3), big(1)]);
}

#[test]
fn bottom_truncated_available_positions() {
    let p = PartialOrder::from_blocks(4, &[vec![0, 1, 2], vec![3]]).unwrap();
    let view = analyze_fixed(std::slice::from_ref(&p), &borda().vector(4).unwrap()).unwrap();
    assert_eq!(view.available[0], vec![0, 1, 2]);
    let brute = fixed_by_enumeration(&p);
    assert_eq!(brute, vec![None, None, None, Some(3)]);
    assert_eq!(view.fixed[0], brute);
}

#[test]
fn analyze_fixed_rejects_size_mismatch() {
    assert!(analyze_fixed(&[PartialOrder::empty(3)], &borda().vector(4).unwrap()).is_err());
}

proptest! {
    #[test]
    fn fixed_matches_enumeration(seed in any::<u64>(), m in 2usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = pwsolve_core::gen::VoteShape::ALL[rng.gen_range(0..pwsolve_core::gen::VoteShape::ALL.len())];
        let p = pwsolve_core::gen::random_vote(&mut rng, m, shape).to_partial();
        let v = borda().vector(m).unwrap();
        let view = analyze_fixed(std::slice::from_ref(&p), &v).unwrap();
        prop_assert_eq!(&view.fixed[0], &fixed_by_enumeration(&p));
        // available mass plus fixed mass covers the whole vector
        let fixed_mass: BigInt = view.fixed_score.iter().sum();
        prop_assert_eq!(view.available_mass(&v) + fixed_mass, v.sum());
    }

    #[test]
    fn distinct_values_give_unique_combinations(a1 in 0i64..50, a2 in 0i64..50, n1 in 0u64..20, n2 in 0u64..20) {
        prop_assume!(a1 != a2);
        prop_assert!(check_linear_combination_uniqueness(&big(a1), &big(a2), n1, n2).unwrap());
    }
}

#[test]
fn linear_combination_examples() {
    assert!(check_linear_combination_uniqueness(&big(3), &big(1), 2, 1).unwrap());
    assert!(check_linear_combination_uniqueness(&big(1), &big(0), 0, 5).unwrap());
    assert!(check_linear_combination_uniqueness(&big(2), &big(2), 1, 1).is_err());
}

/// `(k, k, k-1, k-1, ..., 0, 0)`: every value but possibly the first twice.
fn doubled() -> ScoringRule {
    ScoringRule::new("doubled", 3, RuleClass::Unbounded, |m| {
        (0..m).map(|i| BigInt::from((m - 1 - i) / 2)).collect()
    })
    .unwrap()
    .with_growth(|u| 3 * u + 5)
}

fn mu_of(out: &ReductionOutput) -> Vec<Option<BigInt>> {
    out.mu.clone().expect("truncated reductions carry mu")
}

/// `f_e` per element candidate, read off the instance.
fn occurrences(out: &ReductionOutput) -> Vec<(usize, usize, usize)> {
    let mut res = Vec::new();
    for (axis, group) in out.elements.iter().enumerate() {
        for (i, &e) in group.iter().enumerate() {
            let f = out.instance.triples().iter().filter(|t| t[axis] == i + 1).count();
            res.push((axis, e, f));
        }
    }
    res
}

/// The μ table, recomputed from the distinct values and enumerated fixed scores.
fn check_mu_table(out: &ReductionOutput, top_truncated: bool) {
    let mu = mu_of(out);
    let v = &out.vector;
    let blocks = v.blocks();
    let a = |j: usize| blocks[j - 1].0.clone();
    let mp = blocks.len();
    let t = out.instance.t() as i64;
    // (once, rest) block numbers per axis, 1-based
    let terms = if top_truncated {
        [(mp, mp - 2), (mp - 2, mp - 1), (mp - 1, mp)]
    } else {
        [(3, 1), (1, 2), (2, 3)]
    };
    for (axis, e, f) in occurrences(out) {
        let fixed = fixed_score_by_enumeration(&out.variable, v, e);
        let (once, rest) = terms[axis];
        let want = a(once) + a(rest) * (f as i64 - 1) + fixed;
        assert_eq!(mu[e].as_ref(), Some(&want), "{}", out.candidates.name(e));
    }
    // unordered dummies get t copies of their block value
    let (da, db) = if top_truncated { (mp - 1, mp) } else { (1, 2) };
    let mut dummies: Vec<BigInt> = Vec::new();
    for h in 0..out.m() {
        if out.candidates.name(h).starts_with('h') && fixed_by_enumeration(&out.variable[0])[h].is_none() {
            dummies.push(mu[h].clone().unwrap());
        }
    }
    let mut want: Vec<BigInt> = std::iter::repeat_n(a(da) * t, blocks[da - 1].1 - 1)
        .chain(std::iter::repeat_n(a(db) * t, blocks[db - 1].1 - 1))
        .collect();
    want.sort();
    dummies.sort();
    assert_eq!(dummies, want);
}

fn instances(q: usize, count: usize, seed: u64) -> Vec<ThreeDm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let t = rng.gen_range(1..=3);
            let triples = (0..t).map(|_| [rng.gen_range(1..=q), rng.gen_range(1..=q), rng.gen_range(1..=q)]).collect();
            ThreeDm::new(q, triples).unwrap()
        })
        .collect()
}

#[test]
fn ttb_and_btb_structure() {
    for rule in [borda(), lexicographic(), doubled()] {
        for q in 1..=2 {
            for inst in instances(q, 4, q as u64) {
                for (out, top) in [(reduce_ttb(&inst, &rule).unwrap(), true), (reduce_btb(&inst, &rule).unwrap(), false)] {
                    assert_eq!(out.m(), rule.growth(q).unwrap());
                    let mu = mu_of(&out);
                    assert!(check_tightness(&out.variable, &out.vector, out.c, &mu).unwrap(), "{} {}", rule.name(), out.variant);
                    let view = analyze_fixed(&out.variable, &out.vector).unwrap();
                    for (_, e, f) in occurrences(&out) {
                        assert_eq!(view.unfixed_count(e), f);
                    }
                    check_mu_table(&out, top);
                    let real = realized_mu(&out.variable, &out.rigid, out.c, &out.vector).unwrap();
                    for e in (0..out.m()).filter(|&e| e != out.c) {
                        match &mu[e] {
                            Some(x) => assert_eq!(&real[e], x),
                            None => {
                                assert_eq!(e, out.sink);
                                // the sink can never catch up with c
                                assert!(real[e] >= out.vector.get(0) * out.instance.t());
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn mu_sums_t_values_for_elements() {
    let inst = ThreeDm::new(1, vec![[1, 1, 1], [1, 1, 1], [1, 1, 1]]).unwrap();
    let out = reduce_ttb(&inst, &borda()).unwrap();
    let view = analyze_fixed(&out.variable, &out.vector).unwrap();
    for (_, e, f) in occurrences(&out) {
        // (t - f) fixed terms, f - 1 rest terms, one once term
        assert_eq!((out.instance.t() - f) + (f - 1) + 1, out.instance.t());
        assert_eq!(view.fixed.iter().filter(|r| r[e].is_some()).count(), out.instance.t() - f);
    }
}

#[test]
fn perturbed_mu_breaks_tightness() {
    let inst = ThreeDm::new(1, vec![[1, 1, 1], [1, 1, 1]]).unwrap();
    for out in [reduce_ttb(&inst, &borda()).unwrap(), reduce_btb(&inst, &borda()).unwrap()] {
        let mut mu = mu_of(&out);
        let x = out.candidates.require("x1").unwrap();
        *mu[x].as_mut().unwrap() += 1;
        assert!(!check_tightness(&out.variable, &out.vector, out.c, &mu).unwrap());
    }
}

#[test]
fn tightness_needs_c_fixed() {
    let v = borda().vector(3).unwrap();
    let r = check_tightness(&[PartialOrder::empty(3)], &v, 0, &[None, Some(big(0)), Some(big(0))]);
    assert!(matches!(r, Err(Error::Precondition { property: 1, .. })));
}

#[test]
fn degenerate_mu_needs_padding_only() {
    // one vote c ≻ {a, b} ≻ w; μ(a) = μ(b) = s_1 = c's own fixed score
    let p = PartialOrder::from_blocks(4, &[vec![0], vec![1, 2], vec![3]]).unwrap();
    let v = borda().vector(4).unwrap();
    let mu = vec![None, Some(big(3)), Some(big(3)), None];
    let mp = build_maxpartial_profile(std::slice::from_ref(&p), 0, 3, &mu, &v).unwrap();
    let real = realized_mu(&[p], &mp.rigid, 0, &v).unwrap();
    assert_eq!(real[1], big(3));
    assert_eq!(real[2], big(3));
    assert!(real[3] >= big(3));
    // every non-sink candidate gets the same score from Q
    let s = pwsolve_core::winners::score_orders(4, &mp.rigid, &v).into_scores();
    assert!(s[0] == s[1] && s[1] == s[2]);
    assert_eq!(mp.lambda, big(3) + &s[0]);
}

#[test]
fn maxpartial_realizes_random_targets() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let v = borda().vector(5).unwrap();
    for _ in 0..50 {
        // c first, w last, three free candidates between in each vote
        let n = rng.gen_range(1..=3);
        let votes: Vec<PartialOrder> = (0..n)
            .map(|_| PartialOrder::from_blocks(5, &[vec![0], vec![1, 2, 3], vec![4]]).unwrap())
            .collect();
        let mut mu = vec![None; 5];
        for e in 1..=3 {
            let k: i64 = (0..n).map(|_| rng.gen_range(0..=4)).sum();
            mu[e] = Some(big(k));
        }
        let mp = build_maxpartial_profile(&votes, 0, 4, &mu, &v).unwrap();
        let real = realized_mu(&votes, &mp.rigid, 0, &v).unwrap();
        for e in 1..=3 {
            assert_eq!(Some(&real[e]), mu[e].as_ref());
        }
        assert!(real[4] >= big(4 * n as i64));
    }
}

#[test]
fn maxpartial_reports_the_failing_property() {
    let v = borda().vector(3).unwrap();
    let mu = vec![None, Some(big(1)), None];
    let free = PartialOrder::empty(3);
    let r = build_maxpartial_profile(&[free], 0, 2, &mu, &v);
    assert!(matches!(r, Err(Error::Precondition { property: 1, .. })));

    let c_last = PartialOrder::from_chain(3, &[2, 1, 0]).unwrap();
    let r = build_maxpartial_profile(&[c_last], 0, 2, &mu, &v);
    assert!(matches!(r, Err(Error::Precondition { property: 3, .. })));

    let ok = PartialOrder::from_chain(3, &[0, 1, 2]).unwrap();
    let too_big = vec![None, Some(big(5)), None];
    let r = build_maxpartial_profile(&[ok], 0, 2, &too_big, &v);
    assert!(matches!(r, Err(Error::Precondition { property: 2, .. })));
}

#[test]
fn reductions_need_growth_and_three_values() {
    let inst = ThreeDm::new(1, vec![[1, 1, 1]]).unwrap();
    assert!(reduce_ttb(&inst, &pwsolve_core::rule::approval(2)).is_err());
    assert!(reduce_btb(&inst, &pwsolve_core::rule::r_fl(1, 1)).is_err());
}

#[test]
fn matched_completions_hit_mu_exactly() {
    for rule in [borda(), lexicographic(), doubled()] {
        for inst in instances(1, 6, 40) {
            let Some(m) = solve_3dm_bruteforce(&inst) else { continue };
            for out in [reduce_ttb(&inst, &rule).unwrap(), reduce_btb(&inst, &rule).unwrap()] {
                let comp = matching_to_completion(&out, &m).unwrap();
                out.check_extends(&comp).unwrap();
                let s = out.scores_with(&comp);
                out.audit(&s).unwrap();
                for e in (0..out.m()).filter(|&e| e != out.c && e != out.sink) {
                    assert_eq!(s[e], out.lambda);
                }
            }
        }
    }
}

#[test]
fn witnesses_are_score_exact() {
    let rule = borda();
    for inst in instances(1, 6, 41) {
        let yes = solve_3dm_bruteforce(&inst).is_some();
        for (out, top) in [(reduce_ttb(&inst, &rule).unwrap(), true), (reduce_btb(&inst, &rule).unwrap(), false)] {
            let p = out.profile();
            let a = possible_winner(&p, &rule, out.c, Semantics::Cowinner).unwrap();
            assert_eq!(a.is_possible_winner, yes, "{}", out.variant);
            let Some(w) = a.witness else { continue };
            let totals: Vec<TotalOrder> = w.votes().iter().map(|v| v.as_total().unwrap().clone()).collect();
            let comp = &totals[..out.variable.len()];
            let s = out.scores_with(comp);
            for e in (0..out.m()).filter(|&e| e != out.c && e != out.sink) {
                assert_eq!(s[e], out.lambda, "{}", out.candidates.name(e));
            }
            if top {
                let blocks = out.vector.blocks();
                let pos: usize = blocks[..blocks.len() - 3].iter().map(|b| b.1).sum();
                let xy: Vec<usize> = out.elements[0].iter().chain(&out.elements[1]).copied().collect();
                for t in comp {
                    assert!(xy.contains(&t.at(pos)));
                }
            }
        }
    }
}
