use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pwsolve_core::gadget::{
    block, block_lambda, block_swapped, build_gadget, eta_from_mixed, verify_gadget, vote_bound, ScoreTargets, Swap,
};
use pwsolve_core::rule::{approval, borda, plurality, r_fl, veto, ScoringVector};
use pwsolve_core::TotalOrder;

/// Independent scorer: plain position sums over `i64`.
fn scores(votes: &[TotalOrder], s: &[i64]) -> Vec<i64> {
    let mut out = vec![0; s.len()];
    for v in votes {
        for (pos, c) in v.iter().enumerate() {
            out[c] += s[pos];
        }
    }
    out
}

fn small(v: &ScoringVector) -> Vec<i64> {
    v.values().iter().map(|x| i64::try_from(x).unwrap()).collect()
}

#[test]
fn beta_d1_over_three() {
    let b = block(3, 1).unwrap();
    let got: Vec<Vec<usize>> = b.iter().map(TotalOrder::to_vec).collect();
    // sink is index 3
    assert_eq!(got, vec![vec![3, 0, 1, 2], vec![3, 1, 2, 0], vec![3, 2, 0, 1]]);
}

#[test]
fn block_scores() {
    for m in 1..=6 {
        let v = borda().vector(m + 1).unwrap();
        let s = small(&v);
        for j in 1..=m + 1 {
            let b = block(m, j).unwrap();
            assert_eq!(b.len(), m);
            let sc = scores(&b, &s);
            assert_eq!(sc[m], m as i64 * s[j - 1]);
            assert!(sc[..m].iter().all(|&x| x == sc[0]));
            assert_eq!(BigInt::from(sc[0]), block_lambda(&v, j));
            // every non-sink candidate visits every other position once
            for pos in (0..=m).filter(|&p| p != j - 1) {
                let mut seen: Vec<usize> = b.iter().map(|t| t.at(pos)).collect();
                seen.sort_unstable();
                assert_eq!(seen, (0..m).collect::<Vec<_>>());
            }
        }
    }
    assert!(block(3, 0).is_err());
    assert!(block(3, 5).is_err());
}

#[test]
fn swapped_blocks() {
    let v = ScoringVector::from_u64(&[2, 1, 0]).unwrap();
    // m = 2 non-sink candidates plus the sink, vector (2,1,0)
    let plus = block_swapped(2, 1, 0, Swap::Plus).unwrap();
    let base = block_lambda(&v, 1);
    let sc = scores(&plus, &[2, 1, 0]);
    assert_eq!(BigInt::from(sc[0]), &base + 1);
    assert_eq!(BigInt::from(sc[1]), base);
    assert_eq!(sc[2], 2 * 2 - 1);

    let v = ScoringVector::from_u64(&[3, 2, 1, 0]).unwrap();
    let s = small(&v);
    for j in 1..=3 {
        for target in 0..3 {
            let plus = block_swapped(3, j, target, Swap::Plus).unwrap();
            let sc = scores(&plus, &s);
            let lam = i64::try_from(block_lambda(&v, j)).unwrap();
            let delta = s[j - 1] - s[j];
            for i in 0..3 {
                assert_eq!(sc[i], lam + if i == target { delta } else { 0 });
            }
            assert_eq!(sc[3], 3 * s[j - 1] - delta);
            let minus = block_swapped(3, j, target, Swap::Minus).unwrap();
            let sc = scores(&minus, &s);
            let lam = i64::try_from(block_lambda(&v, j + 1)).unwrap();
            for i in 0..3 {
                assert_eq!(sc[i], lam - if i == target { delta } else { 0 });
            }
        }
    }
}

#[test]
fn minus_with_zero_gap_changes_nothing() {
    let v = ScoringVector::from_u64(&[1, 1, 1, 0]).unwrap();
    let s = small(&v);
    let minus = block_swapped(3, 1, 0, Swap::Minus).unwrap();
    assert_eq!(scores(&minus, &s), scores(&block(3, 2).unwrap(), &s));
}

#[test]
fn padding_only_gadget() {
    let v = ScoringVector::from_u64(&[1, 0, 0]).unwrap();
    let t = ScoreTargets::zeros(2);
    let g = build_gadget(&t, &v).unwrap();
    assert_eq!(g.votes, block(2, 3).unwrap());
    let sc = scores(&g.votes, &[1, 0, 0]);
    assert_eq!(BigInt::from(sc[0]), g.lambda_q);
    assert_eq!(BigInt::from(sc[1]), g.lambda_q);
    assert_eq!(sc[2], 0);
}

#[test]
fn single_candidate_gadget() {
    let v = ScoringVector::from_u64(&[1, 0]).unwrap();
    let g = build_gadget(&ScoreTargets::new(vec![vec![1]]).unwrap(), &v).unwrap();
    let sc = scores(&g.votes, &[1, 0]);
    assert_eq!(BigInt::from(sc[0]), &g.lambda_q + 1);
    assert!(BigInt::from(sc[1]) < g.lambda_q);
}

#[test]
fn borda_negative_entry() {
    let v = ScoringVector::from_u64(&[3, 2, 1, 0]).unwrap();
    let mut eta = vec![vec![0; 3]; 3];
    eta[1][0] = -2;
    let g = build_gadget(&ScoreTargets::new(eta).unwrap(), &v).unwrap();
    let sc = scores(&g.votes, &[3, 2, 1, 0]);
    assert_eq!(BigInt::from(sc[1]), &g.lambda_q - 2);
    assert_eq!(BigInt::from(sc[0]), g.lambda_q);
    assert!(BigInt::from(sc[3]) < g.lambda_q);
}

#[test]
fn gadget_rejects_bad_vectors() {
    let t = ScoreTargets::zeros(2);
    assert!(build_gadget(&t, &ScoringVector::from_u64(&[2, 0, 0]).unwrap()).is_err());
    assert!(build_gadget(&t, &ScoringVector::from_u64(&[1, 0]).unwrap()).is_err());
    assert!(ScoreTargets::new(vec![vec![0, 0], vec![0]]).is_err());
}

#[test]
fn eta_from_mixed_units() {
    let v = borda().vector(5).unwrap();
    for k in 0..5 {
        let mut e = vec![0; 5];
        e[k] = 1;
        let h = eta_from_mixed(&[], &e, &v);
        assert_eq!(h, (0..5).map(|j| i64::from(j >= k)).collect::<Vec<_>>());
        assert_eq!(eta_from_mixed(&e, &[], &v), e);
    }
}

#[test]
fn eta_from_mixed_matches_direct_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..300 {
        let m = rng.gen_range(2..=8);
        let mut vals: Vec<u64> = (0..m).map(|_| rng.gen_range(0..20)).collect();
        vals.sort_unstable_by(|a, b| b.cmp(a));
        vals[m - 1] = 0;
        if vals[0] == 0 {
            vals[0] = 1;
        }
        let v = ScoringVector::from_u64(&vals).unwrap();
        let l: Vec<i64> = (0..m).map(|_| rng.gen_range(-3..=3)).collect();
        let h: Vec<i64> = (0..m).map(|_| rng.gen_range(-3..=3)).collect();
        let eta = eta_from_mixed(&l, &h, &v);
        let lhs: BigInt = (0..m).map(|j| v.delta(j) * eta[j]).sum();
        let rhs: BigInt = (0..m).map(|k| v.delta(k) * l[k] + v.get(k) * h[k]).sum();
        assert_eq!(lhs, rhs);
    }
}

fn catalog(m: usize) -> Vec<ScoringVector> {
    [plurality(), veto(), approval(2), borda(), r_fl(1, 1)]
        .iter()
        .filter(|r| r.min_m() <= m + 1)
        .map(|r| r.vector(m + 1).unwrap())
        .collect()
}

fn random_targets(rng: &mut ChaCha8Rng, m: usize) -> ScoreTargets {
    let mut eta = vec![vec![0i64; m]; m];
    let budget = rng.gen_range(0..=10);
    for _ in 0..budget {
        let (i, j) = (rng.gen_range(0..m), rng.gen_range(0..m));
        eta[i][j] += if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    ScoreTargets::new(eta).unwrap()
}

#[test]
fn gadget_invariants_on_seeded_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut cases = 0;
    while cases < 200 {
        let m = rng.gen_range(1..=6);
        let t = random_targets(&mut rng, m);
        for v in catalog(m) {
            let g = build_gadget(&t, &v).unwrap();
            let s = small(&v);
            let sc = scores(&g.votes, &s);
            let lam = i64::try_from(&g.lambda_q).unwrap();
            for i in 0..m {
                let r: i64 = (0..m).map(|j| t.eta()[i][j] * (s[j] - s[j + 1])).sum();
                assert_eq!(sc[i], lam + r);
            }
            assert!(sc[m] < lam);
            assert!((g.votes.len() as u128) <= vote_bound(&t));
            assert!(verify_gadget(&g, &t, &v));
            // never more padding than m blocks per unit of η, plus one
            let pad = (g.votes.len() as u128 - m as u128 * t.abs_sum()) / m as u128;
            assert!(pad >= 1 && pad <= m as u128 * t.abs_sum() + 1);
            // one block fewer would let the sink reach λ_Q
            let s_pad = i64::try_from(block_lambda(&v, m + 1)).unwrap();
            assert!(sc[m] >= lam - s_pad || pad == 1);
            cases += 1;
        }
    }
}

proptest! {
    #[test]
    fn gadget_invariants(seed in any::<u64>(), m in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_targets(&mut rng, m);
        for v in catalog(m) {
            let g = build_gadget(&t, &v).unwrap();
            prop_assert!(verify_gadget(&g, &t, &v));
            prop_assert!((g.votes.len() as u128) <= vote_bound(&t));
        }
    }
}
