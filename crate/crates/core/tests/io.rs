use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pwsolve_core::gen::{gen_3dm, random_profile, Force, VoteShape};
use pwsolve_core::io::{parse_3dm, parse_profile, render_3dm, render_profile, verify_witness, ProfileDocument, Sidecar};
use pwsolve_core::reductions::{
    completion_profile, matching_to_completion, reduce_2approval, reduce_unbounded, solve_3dm_bruteforce, ThreeDm,
};
use pwsolve_core::rule::borda;
use pwsolve_core::truncated::reduce_btb;
use pwsolve_core::{classify_order, Error, Profile, Vote};

fn parse_err(text: &str) -> (usize, usize) {
    match parse_profile(text) {
        Err(Error::Parse { line, col, .. }) => (line, col),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn total_vote() {
    let doc = parse_profile("candidates: a,b,c\nvote: a > b > c\n").unwrap();
    let v = &doc.profile.votes()[0];
    assert!(v.is_total());
    assert_eq!(v.as_total().unwrap().to_vec(), vec![0, 1, 2]);
    assert_eq!(doc.distinguished, None);
}

#[test]
fn chain_with_omitted_candidate() {
    let doc = parse_profile("candidates: a,b,c\nvote: a > c").unwrap();
    let p = doc.profile.votes()[0].to_partial();
    assert!(p.prefers(0, 2));
    assert!(!p.comparable(0, 1) && !p.comparable(1, 2));
    assert!(classify_order(&p).is_partial_chain);
}

#[test]
fn partitioned_vote() {
    let doc = parse_profile("candidates: a,b,c,d,e\nvote: {a,b} > {c} > {d,e}").unwrap();
    let p = doc.profile.votes()[0].to_partial();
    let class = classify_order(&p);
    assert!(class.is_partitioned);
    assert!(!class.is_partial_chain);
    assert_eq!(p.blocks().unwrap(), vec![vec![0, 1], vec![2], vec![3, 4]]);
    let braces_optional = parse_profile("candidates: a,b,c,d,e\nvote: {a,b} > c > {d,e}").unwrap();
    assert_eq!(braces_optional.profile, doc.profile);
}

#[test]
fn pair_list_is_closed() {
    let doc = parse_profile("candidates: a,b,c,d\nvote-pairs: a>b; b>c\n").unwrap();
    let p = doc.profile.votes()[0].to_partial();
    assert!(p.prefers(0, 2));
    assert!(!p.comparable(0, 3));
}

#[test]
fn header_fields_and_comments() {
    let text = "# election\ncandidates: a, b, c\ndistinguished: b\nrule: 2-approval # trailing\nvote: b > a\n\n";
    let doc = parse_profile(text).unwrap();
    assert_eq!(doc.distinguished, Some(1));
    assert_eq!(doc.rule.as_deref(), Some("2-approval"));
    assert_eq!(doc.profile.votes().len(), 1);
}

#[test]
fn errors_carry_positions() {
    assert_eq!(parse_err("candidates: a,b\nvote: a > x").0, 2);
    assert_eq!(parse_err("vote: a > b").0, 1);
    assert_eq!(parse_err("candidates: a,b\nvote-pairs: a>b; b>a").0, 2);
    assert_eq!(parse_err("candidates: a,b\nfoo: 1"), (2, 1));
    assert_eq!(parse_err("candidates: a,a").0, 1);
    assert_eq!(parse_err("candidates: a,b\ndistinguished: q").0, 2);
    let (line, col) = parse_err("candidates: a,b\nvote: a > a");
    assert_eq!(line, 2);
    assert!(col > 1);
}

#[test]
fn three_dm_examples() {
    let i = parse_3dm("q: 1\ntriple: x1 y1 z1\n").unwrap();
    assert_eq!((i.q(), i.t()), (1, 1));
    let dup = parse_3dm("q: 1\ntriple: x1 y1 z1\ntriple: x1 y1 z1").unwrap();
    assert_eq!(dup.t(), 2);
    for bad in ["q: 1\ntriple: x2 y1 z1", "q: 0\ntriple: x1 y1 z1", "q: 1\ntriple: x1 z1 y1", "q: 1\ntriple: xa y1 z1"] {
        assert!(matches!(parse_3dm(bad), Err(Error::Parse { .. })), "{bad}");
    }
}

#[test]
fn gen_examples() {
    let yes = gen_3dm(2, 4, 7, Force::Yes).unwrap();
    assert!(solve_3dm_bruteforce(&yes).is_some());
    for seed in 0..10 {
        let no = gen_3dm(2, 3, seed, Force::No).unwrap();
        assert!(solve_3dm_bruteforce(&no).is_none());
    }
    for force in [Force::Yes, Force::No, Force::Any] {
        assert_eq!(render_3dm(&gen_3dm(2, 4, 3, force).unwrap()), render_3dm(&gen_3dm(2, 4, 3, force).unwrap()));
    }
    assert!(gen_3dm(3, 2, 0, Force::Yes).is_err());
    assert!(gen_3dm(1, 3, 0, Force::No).is_err());
    assert!("maybe".parse::<Force>().is_err());
}

#[test]
fn sidecar_round_trip() {
    let inst = ThreeDm::new(1, vec![[1, 1, 1], [1, 1, 1]]).unwrap();
    for out in [
        reduce_2approval(&inst).unwrap(),
        reduce_unbounded(&inst, &borda()).unwrap(),
        reduce_btb(&inst, &borda()).unwrap(),
    ] {
        let side = Sidecar::from_output(&out);
        assert_eq!(Sidecar::parse(&side.render()).unwrap(), side);
    }
}

#[test]
fn verify_accepts_matched_completions() {
    let inst = ThreeDm::new(2, vec![[1, 1, 1], [2, 2, 2], [1, 2, 2]]).unwrap();
    let m = solve_3dm_bruteforce(&inst).unwrap();
    for out in [reduce_2approval(&inst).unwrap(), reduce_btb(&inst, &borda()).unwrap()] {
        let side = Sidecar::parse(&Sidecar::from_output(&out).render()).unwrap();
        let comp = matching_to_completion(&out, &m).unwrap();
        let witness = completion_profile(&out, &comp);
        let partial = out.profile();
        let report = verify_witness(&side, &witness, Some(&partial)).unwrap();
        assert!(report.ok(), "{report:?}");
        assert_eq!(report.matching.unwrap().selected(), m.selected());
        // the reference completion is not a win for c
        let bad = completion_profile(&out, &out.reference);
        assert!(!verify_witness(&side, &bad, Some(&partial)).unwrap().ok());
    }
}

fn profiles() -> impl Strategy<Value = Profile> {
    (any::<u64>(), 1usize..=6, 1usize..=4).prop_map(|(seed, m, n)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_profile(&mut rng, m, n, &VoteShape::ALL)
    })
}

proptest! {
    #[test]
    fn profile_round_trip(p in profiles(), with_c in any::<bool>(), with_rule in any::<bool>()) {
        let mut doc = ProfileDocument::new(p.clone());
        if with_c {
            doc.distinguished = Some(p.m() - 1);
        }
        if with_rule {
            doc.rule = Some("borda".into());
        }
        let text = render_profile(&doc);
        let back = parse_profile(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(render_profile(&back), text);
        for (a, b) in back.profile.votes().iter().zip(p.votes()) {
            prop_assert_eq!(a.to_partial(), b.to_partial());
            prop_assert_eq!(matches!(a, Vote::Total(_)), b.is_total());
        }
    }

    #[test]
    fn three_dm_round_trip(seed in any::<u64>(), q in 1usize..=5, t in 1usize..=10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let triples = (0..t).map(|_| [rng.gen_range(1..=q), rng.gen_range(1..=q), rng.gen_range(1..=q)]).collect();
        let i = ThreeDm::new(q, triples).unwrap();
        let text = render_3dm(&i);
        let back = parse_3dm(&text).unwrap();
        prop_assert_eq!(&back, &i);
        prop_assert_eq!(render_3dm(&back), text);
    }
}
