//! Seeded instance generators.

use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::candidates::CandidateSet;
use crate::error::{Error, Result};
use crate::order::{PartialOrder, TotalOrder, Vote};
use crate::profile::Profile;
use crate::reductions::{solve_3dm_bruteforce, ThreeDm};

/// Resampling limit for `Force::No`.
pub const MAX_RESAMPLES: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Force {
    Yes,
    No,
    Any,
}

impl FromStr for Force {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "yes" => Ok(Force::Yes),
            "no" => Ok(Force::No),
            "any" => Ok(Force::Any),
            _ => Err(Error::Generator(format!("force must be yes, no or any, got `{s}`"))),
        }
    }
}

fn random_triple(rng: &mut ChaCha8Rng, q: usize) -> [usize; 3] {
    [rng.gen_range(1..=q), rng.gen_range(1..=q), rng.gen_range(1..=q)]
}

/// `Yes` plants a matching among `t` triples, `No` resamples until no
/// matching exists, `Any` draws every coordinate uniformly.
pub fn gen_3dm(q: usize, t: usize, seed: u64, force: Force) -> Result<ThreeDm> {
    if q == 0 || t == 0 {
        return Err(Error::Generator("q and t must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match force {
        Force::Any => ThreeDm::new(q, (0..t).map(|_| random_triple(&mut rng, q)).collect()),
        Force::Yes => {
            if t < q {
                return Err(Error::Generator(format!("a planted matching needs t >= q, got t={t}, q={q}")));
            }
            let mut ys: Vec<usize> = (1..=q).collect();
            let mut zs: Vec<usize> = (1..=q).collect();
            ys.shuffle(&mut rng);
            zs.shuffle(&mut rng);
            let mut triples: Vec<[usize; 3]> = (0..q).map(|i| [i + 1, ys[i], zs[i]]).collect();
            triples.extend((q..t).map(|_| random_triple(&mut rng, q)));
            triples.shuffle(&mut rng);
            ThreeDm::new(q, triples)
        }
        Force::No => {
            for _ in 0..MAX_RESAMPLES {
                let inst = ThreeDm::new(q, (0..t).map(|_| random_triple(&mut rng, q)).collect())?;
                if solve_3dm_bruteforce(&inst).is_none() {
                    return Ok(inst);
                }
            }
            Err(Error::Generator(format!(
                "no instance without a matching after {MAX_RESAMPLES} samples (q={q}, t={t})"
            )))
        }
    }
}

/// Shapes a random vote can take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VoteShape {
    Total,
    PartialChain,
    Partitioned,
    TopTruncated,
    BottomTruncated,
    General,
}

impl VoteShape {
    pub const ALL: [VoteShape; 6] = [
        VoteShape::Total,
        VoteShape::PartialChain,
        VoteShape::Partitioned,
        VoteShape::TopTruncated,
        VoteShape::BottomTruncated,
        VoteShape::General,
    ];
}

/// `a, b, c, ...` up to 26 candidates, `c1, c2, ...` beyond.
pub fn candidate_names(m: usize) -> CandidateSet {
    let names: Vec<String> = if m <= 26 {
        (0..m).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (1..=m).map(|i| format!("c{i}")).collect()
    };
    CandidateSet::new(names).expect("generated names are distinct")
}

pub fn random_vote<R: Rng>(rng: &mut R, m: usize, shape: VoteShape) -> Vote {
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(rng);
    let order = match shape {
        VoteShape::Total => return Vote::Total(TotalOrder::new(perm).expect("shuffle")),
        VoteShape::PartialChain => {
            let k = rng.gen_range(1..=m);
            PartialOrder::from_chain(m, &perm[..k])
        }
        VoteShape::Partitioned => {
            let mut blocks: Vec<Vec<usize>> = Vec::new();
            for (i, &x) in perm.iter().enumerate() {
                if i == 0 || rng.gen_bool(0.5) {
                    blocks.push(vec![x]);
                } else {
                    blocks.last_mut().expect("block").push(x);
                }
            }
            PartialOrder::from_blocks(m, &blocks)
        }
        VoteShape::TopTruncated | VoteShape::BottomTruncated => {
            let k = rng.gen_range(0..m);
            let mut blocks: Vec<Vec<usize>> = perm[..k].iter().map(|&x| vec![x]).collect();
            blocks.push(perm[k..].to_vec());
            if shape == VoteShape::BottomTruncated {
                blocks.reverse();
            }
            PartialOrder::from_blocks(m, &blocks)
        }
        VoteShape::General => {
            // Random pairs oriented along the permutation stay acyclic.
            let mut pairs = Vec::new();
            for i in 0..m {
                for j in i + 1..m {
                    if rng.gen_bool(0.3) {
                        pairs.push((perm[i], perm[j]));
                    }
                }
            }
            PartialOrder::from_pairs(m, pairs)
        }
    };
    Vote::from(order.expect("generated orders are acyclic"))
}

/// `n` votes, each of a shape drawn from `shapes`.
pub fn random_profile<R: Rng>(rng: &mut R, m: usize, n: usize, shapes: &[VoteShape]) -> Profile {
    let votes = (0..n)
        .map(|_| {
            let shape = *shapes.choose(rng).expect("at least one shape");
            random_vote(rng, m, shape)
        })
        .collect();
    Profile::new(candidate_names(m), votes).expect("votes match the candidate count")
}
