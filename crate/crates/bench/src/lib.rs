//! Seeded fixtures for the criterion benches.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pwsolve_core::gen::{gen_3dm, random_profile, Force, VoteShape};
use pwsolve_core::reductions::{reduce_2approval, ReductionOutput, ThreeDm};
use pwsolve_core::Profile;

/// `count` random profiles with `m` candidates and `n` votes.
pub fn profiles(seed: u64, count: usize, m: usize, n: usize, shapes: &[VoteShape]) -> Vec<Profile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_profile(&mut rng, m, n, shapes)).collect()
}

pub fn instance(q: usize, t: usize, seed: u64, force: Force) -> ThreeDm {
    gen_3dm(q, t, seed, force).expect("generator parameters are valid")
}

/// 2-approval reduction of a planted yes-instance and a forced no-instance.
pub fn two_approval_pair(q: usize, t: usize) -> (ReductionOutput, ReductionOutput) {
    let yes = reduce_2approval(&instance(q, t, 1, Force::Yes)).expect("reduction");
    let no = reduce_2approval(&instance(q, t, 1, Force::No)).expect("reduction");
    (yes, no)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_deterministic() {
        let a = profiles(3, 4, 5, 3, &VoteShape::ALL);
        let b = profiles(3, 4, 5, 3, &VoteShape::ALL);
        assert_eq!(a, b);
        let (yes, no) = two_approval_pair(2, 4);
        assert_eq!(yes.m(), 9);
        assert_eq!(no.m(), 9);
    }
}
