use crate::error::{Error, Result};

/// A 3-dimensional matching instance over `X = Y = Z = {1..q}`.
///
/// Triples keep their input order and may repeat.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThreeDm {
    q: usize,
    triples: Vec<[usize; 3]>,
}

impl ThreeDm {
    /// Coordinates are 1-based.
    pub fn new(q: usize, triples: Vec<[usize; 3]>) -> Result<Self> {
        if q == 0 {
            return Err(Error::Reduction("q must be at least 1".into()));
        }
        if triples.is_empty() {
            return Err(Error::Reduction("need at least one triple".into()));
        }
        for (i, t) in triples.iter().enumerate() {
            if let Some(&bad) = t.iter().find(|&&v| v == 0 || v > q) {
                return Err(Error::Reduction(format!(
                    "triple {} has coordinate {bad} outside 1..={q}",
                    i + 1
                )));
            }
        }
        Ok(ThreeDm { q, triples })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn t(&self) -> usize {
        self.triples.len()
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    pub fn triple(&self, i: usize) -> [usize; 3] {
        self.triples[i]
    }

    /// Number of triples containing element `v` (1-based) of coordinate `axis`.
    pub fn occurrences(&self, axis: usize, v: usize) -> usize {
        self.triples.iter().filter(|t| t[axis] == v).count()
    }
}

/// A set of `q` pairwise disjoint triples, by 0-based triple index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    selected: Vec<usize>,
}

impl Matching {
    /// Sorts the indices and checks that they form a perfect matching.
    pub fn new(inst: &ThreeDm, mut selected: Vec<usize>) -> Result<Self> {
        selected.sort_unstable();
        if selected.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidMatching("triple selected twice".into()));
        }
        if selected.len() != inst.q() {
            return Err(Error::InvalidMatching(format!(
                "{} triples selected, need {}",
                selected.len(),
                inst.q()
            )));
        }
        let mut seen = vec![[false; 3]; inst.q() + 1];
        for &i in &selected {
            if i >= inst.t() {
                return Err(Error::InvalidMatching(format!("no triple {}", i + 1)));
            }
            for (axis, &v) in inst.triple(i).iter().enumerate() {
                if seen[v][axis] {
                    return Err(Error::InvalidMatching(format!(
                        "element {}{v} covered twice",
                        ["x", "y", "z"][axis]
                    )));
                }
                seen[v][axis] = true;
            }
        }
        Ok(Matching { selected })
    }

    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn contains(&self, i: usize) -> bool {
        self.selected.binary_search(&i).is_ok()
    }
}

/// Backtracking over the elements of `X` in order; returns the first
/// matching found.
pub fn solve_3dm_bruteforce(inst: &ThreeDm) -> Option<Matching> {
    fn rec(inst: &ThreeDm, x: usize, used_y: &mut [bool], used_z: &mut [bool], pick: &mut Vec<usize>) -> bool {
        if x > inst.q() {
            return true;
        }
        for (i, t) in inst.triples().iter().enumerate() {
            if t[0] != x || used_y[t[1]] || used_z[t[2]] {
                continue;
            }
            used_y[t[1]] = true;
            used_z[t[2]] = true;
            pick.push(i);
            if rec(inst, x + 1, used_y, used_z, pick) {
                return true;
            }
            pick.pop();
            used_y[t[1]] = false;
            used_z[t[2]] = false;
        }
        false
    }
    let mut used_y = vec![false; inst.q() + 1];
    let mut used_z = vec![false; inst.q() + 1];
    let mut pick = Vec::new();
    rec(inst, 1, &mut used_y, &mut used_z, &mut pick)
        .then(|| Matching::new(inst, pick).expect("backtracking builds a matching"))
}
