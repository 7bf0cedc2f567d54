use crate::error::Result;
use crate::flow::FlowNetwork;
use crate::order::Vote;
use crate::profile::Profile;
use crate::winners::Semantics;

use super::{complete_greedy, minimal, trivial_completion, PwAnswer, PwStats};

/// Possible winner under veto.
///
/// `c` is vetoed only where it is the sole minimal element. Each rival then
/// needs at least as many vetoes as `c` (one more for a unique win); the
/// demands are met by flow and leftover votes veto any allowed rival.
pub fn pw_veto(profile: &Profile, c: usize, semantics: Semantics) -> Result<PwAnswer> {
    profile.candidates().check_index(c)?;
    let m = profile.m();
    let stats = PwStats::default();
    if m <= 1 {
        return Ok(PwAnswer::yes(trivial_completion(profile), stats));
    }
    let mut fixed = vec![0i64; m];
    let mut free: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, v) in profile.votes().iter().enumerate() {
        match v {
            Vote::Total(t) => fixed[t.at(m - 1)] += 1,
            Vote::Partial(p) => {
                let bottoms = minimal(p);
                if bottoms == [c] {
                    fixed[c] += 1;
                } else {
                    free.push((i, bottoms.into_iter().filter(|&x| x != c).collect()));
                }
            }
        }
    }
    let need = match semantics {
        Semantics::Cowinner => fixed[c],
        Semantics::Unique => fixed[c] + 1,
    };
    let demand: Vec<i64> = (0..m)
        .map(|r| if r == c { 0 } else { (need - fixed[r]).max(0) })
        .collect();
    let total_demand: i64 = demand.iter().sum();
    let source = 0;
    let sink = 1 + free.len() + m;
    let mut net = FlowNetwork::new(sink + 1);
    let mut choice_edges = Vec::with_capacity(free.len());
    for (k, (_, bottoms)) in free.iter().enumerate() {
        net.add_edge(source, 1 + k, 1);
        let edges: Vec<(usize, usize)> = bottoms
            .iter()
            .map(|&r| (r, net.add_edge(1 + k, 1 + free.len() + r, 1)))
            .collect();
        choice_edges.push(edges);
    }
    for r in (0..m).filter(|&r| demand[r] > 0) {
        net.add_edge(1 + free.len() + r, sink, demand[r]);
    }
    if net.max_flow(source, sink) < total_demand {
        return Ok(PwAnswer::no(stats));
    }
    let rank = profile.candidates().name_rank();
    let mut chosen = vec![None; profile.len()];
    for (k, (i, bottoms)) in free.iter().enumerate() {
        let assigned = choice_edges[k]
            .iter()
            .find(|&&(_, e)| net.flow(e) > 0)
            .map(|&(r, _)| r);
        chosen[*i] = assigned.or_else(|| bottoms.iter().copied().min_by_key(|&x| rank[x]));
    }
    let mut votes = profile.votes().to_vec();
    for (i, v) in votes.iter_mut().enumerate() {
        if let Vote::Partial(p) = v {
            let bottom = chosen[i].unwrap_or(c);
            *v = Vote::Total(complete_greedy(p, profile.candidates(), None, Some(bottom)));
        }
    }
    let witness = Profile::new(profile.candidates().clone(), votes)?;
    Ok(PwAnswer::yes(witness, PwStats { nodes: 0, completions: 1 }))
}
