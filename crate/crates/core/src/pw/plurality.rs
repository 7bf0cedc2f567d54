use crate::error::Result;
use crate::flow::FlowNetwork;
use crate::order::Vote;
use crate::profile::Profile;
use crate::winners::Semantics;

use super::{complete_greedy, maximal, trivial_completion, PwAnswer, PwStats};

/// Possible winner under plurality.
///
/// `c` goes on top wherever it can; the remaining votes are assigned tops by
/// flow so that no rival passes `c`.
pub fn pw_plurality(profile: &Profile, c: usize, semantics: Semantics) -> Result<PwAnswer> {
    profile.candidates().check_index(c)?;
    let m = profile.m();
    let stats = PwStats::default();
    if m <= 1 {
        return Ok(PwAnswer::yes(trivial_completion(profile), stats));
    }
    let mut base = vec![0i64; m];
    let mut free: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, v) in profile.votes().iter().enumerate() {
        match v {
            Vote::Total(t) => base[t.at(0)] += 1,
            Vote::Partial(p) => {
                let tops = maximal(p);
                if tops.contains(&c) {
                    base[c] += 1;
                } else {
                    free.push((i, tops));
                }
            }
        }
    }
    let t = base[c];
    let slack = |r: usize| match semantics {
        Semantics::Cowinner => t - base[r],
        Semantics::Unique => t - 1 - base[r],
    };
    if (0..m).any(|r| r != c && slack(r) < 0) {
        return Ok(PwAnswer::no(stats));
    }
    // source, votes, rivals, sink
    let source = 0;
    let sink = 1 + free.len() + m;
    let mut net = FlowNetwork::new(sink + 1);
    let mut choice_edges = Vec::with_capacity(free.len());
    for (k, (_, tops)) in free.iter().enumerate() {
        net.add_edge(source, 1 + k, 1);
        let edges: Vec<(usize, usize)> = tops
            .iter()
            .map(|&r| (r, net.add_edge(1 + k, 1 + free.len() + r, 1)))
            .collect();
        choice_edges.push(edges);
    }
    for r in (0..m).filter(|&r| r != c) {
        net.add_edge(1 + free.len() + r, sink, slack(r));
    }
    if net.max_flow(source, sink) < free.len() as i64 {
        return Ok(PwAnswer::no(stats));
    }
    let mut votes = profile.votes().to_vec();
    let mut chosen = vec![None; votes.len()];
    for (k, (i, _)) in free.iter().enumerate() {
        chosen[*i] = choice_edges[k]
            .iter()
            .find(|&&(_, e)| net.flow(e) > 0)
            .map(|&(r, _)| r);
    }
    for (i, v) in votes.iter_mut().enumerate() {
        if let Vote::Partial(p) = v {
            let top = chosen[i].unwrap_or(c);
            *v = Vote::Total(complete_greedy(p, profile.candidates(), Some(top), None));
        }
    }
    let witness = Profile::new(profile.candidates().clone(), votes)?;
    Ok(PwAnswer::yes(witness, PwStats { nodes: 0, completions: 1 }))
}
