//! Line-oriented text formats: profiles, 3DM instances and reduction
//! metadata sidecars. `#` starts a comment anywhere on a line.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::candidates::CandidateSet;
use crate::error::{Error, Result};
use crate::order::{PartialOrder, TotalOrder, Vote};
use crate::profile::Profile;
use crate::reductions::{Matching, Pattern, ReductionOutput, Target, ThreeDm, Variant};
use crate::rule::ScoringVector;
use crate::truncated::check_tightness;
use crate::winners::{is_winner, score_orders, Semantics};

/// A parsed profile file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileDocument {
    pub profile: Profile,
    pub distinguished: Option<usize>,
    pub rule: Option<String>,
}

impl ProfileDocument {
    pub fn new(profile: Profile) -> Self {
        ProfileDocument {
            profile,
            distinguished: None,
            rule: None,
        }
    }
}

/// One non-blank line with its comment removed.
struct Line<'a> {
    no: usize,
    key: &'a str,
    value: &'a str,
    /// 1-based column where `value` starts in the raw line.
    value_col: usize,
}

fn lines(text: &str) -> impl Iterator<Item = Result<Line<'_>>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let no = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            return None;
        }
        let Some(colon) = body.find(':') else {
            let col = body.len() - body.trim_start().len() + 1;
            return Some(Err(Error::parse(no, col, "expected `key: value`")));
        };
        let key = body[..colon].trim();
        let rest = &body[colon + 1..];
        let lead = rest.len() - rest.trim_start().len();
        Some(Ok(Line {
            no,
            key,
            value: rest.trim(),
            value_col: colon + 2 + lead,
        }))
    })
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && !s
            .chars()
            .any(|ch| ch.is_whitespace() || ",>{};:#".contains(ch))
}

/// Splits `s` on `sep`, yielding trimmed pieces with their 1-based columns
/// relative to `base`.
fn pieces(s: &str, sep: char, base: usize) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for part in s.split(sep) {
        let lead = part.len() - part.trim_start().len();
        out.push((part.trim(), base + start + lead));
        start += part.len() + sep.len_utf8();
    }
    out
}

fn lookup(cands: &CandidateSet, name: &str, line: usize, col: usize) -> Result<usize> {
    cands
        .index_of(name)
        .ok_or_else(|| Error::parse(line, col, format!("unknown candidate `{name}`")))
}

fn parse_vote(cands: &CandidateSet, l: &Line) -> Result<Vote> {
    let m = cands.len();
    let mut seen = vec![false; m];
    let mut note = |x: usize, col: usize| {
        if std::mem::replace(&mut seen[x], true) {
            Err(Error::parse(l.no, col, format!("`{}` appears twice", cands.name(x))))
        } else {
            Ok(())
        }
    };
    let mut blocks = Vec::new();
    let mut braced = false;
    for (seg, col) in pieces(l.value, '>', l.value_col) {
        if seg.is_empty() {
            return Err(Error::parse(l.no, col, "empty segment"));
        }
        let mut block = Vec::new();
        if let Some(inner) = seg.strip_prefix('{') {
            let inner = inner
                .strip_suffix('}')
                .ok_or_else(|| Error::parse(l.no, col, "missing `}`"))?;
            braced = true;
            for (name, c) in pieces(inner, ',', col + 1) {
                let x = lookup(cands, name, l.no, c)?;
                note(x, c)?;
                block.push(x);
            }
        } else {
            let x = lookup(cands, seg, l.no, col)?;
            note(x, col)?;
            block.push(x);
        }
        blocks.push(block);
    }
    if !braced && blocks.len() == m {
        let ranking = blocks.into_iter().flatten().collect();
        return Ok(Vote::Total(TotalOrder::new(ranking)?));
    }
    let order = if braced {
        PartialOrder::from_blocks(m, &blocks)
    } else {
        let chain: Vec<usize> = blocks.into_iter().flatten().collect();
        PartialOrder::from_chain(m, &chain)
    }
    .map_err(|e| Error::parse(l.no, l.value_col, e.to_string()))?;
    Ok(Vote::from(order))
}

fn parse_pairs(cands: &CandidateSet, l: &Line) -> Result<Vote> {
    let mut pairs = Vec::new();
    if !l.value.is_empty() {
        for (item, col) in pieces(l.value, ';', l.value_col) {
            let ends = pieces(item, '>', col);
            let [(a, ca), (b, cb)] = ends.as_slice() else {
                return Err(Error::parse(l.no, col, "expected `a>b`"));
            };
            pairs.push((lookup(cands, a, l.no, *ca)?, lookup(cands, b, l.no, *cb)?));
        }
    }
    let order = PartialOrder::from_pairs(cands.len(), pairs).map_err(|e| match e {
        Error::Cyclic(i) => {
            let name = i.parse().map(|i: usize| cands.name(i).to_string()).unwrap_or(i);
            Error::parse(l.no, l.value_col, format!("cyclic order through `{name}`"))
        }
        e => Error::parse(l.no, l.value_col, e.to_string()),
    })?;
    Ok(Vote::from(order))
}

pub fn parse_profile(text: &str) -> Result<ProfileDocument> {
    let mut cands: Option<CandidateSet> = None;
    let mut votes = Vec::new();
    let mut distinguished = None;
    let mut rule = None;
    for line in lines(text) {
        let l = line?;
        let first = || Error::parse(l.no, 1, "`candidates:` must come first");
        match l.key {
            "candidates" => {
                if cands.is_some() {
                    return Err(Error::parse(l.no, 1, "second `candidates:` line"));
                }
                let mut names = Vec::new();
                for (name, col) in pieces(l.value, ',', l.value_col) {
                    if !valid_name(name) {
                        return Err(Error::parse(l.no, col, format!("bad candidate name `{name}`")));
                    }
                    names.push(name.to_string());
                }
                cands = Some(CandidateSet::new(names).map_err(|e| Error::parse(l.no, l.value_col, e.to_string()))?);
            }
            "vote" => votes.push(parse_vote(cands.as_ref().ok_or_else(first)?, &l)?),
            "vote-pairs" => votes.push(parse_pairs(cands.as_ref().ok_or_else(first)?, &l)?),
            "distinguished" => {
                let cs = cands.as_ref().ok_or_else(first)?;
                distinguished = Some(lookup(cs, l.value, l.no, l.value_col)?);
            }
            "rule" => {
                if l.value.is_empty() {
                    return Err(Error::parse(l.no, l.value_col, "empty rule"));
                }
                rule = Some(l.value.to_string());
            }
            other => return Err(Error::parse(l.no, 1, format!("unknown key `{other}`"))),
        }
    }
    let cands = cands.ok_or_else(|| Error::parse(1, 1, "no `candidates:` line"))?;
    Ok(ProfileDocument {
        profile: Profile::new(cands, votes)?,
        distinguished,
        rule,
    })
}

fn render_total(cands: &CandidateSet, t: &TotalOrder) -> String {
    t.iter().map(|x| cands.name(x)).collect::<Vec<_>>().join(" > ")
}

fn render_vote(cands: &CandidateSet, v: &Vote) -> String {
    let name = |x: usize| cands.name(x);
    let p = match v {
        Vote::Total(t) => return format!("vote: {}", render_total(cands, t)),
        Vote::Partial(p) => p,
    };
    if let Some(t) = p.as_total() {
        return format!("vote: {}", render_total(cands, &t));
    }
    if p.pair_count() == 0 {
        return "vote-pairs:".to_string();
    }
    if let Some(chain) = p.chain() {
        return format!("vote: {}", chain.iter().map(|&x| name(x)).collect::<Vec<_>>().join(" > "));
    }
    if let Some(blocks) = p.blocks() {
        let segs: Vec<String> = blocks
            .iter()
            .map(|b| match b.as_slice() {
                [x] => name(*x).to_string(),
                _ => format!("{{{}}}", b.iter().map(|&x| name(x)).collect::<Vec<_>>().join(",")),
            })
            .collect();
        return format!("vote: {}", segs.join(" > "));
    }
    let pairs: Vec<String> = p
        .cover_pairs()
        .into_iter()
        .map(|(a, b)| format!("{}>{}", name(a), name(b)))
        .collect();
    format!("vote-pairs: {}", pairs.join("; "))
}

pub fn render_profile(doc: &ProfileDocument) -> String {
    let cands = doc.profile.candidates();
    let mut out = format!("candidates: {}\n", cands.names().join(","));
    if let Some(r) = &doc.rule {
        writeln!(out, "rule: {r}").unwrap();
    }
    if let Some(c) = doc.distinguished {
        writeln!(out, "distinguished: {}", cands.name(c)).unwrap();
    }
    for v in doc.profile.votes() {
        out.push_str(&render_vote(cands, v));
        out.push('\n');
    }
    out
}

fn parse_usize(s: &str, line: usize, col: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::parse(line, col, format!("expected a non-negative integer, got `{s}`")))
}

fn parse_element(token: &str, prefix: char, q: usize, line: usize, col: usize) -> Result<usize> {
    let idx = token
        .strip_prefix(prefix)
        .ok_or_else(|| Error::parse(line, col, format!("expected `{prefix}<i>`, got `{token}`")))?;
    let i = parse_usize(idx, line, col + 1)?;
    if i == 0 || i > q {
        return Err(Error::parse(line, col, format!("index {i} outside 1..={q}")));
    }
    Ok(i)
}

fn parse_triple(value: &str, q: usize, line: usize, col: usize) -> Result<[usize; 3]> {
    let toks: Vec<(&str, usize)> = pieces(value, ' ', col)
        .into_iter()
        .filter(|(t, _)| !t.is_empty())
        .collect();
    let [(a, ca), (b, cb), (c, cc)] = toks.as_slice() else {
        return Err(Error::parse(line, col, "expected `x<i> y<j> z<k>`"));
    };
    Ok([
        parse_element(a, 'x', q, line, *ca)?,
        parse_element(b, 'y', q, line, *cb)?,
        parse_element(c, 'z', q, line, *cc)?,
    ])
}

pub fn parse_3dm(text: &str) -> Result<ThreeDm> {
    let mut q = None;
    let mut triples = Vec::new();
    let mut last = 1;
    for line in lines(text) {
        let l = line?;
        last = l.no;
        match l.key {
            "q" if q.is_none() => {
                let v = parse_usize(l.value, l.no, l.value_col)?;
                if v == 0 {
                    return Err(Error::parse(l.no, l.value_col, "q must be at least 1"));
                }
                q = Some(v);
            }
            "q" => return Err(Error::parse(l.no, 1, "second `q:` line")),
            "triple" => {
                let q = q.ok_or_else(|| Error::parse(l.no, 1, "`q:` must come first"))?;
                triples.push(parse_triple(l.value, q, l.no, l.value_col)?);
            }
            other => return Err(Error::parse(l.no, 1, format!("unknown key `{other}`"))),
        }
    }
    let q = q.ok_or_else(|| Error::parse(1, 1, "no `q:` line"))?;
    ThreeDm::new(q, triples).map_err(|e| Error::parse(last, 1, e.to_string()))
}

pub fn render_3dm(inst: &ThreeDm) -> String {
    let mut out = format!("q: {}\n", inst.q());
    for t in inst.triples() {
        writeln!(out, "triple: x{} y{} z{}", t[0], t[1], t[2]).unwrap();
    }
    out
}

/// Everything `verify` needs about a reduction, without `Q` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sidecar {
    pub variant: Variant,
    pub rule: String,
    pub vector: ScoringVector,
    pub instance: ThreeDm,
    pub candidates: Vec<String>,
    pub c: String,
    pub sink: String,
    pub special: Option<String>,
    pub pattern: Pattern,
    pub lambda: BigInt,
    pub variable_votes: usize,
    pub rigid_votes: usize,
    /// Per candidate, in candidate order.
    pub targets: Vec<Target>,
    pub rigid_scores: Vec<BigInt>,
    pub mu: Option<Vec<Option<BigInt>>>,
    /// 0-based triple index per variable vote.
    pub vote_to_triple: Vec<usize>,
}

impl Sidecar {
    pub fn from_output(out: &ReductionOutput) -> Self {
        let name = |i: usize| out.candidates.name(i).to_string();
        Sidecar {
            variant: out.variant,
            rule: out.rule.clone(),
            vector: out.vector.clone(),
            instance: out.instance.clone(),
            candidates: out.candidates.names().to_vec(),
            c: name(out.c),
            sink: name(out.sink),
            special: out.special.map(name),
            pattern: out.pattern,
            lambda: out.lambda.clone(),
            variable_votes: out.variable.len(),
            rigid_votes: out.rigid.len(),
            targets: out.targets.clone(),
            rigid_scores: out.rigid_scores.clone(),
            mu: out.mu.clone(),
            vote_to_triple: out.vote_to_triple.clone(),
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let vals: Vec<String> = self.vector.values().iter().map(|v| v.to_string()).collect();
        writeln!(s, "variant: {}", self.variant).unwrap();
        writeln!(s, "rule: {}", self.rule).unwrap();
        writeln!(s, "vector: {}", vals.join(" ")).unwrap();
        writeln!(s, "q: {}", self.instance.q()).unwrap();
        for t in self.instance.triples() {
            writeln!(s, "triple: x{} y{} z{}", t[0], t[1], t[2]).unwrap();
        }
        writeln!(s, "candidates: {}", self.candidates.join(",")).unwrap();
        writeln!(s, "c: {}", self.c).unwrap();
        writeln!(s, "sink: {}", self.sink).unwrap();
        if let Some(sp) = &self.special {
            writeln!(s, "special: {sp}").unwrap();
        }
        writeln!(s, "pattern: {}", self.pattern).unwrap();
        writeln!(s, "lambda: {}", self.lambda).unwrap();
        writeln!(s, "variable-votes: {}", self.variable_votes).unwrap();
        writeln!(s, "rigid-votes: {}", self.rigid_votes).unwrap();
        for (name, t) in self.candidates.iter().zip(&self.targets) {
            match t {
                Target::Exact(v) => writeln!(s, "target: {name} = {v}").unwrap(),
                Target::Below(v) => writeln!(s, "target: {name} < {v}").unwrap(),
            }
        }
        for (name, v) in self.candidates.iter().zip(&self.rigid_scores) {
            writeln!(s, "rigid-score: {name} = {v}").unwrap();
        }
        if let Some(mu) = &self.mu {
            for (name, v) in self.candidates.iter().zip(mu) {
                if let Some(v) = v {
                    writeln!(s, "mu: {name} = {v}").unwrap();
                }
            }
        }
        let map: Vec<String> = self.vote_to_triple.iter().map(|i| (i + 1).to_string()).collect();
        writeln!(s, "vote-triple: {}", map.join(" ")).unwrap();
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut kv: Vec<Line> = Vec::new();
        for l in lines(text) {
            kv.push(l?);
        }
        let one = |key: &str| -> Result<&Line> {
            let mut it = kv.iter().filter(|l| l.key == key);
            let l = it.next().ok_or_else(|| Error::parse(1, 1, format!("missing `{key}:`")))?;
            if let Some(dup) = it.next() {
                return Err(Error::parse(dup.no, 1, format!("second `{key}:` line")));
            }
            Ok(l)
        };
        let int = |l: &Line| -> Result<BigInt> {
            l.value
                .parse()
                .map_err(|_| Error::parse(l.no, l.value_col, format!("bad integer `{}`", l.value)))
        };
        let at = |l: &Line, e: Error| Error::parse(l.no, l.value_col, e.to_string());

        let variant_line = one("variant")?;
        let variant = variant_line.value.parse().map_err(|e| at(variant_line, e))?;
        let rule = one("rule")?.value.to_string();
        let vl = one("vector")?;
        let values = vl
            .value
            .split_whitespace()
            .map(|v| v.parse::<BigInt>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::parse(vl.no, vl.value_col, "bad vector"))?;
        let vector = ScoringVector::new(values).map_err(|e| at(vl, e))?;
        let ql = one("q")?;
        let q = parse_usize(ql.value, ql.no, ql.value_col)?;
        let triples = kv
            .iter()
            .filter(|l| l.key == "triple")
            .map(|l| parse_triple(l.value, q, l.no, l.value_col))
            .collect::<Result<Vec<_>>>()?;
        let instance = ThreeDm::new(q, triples).map_err(|e| at(ql, e))?;
        let cl = one("candidates")?;
        let candidates: Vec<String> = cl.value.split(',').map(|s| s.trim().to_string()).collect();
        let cs = CandidateSet::new(candidates.clone()).map_err(|e| at(cl, e))?;
        let name_line = |key: &str| -> Result<String> {
            let l = one(key)?;
            lookup(&cs, l.value, l.no, l.value_col)?;
            Ok(l.value.to_string())
        };
        let c = name_line("c")?;
        let sink = name_line("sink")?;
        let special = match kv.iter().any(|l| l.key == "special") {
            true => Some(name_line("special")?),
            false => None,
        };
        let pl = one("pattern")?;
        let pattern = pl.value.parse().map_err(|e| at(pl, e))?;
        let lambda = int(one("lambda")?)?;
        let vv = one("variable-votes")?;
        let variable_votes = parse_usize(vv.value, vv.no, vv.value_col)?;
        let rv = one("rigid-votes")?;
        let rigid_votes = parse_usize(rv.value, rv.no, rv.value_col)?;

        let m = cs.len();
        let mut targets = vec![None; m];
        let mut rigid_scores = vec![None; m];
        let mut mu: Vec<Option<BigInt>> = vec![None; m];
        let mut any_mu = false;
        for l in &kv {
            let (sep, slot) = match l.key {
                "target" => (if l.value.contains('<') { '<' } else { '=' }, 0),
                "rigid-score" => ('=', 1),
                "mu" => ('=', 2),
                _ => continue,
            };
            let (name, val) = l
                .value
                .split_once(sep)
                .ok_or_else(|| Error::parse(l.no, l.value_col, "expected `name = value`"))?;
            let i = lookup(&cs, name.trim(), l.no, l.value_col)?;
            let v: BigInt = val
                .trim()
                .parse()
                .map_err(|_| Error::parse(l.no, l.value_col, format!("bad integer `{}`", val.trim())))?;
            match slot {
                0 => {
                    targets[i] = Some(if sep == '<' { Target::Below(v) } else { Target::Exact(v) });
                }
                1 => rigid_scores[i] = Some(v),
                _ => {
                    any_mu = true;
                    mu[i] = Some(v);
                }
            }
        }
        fn complete<T>(cs: &CandidateSet, name: &str, xs: Vec<Option<T>>) -> Result<Vec<T>> {
            xs.into_iter()
                .enumerate()
                .map(|(i, x)| x.ok_or_else(|| Error::parse(1, 1, format!("no {name} for `{}`", cs.name(i)))))
                .collect()
        }
        let targets = complete(&cs, "target", targets)?;
        let rigid_scores = complete(&cs, "rigid-score", rigid_scores)?;
        let ml = one("vote-triple")?;
        let vote_to_triple = ml
            .value
            .split_whitespace()
            .map(|s| {
                let i = parse_usize(s, ml.no, ml.value_col)?;
                if i == 0 || i > instance.t() {
                    return Err(Error::parse(ml.no, ml.value_col, format!("no triple {i}")));
                }
                Ok(i - 1)
            })
            .collect::<Result<Vec<_>>>()?;
        if vote_to_triple.len() != variable_votes {
            return Err(Error::parse(ml.no, ml.value_col, "vote-triple length differs from variable-votes"));
        }
        if vector.len() != m {
            return Err(Error::parse(vl.no, vl.value_col, "vector length differs from the candidate count"));
        }
        Ok(Sidecar {
            variant,
            rule,
            vector,
            instance,
            candidates,
            c,
            sink,
            special,
            pattern,
            lambda,
            variable_votes,
            rigid_votes,
            targets,
            rigid_scores,
            mu: any_mu.then_some(mu),
            vote_to_triple,
        })
    }
}

/// Outcome of checking a witness against a sidecar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub c_wins: bool,
    /// `Err` holds the first failed audit line.
    pub audit: std::result::Result<(), String>,
    /// Only checked when the partial profile is at hand and `μ` is known.
    pub tight: Option<bool>,
    pub matching: std::result::Result<Matching, String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.c_wins && self.audit.is_ok() && self.tight != Some(false) && self.matching.is_ok()
    }
}

/// Checks a completion file against a sidecar. `witness` holds either the
/// variable votes alone or all votes of the reduction; `partial`, when
/// given, is the profile `reduce` wrote and is used to check extension and
/// tightness.
pub fn verify_witness(side: &Sidecar, witness: &Profile, partial: Option<&Profile>) -> Result<VerifyReport> {
    let cs = witness.candidates();
    if cs.names() != side.candidates.as_slice() {
        return Err(Error::Witness("candidate list differs from the sidecar".into()));
    }
    let orders: Vec<TotalOrder> = witness
        .total_votes()
        .map_err(|e| Error::Witness(e.to_string()))?
        .into_iter()
        .cloned()
        .collect();
    let t = side.variable_votes;
    if orders.len() != t && orders.len() != t + side.rigid_votes {
        return Err(Error::Witness(format!(
            "{} votes, expected {t} or {}",
            orders.len(),
            t + side.rigid_votes
        )));
    }
    let m = cs.len();
    if orders.len() > t {
        let q = score_orders(m, &orders[t..], &side.vector);
        if q.scores() != side.rigid_scores.as_slice() {
            return Err(Error::Witness("rigid votes do not reproduce the recorded Q scores".into()));
        }
    }
    let completion = &orders[..t];
    let mut tight = None;
    if let Some(p) = partial {
        if p.candidates() != cs || p.len() < t {
            return Err(Error::Witness("partial profile does not match the witness".into()));
        }
        for (k, (v, o)) in p.votes()[..t].iter().zip(completion).enumerate() {
            if !v.accepts(o) {
                return Err(Error::Witness(format!("vote {} does not extend the partial vote", k + 1)));
            }
        }
        if let Some(mu) = &side.mu {
            let votes: Vec<PartialOrder> = p.votes()[..t].iter().map(Vote::to_partial).collect();
            tight = Some(check_tightness(&votes, &side.vector, cs.require(&side.c)?, mu)?);
        }
    }
    let part = score_orders(m, completion, &side.vector);
    let scores: Vec<BigInt> = part.scores().iter().zip(&side.rigid_scores).map(|(a, b)| a + b).collect();
    let c = cs.require(&side.c)?;
    let sink = cs.require(&side.sink)?;
    let c_wins = is_winner(&scores, c, Semantics::Cowinner);
    let audit = audit_scores(side, cs, &scores, c, sink);
    let matching = if c_wins {
        extract(side, cs, completion).map_err(|e| e.to_string())
    } else {
        Err("c does not win, nothing to extract".to_string())
    };
    Ok(VerifyReport {
        c_wins,
        audit,
        tight,
        matching,
    })
}

fn audit_scores(side: &Sidecar, cs: &CandidateSet, scores: &[BigInt], c: usize, sink: usize) -> std::result::Result<(), String> {
    if scores[c] != side.lambda {
        return Err(format!("c scores {}, expected {}", scores[c], side.lambda));
    }
    if scores[sink] >= side.lambda {
        return Err(format!("sink scores {}", scores[sink]));
    }
    for (i, s) in scores.iter().enumerate() {
        if s > &side.lambda {
            return Err(format!("{} scores {} > {}", cs.name(i), s, side.lambda));
        }
        if let Some(mu) = &side.mu {
            if mu[i].is_some() && s != &side.lambda {
                return Err(format!("{} scores {}, tight instances need {}", cs.name(i), s, side.lambda));
            }
        }
    }
    Ok(())
}

fn extract(side: &Sidecar, cs: &CandidateSet, completion: &[TotalOrder]) -> Result<Matching> {
    let special = side.special.as_deref().map(|s| cs.require(s)).transpose()?;
    let mut picked = Vec::new();
    for (k, o) in completion.iter().enumerate() {
        let i = side.vote_to_triple[k];
        let t = side.instance.triple(i);
        let roles = [
            cs.require(&format!("x{}", t[0]))?,
            cs.require(&format!("y{}", t[1]))?,
            cs.require(&format!("z{}", t[2]))?,
        ];
        if side.pattern.activated(o, roles, special) {
            picked.push(i);
        }
    }
    Matching::new(&side.instance, picked)
}
