//! Scoring vectors, scoring rules and the built-in catalog.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Horizon up to which declared rule properties are checked.
pub const DEFAULT_HORIZON: usize = 50;

/// A non-increasing list of non-negative scores with `s_1 > s_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScoringVector {
    values: Vec<BigInt>,
}

impl ScoringVector {
    pub fn new(values: Vec<BigInt>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidVector("need at least two positions".into()));
        }
        if values.iter().any(Signed::is_negative) {
            return Err(Error::InvalidVector("negative score".into()));
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidVector("scores increase".into()));
        }
        if values[0] == values[values.len() - 1] {
            return Err(Error::InvalidVector("constant vector".into()));
        }
        Ok(ScoringVector { values })
    }

    pub fn from_u64(values: &[u64]) -> Result<Self> {
        ScoringVector::new(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Score at 0-based position `pos`.
    pub fn get(&self, pos: usize) -> &BigInt {
        &self.values[pos]
    }

    /// Gap `s_j - s_{j+1}` at 0-based position `j`; the last position gaps to 0.
    pub fn delta(&self, j: usize) -> BigInt {
        match self.values.get(j + 1) {
            Some(next) => &self.values[j] - next,
            None => self.values[j].clone(),
        }
    }

    pub fn sum(&self) -> BigInt {
        self.values.iter().sum()
    }

    pub fn is_normalised(&self) -> bool {
        self.values[self.len() - 1].is_zero() && self.gcd().is_one()
    }

    fn gcd(&self) -> BigInt {
        self.values
            .iter()
            .fold(BigInt::zero(), |g, v| g.gcd(v))
    }

    pub fn normalised(&self) -> ScoringVector {
        let last = self.values[self.len() - 1].clone();
        let shifted: Vec<BigInt> = self.values.iter().map(|v| v - &last).collect();
        let g = shifted.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
        ScoringVector {
            values: shifted.into_iter().map(|v| v / &g).collect(),
        }
    }

    /// Runs of equal values: `(a_j, ℓ_j)` from the top.
    pub fn blocks(&self) -> Vec<(BigInt, usize)> {
        let mut out: Vec<(BigInt, usize)> = Vec::new();
        for v in &self.values {
            match out.last_mut() {
                Some((a, l)) if a == v => *l += 1,
                _ => out.push((v.clone(), 1)),
            }
        }
        out
    }

    pub fn distinct(&self) -> usize {
        self.blocks().len()
    }

    pub fn is_pure_successor(&self, next: &ScoringVector) -> bool {
        is_insertion(&self.values, &next.values)
    }
}

/// `(v - s_m) / gcd`; rejects constant or increasing input.
pub fn normalise(values: &[BigInt]) -> Result<ScoringVector> {
    Ok(ScoringVector::new(values.to_vec())?.normalised())
}

fn is_insertion(short: &[BigInt], long: &[BigInt]) -> bool {
    if long.len() != short.len() + 1 || long.windows(2).any(|w| w[0] < w[1]) {
        return false;
    }
    let mut skipped = false;
    let mut i = 0;
    for v in long {
        if i < short.len() && &short[i] == v {
            i += 1;
        } else if !skipped {
            skipped = true;
        } else {
            return false;
        }
    }
    i == short.len()
}

/// Declared value structure of a rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleClass {
    TwoValued,
    PValued(usize),
    Unbounded,
}

impl RuleClass {
    pub fn from_distinct(p: usize) -> RuleClass {
        if p == 2 {
            RuleClass::TwoValued
        } else {
            RuleClass::PValued(p)
        }
    }
}

impl fmt::Display for RuleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleClass::TwoValued => write!(f, "two_valued"),
            RuleClass::PValued(p) => write!(f, "p_valued({p})"),
            RuleClass::Unbounded => write!(f, "unbounded"),
        }
    }
}

type VectorFn = Arc<dyn Fn(usize) -> Vec<BigInt> + Send + Sync>;
type LayoutFn = Arc<dyn Fn(usize) -> Vec<(BigInt, usize)> + Send + Sync>;
type GrowthFn = Arc<dyn Fn(usize) -> usize + Send + Sync>;

/// A family of scoring vectors indexed by the number of candidates.
#[derive(Clone)]
pub struct ScoringRule {
    name: String,
    min_m: usize,
    declared: RuleClass,
    vector_fn: VectorFn,
    layout_fn: Option<LayoutFn>,
    growth: Option<GrowthFn>,
}

impl fmt::Debug for ScoringRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScoringRule")
            .field("name", &self.name)
            .field("min_m", &self.min_m)
            .field("declared", &self.declared)
            .finish()
    }
}

/// Outcome of checking a rule's declared properties up to a horizon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleCheck {
    pub horizon: usize,
    pub declared: RuleClass,
    pub checked: RuleClass,
    pub pure: bool,
    pub layout_consistent: bool,
    pub valid_vectors: bool,
    pub failure: Option<String>,
}

impl RuleCheck {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

impl ScoringRule {
    /// Builds a rule and checks its declaration up to [`DEFAULT_HORIZON`].
    ///
    /// `vector_fn(m)` is called for `min_m <= m`; its output is normalised by
    /// [`ScoringRule::vector`].
    pub fn new<F>(name: impl Into<String>, min_m: usize, declared: RuleClass, vector_fn: F) -> Result<Self>
    where
        F: Fn(usize) -> Vec<BigInt> + Send + Sync + 'static,
    {
        let rule = ScoringRule {
            name: name.into(),
            min_m: min_m.max(2),
            declared,
            vector_fn: Arc::new(vector_fn),
            layout_fn: None,
            growth: None,
        };
        rule.validated()
    }

    pub fn with_layout<F>(mut self, layout: F) -> Result<Self>
    where
        F: Fn(usize) -> Vec<(BigInt, usize)> + Send + Sync + 'static,
    {
        self.layout_fn = Some(Arc::new(layout));
        self.validated()
    }

    pub fn with_growth<F>(mut self, g: F) -> Self
    where
        F: Fn(usize) -> usize + Send + Sync + 'static,
    {
        self.growth = Some(Arc::new(g));
        self
    }

    fn validated(self) -> Result<Self> {
        let check = self.check(DEFAULT_HORIZON);
        match check.failure {
            None => Ok(self),
            Some(msg) => Err(Error::Rule {
                rule: self.name.clone(),
                msg,
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn min_m(&self) -> usize {
        self.min_m
    }

    pub fn declared_class(&self) -> RuleClass {
        self.declared
    }

    pub fn has_layout_fn(&self) -> bool {
        self.layout_fn.is_some()
    }

    pub fn growth(&self, u: usize) -> Option<usize> {
        self.growth.as_ref().map(|g| g(u))
    }

    fn range_check(&self, m: usize) -> Result<()> {
        if m < self.min_m {
            return Err(Error::Rule {
                rule: self.name.clone(),
                msg: format!("defined only for m >= {}, got {m}", self.min_m),
            });
        }
        Ok(())
    }

    pub fn raw_vector(&self, m: usize) -> Result<Vec<BigInt>> {
        self.range_check(m)?;
        let v = (self.vector_fn)(m);
        if v.len() != m {
            return Err(Error::Rule {
                rule: self.name.clone(),
                msg: format!("vector for m={m} has length {}", v.len()),
            });
        }
        Ok(v)
    }

    /// Normalised vector for `m` candidates.
    pub fn vector(&self, m: usize) -> Result<ScoringVector> {
        let raw = self.raw_vector(m)?;
        normalise(&raw).map_err(|e| Error::Rule {
            rule: self.name.clone(),
            msg: format!("m={m}: {e}"),
        })
    }

    /// Block layout `(a_j, ℓ(m, j))` of the normalised vector.
    pub fn layout(&self, m: usize) -> Result<Vec<(BigInt, usize)>> {
        match &self.layout_fn {
            Some(f) => {
                self.range_check(m)?;
                Ok(f(m))
            }
            None => Ok(self.vector(m)?.blocks()),
        }
    }

    /// Checks purity, layout consistency and the declared class for
    /// `min_m <= m <= horizon`.
    pub fn check(&self, horizon: usize) -> RuleCheck {
        let mut failure = None;
        let mut pure = true;
        let mut layout_consistent = true;
        let mut valid_vectors = true;
        let mut distinct = Vec::new();
        let mut prev: Option<Vec<BigInt>> = None;
        let top = horizon.max(self.min_m + 1);
        for m in self.min_m..=top {
            let raw = match self.raw_vector(m) {
                Ok(r) => r,
                Err(e) => {
                    valid_vectors = false;
                    failure.get_or_insert(e.to_string());
                    break;
                }
            };
            let v = match ScoringVector::new(raw.clone()) {
                Ok(v) => v,
                Err(e) => {
                    valid_vectors = false;
                    failure.get_or_insert(format!("m={m}: {e}"));
                    break;
                }
            };
            if let Some(p) = &prev {
                if !is_insertion(p, &raw) {
                    pure = false;
                    failure.get_or_insert(format!("m={m}: not a single insertion into m={}", m - 1));
                }
            }
            let norm = v.normalised();
            if let Some(f) = &self.layout_fn {
                let expanded: Vec<BigInt> = f(m)
                    .into_iter()
                    .flat_map(|(a, l)| std::iter::repeat_n(a, l))
                    .collect();
                if expanded != norm.values {
                    layout_consistent = false;
                    failure.get_or_insert(format!("m={m}: block layout does not expand to the vector"));
                }
            }
            distinct.push(norm.distinct());
            prev = Some(raw);
        }
        let checked = checked_class(&distinct);
        if failure.is_none() && checked != self.declared {
            failure = Some(format!(
                "declared {} but vectors up to m={top} look {}",
                self.declared, checked
            ));
        }
        RuleCheck {
            horizon: top,
            declared: self.declared,
            checked,
            pure,
            layout_consistent,
            valid_vectors,
            failure,
        }
    }
}

/// A rule is taken as p-valued when the distinct-value count is constant over
/// the upper half of the checked range, unbounded otherwise.
fn checked_class(distinct: &[usize]) -> RuleClass {
    if distinct.is_empty() {
        return RuleClass::Unbounded;
    }
    let tail = &distinct[distinct.len() / 2..];
    let p = tail[tail.len() - 1];
    if tail.iter().all(|&d| d == p) {
        RuleClass::from_distinct(p)
    } else {
        RuleClass::Unbounded
    }
}

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn runs(parts: &[(u64, usize)]) -> Vec<BigInt> {
    parts
        .iter()
        .flat_map(|&(a, l)| std::iter::repeat_n(big(a), l))
        .collect()
}

fn layout(parts: &[(u64, usize)]) -> Vec<(BigInt, usize)> {
    parts
        .iter()
        .filter(|&&(_, l)| l > 0)
        .map(|&(a, l)| (big(a), l))
        .collect()
}

/// `t`-approval: `t` ones then zeros.
pub fn approval(t: usize) -> ScoringRule {
    assert!(t >= 1, "t-approval needs t >= 1");
    let name = match t {
        1 => "plurality".to_string(),
        _ => format!("{t}-approval"),
    };
    ScoringRule::new(name, t + 1, RuleClass::TwoValued, move |m| runs(&[(1, t), (0, m - t)]))
        .and_then(|r| r.with_layout(move |m| layout(&[(1, t), (0, m - t)])))
        .expect("approval rule is well formed")
}

pub fn plurality() -> ScoringRule {
    approval(1)
}

pub fn veto() -> ScoringRule {
    ScoringRule::new("veto", 2, RuleClass::TwoValued, |m| runs(&[(1, m - 1), (0, 1)]))
        .and_then(|r| r.with_layout(|m| layout(&[(1, m - 1), (0, 1)])))
        .expect("veto is well formed")
}

pub fn borda() -> ScoringRule {
    ScoringRule::new("borda", 2, RuleClass::Unbounded, |m| {
        (0..m as u64).rev().map(big).collect()
    })
    .and_then(|r| r.with_layout(|m| (0..m as u64).rev().map(|v| (big(v), 1)).collect()))
    .expect("borda is well formed")
    .with_growth(|u| 3 * u + 4)
}

/// The 3-valued rule with `f` leading 2s, `l` trailing 0s and 1s between.
pub fn r_fl(f: usize, l: usize) -> ScoringRule {
    assert!(f >= 1 && l >= 1, "R(f,l) needs f, l >= 1");
    ScoringRule::new(format!("R({f},{l})"), f + l + 1, RuleClass::PValued(3), move |m| {
        runs(&[(2, f), (1, m - f - l), (0, l)])
    })
    .and_then(|r| r.with_layout(move |m| layout(&[(2, f), (1, m - f - l), (0, l)])))
    .expect("R(f,l) is well formed")
}

/// Alternating 2-valued rule: the top half (rounded up) scores 1.
pub fn half_approval() -> ScoringRule {
    ScoringRule::new("half-approval", 2, RuleClass::TwoValued, |m| {
        runs(&[(1, m.div_ceil(2)), (0, m / 2)])
    })
    .and_then(|r| r.with_layout(|m| layout(&[(1, m.div_ceil(2)), (0, m / 2)])))
    .expect("half-approval is well formed")
}

/// Powers of two: `(2^{m-1} - 1, ..., 3, 1, 0)`.
pub fn lexicographic() -> ScoringRule {
    fn vals(m: usize) -> Vec<BigInt> {
        (0..m)
            .rev()
            .map(|k| (BigInt::one() << k) - BigInt::one())
            .collect()
    }
    ScoringRule::new("lexicographic", 2, RuleClass::Unbounded, vals)
        .and_then(|r| r.with_layout(|m| vals(m).into_iter().map(|v| (v, 1)).collect()))
        .expect("lexicographic is well formed")
        .with_growth(|u| 3 * u + 4)
}

/// The built-in catalog with its default parameter instances.
pub fn builtin_rules() -> Vec<ScoringRule> {
    vec![
        plurality(),
        veto(),
        approval(2),
        borda(),
        r_fl(1, 1),
        r_fl(2, 1),
        half_approval(),
        lexicographic(),
    ]
}

/// Parses `plurality`, `veto`, `borda`, `lexicographic`, `half-approval`,
/// `<t>-approval`, `approval(t)` and `R(f,l)` (case-insensitive).
pub fn parse_rule(spec: &str) -> Result<ScoringRule> {
    let s = spec.trim().to_ascii_lowercase().replace(' ', "");
    let bad = || Error::Rule {
        rule: spec.trim().to_string(),
        msg: "unknown rule".into(),
    };
    let args = |inner: &str| -> Result<Vec<usize>> {
        inner
            .split(',')
            .map(|a| a.parse::<usize>().map_err(|_| bad()))
            .collect()
    };
    match s.as_str() {
        "plurality" => return Ok(plurality()),
        "veto" => return Ok(veto()),
        "borda" => return Ok(borda()),
        "lexicographic" => return Ok(lexicographic()),
        "half-approval" => return Ok(half_approval()),
        _ => {}
    }
    if let Some(t) = s.strip_suffix("-approval") {
        let t: usize = t.parse().map_err(|_| bad())?;
        return if t >= 1 { Ok(approval(t)) } else { Err(bad()) };
    }
    if let Some(inner) = s.strip_prefix("approval(").and_then(|r| r.strip_suffix(')')) {
        return match args(inner)?.as_slice() {
            [t] if *t >= 1 => Ok(approval(*t)),
            _ => Err(bad()),
        };
    }
    if let Some(inner) = s.strip_prefix("r(").and_then(|r| r.strip_suffix(')')) {
        return match args(inner)?.as_slice() {
            [f, l] if *f >= 1 && *l >= 1 => Ok(r_fl(*f, *l)),
            _ => Err(bad()),
        };
    }
    Err(bad())
}
