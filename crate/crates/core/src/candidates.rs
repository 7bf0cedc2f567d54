use std::collections::HashMap;

use crate::error::{Error, Result};

/// An ordered list of distinct candidate names.
///
/// Identity is by name; the index of a name is its position in the list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl CandidateSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::UnknownCandidate(String::new()));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateCandidate(n.clone()));
            }
        }
        Ok(CandidateSet { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownCandidate(name.to_string()))
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::CandidateOutOfRange {
                index: i,
                m: self.len(),
            })
        }
    }

    /// Indices sorted by candidate name (byte order).
    pub fn by_name(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| self.names[a].cmp(&self.names[b]));
        idx
    }

    /// `rank[i]` is the place of candidate `i` in name order.
    pub fn name_rank(&self) -> Vec<usize> {
        let mut rank = vec![0; self.len()];
        for (r, i) in self.by_name().into_iter().enumerate() {
            rank[i] = r;
        }
        rank
    }
}
