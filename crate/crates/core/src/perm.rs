//! Permutations of `{0..m-1}` with one-line and cycle views.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    one_line: Vec<usize>,
}

impl Permutation {
    /// Build a permutation from its one-line notation, checking bijectivity.
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let m = one_line.len();
        let mut seen = vec![false; m];
        for &v in &one_line {
            if v >= m {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} out of range 0..{m}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Self { one_line })
    }

    pub fn identity(m: usize) -> Self {
        Self {
            one_line: (0..m).collect(),
        }
    }

    /// Build the permutation whose only nontrivial cycle is `cycle`,
    /// mapping each element to its successor.
    pub fn from_cycle(cycle: &[usize], m: usize) -> Result<Self> {
        let mut one_line: Vec<usize> = (0..m).collect();
        for (t, &v) in cycle.iter().enumerate() {
            if v >= m {
                return Err(Error::InvalidPermutation(format!(
                    "cycle element {v} out of range 0..{m}"
                )));
            }
            one_line[v] = cycle[(t + 1) % cycle.len()];
        }
        Self::new(one_line)
    }

    pub fn len(&self) -> usize {
        self.one_line.len()
    }

    pub fn is_empty(&self) -> bool {
        self.one_line.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.one_line[i]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.one_line.len()];
        for (i, &v) in self.one_line.iter().enumerate() {
            inv[v] = i;
        }
        Self { one_line: inv }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::InvalidPermutation(
                "composing permutations of different sizes".into(),
            ));
        }
        Ok(Self {
            one_line: other.one_line.iter().map(|&v| self.one_line[v]).collect(),
        })
    }

    /// Cycle decomposition. Each cycle starts at its smallest element and
    /// cycles are listed in increasing order of that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let m = self.one_line.len();
        let mut visited = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !visited[cur] {
                visited[cur] = true;
                cycle.push(cur);
                cur = self.one_line[cur];
            }
            out.push(cycle);
        }
        out
    }

    pub fn is_single_cycle(&self) -> bool {
        let m = self.one_line.len();
        if m == 0 {
            return false;
        }
        let mut cur = 0;
        for _ in 0..m - 1 {
            cur = self.one_line[cur];
            if cur == 0 {
                return false;
            }
        }
        self.one_line[cur] == 0
    }
}
