use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{check_alphabet, check_state, Dfa};
use crate::error::{Error, Result};

/// Default cap on the number of subset-states a determinization may create (2^24).
pub const DEFAULT_SUBSET_CAP: usize = 1 << 24;

/// A nondeterministic automaton with a set of initial states and no ε-moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Vec<String>,
    // delta[state * k + symbol]: sorted 0-based targets
    delta: Vec<Vec<u32>>,
    initials: Vec<bool>,
    finals: Vec<bool>,
}

type Subset = Vec<u64>;

impl Nfa {
    /// Builds an NFA from 1-indexed `(from, symbol index, to)` triples.
    pub fn new(
        n: usize,
        alphabet: Vec<String>,
        transitions: &[(usize, usize, usize)],
        initials: &BTreeSet<usize>,
        finals: &BTreeSet<usize>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize { n });
        }
        check_alphabet(&alphabet)?;
        let k = alphabet.len();
        let mut delta = vec![Vec::new(); n * k];
        for &(p, a, q) in transitions {
            check_state(n, p)?;
            check_state(n, q)?;
            if a >= k {
                return Err(Error::InvalidArgument(format!("symbol index {a} is out of range")));
            }
            delta[(p - 1) * k + a].push((q - 1) as u32);
        }
        let flags = |states: &BTreeSet<usize>| -> Result<Vec<bool>> {
            let mut out = vec![false; n];
            for &s in states {
                check_state(n, s)?;
                out[s - 1] = true;
            }
            Ok(out)
        };
        Ok(Self::from_parts(alphabet, delta, flags(initials)?, flags(finals)?))
    }

    pub(super) fn from_parts(
        alphabet: Vec<String>,
        mut delta: Vec<Vec<u32>>,
        initials: Vec<bool>,
        finals: Vec<bool>,
    ) -> Self {
        for targets in &mut delta {
            targets.sort_unstable();
            targets.dedup();
        }
        Self { alphabet, delta, initials, finals }
    }

    pub fn n(&self) -> usize {
        self.finals.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    fn k(&self) -> usize {
        self.alphabet.len()
    }

    pub fn initials(&self) -> BTreeSet<usize> {
        flagged(&self.initials)
    }

    pub fn finals(&self) -> BTreeSet<usize> {
        flagged(&self.finals)
    }

    /// 1-indexed successors of a state on a symbol index.
    pub fn successors(&self, state: usize, symbol: usize) -> Vec<usize> {
        self.delta[(state - 1) * self.k() + symbol].iter().map(|&q| q as usize + 1).collect()
    }

    /// Number of transitions carrying each symbol.
    pub fn edge_counts(&self) -> Vec<usize> {
        (0..self.k()).map(|a| (0..self.n()).map(|p| self.delta[p * self.k() + a].len()).sum()).collect()
    }

    /// A single initial state and at most one successor per (state, symbol).
    pub fn is_deterministic(&self) -> bool {
        self.initials.iter().filter(|&&i| i).count() == 1 && self.delta.iter().all(|t| t.len() <= 1)
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut current = self.initials.clone();
        for &a in word {
            let mut next = vec![false; self.n()];
            for (p, _) in current.iter().enumerate().filter(|(_, &on)| on) {
                for &q in &self.delta[p * self.k() + a] {
                    next[q as usize] = true;
                }
            }
            current = next;
        }
        current.iter().zip(&self.finals).any(|(&c, &f)| c && f)
    }

    pub fn determinize(&self) -> Result<Dfa> {
        self.determinize_with_cap(DEFAULT_SUBSET_CAP)
    }

    pub fn determinize_with_cap(&self, cap: usize) -> Result<Dfa> {
        self.determinize_with_subsets(cap).map(|(dfa, _)| dfa)
    }

    /// Subset construction keeping only reachable subsets, numbered in
    /// breadth-first discovery order; state `i` of the result corresponds to
    /// the `i`-th returned subset. A reachable empty subset becomes a
    /// non-final dead state.
    pub fn determinize_with_subsets(&self, cap: usize) -> Result<(Dfa, Vec<BTreeSet<usize>>)> {
        let n = self.n();
        let k = self.k();
        let words = n.div_ceil(64);
        let mut start: Subset = vec![0; words];
        for (p, _) in self.initials.iter().enumerate().filter(|(_, &on)| on) {
            start[p / 64] |= 1 << (p % 64);
        }

        let mut index: HashMap<Subset, u32> = HashMap::new();
        let mut subsets: Vec<Subset> = Vec::new();
        let mut transitions: Vec<Vec<usize>> = Vec::new();
        index.insert(start.clone(), 0);
        subsets.push(start);
        let mut queue = VecDeque::from([0u32]);
        while let Some(id) = queue.pop_front() {
            let current = subsets[id as usize].clone();
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let mut target: Subset = vec![0; words];
                for p in members(&current) {
                    for &q in &self.delta[p * k + a] {
                        target[q as usize / 64] |= 1 << (q % 64);
                    }
                }
                let next_id = match index.get(&target) {
                    Some(&existing) => existing,
                    None => {
                        if subsets.len() >= cap {
                            return Err(Error::ResourceLimit { what: "subset-construction states", limit: cap });
                        }
                        let fresh = subsets.len() as u32;
                        index.insert(target.clone(), fresh);
                        subsets.push(target);
                        queue.push_back(fresh);
                        fresh
                    }
                };
                row.push(next_id as usize + 1);
            }
            transitions.push(row);
        }

        let finals: BTreeSet<usize> = subsets
            .iter()
            .enumerate()
            .filter(|(_, s)| members(s).any(|p| self.finals[p]))
            .map(|(i, _)| i + 1)
            .collect();
        let dfa = Dfa::new(self.alphabet.clone(), transitions, 1, &finals)?;
        let named = subsets.iter().map(|s| members(s).map(|p| p + 1).collect()).collect();
        Ok((dfa, named))
    }
}

fn members(subset: &Subset) -> impl Iterator<Item = usize> + '_ {
    subset
        .iter()
        .enumerate()
        .flat_map(|(w, &bits)| (0..64).filter(move |b| bits & (1u64 << b) != 0).map(move |b| w * 64 + b))
}

fn flagged(flags: &[bool]) -> BTreeSet<usize> {
    flags.iter().enumerate().filter(|(_, &f)| f).map(|(p, _)| p + 1).collect()
}
