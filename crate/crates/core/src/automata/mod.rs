//! Complete DFAs and NFAs over the state set `{1, ..., n}`.

mod analysis;
mod format;
mod nfa;

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::partition::{DisjointSets, Partition};
use crate::semigroup::{close_with_cap, TransformationSemigroup, DEFAULT_CLOSURE_CAP};
use crate::transform::Transformation;

pub use analysis::{analyze, AnalysisOptions, AnalysisReport, SimonOutcome, SimonWitness, DEFAULT_SIMON_CAP};
pub use format::{emit_dfa, emit_nfa, parse_dfa, parse_nfa};
pub use nfa::{Nfa, DEFAULT_SUBSET_CAP};

type Pair = (u32, u32);

/// A complete deterministic automaton.
///
/// States are 1-indexed in the public API. Symbols are referred to by their
/// position in [`Dfa::alphabet`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<String>,
    // row-major, 0-based: delta[state * k + symbol]
    delta: Vec<u32>,
    initial: u32,
    finals: Vec<bool>,
}

impl Dfa {
    /// `transitions[p - 1][a]` is the 1-indexed target of state `p` on symbol `a`.
    pub fn new(
        alphabet: Vec<String>,
        transitions: Vec<Vec<usize>>,
        initial: usize,
        finals: &BTreeSet<usize>,
    ) -> Result<Self> {
        let n = transitions.len();
        if n == 0 {
            return Err(Error::InvalidSize { n });
        }
        check_alphabet(&alphabet)?;
        let k = alphabet.len();
        let mut delta = Vec::with_capacity(n * k);
        for (p, row) in transitions.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidArgument(format!(
                    "state {} has {} transitions, expected {k}",
                    p + 1,
                    row.len()
                )));
            }
            for &q in row {
                check_state(n, q)?;
                delta.push((q - 1) as u32);
            }
        }
        check_state(n, initial)?;
        let mut final_flags = vec![false; n];
        for &f in finals {
            check_state(n, f)?;
            final_flags[f - 1] = true;
        }
        Ok(Self { alphabet, delta, initial: (initial - 1) as u32, finals: final_flags })
    }

    /// One symbol per named transformation; `delta(k, a) = k t_a`.
    pub fn from_transformations(
        letters: &[(String, Transformation)],
        initial: usize,
        finals: &BTreeSet<usize>,
    ) -> Result<Self> {
        let n = letters
            .first()
            .map(|(_, t)| t.n())
            .ok_or_else(|| Error::InvalidArgument("at least one letter is required".into()))?;
        if let Some((_, bad)) = letters.iter().find(|(_, t)| t.n() != n) {
            return Err(Error::DimensionMismatch { left: n, right: bad.n() });
        }
        let alphabet = letters.iter().map(|(name, _)| name.clone()).collect();
        let transitions = (1..=n).map(|p| letters.iter().map(|(_, t)| t.image(p)).collect()).collect();
        Dfa::new(alphabet, transitions, initial, finals)
    }

    pub fn n(&self) -> usize {
        self.finals.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|s| s == name)
    }

    pub fn initial(&self) -> usize {
        self.initial as usize + 1
    }

    pub fn finals(&self) -> BTreeSet<usize> {
        (1..=self.n()).filter(|&p| self.finals[p - 1]).collect()
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.finals[state - 1]
    }

    /// Target of a 1-indexed state on a symbol index.
    pub fn next(&self, state: usize, symbol: usize) -> usize {
        self.step(state as u32 - 1, symbol) as usize + 1
    }

    fn k(&self) -> usize {
        self.alphabet.len()
    }

    fn step(&self, p: u32, symbol: usize) -> u32 {
        self.delta[p as usize * self.k() + symbol]
    }

    /// State reached from `from` by a word of symbol indices.
    pub fn run_from(&self, from: usize, word: &[usize]) -> usize {
        word.iter().fold(from as u32 - 1, |p, &a| self.step(p, a)) as usize + 1
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.is_final(self.run_from(self.initial(), word))
    }

    /// `accepts` for a word given by symbol names.
    pub fn accepts_symbols(&self, word: &[&str]) -> Result<bool> {
        let word = word
            .iter()
            .map(|s| self.symbol_index(s).ok_or_else(|| Error::InvalidArgument(format!("unknown symbol `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.accepts(&word))
    }

    /// The transformation `t_a` performed by each letter, in alphabet order.
    pub fn letter_transformations(&self) -> Vec<Transformation> {
        (0..self.k())
            .map(|a| Transformation::from_zero_based((0..self.n() as u32).map(|p| self.step(p, a)).collect()))
            .collect()
    }

    /// Renumbers states: `order[i]` (0-based old state) becomes new state `i`.
    fn renumbered(&self, order: &[u32]) -> Dfa {
        let mut new_of = vec![u32::MAX; self.n()];
        for (i, &old) in order.iter().enumerate() {
            new_of[old as usize] = i as u32;
        }
        let k = self.k();
        let mut delta = Vec::with_capacity(order.len() * k);
        for &old in order {
            for a in 0..k {
                delta.push(new_of[self.step(old, a) as usize]);
            }
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            delta,
            initial: new_of[self.initial as usize],
            finals: order.iter().map(|&old| self.finals[old as usize]).collect(),
        }
    }

    fn reachable_flags(&self) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        let mut stack = vec![self.initial];
        seen[self.initial as usize] = true;
        while let Some(p) = stack.pop() {
            for a in 0..self.k() {
                let q = self.step(p, a);
                if !std::mem::replace(&mut seen[q as usize], true) {
                    stack.push(q);
                }
            }
        }
        seen
    }

    /// Drops states unreachable from the initial state, keeping relative order.
    pub fn trim_reachable(&self) -> Dfa {
        let seen = self.reachable_flags();
        let order: Vec<u32> = (0..self.n() as u32).filter(|&p| seen[p as usize]).collect();
        self.renumbered(&order)
    }

    pub fn reachable_state_count(&self) -> usize {
        self.reachable_flags().into_iter().filter(|&r| r).count()
    }

    /// Breadth-first numbering from the initial state over alphabet order.
    /// Assumes every state is reachable.
    fn canonical_bfs(&self) -> Dfa {
        let mut seen = vec![false; self.n()];
        let mut order = Vec::with_capacity(self.n());
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial as usize] = true;
        while let Some(p) = queue.pop_front() {
            order.push(p);
            for a in 0..self.k() {
                let q = self.step(p, a);
                if !std::mem::replace(&mut seen[q as usize], true) {
                    queue.push_back(q);
                }
            }
        }
        self.renumbered(&order)
    }

    /// The minimal DFA of the same language: trim, Moore refinement, then
    /// breadth-first canonical numbering.
    pub fn minimize(&self) -> Dfa {
        let trimmed = self.trim_reachable();
        let n = trimmed.n();
        let k = trimmed.k();
        let mut class: Vec<u32> = trimmed.finals.iter().map(|&f| f as u32).collect();
        let mut count = class.iter().collect::<BTreeSet<_>>().len();
        loop {
            let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
            let next: Vec<u32> = (0..n as u32)
                .map(|p| {
                    let mut sig = Vec::with_capacity(k + 1);
                    sig.push(class[p as usize]);
                    sig.extend((0..k).map(|a| class[trimmed.step(p, a) as usize]));
                    let fresh = ids.len() as u32;
                    *ids.entry(sig).or_insert(fresh)
                })
                .collect();
            let next_count = ids.len();
            class = next;
            if next_count == count {
                break;
            }
            count = next_count;
        }

        let mut representative = vec![u32::MAX; count];
        for (p, &c) in class.iter().enumerate() {
            if representative[c as usize] == u32::MAX {
                representative[c as usize] = p as u32;
            }
        }
        let mut delta = Vec::with_capacity(count * k);
        for &rep in &representative {
            for a in 0..k {
                delta.push(class[trimmed.step(rep, a) as usize]);
            }
        }
        let quotient = Dfa {
            alphabet: trimmed.alphabet.clone(),
            delta,
            initial: class[trimmed.initial as usize],
            finals: representative.iter().map(|&r| trimmed.finals[r as usize]).collect(),
        };
        quotient.canonical_bfs()
    }

    /// Number of states of the minimal DFA.
    pub fn quotient_complexity(&self) -> usize {
        self.minimize().n()
    }

    /// Semigroup of transformations performed by non-empty words.
    pub fn transition_semigroup(&self) -> Result<TransformationSemigroup> {
        self.transition_semigroup_with_cap(DEFAULT_CLOSURE_CAP)
    }

    pub fn transition_semigroup_with_cap(&self, cap: usize) -> Result<TransformationSemigroup> {
        close_with_cap(&self.letter_transformations(), cap)
    }

    /// Transition semigroup of the minimal DFA; its size is the syntactic complexity.
    pub fn syntactic_semigroup(&self) -> Result<TransformationSemigroup> {
        self.minimize().transition_semigroup()
    }

    /// States in a topological order of the reachability relation (ties
    /// broken by smallest state number), or `None` when some cycle other
    /// than a self-loop exists.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.n();
        let mut indegree = vec![0usize; n];
        let mut succ: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); n];
        for p in 0..n as u32 {
            for a in 0..self.k() {
                let q = self.step(p, a);
                if q != p && succ[p as usize].insert(q) {
                    indegree[q as usize] += 1;
                }
            }
        }
        let mut ready: BinaryHeap<Reverse<u32>> =
            (0..n as u32).filter(|&p| indegree[p as usize] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(p)) = ready.pop() {
            order.push(p as usize + 1);
            for &q in &succ[p as usize] {
                indegree[q as usize] -= 1;
                if indegree[q as usize] == 0 {
                    ready.push(Reverse(q));
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// No cycles except self-loops.
    pub fn is_partially_ordered(&self) -> bool {
        self.topological_order().is_some()
    }

    /// The same automaton renumbered along [`Dfa::topological_order`], so
    /// that every letter acts as a non-decreasing transformation.
    pub fn renumbered_topologically(&self) -> Option<Dfa> {
        self.topological_order()
            .map(|order| self.renumbered(&order.iter().map(|&p| (p - 1) as u32).collect::<Vec<_>>()))
    }

    /// Components of the automaton restricted to the symbols `gamma`: the
    /// connected components of the undirected graph with edges `{p, δ(p, a)}`.
    pub fn gamma_components(&self, gamma: &[usize]) -> Result<Partition> {
        if gamma.is_empty() {
            return Err(Error::InvalidArgument("the symbol subset must be non-empty".into()));
        }
        if let Some(&bad) = gamma.iter().find(|&&a| a >= self.k()) {
            return Err(Error::InvalidArgument(format!("symbol index {bad} is out of range")));
        }
        let mut sets = DisjointSets::new(self.n());
        for p in 0..self.n() as u32 {
            for &a in gamma {
                sets.union(p as usize, self.step(p, a) as usize);
            }
        }
        Ok(sets.into_partition())
    }

    /// Transition-reversed automaton with initial and final roles exchanged.
    pub fn reverse(&self) -> Nfa {
        let n = self.n();
        let k = self.k();
        let mut delta = vec![Vec::new(); n * k];
        for p in 0..n as u32 {
            for a in 0..k {
                let q = self.step(p, a);
                delta[q as usize * k + a].push(p);
            }
        }
        let initials = self.finals.clone();
        let mut finals = vec![false; n];
        finals[self.initial as usize] = true;
        Nfa::from_parts(self.alphabet.clone(), delta, initials, finals)
    }

    /// Quotient complexity of the reverse language.
    pub fn reversal_complexity(&self) -> Result<usize> {
        self.reversal_complexity_with_cap(DEFAULT_SUBSET_CAP)
    }

    /// Subset construction on the reverse of the minimal DFA, followed by
    /// minimization. The subset DFA of a reversed accessible DFA is already
    /// minimal; that is checked, not assumed.
    pub fn reversal_complexity_with_cap(&self, subset_cap: usize) -> Result<usize> {
        let determinized = self.minimize().reverse().determinize_with_cap(subset_cap)?;
        let minimal = determinized.minimize();
        if minimal.n() != determinized.n() {
            return Err(Error::Invariant(format!(
                "subset automaton of the reverse has {} states but its minimal form has {}",
                determinized.n(),
                minimal.n()
            )));
        }
        Ok(minimal.n())
    }

    /// A shortest word (symbol indices) accepted from exactly one of `p`, `q`.
    pub fn distinguishing_word(&self, p: usize, q: usize) -> Option<Vec<usize>> {
        let n = self.n();
        let start = ((p - 1) as u32, (q - 1) as u32);
        let mut parent: HashMap<Pair, Option<(Pair, usize)>> = HashMap::new();
        parent.insert(start, None);
        let mut queue = VecDeque::from([start]);
        while let Some(pair) = queue.pop_front() {
            if self.finals[pair.0 as usize] != self.finals[pair.1 as usize] {
                let mut word = Vec::new();
                let mut cur = pair;
                while let Some(Some((prev, a))) = parent.get(&cur) {
                    word.push(*a);
                    cur = *prev;
                }
                word.reverse();
                return Some(word);
            }
            for a in 0..self.k() {
                let next = (self.step(pair.0, a), self.step(pair.1, a));
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                    e.insert(Some((pair, a)));
                    queue.push_back(next);
                }
            }
        }
        debug_assert!(parent.len() <= n * n);
        None
    }
}

fn check_state(n: usize, state: usize) -> Result<()> {
    if state == 0 || state > n {
        Err(Error::InvalidState { state, n })
    } else {
        Ok(())
    }
}

fn check_alphabet(alphabet: &[String]) -> Result<()> {
    if alphabet.is_empty() {
        return Err(Error::InvalidArgument("the alphabet must be non-empty".into()));
    }
    let mut seen = BTreeSet::new();
    for s in alphabet {
        if s.is_empty() || s.chars().any(char::is_whitespace) || s.contains('#') {
            return Err(Error::InvalidArgument(format!("bad symbol name `{s}`")));
        }
        if !seen.insert(s.as_str()) {
            return Err(Error::InvalidArgument(format!("duplicate symbol `{s}`")));
        }
    }
    Ok(())
}
