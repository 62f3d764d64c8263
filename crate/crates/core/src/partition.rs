//! The partition lattice of `Q = {1, ..., n}`.
//!
//! A [`Partition`] is stored as a restricted growth string: `labels[k]` is
//! the index of the block containing state `k + 1`, with blocks numbered in
//! order of their minimum element. That representation is canonical, so
//! derived equality and ordering are structural.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::transform::Transformation;

/// Default cap on `n` for [`all_partitions`] (Bell(8) = 4140).
pub const DEFAULT_ALL_PARTITIONS_CAP: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    labels: Box<[u32]>,
    block_count: usize,
}

impl Partition {
    /// Builds a partition from 1-indexed blocks, validating disjointness and coverage.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize { n });
        }
        let mut labels = vec![u32::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidArgument("partition blocks must be non-empty".into()));
            }
            for &s in block {
                if s == 0 || s > n {
                    return Err(Error::InvalidState { state: s, n });
                }
                if labels[s - 1] != u32::MAX {
                    return Err(Error::InvalidArgument(format!("state {s} occurs in two blocks")));
                }
                labels[s - 1] = b as u32;
            }
        }
        if let Some(k) = labels.iter().position(|&l| l == u32::MAX) {
            return Err(Error::InvalidArgument(format!("state {} is not covered", k + 1)));
        }
        Ok(Self::from_labels(&labels))
    }

    /// Canonicalizes an arbitrary block labelling.
    pub(crate) fn from_labels(raw: &[u32]) -> Self {
        let mut remap = std::collections::HashMap::new();
        let labels: Box<[u32]> = raw
            .iter()
            .map(|l| {
                let next = remap.len() as u32;
                *remap.entry(*l).or_insert(next)
            })
            .collect();
        Self { labels, block_count: remap.len() }
    }

    /// The partition into singletons, bottom of the lattice.
    pub fn finest(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize { n });
        }
        Ok(Self { labels: (0..n as u32).collect(), block_count: n })
    }

    /// The one-block partition `{Q}`, top of the lattice.
    pub fn coarsest(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize { n });
        }
        Ok(Self { labels: vec![0; n].into_boxed_slice(), block_count: 1 })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    /// Index (in canonical block order) of the block holding a 1-indexed state.
    pub fn block_of(&self, state: usize) -> usize {
        self.labels[state - 1] as usize
    }

    /// Blocks in canonical order, each sorted ascending, 1-indexed.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count];
        for (k, &l) in self.labels.iter().enumerate() {
            blocks[l as usize].push(k + 1);
        }
        blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.block_count];
        for &l in self.labels.iter() {
            sizes[l as usize] += 1;
        }
        sizes
    }

    fn check_same_n(&self, other: &Partition) -> Result<()> {
        if self.n() != other.n() {
            Err(Error::DimensionMismatch { left: self.n(), right: other.n() })
        } else {
            Ok(())
        }
    }

    /// `self ⪯ other`: every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        self.check_same_n(other)?;
        let mut image = vec![u32::MAX; self.block_count];
        for (&mine, &theirs) in self.labels.iter().zip(other.labels.iter()) {
            let slot = &mut image[mine as usize];
            if *slot == u32::MAX {
                *slot = theirs;
            } else if *slot != theirs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Largest partition refining both: the non-empty blockwise intersections.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.check_same_n(other)?;
        let width = other.block_count as u64;
        let pairs: Vec<u64> =
            self.labels.iter().zip(other.labels.iter()).map(|(&a, &b)| a as u64 * width + b as u64).collect();
        let mut remap = std::collections::HashMap::new();
        let labels: Box<[u32]> = pairs
            .iter()
            .map(|p| {
                let next = remap.len() as u32;
                *remap.entry(*p).or_insert(next)
            })
            .collect();
        Ok(Partition { labels, block_count: remap.len() })
    }

    /// Smallest partition refined by both: components of the union of the two block relations.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.check_same_n(other)?;
        let n = self.n();
        let mut sets = DisjointSets::new(n);
        for p in [self, other] {
            let mut first = vec![usize::MAX; p.block_count];
            for (k, &l) in p.labels.iter().enumerate() {
                let f = &mut first[l as usize];
                if *f == usize::MAX {
                    *f = k;
                } else {
                    sets.union(*f, k);
                }
            }
        }
        Ok(sets.into_partition())
    }

    /// `Max(π)`: the set of block maxima.
    pub fn max_set(&self) -> BTreeSet<usize> {
        let mut maxima = vec![0; self.block_count];
        for (k, &l) in self.labels.iter().enumerate() {
            maxima[l as usize] = k + 1;
        }
        maxima.into_iter().collect()
    }

    /// The distinguished partition `π_Z` for `n ∈ Z ⊆ Q`: `{Q}` when `Z = {n}`,
    /// otherwise one singleton per element of `Z ∖ {n}` plus the rest as one block.
    pub fn pi_z(n: usize, z: &BTreeSet<usize>) -> Result<Partition> {
        check_subset_with_n(n, z)?;
        let labels: Vec<u32> = (1..=n).map(|s| if s != n && z.contains(&s) { s as u32 } else { 0 }).collect();
        Ok(Partition::from_labels(&labels))
    }

    /// `|E(π)| = ∏ (k_i − 1)!` over block sizes `k_i`.
    pub fn count_e(&self) -> BigUint {
        self.block_sizes().into_iter().map(|k| factorial(k - 1)).product()
    }

    /// `E(π)`: all non-decreasing transformations whose orbit partition is `π`,
    /// in canonical (lexicographic) order.
    ///
    /// Block maxima are fixed; every other state picks its image among the
    /// strictly larger states of its own block.
    pub fn enumerate_e(&self) -> Vec<Transformation> {
        let n = self.n();
        let blocks = self.blocks();
        let choices: Vec<Vec<u32>> = (0..n)
            .map(|k| {
                let block = &blocks[self.labels[k] as usize];
                let larger: Vec<u32> = block.iter().filter(|&&s| s > k + 1).map(|&s| (s - 1) as u32).collect();
                if larger.is_empty() {
                    vec![k as u32]
                } else {
                    larger
                }
            })
            .collect();

        let mut out = Vec::new();
        let mut cursor = vec![0usize; n];
        loop {
            out.push(Transformation::from_zero_based(cursor.iter().enumerate().map(|(k, &c)| choices[k][c]).collect()));
            // odometer with state 1 most significant gives lexicographic order
            let mut pos = n;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                cursor[pos] += 1;
                if cursor[pos] < choices[pos].len() {
                    break;
                }
                cursor[pos] = 0;
            }
        }
    }
}

pub(crate) fn check_subset_with_n(n: usize, z: &BTreeSet<usize>) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidSize { n });
    }
    if let Some(&bad) = z.iter().find(|&&s| s == 0 || s > n) {
        return Err(Error::InvalidSubset(format!("state {bad} is outside 1..={n}")));
    }
    if !z.contains(&n) {
        return Err(Error::InvalidSubset(format!("subset must contain {n}")));
    }
    Ok(())
}

pub fn factorial(k: usize) -> BigUint {
    (2..=k as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// Every partition of `{1..n}` in canonical order, with the default cap.
pub fn all_partitions(n: usize) -> Result<Vec<Partition>> {
    all_partitions_with_cap(n, DEFAULT_ALL_PARTITIONS_CAP)
}

pub fn all_partitions_with_cap(n: usize, cap: usize) -> Result<Vec<Partition>> {
    if n == 0 {
        return Err(Error::InvalidSize { n });
    }
    if n > cap {
        return Err(Error::ResourceLimit { what: "partition enumeration size", limit: cap });
    }
    let mut out = Vec::new();
    let mut rgs = vec![0u32; n];
    fn rec(pos: usize, max_label: u32, rgs: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if pos == rgs.len() {
            out.push(Partition { labels: rgs.clone().into_boxed_slice(), block_count: max_label as usize + 1 });
            return;
        }
        for l in 0..=max_label + 1 {
            rgs[pos] = l;
            rec(pos + 1, max_label.max(l), rgs, out);
        }
    }
    rec(1, 0, &mut rgs, &mut out);
    Ok(out)
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (b, block) in self.blocks().iter().enumerate() {
            if b > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (i, s) in block.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{s}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Union-find over `0..n`.
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub(crate) fn into_partition(mut self) -> Partition {
        let roots: Vec<u32> = (0..self.parent.len()).map(|k| self.find(k) as u32).collect();
        Partition::from_labels(&roots)
    }
}
