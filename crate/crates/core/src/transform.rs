//! Transformations of a finite set `Q = {1, ..., n}`.
//!
//! A [`Transformation`] is a total self-map of `Q`, written as its image
//! sequence `[1t, 2t, ..., nt]`. Composition is left to right:
//! `i (t1 t2) = (i t1) t2`. States are 1-indexed on every public surface.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partition::{DisjointSets, Partition};

/// A total map `Q -> Q`.
///
/// Equality, hashing and ordering are defined by the image sequence, so the
/// canonical order of transformations is lexicographic on `[1t, ..., nt]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    // 0-based images
    images: Box<[u32]>,
}

/// Structural facts about a single transformation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformationProfile {
    pub range: BTreeSet<usize>,
    pub rank: usize,
    pub fixed: BTreeSet<usize>,
    pub idempotent: bool,
    pub non_decreasing: bool,
}

impl Transformation {
    /// Builds a transformation from a 1-indexed image sequence.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidSize { n });
        }
        let mut out = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n {
                return Err(Error::InvalidState { state: img, n });
            }
            out.push((img - 1) as u32);
        }
        Ok(Self { images: out.into_boxed_slice() })
    }

    pub(crate) fn from_zero_based(images: Vec<u32>) -> Self {
        debug_assert!(!images.is_empty());
        debug_assert!(images.iter().all(|&i| (i as usize) < images.len()));
        Self { images: images.into_boxed_slice() }
    }

    /// The identity map `1_Q`.
    pub fn identity(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Self::from_zero_based((0..n as u32).collect()))
    }

    /// The singular transformation `(i -> j)`: `i` maps to `j`, every other state is fixed.
    pub fn singular(n: usize, i: usize, j: usize) -> Result<Self> {
        check_size(n)?;
        check_state(n, i)?;
        check_state(n, j)?;
        let mut images: Vec<u32> = (0..n as u32).collect();
        images[i - 1] = (j - 1) as u32;
        Ok(Self::from_zero_based(images))
    }

    /// The constant map `(Q -> j)`.
    pub fn constant(n: usize, j: usize) -> Result<Self> {
        check_size(n)?;
        check_state(n, j)?;
        Ok(Self::from_zero_based(vec![(j - 1) as u32; n]))
    }

    /// `[2, 3, ..., n, n]`, whose single orbit is all of `Q`.
    pub fn t_max(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Self::from_zero_based((0..n as u32).map(|k| (k + 1).min(n as u32 - 1)).collect()))
    }

    /// Size of the underlying set `Q`.
    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-indexed state.
    ///
    /// # Panics
    /// If `state` is outside `1..=n`.
    pub fn image(&self, state: usize) -> usize {
        self.images[state - 1] as usize + 1
    }

    /// The 1-indexed image sequence `[1t, ..., nt]`.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    /// Left-to-right product `self` then `other`.
    pub fn compose(&self, other: &Transformation) -> Result<Transformation> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch { left: self.n(), right: other.n() });
        }
        Ok(self.then(other))
    }

    /// Unchecked left-to-right product; callers guarantee equal sizes.
    pub(crate) fn then(&self, other: &Transformation) -> Transformation {
        debug_assert_eq!(self.n(), other.n());
        Transformation { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &i)| k as u32 == i)
    }

    pub fn range(&self) -> BTreeSet<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn rank(&self) -> usize {
        let mut seen = vec![false; self.n()];
        self.images.iter().filter(|&&i| !std::mem::replace(&mut seen[i as usize], true)).count()
    }

    /// `Fix(t) = { i : it = i }`.
    pub fn fixed_points(&self) -> BTreeSet<usize> {
        self.images.iter().enumerate().filter(|(k, &i)| *k as u32 == i).map(|(k, _)| k + 1).collect()
    }

    pub fn is_idempotent(&self) -> bool {
        self.images.iter().all(|&i| self.images[i as usize] == i)
    }

    /// `p <= pt` for every state `p`.
    pub fn is_non_decreasing(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &i)| k as u32 <= i)
    }

    pub fn profile(&self) -> TransformationProfile {
        let range = self.range();
        TransformationProfile {
            rank: range.len(),
            range,
            fixed: self.fixed_points(),
            idempotent: self.is_idempotent(),
            non_decreasing: self.is_non_decreasing(),
        }
    }

    /// The orbit partition `Orbit(t)`.
    ///
    /// Computed as the connected components of the undirected functional
    /// graph with edges `{k, kt}`, which coincide with the classes of
    /// "some forward iterates meet" for total maps.
    pub fn orbits(&self) -> Partition {
        let mut sets = DisjointSets::new(self.n());
        for (k, &i) in self.images.iter().enumerate() {
            sets.union(k, i as usize);
        }
        sets.into_partition()
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidSize { n })
    } else {
        Ok(())
    }
}

fn check_state(n: usize, state: usize) -> Result<()> {
    if state == 0 || state > n {
        Err(Error::InvalidState { state, n })
    } else {
        Ok(())
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, &i) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Transformation {
    type Err = Error;

    /// Parses `[i1,i2,...,in]`; whitespace around tokens is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|rest| rest.strip_suffix(']'))
            .ok_or_else(|| Error::parse(1, format!("expected `[i1,...,in]`, found `{}`", s.trim())))?;
        let images = inner
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<usize>().map_err(|_| Error::parse(1, format!("`{tok}` is not a state number")))
            })
            .collect::<Result<Vec<_>>>()?;
        Transformation::from_images(&images).map_err(|e| Error::parse(1, e.to_string()))
    }
}

/// Contents of a transformation-list file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformationList {
    pub n: usize,
    pub items: Vec<Transformation>,
}

/// Strips a `#` comment and surrounding whitespace.
pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => line[..pos].trim(),
        None => line.trim(),
    }
}

/// Parses a transformation list: one `[...]` per line, `#` comments, and an
/// optional leading `n <integer>` line. Without the header, `n` is inferred
/// from the first transformation.
pub fn parse_transformation_list(text: &str) -> Result<TransformationList> {
    let mut declared: Option<usize> = None;
    let mut items: Vec<Transformation> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('n').filter(|r| r.starts_with(char::is_whitespace)) {
            if declared.is_some() || !items.is_empty() {
                return Err(Error::parse(line_no, "`n` header must be the first non-comment line"));
            }
            let n = rest
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::parse(line_no, format!("bad size `{}`", rest.trim())))?;
            if n == 0 {
                return Err(Error::parse(line_no, "size must be positive"));
            }
            declared = Some(n);
            continue;
        }
        let t: Transformation = line.parse().map_err(|e| match e {
            Error::Parse { message, .. } => Error::parse(line_no, message),
            other => other,
        })?;
        let expected = declared.or_else(|| items.first().map(Transformation::n));
        if let Some(n) = expected {
            if t.n() != n {
                return Err(Error::parse(line_no, format!("transformation {t} has size {}, expected {n}", t.n())));
            }
        }
        items.push(t);
    }
    let n = match declared.or_else(|| items.first().map(Transformation::n)) {
        Some(n) => n,
        None => return Err(Error::parse(text.lines().count().max(1), "no transformations found")),
    };
    Ok(TransformationList { n, items })
}

/// Emits a transformation list with an `n` header, one element per line.
pub fn emit_transformation_list(n: usize, items: &[Transformation]) -> String {
    let mut out = format!("n {n}\n");
    for t in items {
        out.push_str(&t.to_string());
        out.push('\n');
    }
    out
}
