//! Finite transformation semigroups: closure under composition, Green's
//! relations and the orbit-join characterization of J-triviality.

mod green;

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::transform::Transformation;

pub use green::{GreenClasses, GreenTriviality};

/// Default cap on the number of elements a closure may produce.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000_000;

/// A set of transformations closed under composition, together with the
/// generator sequence it was built from. Elements are kept in canonical
/// (lexicographic) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformationSemigroup {
    n: usize,
    elements: Vec<Transformation>,
    generators: Vec<Transformation>,
    contains_identity: bool,
}

/// Right, left and two-sided principal ideals of one element, taken in the
/// monoid completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalIdeals {
    pub right: BTreeSet<Transformation>,
    pub left: BTreeSet<Transformation>,
    pub two_sided: BTreeSet<Transformation>,
}

/// Closes `generators` under composition with the default element cap.
pub fn close(generators: &[Transformation]) -> Result<TransformationSemigroup> {
    close_with_cap(generators, DEFAULT_CLOSURE_CAP)
}

/// Worklist closure: every known element is right-multiplied by every
/// generator until nothing new appears. The result does not depend on the
/// order in which the worklist is processed.
pub fn close_with_cap(generators: &[Transformation], cap: usize) -> Result<TransformationSemigroup> {
    let first =
        generators.first().ok_or_else(|| Error::InvalidArgument("a semigroup needs at least one generator".into()))?;
    let n = first.n();
    if let Some(bad) = generators.iter().find(|g| g.n() != n) {
        return Err(Error::DimensionMismatch { left: n, right: bad.n() });
    }

    let mut seen: HashSet<Transformation> = HashSet::new();
    let mut queue: Vec<Transformation> = Vec::new();
    for g in generators {
        if seen.insert(g.clone()) {
            queue.push(g.clone());
        }
    }
    if queue.len() > cap {
        return Err(Error::ResourceLimit { what: "closure element count", limit: cap });
    }
    let mut head = 0;
    while head < queue.len() {
        let current = queue[head].clone();
        head += 1;
        for g in generators {
            let product = current.then(g);
            if !seen.contains(&product) {
                if queue.len() >= cap {
                    return Err(Error::ResourceLimit { what: "closure element count", limit: cap });
                }
                seen.insert(product.clone());
                queue.push(product);
            }
        }
    }
    drop(seen);
    Ok(TransformationSemigroup::from_parts(n, queue, generators.to_vec()))
}

impl TransformationSemigroup {
    fn from_parts(n: usize, mut elements: Vec<Transformation>, generators: Vec<Transformation>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let contains_identity = elements.iter().any(Transformation::is_identity);
        Self { n, elements, generators, contains_identity }
    }

    /// Wraps a set already known to be closed; closure is checked.
    pub(crate) fn from_closed_set(
        n: usize,
        elements: Vec<Transformation>,
        generators: Vec<Transformation>,
    ) -> Result<Self> {
        let s = Self::from_parts(n, elements, generators);
        if let Some((a, b)) = s.closure_violation() {
            return Err(Error::Invariant(format!("{a}·{b} escapes the element set")));
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Elements in canonical order.
    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Transformation] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains_identity(&self) -> bool {
        self.contains_identity
    }

    pub fn index_of(&self, t: &Transformation) -> Option<usize> {
        self.elements.binary_search(t).ok()
    }

    pub fn contains(&self, t: &Transformation) -> bool {
        self.index_of(t).is_some()
    }

    /// First pair whose product leaves the element set, if any.
    pub fn closure_violation(&self) -> Option<(Transformation, Transformation)> {
        for a in &self.elements {
            for b in &self.elements {
                if !self.contains(&a.then(b)) {
                    return Some((a.clone(), b.clone()));
                }
            }
        }
        None
    }

    /// `self` with the identity adjoined when it is not already an element.
    pub fn monoid_completion(&self) -> TransformationSemigroup {
        if self.contains_identity {
            return self.clone();
        }
        let id = Transformation::identity(self.n).expect("n >= 1");
        let mut elements = self.elements.clone();
        let pos = elements.binary_search(&id).unwrap_err();
        elements.insert(pos, id.clone());
        let mut generators = self.generators.clone();
        generators.push(id);
        Self { n: self.n, elements, generators, contains_identity: true }
    }

    pub fn all_non_decreasing(&self) -> bool {
        self.elements.iter().all(Transformation::is_non_decreasing)
    }

    /// `sM`, `Ms` and `MsM` over the monoid completion `M`.
    pub fn principal_ideals(&self, s: &Transformation) -> Result<PrincipalIdeals> {
        let monoid = self.monoid_completion();
        if !monoid.contains(s) {
            return Err(Error::NotAMember(s.to_string()));
        }
        let right: BTreeSet<Transformation> = monoid.elements.iter().map(|m| s.then(m)).collect();
        let left: BTreeSet<Transformation> = monoid.elements.iter().map(|m| m.then(s)).collect();
        let two_sided = left.iter().flat_map(|x| monoid.elements.iter().map(move |m| x.then(m))).collect();
        Ok(PrincipalIdeals { right, left, two_sided })
    }

    /// R-, L- and J-classes of the monoid completion.
    pub fn green_classes(&self) -> GreenClasses {
        green::classes(&self.monoid_completion())
    }

    /// Triviality of all four Green relations on the monoid completion.
    pub fn green_triviality(&self) -> GreenTriviality {
        self.green_classes().triviality()
    }

    pub fn is_r_trivial(&self) -> bool {
        self.green_triviality().r
    }

    pub fn is_l_trivial(&self) -> bool {
        self.green_triviality().l
    }

    pub fn is_j_trivial(&self) -> bool {
        self.green_triviality().j
    }

    pub fn is_h_trivial(&self) -> bool {
        self.green_triviality().h
    }

    /// Orbit-join condition: every element is non-decreasing and
    /// `Orbit(ts) = Orbit(t) ∨ Orbit(s)` for all ordered pairs.
    pub fn saito_holds(&self) -> bool {
        self.saito_violation().is_none() && self.all_non_decreasing()
    }

    /// First ordered pair breaking the orbit-join equation, if any.
    pub fn saito_violation(&self) -> Option<(Transformation, Transformation)> {
        let monoid = self.monoid_completion();
        let orbits: Vec<Partition> = monoid.elements.iter().map(Transformation::orbits).collect();
        for (t, ot) in monoid.elements.iter().zip(&orbits) {
            for (s, os) in monoid.elements.iter().zip(&orbits) {
                let joined = ot.join(os).expect("equal sizes");
                if t.then(s).orbits() != joined {
                    return Some((t.clone(), s.clone()));
                }
            }
        }
        None
    }

    /// The smallest monoid containing `self` and `t_max`.
    ///
    /// Requires a J-trivial monoid of non-decreasing maps; the J-triviality
    /// of the result is checked rather than assumed.
    pub fn adjoin_t_max(&self) -> Result<TransformationSemigroup> {
        if !self.all_non_decreasing() {
            return Err(Error::Precondition("every element must be non-decreasing".into()));
        }
        if !self.is_j_trivial() {
            return Err(Error::Precondition("the monoid must be J-trivial".into()));
        }
        let mut gens = self.generators.clone();
        gens.push(Transformation::t_max(self.n)?);
        gens.push(Transformation::identity(self.n)?);
        let result = close(&gens)?;
        if !result.is_j_trivial() {
            return Err(Error::Invariant("adjoining t_max broke J-triviality".into()));
        }
        Ok(result)
    }
}
