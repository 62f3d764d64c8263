//! Constructors for the extremal objects: the generators `GF_Q` of the
//! non-decreasing monoid and the DFA `A_n` built on them, the generators
//! `t_Z` / `GS_n` of the J-trivial monoid `S_n`, and the DFA `B_n` whose
//! reverse needs `2^(n−1)` states.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::automata::{emit_dfa, parse_dfa, Dfa};
use crate::error::{Error, Result};
use crate::partition::{check_subset_with_n, Partition};
use crate::semigroup::{close, TransformationSemigroup};
use crate::transform::{emit_transformation_list, parse_transformation_list, Transformation};

/// Default cap on `n` for the witness constructors that materialize `n!`- or
/// `g(n)`-sized objects.
pub const DEFAULT_WITNESS_CAP: usize = 8;

/// `GF_Q`: the identity plus every singular `(i -> j)` with `i < j`, in canonical order.
pub fn gf_q(n: usize) -> Result<Vec<Transformation>> {
    let mut out = vec![Transformation::identity(n)?];
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(Transformation::singular(n, i, j)?);
        }
    }
    out.sort();
    Ok(out)
}

/// Symbol name of a `GF_Q` element: `g0` for the identity, `g<i>_<j>` for `(i -> j)`.
fn gf_symbol(t: &Transformation) -> String {
    match (1..=t.n()).find(|&i| t.image(i) != i) {
        None => "g0".to_string(),
        Some(i) => format!("g{i}_{}", t.image(i)),
    }
}

/// `A_n`: one letter per element of `GF_Q`, initial state 1, final state `n`.
pub fn witness_a(n: usize) -> Result<Dfa> {
    witness_a_with_cap(n, DEFAULT_WITNESS_CAP)
}

pub fn witness_a_with_cap(n: usize, cap: usize) -> Result<Dfa> {
    if n < 2 {
        return Err(Error::InvalidSize { n });
    }
    if n > cap {
        return Err(Error::ResourceLimit { what: "witness size n", limit: cap });
    }
    let letters: Vec<(String, Transformation)> = gf_q(n)?.into_iter().map(|t| (gf_symbol(&t), t)).collect();
    Dfa::from_transformations(&letters, 1, &BTreeSet::from([n]))
}

/// `P_n(Q)`: subsets of `Q` containing `n`, largest first, then lexicographic.
pub fn p_n_q(n: usize) -> Result<Vec<BTreeSet<usize>>> {
    if n == 0 {
        return Err(Error::InvalidSize { n });
    }
    if n > 63 {
        return Err(Error::ResourceLimit { what: "subset enumeration size n", limit: 63 });
    }
    let mut out: Vec<BTreeSet<usize>> = (0u64..1 << (n - 1))
        .map(|mask| {
            let mut z: BTreeSet<usize> = (1..n).filter(|&s| mask & (1 << (s - 1)) != 0).collect();
            z.insert(n);
            z
        })
        .collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.iter().cmp(b.iter())));
    Ok(out)
}

/// `t_Z`: the identity when `Z = Q`; otherwise, with `h = max(Q ∖ Z)`,
/// elements of `Z` are fixed, `h` maps to `n`, and everything else maps to `h`.
pub fn t_z(n: usize, z: &BTreeSet<usize>) -> Result<Transformation> {
    check_subset_with_n(n, z)?;
    let Some(h) = (1..=n).rev().find(|s| !z.contains(s)) else {
        return Transformation::identity(n);
    };
    let images: Vec<usize> = (1..=n)
        .map(|i| {
            if z.contains(&i) {
                i
            } else if i == h {
                n
            } else {
                h
            }
        })
        .collect();
    Transformation::from_images(&images)
}

fn subset_mask(z: &BTreeSet<usize>) -> u64 {
    z.iter().fold(0, |m, &s| m | (1 << (s - 1)))
}

/// `GS_n = { t_Z : Z ∈ P_n(Q) }` in canonical order.
pub fn gs_n(n: usize) -> Result<Vec<Transformation>> {
    Ok(gs_n_named(n)?.into_iter().map(|(_, t)| t).collect())
}

/// `GS_n` with symbol names `t<mask>`, where bit `s − 1` of the mask marks `s ∈ Z`.
pub fn gs_n_named(n: usize) -> Result<Vec<(String, Transformation)>> {
    let mut out =
        p_n_q(n)?.iter().map(|z| Ok((format!("t{}", subset_mask(z)), t_z(n, z)?))).collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.1.cmp(&b.1));
    Ok(out)
}

/// One row of the decomposition `S_n = ⋃ E(π_Z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnBlock {
    pub z: BTreeSet<usize>,
    pub pi_z: Partition,
    pub elements: Vec<Transformation>,
}

/// `E(π_Z)` for every `Z ∈ P_n(Q)`, in `P_n(Q)` order.
pub fn s_n_table(n: usize) -> Result<Vec<SnBlock>> {
    p_n_q(n)?
        .into_iter()
        .map(|z| {
            let pi_z = Partition::pi_z(n, &z)?;
            let elements = pi_z.enumerate_e();
            Ok(SnBlock { z, pi_z, elements })
        })
        .collect()
}

/// `S_n` assembled directly as the union of the `E(π_Z)`; closure under
/// composition is verified.
pub fn s_n_direct(n: usize) -> Result<TransformationSemigroup> {
    s_n_direct_with_cap(n, DEFAULT_WITNESS_CAP)
}

pub fn s_n_direct_with_cap(n: usize, cap: usize) -> Result<TransformationSemigroup> {
    if n > cap {
        return Err(Error::ResourceLimit { what: "witness size n", limit: cap });
    }
    let mut elements: Vec<Transformation> = s_n_table(n)?.into_iter().flat_map(|b| b.elements).collect();
    elements.sort();
    TransformationSemigroup::from_closed_set(n, elements.clone(), elements)
}

/// `B_n` over letters `a1..a(n−1)`: `a_i` sends `j < i` to `j + 1`, `i` to `n`,
/// and fixes every `j > i`. Initial state 1, final state `n`.
pub fn witness_b(n: usize) -> Result<Dfa> {
    if n < 2 {
        return Err(Error::InvalidSize { n });
    }
    let letters = (1..n)
        .map(|i| {
            let images: Vec<usize> = (1..=n)
                .map(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Less => j + 1,
                    std::cmp::Ordering::Equal => n,
                    std::cmp::Ordering::Greater => j,
                })
                .collect();
            Ok((format!("a{i}"), Transformation::from_images(&images)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Dfa::from_transformations(&letters, 1, &BTreeSet::from([n]))
}

/// A DFA whose syntactic semigroup is `S_n`: letters `GS_n` plus `tmax`,
/// initial state 1, final state `n`.
pub fn witness_s_dfa(n: usize) -> Result<Dfa> {
    if n > DEFAULT_WITNESS_CAP {
        return Err(Error::ResourceLimit { what: "witness size n", limit: DEFAULT_WITNESS_CAP });
    }
    let mut letters = gs_n_named(n)?;
    letters.push(("tmax".to_string(), Transformation::t_max(n)?));
    Dfa::from_transformations(&letters, 1, &BTreeSet::from([n]))
}

/// Smallest subset of `S_n` (searching sizes up to `max_size`) that
/// generates all of `S_n`, or `None` if there is none that small.
///
/// Search harness for the question of how few letters reach the J-trivial
/// bound; restricted to `n <= 4`.
pub fn smallest_generating_subset(n: usize, max_size: usize) -> Result<Option<Vec<Transformation>>> {
    if n > 4 {
        return Err(Error::ResourceLimit { what: "generator search size n", limit: 4 });
    }
    let s = s_n_direct(n)?;
    let pool = s.elements();
    for size in 1..=max_size.min(pool.len()) {
        let mut chosen: Vec<usize> = (0..size).collect();
        loop {
            let gens: Vec<Transformation> = chosen.iter().map(|&i| pool[i].clone()).collect();
            if close(&gens)?.len() == pool.len() {
                return Ok(Some(gens));
            }
            // next combination in lexicographic order
            let Some(pos) = (0..size).rev().find(|&p| chosen[p] < pool.len() - size + p) else {
                break;
            };
            chosen[pos] += 1;
            for q in pos + 1..size {
                chosen[q] = chosen[q - 1] + 1;
            }
        }
    }
    Ok(None)
}

/// The witness families exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// `A_n`
    RTrivialDfa,
    /// `B_n`
    JTrivialDfa,
    /// `GS_n`
    JTrivialGenerators,
    /// `S_n`
    JTrivialMonoid,
}

impl WitnessKind {
    pub const ALL: [WitnessKind; 4] = [
        WitnessKind::RTrivialDfa,
        WitnessKind::JTrivialDfa,
        WitnessKind::JTrivialGenerators,
        WitnessKind::JTrivialMonoid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::RTrivialDfa => "rtrivial",
            WitnessKind::JTrivialDfa => "jtrivial-dfa",
            WitnessKind::JTrivialGenerators => "jtrivial-gens",
            WitnessKind::JTrivialMonoid => "jtrivial-monoid",
        }
    }
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WitnessKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WitnessKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown witness kind `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessPayload {
    Dfa(Dfa),
    Generators(Vec<Transformation>),
    Monoid(TransformationSemigroup),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessBundle {
    pub kind: WitnessKind,
    pub n: usize,
    pub payload: WitnessPayload,
}

impl WitnessBundle {
    pub fn build(kind: WitnessKind, n: usize) -> Result<Self> {
        let payload = match kind {
            WitnessKind::RTrivialDfa => WitnessPayload::Dfa(witness_a(n)?),
            WitnessKind::JTrivialDfa => WitnessPayload::Dfa(witness_b(n)?),
            WitnessKind::JTrivialGenerators => {
                if n > DEFAULT_WITNESS_CAP * 2 {
                    return Err(Error::ResourceLimit { what: "witness size n", limit: DEFAULT_WITNESS_CAP * 2 });
                }
                WitnessPayload::Generators(gs_n(n)?)
            }
            WitnessKind::JTrivialMonoid => WitnessPayload::Monoid(s_n_direct(n)?),
        };
        Ok(Self { kind, n, payload })
    }

    /// Byte-stable text: the DFA format for automata, the transformation-list
    /// format otherwise (generators carry their `t<mask>` names as comments).
    pub fn emit(&self) -> String {
        match &self.payload {
            WitnessPayload::Dfa(d) => emit_dfa(d),
            WitnessPayload::Generators(gens) => {
                let mut out = format!("n {}\n", self.n);
                let named = gs_n_named(self.n).unwrap_or_default();
                for g in gens {
                    out.push_str(&g.to_string());
                    if let Some((name, _)) = named.iter().find(|(_, t)| t == g) {
                        out.push_str(&format!("  # {name}"));
                    }
                    out.push('\n');
                }
                out
            }
            WitnessPayload::Monoid(s) => emit_transformation_list(s.n(), s.elements()),
        }
    }

    /// Reads back the output of [`WitnessBundle::emit`].
    pub fn parse(kind: WitnessKind, text: &str) -> Result<Self> {
        let (n, payload) = match kind {
            WitnessKind::RTrivialDfa | WitnessKind::JTrivialDfa => {
                let d = parse_dfa(text)?;
                (d.n(), WitnessPayload::Dfa(d))
            }
            WitnessKind::JTrivialGenerators => {
                let list = parse_transformation_list(text)?;
                (list.n, WitnessPayload::Generators(list.items))
            }
            WitnessKind::JTrivialMonoid => {
                let list = parse_transformation_list(text)?;
                let s = TransformationSemigroup::from_closed_set(list.n, list.items.clone(), list.items)?;
                (list.n, WitnessPayload::Monoid(s))
            }
        };
        Ok(Self { kind, n, payload })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(images: &[usize]) -> Transformation {
        Transformation::from_images(images).unwrap()
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn gf_q_small() {
        assert_eq!(
            gf_q(4).unwrap(),
            vec![
                t(&[1, 2, 3, 4]),
                t(&[1, 2, 4, 4]),
                t(&[1, 3, 3, 4]),
                t(&[1, 4, 3, 4]),
                t(&[2, 2, 3, 4]),
                t(&[3, 2, 3, 4]),
                t(&[4, 2, 3, 4]),
            ]
        );
        assert_eq!(gf_q(1).unwrap(), vec![t(&[1])]);
        assert_eq!(gf_q(5).unwrap().len(), 11);
    }

    #[test]
    fn a_n_shape() {
        let a4 = witness_a(4).unwrap();
        assert_eq!(a4.alphabet(), &["g0", "g3_4", "g2_3", "g2_4", "g1_2", "g1_3", "g1_4"]);
        assert_eq!(a4.finals(), set(&[4]));
        assert_eq!(a4.quotient_complexity(), 4);
        assert_eq!(a4.syntactic_semigroup().unwrap().len(), 24);
        let a2 = witness_a(2).unwrap();
        assert_eq!(a2.alphabet().len(), 2);
        assert_eq!(a2.syntactic_semigroup().unwrap().len(), 2);
        assert_eq!(witness_a(1), Err(Error::InvalidSize { n: 1 }));
        assert!(matches!(witness_a(9), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn p_n_q_order() {
        let p4 = p_n_q(4).unwrap();
        let expected: Vec<BTreeSet<usize>> =
            [&[1, 2, 3, 4][..], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4], &[1, 4], &[2, 4], &[3, 4], &[4]]
                .iter()
                .map(|z| set(z))
                .collect();
        assert_eq!(p4, expected);
        assert_eq!(p_n_q(1).unwrap(), vec![set(&[1])]);
        assert_eq!(p_n_q(5).unwrap().len(), 16);
    }

    #[test]
    fn t_z_examples() {
        assert_eq!(t_z(5, &set(&[1, 3, 4, 5])).unwrap(), t(&[1, 5, 3, 4, 5]));
        assert_eq!(t_z(5, &set(&[4, 5])).unwrap(), t(&[3, 3, 5, 4, 5]));
        assert_eq!(t_z(5, &set(&[5])).unwrap(), t(&[4, 4, 4, 5, 5]));
        assert_eq!(t_z(5, &set(&[1, 2, 3, 4, 5])).unwrap(), Transformation::identity(5).unwrap());
        assert!(matches!(t_z(5, &set(&[1, 2])), Err(Error::InvalidSubset(_))));
    }

    #[test]
    fn t_z_orbit_is_pi_z() {
        for n in 1..=6 {
            for z in p_n_q(n).unwrap() {
                assert_eq!(t_z(n, &z).unwrap().orbits(), Partition::pi_z(n, &z).unwrap());
            }
        }
    }

    #[test]
    fn gs_n_sizes_and_names() {
        assert_eq!(gs_n(1).unwrap(), vec![t(&[1])]);
        assert_eq!(gs_n(4).unwrap().len(), 8);
        let named = gs_n_named(5).unwrap();
        assert_eq!(named[0], ("t31".to_string(), t(&[1, 2, 3, 4, 5])));
        assert!(named.contains(&("t29".to_string(), t(&[1, 5, 3, 4, 5]))));
    }

    #[test]
    fn s_4_table() {
        let counts: Vec<usize> = s_n_table(4).unwrap().iter().map(|b| b.elements.len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 1, 2, 2, 2, 6]);
        assert_eq!(s_n_direct(4).unwrap().len(), 16);
        assert_eq!(s_n_direct(2).unwrap().len(), 2);
        assert!(matches!(s_n_direct(9), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn b_5_letters() {
        let b5 = witness_b(5).unwrap();
        assert_eq!(
            b5.letter_transformations(),
            vec![t(&[5, 2, 3, 4, 5]), t(&[2, 5, 3, 4, 5]), t(&[2, 3, 5, 4, 5]), t(&[2, 3, 4, 5, 5])]
        );
        assert_eq!(b5.alphabet(), &["a1", "a2", "a3", "a4"]);
        assert_eq!(b5.trim_reachable(), b5);
        assert!(matches!(witness_b(1), Err(Error::InvalidSize { .. })));
    }

    #[test]
    fn s_dfa_reaches_g_n() {
        let d = witness_s_dfa(4).unwrap();
        assert_eq!(d.quotient_complexity(), 4);
        assert_eq!(d.syntactic_semigroup().unwrap().len(), 16);
    }

    #[test]
    fn generator_search_hook() {
        let gens = smallest_generating_subset(3, 4).unwrap().unwrap();
        assert_eq!(close(&gens).unwrap().elements(), s_n_direct(3).unwrap().elements());
        assert!(matches!(smallest_generating_subset(5, 1), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn bundles_round_trip() {
        for kind in WitnessKind::ALL {
            for n in 2..=6 {
                let bundle = WitnessBundle::build(kind, n).unwrap();
                let text = bundle.emit();
                assert_eq!(WitnessBundle::parse(kind, &text).unwrap(), bundle, "{kind} n={n}");
                assert_eq!(WitnessBundle::build(kind, n).unwrap().emit(), text);
            }
        }
        assert_eq!("jtrivial-gens".parse::<WitnessKind>().unwrap(), WitnessKind::JTrivialGenerators);
        assert!("other".parse::<WitnessKind>().is_err());
    }
}
