//! Exhaustive checks over small state sets.

use std::collections::BTreeSet;

use greenbench::partition::{all_partitions, factorial};
use greenbench::verify::{brute_max_j_trivial, enumerate_f_q, g_of_n, SubmonoidSearch};
use greenbench::witness::{gf_q, gs_n, p_n_q, s_n_direct};
use greenbench::{close, Partition};
use num_bigint::BigUint;

#[test]
fn fixed_points_are_orbit_maxima() {
    for n in 1..=6 {
        for t in enumerate_f_q(n).unwrap() {
            assert_eq!(t.fixed_points(), t.orbits().max_set(), "{t}");
        }
    }
}

#[test]
fn generators_fix_exactly_their_range() {
    for n in 1..=8 {
        for g in gf_q(n).unwrap() {
            assert_eq!(g.range(), g.fixed_points(), "{g}");
        }
    }
}

#[test]
fn enumerated_orbit_classes() {
    for n in 1..=6 {
        for p in all_partitions(n).unwrap() {
            let members = p.enumerate_e();
            assert_eq!(BigUint::from(members.len()), p.count_e(), "{p}");
            assert!(members.windows(2).all(|w| w[0] < w[1]));
            for t in members {
                assert!(t.is_non_decreasing(), "{t}");
                assert_eq!(t.orbits(), p, "{t}");
            }
        }
    }
}

#[test]
fn meet_and_join_against_all_partitions() {
    for n in 1..=4 {
        let all = all_partitions(n).unwrap();
        for a in &all {
            for b in &all {
                let meet = a.meet(b).unwrap();
                let join = a.join(b).unwrap();
                for p in &all {
                    let below = p.refines(a).unwrap() && p.refines(b).unwrap();
                    assert_eq!(below, p.refines(&meet).unwrap(), "{a} meet {b} vs {p}");
                    let above = a.refines(p).unwrap() && b.refines(p).unwrap();
                    assert_eq!(above, join.refines(p).unwrap(), "{a} join {b} vs {p}");
                }
            }
        }
    }
}

#[test]
fn witness_closures_reach_the_bounds() {
    for n in 2..=6 {
        assert_eq!(BigUint::from(close(&gf_q(n).unwrap()).unwrap().len()), factorial(n), "n={n}");
        assert_eq!(BigUint::from(close(&gs_n(n).unwrap()).unwrap().len()), g_of_n(n).unwrap(), "n={n}");
    }
}

#[test]
fn s_n_is_j_trivial_with_distinguished_orbits() {
    for n in 1..=5 {
        let s = s_n_direct(n).unwrap();
        assert!(s.is_j_trivial() && s.saito_holds(), "n={n}");
        let distinguished: BTreeSet<Partition> =
            p_n_q(n).unwrap().iter().map(|z| Partition::pi_z(n, z).unwrap()).collect();
        for t in s.elements() {
            for u in s.elements() {
                let product = t.compose(u).unwrap();
                assert!(distinguished.contains(&product.orbits()), "{t}·{u} = {product}");
            }
        }
    }
}

#[test]
fn g_never_exceeds_factorial() {
    for n in 1..=40 {
        assert!(g_of_n(n).unwrap() <= factorial(n), "n={n}");
    }
}

#[test]
fn brute_force_witnesses() {
    for n in 1..=4 {
        let (size, witness) = brute_max_j_trivial(n).unwrap();
        assert_eq!(BigUint::from(size), g_of_n(n).unwrap());
        assert!(witness.is_j_trivial() && witness.saito_holds());
        let mut by_fixed: Vec<(BTreeSet<usize>, Partition)> = Vec::new();
        for t in witness.elements() {
            let key = (t.fixed_points(), t.orbits());
            assert!(by_fixed.iter().all(|(f, o)| *f != key.0 || *o == key.1), "{t}");
            by_fixed.push(key);
        }
    }
}

#[test]
fn pruned_search_agrees_with_green_relations() {
    for n in 1..=4 {
        let search = SubmonoidSearch::new(n).unwrap();
        let mut via_green = Vec::new();
        search.for_each(false, |s| {
            if s.is_j_trivial() {
                via_green.push(s.elements().to_vec());
            }
        });
        let mut pruned = Vec::new();
        search.for_each(true, |s| pruned.push(s.elements().to_vec()));
        via_green.sort();
        pruned.sort();
        assert_eq!(pruned, via_green, "n={n}");
    }
}
