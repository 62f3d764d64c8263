//! Green's relations via strongly connected components of Cayley graphs.
//!
//! In a finite monoid `M` generated by `G`, `tM ⊆ sM` exactly when `t` is
//! reachable from `s` along edges `x -> xg`. R-classes are therefore the
//! strongly connected components of the right Cayley graph, L-classes those
//! of the left graph, and J-classes those of their union.

use std::collections::HashSet;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::TransformationSemigroup;

/// Class labels per element of the monoid completion (indexed like its elements).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenClasses {
    pub r: Vec<usize>,
    pub l: Vec<usize>,
    pub j: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GreenTriviality {
    pub r: bool,
    pub l: bool,
    pub j: bool,
    pub h: bool,
}

#[derive(Clone, Copy)]
enum Side {
    Right,
    Left,
    Both,
}

pub(super) fn classes(monoid: &TransformationSemigroup) -> GreenClasses {
    let right_products = products(monoid, true);
    let left_products = products(monoid, false);
    GreenClasses {
        r: scc_labels(monoid.len(), &right_products, &left_products, Side::Right),
        l: scc_labels(monoid.len(), &right_products, &left_products, Side::Left),
        j: scc_labels(monoid.len(), &right_products, &left_products, Side::Both),
    }
}

/// For each element `x` and generator `g`, the index of `xg` (or `gx`).
fn products(monoid: &TransformationSemigroup, right: bool) -> Vec<Vec<usize>> {
    monoid
        .elements()
        .iter()
        .map(|x| {
            monoid
                .generators()
                .iter()
                .map(|g| {
                    let p = if right { x.then(g) } else { g.then(x) };
                    monoid.index_of(&p).expect("monoid is closed")
                })
                .collect()
        })
        .collect()
}

fn scc_labels(size: usize, right: &[Vec<usize>], left: &[Vec<usize>], side: Side) -> Vec<usize> {
    let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(size, 0);
    let nodes: Vec<NodeIndex> = (0..size).map(|_| graph.add_node(())).collect();
    let mut add = |table: &[Vec<usize>]| {
        for (from, targets) in table.iter().enumerate() {
            for &to in targets {
                if to != from {
                    graph.add_edge(nodes[from], nodes[to], ());
                }
            }
        }
    };
    match side {
        Side::Right => add(right),
        Side::Left => add(left),
        Side::Both => {
            add(right);
            add(left);
        }
    }
    let mut labels = vec![0; size];
    for (c, component) in tarjan_scc(&graph).into_iter().enumerate() {
        for node in component {
            labels[node.index()] = c;
        }
    }
    labels
}

impl GreenClasses {
    pub fn triviality(&self) -> GreenTriviality {
        let size = self.r.len();
        let distinct = |labels: &[usize]| labels.iter().collect::<HashSet<_>>().len() == size;
        let h_pairs: HashSet<(usize, usize)> = self.r.iter().copied().zip(self.l.iter().copied()).collect();
        GreenTriviality { r: distinct(&self.r), l: distinct(&self.l), j: distinct(&self.j), h: h_pairs.len() == size }
    }
}
