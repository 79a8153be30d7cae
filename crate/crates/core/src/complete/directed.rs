use petgraph::algo::{has_path_connecting, tarjan_scc, toposort};
use petgraph::graph::{DiGraph, NodeIndex};
use rayon::prelude::*;

use crate::error::Result;
use crate::exactla::Field;
use crate::repmod::{rad_top, Rep};

/// The relation `X → Y` iff `rad(X, Y) ≠ 0` on a list of indecomposables.
#[derive(Clone, Debug)]
pub struct DirectednessReport {
    pub edges: Vec<(usize, usize)>,
    /// Nodes of a strongly connected component with a cycle.
    pub cycle: Option<Vec<usize>>,
    /// Longest-path heights, when acyclic.
    pub heights: Option<Vec<usize>>,
    graph: DiGraph<usize, ()>,
}

impl DirectednessReport {
    pub fn is_acyclic(&self) -> bool {
        self.cycle.is_none()
    }

    /// `X < Y`: a chain of nonzero radical maps from `X` to `Y`.
    pub fn precedes(&self, x: usize, y: usize) -> bool {
        x != y && has_path_connecting(&self.graph, NodeIndex::new(x), NodeIndex::new(y), None)
    }
}

pub fn directedness_report<F: Field>(gens: &[Rep<F>]) -> Result<DirectednessReport> {
    let n = gens.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let flags: Vec<bool> = pairs
        .par_iter()
        .map(|&(i, j)| rad_top(&gens[i], &gens[j]).map(|r| r.rad.dim() > 0))
        .collect::<Result<_>>()?;
    let edges: Vec<(usize, usize)> = pairs.into_iter().zip(flags).filter(|(_, f)| *f).map(|(p, _)| p).collect();
    let mut graph = DiGraph::<usize, ()>::with_capacity(n, edges.len());
    for i in 0..n {
        graph.add_node(i);
    }
    for &(i, j) in &edges {
        graph.add_edge(NodeIndex::new(i), NodeIndex::new(j), ());
    }
    let cycle = tarjan_scc(&graph)
        .into_iter()
        .find(|c| c.len() > 1 || edges.contains(&(c[0].index(), c[0].index())))
        .map(|c| {
            let mut v: Vec<usize> = c.iter().map(|x| x.index()).collect();
            v.sort();
            v
        });
    let heights = if cycle.is_none() {
        let order = toposort(&graph, None).expect("acyclic");
        let mut h = vec![0usize; n];
        for x in order {
            for y in graph.neighbors(x) {
                h[y.index()] = h[y.index()].max(h[x.index()] + 1);
            }
        }
        Some(h)
    } else {
        None
    };
    Ok(DirectednessReport { edges, cycle, heights, graph })
}
