//! Edge contraction and the high-degree cover.

use std::collections::BTreeSet;

use super::Graph;
use crate::error::{Error, Result};

/// Contracts every edge of `s`. Each merged class is represented by its
/// smallest original vertex; classes are then numbered in increasing
/// order of representatives. Returns the contracted graph and the map from
/// old to new vertex ids.
pub fn contract(g: &Graph, s: &[(usize, usize)]) -> Result<(Graph, Vec<usize>)> {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v) in s {
        if u >= n || v >= n || !g.has_edge(u, v) {
            return Err(Error::domain(format!("({u}, {v}) is not an edge of the graph")));
        }
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        let (lo, hi) = (a.min(b), a.max(b));
        parent[hi] = lo;
    }
    let mut new_id = vec![usize::MAX; n];
    let mut next = 0;
    let mut map = vec![0; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if new_id[r] == usize::MAX {
            new_id[r] = next;
            next += 1;
        }
        map[v] = new_id[r];
    }
    let edges: BTreeSet<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter_map(|(u, v)| {
            let (a, b) = (map[u], map[v]);
            (a != b).then_some((a.min(b), a.max(b)))
        })
        .collect();
    Ok((Graph::from_edges(next, edges)?, map))
}

/// Scans vertices by increasing id and removes each one whose degree in
/// the remaining graph is at least `delta`. The removed set is returned;
/// every remaining vertex has fewer than `delta` remaining neighbours.
pub fn high_degree_cover(g: &Graph, delta: usize) -> Result<BTreeSet<usize>> {
    if delta == 0 {
        return Err(Error::domain("degree threshold must be at least 1"));
    }
    let mut degree: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut removed = BTreeSet::new();
    for v in 0..g.n() {
        if degree[v] >= delta {
            removed.insert(v);
            for &u in g.neighbours(v) {
                degree[u] -= 1;
            }
        }
    }
    let rest: BTreeSet<usize> = (0..g.n()).filter(|v| !removed.contains(v)).collect();
    let residual = rest.iter().map(|&v| g.neighbours_in(v, &rest).count()).max().unwrap_or(0);
    if residual >= delta {
        return Err(Error::Invariant(format!(
            "residual degree {residual} is not below {delta}"
        )));
    }
    Ok(removed)
}
