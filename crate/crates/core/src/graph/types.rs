use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph, merging repeated edges. Loops and out-of-range
    /// endpoints are domain errors.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::domain(format!("edge ({u}, {v}) outside 0..{n}")));
            }
            if u == v {
                return Err(Error::domain(format!("loop at vertex {u}")));
            }
            g.adj[u].push(v);
            g.adj[v].push(u);
        }
        for list in &mut g.adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid")
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid")
    }

    /// `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("valid")
    }

    /// Wheel with hub 0 and rim `1..=rim`.
    pub fn wheel(rim: usize) -> Graph {
        let spokes = (1..=rim).map(|i| (0, i));
        let ring = (1..=rim).map(|i| (i, i % rim + 1));
        Graph::from_edges(rim + 1, spokes.chain(ring)).expect("valid")
    }

    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("valid")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Number of edges with both endpoints in `set`, i.e. `|E(U)|`.
    pub fn edges_within(&self, set: &BTreeSet<usize>) -> usize {
        set.iter()
            .map(|&u| self.adj[u].iter().filter(|&&v| v > u && set.contains(&v)).count())
            .sum()
    }

    /// Neighbours of `v` inside `set`.
    pub fn neighbours_in<'a>(&'a self, v: usize, set: &'a BTreeSet<usize>) -> impl Iterator<Item = usize> + 'a {
        self.adj[v].iter().copied().filter(move |u| set.contains(u))
    }

    /// `N(U)`: vertices outside `set` with a neighbour inside it.
    pub fn neighbourhood(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        set.iter()
            .flat_map(|&u| self.adj[u].iter().copied())
            .filter(|v| !set.contains(v))
            .collect()
    }

    /// The subgraph induced by `vertices`, relabelled `0..|vertices|` in
    /// increasing id order; the second value maps new ids to old ones.
    pub fn induced(&self, vertices: &BTreeSet<usize>) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = vertices.iter().copied().collect();
        let new_id = |v: usize| old.binary_search(&v).ok();
        let mut g = Graph::empty(old.len());
        for (i, &u) in old.iter().enumerate() {
            g.adj[i] = self.adj[u].iter().filter_map(|&v| new_id(v)).collect();
        }
        (g, old)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                for &v in &self.adj[comp[i]] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The graph file format: `n m`, then one sorted `u v` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            writeln!(s, "{u} {v}").expect("writing to a String");
        }
        s
    }

    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let nums = parse_ints(header)?;
        let [n, m] = nums[..] else {
            return Err(Error::Parse(format!("bad header `{header}` (expected `n m`)")));
        };
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let uv = parse_ints(line)?;
            let [u, v] = uv[..] else {
                return Err(Error::Parse(format!("bad edge line `{line}`")));
            };
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse(format!("header announces {m} edges, found {}", edges.len())));
        }
        let g = Graph::from_edges(n, edges).map_err(|e| Error::Parse(e.to_string()))?;
        if g.m() != m {
            return Err(Error::Parse("repeated edge in graph file".into()));
        }
        Ok(g)
    }
}

fn parse_ints(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("not a vertex count or id: `{t}`"))))
        .collect()
}

/// A linear order on the vertices, stored as ranks: `rank[v]` is the
/// position of `v`, and `u ≺ v` iff `rank[u] < rank[v]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexOrder {
    rank: Vec<usize>,
}

impl VertexOrder {
    pub fn new(rank: Vec<usize>) -> Result<VertexOrder> {
        let mut seen = vec![false; rank.len()];
        for &r in &rank {
            if r >= rank.len() || std::mem::replace(&mut seen[r], true) {
                return Err(Error::domain("vertex ranks are not a bijection onto 0..n"));
            }
        }
        Ok(VertexOrder { rank })
    }

    pub fn identity(n: usize) -> VertexOrder {
        VertexOrder { rank: (0..n).collect() }
    }

    /// The order listing `sequence[0] ≺ sequence[1] ≺ …`.
    pub fn from_sequence(sequence: &[usize]) -> Result<VertexOrder> {
        let mut rank = vec![usize::MAX; sequence.len()];
        for (i, &v) in sequence.iter().enumerate() {
            if v >= sequence.len() || rank[v] != usize::MAX {
                return Err(Error::domain("sequence is not a permutation of the vertices"));
            }
            rank[v] = i;
        }
        Ok(VertexOrder { rank })
    }

    pub fn n(&self) -> usize {
        self.rank.len()
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Vertices from smallest to largest.
    pub fn sequence(&self) -> Vec<usize> {
        let mut seq = vec![0; self.rank.len()];
        for (v, &r) in self.rank.iter().enumerate() {
            seq[r] = v;
        }
        seq
    }

    pub fn precedes(&self, u: usize, v: usize) -> bool {
        self.rank[u] < self.rank[v]
    }

    pub fn to_text(&self) -> String {
        self.rank.iter().map(|r| format!("{r}\n")).collect()
    }

    pub fn parse(text: &str) -> Result<VertexOrder> {
        let rank = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| l.parse().map_err(|_| Error::Parse(format!("bad rank `{l}`"))))
            .collect::<Result<Vec<usize>>>()?;
        VertexOrder::new(rank).map_err(|e| Error::Parse(e.to_string()))
    }
}
