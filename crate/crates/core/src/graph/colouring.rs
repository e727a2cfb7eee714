//! Exact and greedy colouring. Colours are `1..=k`.

use std::collections::{BTreeMap, BTreeSet};

use super::Graph;
use crate::error::{Error, Result};

/// Default number of search nodes for exact colouring.
pub const COLOURING_NODES: u64 = 20_000_000;

/// Whether `colour` (indexed by vertex, 0 = uncoloured) has no
/// monochromatic edge among coloured vertices.
pub fn is_proper(g: &Graph, colour: &[usize]) -> bool {
    g.edges()
        .into_iter()
        .all(|(u, v)| colour[u] == 0 || colour[u] != colour[v])
}

/// Whether a partial colouring is proper on the edges it covers.
pub fn is_proper_partial(g: &Graph, colour: &BTreeMap<usize, usize>) -> bool {
    colour
        .iter()
        .all(|(&u, &c)| g.neighbours(u).iter().all(|v| colour.get(v) != Some(&c)))
}

/// Backtracking search for a `k`-colouring of `G[vertices]` that agrees
/// with `fixed`. Vertices are chosen by saturation (number of distinct
/// colours among coloured neighbours), then degree, then id; each
/// connected component is solved separately.
pub struct ColourSearch<'a> {
    g: &'a Graph,
    k: usize,
    budget: u64,
    nodes: u64,
}

impl<'a> ColourSearch<'a> {
    pub fn new(g: &'a Graph, k: usize) -> Self {
        ColourSearch {
            g,
            k,
            budget: COLOURING_NODES,
            nodes: 0,
        }
    }

    pub fn budget(mut self, nodes: u64) -> Self {
        self.budget = nodes;
        self
    }

    /// Search nodes used so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn extend(
        &mut self,
        vertices: &BTreeSet<usize>,
        fixed: &BTreeMap<usize, usize>,
    ) -> Result<Option<BTreeMap<usize, usize>>> {
        let mut colour: BTreeMap<usize, usize> = fixed.clone();
        if fixed.values().any(|&c| c == 0 || c > self.k) {
            return Err(Error::domain(format!("fixed colours must lie in 1..={}", self.k)));
        }
        let all: BTreeSet<usize> = vertices.iter().chain(fixed.keys()).copied().collect();
        if !is_proper_partial_within(self.g, &colour, &all) {
            return Ok(None);
        }
        for comp in components_within(self.g, &all) {
            let free: Vec<usize> = comp.iter().copied().filter(|v| !fixed.contains_key(v)).collect();
            if free.is_empty() {
                continue;
            }
            let set: BTreeSet<usize> = comp.iter().copied().collect();
            match self.solve(&set, &free, &mut colour)? {
                true => {}
                false => return Ok(None),
            }
        }
        Ok(Some(colour))
    }

    fn solve(&mut self, set: &BTreeSet<usize>, free: &[usize], colour: &mut BTreeMap<usize, usize>) -> Result<bool> {
        let g = self.g;
        let k = self.k;
        let idx: BTreeMap<usize, usize> = free.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let nbrs: Vec<Vec<usize>> = free
            .iter()
            .map(|&v| g.neighbours(v).iter().copied().filter(|u| set.contains(u)).collect())
            .collect();
        // forbidden[i][c]: number of neighbours of free[i] with colour c
        let mut forbidden = vec![vec![0u32; k + 1]; free.len()];
        for (i, &v) in free.iter().enumerate() {
            let _ = v;
            for u in &nbrs[i] {
                if let Some(&c) = colour.get(u) {
                    forbidden[i][c] += 1;
                }
            }
        }
        let mut assigned = vec![0usize; free.len()];
        let mut stack: Vec<(usize, usize)> = Vec::new(); // (free index, last colour tried)
        let pick = |assigned: &[usize], forbidden: &[Vec<u32>]| -> Option<usize> {
            let mut best: Option<(usize, usize, std::cmp::Reverse<usize>, usize)> = None;
            for i in 0..assigned.len() {
                if assigned[i] != 0 {
                    continue;
                }
                let sat = forbidden[i][1..].iter().filter(|&&c| c > 0).count();
                let key = (sat, nbrs[i].len(), std::cmp::Reverse(free[i]), i);
                if best.as_ref().is_none_or(|b| key > *b) {
                    best = Some(key);
                }
            }
            best.map(|b| b.3)
        };
        let Some(first) = pick(&assigned, &forbidden) else {
            return Ok(true);
        };
        stack.push((first, 0));
        loop {
            let Some(&mut (i, ref mut last)) = stack.last_mut() else {
                return Ok(false);
            };
            // undo the previous colour of this frame
            if *last != 0 {
                let c = *last;
                for u in &nbrs[i] {
                    if let Some(&j) = idx.get(u) {
                        forbidden[j][c] -= 1;
                    }
                }
                assigned[i] = 0;
            }
            let next = (*last + 1..=k).find(|&c| forbidden[i][c] == 0);
            match next {
                None => {
                    stack.pop();
                }
                Some(c) => {
                    self.nodes += 1;
                    if self.nodes > self.budget {
                        return Err(Error::resource("colouring search nodes", self.budget));
                    }
                    *last = c;
                    assigned[i] = c;
                    for u in &nbrs[i] {
                        if let Some(&j) = idx.get(u) {
                            forbidden[j][c] += 1;
                        }
                    }
                    match pick(&assigned, &forbidden) {
                        None => {
                            for (i, &v) in free.iter().enumerate() {
                                colour.insert(v, assigned[i]);
                            }
                            return Ok(true);
                        }
                        Some(j) => {
                            if (1..=k).all(|c| forbidden[j][c] > 0) {
                                continue;
                            }
                            stack.push((j, 0));
                        }
                    }
                }
            }
        }
    }
}

fn is_proper_partial_within(g: &Graph, colour: &BTreeMap<usize, usize>, set: &BTreeSet<usize>) -> bool {
    colour.iter().all(|(&u, &c)| {
        g.neighbours(u)
            .iter()
            .all(|v| !set.contains(v) || colour.get(v) != Some(&c))
    })
}

fn components_within(g: &Graph, set: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &s in set {
        if !seen.insert(s) {
            continue;
        }
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            for &v in g.neighbours(comp[i]) {
                if set.contains(&v) && seen.insert(v) {
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

/// A proper `k`-colouring of the whole graph, if one exists.
pub fn is_k_colourable(g: &Graph, k: usize) -> Result<Option<Vec<usize>>> {
    k_colouring_with_budget(g, k, COLOURING_NODES)
}

pub fn k_colouring_with_budget(g: &Graph, k: usize, nodes: u64) -> Result<Option<Vec<usize>>> {
    if g.n() == 0 {
        return Ok(Some(Vec::new()));
    }
    if k == 0 {
        return Ok(None);
    }
    let all: BTreeSet<usize> = (0..g.n()).collect();
    let found = ColourSearch::new(g, k).budget(nodes).extend(&all, &BTreeMap::new())?;
    Ok(found.map(|c| c.into_values().collect()))
}

/// Whether `G[vertices]` is `k`-colourable.
pub fn subgraph_colourable(g: &Graph, vertices: &BTreeSet<usize>, k: usize) -> Result<bool> {
    Ok(ColourSearch::new(g, k).extend(vertices, &BTreeMap::new())?.is_some())
}

/// Greedy colouring in saturation order; never fails, may use extra colours.
pub fn greedy_colouring(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colour = vec![0usize; n];
    let mut seen_colours: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colour[v] == 0)
            .max_by_key(|&v| (seen_colours[v].len(), g.degree(v), std::cmp::Reverse(v)))
            .expect("an uncoloured vertex remains");
        let c = (1..).find(|c| !seen_colours[v].contains(c)).expect("unbounded");
        colour[v] = c;
        for &u in g.neighbours(v) {
            seen_colours[u].insert(c);
        }
    }
    colour
}

/// Exact chromatic number together with an optimal colouring.
pub fn chromatic_colouring(g: &Graph) -> Result<(usize, Vec<usize>)> {
    chromatic_colouring_with_budget(g, COLOURING_NODES)
}

pub fn chromatic_colouring_with_budget(g: &Graph, nodes: u64) -> Result<(usize, Vec<usize>)> {
    if g.n() == 0 {
        return Ok((0, Vec::new()));
    }
    let greedy = greedy_colouring(g);
    let upper = greedy.iter().copied().max().unwrap_or(1);
    let mut best = (upper, greedy);
    let lower = if g.m() == 0 { 1 } else { 2 };
    for k in (lower..upper).rev() {
        match k_colouring_with_budget(g, k, nodes)? {
            Some(c) => best = (k, c),
            None => break,
        }
    }
    Ok(best)
}

pub fn chromatic_number(g: &Graph) -> Result<usize> {
    Ok(chromatic_colouring(g)?.0)
}
