//! Checking `(ℓ, ε)`-sparsity: every vertex set `U` with `|U| ≤ ℓ` spans at
//! most `(1 + ε)|U|` edges.
//!
//! Three strategies are used, cheapest first:
//!
//! * graphs with at most 20 vertices: every subset of size at most `ℓ`;
//! * a maximum-density test by minimum cut over the whole graph; when no set
//!   of any size violates the bound, the graph is sparse for every `ℓ`;
//! * otherwise connected vertex sets of size at most `ℓ` are enumerated
//!   inside the subgraph that remains after repeatedly deleting vertices of
//!   degree at most `1 + ε`. Inclusion-minimal violators are connected and
//!   have minimum degree above `1 + ε`, so this is exhaustive.

use std::collections::BTreeSet;

use num_rational::Rational64;
use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};

/// Default number of candidate sets examined before giving up.
pub const SPARSITY_BUDGET: u64 = 100_000_000;

const EXHAUSTIVE_MAX_N: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SparsityMode {
    Exhaustive,
    DensityBound,
    ConnectedExhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparsityReport {
    pub sparse: bool,
    pub witness: Option<Vec<usize>>,
    pub ell: usize,
    #[serde(serialize_with = "ratio_text")]
    pub epsilon: Rational64,
    pub mode: SparsityMode,
    pub sets_examined: u64,
}

fn ratio_text<S: serde::Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Parses `ε` written as a fraction (`"1/3"`), an integer, or a decimal (`"0.25"`).
pub fn parse_ratio(text: &str) -> Result<Rational64> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if t.contains('/') {
        return t.parse::<Rational64>().map_err(|_| bad());
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !(int.chars().chain(frac.chars())).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    if frac.len() > 15 {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let num: i64 = digits.parse().map_err(|_| bad())?;
    let den = 10i64.pow(frac.len() as u32);
    let r = Rational64::new(num, den);
    Ok(if neg { -r } else { r })
}

/// Whether `|E(U)| > (1 + ε)|U|`.
pub fn violates(g: &Graph, u: &BTreeSet<usize>, epsilon: Rational64) -> bool {
    exceeds(g.edges_within(u), u.len(), epsilon + 1)
}

fn exceeds(edges: usize, size: usize, lambda: Rational64) -> bool {
    // edges > lambda * size, in integers
    (edges as i128) * (*lambda.denom() as i128) > (size as i128) * (*lambda.numer() as i128)
}

pub fn check_sparsity(g: &Graph, ell: usize, epsilon: Rational64) -> Result<SparsityReport> {
    check_sparsity_with_budget(g, ell, epsilon, SPARSITY_BUDGET)
}

pub fn check_sparsity_with_budget(
    g: &Graph,
    ell: usize,
    epsilon: Rational64,
    budget: u64,
) -> Result<SparsityReport> {
    if ell == 0 {
        return Err(Error::domain("ℓ must be at least 1"));
    }
    if epsilon < Rational64::from_integer(0) {
        return Err(Error::domain("ε must be non-negative"));
    }
    let lambda = epsilon + 1;
    let report = |witness: Option<BTreeSet<usize>>, mode, sets_examined| {
        let witness = witness.map(|w| shrink(g, w, lambda));
        if let Some(w) = &witness {
            let ws: BTreeSet<usize> = w.iter().copied().collect();
            if ws.len() > ell || !exceeds(g.edges_within(&ws), ws.len(), lambda) {
                return Err(Error::Invariant("sparsity witness failed re-verification".into()));
            }
        }
        Ok(SparsityReport {
            sparse: witness.is_none(),
            witness,
            ell,
            epsilon,
            mode,
            sets_examined,
        })
    };
    if g.n() <= EXHAUSTIVE_MAX_N {
        let (w, examined) = exhaustive(g, ell, lambda);
        return report(w, SparsityMode::Exhaustive, examined);
    }
    let core = peel(g, lambda);
    match densest_violator(g, &core, lambda) {
        None => report(None, SparsityMode::DensityBound, 1),
        Some(w) if w.len() <= ell => report(Some(w), SparsityMode::DensityBound, 1),
        Some(_) => {
            let (w, examined) = connected_sets(g, &core, ell, lambda, budget)?;
            report(w, SparsityMode::ConnectedExhaustive, examined)
        }
    }
}

/// Removes vertices one at a time while the set stays violating.
fn shrink(g: &Graph, mut w: BTreeSet<usize>, lambda: Rational64) -> Vec<usize> {
    loop {
        let removable = w.iter().copied().find(|&v| {
            let mut smaller = w.clone();
            smaller.remove(&v);
            !smaller.is_empty() && exceeds(g.edges_within(&smaller), smaller.len(), lambda)
        });
        match removable {
            Some(v) => {
                w.remove(&v);
            }
            None => return w.into_iter().collect(),
        }
    }
}

fn exhaustive(g: &Graph, ell: usize, lambda: Rational64) -> (Option<BTreeSet<usize>>, u64) {
    let n = g.n();
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbours(v).iter().map(|&u| 1u32 << u).sum())
        .collect();
    let mut examined = 0;
    for m in 1u32..(1u32 << n) {
        let size = m.count_ones() as usize;
        if size > ell {
            continue;
        }
        examined += 1;
        let twice: u32 = (0..n).filter(|v| m >> v & 1 == 1).map(|v| (adj[v] & m).count_ones()).sum();
        if exceeds(twice as usize / 2, size, lambda) {
            return (Some((0..n).filter(|v| m >> v & 1 == 1).collect()), examined);
        }
    }
    (None, examined)
}

/// Vertices left after repeatedly deleting those with at most `lambda`
/// remaining neighbours.
fn peel(g: &Graph, lambda: Rational64) -> BTreeSet<usize> {
    let limit = lambda.floor().to_integer().max(0) as usize;
    let mut degree: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; g.n()];
    let mut stack: Vec<usize> = (0..g.n()).filter(|&v| degree[v] <= limit).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &u in g.neighbours(v) {
            if alive[u] {
                degree[u] -= 1;
                if degree[u] == limit {
                    stack.push(u);
                }
            }
        }
    }
    (0..g.n()).filter(|&v| alive[v]).collect()
}

/// A set maximising `b·|E(U)| − a·|U|` for `lambda = a/b`, if that maximum
/// is positive. Maximum-weight closure: source → edge (capacity `b`),
/// edge → endpoints (unbounded), vertex → sink (capacity `a`).
fn densest_violator(g: &Graph, core: &BTreeSet<usize>, lambda: Rational64) -> Option<BTreeSet<usize>> {
    let edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|(u, v)| core.contains(u) && core.contains(v))
        .collect();
    if edges.is_empty() {
        return None;
    }
    let verts: Vec<usize> = core.iter().copied().collect();
    let index = |v: usize| verts.binary_search(&v).expect("endpoint in core");
    let (a, b) = (*lambda.numer(), *lambda.denom());
    let m = edges.len();
    let source = 0;
    let sink = 1 + m + verts.len();
    let mut net = Dinic::new(sink + 1);
    for (i, &(u, v)) in edges.iter().enumerate() {
        net.add_edge(source, 1 + i, b);
        net.add_edge(1 + i, 1 + m + index(u), i64::MAX / 4);
        net.add_edge(1 + i, 1 + m + index(v), i64::MAX / 4);
    }
    for j in 0..verts.len() {
        net.add_edge(1 + m + j, sink, a);
    }
    let flow = net.max_flow(source, sink);
    if b * m as i64 - flow <= 0 {
        return None;
    }
    let reach = net.reachable(source);
    let set: BTreeSet<usize> = (0..verts.len())
        .filter(|&j| reach[1 + m + j])
        .map(|j| verts[j])
        .collect();
    Some(set)
}

struct Dinic {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    level: Vec<i32>,
    next: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic {
            head: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
            level: vec![0; n],
            next: vec![0; n],
        }
    }

    fn add_edge(&mut self, u: usize, v: usize, c: i64) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: i64) -> i64 {
        if u == t {
            return pushed;
        }
        while self.next[u] < self.head[u].len() {
            let e = self.head[u][self.next[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                let got = self.dfs(v, t, pushed.min(self.cap[e]));
                if got > 0 {
                    self.cap[e] -= got;
                    self.cap[e ^ 1] += got;
                    return got;
                }
            }
            self.next[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.next.iter_mut().for_each(|x| *x = 0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        flow
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Enumerates each connected subset of `core` with at most `ell` vertices
/// exactly once, extending from its smallest vertex.
fn connected_sets(
    g: &Graph,
    core: &BTreeSet<usize>,
    ell: usize,
    lambda: Rational64,
    budget: u64,
) -> Result<(Option<BTreeSet<usize>>, u64)> {
    struct Search<'a> {
        g: &'a Graph,
        core: &'a BTreeSet<usize>,
        ell: usize,
        lambda: Rational64,
        budget: u64,
        examined: u64,
        members: Vec<usize>,
        in_set: Vec<bool>,
        touching: Vec<u32>,
        edges: usize,
    }

    impl Search<'_> {
        fn add(&mut self, w: usize) {
            self.edges += self.g.neighbours(w).iter().filter(|&&u| self.in_set[u]).count();
            self.in_set[w] = true;
            self.members.push(w);
            for &u in self.g.neighbours(w) {
                self.touching[u] += 1;
            }
        }

        fn remove(&mut self, w: usize) {
            self.members.pop();
            self.in_set[w] = false;
            self.edges -= self.g.neighbours(w).iter().filter(|&&u| self.in_set[u]).count();
            for &u in self.g.neighbours(w) {
                self.touching[u] -= 1;
            }
        }

        fn visit(&mut self, mut ext: Vec<usize>, root: usize) -> Result<bool> {
            self.examined += 1;
            if self.examined > self.budget {
                return Err(Error::resource("connected vertex sets examined", self.budget));
            }
            if exceeds(self.edges, self.members.len(), self.lambda) {
                return Ok(true);
            }
            if self.members.len() == self.ell {
                return Ok(false);
            }
            while let Some(w) = ext.pop() {
                // exclusive neighbours of w: not in the set and not adjacent to it
                let mut next = ext.clone();
                for &u in self.g.neighbours(w) {
                    if u > root && self.core.contains(&u) && !self.in_set[u] && self.touching[u] == 0 {
                        next.push(u);
                    }
                }
                self.add(w);
                if self.visit(next, root)? {
                    return Ok(true);
                }
                self.remove(w);
            }
            Ok(false)
        }
    }

    let mut s = Search {
        g,
        core,
        ell,
        lambda,
        budget,
        examined: 0,
        members: Vec::new(),
        in_set: vec![false; g.n()],
        touching: vec![0; g.n()],
        edges: 0,
    };
    for &root in core {
        s.add(root);
        let ext: Vec<usize> = g
            .neighbours(root)
            .iter()
            .copied()
            .filter(|&u| u > root && core.contains(&u))
            .collect();
        if s.visit(ext, root)? {
            let w = s.members.iter().copied().collect();
            return Ok((Some(w), s.examined));
        }
        s.remove(root);
    }
    Ok((None, s.examined))
}
