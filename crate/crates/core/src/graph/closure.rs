//! Descendants, hops and lassos, closures, and resolution closures.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::{Graph, VertexOrder};

/// Every vertex reachable from `u` along a path whose ranks strictly
/// decrease, including `u` itself.
pub fn descendants(g: &Graph, ord: &VertexOrder, u: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut out = u.clone();
    let mut queue: VecDeque<usize> = u.iter().copied().collect();
    while let Some(v) = queue.pop_front() {
        let r = ord.rank(v);
        for &w in g.neighbours(v) {
            if ord.rank(w) < r && out.insert(w) {
                queue.push_back(w);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HopKind {
    /// A path or cycle with `τ` edges.
    Hop(usize),
    Lasso,
}

/// A hop or a lasso with respect to some reference set, given as its walk.
///
/// A hop's walk starts and ends in the reference set (the same vertex for
/// a cycle) and its interior avoids it. A lasso's walk is
/// `(v1, v2, v3, v4, v2)` with only `v1` in the reference set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopOrLasso {
    pub kind: HopKind,
    pub vertices: Vec<usize>,
}

impl HopOrLasso {
    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.vertices.iter().copied().collect()
    }

    /// Checks the shape against `g` and the reference set `w`.
    pub fn is_valid(&self, g: &Graph, w: &BTreeSet<usize>) -> bool {
        let vs = &self.vertices;
        if vs.windows(2).any(|p| !g.has_edge(p[0], p[1])) {
            return false;
        }
        match self.kind {
            HopKind::Hop(t) => {
                if !(2..=4).contains(&t) || vs.len() != t + 1 {
                    return false;
                }
                let (first, last) = (vs[0], vs[t]);
                let interior = &vs[1..t];
                let distinct: BTreeSet<usize> = interior.iter().copied().collect();
                w.contains(&first)
                    && w.contains(&last)
                    && (first != last || t >= 3)
                    && distinct.len() == interior.len()
                    && interior.iter().all(|v| !w.contains(v))
            }
            HopKind::Lasso => {
                vs.len() == 5
                    && vs[1] == vs[4]
                    && w.contains(&vs[0])
                    && vs[1..4].iter().all(|v| !w.contains(v))
                    && vs[..4].iter().collect::<BTreeSet<_>>().len() == 4
            }
        }
    }
}

/// The first hop or lasso with respect to `w`, searching by walk length
/// and then lexicographically by vertex sequence.
pub fn find_hop_or_lasso(g: &Graph, w: &BTreeSet<usize>) -> Option<HopOrLasso> {
    for len in 2..=4 {
        for &start in w {
            let mut walk = vec![start];
            if let Some(found) = search(g, w, len, &mut walk) {
                return Some(found);
            }
        }
    }
    None
}

fn search(g: &Graph, w: &BTreeSet<usize>, len: usize, walk: &mut Vec<usize>) -> Option<HopOrLasso> {
    let last = *walk.last().expect("walk is never empty");
    let steps = walk.len() - 1;
    for &next in g.neighbours(last) {
        if steps + 1 == len {
            let closes_hop = w.contains(&next) && (next != walk[0] || len >= 3) && steps >= 1;
            let closes_lasso = len == 4 && next == walk[1];
            if closes_hop || closes_lasso {
                let mut vertices = walk.clone();
                vertices.push(next);
                let kind = if closes_hop { HopKind::Hop(len) } else { HopKind::Lasso };
                return Some(HopOrLasso { kind, vertices });
            }
        } else if !w.contains(&next) && !walk[1..].contains(&next) {
            walk.push(next);
            let found = search(g, w, len, walk);
            walk.pop();
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

pub fn is_closed(g: &Graph, ord: &VertexOrder, w: &BTreeSet<usize>) -> bool {
    descendants(g, ord, w).len() == w.len() && find_hop_or_lasso(g, w).is_none()
}

/// The closure of `u` with the hops and lassos that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureTrace {
    pub closure: BTreeSet<usize>,
    pub steps: Vec<HopOrLasso>,
    /// `u` together with every vertex of every step.
    pub witness: BTreeSet<usize>,
}

pub fn closure_with_witness(g: &Graph, ord: &VertexOrder, u: &BTreeSet<usize>) -> ClosureTrace {
    let mut current = descendants(g, ord, u);
    let mut steps = Vec::new();
    let mut witness = u.clone();
    while let Some(q) = find_hop_or_lasso(g, &current) {
        let vs = q.vertex_set();
        witness.extend(vs.iter().copied());
        current.extend(vs);
        current = descendants(g, ord, &current);
        steps.push(q);
    }
    ClosureTrace {
        closure: current,
        steps,
        witness,
    }
}

/// The unique smallest closed superset of `u`.
pub fn closure(g: &Graph, ord: &VertexOrder, u: &BTreeSet<usize>) -> BTreeSet<usize> {
    closure_with_witness(g, ord, u).closure
}

/// The smallest superset of `u` in which every outside vertex has at most
/// one neighbour inside, by repeatedly absorbing vertices with two.
pub fn resolution_closure(g: &Graph, u: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut inside = u.clone();
    let mut count = vec![0usize; g.n()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &v in u {
        for &x in g.neighbours(v) {
            count[x] += 1;
            if count[x] == 2 && !inside.contains(&x) {
                queue.push_back(x);
            }
        }
    }
    while let Some(x) = queue.pop_front() {
        if !inside.insert(x) {
            continue;
        }
        for &y in g.neighbours(x) {
            count[y] += 1;
            if count[y] >= 2 && !inside.contains(&y) {
                queue.push_back(y);
            }
        }
    }
    inside
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    /// Smallest closed superset of `u`, by trying subsets in order of size.
    fn brute_closure(g: &Graph, ord: &VertexOrder, u: &BTreeSet<usize>) -> BTreeSet<usize> {
        let n = g.n();
        let base: u32 = u.iter().map(|&v| 1u32 << v).sum();
        let mut closed: Vec<u32> = (0..1u32 << n)
            .filter(|m| m & base == base)
            .filter(|&m| is_closed(g, ord, &(0..n).filter(|v| m >> v & 1 == 1).collect()))
            .collect();
        closed.sort_by_key(|m| m.count_ones());
        let best = closed[0];
        assert!(closed.iter().all(|&m| m & best == best), "unique minimal closed superset");
        (0..n).filter(|v| best >> v & 1 == 1).collect()
    }

    #[test]
    fn descendants_follow_decreasing_ranks() {
        let g = Graph::path(3);
        let ord = VertexOrder::identity(3);
        assert_eq!(descendants(&g, &ord, &set(&[2])), set(&[0, 1, 2]));
        assert_eq!(descendants(&g, &ord, &set(&[0])), set(&[0]));
        let ord = VertexOrder::new(vec![0, 2, 1]).unwrap();
        assert_eq!(descendants(&g, &ord, &set(&[1])), set(&[0, 1, 2]));
        assert_eq!(descendants(&g, &ord, &set(&[2])), set(&[2]));
        assert_eq!(descendants(&Graph::empty(4), &ord_n(4), &set(&[1, 3])), set(&[1, 3]));
    }

    fn ord_n(n: usize) -> VertexOrder {
        VertexOrder::identity(n)
    }

    #[test]
    fn two_hop_in_a_four_cycle() {
        let g = Graph::cycle(4);
        let w = set(&[1, 3]);
        let q = find_hop_or_lasso(&g, &w).unwrap();
        assert_eq!(q.kind, HopKind::Hop(2));
        assert_eq!(q.vertices, vec![1, 0, 3]);
        assert!(q.is_valid(&g, &w));
        assert_eq!(closure(&g, &ord_n(4), &w), set(&[0, 1, 2, 3]));
        assert!(find_hop_or_lasso(&g, &set(&[0, 1, 2, 3])).is_none());
    }

    #[test]
    fn paw_is_a_lasso() {
        // pendant 0 attached to the triangle 1, 2, 3
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (1, 3)]).unwrap();
        let w = set(&[0]);
        let q = find_hop_or_lasso(&g, &w).unwrap();
        assert_eq!(q.kind, HopKind::Lasso);
        assert_eq!(q.vertices, vec![0, 1, 2, 3, 1]);
        assert!(q.is_valid(&g, &w));
    }

    #[test]
    fn triangle_through_one_vertex_is_a_three_hop() {
        let g = Graph::cycle(3);
        let q = find_hop_or_lasso(&g, &set(&[0])).unwrap();
        assert_eq!(q.kind, HopKind::Hop(3));
        assert_eq!(q.vertices, vec![0, 1, 2, 0]);
    }

    #[test]
    fn trivial_closures() {
        let g = Graph::petersen();
        let ord = ord_n(10);
        assert!(closure(&g, &ord, &BTreeSet::new()).is_empty());
        let e = Graph::empty(5);
        assert_eq!(closure(&e, &ord_n(5), &set(&[1, 4])), set(&[1, 4]));
        let all: BTreeSet<usize> = (0..10).collect();
        assert!(find_hop_or_lasso(&g, &all).is_none());
    }

    #[test]
    fn resolution_closure_examples() {
        assert_eq!(resolution_closure(&Graph::cycle(3), &set(&[0])), set(&[0]));
        assert_eq!(resolution_closure(&Graph::complete(4), &set(&[0, 1])), set(&[0, 1, 2, 3]));
        let g = Graph::petersen();
        let c = resolution_closure(&g, &set(&[0, 2]));
        assert_eq!(resolution_closure(&g, &c), c);
        for v in 0..10 {
            if !c.contains(&v) {
                assert!(g.neighbours_in(v, &c).count() <= 1);
            }
        }
    }

    fn small_graph() -> impl Strategy<Value = (Graph, VertexOrder, u32, u32)> {
        (2usize..=7).prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                Just(n),
                proptest::collection::vec(proptest::bool::weighted(0.4), pairs),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
                0u32..(1 << n),
                0u32..(1 << n),
            )
        })
        .prop_map(|(n, bits, perm, a, b)| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            (Graph::from_edges(n, edges).unwrap(), VertexOrder::new(perm).unwrap(), a, b)
        })
    }

    fn mask(n: usize, m: u32) -> BTreeSet<usize> {
        (0..n).filter(|v| m >> v & 1 == 1).collect()
    }

    proptest! {
        #[test]
        fn closure_is_the_minimal_closed_superset((g, ord, a, _b) in small_graph()) {
            let u = mask(g.n(), a);
            let trace = closure_with_witness(&g, &ord, &u);
            prop_assert!(is_closed(&g, &ord, &trace.closure));
            prop_assert_eq!(&trace.closure, &brute_closure(&g, &ord, &u));
            prop_assert_eq!(descendants(&g, &ord, &trace.witness), trace.closure.clone());
            let mut w = descendants(&g, &ord, &u);
            for q in &trace.steps {
                prop_assert!(q.is_valid(&g, &w));
                w.extend(q.vertex_set());
                w = descendants(&g, &ord, &w);
            }
        }

        #[test]
        fn closure_is_monotone((g, ord, a, b) in small_graph()) {
            let small = mask(g.n(), a & b);
            let large = mask(g.n(), a);
            prop_assert!(closure(&g, &ord, &small).is_subset(&closure(&g, &ord, &large)));
        }

        #[test]
        fn descendants_are_idempotent((g, ord, a, _b) in small_graph()) {
            let d = descendants(&g, &ord, &mask(g.n(), a));
            prop_assert_eq!(descendants(&g, &ord, &d), d);
        }

        #[test]
        fn resolution_closure_is_minimal((g, _ord, a, _b) in small_graph()) {
            let n = g.n();
            let u = mask(n, a);
            let c = resolution_closure(&g, &u);
            let ok = |s: &BTreeSet<usize>| (0..n).all(|v| s.contains(&v) || g.neighbours_in(v, s).count() <= 1);
            prop_assert!(ok(&c));
            for m in 0u32..(1 << n) {
                let s = mask(n, m);
                if u.is_subset(&s) && ok(&s) {
                    prop_assert!(c.is_subset(&s));
                }
            }
        }
    }
}
