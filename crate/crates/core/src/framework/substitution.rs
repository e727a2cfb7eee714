use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::FrameworkContext;
use crate::algebra::{Field, Monomial, MonomialOrder, Polynomial, Variable};
use crate::error::{Error, Result};
use crate::graph::{self, Graph};

/// A 3-colouring of the vertices of `U ∖ W` that are not adjacent to `W`,
/// in which the `U ∖ W`-neighbourhood of every boundary vertex is
/// monochromatic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarColouring {
    /// Colours in `1..=3`, keyed by vertex.
    pub colouring: BTreeMap<usize, usize>,
    /// Vertices of `U ∖ W` with a neighbour in `W`.
    pub boundary: Vec<usize>,
    /// For each boundary vertex, its neighbours in `U ∖ W`.
    pub leaves: BTreeMap<usize, Vec<usize>>,
}

impl StarColouring {
    /// Properness on the coloured vertices and monochromatic leaf sets.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let proper = graph::is_proper_partial(g, &self.colouring);
        let mono = self.leaves.values().all(|ls| {
            let colours: BTreeSet<Option<&usize>> = ls.iter().map(|v| self.colouring.get(v)).collect();
            colours.len() <= 1 && !colours.contains(&None)
        });
        proper && mono
    }
}

/// Contracts each star `{u} ∪ N_{U∖W}(u)` for boundary vertices `u` in
/// `G[U ∖ W]`, 3-colours the result exactly and lifts the colouring back
/// to `U ∖ (W ∪ N_U(W))`.
///
/// Fails with a precondition error when `W` has a hop or lasso inside
/// `U ∪ W`, when a boundary vertex has more than `delta` neighbours in
/// `U ∖ W`, or when the contracted graph is not 3-colourable.
pub fn star_colouring(g: &Graph, u: &BTreeSet<usize>, w: &BTreeSet<usize>, delta: usize) -> Result<StarColouring> {
    let both: BTreeSet<usize> = u.union(w).copied().collect();
    let (local, ids) = g.induced(&both);
    let pos: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let w_local: BTreeSet<usize> = w.iter().map(|v| pos[v]).collect();
    if let Some(q) = graph::find_hop_or_lasso(&local, &w_local) {
        let walk: Vec<usize> = q.vertices.iter().map(|&i| ids[i]).collect();
        return Err(Error::precondition(format!("{:?} {walk:?} with respect to W", q.kind)));
    }
    let outside: BTreeSet<usize> = u.difference(w).copied().collect();
    let boundary: Vec<usize> = outside
        .iter()
        .copied()
        .filter(|&v| g.neighbours(v).iter().any(|x| w.contains(x)))
        .collect();
    let mut leaves = BTreeMap::new();
    let mut star_edges = Vec::new();
    for &b in &boundary {
        let ls: Vec<usize> = g.neighbours_in(b, &outside).collect();
        if ls.len() > delta {
            return Err(Error::precondition(format!(
                "boundary vertex {b} has {} neighbours outside W, more than {delta}",
                ls.len()
            )));
        }
        star_edges.extend(ls.iter().map(|&l| (b, l)));
        leaves.insert(b, ls);
    }
    let (h, h_ids) = g.induced(&outside);
    let h_pos: BTreeMap<usize, usize> = h_ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let local_edges: Vec<(usize, usize)> = star_edges.iter().map(|(a, b)| (h_pos[a], h_pos[b])).collect();
    let (contracted, map) = graph::contract(&h, &local_edges)?;
    let Some(tilde) = graph::is_k_colourable(&contracted, 3)? else {
        return Err(Error::precondition(format!(
            "contracting the stars of {boundary:?} in G[{:?}] leaves a graph that is not 3-colourable",
            outside
        )));
    };
    let boundary_set: BTreeSet<usize> = boundary.iter().copied().collect();
    let colouring: BTreeMap<usize, usize> = outside
        .iter()
        .filter(|v| !boundary_set.contains(v))
        .map(|&v| (v, tilde[map[h_pos[&v]]]))
        .collect();
    let out = StarColouring {
        colouring,
        boundary,
        leaves,
    };
    if !out.is_valid(g) {
        return Err(Error::precondition(
            "lifted colouring is improper or a boundary neighbourhood is not monochromatic",
        ));
    }
    Ok(out)
}

/// The substitution sending variables of `U ∖ W` to constants or to
/// polynomials in the variables of `W`.
#[derive(Clone, Debug)]
pub struct Substitution {
    pub map: BTreeMap<Variable, Polynomial>,
    pub star: StarColouring,
    /// For each boundary vertex: its `W`-neighbour and the two free colours.
    pub anchors: BTreeMap<usize, (usize, usize, usize)>,
}

impl Substitution {
    /// Variables whose image has a monomial not strictly below them.
    pub fn order_violations(&self, order: &MonomialOrder) -> Result<Vec<Variable>> {
        let mut bad = Vec::new();
        for (x, p) in &self.map {
            let source = Monomial::var(*x);
            for m in p.monomials() {
                if order.compare(m, &source)? != std::cmp::Ordering::Less {
                    bad.push(*x);
                    break;
                }
            }
        }
        Ok(bad)
    }
}

/// Builds the substitution for `W ⊆ U`: vertices of `U ∖ W` away from `W`
/// follow [`star_colouring`]; a boundary vertex `u` with `W`-neighbour `v`
/// and free colours `c1 < c2` (the two smallest colours absent from its
/// neighbours in `U ∖ W`) gets `x_{u,c1} ↦ x_{v,c2}`,
/// `x_{u,c2} ↦ Σ_{i≠c2} x_{v,i}` and every other colour `↦ 0`.
pub fn substitution(
    g: &Graph,
    k: usize,
    field: Field,
    u: &BTreeSet<usize>,
    w: &BTreeSet<usize>,
    delta: usize,
) -> Result<Substitution> {
    if !w.is_subset(u) {
        return Err(Error::precondition("W must be a subset of U"));
    }
    let outside: BTreeSet<usize> = u.difference(w).copied().collect();
    for &b in &outside {
        let anchors = g.neighbours_in(b, w).count();
        if anchors >= 2 {
            return Err(Error::precondition(format!("vertex {b} has {anchors} neighbours in W")));
        }
    }
    let star = star_colouring(g, u, w, delta)?;
    let x = Variable::new;
    let mut map = BTreeMap::new();
    for (&v, &c) in &star.colouring {
        for i in 1..=k {
            let image = if i == c { Polynomial::one(field) } else { Polynomial::zero(field) };
            map.insert(x(v, i), image);
        }
    }
    let mut anchors = BTreeMap::new();
    for (&b, leaves) in &star.leaves {
        let v = g.neighbours_in(b, w).next().expect("boundary vertex has a W-neighbour");
        let used: BTreeSet<usize> = leaves
            .iter()
            .map(|l| {
                star.colouring
                    .get(l)
                    .copied()
                    .ok_or_else(|| Error::precondition(format!("boundary vertices {b} and {l} are adjacent")))
            })
            .collect::<Result<_>>()?;
        let free: Vec<usize> = (1..=k).filter(|i| !used.contains(i)).take(2).collect();
        let [c1, c2] = free[..] else {
            return Err(Error::precondition(format!("vertex {b} has fewer than two free colours among {k}")));
        };
        for i in 1..=k {
            let image = if i == c1 {
                Polynomial::var(field, x(v, c2))
            } else if i == c2 {
                let mut p = Polynomial::zero(field);
                for j in (1..=k).filter(|&j| j != c2) {
                    p = p.add(&Polynomial::var(field, x(v, j)))?;
                }
                p
            } else {
                Polynomial::zero(field)
            };
            map.insert(x(b, i), image);
        }
        anchors.insert(b, (v, c1, c2));
    }
    Ok(Substitution { map, star, anchors })
}

impl FrameworkContext {
    /// [`substitution`] on this context's graph, with `W` required to be
    /// closed under the context's vertex order.
    pub fn substitution_rho(&self, u: &BTreeSet<usize>, w: &BTreeSet<usize>) -> Result<Substitution> {
        if !graph::is_closed(self.graph(), &self.vertex_order, w) {
            return Err(Error::precondition("W is not closed"));
        }
        substitution(self.graph(), self.k(), self.field(), u, w, self.delta)
    }
}
