use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::algebra::{Field, Monomial, MonomialOrder, Polynomial, Variable};
use crate::encoding::{Axiom, ColInstance};
use crate::error::{Error, Result};
use crate::graph::{self, Graph, VertexOrder};
use crate::ideal::{GbCache, GroebnerBasis};

/// Colouring search nodes spent on the residual graph before falling back
/// to a greedy colouring.
pub const RESIDUAL_COLOURING_NODES: u64 = 5_000_000;

/// Closures larger than this many vertices are not handed to the Gröbner
/// engine; checks that need them are reported as inconclusive.
pub const MAX_ALGEBRA_VERTICES: usize = 40;

/// Everything the lower-bound construction fixes up front: the vertices
/// of degree at least `Δ` (`T_Δ`), a proper colouring of the rest, the
/// vertex order derived from both, and the monomial order it induces.
///
/// The vertex order lists `T_Δ` first by increasing id, then the other
/// vertices by colour class and id. Computed closures and Gröbner bases
/// are memoised.
#[derive(Debug)]
pub struct FrameworkContext {
    pub instance: ColInstance,
    pub delta: usize,
    pub t_delta: BTreeSet<usize>,
    /// Colour of each vertex outside `T_Δ` in `1..=c`; `0` on `T_Δ`.
    pub colouring: Vec<usize>,
    pub c: usize,
    /// Whether `c` is the exact chromatic number of `G[V ∖ T_Δ]`.
    pub colouring_exact: bool,
    pub vertex_order: VertexOrder,
    pub monomial_order: MonomialOrder,
    pub max_algebra_vertices: usize,
    closures: Mutex<HashMap<Vec<usize>, Arc<BTreeSet<usize>>>>,
    bases: Mutex<HashMap<Vec<usize>, Arc<GroebnerBasis>>>,
    cache: GbCache,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContextSummary {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub field: Field,
    pub delta: usize,
    pub t_delta: Vec<usize>,
    pub c: usize,
    pub colouring_exact: bool,
    pub vertex_sequence: Vec<usize>,
}

impl FrameworkContext {
    pub fn build(g: &Graph, k: usize, field: Field, delta: usize) -> Result<FrameworkContext> {
        FrameworkContext::build_with_budget(g, k, field, delta, RESIDUAL_COLOURING_NODES)
    }

    pub fn build_with_budget(g: &Graph, k: usize, field: Field, delta: usize, nodes: u64) -> Result<FrameworkContext> {
        let instance = ColInstance::encode(g, k, field)?;
        let t_delta = graph::high_degree_cover(g, delta)?;
        let rest: BTreeSet<usize> = (0..g.n()).filter(|v| !t_delta.contains(v)).collect();
        let (residual, ids) = g.induced(&rest);
        let (c, local, exact) = match graph::chromatic_colouring_with_budget(&residual, nodes) {
            Ok((c, col)) => (c, col, true),
            Err(Error::Resource { .. }) => {
                let col = graph::greedy_colouring(&residual);
                (col.iter().copied().max().unwrap_or(0), col, false)
            }
            Err(e) => return Err(e),
        };
        let mut colouring = vec![0; g.n()];
        for (i, &v) in ids.iter().enumerate() {
            colouring[v] = local[i];
        }
        let mut rest_sorted: Vec<usize> = rest.into_iter().collect();
        rest_sorted.sort_by_key(|&v| (colouring[v], v));
        let sequence: Vec<usize> = t_delta.iter().copied().chain(rest_sorted).collect();
        let vertex_order = VertexOrder::from_sequence(&sequence)?;
        let monomial_order = MonomialOrder::new(vertex_order.ranks().to_vec(), k)?;
        Ok(FrameworkContext {
            instance,
            delta,
            t_delta,
            colouring,
            c,
            colouring_exact: exact,
            vertex_order,
            monomial_order,
            max_algebra_vertices: MAX_ALGEBRA_VERTICES,
            closures: Mutex::new(HashMap::new()),
            bases: Mutex::new(HashMap::new()),
            cache: GbCache::new(),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.instance.graph
    }

    pub fn k(&self) -> usize {
        self.instance.k
    }

    pub fn field(&self) -> Field {
        self.instance.field
    }

    pub fn summary(&self) -> ContextSummary {
        ContextSummary {
            n: self.graph().n(),
            m: self.graph().m(),
            k: self.k(),
            field: self.field(),
            delta: self.delta,
            t_delta: self.t_delta.iter().copied().collect(),
            c: self.c,
            colouring_exact: self.colouring_exact,
            vertex_sequence: self.vertex_order.sequence(),
        }
    }

    /// All variables `x_{v,i}` in increasing monomial order.
    pub fn variables(&self) -> Vec<Variable> {
        let k = self.k();
        self.vertex_order
            .sequence()
            .into_iter()
            .flat_map(|v| (1..=k).map(move |i| Variable::new(v, i)))
            .collect()
    }

    /// Closure of `V(m) ∪ T_Δ`.
    pub fn monomial_closure(&self, m: &Monomial) -> Arc<BTreeSet<usize>> {
        self.closure_of_vertices(&m.vertices())
    }

    /// Closure of `vertices ∪ T_Δ`.
    pub fn closure_of_vertices(&self, vertices: &BTreeSet<usize>) -> Arc<BTreeSet<usize>> {
        let key: Vec<usize> = vertices.iter().copied().collect();
        if let Some(hit) = self.closures.lock().expect("closure memo").get(&key) {
            return hit.clone();
        }
        let mut u = vertices.clone();
        u.extend(self.t_delta.iter().copied());
        let cl = Arc::new(graph::closure(self.graph(), &self.vertex_order, &u));
        self.closures.lock().expect("closure memo").insert(key, cl.clone());
        cl
    }

    /// The axioms `S(m)`: all axioms of the subgraph induced by the
    /// monomial closure of `m`.
    pub fn support(&self, m: &Monomial) -> Vec<Axiom> {
        let cl = self.monomial_closure(m);
        self.instance
            .axioms
            .iter()
            .filter(|a| a.vertices().is_subset(&cl))
            .cloned()
            .collect()
    }

    /// Gröbner basis of the axioms of `G[set]`.
    pub fn basis_of(&self, set: &BTreeSet<usize>) -> Result<Arc<GroebnerBasis>> {
        let key: Vec<usize> = set.iter().copied().collect();
        if let Some(hit) = self.bases.lock().expect("basis memo").get(&key) {
            return Ok(hit.clone());
        }
        if set.len() > self.max_algebra_vertices {
            return Err(Error::resource("closure vertices passed to the Gröbner engine", self.max_algebra_vertices as u64));
        }
        let sub = ColInstance::encode_induced(self.graph(), set, self.k(), self.field())?;
        let gb = Arc::new(GroebnerBasis::with_cache(
            self.field(),
            &sub.polynomials(),
            &self.monomial_order,
            &self.cache,
        )?);
        self.bases.lock().expect("basis memo").insert(key, gb.clone());
        Ok(gb)
    }

    /// `R_⟨S(m)⟩(m)`.
    pub fn reduce_in_support(&self, m: &Monomial) -> Result<Polynomial> {
        let gb = self.basis_of(&self.monomial_closure(m))?;
        Ok(gb.reduce_monomial(m))
    }

    /// Whether `m` is reducible modulo the axioms of `G[set]`.
    pub fn reducible_modulo(&self, m: &Monomial, set: &BTreeSet<usize>) -> Result<bool> {
        Ok(self.basis_of(set)?.is_reducible(m))
    }

    /// The operator sending each monomial `m` of `p` to its normal form
    /// modulo `⟨S(m)⟩`, extended linearly.
    pub fn pseudo_reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.field());
        for (m, a) in p.terms() {
            let r = self.reduce_in_support(m)?.scale(a)?;
            out = out.add(&r)?;
        }
        Ok(out)
    }

    /// Whether `G[Cl(m)]` has a proper `k`-colouring, i.e. `S(m)` is satisfiable.
    pub fn support_satisfiable(&self, m: &Monomial) -> Result<bool> {
        graph::subgraph_colourable(self.graph(), &self.monomial_closure(m), self.k())
    }

    /// Number of vertices on the longest rank-decreasing path in `G[V ∖ T_Δ]`.
    pub fn longest_decreasing_path(&self) -> usize {
        let g = self.graph();
        let mut longest = vec![0usize; g.n()];
        for v in self.vertex_order.sequence() {
            if self.t_delta.contains(&v) {
                continue;
            }
            let below = g
                .neighbours(v)
                .iter()
                .filter(|&&u| !self.t_delta.contains(&u) && self.vertex_order.precedes(u, v))
                .map(|&u| longest[u])
                .max()
                .unwrap_or(0);
            longest[v] = below + 1;
        }
        longest.into_iter().max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: usize, c: usize) -> Variable {
        Variable::new(v, c)
    }

    #[test]
    fn trivial_contexts() {
        let ctx = FrameworkContext::build(&Graph::empty(4), 3, Field::gf2(), 1).unwrap();
        assert!(ctx.t_delta.is_empty());
        assert_eq!(ctx.c, 1);
        assert_eq!(ctx.vertex_order.sequence(), vec![0, 1, 2, 3]);
        assert!(ctx.monomial_closure(&Monomial::one()).is_empty());
        assert!(ctx.support(&Monomial::one()).is_empty());
        assert_eq!(*ctx.monomial_closure(&Monomial::var(x(2, 1))), [2].into());
        assert_eq!(ctx.support(&Monomial::var(x(2, 1))).len(), 7);

        let star = FrameworkContext::build(&Graph::star(5), 3, Field::gf2(), 3).unwrap();
        assert_eq!(star.t_delta, [0].into());
        assert_eq!(star.c, 1);
        assert_eq!(star.vertex_order.rank(0), 0);
    }

    #[test]
    fn closure_on_a_four_cycle() {
        let ctx = FrameworkContext::build(&Graph::cycle(4), 3, Field::gf2(), 5).unwrap();
        let m = Monomial::from_vars([x(0, 1), x(2, 2)]);
        assert_eq!(ctx.monomial_closure(&m).len(), 4);
    }

    #[test]
    fn pseudo_reduction_on_an_isolated_vertex() {
        let ctx = FrameworkContext::build(&Graph::empty(1), 3, Field::rationals(), 1).unwrap();
        let f = ctx.field();
        let r1 = ctx.pseudo_reduce(&Polynomial::var(f, x(0, 1))).unwrap();
        assert_eq!(r1, Polynomial::var(f, x(0, 1)));
        let r3 = ctx.pseudo_reduce(&Polynomial::var(f, x(0, 3))).unwrap();
        let expected = Polynomial::one(f)
            .sub(&Polynomial::var(f, x(0, 1)))
            .unwrap()
            .sub(&Polynomial::var(f, x(0, 2)))
            .unwrap();
        assert_eq!(r3, expected);
        assert!(ctx.pseudo_reduce(&Polynomial::one(f)).unwrap().is_one());
    }

    #[test]
    fn sampled_context_has_short_decreasing_paths() {
        for seed in 0..5 {
            let g = graph::sample_gnp(200, 6.0 / 200.0, seed).unwrap();
            let ctx = FrameworkContext::build(&g, 3, Field::gf2(), 6).unwrap();
            assert!(ctx.c <= 6);
            assert!(ctx.longest_decreasing_path() <= ctx.c);
            assert!(ctx.t_delta.iter().all(|&t| ctx.t_delta.iter().count() > ctx.vertex_order.rank(t)));
        }
    }
}
