use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{Field, Monomial, MonomialOrder, Polynomial, Variable};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxiomKind {
    /// `Σ_i x_{v,i} − 1`: the vertex gets a colour.
    VertexSum { vertex: usize },
    /// `x_{v,i} x_{v,j}` for `i < j`: at most one colour.
    VertexConflict { vertex: usize, c1: usize, c2: usize },
    /// `x_{u,i} x_{v,i}` for an edge `u < v`.
    Edge { u: usize, v: usize, colour: usize },
    /// `x² − x`.
    Boolean { var: Variable },
}

/// One axiom of the colouring system. Boolean axioms have the zero
/// polynomial as their multilinear form; their degree is reported as 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Axiom {
    pub kind: AxiomKind,
    pub polynomial: Polynomial,
}

impl Axiom {
    pub fn degree(&self) -> usize {
        match self.kind {
            AxiomKind::Boolean { .. } => 2,
            _ => self.polynomial.degree(),
        }
    }

    pub fn is_boolean(&self) -> bool {
        matches!(self.kind, AxiomKind::Boolean { .. })
    }

    /// Leading monomial; for `x² − x` this is `x` after the multilinear
    /// collapse.
    pub fn leading_monomial(&self, order: &MonomialOrder) -> Result<Monomial> {
        match self.kind {
            AxiomKind::Boolean { var } => Ok(Monomial::var(var)),
            _ => order.leading_monomial(&self.polynomial),
        }
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        match self.kind {
            AxiomKind::Boolean { var } => [var].into(),
            _ => self.polynomial.variables(),
        }
    }

    /// Vertices the axiom mentions.
    pub fn vertices(&self) -> BTreeSet<usize> {
        match self.kind {
            AxiomKind::VertexSum { vertex } | AxiomKind::VertexConflict { vertex, .. } => [vertex].into(),
            AxiomKind::Edge { u, v, .. } => [u, v].into(),
            AxiomKind::Boolean { var } => [var.vertex].into(),
        }
    }
}

/// The polynomial system `Col(G, k)`, or `Col(G[U], k)` with the original
/// vertex labels kept.
#[derive(Clone, Debug, Serialize)]
pub struct ColInstance {
    pub graph: Graph,
    pub k: usize,
    pub field: Field,
    /// The encoded vertex set, sorted.
    pub vertices: Vec<usize>,
    pub axioms: Vec<Axiom>,
}

impl ColInstance {
    pub fn encode(graph: &Graph, k: usize, field: Field) -> Result<ColInstance> {
        ColInstance::encode_induced(graph, &(0..graph.n()).collect(), k, field)
    }

    /// Axioms of the subgraph induced by `vertices`, on the original labels.
    pub fn encode_induced(
        graph: &Graph,
        vertices: &BTreeSet<usize>,
        k: usize,
        field: Field,
    ) -> Result<ColInstance> {
        if k == 0 {
            return Err(Error::domain("k must be at least 1"));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= graph.n()) {
            return Err(Error::domain(format!("vertex {v} outside the graph")));
        }
        let x = Variable::new;
        let mut axioms = Vec::new();
        for &v in vertices {
            axioms.push(Axiom {
                kind: AxiomKind::VertexSum { vertex: v },
                polynomial: Polynomial::sum_minus_one(field, (1..=k).map(|i| x(v, i))),
            });
        }
        for &v in vertices {
            for i in 1..=k {
                for j in i + 1..=k {
                    axioms.push(Axiom {
                        kind: AxiomKind::VertexConflict { vertex: v, c1: i, c2: j },
                        polynomial: Polynomial::monomial(field, Monomial::from_vars([x(v, i), x(v, j)])),
                    });
                }
            }
        }
        for &u in vertices {
            for &v in graph.neighbours(u).iter().filter(|&&v| v > u && vertices.contains(&v)) {
                for i in 1..=k {
                    axioms.push(Axiom {
                        kind: AxiomKind::Edge { u, v, colour: i },
                        polynomial: Polynomial::monomial(field, Monomial::from_vars([x(u, i), x(v, i)])),
                    });
                }
            }
        }
        for &v in vertices {
            for i in 1..=k {
                axioms.push(Axiom {
                    kind: AxiomKind::Boolean { var: x(v, i) },
                    polynomial: Polynomial::zero(field),
                });
            }
        }
        Ok(ColInstance {
            graph: graph.clone(),
            k,
            field,
            vertices: vertices.iter().copied().collect(),
            axioms,
        })
    }

    /// Multilinear forms of the non-Boolean axioms, in axiom order.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.axioms
            .iter()
            .filter(|a| !a.is_boolean())
            .map(|a| a.polynomial.clone())
            .collect()
    }

    pub fn variables(&self) -> Vec<Variable> {
        self.vertices
            .iter()
            .flat_map(|&v| (1..=self.k).map(move |i| Variable::new(v, i)))
            .collect()
    }

    pub fn num_variables(&self) -> usize {
        self.vertices.len() * self.k
    }

    /// Counts per kind: `(vertex-sum, vertex-conflict, edge, boolean)`.
    pub fn counts(&self) -> (usize, usize, usize, usize) {
        let mut c = (0, 0, 0, 0);
        for a in &self.axioms {
            match a.kind {
                AxiomKind::VertexSum { .. } => c.0 += 1,
                AxiomKind::VertexConflict { .. } => c.1 += 1,
                AxiomKind::Edge { .. } => c.2 += 1,
                AxiomKind::Boolean { .. } => c.3 += 1,
            }
        }
        c
    }

    /// The root of the system corresponding to a colouring of the encoded
    /// vertices (`colour[v]` in `1..=k`).
    pub fn assignment_of(&self, colour: &[usize]) -> crate::algebra::Assignment {
        self.variables()
            .into_iter()
            .map(|x| (x, colour[x.vertex] == x.colour))
            .collect()
    }
}
