use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::{Assignment, Field, Polynomial, Variable};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Literal {
    pub var: Variable,
    pub positive: bool,
}

/// The CNF colourability formula over the variables `x_{v,i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CnfFormula {
    pub n: usize,
    pub k: usize,
    pub clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    /// Wide clauses `∨_i x_{v,i}`, then `¬x_{v,i} ∨ ¬x_{v,j}` for `i < j`,
    /// then `¬x_{u,i} ∨ ¬x_{v,i}` per edge and colour.
    pub fn encode(graph: &Graph, k: usize) -> CnfFormula {
        let x = Variable::new;
        let pos = |var| Literal { var, positive: true };
        let neg = |var| Literal { var, positive: false };
        let n = graph.n();
        let mut clauses = Vec::new();
        for v in 0..n {
            clauses.push((1..=k).map(|i| pos(x(v, i))).collect());
        }
        for v in 0..n {
            for i in 1..=k {
                for j in i + 1..=k {
                    clauses.push(vec![neg(x(v, i)), neg(x(v, j))]);
                }
            }
        }
        for (u, v) in graph.edges() {
            for i in 1..=k {
                clauses.push(vec![neg(x(u, i)), neg(x(v, i))]);
            }
        }
        CnfFormula { n, k, clauses }
    }

    pub fn num_vars(&self) -> usize {
        self.n * self.k
    }

    pub fn satisfied_by(&self, a: &Assignment) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| a.get(&l.var).copied().unwrap_or(false) == l.positive))
    }

    /// DIMACS text; variable `x_{v,i}` is numbered `v·k + i`.
    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars(), self.clauses.len());
        for clause in &self.clauses {
            for l in clause {
                let id = (l.var.flat_index(self.k) + 1) as i64;
                write!(s, "{} ", if l.positive { id } else { -id }).expect("writing to a String");
            }
            s.push_str("0\n");
        }
        s
    }
}

/// Translates each clause into the product of `(1 − x)` for positive and
/// `x` for negative literals, which vanishes exactly where the clause holds.
/// The Boolean axioms are implicit in the multilinear representation.
pub fn cnf_to_polynomials(formula: &CnfFormula, field: Field) -> Vec<Polynomial> {
    formula
        .clauses
        .iter()
        .map(|clause| {
            clause.iter().fold(Polynomial::one(field), |acc, l| {
                let x = Polynomial::var(field, l.var);
                let factor = if l.positive {
                    Polynomial::one(field).sub(&x).expect("same field")
                } else {
                    x
                };
                acc.multiply(&factor).expect("same field")
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_clause_counts_and_header() {
        let f = CnfFormula::encode(&Graph::complete(3), 3);
        assert_eq!(f.clauses.len(), 21);
        assert!(f.to_dimacs().starts_with("p cnf 9 21\n1 2 3 0\n"));
    }

    #[test]
    fn clause_translation_shapes() {
        let q = Field::Rational;
        let (a, b) = (Variable::new(0, 1), Variable::new(1, 1));
        let clause = CnfFormula {
            n: 2,
            k: 1,
            clauses: vec![
                vec![Literal { var: a, positive: true }, Literal { var: b, positive: true }],
                vec![Literal { var: a, positive: false }],
            ],
        };
        let polys = cnf_to_polynomials(&clause, q);
        let one = Polynomial::one(q);
        let expected = one
            .sub(&Polynomial::var(q, a))
            .unwrap()
            .multiply(&one.sub(&Polynomial::var(q, b)).unwrap())
            .unwrap();
        assert_eq!(polys[0], expected);
        assert_eq!(polys[1], Polynomial::var(q, a));
    }
}
