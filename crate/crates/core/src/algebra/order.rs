use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{Monomial, Polynomial, Variable};
use crate::error::{Error, Result};

/// Degree-then-lex order induced by a vertex order and the colour indices.
///
/// Variables are ranked by `rank(v)·k + (colour − 1)`, so `x_{u,i} ≺ x_{v,j}`
/// iff `u` precedes `v`, or `u = v` and `i < j`. Monomials compare by degree
/// and then lexicographically on their variables listed from the largest
/// downward.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialOrder {
    rank: Vec<usize>,
    k: usize,
}

impl MonomialOrder {
    /// `rank[v]` is the position of vertex `v`; it must be a permutation.
    pub fn new(rank: Vec<usize>, k: usize) -> Result<MonomialOrder> {
        if k == 0 {
            return Err(Error::domain("colour count must be at least 1"));
        }
        let mut seen = vec![false; rank.len()];
        for &r in &rank {
            if r >= rank.len() || std::mem::replace(&mut seen[r], true) {
                return Err(Error::domain("vertex ranks are not a permutation"));
            }
        }
        Ok(MonomialOrder { rank, k })
    }

    /// Vertex ids in their natural order.
    pub fn identity(n: usize, k: usize) -> MonomialOrder {
        MonomialOrder::new((0..n).collect(), k).expect("identity is a permutation")
    }

    pub fn num_vertices(&self) -> usize {
        self.rank.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Position of `x` in the variable order; errors outside the universe.
    pub fn key(&self, x: &Variable) -> Result<usize> {
        if x.vertex >= self.rank.len() || x.colour == 0 || x.colour > self.k {
            return Err(Error::domain(format!(
                "variable {x} outside the order's universe (n = {}, k = {})",
                self.rank.len(),
                self.k
            )));
        }
        Ok(self.rank[x.vertex] * self.k + x.colour - 1)
    }

    fn sorted_keys(&self, m: &Monomial) -> Result<Vec<usize>> {
        let mut keys = m.vars().iter().map(|x| self.key(x)).collect::<Result<Vec<_>>>()?;
        keys.sort_unstable_by(|a, b| b.cmp(a));
        Ok(keys)
    }

    pub fn compare(&self, m1: &Monomial, m2: &Monomial) -> Result<Ordering> {
        let a = self.sorted_keys(m1)?;
        let b = self.sorted_keys(m2)?;
        Ok(a.len().cmp(&b.len()).then_with(|| a.cmp(&b)))
    }

    pub fn compare_vars(&self, x: &Variable, y: &Variable) -> Result<Ordering> {
        Ok(self.key(x)?.cmp(&self.key(y)?))
    }

    pub fn leading_monomial(&self, p: &Polynomial) -> Result<Monomial> {
        let mut best: Option<(Vec<usize>, &Monomial)> = None;
        for (m, _) in p.terms() {
            let keys = self.sorted_keys(m)?;
            let better = match &best {
                None => true,
                Some((bk, _)) => keys.len().cmp(&bk.len()).then_with(|| keys.cmp(bk)).is_gt(),
            };
            if better {
                best = Some((keys, m));
            }
        }
        best.map(|(_, m)| m.clone())
            .ok_or_else(|| Error::domain("the zero polynomial has no leading monomial"))
    }

    /// Sorts monomials from largest to smallest.
    pub fn sort_descending(&self, ms: &mut [Monomial]) -> Result<()> {
        for m in ms.iter() {
            self.sorted_keys(m)?;
        }
        ms.sort_by(|a, b| self.compare(b, a).expect("validated above"));
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn x(v: usize, c: usize) -> Variable {
        Variable::new(v, c)
    }

    fn all_monomials(vars: &[Variable]) -> Vec<Monomial> {
        (0u32..1 << vars.len())
            .map(|mask| {
                Monomial::from_vars(
                    vars.iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, v)| *v),
                )
            })
            .collect()
    }

    #[test]
    fn one_is_minimum() {
        let ord = MonomialOrder::identity(2, 2);
        assert_eq!(ord.compare(&Monomial::one(), &Monomial::var(x(0, 1))).unwrap(), Ordering::Less);
    }

    #[test]
    fn vertex_rank_decides_between_singletons() {
        // vertex 1 precedes vertex 0
        let ord = MonomialOrder::new(vec![1, 0], 1).unwrap();
        let a = Monomial::var(x(1, 1));
        let b = Monomial::var(x(0, 1));
        assert_eq!(ord.compare(&a, &b).unwrap(), Ordering::Less);
    }

    #[test]
    fn degree_dominates() {
        for rank in [vec![0, 1], vec![1, 0]] {
            let ord = MonomialOrder::new(rank, 3).unwrap();
            let big = Monomial::from_vars([x(0, 1), x(0, 2)]);
            let small = Monomial::var(x(1, 3));
            assert_eq!(ord.compare(&big, &small).unwrap(), Ordering::Greater);
        }
    }

    #[test]
    fn leading_monomial_examples() {
        let f = Field::Rational;
        let ord = MonomialOrder::identity(3, 1);
        let p = Polynomial::from_terms(
            f,
            [
                (Monomial::var(x(0, 1)), f.one()),
                (Monomial::var(x(1, 1)), f.one()),
                (Monomial::var(x(2, 1)), f.one()),
                (Monomial::one(), f.from_i64(-1)),
            ],
        )
        .unwrap();
        assert_eq!(ord.leading_monomial(&p).unwrap(), Monomial::var(x(2, 1)));

        let ord = MonomialOrder::identity(2, 3);
        let q = Polynomial::from_terms(
            f,
            [
                (Monomial::from_vars([x(0, 1), x(0, 2)]), f.one()),
                (Monomial::var(x(1, 3)), f.one()),
            ],
        )
        .unwrap();
        assert_eq!(ord.leading_monomial(&q).unwrap(), Monomial::from_vars([x(0, 1), x(0, 2)]));
        assert!(ord.leading_monomial(&Polynomial::zero(f)).is_err());
    }

    #[test]
    fn unknown_variables_are_domain_errors() {
        let ord = MonomialOrder::identity(2, 2);
        assert!(ord.compare(&Monomial::var(x(5, 1)), &Monomial::one()).is_err());
        assert!(ord.compare(&Monomial::var(x(0, 3)), &Monomial::one()).is_err());
        assert!(MonomialOrder::new(vec![0, 0], 2).is_err());
    }

    #[test]
    fn total_strict_and_admissible_on_four_variables() {
        // two vertices, two colours, with vertex 1 ranked first
        let ord = MonomialOrder::new(vec![1, 0], 2).unwrap();
        let vars = [x(0, 1), x(0, 2), x(1, 1), x(1, 2)];
        let ms = all_monomials(&vars);
        for a in &ms {
            assert_eq!(ord.compare(a, a).unwrap(), Ordering::Equal);
            if !a.is_one() {
                assert_eq!(ord.compare(&Monomial::one(), a).unwrap(), Ordering::Less);
            }
            for b in &ms {
                let ab = ord.compare(a, b).unwrap();
                assert_eq!(ab, ord.compare(b, a).unwrap().reverse());
                if a != b {
                    assert_ne!(ab, Ordering::Equal);
                }
                for c in &ms {
                    if ab.is_lt() && ord.compare(b, c).unwrap().is_lt() {
                        assert!(ord.compare(a, c).unwrap().is_lt());
                    }
                    let disjoint = c.vars().iter().all(|v| !a.contains(v) && !b.contains(v));
                    if ab.is_lt() && disjoint {
                        assert!(ord.compare(&a.mul(c), &b.mul(c)).unwrap().is_lt());
                    }
                }
            }
        }
    }
}
