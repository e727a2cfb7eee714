use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// The variable `x_{v,i}`: vertex `v` receives colour `i` (colours start at 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Variable {
    pub vertex: usize,
    pub colour: usize,
}

impl Variable {
    pub fn new(vertex: usize, colour: usize) -> Variable {
        Variable { vertex, colour }
    }

    /// Flat index `vertex·k + (colour − 1)`, shared by every serialization.
    pub fn flat_index(&self, k: usize) -> usize {
        self.vertex * k + (self.colour - 1)
    }

    pub fn from_flat_index(index: usize, k: usize) -> Variable {
        Variable::new(index / k, index % k + 1)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{},{}]", self.vertex, self.colour)
    }
}

/// A product of distinct variables. Stored as a sorted, duplicate-free list,
/// so `x·x = x` holds structurally. The empty monomial is the constant 1.
///
/// The derived `Ord` is a plain storage order used for map keys; admissible
/// comparisons go through [`MonomialOrder`](crate::MonomialOrder).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<Variable>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(x: Variable) -> Monomial {
        Monomial(vec![x])
    }

    pub fn from_vars(vars: impl IntoIterator<Item = Variable>) -> Monomial {
        let mut v: Vec<Variable> = vars.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Monomial(v)
    }

    pub fn vars(&self) -> &[Variable] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: &Variable) -> bool {
        self.0.binary_search(x).is_ok()
    }

    /// Multilinear divisibility: every variable of `self` occurs in `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|x| it.any(|y| y == x))
    }

    /// The multilinear product, i.e. the union of variable sets.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    pub fn with(&self, x: Variable) -> Monomial {
        self.mul(&Monomial::var(x))
    }

    pub fn without(&self, x: &Variable) -> Monomial {
        Monomial(self.0.iter().copied().filter(|y| y != x).collect())
    }

    /// The vertex set `V(m)`.
    pub fn vertices(&self) -> BTreeSet<usize> {
        self.0.iter().map(|x| x.vertex).collect()
    }
}

impl FromIterator<Variable> for Monomial {
    fn from_iter<I: IntoIterator<Item = Variable>>(iter: I) -> Self {
        Monomial::from_vars(iter)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}
