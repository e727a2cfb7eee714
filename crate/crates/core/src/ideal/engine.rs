//! Buchberger's algorithm and normal forms in the Boolean quotient, generic
//! over the coefficient arithmetic and the monomial bitset width.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use super::bits::{order, Bits, Graded, Wide};
use crate::algebra::field::{Arith, PrimeArith, RatArith};
use crate::algebra::{Field, Scalar};
use crate::error::{Error, Result};

/// A polynomial over local variable indices, terms as `(indices, coefficient)`.
pub(crate) type RawPoly = Vec<(Vec<usize>, Scalar)>;

/// Upper bound on the number of polynomials Buchberger may create for one
/// component before giving up with a resource error.
pub(crate) const MAX_BASIS_POLYS: usize = 250_000;

/// Object-safe view of a finished basis for one variable component.
pub(crate) trait ComponentEngine: Send + Sync {
    /// Whether the basis is `{1}`.
    fn is_one(&self) -> bool;
    /// Basis elements, leading term first, sorted by ascending leading monomial.
    fn basis(&self) -> Vec<RawPoly>;
    fn reducible(&self, vars: &[usize]) -> bool;
    fn normal_form(&self, p: &RawPoly) -> RawPoly;
}

type Poly<A, B> = Vec<(B, <A as Arith>::E)>;

struct Engine<A: Arith, B: Bits> {
    ar: A,
    basis: Vec<Poly<A, B>>,
    lms: Vec<B>,
}

fn sort_combine<A: Arith, B: Bits>(ar: &A, mut terms: Vec<(B, A::E)>) -> Poly<A, B> {
    terms.sort_by(|a, b| order(&b.0, &a.0));
    let mut out: Poly<A, B> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc = ar.add(lc, &c),
            _ => out.push((m, c)),
        }
    }
    out.retain(|(_, c)| !ar.is_zero(c));
    out
}

/// `c · t ⊙ p` in the Boolean quotient.
fn mul_term<A: Arith, B: Bits>(ar: &A, t: B, c: &A::E, p: &[(B, A::E)]) -> Poly<A, B> {
    sort_combine(ar, p.iter().map(|(m, d)| (m.or(t), ar.mul(c, d))).collect())
}

fn make_monic<A: Arith, B: Bits>(ar: &A, p: &mut Poly<A, B>) {
    if let Some((_, lc)) = p.first() {
        if !ar.is_one(lc) {
            let inv = ar.inv(lc);
            for (_, c) in p.iter_mut() {
                *c = ar.mul(c, &inv);
            }
        }
    }
}

fn find_reducer<B: Bits>(lms: &[B], active: impl Iterator<Item = usize>, t: B) -> Option<usize> {
    let deg = t.count();
    active.into_iter().find(|&i| lms[i].count() <= deg && lms[i].is_subset(t))
}

/// Full normal form of `p` by the monic polynomials `polys[i]`, `i ∈ active`.
fn normal_form<A: Arith, B: Bits>(
    ar: &A,
    polys: &[Poly<A, B>],
    lms: &[B],
    active: &[usize],
    p: Poly<A, B>,
) -> Poly<A, B> {
    let mut work: BTreeMap<Graded<B>, A::E> = p.into_iter().map(|(m, c)| (Graded(m), c)).collect();
    let mut rem = Vec::new();
    while let Some((Graded(t), c)) = work.pop_last() {
        match find_reducer(lms, active.iter().copied(), t) {
            Some(i) => {
                let g = &polys[i];
                let rest = t.minus(lms[i]);
                for (m, d) in &g[1..] {
                    let key = Graded(rest.or(*m));
                    let delta = ar.neg(&ar.mul(&c, d));
                    match work.get_mut(&key) {
                        Some(v) => {
                            *v = ar.add(v, &delta);
                            if ar.is_zero(v) {
                                work.remove(&key);
                            }
                        }
                        None => {
                            work.insert(key, delta);
                        }
                    }
                }
            }
            None => rem.push((t, c)),
        }
    }
    rem
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum PairKind {
    /// S-polynomial of two basis elements.
    Couple(usize),
    /// `x ⊙ g` for a variable `x` of the leading monomial of `g`.
    Field(usize),
}

struct Buchberger<A: Arith, B: Bits> {
    ar: A,
    polys: Vec<Poly<A, B>>,
    lms: Vec<B>,
    active: Vec<usize>,
    pairs: BinaryHeap<Reverse<(Graded<B>, usize, PairKind)>>,
}

impl<A: Arith, B: Bits> Buchberger<A, B> {
    /// Adds a nonzero normal form; returns `true` if it is a constant.
    fn insert(&mut self, mut h: Poly<A, B>) -> Result<bool> {
        make_monic(&self.ar, &mut h);
        let lm = h[0].0;
        if lm.is_empty() {
            return Ok(true);
        }
        if self.polys.len() >= MAX_BASIS_POLYS {
            return Err(Error::resource("Gröbner basis polynomials", MAX_BASIS_POLYS as u64));
        }
        let idx = self.polys.len();
        for &j in &self.active {
            let lj = self.lms[j];
            if !lj.disjoint(lm) {
                self.pairs.push(Reverse((Graded(lj.or(lm)), j, PairKind::Couple(idx))));
            }
        }
        if h.len() > 1 {
            for x in lm.indices() {
                self.pairs.push(Reverse((Graded(lm), idx, PairKind::Field(x))));
            }
        }
        let lms = &self.lms;
        self.active.retain(|&j| !lm.is_subset(lms[j]));
        self.active.push(idx);
        self.polys.push(h);
        self.lms.push(lm);
        Ok(false)
    }

    fn reduce(&self, p: Poly<A, B>) -> Poly<A, B> {
        normal_form(&self.ar, &self.polys, &self.lms, &self.active, p)
    }

    fn s_poly(&self, i: usize, kind: PairKind) -> Poly<A, B> {
        let ar = &self.ar;
        let gi = &self.polys[i];
        match kind {
            PairKind::Field(x) => mul_term(ar, B::single(x), &ar.one(), gi),
            PairKind::Couple(j) => {
                let gj = &self.polys[j];
                let l = self.lms[i].or(self.lms[j]);
                let mut terms: Vec<(B, A::E)> = Vec::with_capacity(gi.len() + gj.len());
                let ti = l.minus(self.lms[i]);
                let tj = l.minus(self.lms[j]);
                terms.extend(gi[1..].iter().map(|(m, c)| (m.or(ti), c.clone())));
                terms.extend(gj[1..].iter().map(|(m, c)| (m.or(tj), ar.neg(c))));
                sort_combine(ar, terms)
            }
        }
    }

    fn run(mut self, gens: Vec<Poly<A, B>>) -> Result<Engine<A, B>> {
        let one = |ar: &A| Engine {
            ar: ar.clone(),
            basis: vec![vec![(B::empty(), ar.one())]],
            lms: vec![B::empty()],
        };
        for g in gens {
            let h = self.reduce(g);
            if !h.is_empty() && self.insert(h)? {
                return Ok(one(&self.ar));
            }
        }
        while let Some(Reverse((_, i, kind))) = self.pairs.pop() {
            let s = self.s_poly(i, kind);
            let h = self.reduce(s);
            if !h.is_empty() && self.insert(h)? {
                return Ok(one(&self.ar));
            }
        }
        // Interreduce the minimal basis.
        let mut active = self.active.clone();
        active.sort_by(|&a, &b| order(&self.lms[a], &self.lms[b]));
        let mut basis = Vec::with_capacity(active.len());
        for &i in &active {
            let g = &self.polys[i];
            let mut tail = self.reduce(g[1..].to_vec());
            let mut p = vec![g[0].clone()];
            p.append(&mut tail);
            basis.push(p);
        }
        let lms = basis.iter().map(|p: &Poly<A, B>| p[0].0).collect();
        Ok(Engine {
            ar: self.ar,
            basis,
            lms,
        })
    }
}

impl<A: Arith, B: Bits> Engine<A, B> {
    fn build(ar: A, gens: &[RawPoly]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|g| to_poly::<A, B>(&ar, g))
            .filter(|g| !g.is_empty())
            .collect();
        Buchberger {
            ar,
            polys: Vec::new(),
            lms: Vec::new(),
            active: Vec::new(),
            pairs: BinaryHeap::new(),
        }
        .run(gens)
    }
}

fn to_poly<A: Arith, B: Bits>(ar: &A, p: &RawPoly) -> Poly<A, B> {
    sort_combine(
        ar,
        p.iter()
            .map(|(idx, c)| (B::from_indices(idx), ar.from_scalar(c)))
            .filter(|(_, c)| !ar.is_zero(c))
            .collect(),
    )
}

fn to_raw<A: Arith, B: Bits>(ar: &A, p: &[(B, A::E)]) -> RawPoly {
    p.iter().map(|(m, c)| (m.indices(), ar.to_scalar(c))).collect()
}

impl<A: Arith, B: Bits> ComponentEngine for Engine<A, B> {
    fn is_one(&self) -> bool {
        self.lms.first().is_some_and(|m| m.is_empty())
    }

    fn basis(&self) -> Vec<RawPoly> {
        self.basis.iter().map(|p| to_raw(&self.ar, p)).collect()
    }

    fn reducible(&self, vars: &[usize]) -> bool {
        let m = B::from_indices(vars);
        self.lms.iter().any(|lm| lm.is_subset(m))
    }

    fn normal_form(&self, p: &RawPoly) -> RawPoly {
        let all: Vec<usize> = (0..self.basis.len()).collect();
        let nf = normal_form(&self.ar, &self.basis, &self.lms, &all, to_poly(&self.ar, p));
        to_raw(&self.ar, &nf)
    }
}

fn build_with<A: Arith>(ar: A, nvars: usize, gens: &[RawPoly]) -> Result<Box<dyn ComponentEngine>> {
    Ok(match nvars {
        0..=64 => Box::new(Engine::<A, u64>::build(ar, gens)?),
        65..=128 => Box::new(Engine::<A, u128>::build(ar, gens)?),
        129..=256 => Box::new(Engine::<A, Wide<4>>::build(ar, gens)?),
        257..=512 => Box::new(Engine::<A, Wide<8>>::build(ar, gens)?),
        513..=1024 => Box::new(Engine::<A, Wide<16>>::build(ar, gens)?),
        _ => return Err(Error::resource("variables in one ideal component", 1024)),
    })
}

/// Computes the reduced basis of the ideal generated by `gens`, whose
/// variables are `0..nvars` numbered in increasing monomial order.
pub(crate) fn build(field: Field, nvars: usize, gens: &[RawPoly]) -> Result<Box<dyn ComponentEngine>> {
    match field {
        Field::Prime(p) => build_with(PrimeArith { p }, nvars, gens),
        Field::Rational => build_with(RatArith, nvars, gens),
    }
}
