use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Field, Monomial, Scalar, Variable};
use crate::error::{Error, Result};

/// A point of the Boolean cube, restricted to the variables it names.
pub type Assignment = BTreeMap<Variable, bool>;

/// A multilinear polynomial with exact coefficients.
///
/// The term map never stores a zero coefficient, so equal polynomials have
/// identical representations and `==` is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(field: Field) -> Polynomial {
        Polynomial {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: Field) -> Polynomial {
        Polynomial::constant(field, field.one())
    }

    pub fn constant(field: Field, c: Scalar) -> Polynomial {
        Polynomial::term(field, Monomial::one(), c)
    }

    pub fn var(field: Field, x: Variable) -> Polynomial {
        Polynomial::term(field, Monomial::var(x), field.one())
    }

    /// `c·m`. Panics if `c` is not an element of `field`.
    pub fn term(field: Field, m: Monomial, c: Scalar) -> Polynomial {
        assert!(field.contains(&c), "coefficient {c} is not in {field}");
        let mut terms = BTreeMap::new();
        if !field.is_zero(&c) {
            terms.insert(m, c);
        }
        Polynomial { field, terms }
    }

    pub fn monomial(field: Field, m: Monomial) -> Polynomial {
        Polynomial::term(field, m, field.one())
    }

    /// Sums the given terms, combining repeated monomials.
    pub fn from_terms(
        field: Field,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Polynomial> {
        let mut p = Polynomial::zero(field);
        for (m, c) in terms {
            if !field.contains(&c) {
                return Err(Error::domain(format!("coefficient {c} is not in {field}")));
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    /// `Σ_{x ∈ vars} x − 1`, the shape of a vertex axiom.
    pub fn sum_minus_one(field: Field, vars: impl IntoIterator<Item = Variable>) -> Polynomial {
        let mut p = Polynomial::constant(field, field.from_i64(-1));
        for x in vars {
            p.add_term(Monomial::var(x), &field.one());
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if self.field.is_zero(c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.field.add(e.get(), c);
                if self.field.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Terms in storage order (not the admissible order).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl DoubleEndedIterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether this is a constant, including zero.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .is_some_and(|c| *c == self.field.one())
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms.keys().flat_map(|m| m.vars().iter().copied()).collect()
    }

    fn same_field(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::domain(format!(
                "mixed fields: {} and {}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_field(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, a: &Scalar) -> Result<Polynomial> {
        if !self.field.contains(a) {
            return Err(Error::domain(format!("scalar {a} is not in {}", self.field)));
        }
        if self.field.is_zero(a) {
            return Ok(Polynomial::zero(self.field));
        }
        Ok(Polynomial {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.mul(c, a)))
                .collect(),
        })
    }

    /// The product in the Boolean quotient.
    pub fn multiply(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_field(other)?;
        let mut out = Polynomial::zero(self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &self.field.mul(c1, c2));
            }
        }
        Ok(out)
    }

    /// `m·p` for a monomial `m`.
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        let mut out = Polynomial::zero(self.field);
        for (t, c) in &self.terms {
            out.add_term(t.mul(m), c);
        }
        out
    }

    pub fn evaluate(&self, a: &Assignment) -> Result<Scalar> {
        self.evaluate_with(|x| a.get(&x).copied())
    }

    /// Evaluates with a lookup that returns `None` for unassigned variables.
    pub fn evaluate_with(&self, lookup: impl Fn(Variable) -> Option<bool>) -> Result<Scalar> {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut on = true;
            for &x in m.vars() {
                match lookup(x) {
                    Some(b) => on &= b,
                    None => return Err(Error::domain(format!("variable {x} is unassigned"))),
                }
            }
            if on {
                acc = self.field.add(&acc, c);
            }
        }
        Ok(acc)
    }

    /// Replaces every variable in the domain of `rho` by its image.
    /// Images must live over the same field.
    pub fn substitute(&self, rho: &BTreeMap<Variable, Polynomial>) -> Result<Polynomial> {
        for img in rho.values() {
            self.same_field(img)?;
        }
        let mut out = Polynomial::zero(self.field);
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut prod = Polynomial::constant(self.field, c.clone());
            for x in m.vars() {
                match rho.get(x) {
                    Some(img) => prod = prod.multiply(img)?,
                    None => kept.push(*x),
                }
                if prod.is_zero() {
                    break;
                }
            }
            let prod = prod.mul_monomial(&Monomial::from_vars(kept));
            for (t, d) in prod.terms {
                out.add_term(t, &d);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Largest degree first reads naturally; ties keep storage order.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(v: usize) -> Variable {
        Variable::new(v, 1)
    }

    fn field_of(tag: u8) -> Field {
        match tag % 3 {
            0 => Field::Prime(2),
            1 => Field::Prime(5),
            _ => Field::Rational,
        }
    }

    /// Random polynomial on variables x[0..n] with small integer coefficients.
    fn arb_poly(n: usize) -> impl Strategy<Value = Vec<(u32, i64)>> {
        prop::collection::vec((0u32..1 << n, -3i64..=3), 0..6)
    }

    fn build(field: Field, terms: &[(u32, i64)]) -> Polynomial {
        Polynomial::from_terms(
            field,
            terms.iter().map(|&(mask, c)| {
                (
                    Monomial::from_vars((0..32).filter(|i| mask >> i & 1 == 1).map(|i| x(i as usize))),
                    field.from_i64(c),
                )
            }),
        )
        .unwrap()
    }

    fn point(n: usize, bits: u32) -> Assignment {
        (0..n).map(|i| (x(i), bits >> i & 1 == 1)).collect()
    }

    /// Two multilinear polynomials are equal iff they agree on the cube.
    fn agree_on_cube(n: usize, p: &Polynomial, q: &Polynomial) -> bool {
        (0u32..1 << n).all(|b| p.evaluate(&point(n, b)).unwrap() == q.evaluate(&point(n, b)).unwrap())
    }

    #[test]
    fn square_of_variable_collapses() {
        let f = Field::Rational;
        let p = Polynomial::var(f, x(0));
        assert_eq!(p.multiply(&p).unwrap(), p);
    }

    #[test]
    fn small_products() {
        let f = Field::Prime(5);
        let xp = Polynomial::var(f, x(0));
        let yp = Polynomial::var(f, x(1));
        let lhs = xp.add(&yp).unwrap().multiply(&xp).unwrap();
        let rhs = xp
            .add(&Polynomial::monomial(f, Monomial::from_vars([x(0), x(1)])))
            .unwrap();
        assert_eq!(lhs, rhs);
        assert!(agree_on_cube(2, &lhs, &rhs));
        assert!(xp.multiply(&Polynomial::zero(f)).unwrap().is_zero());
    }

    #[test]
    fn additive_identities() {
        let f = Field::gf2();
        let xp = Polynomial::var(f, x(0));
        assert!(xp.add(&xp).unwrap().is_zero());
        let q = Field::Rational;
        let a = Polynomial::var(q, x(0)).add(&Polynomial::one(q)).unwrap();
        let b = Polynomial::var(q, x(1)).sub(&Polynomial::one(q)).unwrap();
        let s = a.add(&b).unwrap();
        assert_eq!(s, Polynomial::var(q, x(0)).add(&Polynomial::var(q, x(1))).unwrap());
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = Polynomial::one(Field::Prime(5));
        let b = Polynomial::one(Field::Rational);
        assert!(a.add(&b).is_err());
        assert!(a.multiply(&b).is_err());
        assert!(a.scale(&Scalar::Mod(7)).is_err());
    }

    #[test]
    fn evaluation_of_axiom_shapes() {
        let f = Field::Rational;
        let vars = [Variable::new(0, 1), Variable::new(0, 2), Variable::new(0, 3)];
        let vertex = Polynomial::sum_minus_one(f, vars);
        for c in 0..3 {
            let a: Assignment = vars.iter().enumerate().map(|(i, v)| (*v, i == c)).collect();
            assert!(f.is_zero(&vertex.evaluate(&a).unwrap()));
        }
        let edge = Polynomial::monomial(f, Monomial::from_vars([Variable::new(0, 1), Variable::new(1, 1)]));
        let ones: Assignment = [(Variable::new(0, 1), true), (Variable::new(1, 1), true)].into();
        assert_eq!(edge.evaluate(&ones).unwrap(), f.one());
        let proper: Assignment = [(Variable::new(0, 1), true), (Variable::new(1, 1), false)].into();
        assert!(f.is_zero(&edge.evaluate(&proper).unwrap()));
        assert!(edge.evaluate(&Assignment::new()).is_err());
    }

    #[test]
    fn substitution_examples() {
        let f = Field::Rational;
        let xp = Polynomial::var(f, x(0));
        let rho: BTreeMap<_, _> = [(x(0), Polynomial::one(f))].into();
        assert!(xp.substitute(&rho).unwrap().is_one());

        let (u2, v2, v3) = (Variable::new(0, 2), Variable::new(1, 2), Variable::new(1, 3));
        let p = Polynomial::monomial(f, Monomial::from_vars([u2, v2]));
        let rho: BTreeMap<_, _> = [(u2, Polynomial::var(f, v3))].into();
        assert_eq!(
            p.substitute(&rho).unwrap(),
            Polynomial::monomial(f, Monomial::from_vars([v2, v3]))
        );
    }

    #[test]
    fn display_is_readable() {
        let f = Field::Rational;
        let p = Polynomial::sum_minus_one(f, [Variable::new(0, 1), Variable::new(0, 2)]);
        assert_eq!(p.to_string(), "x[0,1] + x[0,2] - 1");
    }

    proptest! {
        #[test]
        fn ring_laws_hold_on_the_cube(
            tag in 0u8..3,
            a in arb_poly(4), b in arb_poly(4), c in arb_poly(4)
        ) {
            let f = field_of(tag);
            let (p, q, r) = (build(f, &a), build(f, &b), build(f, &c));
            let pq = p.multiply(&q).unwrap();
            prop_assert_eq!(&pq, &q.multiply(&p).unwrap());
            prop_assert_eq!(pq.multiply(&r).unwrap(), p.multiply(&q.multiply(&r).unwrap()).unwrap());
            let lhs = p.multiply(&q.add(&r).unwrap()).unwrap();
            let rhs = pq.add(&p.multiply(&r).unwrap()).unwrap();
            prop_assert!(agree_on_cube(4, &lhs, &rhs));
            prop_assert_eq!(lhs, rhs);
            // pointwise product agrees with the multilinear product
            for bits in 0u32..16 {
                let pt = point(4, bits);
                let prod = f.mul(&p.evaluate(&pt).unwrap(), &q.evaluate(&pt).unwrap());
                prop_assert_eq!(prod, pq.evaluate(&pt).unwrap());
            }
        }

        #[test]
        fn cancellation_leaves_empty_term_map(tag in 0u8..3, a in arb_poly(5)) {
            let f = field_of(tag);
            let p = build(f, &a);
            let z = p.add(&p.scale(&f.from_i64(-1)).unwrap()).unwrap();
            prop_assert_eq!(z.num_terms(), 0);
        }
    }
}
