use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use super::engine::{self, ComponentEngine, RawPoly};
use crate::algebra::{Field, Monomial, MonomialOrder, Polynomial, Variable};
use crate::error::{Error, Result};

#[derive(Clone)]
struct Component {
    /// Variables in increasing monomial order; position = local index.
    vars: Vec<Variable>,
    engine: Arc<dyn ComponentEngine>,
}

type CacheKey = (Field, Vec<Variable>, Vec<RawPolyKey>);
type RawPolyKey = Vec<(Vec<usize>, String)>;

/// Shares finished component bases between Gröbner computations whose
/// generator sets split into identical variable-connected pieces.
#[derive(Default)]
pub struct GbCache {
    map: Mutex<HashMap<CacheKey, Arc<dyn ComponentEngine>>>,
}

impl GbCache {
    pub fn new() -> GbCache {
        GbCache::default()
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Debug for GbCache {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GbCache({} components)", self.len())
    }
}

/// Reduced Gröbner basis of an ideal in the Boolean quotient.
///
/// The Boolean axioms `x² − x` hold structurally: every polynomial is kept
/// multilinear, so they never appear as explicit basis elements. Generators
/// are split into variable-connected components, each handled by its own
/// basis; since the pieces share no variables, their union is a Gröbner
/// basis of the whole ideal.
#[derive(Clone)]
pub struct GroebnerBasis {
    field: Field,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
    inconsistent: bool,
    components: Vec<Component>,
    locate: BTreeMap<Variable, (usize, usize)>,
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroebnerBasis")
            .field("field", &self.field)
            .field("generators", &self.generators.len())
            .field("components", &self.components.len())
            .field("inconsistent", &self.inconsistent)
            .finish()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl GroebnerBasis {
    pub fn new(field: Field, generators: &[Polynomial], order: &MonomialOrder) -> Result<GroebnerBasis> {
        GroebnerBasis::build(field, generators, order, None)
    }

    pub fn with_cache(
        field: Field,
        generators: &[Polynomial],
        order: &MonomialOrder,
        cache: &GbCache,
    ) -> Result<GroebnerBasis> {
        GroebnerBasis::build(field, generators, order, Some(cache))
    }

    fn build(
        field: Field,
        generators: &[Polynomial],
        order: &MonomialOrder,
        cache: Option<&GbCache>,
    ) -> Result<GroebnerBasis> {
        let mut out = GroebnerBasis {
            field,
            order: order.clone(),
            generators: generators.to_vec(),
            inconsistent: false,
            components: Vec::new(),
            locate: BTreeMap::new(),
        };
        let mut vars: Vec<Variable> = Vec::new();
        for g in generators {
            if g.field() != field {
                return Err(Error::domain(format!("generator over {} in an ideal over {field}", g.field())));
            }
            for x in g.variables() {
                order.key(&x)?;
                vars.push(x);
            }
            if !g.is_zero() && g.is_constant() {
                out.inconsistent = true;
            }
        }
        if out.inconsistent {
            return Ok(out);
        }
        vars.sort_by_key(|x| order.key(x).expect("checked"));
        vars.dedup();
        let index: BTreeMap<Variable, usize> = vars.iter().enumerate().map(|(i, x)| (*x, i)).collect();

        let mut parent: Vec<usize> = (0..vars.len()).collect();
        for g in generators {
            let gv: Vec<usize> = g.variables().iter().map(|x| index[x]).collect();
            for w in gv.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a.max(b)] = a.min(b);
            }
        }
        // Components in order of their smallest variable; members keep the
        // global increasing order.
        let mut comp_of_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut members: Vec<Vec<Variable>> = Vec::new();
        for i in 0..vars.len() {
            let r = find(&mut parent, i);
            let c = *comp_of_root.entry(r).or_insert_with(|| {
                members.push(Vec::new());
                members.len() - 1
            });
            let local = members[c].len();
            members[c].push(vars[i]);
            out.locate.insert(vars[i], (c, local));
        }
        let mut comp_gens: Vec<Vec<RawPoly>> = vec![Vec::new(); members.len()];
        for g in generators.iter().filter(|g| !g.is_zero()) {
            let first = *g.variables().iter().next().expect("nonconstant");
            let c = out.locate[&first].0;
            let raw: RawPoly = g
                .terms()
                .map(|(m, s)| (m.vars().iter().map(|x| out.locate[x].1).collect(), s.clone()))
                .collect();
            comp_gens[c].push(raw);
        }
        for (vars, gens) in members.into_iter().zip(comp_gens) {
            let engine = match cache {
                Some(cache) => {
                    let key: CacheKey = (
                        field,
                        vars.clone(),
                        gens.iter()
                            .map(|g| g.iter().map(|(i, s)| (i.clone(), s.to_string())).collect())
                            .collect(),
                    );
                    let hit = cache.map.lock().expect("cache lock").get(&key).cloned();
                    match hit {
                        Some(e) => e,
                        None => {
                            let e: Arc<dyn ComponentEngine> = Arc::from(engine::build(field, vars.len(), &gens)?);
                            cache.map.lock().expect("cache lock").insert(key, e.clone());
                            e
                        }
                    }
                }
                None => Arc::from(engine::build(field, vars.len(), &gens)?),
            };
            if engine.is_one() {
                out.inconsistent = true;
            }
            out.components.push(Component { vars, engine });
        }
        if out.inconsistent {
            out.components.clear();
            out.locate.clear();
        }
        Ok(out)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Whether the ideal contains 1, i.e. the generators have no common root.
    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    fn to_poly(&self, comp: &Component, raw: &RawPoly) -> Polynomial {
        Polynomial::from_terms(
            self.field,
            raw.iter()
                .map(|(idx, c)| (Monomial::from_vars(idx.iter().map(|&i| comp.vars[i])), c.clone())),
        )
        .expect("engine coefficients lie in the field")
    }

    /// The reduced basis, each component's elements in increasing order of
    /// leading monomial.
    pub fn basis(&self) -> Vec<Polynomial> {
        if self.inconsistent {
            return vec![Polynomial::one(self.field)];
        }
        self.components
            .iter()
            .flat_map(|c| c.engine.basis().into_iter().map(move |raw| (c, raw)))
            .map(|(c, raw)| self.to_poly(c, &raw))
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        if self.inconsistent {
            return vec![Monomial::one()];
        }
        self.components
            .iter()
            .flat_map(|c| {
                c.engine
                    .basis()
                    .into_iter()
                    .map(move |raw| Monomial::from_vars(raw[0].0.iter().map(|&i| c.vars[i])))
            })
            .collect()
    }

    /// Splits `m` into per-component local index lists and the foreign part.
    fn split(&self, m: &Monomial) -> (BTreeMap<usize, Vec<usize>>, Vec<Variable>) {
        let mut parts: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut foreign = Vec::new();
        for x in m.vars() {
            match self.locate.get(x) {
                Some(&(c, i)) => parts.entry(c).or_default().push(i),
                None => foreign.push(*x),
            }
        }
        (parts, foreign)
    }

    /// Whether `m` is the leading monomial of some element of the ideal.
    pub fn is_reducible(&self, m: &Monomial) -> bool {
        if self.inconsistent {
            return true;
        }
        let (parts, _) = self.split(m);
        parts
            .iter()
            .any(|(&c, idx)| self.components[c].engine.reducible(idx))
    }

    /// Normal form of a single monomial.
    pub fn reduce_monomial(&self, m: &Monomial) -> Polynomial {
        if self.inconsistent {
            return Polynomial::zero(self.field);
        }
        let (parts, foreign) = self.split(m);
        let mut acc = Polynomial::monomial(self.field, Monomial::from_vars(foreign));
        for (c, idx) in parts {
            let comp = &self.components[c];
            let nf = comp.engine.normal_form(&vec![(idx, self.field.one())]);
            acc = acc
                .multiply(&self.to_poly(comp, &nf))
                .expect("same field");
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// The unique `r` with `p − r` in the ideal and no reducible monomial.
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.field() != self.field {
            return Err(Error::domain(format!(
                "polynomial over {} reduced in an ideal over {}",
                p.field(),
                self.field
            )));
        }
        let mut out = Polynomial::zero(self.field);
        for (m, c) in p.terms() {
            let nf = self.reduce_monomial(m);
            for (t, d) in nf.terms() {
                out.add_term(t.clone(), &self.field.mul(c, d));
            }
        }
        Ok(out)
    }

    pub fn ideal_membership(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }
}
