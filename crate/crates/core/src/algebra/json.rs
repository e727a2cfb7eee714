//! JSON form of polynomials:
//! `{"field": {"p": 5} | {"q": true}, "terms": [{"vars": [[v, c], ...], "coeff": "a/b"}]}`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Field, Monomial, Polynomial, Variable};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FieldTag {
    P { p: u64 },
    Q { q: bool },
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    vars: Vec<(usize, usize)>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    field: FieldTag,
    terms: Vec<TermJson>,
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            Field::Prime(p) => FieldTag::P { p },
            Field::Rational => FieldTag::Q { q: true },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match FieldTag::deserialize(d)? {
            FieldTag::P { p } => Field::prime(p).map_err(D::Error::custom),
            FieldTag::Q { q: true } => Ok(Field::Rational),
            FieldTag::Q { q: false } => Err(D::Error::custom("field tag {\"q\": false}")),
        }
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let field = match self.field() {
            Field::Prime(p) => FieldTag::P { p },
            Field::Rational => FieldTag::Q { q: true },
        };
        let terms = self
            .terms()
            .map(|(m, c)| TermJson {
                vars: m.vars().iter().map(|x| (x.vertex, x.colour)).collect(),
                coeff: c.to_string(),
            })
            .collect();
        PolyJson { field, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let field = match raw.field {
            FieldTag::P { p } => Field::prime(p).map_err(D::Error::custom)?,
            FieldTag::Q { .. } => Field::Rational,
        };
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            if t.vars.iter().any(|&(_, c)| c == 0) {
                return Err(D::Error::custom("colours are 1-based"));
            }
            let m = Monomial::from_vars(t.vars.into_iter().map(|(v, c)| Variable::new(v, c)));
            let c = field.parse_scalar(&t.coeff).map_err(D::Error::custom)?;
            terms.push((m, c));
        }
        Polynomial::from_terms(field, terms).map_err(D::Error::custom)
    }
}
