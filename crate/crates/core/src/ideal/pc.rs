//! Degree-bounded polynomial calculus as a linear-algebra fixpoint.
//!
//! `V` starts as the span of the axioms of degree at most `D`; every basis
//! row of degree at most `D − 1` is multiplied by every variable and the
//! products are added to the span. A refutation of degree `D` exists iff the
//! constant 1 eventually lies in `V`. Polynomials are kept multilinear, so
//! the Boolean axioms act implicitly; restricting multiplication to rows of
//! degree `D − 1` keeps `x·q` within degree `D` before the multilinear
//! collapse, which is what the Boolean axioms would need to perform it.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::algebra::field::{with_arith, Arith};
use crate::algebra::{Field, Monomial, Polynomial, Scalar, Variable};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct PcConfig {
    /// Refuse to run when the number of monomials of degree `≤ D` exceeds this.
    pub monomial_cap: u64,
    /// Record a derivation that replays to 1 when the result is refutable.
    pub certificate: bool,
    /// Use bit-packed dense rows for GF(2) when no certificate is requested.
    pub gf2_dense: bool,
}

impl Default for PcConfig {
    fn default() -> Self {
        PcConfig {
            monomial_cap: 2_000_000,
            certificate: false,
            gf2_dense: true,
        }
    }
}

/// Largest column count handled by the dense GF(2) path.
const DENSE_COLUMNS: u64 = 1 << 15;

/// One rule application. Lines are numbered from 0 in the order listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum CertStep {
    /// The axiom with this index in the input list.
    Axiom { index: usize },
    /// `var · line`.
    Multiply { var: Variable, line: usize },
    /// `Σ coefficient · line`.
    Combine { terms: Vec<(Scalar, usize)> },
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub field: Field,
    pub degree: usize,
    /// The last line derives the constant 1.
    pub lines: Vec<CertStep>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PcDegreeResult {
    pub refutable: bool,
    pub degree_tried: usize,
    pub span_dimension: usize,
    pub certificate: Option<Certificate>,
    pub warning: Option<String>,
}

fn binomial_prefix_sum(n: usize, d: usize) -> u64 {
    let mut total: u64 = 0;
    let mut c: u64 = 1;
    for i in 0..=d.min(n) {
        total = total.saturating_add(c);
        c = c.saturating_mul((n - i) as u64) / (i as u64 + 1);
    }
    total
}

#[inline]
fn graded_desc(a: &u64, b: &u64) -> std::cmp::Ordering {
    (b.count_ones(), *b).cmp(&(a.count_ones(), *a))
}

struct Tracker {
    lines: Vec<CertStep>,
}

struct Span<A: Arith> {
    ar: A,
    rows: Vec<Vec<(u64, A::E)>>,
    row_line: Vec<usize>,
    pivot: HashMap<u64, usize>,
    track: Option<Tracker>,
}

impl<A: Arith> Span<A> {
    fn push_line(&mut self, step: CertStep) -> usize {
        match &mut self.track {
            Some(t) => {
                t.lines.push(step);
                t.lines.len() - 1
            }
            None => 0,
        }
    }

    /// `v − c·row`, both sorted by decreasing graded order.
    fn axpy(&self, v: &[(u64, A::E)], c: &A::E, row: &[(u64, A::E)]) -> Vec<(u64, A::E)> {
        let ar = &self.ar;
        let mut out = Vec::with_capacity(v.len() + row.len());
        let (mut i, mut j) = (0, 0);
        while i < v.len() || j < row.len() {
            let ord = match (v.get(i), row.get(j)) {
                (Some(a), Some(b)) => graded_desc(&a.0, &b.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    out.push(v[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((row[j].0, ar.neg(&ar.mul(c, &row[j].1))));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = ar.sub(&v[i].1, &ar.mul(c, &row[j].1));
                    if !ar.is_zero(&s) {
                        out.push((v[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Top-reduces `v` against the pivots and stores it if independent.
    fn insert(&mut self, mut v: Vec<(u64, A::E)>, origin: usize) -> Option<usize> {
        let mut combo: Vec<(A::E, usize)> = Vec::new();
        loop {
            let (lm, lc) = match v.first() {
                None => return None,
                Some((m, c)) => (*m, c.clone()),
            };
            match self.pivot.get(&lm) {
                Some(&r) => {
                    v = self.axpy(&v, &lc, &self.rows[r]);
                    if self.track.is_some() {
                        combo.push((self.ar.neg(&lc), self.row_line[r]));
                    }
                }
                None => break,
            }
        }
        let s = self.ar.inv(&v[0].1);
        for (_, c) in v.iter_mut() {
            *c = self.ar.mul(c, &s);
        }
        let line = if self.track.is_some() {
            let mut terms = vec![(self.ar.to_scalar(&s), origin)];
            terms.extend(
                combo
                    .iter()
                    .map(|(c, l)| (self.ar.to_scalar(&self.ar.mul(c, &s)), *l)),
            );
            self.push_line(CertStep::Combine { terms })
        } else {
            0
        };
        let idx = self.rows.len();
        self.pivot.insert(v[0].0, idx);
        self.rows.push(v);
        self.row_line.push(line);
        Some(idx)
    }
}

fn times_var<A: Arith>(ar: &A, bit: u64, row: &[(u64, A::E)]) -> Vec<(u64, A::E)> {
    let mut out: Vec<(u64, A::E)> = row.iter().map(|(m, c)| (m | bit, c.clone())).collect();
    out.sort_by(|a, b| graded_desc(&a.0, &b.0));
    let mut merged: Vec<(u64, A::E)> = Vec::with_capacity(out.len());
    for (m, c) in out {
        match merged.last_mut() {
            Some((lm, lc)) if *lm == m => *lc = ar.add(lc, &c),
            _ => merged.push((m, c)),
        }
    }
    merged.retain(|(_, c)| !ar.is_zero(c));
    merged
}

/// Keeps only the lines the final line depends on, renumbered in order.
fn prune(lines: Vec<CertStep>, last: usize) -> Vec<CertStep> {
    let mut keep = vec![false; lines.len()];
    keep[last] = true;
    for i in (0..=last).rev() {
        if !keep[i] {
            continue;
        }
        match &lines[i] {
            CertStep::Axiom { .. } => {}
            CertStep::Multiply { line, .. } => keep[*line] = true,
            CertStep::Combine { terms } => terms.iter().for_each(|(_, l)| keep[*l] = true),
        }
    }
    let mut renumber = vec![usize::MAX; lines.len()];
    let mut out = Vec::new();
    for (i, step) in lines.into_iter().enumerate().take(last + 1) {
        if !keep[i] {
            continue;
        }
        renumber[i] = out.len();
        out.push(match step {
            CertStep::Multiply { var, line } => CertStep::Multiply {
                var,
                line: renumber[line],
            },
            CertStep::Combine { terms } => CertStep::Combine {
                terms: terms.into_iter().map(|(c, l)| (c, renumber[l])).collect(),
            },
            a => a,
        });
    }
    out
}

struct Prepared {
    vars: Vec<Variable>,
    axioms: Vec<(usize, Vec<(u64, Scalar)>)>,
}

fn prepare(axioms: &[Polynomial], degree: usize) -> Result<Prepared> {
    let mut vars: Vec<Variable> = axioms.iter().flat_map(|p| p.variables()).collect();
    vars.sort_unstable();
    vars.dedup();
    if vars.len() > 64 {
        return Err(Error::resource("variables in the degree-bounded prover", 64));
    }
    let pos: HashMap<Variable, usize> = vars.iter().enumerate().map(|(i, x)| (*x, i)).collect();
    let prepared = axioms
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero() && p.degree() <= degree)
        .map(|(i, p)| {
            let mut terms: Vec<(u64, Scalar)> = p
                .terms()
                .map(|(m, c)| (m.vars().iter().fold(0u64, |a, x| a | 1 << pos[x]), c.clone()))
                .collect();
            terms.sort_by(|a, b| graded_desc(&a.0, &b.0));
            (i, terms)
        })
        .collect();
    Ok(Prepared {
        vars,
        axioms: prepared,
    })
}

fn run_generic<A: Arith>(ar: A, prep: &Prepared, field: Field, degree: usize, track: bool) -> PcDegreeResult {
    let mut span = Span {
        ar: ar.clone(),
        rows: Vec::new(),
        row_line: Vec::new(),
        pivot: HashMap::new(),
        track: track.then(|| Tracker { lines: Vec::new() }),
    };
    let mut queue = VecDeque::new();
    let mut refuted: Option<usize> = None;
    let n = prep.vars.len();

    'outer: {
        for (index, terms) in &prep.axioms {
            let origin = span.push_line(CertStep::Axiom { index: *index });
            let v = terms.iter().map(|(m, c)| (*m, ar.from_scalar(c))).collect();
            if let Some(r) = span.insert(v, origin) {
                if span.rows[r][0].0 == 0 {
                    refuted = Some(r);
                    break 'outer;
                }
                if (span.rows[r][0].0.count_ones() as usize) < degree {
                    queue.push_back(r);
                }
            }
        }
        while let Some(r) = queue.pop_front() {
            for x in 0..n {
                let prod = times_var(&ar, 1 << x, &span.rows[r]);
                let origin = span.push_line(CertStep::Multiply {
                    var: prep.vars[x],
                    line: span.row_line[r],
                });
                if let Some(s) = span.insert(prod, origin) {
                    if span.rows[s][0].0 == 0 {
                        refuted = Some(s);
                        break 'outer;
                    }
                    if (span.rows[s][0].0.count_ones() as usize) < degree {
                        queue.push_back(s);
                    }
                }
            }
        }
    }

    let certificate = match (refuted, span.track.take()) {
        (Some(r), Some(t)) => Some(Certificate {
            field,
            degree,
            lines: prune(t.lines, span.row_line[r]),
        }),
        _ => None,
    };
    PcDegreeResult {
        refutable: refuted.is_some(),
        degree_tried: degree,
        span_dimension: span.rows.len(),
        certificate,
        warning: None,
    }
}

/// The same fixpoint over GF(2) with rows packed into machine words.
fn run_gf2_dense(prep: &Prepared, degree: usize) -> PcDegreeResult {
    let n = prep.vars.len();
    let mut cols: Vec<u64> = (0u64..1 << n).filter(|m| m.count_ones() as usize <= degree).collect();
    cols.sort_by(|a, b| graded_desc(b, a));
    let index: HashMap<u64, usize> = cols.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let words = cols.len().div_ceil(64);
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut pivot: Vec<Option<usize>> = vec![None; cols.len()];
    let mut queue = VecDeque::new();

    let lead = |row: &[u64]| -> Option<usize> {
        row.iter()
            .enumerate()
            .rev()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| 64 * i + 63 - w.leading_zeros() as usize)
    };
    let mut insert = |mut v: Vec<u64>, rows: &mut Vec<Vec<u64>>| -> Option<(usize, usize)> {
        loop {
            let l = lead(&v)?;
            match pivot[l] {
                Some(r) => v.iter_mut().zip(&rows[r]).for_each(|(a, b)| *a ^= b),
                None => {
                    pivot[l] = Some(rows.len());
                    rows.push(v);
                    return Some((rows.len() - 1, l));
                }
            }
        }
    };

    let mut refutable = false;
    'outer: {
        for (_, terms) in &prep.axioms {
            let mut v = vec![0u64; words];
            for (m, c) in terms {
                if *c == Scalar::Mod(1) {
                    let i = index[m];
                    v[i / 64] ^= 1 << (i % 64);
                }
            }
            if let Some((r, l)) = insert(v, &mut rows) {
                if l == 0 {
                    refutable = true;
                    break 'outer;
                }
                if (cols[l].count_ones() as usize) < degree {
                    queue.push_back(r);
                }
            }
        }
        while let Some(r) = queue.pop_front() {
            for x in 0..n {
                let mut v = vec![0u64; words];
                for (w, &word) in rows[r].iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        let i = 64 * w + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        let j = index[&(cols[i] | 1 << x)];
                        v[j / 64] ^= 1 << (j % 64);
                    }
                }
                if let Some((s, l)) = insert(v, &mut rows) {
                    if l == 0 {
                        refutable = true;
                        break 'outer;
                    }
                    if (cols[l].count_ones() as usize) < degree {
                        queue.push_back(s);
                    }
                }
            }
        }
    }
    PcDegreeResult {
        refutable,
        degree_tried: degree,
        span_dimension: rows.len(),
        certificate: None,
        warning: None,
    }
}

/// Decides whether the axioms have a polynomial calculus refutation of
/// degree at most `degree` over `field`.
pub fn pc_degree_refutable(
    axioms: &[Polynomial],
    degree: usize,
    field: Field,
    config: &PcConfig,
) -> Result<PcDegreeResult> {
    if let Some(p) = axioms.iter().find(|p| p.field() != field) {
        return Err(Error::domain(format!("axiom over {} in a system over {field}", p.field())));
    }
    let max_deg = axioms.iter().map(Polynomial::degree).max().unwrap_or(0);
    if degree < max_deg {
        return Ok(PcDegreeResult {
            refutable: false,
            degree_tried: degree,
            span_dimension: 0,
            certificate: None,
            warning: Some(format!(
                "degree {degree} is below the maximum axiom degree {max_deg}; no derivation can start"
            )),
        });
    }
    let prep = prepare(axioms, degree)?;
    let universe = binomial_prefix_sum(prep.vars.len(), degree);
    if universe > config.monomial_cap {
        return Err(Error::resource(
            format!("monomials of degree <= {degree} over {} variables", prep.vars.len()),
            config.monomial_cap,
        ));
    }
    if field == Field::Prime(2) && config.gf2_dense && !config.certificate && universe <= DENSE_COLUMNS {
        return Ok(run_gf2_dense(&prep, degree));
    }
    Ok(with_arith!(field, ar => run_generic(ar, &prep, field, degree, config.certificate)))
}

/// Smallest `D ≤ d_max` at which [`pc_degree_refutable`] succeeds.
pub fn min_refutation_degree(
    axioms: &[Polynomial],
    field: Field,
    d_max: usize,
    config: &PcConfig,
) -> Result<Option<usize>> {
    let start = axioms.iter().map(Polynomial::degree).max().unwrap_or(0);
    for d in start..=d_max {
        if pc_degree_refutable(axioms, d, field, config)?.refutable {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Replays a certificate with plain polynomial arithmetic, checking every
/// rule application and degree bound, and that the last line is 1.
pub fn check_certificate(cert: &Certificate, axioms: &[Polynomial]) -> Result<()> {
    let bad = |i: usize, why: String| Err(Error::Invariant(format!("certificate line {i}: {why}")));
    let mut lines: Vec<Polynomial> = Vec::with_capacity(cert.lines.len());
    for (i, step) in cert.lines.iter().enumerate() {
        let p = match step {
            CertStep::Axiom { index } => match axioms.get(*index) {
                Some(a) => a.clone(),
                None => return bad(i, format!("no axiom {index}")),
            },
            CertStep::Multiply { var, line } => {
                if *line >= i {
                    return bad(i, "forward reference".into());
                }
                if lines[*line].degree() + 1 > cert.degree {
                    return bad(i, "multiplication exceeds the degree bound".into());
                }
                lines[*line].mul_monomial(&Monomial::var(*var))
            }
            CertStep::Combine { terms } => {
                let mut acc = Polynomial::zero(cert.field);
                for (c, line) in terms {
                    if *line >= i {
                        return bad(i, "forward reference".into());
                    }
                    acc = acc.add(&lines[*line].scale(c)?)?;
                }
                acc
            }
        };
        if p.degree() > cert.degree {
            return bad(i, format!("degree {} exceeds {}", p.degree(), cert.degree));
        }
        lines.push(p);
    }
    match lines.last() {
        Some(p) if p.is_one() => Ok(()),
        _ => Err(Error::Invariant("certificate does not end in 1".into())),
    }
}
