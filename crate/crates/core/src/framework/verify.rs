use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use rand::seq::index;
use rand::Rng as _;
use serde::Serialize;

use super::FrameworkContext;
use crate::algebra::{Monomial, Polynomial, Variable};
use crate::encoding::ColInstance;
use crate::error::{Error, Result};
use crate::graph;
use crate::ideal::GroebnerBasis;
use crate::rng;

/// Monomial populations up to this size are checked exhaustively.
pub const EXHAUSTIVE_MONOMIALS: u128 = 100_000;
pub const DEFAULT_SAMPLES: usize = 2000;

const MAX_COUNTEREXAMPLES: usize = 25;
/// Below this many variables, every variable is used as a multiplier.
const ALL_MULTIPLIERS_MAX: usize = 64;
const MULTIPLIERS: usize = 6;
const RELATED: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Skipped,
}

/// Outcome of one universally quantified check over the sampled cases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub status: Status,
    pub checked: u64,
    pub failed: u64,
    pub inconclusive: u64,
    pub note: String,
}

impl CheckResult {
    pub fn is_green(&self) -> bool {
        matches!(self.status, Status::Pass | Status::Skipped)
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failed: u64,
    inconclusive: u64,
    reason: Option<String>,
}

impl Tally {
    fn finish(self) -> CheckResult {
        let (status, note) = if self.failed > 0 {
            (Status::Fail, format!("{} of {} cases failed", self.failed, self.checked))
        } else if self.inconclusive > 0 {
            let why = self.reason.unwrap_or_default();
            (
                Status::Inconclusive,
                format!("{} of {} cases could not be decided: {why}", self.inconclusive, self.checked),
            )
        } else if self.checked == 0 {
            (Status::Skipped, "no applicable cases".to_string())
        } else {
            (Status::Pass, format!("no counterexample found in {} cases", self.checked))
        };
        CheckResult {
            status,
            checked: self.checked,
            failed: self.failed,
            inconclusive: self.inconclusive,
            note,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportSection {
    pub item1: CheckResult,
    pub item2: CheckResult,
    pub item3: CheckResult,
    pub property_p: CheckResult,
    pub property_multilinear: CheckResult,
    pub reduction_s: CheckResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudoReductionSection {
    pub r1: CheckResult,
    pub axioms: CheckResult,
    pub commute: CheckResult,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleInfo {
    pub mode: SampleMode,
    /// Number of monomials of degree at most `D`, in decimal.
    pub population: String,
    pub requested: usize,
    pub drawn: usize,
}

/// A failing case, replayable with [`recheck`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub monomial: Vec<Variable>,
    pub other: Option<Vec<Variable>>,
    pub variable: Option<Variable>,
    pub detail: String,
    pub reverified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameworkReport {
    pub degree: usize,
    pub support: SupportSection,
    pub satisfiability: CheckResult,
    pub reducibility: CheckResult,
    pub pseudo_reduction: PseudoReductionSection,
    pub counterexamples: Vec<Counterexample>,
    pub seed: u64,
    pub samples: SampleInfo,
}

impl FrameworkReport {
    pub fn checks(&self) -> Vec<(&'static str, &CheckResult)> {
        vec![
            ("support.item1", &self.support.item1),
            ("support.item2", &self.support.item2),
            ("support.item3", &self.support.item3),
            ("support.property_p", &self.support.property_p),
            ("support.property_multilinear", &self.support.property_multilinear),
            ("support.reduction_s", &self.support.reduction_s),
            ("satisfiability", &self.satisfiability),
            ("reducibility", &self.reducibility),
            ("pseudo_reduction.r1", &self.pseudo_reduction.r1),
            ("pseudo_reduction.axioms", &self.pseudo_reduction.axioms),
            ("pseudo_reduction.commute", &self.pseudo_reduction.commute),
        ]
    }

    /// No check failed and none was left undecided.
    pub fn all_green(&self) -> bool {
        self.checks().iter().all(|(_, c)| c.is_green())
    }

    /// Both conditions of the degree lower-bound argument held on every case.
    pub fn conditions_green(&self) -> bool {
        self.satisfiability.is_green() && self.reducibility.is_green()
    }
}

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// The monomials a verification run quantifies over.
#[derive(Clone, Debug)]
pub struct MonomialSample {
    pub info: SampleInfo,
    pub monomials: Vec<Monomial>,
}

impl MonomialSample {
    /// All monomials of degree at most `degree` when there are at most
    /// [`EXHAUSTIVE_MONOMIALS`]; otherwise `1`, every variable, every
    /// axiom leading monomial of degree at most `degree`, and `samples`
    /// further monomials drawn uniformly.
    pub fn draw(ctx: &FrameworkContext, degree: usize, samples: usize, seed: u64) -> Result<MonomialSample> {
        let vars = ctx.variables();
        let n = vars.len();
        let weights: Vec<u128> = (0..=degree.min(n)).map(|d| binomial(n, d)).collect();
        let population = weights.iter().fold(0u128, |a, &b| a.saturating_add(b));
        let mut out = Vec::new();
        if population <= EXHAUSTIVE_MONOMIALS {
            for d in 0..weights.len() {
                let mut idx: Vec<usize> = (0..d).collect();
                loop {
                    out.push(Monomial::from_vars(idx.iter().map(|&i| vars[i])));
                    let Some(pos) = (0..d).rev().find(|&p| idx[p] < n - d + p) else { break };
                    idx[pos] += 1;
                    for q in pos + 1..d {
                        idx[q] = idx[q - 1] + 1;
                    }
                }
            }
            let drawn = out.len();
            return Ok(MonomialSample {
                info: SampleInfo {
                    mode: SampleMode::Exhaustive,
                    population: population.to_string(),
                    requested: samples,
                    drawn,
                },
                monomials: out,
            });
        }
        let mut seen = HashSet::new();
        let mut push = |m: Monomial, out: &mut Vec<Monomial>| {
            if seen.insert(m.clone()) {
                out.push(m);
            }
        };
        push(Monomial::one(), &mut out);
        if degree >= 1 {
            for x in &vars {
                push(Monomial::var(*x), &mut out);
            }
        }
        for a in &ctx.instance.axioms {
            let lm = a.leading_monomial(&ctx.monomial_order)?;
            if lm.degree() <= degree {
                push(lm, &mut out);
            }
        }
        let mut rng = rng::from_seed(seed);
        let target = out.len() + samples;
        let mut attempts = 0;
        while out.len() < target && attempts < 8 * samples + 16 {
            attempts += 1;
            let mut pick = rng.gen_range(0..population);
            let mut d = 0;
            while pick >= weights[d] {
                pick -= weights[d];
                d += 1;
            }
            let chosen = index::sample(&mut rng, n, d);
            push(Monomial::from_vars(chosen.iter().map(|i| vars[i])), &mut out);
        }
        let drawn = out.len();
        Ok(MonomialSample {
            info: SampleInfo {
                mode: SampleMode::Sampled,
                population: population.to_string(),
                requested: samples,
                drawn,
            },
            monomials: out,
        })
    }
}

/// Runs the support, condition and pseudo-reduction checks of one
/// context at one degree on a shared monomial sample.
pub struct Verifier<'a> {
    ctx: &'a FrameworkContext,
    degree: usize,
    seed: u64,
    sample: MonomialSample,
    counterexamples: Vec<Counterexample>,
}

impl<'a> Verifier<'a> {
    pub fn new(ctx: &'a FrameworkContext, degree: usize, samples: usize, seed: u64) -> Result<Verifier<'a>> {
        let sample = MonomialSample::draw(ctx, degree, samples, seed)?;
        Ok(Verifier {
            ctx,
            degree,
            seed,
            sample,
            counterexamples: Vec::new(),
        })
    }

    pub fn sample(&self) -> &MonomialSample {
        &self.sample
    }

    pub fn counterexamples(&self) -> &[Counterexample] {
        &self.counterexamples
    }

    fn less(&self, a: &Monomial, b: &Monomial) -> bool {
        self.ctx.monomial_order.compare(a, b).map(|o| o.is_lt()).unwrap_or(false)
    }

    fn closure(&self, m: &Monomial) -> Arc<BTreeSet<usize>> {
        self.ctx.monomial_closure(m)
    }

    fn closure_vars(&self, cl: &BTreeSet<usize>) -> Vec<Variable> {
        let k = self.ctx.k();
        cl.iter().flat_map(|&v| (1..=k).map(move |i| Variable::new(v, i))).collect()
    }

    /// Monomials compared against `m`: `m` with one variable dropped, and
    /// a few random monomials over the variables of `m`'s closure.
    fn related(&self, m: &Monomial, rng: &mut rng::Rng) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = m.vars().iter().map(|x| m.without(x)).collect();
        if out.len() > RELATED {
            let keep = index::sample(rng, out.len(), RELATED);
            out = keep.iter().map(|i| out[i].clone()).collect();
        }
        let pool = self.closure_vars(&self.closure(m));
        for _ in 0..RELATED {
            if pool.is_empty() {
                break;
            }
            let d = rng.gen_range(0..=self.degree.min(pool.len()));
            let chosen = index::sample(rng, pool.len(), d);
            out.push(Monomial::from_vars(chosen.iter().map(|i| pool[i])));
        }
        out.retain(|x| x != m);
        out.sort();
        out.dedup();
        out
    }

    /// Variables used as multipliers for `m`: all of them on small
    /// instances, otherwise a few from around `m`'s closure and a few
    /// from anywhere.
    fn multipliers(&self, m: &Monomial, rng: &mut rng::Rng) -> Vec<Variable> {
        let all = self.ctx.variables();
        if all.len() <= ALL_MULTIPLIERS_MAX {
            return all;
        }
        let cl = self.closure(m);
        let near: BTreeSet<usize> = cl.union(&self.ctx.graph().neighbourhood(&cl)).copied().collect();
        let pool = self.closure_vars(&near);
        let mut out = Vec::new();
        if !pool.is_empty() {
            for i in index::sample(rng, pool.len(), (MULTIPLIERS - 2).min(pool.len())).iter() {
                out.push(pool[i]);
            }
        }
        for i in index::sample(rng, all.len(), 2).iter() {
            out.push(all[i]);
        }
        out.sort();
        out.dedup();
        out
    }

    fn record(&mut self, tally: &mut Tally, cex: Counterexample) {
        tally.failed += 1;
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            let mut cex = cex;
            cex.reverified = recheck(self.ctx, self.degree, &cex).unwrap_or(false);
            self.counterexamples.push(cex);
        }
    }

    fn undecided(tally: &mut Tally, e: Error) -> Result<()> {
        match e {
            Error::Resource { .. } => {
                tally.inconclusive += 1;
                tally.reason.get_or_insert_with(|| e.to_string());
                Ok(())
            }
            other => Err(other),
        }
    }

    fn cex(
        check: &str,
        m: &Monomial,
        other: Option<&Monomial>,
        variable: Option<Variable>,
        detail: String,
    ) -> Counterexample {
        Counterexample {
            check: check.to_string(),
            monomial: m.vars().to_vec(),
            other: other.map(|o| o.vars().to_vec()),
            variable,
            detail,
            reverified: false,
        }
    }

    pub fn support(&mut self) -> Result<SupportSection> {
        let ctx = self.ctx;
        let mut rng = rng::trial(self.seed, 1);
        let (mut item1, mut item2, mut item3) = (Tally::default(), Tally::default(), Tally::default());
        let (mut prop_p, mut multi, mut red_s) = (Tally::default(), Tally::default(), Tally::default());
        let monomials = self.sample.monomials.clone();
        for m in &monomials {
            let cl = self.closure(m);
            let xs = self.multipliers(m, &mut rng);
            for mp in self.related(m, &mut rng) {
                let clp = self.closure(&mp);
                if mp.vars().iter().all(|x| m.contains(x)) {
                    multi.checked += 1;
                    if !clp.is_subset(&cl) {
                        let c = Self::cex("support.property_multilinear", m, Some(&mp), None, "Cl(m') ⊄ Cl(m)".into());
                        self.record(&mut multi, c);
                    }
                }
                if !self.less(&mp, m) {
                    continue;
                }
                if mp.vertices().is_subset(&cl) {
                    item2.checked += 1;
                    if !clp.is_subset(&cl) {
                        let c = Self::cex("support.item2", m, Some(&mp), None, "S(m') ⊄ S(m)".into());
                        self.record(&mut item2, c);
                    }
                }
                if clp.is_subset(&cl) {
                    for &x in &xs {
                        item1.checked += 1;
                        if !self.closure(&mp.with(x)).is_subset(&self.closure(&m.with(x))) {
                            let c = Self::cex("support.item1", m, Some(&mp), Some(x), "S(xm') ⊄ S(xm)".into());
                            self.record(&mut item1, c);
                        }
                    }
                }
            }
            red_s.checked += 1;
            match ctx.reduce_in_support(m) {
                Err(e) => Self::undecided(&mut red_s, e)?,
                Ok(r) => {
                    for mp in r.monomials() {
                        let mut ok = self.closure(mp).is_subset(&cl);
                        for &x in &xs {
                            ok &= self.closure(&mp.with(x)).is_subset(&self.closure(&m.with(x)));
                        }
                        if !ok {
                            let c = Self::cex("support.reduction_s", m, Some(mp), None, "reduction leaves the support".into());
                            self.record(&mut red_s, c);
                            break;
                        }
                    }
                }
            }
        }
        for a in &ctx.instance.axioms {
            let lm = a.leading_monomial(&ctx.monomial_order)?;
            let cl = self.closure(&lm);
            item3.checked += 1;
            if !a.vertices().is_subset(&cl) {
                let c = Self::cex("support.item3", &lm, None, None, format!("{:?} ∉ S(LM)", a.kind));
                self.record(&mut item3, c);
            }
            prop_p.checked += 1;
            if a.polynomial.monomials().any(|mi| !self.closure(mi).is_subset(&cl)) {
                let c = Self::cex("support.property_p", &lm, None, None, format!("{:?}: S(m_i) ⊄ S(LM)", a.kind));
                self.record(&mut prop_p, c);
            }
        }
        Ok(SupportSection {
            item1: item1.finish(),
            item2: item2.finish(),
            item3: item3.finish(),
            property_p: prop_p.finish(),
            property_multilinear: multi.finish(),
            reduction_s: red_s.finish(),
        })
    }

    /// The satisfiability and reducibility conditions.
    pub fn conditions(&mut self) -> Result<(CheckResult, CheckResult)> {
        let ctx = self.ctx;
        let mut rng = rng::trial(self.seed, 2);
        let (mut sat, mut red) = (Tally::default(), Tally::default());
        let monomials = self.sample.monomials.clone();
        for m in &monomials {
            sat.checked += 1;
            match ctx.support_satisfiable(m) {
                Err(e) => Self::undecided(&mut sat, e)?,
                Ok(true) => {}
                Ok(false) => {
                    let small = self.minimise_unsatisfiable(m)?;
                    let cl = self.closure(&small);
                    let c = Self::cex(
                        "satisfiability",
                        &small,
                        None,
                        None,
                        format!("G[Cl(m)] on {} vertices is not {}-colourable", cl.len(), ctx.k()),
                    );
                    self.record(&mut sat, c);
                }
            }
            let cl = self.closure(m);
            let mut cands = self.related(m, &mut rng);
            cands.push(m.clone());
            for mp in cands {
                let clp = self.closure(&mp);
                if !clp.is_subset(&cl) {
                    continue;
                }
                red.checked += 1;
                let outcome = ctx
                    .reducible_modulo(&mp, &clp)
                    .and_then(|a| Ok((a, ctx.reducible_modulo(&mp, &cl)?)));
                match outcome {
                    Err(e) => Self::undecided(&mut red, e)?,
                    Ok((a, b)) if a != b => {
                        let c = Self::cex(
                            "reducibility",
                            m,
                            Some(&mp),
                            None,
                            format!("reducible modulo S(m'): {a}, modulo S(m): {b}"),
                        );
                        self.record(&mut red, c);
                    }
                    Ok(_) => {}
                }
            }
        }
        Ok((sat.finish(), red.finish()))
    }

    fn minimise_unsatisfiable(&self, m: &Monomial) -> Result<Monomial> {
        let mut cur = m.clone();
        'outer: loop {
            for x in cur.vars().to_vec() {
                let smaller = cur.without(&x);
                if !self.ctx.support_satisfiable(&smaller)? {
                    cur = smaller;
                    continue 'outer;
                }
            }
            return Ok(cur);
        }
    }

    /// `R̃(1) = 1`, `R̃(p) = 0` for axioms of degree at most `D`, and
    /// `R̃(xm) = R̃(x R̃(m))` for sampled `m` of degree below `D`.
    pub fn pseudo_reduction(&mut self) -> Result<PseudoReductionSection> {
        let ctx = self.ctx;
        let f = ctx.field();
        let mut rng = rng::trial(self.seed, 3);
        let (mut r1, mut ax, mut commute) = (Tally::default(), Tally::default(), Tally::default());
        r1.checked += 1;
        match ctx.pseudo_reduce(&Polynomial::one(f)) {
            Err(e) => Self::undecided(&mut r1, e)?,
            Ok(r) if !r.is_one() => {
                let c = Self::cex("pseudo_reduction.r1", &Monomial::one(), None, None, format!("R(1) = {r}"));
                self.record(&mut r1, c);
            }
            Ok(_) => {}
        }
        for a in &ctx.instance.axioms {
            if a.is_boolean() || a.degree() > self.degree {
                continue;
            }
            ax.checked += 1;
            match ctx.pseudo_reduce(&a.polynomial) {
                Err(e) => Self::undecided(&mut ax, e)?,
                Ok(r) if !r.is_zero() => {
                    let lm = a.leading_monomial(&ctx.monomial_order)?;
                    let c = Self::cex("pseudo_reduction.axioms", &lm, None, None, format!("R({:?}) = {r}", a.kind));
                    self.record(&mut ax, c);
                }
                Ok(_) => {}
            }
        }
        let monomials = self.sample.monomials.clone();
        let degree = self.degree;
        for m in monomials.iter().filter(|m| m.degree() < degree) {
            let xs = self.multipliers(m, &mut rng);
            let rm = match ctx.reduce_in_support(m) {
                Ok(r) => r,
                Err(e) => {
                    commute.checked += 1;
                    Self::undecided(&mut commute, e)?;
                    continue;
                }
            };
            for x in xs {
                commute.checked += 1;
                let lhs = ctx.pseudo_reduce(&Polynomial::monomial(f, m.with(x)));
                let rhs = ctx.pseudo_reduce(&rm.mul_monomial(&Monomial::var(x)));
                match lhs.and_then(|l| Ok((l, rhs?))) {
                    Err(e) => Self::undecided(&mut commute, e)?,
                    Ok((l, r)) if l != r => {
                        let c = Self::cex(
                            "pseudo_reduction.commute",
                            m,
                            None,
                            Some(x),
                            format!("R(xm) = {l} but R(x R(m)) = {r}"),
                        );
                        self.record(&mut commute, c);
                    }
                    Ok(_) => {}
                }
            }
        }
        Ok(PseudoReductionSection {
            r1: r1.finish(),
            axioms: ax.finish(),
            commute: commute.finish(),
        })
    }

    pub fn report(mut self) -> Result<FrameworkReport> {
        let support = self.support()?;
        let (satisfiability, reducibility) = self.conditions()?;
        let pseudo_reduction = self.pseudo_reduction()?;
        Ok(FrameworkReport {
            degree: self.degree,
            support,
            satisfiability,
            reducibility,
            pseudo_reduction,
            counterexamples: self.counterexamples,
            seed: self.seed,
            samples: self.sample.info,
        })
    }
}

/// Runs every check of [`Verifier`] and assembles the report.
pub fn verify(ctx: &FrameworkContext, degree: usize, samples: usize, seed: u64) -> Result<FrameworkReport> {
    Verifier::new(ctx, degree, samples, seed)?.report()
}

fn fresh_closure(ctx: &FrameworkContext, m: &Monomial) -> BTreeSet<usize> {
    let mut u = m.vertices();
    u.extend(ctx.t_delta.iter().copied());
    graph::closure(ctx.graph(), &ctx.vertex_order, &u)
}

fn fresh_basis(ctx: &FrameworkContext, set: &BTreeSet<usize>) -> Result<GroebnerBasis> {
    let sub = ColInstance::encode_induced(ctx.graph(), set, ctx.k(), ctx.field())?;
    GroebnerBasis::new(ctx.field(), &sub.polynomials(), &ctx.monomial_order)
}

fn fresh_pseudo_reduce(ctx: &FrameworkContext, p: &Polynomial) -> Result<Polynomial> {
    let mut out = Polynomial::zero(ctx.field());
    for (m, a) in p.terms() {
        let gb = fresh_basis(ctx, &fresh_closure(ctx, m))?;
        out = out.add(&gb.reduce_monomial(m).scale(a)?)?;
    }
    Ok(out)
}

/// Replays a counterexample without the context's memo tables. Returns
/// whether the failure is reproduced.
pub fn recheck(ctx: &FrameworkContext, degree: usize, cex: &Counterexample) -> Result<bool> {
    let m = Monomial::from_vars(cex.monomial.iter().copied());
    let other = cex.other.as_ref().map(|o| Monomial::from_vars(o.iter().copied()));
    let f = ctx.field();
    let cl = fresh_closure(ctx, &m);
    let missing = || Error::domain("counterexample lacks a field needed for replay");
    Ok(match cex.check.as_str() {
        "support.property_multilinear" | "support.item2" => {
            let mp = other.ok_or_else(missing)?;
            !fresh_closure(ctx, &mp).is_subset(&cl)
        }
        "support.item1" => {
            let (mp, x) = (other.ok_or_else(missing)?, cex.variable.ok_or_else(missing)?);
            fresh_closure(ctx, &mp).is_subset(&cl)
                && !fresh_closure(ctx, &mp.with(x)).is_subset(&fresh_closure(ctx, &m.with(x)))
        }
        "support.reduction_s" => {
            let mp = other.ok_or_else(missing)?;
            let r = fresh_basis(ctx, &cl)?.reduce_monomial(&m);
            r.monomials().any(|t| t == &mp) && {
                let all = ctx.variables();
                !fresh_closure(ctx, &mp).is_subset(&cl)
                    || all
                        .iter()
                        .any(|&x| !fresh_closure(ctx, &mp.with(x)).is_subset(&fresh_closure(ctx, &m.with(x))))
            }
        }
        "support.item3" | "support.property_p" => ctx.instance.axioms.iter().any(|a| {
            a.leading_monomial(&ctx.monomial_order).ok().as_ref() == Some(&m)
                && (!a.vertices().is_subset(&cl)
                    || a.polynomial.monomials().any(|mi| !fresh_closure(ctx, mi).is_subset(&cl)))
        }),
        "satisfiability" => !graph::subgraph_colourable(ctx.graph(), &cl, ctx.k())?,
        "reducibility" => {
            let mp = other.ok_or_else(missing)?;
            let clp = fresh_closure(ctx, &mp);
            clp.is_subset(&cl) && fresh_basis(ctx, &clp)?.is_reducible(&mp) != fresh_basis(ctx, &cl)?.is_reducible(&mp)
        }
        "pseudo_reduction.r1" => !fresh_pseudo_reduce(ctx, &Polynomial::one(f))?.is_one(),
        "pseudo_reduction.axioms" => {
            let mut bad = false;
            for a in ctx.instance.axioms.iter().filter(|a| !a.is_boolean() && a.degree() <= degree) {
                if a.leading_monomial(&ctx.monomial_order)? == m && !fresh_pseudo_reduce(ctx, &a.polynomial)?.is_zero() {
                    bad = true;
                }
            }
            bad
        }
        "pseudo_reduction.commute" => {
            let x = cex.variable.ok_or_else(missing)?;
            let rm = fresh_pseudo_reduce(ctx, &Polynomial::monomial(f, m.clone()))?;
            fresh_pseudo_reduce(ctx, &Polynomial::monomial(f, m.with(x)))?
                != fresh_pseudo_reduce(ctx, &rm.mul_monomial(&Monomial::var(x)))?
        }
        other => return Err(Error::domain(format!("unknown check {other:?}"))),
    })
}
