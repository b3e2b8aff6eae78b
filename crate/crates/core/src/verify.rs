//! Oracle-equivalence suites.
//!
//! Each criterion samples inputs from fixed seeds, runs the structural
//! computation next to its brute-force counterpart and collects every
//! disagreement as an event. A criterion passes when it produced no
//! events. Fields larger than `max_q` are skipped and listed in the report.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::additive::{additive_index, additive_kernel, maximal_decomposition, KernelMethod};
use crate::analysis::{
    agw_check, construct_prescribed_cycles, cycle_structure, inverse_pp, is_bijective, is_involution, is_permutation,
    pp_criterion_quotient, translation_pp, translator_pp, two_nlp, two_nlp_parameters, value_set_pp_threshold,
    value_set_size, AgwDiagram, PpMethod, ValueSetMethod,
};
use crate::charsum::{char_sum_affine, CharSumAnalyzer, MultChar};
use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::linearized::{
    all_subspaces, basis_l_expansion, complement, is_linearized, linearized_quotient, vanishing_poly, LinearizedPoly,
    Subspace,
};
use crate::par::*;
use crate::poly::Poly;
use crate::sample;

/// Parameters shared by all suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_q: u64,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_q: 1024,
            seed: 2024,
        }
    }
}

/// Outcome of one criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    /// Counts of checked instances, keyed by what was checked.
    pub checked: BTreeMap<String, u64>,
    /// Fields skipped because `q > max_q`.
    pub skipped: Vec<u32>,
    /// Disagreements and violated assertions, with counterexamples.
    pub events: Vec<String>,
    /// Observations that do not affect the verdict.
    pub notes: Vec<String>,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let counts: Vec<String> = self.checked.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "[{status}] {} {}: {}", self.id, self.name, counts.join(" "))?;
        if !self.skipped.is_empty() {
            write!(f, " (skipped q in {:?})", self.skipped)?;
        }
        if !self.events.is_empty() {
            write!(f, "; {} event(s), first: {}", self.events.len(), self.events[0])?;
        }
        Ok(())
    }
}

/// Criterion ids with their names, in run order.
pub const CRITERIA: &[(&str, &str)] = &[
    ("1", "kernel methods agree"),
    ("2", "decomposition identity"),
    ("3", "value-set sizes"),
    ("4", "permutation certificates"),
    ("5", "inverse round trip"),
    ("6", "cycle structures"),
    ("7", "complement commutation"),
    ("8", "character-sum bounds"),
    ("9a", "involution conditions"),
    ("9b", "translator equivalence"),
    ("9c", "translator completeness, p odd"),
    ("9d", "translator completeness, p = 2"),
    ("10", "worked examples"),
];

struct Run {
    report: CriterionReport,
    cfg: VerifyConfig,
}

impl Run {
    fn new(id: &'static str, cfg: &VerifyConfig) -> Run {
        let name = CRITERIA.iter().find(|(i, _)| *i == id).map(|(_, n)| *n).unwrap_or("");
        Run {
            report: CriterionReport {
                id,
                name,
                passed: true,
                checked: BTreeMap::new(),
                skipped: Vec::new(),
                events: Vec::new(),
                notes: Vec::new(),
            },
            cfg: *cfg,
        }
    }

    /// The fields among `(p, n)` within the size cap; the rest are recorded
    /// as skipped.
    fn fields(&mut self, list: &[(u32, u32)]) -> Vec<Field> {
        let mut out = Vec::new();
        for &(p, n) in list {
            let q = p.pow(n);
            if q as u64 > self.cfg.max_q {
                self.report.skipped.push(q);
            } else {
                out.push(Field::new(p, n, None).expect("table fields are valid"));
            }
        }
        out
    }

    fn count(&mut self, key: impl Into<String>, n: u64) {
        *self.report.checked.entry(key.into()).or_insert(0) += n;
    }

    fn events(&mut self, ev: impl IntoIterator<Item = String>) {
        self.report.events.extend(ev);
    }

    fn finish(mut self) -> CriterionReport {
        self.report.passed = self.report.events.is_empty();
        self.report
    }
}

/// Runs `check` on `count` independent RNG streams in parallel and gathers
/// the events in stream order.
fn sweep<F>(seed: u64, salt: u64, count: usize, check: F) -> Vec<String>
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> Vec<String> + Sync + Send,
{
    let per: Vec<Vec<String>> = (0..count)
        .into_par_iter()
        .map(|i| check(&mut sample::rng(seed, (salt << 32) | i as u64)))
        .collect();
    per.into_iter().flatten().collect()
}

fn err_event(what: &str, p: &Poly, e: Error) -> String {
    format!("{what} failed for {p} over F_{}: {e}", p.field().q())
}

fn salt(f: &Field, tag: u64) -> u64 {
    (tag << 16) | f.q() as u64
}

fn c1(cfg: &VerifyConfig) -> CriterionReport {
    let mut run = Run::new("1", cfg);
    for f in run.fields(&CORE_FIELDS) {
        let ev = sweep(cfg.seed, salt(&f, 1), 200, |rng| {
            let p = sample::random_poly(&f, 12, rng);
            match (
                additive_kernel(&p, KernelMethod::Gcd),
                additive_kernel(&p, KernelMethod::Brute),
            ) {
                (Ok(a), Ok(b)) if a == b => vec![],
                (Ok(a), Ok(b)) => vec![format!("{p} over F_{}: gcd kernel {a:?}, brute kernel {b:?}", f.q())],
                (Err(e), _) | (_, Err(e)) => vec![err_event("kernel", &p, e)],
            }
        });
        run.count(format!("F_{}", f.q()), 200);
        run.events(ev);
    }
    run.finish()
}

const CORE_FIELDS: [(u32, u32); 8] = [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (2, 5), (2, 6)];

fn decomposition_events(p: &Poly) -> Vec<String> {
    let d = match maximal_decomposition(p) {
        Ok(d) => d,
        Err(e) => return vec![err_event("decomposition", p, e)],
    };
    let mut ev = Vec::new();
    if d.recompose() != d.poly {
        ev.push(format!("f(L(x)) + M(x) != P(x) for {p}"));
    }
    if is_linearized(&d.m.to_poly()).as_ref() != Some(&d.m) {
        ev.push(format!("M = {} is not linearized for {p}", d.m));
    }
    if d.m.degree().unwrap_or(0) >= d.l.degree().unwrap_or(1) && !d.m.is_zero() {
        ev.push(format!("deg M >= deg L for {p}"));
    }
    let p0 = &d.poly - &Poly::constant(d.field(), d.poly.coeff(0));
    match basis_l_expansion(&p0, &d.l) {
        Ok(digits) => {
            if digits[1..].iter().any(|q| !q.is_constant()) {
                ev.push(format!("non-constant basis-L digit above 0 for {p} with L = {}", d.l));
            }
        }
        Err(e) => ev.push(err_event("basis-L expansion", p, e)),
    }
    ev
}

fn c2(cfg: &VerifyConfig) -> CriterionReport {
    let mut run = Run::new("2", cfg);
    for f in run.fields(&CORE_FIELDS) {
        let ev = sweep(cfg.seed, salt(&f, 1), 200, |rng| {
            decomposition_events(&sample::random_poly(&f, 12, rng))
        });
        run.count(format!("F_{}", f.q()), 200);
        run.events(ev);
    }
    run.finish()
}

const SWEEP_FIELDS: [(u32, u32); 4] = [(2, 3), (3, 2), (2, 4), (3, 3)];

/// 500 uniform polynomials of degree at most 12, 200 decomposable ones and
/// 100 constructed permutations; index `i` selects the family.
fn sweep_poly(f: &Field, i: usize, rng: &mut impl Rng) -> Poly {
    match i {
        0..500 => sample::random_poly(f, 12, rng),
        500..700 => sample::random_decomposable(f, rng),
        _ => sample::random_pp_decomposable(f, rng),
    }
}

const SWEEP_SIZE: usize = 800;

fn c3(cfg: &VerifyConfig) -> CriterionReport {
    let mut run = Run::new("3", cfg);
    for f in run.fields(&SWEEP_FIELDS) {
        let results: Vec<(Vec<String>, bool)> = (0..SWEEP_SIZE)
            .into_par_iter()
            .map(|i| {
                let mut rng = sample::rng(cfg.seed, (salt(&f, 3) << 32) | i as u64);
                let p = sweep_poly(&f, i, &mut rng);
                let mut ev = Vec::new();
                let mut cor_applies = false;
                match (
                    value_set_size(&p, ValueSetMethod::Theorem),
                    value_set_size(&p, ValueSetMethod::Brute),
                ) {
                    (Ok(a), Ok(b)) if a.size == b.size => {}
                    (Ok(a), Ok(b)) => ev.push(format!("{p}: theorem size {} vs brute {}", a.size, b.size)),
                    (Err(e), _) | (_, Err(e)) => ev.push(err_event("value set", &p, e)),
                }
                match value_set_pp_threshold(&p) {
                    Ok(r) => {
                        cor_applies = r.gcd_is_x && !r.is_pp;
                        if !r.implication_holds {
                            ev.push(format!(
                                "{p}: gcd(L, M) = x, not a PP, but |V_P| = {} > {}",
                                r.value_set, r.threshold
                            ));
                        }
                    }
                    Err(e) => ev.push(err_event("threshold", &p, e)),
                }
                (ev, cor_applies)
            })
            .collect();
        let applies = results.iter().filter(|r| r.1).count() as u64;
        run.count(format!("F_{}", f.q()), SWEEP_SIZE as u64);
        run.count("threshold_cases", applies);
        run.events(results.into_iter().flat_map(|r| r.0));
    }
    run.finish()
}

fn c4(cfg: &VerifyConfig) -> CriterionReport {
    let mut run = Run::new("4", cfg);
    for f in run.fields(&SWEEP_FIELDS) {
        let results: Vec<(Vec<String>, bool)> = (0..SWEEP_SIZE)
            .into_par_iter()
            .map(|i| {
                let mut rng = sample::rng(cfg.seed, (salt(&f, 3) << 32) | i as u64);
                let p = sweep_poly(&f, i, &mut rng);
                let mut ev = Vec::new();
                let cert = is_permutation(&p, PpMethod::Certificate);
                let brute = is_permutation(&p, PpMethod::Brute);
                let verdict = match (cert, brute) {
                    (Ok(c), Ok(b)) => {
                        if c.is_pp != b.is_pp {
                            ev.push(format!("{p}: certificate {} vs brute {}", c.is_pp, b.is_pp));
                        }
                        b.is_pp
                    }
                    (Err(e), _) | (_, Err(e)) => {
                        ev.push(err_event("permutation test", &p, e));
                        return (ev, false);
                    }
                };
                let d = match maximal_decomposition(&p) {
                    Ok(d) => d,
                    Err(e) => {
                        ev.push(err_event("decomposition", &p, e));
                        return (ev, false);
                    }
                };
                let eligible = match pp_criterion_quotient(&d.f, &d.l, &d.m) {
                    Ok(v) => {
                        if v != verdict {
                            ev.push(format!("{p}: quotient criterion {v} vs brute {verdict}"));
                        }
                        true
                    }
                    Err(Error::Precondition(_)) => false,
                    Err(e) => {
                        ev.push(err_event("quotient criterion", &p, e));
                        false
                    }
                };
                if eligible {
                    match AgwDiagram::quotient(&d.f, &d.l, &d.m).and_then(|dg| agw_check(&dg)) {
                        Ok(r) if r.left == verdict => {}
                        Ok(r) => ev.push(format!("{p}: AGW square says {} vs brute {verdict}", r.left)),
                        Err(e) => ev.push(err_event("AGW square", &p, e)),
                    }
                }
                (ev, eligible)
            })
            .collect();
        let eligible = results.iter().filter(|r| r.1).count() as u64;
        run.count(format!("F_{}", f.q()), SWEEP_SIZE as u64);
        run.count("quotient_and_agw", eligible);
        run.events(results.into_iter().flat_map(|r| r.0));
    }
    run.finish()
}

fn c5(cfg: &VerifyConfig) -> CriterionReport {
    let mut run = Run::new("5", cfg);
    for f in run.fields(&[(2, 4), (3, 3)]) {
        let ev = sweep(cfg.seed, salt(&f, 5), 200, |rng| {
            let p = sample::random_pp_decomposable(&f, rng);
            let inv = match inverse_pp(&p) {
                Ok(i) => i,
                Err(e) => return vec![err_event("inverse", &p, e)],
            };
            let mut ev = Vec::new();
            let (pv, iv) = (p.values(), inv.inverse.values());
            for y in f.elements() {
                let c = y.code() as usize;
                if iv[pv[c].code() as usize] != y || pv[iv[c].code() as usize] != y {
                    ev.push(format!("{p}: inverse {} fails at [{}]", inv.inverse, y.code()));
                    break;
                }
            }
            match (additive_index(&p), additive_index(&inv.inverse)) {
                (Ok(a), Ok(b)) if a == b => {}
                (Ok(a), Ok(b)) => ev.push(format!("{p}: index {a}, inverse index {b}")),
                (Err(e), _) | (_, Err(e)) => ev.push(err_event("index", &p, e)),
            }
            ev
        });
        run.count(format!("F_{}", f.q()), 200);
        run.events(ev);
    }
    run.finish()
}

fn c6(cfg: &VerifyConfig) -> CriterionReport {
    let mut run = Run::new("6", cfg);
    for f in run.fields(&[(3, 2), (2, 4), (5, 2)]) {
        let ev = sweep(cfg.seed, salt(&f, 6), 100, |rng| {
            let (l, g) = sample::random_translation_data(&f, rng);
            match translation_pp(&l, &g) {
                Ok(_) => vec![],
                Err(e) => vec![format!("translation P for L = {l}, f = {g} over F_{}: {e}", f.q())],
            }
        });
        run.count(format!("a:F_{}", f.q()), 100);
        run.events(ev);
    }
    for (p, m) in [(2u32, 1u32), (3, 1), (2, 2), (5, 1)] {
        let q = p.pow(2 * m);
        if q as u64 > cfg.max_q {
            run.report.skipped.push(q);
            continue;
        }
        let f = Field::new(p, 2 * m, None).expect("valid field");
        let ev = sweep(cfg.seed, salt(&f, 60), 20, |rng| {
            let (alphas, betas) = match two_nlp_parameters(&f) {
                Ok(x) => x,
                Err(e) => return vec![format!("2-NLP parameters over F_{q}: {e}")],
            };
            let a = alphas[rng.random_range(0..alphas.len())];
            let b = betas[rng.random_range(0..betas.len())];
            let l = match two_nlp(&f, a, b) {
                Ok(l) => l,
                Err(e) => return vec![format!("2-NLP over F_{q}: {e}")],
            };
            let g = sample::random_poly(&f, 6, rng);
            let values: Vec<Elt> = f.elements().map(|x| f.add(l.eval(g.eval(l.eval(x))), x)).collect();
            if is_bijective(&values) {
                vec![]
            } else {
                vec![format!("L(f(L(x))) + x with L = {l}, f = {g} does not permute F_{q}")]
            }
        });
        run.count(format!("b:F_{q}"), 20);
        run.events(ev);
    }
    for f in run.fields(&[(3, 2), (2, 4), (5, 2)]) {
        let p = f.p() as u64;
        let mut n = 0;
        for s in (0..=f.q() as u64).step_by(p as usize) {
            n += 1;
            match construct_prescribed_cycles(&f, s).and_then(|poly| cycle_structure(&poly)) {
                Ok(c) if c.count(1) == s => {}
                Ok(c) => run.events([format!("F_{}: s = {s} gave {c}", f.q())]),
                Err(e) => run.events([format!("F_{}: s = {s}: {e}", f.q())]),
            }
        }
        run.count(format!("c:F_{}", f.q()), n);
    }
    run.finish()
}

fn complement_events(u: &Subspace) -> Vec<String> {
    let f = u.field();
    let l = vanishing_poly(u);
    let big = LinearizedPoly::field_poly(f);
    match complement(&l) {
        Ok(lt) if lt.compose(&l) == big && l.compose(&lt) == big => vec![],
        Ok(lt) => vec![format!(
            "complement {lt} of {l} does not commute to x^q-x over F_{}",
            f.q()
        )],
        Err(e) => vec![format!("complement of {l} over F_{}: {e}", f.q())],
    }
}

fn c7(cfg: &VerifyConfig) -> CriterionReport {
    let mut run = Run::new("7", cfg);
    if let Some(f) = run.fields(&[(2, 4)]).pop() {
        let subspaces = all_subspaces(&f);
        run.count("F_16", subspaces.len() as u64);
        if subspaces.len() != 67 {
            run.events([format!("F_16 has {} subspaces, expected 67", subspaces.len())]);
        }
        let ev: Vec<Vec<String>> = subspaces.par_iter().map(complement_events).collect();
        run.events(ev.into_iter().flatten());
    }
    if let Some(f) = run.fields(&[(2, 6)]).pop() {
        let ev = sweep(cfg.seed, salt(&f, 7), 100, |rng| {
            let dim = rng.random_range(0..=f.n());
            complement_events(&sample::random_subspace(&f, dim, rng))
        });
        run.count("F_64", 100);
        run.events(ev);
    }
    run.finish()
}

/// Events for one polynomial: the decomposition bound for every nontrivial
/// character, and the affine bound on each image coset `P(zeta) + W`.
/// Returns whether some character showed the additive bound below both
/// Weil's bound and `q`.
fn charsum_events(p: &Poly, chars: &[MultChar]) -> (Vec<String>, bool) {
    let a = match CharSumAnalyzer::new(p) {
        Ok(a) => a,
        Err(e) => return (vec![err_event("character-sum setup", p, e)], false),
    };
    let d = a.decomposition();
    let w = d.image_subspace();
    let starts: Vec<Elt> = d.cosets().reps().iter().map(|&z| d.poly.eval(z)).collect();
    let mut ev = Vec::new();
    let mut superior = false;
    for chi in chars {
        match a.report(chi) {
            Ok(r) => superior |= r.beats_weil_and_trivial,
            Err(e) => ev.push(err_event("character sum", p, e)),
        }
        for &s in &starts {
            if let Err(e) = char_sum_affine(s, &w, chi) {
                ev.push(err_event("affine sum", p, e));
            }
        }
    }
    (ev, superior)
}

fn c8(cfg: &VerifyConfig) -> CriterionReport {
    let mut run = Run::new("8", cfg);
    let mut superior = 0u64;
    let mut had_64 = false;
    for f in run.fields(&[(2, 4), (3, 3), (2, 6)]) {
        let chars: Vec<MultChar> = (1..f.q() - 1)
            .map(|j| MultChar::new(&f, j).expect("index in range"))
            .collect();
        let is_64 = f.q() == 64;
        had_64 |= is_64;
        let results: Vec<(Vec<String>, bool)> = (0..120usize)
            .into_par_iter()
            .map(|i| {
                let mut rng = sample::rng(cfg.seed, (salt(&f, 8) << 32) | i as u64);
                let p = if is_64 && i >= 100 {
                    sample::superior_instance(&f, &mut rng)
                } else {
                    sample::random_decomposable(&f, &mut rng)
                };
                charsum_events(&p, &chars)
            })
            .collect();
        if is_64 {
            superior += results.iter().filter(|r| r.1).count() as u64;
        }
        run.count(format!("F_{}", f.q()), 120);
        run.events(results.into_iter().flat_map(|r| r.0));
    }
    if let Some(f) = run.fields(&[(2, 4)]).pop() {
        let chars: Vec<MultChar> = (1..f.q() - 1)
            .map(|j| MultChar::new(&f, j).expect("index in range"))
            .collect();
        let mut n = 0;
        for w in all_subspaces(&f) {
            for &a in w.coset_reps().reps() {
                n += 1;
                for chi in &chars {
                    if let Err(e) = char_sum_affine(a, &w, chi) {
                        run.events([format!("affine coset over F_16: {e}")]);
                    }
                }
            }
        }
        run.count("F_16_affine_cosets", n);
    }
    if had_64 {
        run.count("F_64_superior", superior);
        if superior == 0 {
            run.events(["no F_64 instance with the additive bound below both Weil and q".to_string()]);
        }
    }
    run.finish()
}

fn c9a(cfg: &VerifyConfig) -> CriterionReport {
    let mut run = Run::new("9a", cfg);
    for f in run.fields(&[(2, 4)]) {
        let ev = sweep(cfg.seed, salt(&f, 9), 500, |rng| {
            let p = match rng.random_range(0..3) {
                0 => sample::random_decomposable(&f, rng),
                1 => sample::random_pp_decomposable(&f, rng),
                _ => sample::random_involution(&f, rng),
            };
            match is_involution(&p) {
                Ok(_) => vec![],
                Err(e) => vec![err_event("involution", &p, e)],
            }
        });
        run.count("F_16", 500);
        run.events(ev);
    }
    run.finish()
}

#[derive(Default)]
struct TranslatorTally {
    events: Vec<String>,
    pp: u64,
    incomplete: Vec<String>,
}

fn translator_sweep(cfg: &VerifyConfig, f: &Field) -> TranslatorTally {
    let per: Vec<(Vec<String>, bool, Option<String>)> = (0..200usize)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample::rng(cfg.seed, (salt(f, 90) << 32) | i as u64);
            let (spec, h) = sample::random_translator(f, &mut rng);
            let mut ev = Vec::new();
            let r = match translator_pp(&spec, &h) {
                Ok(r) => r,
                Err(e) => {
                    return (
                        vec![format!("translator g = {}, h = {h} over F_{}: {e}", spec.g, f.q())],
                        false,
                        None,
                    )
                }
            };
            match AgwDiagram::translator(&spec, &h).and_then(|d| agw_check(&d)) {
                Ok(a) if a.left == r.is_pp => {}
                Ok(a) => ev.push(format!("AGW square {} vs translator verdict {}", a.left, r.is_pp)),
                Err(e) => ev.push(format!("AGW square for g = {}: {e}", spec.g)),
            }
            let incomplete = (r.complete == Some(false)).then(|| {
                format!(
                    "x + h(g(x)) permutes F_{} but 2x + h(g(x)) does not (g = {}, U = {:?}, M = {}, h = {h})",
                    f.q(),
                    spec.g,
                    spec.u,
                    spec.m
                )
            });
            (ev, r.is_pp, incomplete)
        })
        .collect();
    let mut t = TranslatorTally::default();
    for (ev, pp, inc) in per {
        t.events.extend(ev);
        t.pp += pp as u64;
        t.incomplete.extend(inc);
    }
    t
}

fn c9b(cfg: &VerifyConfig) -> CriterionReport {
    let mut run = Run::new("9b", cfg);
    for f in run.fields(&[(3, 2), (2, 4)]) {
        let t = translator_sweep(cfg, &f);
        run.count(format!("F_{}", f.q()), 200);
        run.count(format!("F_{}_pp", f.q()), t.pp);
        run.events(t.events);
    }
    run.finish()
}

fn c9c(cfg: &VerifyConfig) -> CriterionReport {
    let mut run = Run::new("9c", cfg);
    for f in run.fields(&[(3, 2)]) {
        let t = translator_sweep(cfg, &f);
        run.count(format!("F_{}_pp", f.q()), t.pp);
        run.count(format!("F_{}_not_complete", f.q()), t.incomplete.len() as u64);
        run.events(t.incomplete);
    }
    run.finish()
}

fn c9d(cfg: &VerifyConfig) -> CriterionReport {
    let mut run = Run::new("9d", cfg);
    for f in run.fields(&[(2, 4)]) {
        let t = translator_sweep(cfg, &f);
        run.count(format!("F_{}_pp", f.q()), t.pp);
        run.count(format!("F_{}_not_complete", f.q()), t.incomplete.len() as u64);
        run.report.notes.extend(t.incomplete.into_iter().take(3));
    }
    run.finish()
}

fn example_index_x3() -> Result<bool> {
    let f8 = Field::new(2, 3, None)?;
    Ok(additive_index(&Poly::parse(&f8, "x^3")?)? == 3)
}

fn example_decomposition_f9() -> Result<bool> {
    let f9 = Field::new(3, 2, None)?;
    let d = maximal_decomposition(&Poly::parse(&f9, "(x^3-x)^2+x")?)?;
    Ok(d.index == 1 && d.l.to_poly() == Poly::parse(&f9, "x^3-x")?)
}

fn example_trace_quotient(p: u32, n: u32) -> Result<bool> {
    let f = Field::new(p, n, None)?;
    let base = LinearizedPoly::new(&f, vec![f.neg(Elt::ONE), Elt::ONE]);
    Ok(linearized_quotient(&Poly::field_poly(&f), &base)? == LinearizedPoly::trace(&f))
}

fn c10(cfg: &VerifyConfig) -> CriterionReport {
    let mut run = Run::new("10", cfg);
    let mut cases = vec![
        ("index of x^3 over F_8".to_string(), example_index_x3()),
        (
            "decomposition of (x^3-x)^2+x over F_9".to_string(),
            example_decomposition_f9(),
        ),
    ];
    for (p, n) in [(2u32, 2u32), (2, 3), (3, 2), (3, 3)] {
        cases.push((
            format!("quotient of x^{} - x by x^{p} - x", p.pow(n)),
            example_trace_quotient(p, n),
        ));
    }
    for (what, r) in cases {
        run.count("examples", 1);
        match r {
            Ok(true) => {}
            Ok(false) => run.events([format!("{what}: wrong value")]),
            Err(e) => run.events([format!("{what}: {e}")]),
        }
    }
    run.finish()
}

/// Runs one criterion by id.
pub fn run_criterion(id: &str, cfg: &VerifyConfig) -> Result<CriterionReport> {
    Ok(match id {
        "1" => c1(cfg),
        "2" => c2(cfg),
        "3" => c3(cfg),
        "4" => c4(cfg),
        "5" => c5(cfg),
        "6" => c6(cfg),
        "7" => c7(cfg),
        "8" => c8(cfg),
        "9a" => c9a(cfg),
        "9b" => c9b(cfg),
        "9c" => c9c(cfg),
        "9d" => c9d(cfg),
        "10" => c10(cfg),
        _ => {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("unknown criterion {id:?}"),
            })
        }
    })
}

/// Ids selected by a suite name: `all`, a criterion id, or `9` for all of
/// its parts.
pub fn suite_ids(suite: &str) -> Result<Vec<&'static str>> {
    let ids: Vec<&'static str> = CRITERIA
        .iter()
        .map(|(id, _)| *id)
        .filter(|id| {
            suite == "all"
                || *id == suite
                || id
                    .strip_prefix(suite)
                    .is_some_and(|r| r.chars().all(|c| c.is_ascii_lowercase()) && !r.is_empty())
        })
        .collect();
    if ids.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("unknown suite {suite:?} (expected all or a criterion id)"),
        });
    }
    Ok(ids)
}

pub fn run_suite(suite: &str, cfg: &VerifyConfig) -> Result<Vec<CriterionReport>> {
    suite_ids(suite)?.into_iter().map(|id| run_criterion(id, cfg)).collect()
}
