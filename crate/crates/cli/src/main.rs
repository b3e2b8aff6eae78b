//! `addix`: additive index, maximal decomposition and their applications
//! from the command line.
//!
//! Exit codes: 0 success, 1 malformed input, 2 precondition failure,
//! 3 invariant violation (a theorem-level assertion produced a
//! counterexample, which is printed).

mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use addix::additive::{additive_kernel, decompose_with, maximal_decomposition, KernelMethod, LDecomposition};
use addix::analysis::{
    construct_prescribed_cycles, cycle_structure, inverse_pp, is_involution, is_linear_translator, is_permutation,
    translation_pp, translator_pp, value_set_pp_threshold, value_set_size, PpMethod, TranslatorKind, TranslatorSpec,
    ValueSetMethod,
};
use addix::charsum::{CharSumAnalyzer, CharSumReport, MultChar};
use addix::verify::{run_suite, VerifyConfig};
use addix::{sample, Elt, Error, Field, LinearizedPoly, Poly, Subspace};

use output::{emit, subspace_json, Format, Output};

#[derive(Parser, Debug)]
#[command(
    name = "addix",
    version,
    about = "Additive index and maximal additive decomposition over finite fields"
)]
struct Cli {
    /// Worker threads for exhaustive scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for sampled inputs.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Target {
    /// Field as "p^n" or "p^n/c0,...,cn" (modulus coefficients, constant first).
    #[arg(long)]
    field: String,
    /// Polynomial, e.g. "(x^3-x)^2+x" or "[5]*x^2+1".
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KernelArg {
    Gcd,
    Brute,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ValueSetArg {
    Theorem,
    Brute,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    General,
    BLinear,
    Frobenius,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Additive index k, with deg L = p^(n-k).
    Index {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = KernelArg::Gcd)]
        method: KernelArg,
    },
    /// Maximal decomposition P = f(L(x)) + M(x), or the decomposition by a given L.
    Decompose {
        #[command(flatten)]
        target: Target,
        /// Decompose by this subspace polynomial instead of the maximal one.
        #[arg(long, allow_hyphen_values = true)]
        l: Option<String>,
    },
    /// Value-set size and the permutation threshold.
    Valueset {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = ValueSetArg::Both)]
        method: ValueSetArg,
    },
    /// Permutation test with certificate and brute-force verdicts.
    PpTest {
        #[command(flatten)]
        target: Target,
    },
    /// Compositional inverse of a permutation polynomial.
    Invert {
        #[command(flatten)]
        target: Target,
    },
    /// Cycle structure of a permutation, or of f(L(x)) + x with its predicted profile.
    Cycles {
        #[arg(long)]
        field: String,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "l", conflicts_with_all = ["l", "f"])]
        poly: Option<String>,
        /// Subspace polynomial L for f(L(x)) + x.
        #[arg(long, allow_hyphen_values = true, requires = "f")]
        l: Option<String>,
        /// Outer polynomial f for f(L(x)) + x.
        #[arg(long, allow_hyphen_values = true, requires = "l")]
        f: Option<String>,
    },
    /// A permutation with s fixed points and (q - s)/p cycles of length p.
    ConstructCycles {
        #[arg(long)]
        field: String,
        #[arg(long)]
        fixed: u64,
    },
    /// Involution conditions on the maximal decomposition.
    Involution {
        #[command(flatten)]
        target: Target,
    },
    /// Linear translator check and the permutation x + h(g(x)).
    Translator(TranslatorArgs),
    /// Multiplicative character sums and their bounds.
    Charsum(CharsumArgs),
    /// Run the oracle-equivalence suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1024)]
        max_q: u64,
    },
}

#[derive(Args, Debug)]
struct TranslatorArgs {
    #[arg(long)]
    field: String,
    #[arg(long, allow_hyphen_values = true)]
    g: String,
    /// Spanning set of U as comma-separated element codes.
    #[arg(long)]
    u: String,
    /// Linearized polynomial M.
    #[arg(long, allow_hyphen_values = true)]
    m: String,
    /// Polynomial h; without it only the translator property is checked.
    #[arg(long, allow_hyphen_values = true)]
    h: Option<String>,
    #[arg(long, value_enum, default_value_t = KindArg::General)]
    kind: KindArg,
    #[arg(long)]
    gamma: Option<u32>,
    #[arg(long)]
    b: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    i: Option<u32>,
}

#[derive(Args, Debug)]
struct CharsumArgs {
    #[arg(long)]
    field: String,
    /// Polynomial; with --sweep and no --poly, sampled decomposable polynomials are used.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "sweep")]
    poly: Option<String>,
    /// Character index j in 1..q-1.
    #[arg(long = "char", conflicts_with = "sweep", required_unless_present = "sweep")]
    char_index: Option<u32>,
    /// All nontrivial characters, as CSV rows.
    #[arg(long)]
    sweep: bool,
    /// Number of sampled polynomials for a sweep without --poly.
    #[arg(long, default_value_t = 100)]
    count: usize,
}

/// Field from a spec, honouring `ADDIX_MAX_Q` as a lower cap.
fn field(spec: &str) -> addix::Result<Field> {
    let f = Field::parse(spec)?;
    if let Ok(raw) = std::env::var("ADDIX_MAX_Q") {
        let cap: u64 = raw.trim().parse().map_err(|_| Error::Parse {
            pos: 0,
            msg: format!("ADDIX_MAX_Q must be an integer, got {raw:?}"),
        })?;
        if f.q() as u64 > cap {
            return Err(Error::FieldTooLarge {
                p: f.p() as u64,
                n: f.n(),
                cap,
            });
        }
    }
    Ok(f)
}

fn poly(f: &Field, s: &str) -> addix::Result<Poly> {
    Poly::parse(f, s)
}

fn linearized(f: &Field, s: &str) -> addix::Result<LinearizedPoly> {
    LinearizedPoly::from_poly(&poly(f, s)?).ok_or_else(|| Error::Parse {
        pos: 0,
        msg: format!("{s:?} is not a linearized polynomial"),
    })
}

fn elt_codes(f: &Field, s: &str) -> addix::Result<Vec<Elt>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let code: u64 = t.trim().parse().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("bad element code {t:?}"),
            })?;
            f.try_elt(code)
        })
        .collect()
}

fn target(t: &Target) -> addix::Result<Poly> {
    poly(&field(&t.field)?, &t.poly)
}

fn field_json(f: &Field) -> Value {
    json!(f.to_string())
}

fn index(t: &Target, method: KernelArg) -> addix::Result<Output> {
    let p = target(t)?;
    let m = match method {
        KernelArg::Gcd => KernelMethod::Gcd,
        KernelArg::Brute => KernelMethod::Brute,
    };
    let kernel = additive_kernel(&p, m)?;
    let d = maximal_decomposition(&p)?;
    if d.kernel != kernel {
        return Err(Error::Invariant(format!(
            "kernel methods disagree for {p}: {:?} vs {kernel:?}",
            d.kernel
        )));
    }
    Ok(Output::record(json!({
        "field": field_json(p.field()),
        "poly": d.poly.to_string(),
        "index": d.index,
        "L": d.l.to_string(),
        "M": d.m.to_string(),
        "kernel": subspace_json(&kernel),
        "method": format!("{method:?}").to_lowercase(),
    })))
}

fn decompose(t: &Target, l: Option<&str>) -> addix::Result<Output> {
    let p = target(t)?;
    let f = p.field().clone();
    if let Some(l) = l {
        let l = linearized(&f, l)?;
        let v = match decompose_with(&p, &l)? {
            LDecomposition::Decomposable { f: outer, m } => json!({
                "field": field_json(&f), "poly": p.to_string(), "L": l.to_string(),
                "decomposable": true, "f": outer.to_string(), "M": m.to_string(),
            }),
            LDecomposition::NotDecomposable { remainder } => json!({
                "field": field_json(&f), "poly": p.to_string(), "L": l.to_string(),
                "decomposable": false, "remainder": remainder.to_string(),
            }),
        };
        return Ok(Output::record(v));
    }
    let d = maximal_decomposition(&p)?;
    Ok(Output::record(json!({
        "field": field_json(&f),
        "poly": d.poly.to_string(),
        "reduced": d.reduced,
        "f": d.f.to_string(),
        "L": d.l.to_string(),
        "M": d.m.to_string(),
        "index": d.index,
        "kernel": subspace_json(&d.kernel),
        "gcd_LM": d.gcd_lm().to_string(),
        "image": subspace_json(&d.image_subspace()),
    })))
}

fn valueset(t: &Target, method: ValueSetArg) -> addix::Result<Output> {
    let p = target(t)?;
    let mut rec = Map::new();
    rec.insert("field".into(), field_json(p.field()));
    rec.insert("poly".into(), json!(p.to_string()));
    if matches!(method, ValueSetArg::Theorem | ValueSetArg::Both) {
        let s = value_set_size(&p, ValueSetMethod::Theorem)?;
        rec.insert("theorem".into(), json!({"size": s.size, "c": s.c}));
    }
    if matches!(method, ValueSetArg::Brute | ValueSetArg::Both) {
        let s = value_set_size(&p, ValueSetMethod::Brute)?;
        rec.insert("brute".into(), json!({"size": s.size}));
    }
    if let (Some(a), Some(b)) = (rec.get("theorem"), rec.get("brute")) {
        if a["size"] != b["size"] {
            return Err(Error::Invariant(format!(
                "value-set sizes disagree for {p}: {a} vs {b}"
            )));
        }
    }
    let r = value_set_pp_threshold(&p)?;
    rec.insert(
        "threshold".into(),
        json!({
            "value_set": r.value_set, "is_pp": r.is_pp, "gcd_is_x": r.gcd_is_x, "index": r.index,
            "threshold": r.threshold, "implication_holds": r.implication_holds, "degree": r.degree,
            "multiplicative_index": r.multiplicative_index, "wan_bound": r.wan_bound, "mww_bound": r.mww_bound,
        }),
    );
    if !r.implication_holds {
        return Err(Error::Invariant(format!(
            "{p}: gcd(L, M) = x and |V_P| = {} > {} but P is not a permutation",
            r.value_set, r.threshold
        )));
    }
    Ok(Output::record(Value::Object(rec)))
}

fn witness(w: Option<(Elt, Elt)>) -> Value {
    w.map_or(Value::Null, |(a, b)| json!([a.code(), b.code()]))
}

fn pp_test(t: &Target) -> addix::Result<Output> {
    let p = target(t)?;
    let c = is_permutation(&p, PpMethod::Certificate)?;
    let b = is_permutation(&p, PpMethod::Brute)?;
    if c.is_pp != b.is_pp {
        return Err(Error::Invariant(format!(
            "certificate says {} but brute force says {} for {p}",
            c.is_pp, b.is_pp
        )));
    }
    Ok(Output::record(json!({
        "field": field_json(p.field()),
        "poly": p.to_string(),
        "is_pp": c.is_pp,
        "certificate": {
            "is_pp": c.is_pp, "gcd_LM_degree": c.gcd_lm_degree,
            "quotient_bijection": c.quotient_bijection, "witness": witness(c.witness),
        },
        "brute": {"is_pp": b.is_pp, "witness": witness(b.witness)},
    })))
}

fn invert(t: &Target) -> addix::Result<Output> {
    let p = target(t)?;
    let r = inverse_pp(&p)?;
    Ok(Output::record(json!({
        "field": field_json(p.field()),
        "poly": p.to_string(),
        "inverse": r.inverse.to_string(),
        "f0": r.f0.to_string(),
        "L0": r.l0.to_string(),
        "M0": r.m0.to_string(),
        "index": r.index,
    })))
}

fn structure_json(c: &addix::analysis::CycleStructure) -> Value {
    let m: Map<String, Value> = c.0.iter().map(|(l, n)| (l.to_string(), json!(n))).collect();
    Value::Object(m)
}

fn cycles(field_spec: &str, p: Option<&str>, l: Option<&str>, fo: Option<&str>) -> addix::Result<Output> {
    let f = field(field_spec)?;
    if let (Some(l), Some(fo)) = (l, fo) {
        let l = linearized(&f, l)?;
        let outer = poly(&f, fo)?;
        let r = translation_pp(&l, &outer)?;
        return Ok(Output::record(json!({
            "field": field_json(&f), "L": l.to_string(), "f": outer.to_string(),
            "poly": r.poly.to_string(), "t": r.t,
            "predicted": structure_json(&r.predicted), "measured": structure_json(&r.measured),
        })));
    }
    let p = poly(&f, p.unwrap_or_default())?;
    let c = cycle_structure(&p)?;
    Ok(Output::record(json!({
        "field": field_json(&f), "poly": p.to_string(), "cycles": structure_json(&c),
    })))
}

fn construct(field_spec: &str, s: u64) -> addix::Result<Output> {
    let f = field(field_spec)?;
    let p = construct_prescribed_cycles(&f, s)?;
    let c = cycle_structure(&p)?;
    Ok(Output::record(json!({
        "field": field_json(&f), "fixed": s, "poly": p.to_string(), "cycles": structure_json(&c),
    })))
}

fn involution(t: &Target) -> addix::Result<Output> {
    let p = target(t)?;
    let r = is_involution(&p)?;
    Ok(Output::record(json!({
        "field": field_json(p.field()),
        "poly": p.to_string(),
        "is_involution": r.is_involution,
        "cond_i": r.cond_i,
        "cond_ii": r.cond_ii,
        "brute": r.brute,
        "fixed_points": r.fixed_points,
    })))
}

fn translator(a: &TranslatorArgs) -> addix::Result<Output> {
    let f = field(&a.field)?;
    let need = |v: Option<u32>, name: &str| {
        v.ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("--{name} is required for this translator kind"),
        })
    };
    let kind = match a.kind {
        KindArg::General => TranslatorKind::General,
        KindArg::BLinear => TranslatorKind::BLinear {
            gamma: f.try_elt(need(a.gamma, "gamma")? as u64)?,
            b: f.try_elt(need(a.b, "b")? as u64)?,
            k: need(a.k, "k")?,
        },
        KindArg::Frobenius => TranslatorKind::Frobenius {
            gamma: f.try_elt(need(a.gamma, "gamma")? as u64)?,
            b: f.try_elt(need(a.b, "b")? as u64)?,
            k: need(a.k, "k")?,
            i: need(a.i, "i")?,
        },
    };
    let spec = TranslatorSpec {
        g: poly(&f, &a.g)?,
        u: Subspace::span(&f, &elt_codes(&f, &a.u)?),
        m: linearized(&f, &a.m)?,
        kind,
    };
    let c = is_linear_translator(&spec)?;
    let mut rec = json!({
        "field": field_json(&f),
        "g": spec.g.to_string(),
        "U": subspace_json(&spec.u),
        "M": spec.m.to_string(),
        "translator": c.translator,
        "into_U": c.into_u,
        "onto_U": c.onto,
        "m_form_ok": c.m_form_ok,
        "violation": witness(c.violation),
    });
    if let Some(h) = &a.h {
        let h = poly(&f, h)?;
        let r = translator_pp(&spec, &h)?;
        rec["h"] = json!(h.to_string());
        rec["is_pp"] = json!(r.is_pp);
        rec["small_side"] = json!(r.small_side);
        rec["brute"] = json!(r.brute);
        rec["is_complete"] = json!(r.complete);
    }
    Ok(Output::record(rec))
}

fn report_json(r: &CharSumReport) -> Value {
    json!({
        "j": r.j, "sum": [r.re, r.im], "abs": r.abs, "e": r.e, "index": r.index,
        "gcd_degree": r.gcd_degree, "s": r.s, "additive_bound": r.additive_bound,
        "weil_bound": r.weil_bound, "weil_applicable": r.weil_applicable,
        "trivial_bound": r.trivial_bound, "nontrivial_regime": r.nontrivial_regime,
        "beats_weil_and_trivial": r.beats_weil_and_trivial,
    })
}

const SWEEP_HEADER: &str = "# addix charsum sweep v1";
const SWEEP_COLUMNS: [&str; 8] = [
    "poly_id",
    "poly",
    "j",
    "abs",
    "additive_bound",
    "weil_bound",
    "weil_applicable",
    "trivial_bound",
];

fn charsum(a: &CharsumArgs, seed: u64) -> addix::Result<Output> {
    let f = field(&a.field)?;
    if !a.sweep {
        let p = poly(&f, a.poly.as_deref().unwrap_or_default())?;
        let chi = MultChar::new(&f, a.char_index.unwrap_or_default())?;
        let r = CharSumAnalyzer::new(&p)?.report(&chi)?;
        let mut v = report_json(&r);
        v["field"] = field_json(&f);
        v["poly"] = json!(p.to_string());
        return Ok(Output::record(v));
    }
    let polys: Vec<Poly> = match &a.poly {
        Some(s) => vec![poly(&f, s)?],
        None => {
            let mut rng = sample::rng(seed, 0);
            (0..a.count)
                .map(|_| sample::random_decomposable(&f, &mut rng))
                .collect()
        }
    };
    let mut rows = Vec::new();
    for (id, p) in polys.iter().enumerate() {
        let an = CharSumAnalyzer::new(p)?;
        for j in 1..f.q() - 1 {
            let r = an.report(&MultChar::new(&f, j)?)?;
            rows.push(vec![
                json!(id),
                json!(an.decomposition().poly.to_string()),
                json!(r.j),
                json!(r.abs),
                json!(r.additive_bound),
                json!(r.weil_bound),
                json!(r.weil_applicable),
                json!(r.trivial_bound),
            ]);
        }
    }
    Ok(Output::Table {
        header: Some(SWEEP_HEADER),
        columns: SWEEP_COLUMNS.to_vec(),
        rows,
    })
}

fn verify(suite: &str, max_q: u64, seed: u64) -> addix::Result<(Output, bool)> {
    let cfg = VerifyConfig { max_q, seed };
    let reports = run_suite(suite, &cfg)?;
    let passed = reports.iter().all(|r| r.passed);
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                json!(r.id),
                json!(r.name),
                json!(r.passed),
                json!(r.checked),
                json!(r.skipped),
                json!(r.events.len()),
                json!(r.events.first()),
                json!(r.notes),
            ]
        })
        .collect();
    let out = Output::Table {
        header: Some("# addix verify v1"),
        columns: vec![
            "id",
            "name",
            "passed",
            "checked",
            "skipped",
            "events",
            "first_event",
            "notes",
        ],
        rows,
    };
    Ok((out, passed))
}

fn run(cli: &Cli) -> addix::Result<ExitCode> {
    if let Some(t) = cli.threads {
        addix::par::set_threads(t);
    }
    let out = match &cli.command {
        Command::Index { target, method } => index(target, *method)?,
        Command::Decompose { target, l } => decompose(target, l.as_deref())?,
        Command::Valueset { target, method } => valueset(target, *method)?,
        Command::PpTest { target } => pp_test(target)?,
        Command::Invert { target } => invert(target)?,
        Command::Cycles { field, poly, l, f } => cycles(field, poly.as_deref(), l.as_deref(), f.as_deref())?,
        Command::ConstructCycles { field, fixed } => construct(field, *fixed)?,
        Command::Involution { target } => involution(target)?,
        Command::Translator(a) => translator(a)?,
        Command::Charsum(a) => charsum(a, cli.seed)?,
        Command::Verify { suite, max_q } => {
            let (out, passed) = verify(suite, *max_q, cli.seed)?;
            emit(&out, cli.format);
            return Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(3) });
        }
    };
    emit(&out, cli.format);
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            let kind = match e.exit_code() {
                1 => "parse",
                3 => "invariant",
                _ => "precondition",
            };
            eprintln!("{}", json!({"error": {"kind": kind, "message": e.to_string()}}));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn element_lists() {
        let f = Field::parse("3^2").unwrap();
        assert_eq!(elt_codes(&f, "1, 3").unwrap(), vec![f.elt(1), f.elt(3)]);
        assert!(elt_codes(&f, "9").is_err());
        assert!(elt_codes(&f, "a").is_err());
    }
}
