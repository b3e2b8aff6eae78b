//! Linear translators and the permutations `x + h(g(x))` built from them.
//!
//! `g` is an `(M, U)`-linear translator when `g(x + u) = g(x) + M(u)` for
//! all `x` in F_q and `u` in `U`. The b-linear and Frobenius translators
//! are the cases `U = gamma F_{p^k}` with `M(u) = gamma^{-1} b u` and
//! `M(u) = gamma^{-p^i} b u^{p^i}`.

use std::collections::HashSet;

use crate::analysis::{is_bijective, permutes_set};
use crate::error::{Error, Result};
use crate::field::Elt;
use crate::linearized::{LinearizedPoly, Subspace};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TranslatorKind {
    General,
    /// `g(x + gamma w) = g(x) + b w` for `w` in F_{p^k}.
    BLinear {
        gamma: Elt,
        b: Elt,
        k: u32,
    },
    /// `g(x + gamma w) = g(x) + b w^{p^i}` for `w` in F_{p^k}.
    Frobenius {
        gamma: Elt,
        b: Elt,
        k: u32,
        i: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslatorSpec {
    pub g: Poly,
    pub u: Subspace,
    pub m: LinearizedPoly,
    pub kind: TranslatorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslatorCheck {
    /// The defining identity holds on F_q x U.
    pub translator: bool,
    /// `g(F_q)` lies in `U`.
    pub into_u: bool,
    /// `g(F_q) = U`.
    pub onto: bool,
    /// For b-linear and Frobenius kinds: `U = gamma F_{p^k}`, `b` in
    /// F_{p^k}, the original identity in `w`, and the stated form of `M`.
    pub m_form_ok: Option<bool>,
    /// First `(x, u)` breaking the identity.
    pub violation: Option<(Elt, Elt)>,
}

impl TranslatorCheck {
    pub fn holds(&self) -> bool {
        self.translator && self.m_form_ok.unwrap_or(true)
    }
}

fn subfield(f: &crate::field::Field, k: u32) -> Result<Vec<Elt>> {
    if k == 0 || !f.n().is_multiple_of(k) {
        return Err(Error::pre(format!("F_{{p^{k}}} is not a subfield of F_{}", f.q())));
    }
    let pk = (f.p() as u64).pow(k);
    Ok(f.elements().filter(|&w| f.pow(w, pk) == w).collect())
}

pub fn is_linear_translator(spec: &TranslatorSpec) -> Result<TranslatorCheck> {
    let f = spec.g.field();
    if spec.u.field() != f || spec.m.field() != f {
        return Err(Error::MixedFields);
    }
    let gv = spec.g.values();
    let u_elems = spec.u.elements();
    let mu: Vec<Elt> = u_elems.iter().map(|&u| spec.m.eval(u)).collect();
    let mut violation = None;
    'outer: for x in f.elements() {
        let gx = gv[x.code() as usize];
        for (&u, &m) in u_elems.iter().zip(&mu) {
            if gv[f.add(x, u).code() as usize] != f.add(gx, m) {
                violation = Some((x, u));
                break 'outer;
            }
        }
    }
    let image: HashSet<Elt> = gv.iter().copied().collect();
    let into_u = image.iter().all(|&y| spec.u.contains(y));
    let onto = into_u && image.len() as u64 == spec.u.len();
    let m_form_ok = match spec.kind {
        TranslatorKind::General => None,
        TranslatorKind::BLinear { gamma, b, k } => Some(kind_ok(spec, &gv, gamma, b, k, 0)?),
        TranslatorKind::Frobenius { gamma, b, k, i } => Some(kind_ok(spec, &gv, gamma, b, k, i)?),
    };
    Ok(TranslatorCheck {
        translator: violation.is_none(),
        into_u,
        onto,
        m_form_ok,
        violation,
    })
}

fn kind_ok(spec: &TranslatorSpec, gv: &[Elt], gamma: Elt, b: Elt, k: u32, i: u32) -> Result<bool> {
    let f = spec.g.field();
    if gamma.is_zero() {
        return Err(Error::pre("gamma must be nonzero"));
    }
    let sub = subfield(f, k)?;
    if !sub.contains(&b) {
        return Ok(false);
    }
    let gamma_sub: Vec<Elt> = sub.iter().map(|&w| f.mul(gamma, w)).collect();
    let u_matches = gamma_sub.len() as u64 == spec.u.len() && gamma_sub.iter().all(|&e| spec.u.contains(e));
    let pi = (f.p() as u64).pow(i);
    let gi = f.inv(f.pow(gamma, pi))?;
    let m_form = sub.iter().zip(&gamma_sub).all(|(&w, &gw)| {
        let wpi = f.pow(w, pi);
        // M(gamma w) = b w^{p^i} and M(u) = gamma^{-p^i} b u^{p^i}
        spec.m.eval(gw) == f.mul(b, wpi) && spec.m.eval(gw) == f.mul(f.mul(gi, b), f.pow(gw, pi))
    });
    let identity = f.elements().all(|x| {
        sub.iter()
            .zip(&gamma_sub)
            .all(|(&w, &gw)| gv[f.add(x, gw).code() as usize] == f.add(gv[x.code() as usize], f.mul(b, f.pow(w, pi))))
    });
    Ok(u_matches && m_form && identity)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslatorPpReport {
    /// `u + M(h(u))` permutes `U`.
    pub small_side: bool,
    /// `x + h(g(x))` permutes F_q.
    pub brute: bool,
    pub is_pp: bool,
    /// Whether `2x + h(g(x))` also permutes F_q, evaluated when `is_pp`.
    pub complete: Option<bool>,
}

/// Decides whether `x + h(g(x))` permutes F_q from the action of
/// `u + M(h(u))` on `U`, and checks the verdict and completeness by
/// evaluation on F_q. A failed completeness check is reported in
/// `complete`, not as an error.
pub fn translator_pp(spec: &TranslatorSpec, h: &Poly) -> Result<TranslatorPpReport> {
    let f = spec.g.field();
    if h.field() != f {
        return Err(Error::MixedFields);
    }
    let check = is_linear_translator(spec)?;
    if !check.onto {
        return Err(Error::pre(format!("g = {} does not map F_q onto U", spec.g)));
    }
    let u_elems = spec.u.elements();
    if let Some(&u) = u_elems.iter().find(|&&u| !spec.u.contains(h.eval(u))) {
        return Err(Error::pre(format!("h = {h} sends [{}] outside U", u.code())));
    }
    if !check.holds() {
        return Err(Error::pre(format!(
            "g = {} is not an (M, U)-linear translator for M = {}",
            spec.g, spec.m
        )));
    }
    let small_side = permutes_set(u_elems.iter().map(|&u| (u, f.add(u, spec.m.eval(h.eval(u))))));
    let gv = spec.g.values();
    let shift: Vec<Elt> = gv.iter().map(|&y| h.eval(y)).collect();
    let values: Vec<Elt> = f.elements().map(|x| f.add(x, shift[x.code() as usize])).collect();
    let brute = is_bijective(&values);
    if small_side != brute {
        return Err(Error::invariant(format!(
            "small-side condition gives {small_side} but x + h(g(x)) permutes F_q is {brute} for g = {}, h = {h}, M = {}",
            spec.g, spec.m
        )));
    }
    let complete = brute.then(|| {
        let doubled: Vec<Elt> = f
            .elements()
            .map(|x| f.add(f.add(x, x), shift[x.code() as usize]))
            .collect();
        is_bijective(&doubled)
    });
    Ok(TranslatorPpReport {
        small_side,
        brute,
        is_pp: small_side,
        complete,
    })
}
