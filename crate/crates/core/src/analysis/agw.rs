//! The AGW criterion on explicit finite tables.
//!
//! Given a commuting square `lam_bar . f = f_bar . lam` with `lam: A -> S`
//! and `lam_bar: A -> S_bar` surjective and `|S| = |S_bar|`, `f` is a
//! bijection of `A` iff `f_bar` is a bijection `S -> S_bar` and `f` is
//! injective on every fibre `lam^{-1}(s)`. Sets are `0..len` and maps are
//! tables of indices.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::Elt;
use crate::linearized::{linearized_quotient_lin, LinearizedPoly};
use crate::poly::Poly;

use super::TranslatorSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgwDiagram {
    pub f: Vec<usize>,
    pub lam: Vec<usize>,
    pub lam_bar: Vec<usize>,
    pub f_bar: Vec<usize>,
    /// `|S_bar|`; `|S|` is `f_bar.len()`.
    pub s_bar_len: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AgwReport {
    /// `f` is a bijection of `A`.
    pub left: bool,
    /// `f_bar` is a bijection and `f` is injective on the fibres of `lam`.
    pub right: bool,
}

fn index_of(sorted: &[Elt], e: Elt) -> usize {
    sorted.binary_search(&e).expect("value outside the indexed set")
}

fn sorted_image(values: &[Elt]) -> Vec<Elt> {
    let mut s: Vec<Elt> = values.iter().copied().collect::<HashSet<_>>().into_iter().collect();
    s.sort_unstable();
    s
}

impl AgwDiagram {
    /// `A = F_q`, `S = S_bar = L(F_q)`, `lam = lam_bar = L`,
    /// `f = f(L(x)) + M(x)` and `f_bar(y) = L(f(y)) + N(y)` with
    /// `N(L(x)) = L(M(x))`.
    pub fn quotient(f: &Poly, l: &LinearizedPoly, m: &LinearizedPoly) -> Result<AgwDiagram> {
        let fld = l.field();
        let n = linearized_quotient_lin(&l.compose(m), l)?;
        let lv = l.values();
        let s = sorted_image(&lv);
        let fa: Vec<usize> = fld
            .elements()
            .map(|x| fld.add(f.eval(lv[x.code() as usize]), m.eval(x)).code() as usize)
            .collect();
        let lam: Vec<usize> = lv.iter().map(|&y| index_of(&s, y)).collect();
        let f_bar: Vec<usize> = s
            .iter()
            .map(|&y| {
                let v = fld.add(l.eval(f.eval(y)), n.eval(y));
                s.binary_search(&v).unwrap_or(usize::MAX)
            })
            .collect();
        Ok(AgwDiagram {
            f: fa,
            lam: lam.clone(),
            lam_bar: lam,
            f_bar,
            s_bar_len: s.len(),
        })
    }

    /// `A = F_q`, `S = S_bar = U`, `lam = lam_bar = g`,
    /// `f = x + h(g(x))` and `f_bar(u) = u + M(h(u))`.
    pub fn translator(spec: &TranslatorSpec, h: &Poly) -> Result<AgwDiagram> {
        let fld = spec.g.field();
        let u = spec.u.elements();
        let gv = spec.g.values();
        let lam: Vec<usize> = gv
            .iter()
            .map(|&y| {
                u.binary_search(&y)
                    .map_err(|_| Error::pre(format!("g = {} leaves U", spec.g)))
            })
            .collect::<Result<_>>()?;
        let fa: Vec<usize> = fld
            .elements()
            .map(|x| fld.add(x, h.eval(gv[x.code() as usize])).code() as usize)
            .collect();
        let f_bar: Vec<usize> = u
            .iter()
            .map(|&e| {
                u.binary_search(&fld.add(e, spec.m.eval(h.eval(e))))
                    .unwrap_or(usize::MAX)
            })
            .collect();
        Ok(AgwDiagram {
            f: fa,
            lam: lam.clone(),
            lam_bar: lam,
            f_bar,
            s_bar_len: u.len(),
        })
    }
}

fn is_perm(t: &[usize], len: usize) -> bool {
    let mut hit = vec![false; len];
    t.len() == len
        && t.iter().all(|&v| match hit.get_mut(v) {
            Some(h) if !*h => {
                *h = true;
                true
            }
            _ => false,
        })
}

fn surjective(t: &[usize], len: usize) -> bool {
    let mut hit = vec![false; len];
    for &v in t {
        if v >= len {
            return false;
        }
        hit[v] = true;
    }
    hit.into_iter().all(|h| h)
}

/// Evaluates both sides of the criterion and checks they agree.
pub fn agw_check(d: &AgwDiagram) -> Result<AgwReport> {
    let a = d.f.len();
    let s = d.f_bar.len();
    if d.lam.len() != a || d.lam_bar.len() != a {
        return Err(Error::pre("lam and lam_bar must be defined on all of A"));
    }
    if let Some(&v) = d.f.iter().find(|&&v| v >= a) {
        return Err(Error::pre(format!("f sends an element to {v}, outside A")));
    }
    if s != d.s_bar_len {
        return Err(Error::pre(format!("|S| = {s} but |S_bar| = {}", d.s_bar_len)));
    }
    if !surjective(&d.lam, s) {
        return Err(Error::pre("lam is not onto S"));
    }
    if !surjective(&d.lam_bar, d.s_bar_len) {
        return Err(Error::pre("lam_bar is not onto S_bar"));
    }
    if let Some(x) = (0..a).find(|&x| d.lam_bar[d.f[x]] != d.f_bar[d.lam[x]]) {
        return Err(Error::pre(format!("the square does not commute at {x}")));
    }
    let left = is_perm(&d.f, a);
    let mut seen = HashSet::with_capacity(a);
    let fibres_injective = (0..a).all(|x| seen.insert((d.lam[x], d.f[x])));
    let right = is_perm(&d.f_bar, d.s_bar_len) && fibres_injective;
    if left != right {
        return Err(Error::invariant(format!(
            "f bijective is {left} but the reduced side gives {right}"
        )));
    }
    Ok(AgwReport { left, right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{is_permutation, translator_pp, PpMethod, TranslatorKind};
    use crate::field::Field;
    use crate::linearized::Subspace;

    #[test]
    fn identity_square() {
        let id: Vec<usize> = (0..5).collect();
        for f in [vec![1, 2, 3, 4, 0], vec![0, 0, 1, 2, 3]] {
            let d = AgwDiagram {
                f_bar: f.clone(),
                f,
                lam: id.clone(),
                lam_bar: id.clone(),
                s_bar_len: 5,
            };
            let r = agw_check(&d).unwrap();
            assert_eq!(r.left, r.right);
        }
    }

    #[test]
    fn rejects_non_commuting() {
        let d = AgwDiagram {
            f: vec![1, 0],
            lam: vec![0, 1],
            lam_bar: vec![0, 1],
            f_bar: vec![0, 1],
            s_bar_len: 2,
        };
        assert!(matches!(agw_check(&d), Err(Error::Precondition(_))));
    }

    #[test]
    fn quotient_squares_match_permutation_test() {
        let f16 = Field::new(2, 4, None).unwrap();
        let l = LinearizedPoly::from_codes(&f16, &[1, 0, 1]);
        let x = LinearizedPoly::identity(&f16);
        for s in ["0", "x^3", "x^2+[5]*x", "[7]*x^3+x+[2]"] {
            let f = Poly::parse(&f16, s).unwrap();
            let r = agw_check(&AgwDiagram::quotient(&f, &l, &x).unwrap()).unwrap();
            let p = &f.compose(&l.to_poly()) + &Poly::x(&f16);
            assert_eq!(r.left, is_permutation(&p, PpMethod::Brute).unwrap().is_pp);
        }
    }

    #[test]
    fn translator_square() {
        let f9 = Field::new(3, 2, None).unwrap();
        let spec = TranslatorSpec {
            g: LinearizedPoly::trace(&f9).to_poly(),
            u: Subspace::span(&f9, &[Elt::ONE]),
            m: LinearizedPoly::from_codes(&f9, &[2]),
            kind: TranslatorKind::General,
        };
        for h in ["x", "2*x", "0"] {
            let h = Poly::parse(&f9, h).unwrap();
            let r = agw_check(&AgwDiagram::translator(&spec, &h).unwrap()).unwrap();
            assert_eq!(r.left, translator_pp(&spec, &h).unwrap().is_pp);
        }
    }
}
