//! Cycle structures of permutations of the form `f(L(x)) + x`.
//!
//! When `L(f(L(y))) = 0` on F_q, the map `P = f(L(x)) + x` moves every `y`
//! along the fibre `y + f(L(y)) F_p`, so `P^(p)` is the identity and all
//! cycles have length 1 or p. The fixed points are the `y` with
//! `f(L(y)) = 0`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::linearized::{vanishing_poly, LinearizedPoly, Subspace};
use crate::poly::{lagrange_interpolate, Poly};

/// Cycle length -> number of cycles of that length.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycleStructure(pub BTreeMap<u64, u64>);

impl CycleStructure {
    /// `sum length * count`, the size of the permuted set.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|(l, c)| l * c).sum()
    }

    pub fn count(&self, length: u64) -> u64 {
        self.0.get(&length).copied().unwrap_or(0)
    }

    /// `{1: fixed, p: (q - fixed)/p}` with zero counts left out.
    pub fn fixed_and_p_cycles(q: u64, p: u64, fixed: u64) -> CycleStructure {
        let mut m = BTreeMap::new();
        if fixed > 0 {
            m.insert(1, fixed);
        }
        if q > fixed {
            m.insert(p, (q - fixed) / p);
        }
        CycleStructure(m)
    }
}

impl fmt::Display for CycleStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(l, c)| format!("{l}: {c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Cycle structure of a permutation given as a table indexed by code.
pub fn cycle_structure_of_map(values: &[Elt]) -> Result<CycleStructure> {
    if !super::is_bijective(values) {
        return Err(Error::pre("map is not a permutation"));
    }
    let mut seen = vec![false; values.len()];
    let mut out = BTreeMap::new();
    for start in 0..values.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = values[cur].code() as usize;
            len += 1;
        }
        *out.entry(len).or_insert(0) += 1;
    }
    Ok(CycleStructure(out))
}

/// Cycle structure of the permutation induced by `P`.
pub fn cycle_structure(p: &Poly) -> Result<CycleStructure> {
    cycle_structure_of_map(&p.values()).map_err(|_| Error::pre(format!("{p} is not a permutation polynomial")))
}

/// `P = f(L(x)) + x` together with its predicted cycle profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationPp {
    /// `f(L(x)) + x`, reduced modulo `x^q - x` when its degree reaches q.
    pub poly: Poly,
    /// Number of distinct roots of `f` in `L(F_q)`.
    pub t: u64,
    pub predicted: CycleStructure,
    pub measured: CycleStructure,
}

/// Builds `f(L(x)) + x` for a subspace polynomial `L` and an `f` with
/// `L(f(L(y))) = 0` on F_q, and checks the predicted profile
/// `{1: t deg L, p: (q - t deg L)/p}` and `P^(p) = id` against the map.
pub fn translation_pp(l: &LinearizedPoly, f: &Poly) -> Result<TranslationPp> {
    let fld = l.field();
    if !l.is_monic() {
        return Err(Error::pre(format!("{l} is not monic")));
    }
    let (_, r) = LinearizedPoly::field_poly(fld).div_rem_right(l)?;
    if !r.is_zero() {
        return Err(Error::pre(format!("{l} does not divide x^q-x")));
    }
    let lv = l.values();
    let image: HashSet<Elt> = lv.iter().copied().collect();
    let mut t = 0u64;
    for &s in &image {
        let fs = f.eval(s);
        if !l.eval(fs).is_zero() {
            return Err(Error::pre(format!(
                "L(f(L(y))) != 0 at L(y) = {} for f = {f}, L = {l}",
                s.code()
            )));
        }
        if fs.is_zero() {
            t += 1;
        }
    }
    let poly = (&f.compose(&l.to_poly()) + &Poly::x(fld)).reduce_mod_field_poly();
    let values: Vec<Elt> = fld
        .elements()
        .map(|y| fld.add(f.eval(lv[y.code() as usize]), y))
        .collect();
    let deg_l = l.degree().unwrap_or(1);
    let q = fld.q() as u64;
    let p = fld.p() as u64;
    let predicted = CycleStructure::fixed_and_p_cycles(q, p, t * deg_l);
    let measured = cycle_structure_of_map(&values)
        .map_err(|_| Error::invariant(format!("f(L(x)) + x does not permute F_q for f = {f}, L = {l}")))?;
    if predicted != measured {
        return Err(Error::invariant(format!(
            "predicted cycles {predicted} but measured {measured} for f = {f}, L = {l}"
        )));
    }
    // the p-th iterate is the identity
    for y in fld.elements() {
        let end = (0..p).fold(y, |z, _| values[z.code() as usize]);
        if end != y {
            return Err(Error::invariant(format!(
                "P^(p)({}) != {} for f = {f}, L = {l}",
                y.code(),
                y.code()
            )));
        }
    }
    if poly.values() != values {
        return Err(Error::invariant(format!(
            "reduced polynomial for f = {f}, L = {l} differs from the map"
        )));
    }
    Ok(TranslationPp {
        poly,
        t,
        predicted,
        measured,
    })
}

/// A permutation `f(L(x)) + x` with exactly `s` fixed points and
/// `(q - s)/p` cycles of length p.
///
/// For `s > 0` write `s = p^j u` with `p` not dividing `u`; `L` vanishes on
/// the span of the elements with codes `1, p, ..., p^(j-1)` (the first `j`
/// greedy basis vectors), and `f` sends the first `u` points of `L(F_q)`
/// (by code) to 0 and the others to 1. For `s = 0` the translation
/// `x + 1` is used.
pub fn construct_prescribed_cycles(field: &Field, s: u64) -> Result<Poly> {
    let q = field.q() as u64;
    let p = field.p() as u64;
    if s > q || !s.is_multiple_of(p) {
        return Err(Error::pre(format!(
            "fixed-point count {s} must be a multiple of {p} in [0, {q}]"
        )));
    }
    let expected = CycleStructure::fixed_and_p_cycles(q, p, s);
    let poly = if s == 0 {
        Poly::new(field, vec![Elt::ONE, Elt::ONE])
    } else {
        let (mut j, mut u) = (0u32, s);
        while u % p == 0 {
            u /= p;
            j += 1;
        }
        let gens: Vec<Elt> = (0..j).map(|i| field.elt(field.p().pow(i))).collect();
        let v = Subspace::span(field, &gens);
        let l = vanishing_poly(&v);
        let mut image: Vec<Elt> = l.values().into_iter().collect::<HashSet<_>>().into_iter().collect();
        image.sort_unstable();
        let points: Vec<(Elt, Elt)> = image
            .iter()
            .enumerate()
            .map(|(i, &y)| (y, if (i as u64) < u { Elt::ZERO } else { Elt::ONE }))
            .collect();
        let f = lagrange_interpolate(field, &points)?;
        let built = translation_pp(&l, &f)?;
        built.poly
    };
    let measured = cycle_structure(&poly)?;
    if measured != expected {
        return Err(Error::invariant(format!(
            "constructed {poly} has cycles {measured}, expected {expected}"
        )));
    }
    Ok(poly)
}

/// Solutions `(alphas, betas)` of `a^{p^m} = -a` (`a != 0`) and
/// `b^{p^m + 1} = 1` over F_{p^{2m}}, ascending by code.
pub fn two_nlp_parameters(field: &Field) -> Result<(Vec<Elt>, Vec<Elt>)> {
    let n = field.n();
    if !n.is_multiple_of(2) {
        return Err(Error::pre("the 2-nilpotent family needs an even extension degree"));
    }
    let m = n / 2;
    let pm = (field.p() as u64).pow(m);
    let alphas = field
        .elements()
        .filter(|&a| !a.is_zero() && field.pow(a, pm) == field.neg(a))
        .collect();
    let betas = field
        .elements()
        .filter(|&b| !b.is_zero() && field.pow(b, pm + 1) == Elt::ONE)
        .collect();
    Ok((alphas, betas))
}

/// `L(x) = alpha beta x^{p^m} + alpha x` over F_{p^{2m}}, which satisfies
/// `L(L(y)) = 0` on F_q (checked).
pub fn two_nlp(field: &Field, alpha: Elt, beta: Elt) -> Result<LinearizedPoly> {
    let n = field.n();
    if !n.is_multiple_of(2) {
        return Err(Error::pre("the 2-nilpotent family needs an even extension degree"));
    }
    let m = (n / 2) as usize;
    let pm = (field.p() as u64).pow(m as u32);
    if alpha.is_zero() || field.pow(alpha, pm) != field.neg(alpha) {
        return Err(Error::pre(format!(
            "alpha = [{}] does not satisfy a^(p^m) = -a",
            alpha.code()
        )));
    }
    if field.pow(beta, pm + 1) != Elt::ONE {
        return Err(Error::pre(format!(
            "beta = [{}] does not satisfy b^(p^m+1) = 1",
            beta.code()
        )));
    }
    let mut c = vec![Elt::ZERO; m + 1];
    c[0] = alpha;
    c[m] = field.mul(alpha, beta);
    let l = LinearizedPoly::new(field, c);
    if let Some(y) = field.elements().find(|&y| !l.eval(l.eval(y)).is_zero()) {
        return Err(Error::invariant(format!("L(L({})) != 0 for L = {l}", y.code())));
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linearized::complement;

    fn field(p: u32, n: u32) -> Field {
        Field::new(p, n, None).unwrap()
    }

    #[test]
    fn simple_structures() {
        let f5 = field(5, 1);
        assert_eq!(cycle_structure(&Poly::x(&f5)).unwrap().0, BTreeMap::from([(1, 5)]));
        let shift = Poly::parse(&f5, "x+1").unwrap();
        assert_eq!(cycle_structure(&shift).unwrap().0, BTreeMap::from([(5, 1)]));
        assert!(cycle_structure(&Poly::parse(&f5, "x^2").unwrap()).is_err());
    }

    #[test]
    fn translation_with_complement() {
        let f9 = field(3, 2);
        let l = LinearizedPoly::from_codes(&f9, &[2, 1]);
        let lt = complement(&l).unwrap();
        let g = Poly::parse(&f9, "x^2+[5]").unwrap();
        let f = lt.to_poly().compose(&g);
        let r = translation_pp(&l, &f).unwrap();
        assert_eq!(r.predicted, r.measured);
        assert_eq!(r.measured.total(), 9);

        let zero = translation_pp(&l, &Poly::zero(&f9)).unwrap();
        assert_eq!(zero.measured.0, BTreeMap::from([(1, 9)]));
        assert!(translation_pp(&l, &Poly::x(&f9)).is_err());
    }

    #[test]
    fn prescribed_cycles() {
        let f16 = field(2, 4);
        let p = construct_prescribed_cycles(&f16, 4).unwrap();
        assert_eq!(cycle_structure(&p).unwrap().0, BTreeMap::from([(1, 4), (2, 6)]));
        let f9 = field(3, 2);
        let p = construct_prescribed_cycles(&f9, 3).unwrap();
        assert_eq!(cycle_structure(&p).unwrap().0, BTreeMap::from([(1, 3), (3, 2)]));
        assert_eq!(construct_prescribed_cycles(&f9, 9).unwrap(), Poly::x(&f9));
        assert!(construct_prescribed_cycles(&f9, 4).is_err());
        assert!(construct_prescribed_cycles(&f9, 12).is_err());
        for f in [field(3, 2), field(2, 4), field(5, 2)] {
            let p = f.p() as u64;
            for s in (0..=f.q() as u64).step_by(p as usize) {
                construct_prescribed_cycles(&f, s).unwrap();
            }
        }
    }

    #[test]
    fn two_nilpotent() {
        for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = field(p, 2 * m);
            let (alphas, betas) = two_nlp_parameters(&f).unwrap();
            assert!(!alphas.is_empty() && !betas.is_empty());
            two_nlp(&f, alphas[0], *betas.last().unwrap()).unwrap();
        }
        assert!(two_nlp(&field(3, 2), Elt::ONE, Elt::ONE).is_err());
    }
}
