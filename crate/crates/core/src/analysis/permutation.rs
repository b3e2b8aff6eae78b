//! Permutation tests and compositional inverses.

use std::collections::HashSet;

use crate::additive::{maximal_decomposition, AdditiveDecomposition};
use crate::analysis::{first_collision, is_bijective, permutes_set};
use crate::error::{Error, Result};
use crate::field::Elt;
use crate::linearized::{linearized_interpolate, linearized_quotient_lin, vanishing_poly, LinearizedPoly, Subspace};
use crate::poly::{lagrange_interpolate, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PpMethod {
    /// Conditions on the maximal decomposition.
    Certificate,
    /// Evaluation on all of F_q.
    Brute,
}

impl std::str::FromStr for PpMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "certificate" => Ok(PpMethod::Certificate),
            "brute" => Ok(PpMethod::Brute),
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown permutation method {s:?} (expected certificate or brute)"),
            }),
        }
    }
}

/// Verdict on whether `P` permutes F_q.
///
/// For the certificate method the two conditions are: `gcd(L, M) = x`
/// (`M` is injective on the kernel `U`), and `zeta -> P(zeta)` induces a
/// bijection `F_q/U -> F_q/M(U)`. A non-permutation comes with a witness
/// pair `a != b`, `P(a) = P(b)`. The certificate witness is read off the
/// failing condition; the brute-force one is the first collision in code
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PpCertificate {
    pub method: PpMethod,
    pub is_pp: bool,
    pub gcd_lm_degree: Option<u64>,
    pub quotient_bijection: Option<bool>,
    pub witness: Option<(Elt, Elt)>,
}

pub fn is_permutation(p: &Poly, method: PpMethod) -> Result<PpCertificate> {
    match method {
        PpMethod::Certificate => certificate(&maximal_decomposition(p)?),
        PpMethod::Brute => {
            let (p, _) = crate::additive::normalize_input(p)?;
            let witness = first_collision(&p.values());
            Ok(PpCertificate {
                method,
                is_pp: witness.is_none(),
                gcd_lm_degree: None,
                quotient_bijection: None,
                witness,
            })
        }
    }
}

pub(crate) fn certificate(d: &AdditiveDecomposition) -> Result<PpCertificate> {
    let f = d.field();
    let w = d.image_subspace();
    let gcd_deg = d.kernel.len() / w.len();
    let cosets = d.cosets();
    let mut key_owner = std::collections::HashMap::new();
    let mut clash = None;
    for &z in cosets.reps() {
        let key = w.reduce(d.poly.eval(z));
        if let Some(&other) = key_owner.get(&key) {
            clash.get_or_insert((other, z));
        } else {
            key_owner.insert(key, z);
        }
    }
    let quotient_bijection = clash.is_none() && w.dim() == d.kernel.dim();
    let witness = if gcd_deg > 1 {
        // a nonzero u in U with M(u) = 0 collides with 0
        d.kernel
            .elements()
            .into_iter()
            .find(|&u| !u.is_zero() && d.m.eval(u).is_zero())
            .map(|u| (Elt::ZERO, u))
    } else if let Some((a, b)) = clash {
        // P(a) - P(b) = M(u) for some u in U, and P(b + u) = P(b) + M(u)
        let diff = f.sub(d.poly.eval(a), d.poly.eval(b));
        let u = d.kernel.elements().into_iter().find(|&u| d.m.eval(u) == diff);
        u.map(|u| (a, f.add(b, u)))
    } else {
        None
    };
    let is_pp = gcd_deg == 1 && quotient_bijection;
    if !is_pp {
        let Some((a, b)) = witness else {
            return Err(Error::invariant(format!(
                "no collision found for non-permutation {}",
                d.poly
            )));
        };
        if a == b || d.poly.eval(a) != d.poly.eval(b) {
            return Err(Error::invariant(format!(
                "witness ({}, {}) for {} is not a collision",
                a.code(),
                b.code(),
                d.poly
            )));
        }
    }
    let (a, b) = witness.map_or((None, None), |(a, b)| (Some(a.min(b)), Some(a.max(b))));
    Ok(PpCertificate {
        method: PpMethod::Certificate,
        is_pp,
        gcd_lm_degree: Some(gcd_deg),
        quotient_bijection: Some(quotient_bijection),
        witness: a.zip(b),
    })
}

/// Decides whether `f(L(x)) + M(x)` permutes F_q through the quotient map
/// `y -> L(f(y)) + N(y)` on `L(F_q)`, where `N(L(x)) = L(M(x))`.
///
/// Needs `L` monic and dividing `x^q - x`, and `L | L(M(x))`. The verdict
/// is checked against brute force before it is returned.
pub fn pp_criterion_quotient(f: &Poly, l: &LinearizedPoly, m: &LinearizedPoly) -> Result<bool> {
    let fld = l.field();
    if !l.is_monic() {
        return Err(Error::pre(format!("{l} is not monic")));
    }
    let (_, r) = LinearizedPoly::field_poly(fld).div_rem_right(l)?;
    if !r.is_zero() {
        return Err(Error::pre(format!("{l} does not divide x^q-x")));
    }
    let n = linearized_quotient_lin(&l.compose(m), l).map_err(|e| match e {
        Error::Precondition(_) => Error::pre(format!("{l} does not divide L(M(x))")),
        other => other,
    })?;
    let u = l.kernel()?;
    let gcd_is_x = m.image_of(&u).dim() == u.dim();
    let image: HashSet<Elt> = l.values().into_iter().collect();
    let quotient = permutes_set(image.iter().map(|&y| (y, fld.add(l.eval(f.eval(y)), n.eval(y)))));
    let verdict = gcd_is_x && quotient;
    let values: Vec<Elt> = fld.elements().map(|x| fld.add(f.eval(l.eval(x)), m.eval(x))).collect();
    if verdict != is_bijective(&values) {
        return Err(Error::invariant(format!(
            "quotient criterion says {verdict} for f = {f}, L = {l}, M = {m}, brute force disagrees"
        )));
    }
    Ok(verdict)
}

/// The inverse `P_0 = f_0(L_0(x)) + M_0(x)` of a permutation polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversePp {
    pub inverse: Poly,
    pub f0: Poly,
    pub l0: LinearizedPoly,
    pub m0: LinearizedPoly,
    pub index: u32,
}

pub fn inverse_pp(p: &Poly) -> Result<InversePp> {
    let d = maximal_decomposition(p)?;
    let cert = certificate(&d)?;
    if !cert.is_pp {
        return Err(Error::pre(format!("{} is not a permutation polynomial", d.poly)));
    }
    let f = d.field();
    let w: Subspace = d.image_subspace();
    let l0 = vanishing_poly(&w);
    let pairs: Vec<(Elt, Elt)> = d.kernel.basis().iter().map(|&u| (d.m.eval(u), u)).collect();
    let m0 = linearized_interpolate(f, &pairs, pairs.len())
        .map_err(|_| Error::invariant(format!("M is not injective on the kernel of {}", d.poly)))?;
    let points: Vec<(Elt, Elt)> = d
        .cosets()
        .reps()
        .iter()
        .map(|&z| {
            let pz = d.poly.eval(z);
            (l0.eval(pz), f.sub(z, m0.eval(pz)))
        })
        .collect();
    let f0 = lagrange_interpolate(f, &points)
        .map_err(|e| Error::invariant(format!("interpolating f_0 for {}: {e}", d.poly)))?;
    let inverse = &f0.compose(&l0.to_poly()) + &m0.to_poly();
    let pv = d.poly.values();
    for y in f.elements() {
        if inverse.eval(pv[y.code() as usize]) != y {
            return Err(Error::invariant(format!(
                "P_0(P({})) != {} for P = {}, P_0 = {inverse}",
                y.code(),
                y.code(),
                d.poly
            )));
        }
    }
    let index = crate::additive::additive_index(&inverse)?;
    if index != d.index {
        return Err(Error::invariant(format!(
            "additive index of {} is {} but of its inverse {inverse} is {index}",
            d.poly, d.index
        )));
    }
    Ok(InversePp {
        inverse,
        f0,
        l0,
        m0,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn pp(f: &Field, s: &str) -> Poly {
        Poly::parse(f, s).unwrap()
    }

    fn agree(p: &Poly) -> PpCertificate {
        let c = is_permutation(p, PpMethod::Certificate).unwrap();
        let b = is_permutation(p, PpMethod::Brute).unwrap();
        assert_eq!(c.is_pp, b.is_pp, "{p}");
        if let Some((a, b)) = c.witness {
            assert!(a != b && p.eval(a) == p.eval(b));
        }
        c
    }

    #[test]
    fn examples() {
        let f9 = Field::new(3, 2, None).unwrap();
        assert!(agree(&Poly::x(&f9)).is_pp);
        let c = agree(&pp(&f9, "x^2"));
        assert!(!c.is_pp);
        let (a, b) = c.witness.unwrap();
        assert_eq!(f9.neg(a), b);
        let brute = is_permutation(&pp(&f9, "x^2"), PpMethod::Brute).unwrap();
        assert_eq!(brute.witness, Some((f9.elt(1), f9.elt(2))));
        agree(&pp(&f9, "(x^3-x)^2+x"));
        assert!(agree(&pp(&f9, "x^5+[3]")).is_pp);
    }

    #[test]
    fn quotient_criterion() {
        let f16 = Field::new(2, 4, None).unwrap();
        let l = LinearizedPoly::from_codes(&f16, &[1, 0, 1]);
        let x = LinearizedPoly::identity(&f16);
        assert!(pp_criterion_quotient(&Poly::zero(&f16), &l, &x).unwrap());
        for s in ["x^3", "x^2+[5]*x", "[7]*x^3+x+[2]", "x^4+x"] {
            let fpoly = pp(&f16, s);
            let brute = agree(&(&fpoly.compose(&l.to_poly()) + &Poly::x(&f16))).is_pp;
            assert_eq!(pp_criterion_quotient(&fpoly, &l, &x).unwrap(), brute);
        }
        let m = LinearizedPoly::from_codes(&f16, &[3]);
        // M = 3x keeps the roots of x^4 + x only if 3 lies in F_4
        let ok = pp_criterion_quotient(&Poly::zero(&f16), &l, &m);
        assert!(ok.is_ok() || matches!(ok, Err(Error::Precondition(_))));
    }

    #[test]
    fn inverse_examples() {
        let f8 = Field::new(2, 3, None).unwrap();
        let x = Poly::x(&f8);
        assert_eq!(inverse_pp(&x).unwrap().inverse, x);
        let a = f8.elt(5);
        let b = f8.elt(3);
        let affine = Poly::new(&f8, vec![b, a]);
        let inv = inverse_pp(&affine).unwrap().inverse;
        let ai = f8.inv(a).unwrap();
        assert_eq!(inv, Poly::new(&f8, vec![f8.mul(ai, b), ai]));

        let l = pp(&f8, "x^2+x");
        // f = Tr(y^3) satisfies L(f) = 0, so f(L(x)) + x permutes F_8
        let f = LinearizedPoly::trace(&f8).to_poly().compose(&pp(&f8, "x^3"));
        let g = &f.compose(&l) + &x;
        assert!(is_permutation(&g, PpMethod::Brute).unwrap().is_pp);
        let inv = inverse_pp(&g).unwrap().inverse;
        for y in f8.elements() {
            assert_eq!(inv.eval(g.eval(y)), y);
            assert_eq!(g.eval(inv.eval(y)), y);
        }
        assert!(matches!(inverse_pp(&pp(&f8, "x^2+x")), Err(Error::Precondition(_))));
    }
}
