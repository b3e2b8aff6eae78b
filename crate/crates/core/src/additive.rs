//! The additive kernel `V(P, q)`, the additive index, and the maximal
//! decomposition `P = f(L(x)) + M(x)`.
//!
//! `V(P, q)` is the set of `y` in F_q with `P_0(x + y) = P_0(x) + P_0(y)` as
//! polynomials in `x` (`P_0 = P - P(0)`). It is an F_p-subspace, its
//! vanishing polynomial `L` is the largest subspace polynomial `P` is
//! decomposable by, and `deg L = p^(n-k)` defines the index `k`.

use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::linearized::{
    basis_l_expansion, is_linearized, vanishing_poly, CosetDecomposition, LinearizedPoly, Subspace,
};
use crate::par::*;
use crate::poly::Poly;

/// How to compute the additive kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelMethod {
    /// Roots of `gcd(F_1, ..., F_{d-1}, x^q - x)` from the shift expansion.
    Gcd,
    /// Test the defining identity for every `y` in F_q.
    Brute,
}

impl std::str::FromStr for KernelMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gcd" => Ok(KernelMethod::Gcd),
            "brute" => Ok(KernelMethod::Brute),
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown kernel method {s:?} (expected gcd or brute)"),
            }),
        }
    }
}

/// `P` itself when `deg P < q`, otherwise its reduction mod `x^q - x`
/// (flagged by the boolean). Constant maps are rejected.
pub fn normalize_input(p: &Poly) -> Result<(Poly, bool)> {
    let q = p.field().q() as usize;
    let reduced = p.degree().is_some_and(|d| d >= q);
    let p = if reduced { p.reduce_mod_field_poly() } else { p.clone() };
    if p.is_constant() {
        return Err(Error::pre(if reduced {
            "polynomial induces a constant map on F_q"
        } else {
            "polynomial must have degree at least 1"
        }));
    }
    Ok((p, reduced))
}

/// The subspace `V(P, q)`. Inputs of degree `>= q` are reduced first.
pub fn additive_kernel(p: &Poly, method: KernelMethod) -> Result<Subspace> {
    let (p, _) = normalize_input(p)?;
    match method {
        KernelMethod::Gcd => Ok(kernel_by_gcd(&p)?.1),
        KernelMethod::Brute => kernel_by_brute(&p),
    }
}

/// `gcd(F_1, ..., F_{d-1}, x^q - x)` and its root subspace.
fn kernel_by_gcd(p: &Poly) -> Result<(LinearizedPoly, Subspace)> {
    let f = p.field();
    let mut g = Poly::zero(f);
    for fi in p.shift_expand() {
        g = g.gcd(&fi)?;
        if g.degree() == Some(0) {
            break;
        }
    }
    if g.is_zero() {
        return Ok((LinearizedPoly::field_poly(f), Subspace::whole(f)));
    }
    let g = g.gcd_with_field_poly()?;
    let lin =
        is_linearized(&g).ok_or_else(|| Error::invariant(format!("additive gcd {g} of {p} is not p-linearized")))?;
    let kernel = lin.kernel()?;
    if Some(kernel.len()) != lin.degree() {
        return Err(Error::invariant(format!(
            "additive gcd {g} of {p} does not split into distinct roots"
        )));
    }
    Ok((lin, kernel))
}

fn kernel_by_brute(p: &Poly) -> Result<Subspace> {
    let f = p.field();
    let p0 = p - &Poly::constant(f, p.coeff(0));
    let x = Poly::x(f);
    let hits: Vec<Elt> = (0..f.q())
        .into_par_iter()
        .map(Elt)
        .filter(|&y| {
            let shifted = p0.compose(&(&x + &Poly::constant(f, y)));
            let rhs = &p0 + &Poly::constant(f, p0.eval(y));
            shifted == rhs
        })
        .collect();
    let span = Subspace::span(f, &hits);
    if span.len() != hits.len() as u64 {
        return Err(Error::invariant(format!(
            "additive kernel of {p} has {} elements but spans {}",
            hits.len(),
            span.len()
        )));
    }
    Ok(span)
}

/// `k = n - dim V(P, q)`.
pub fn additive_index(p: &Poly) -> Result<u32> {
    let v = additive_kernel(p, KernelMethod::Gcd)?;
    Ok(p.field().n() - v.dim())
}

/// `P = f(L(x)) + M(x)` with `L` the maximal subspace polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveDecomposition {
    /// The polynomial decomposed (reduced mod `x^q - x` if `reduced`).
    pub poly: Poly,
    /// Whether the input had degree `>= q` and was reduced first.
    pub reduced: bool,
    /// Outer polynomial; carries the constant term `P(0)`.
    pub f: Poly,
    /// Subspace polynomial of the additive kernel.
    pub l: LinearizedPoly,
    /// Linearized remainder, `deg M < deg L`.
    pub m: LinearizedPoly,
    /// Additive index `k`, with `deg L = p^(n-k)`.
    pub index: u32,
    /// Roots of `L`.
    pub kernel: Subspace,
}

impl AdditiveDecomposition {
    pub fn field(&self) -> &Field {
        self.poly.field()
    }

    /// `f(L(x)) + M(x)` expanded.
    pub fn recompose(&self) -> Poly {
        &self.f.compose(&self.l.to_poly()) + &self.m.to_poly()
    }

    /// Monic `gcd(L, M)`; equals `L` when `M = 0`.
    pub fn gcd_lm(&self) -> Poly {
        self.l.to_poly().gcd(&self.m.to_poly()).expect("same field")
    }

    /// `deg gcd(L, M) = |ker M restricted to the kernel|`.
    pub fn gcd_lm_degree(&self) -> u64 {
        self.kernel.len() / self.image_subspace().len()
    }

    /// `W = M(U_L)`.
    pub fn image_subspace(&self) -> Subspace {
        self.m.image_of(&self.kernel)
    }

    /// Canonical cosets of the kernel.
    pub fn cosets(&self) -> CosetDecomposition {
        self.kernel.coset_reps()
    }

    /// The map `x -> P(x)` on F_q, as values indexed by code.
    pub fn values(&self) -> Vec<Elt> {
        self.poly.values()
    }
}

/// The maximal decomposition of `P` (kernel by the gcd route).
pub fn maximal_decomposition(p: &Poly) -> Result<AdditiveDecomposition> {
    let (p, reduced) = normalize_input(p)?;
    let (g, kernel) = kernel_by_gcd(&p)?;
    let l = vanishing_poly(&kernel);
    if l != g {
        return Err(Error::invariant(format!(
            "vanishing polynomial {l} differs from additive gcd {g}"
        )));
    }
    let (f, m) = expand_in_base(&p, &l)?.ok_or_else(|| {
        Error::invariant(format!(
            "{p} is not decomposable by its own additive kernel polynomial {l}"
        ))
    })?;
    let n = p.field().n();
    let d = AdditiveDecomposition {
        poly: p,
        reduced,
        f,
        l,
        m,
        index: n - kernel.dim(),
        kernel,
    };
    if d.recompose() != d.poly {
        return Err(Error::invariant(format!("f(L(x)) + M(x) != P(x) for {}", d.poly)));
    }
    Ok(d)
}

/// Basis-`L` digits of `P - P(0)`; `Some((f, M))` exactly when the digits
/// above 0 are constants and the lowest digit is linearized.
fn expand_in_base(p: &Poly, l: &LinearizedPoly) -> Result<Option<(Poly, LinearizedPoly)>> {
    let fld = p.field();
    let c0 = p.coeff(0);
    let p0 = p - &Poly::constant(fld, c0);
    let digits = basis_l_expansion(&p0, l)?;
    if digits[1..].iter().any(|q| !q.is_constant()) {
        return Ok(None);
    }
    let Some(m) = is_linearized(&digits[0]) else {
        return Ok(None);
    };
    let mut fc: Vec<Elt> = digits.iter().map(|q| q.coeff(0)).collect();
    fc[0] = c0;
    Ok(Some((Poly::new(fld, fc), m)))
}

/// Outcome of [`decompose_with`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LDecomposition {
    Decomposable {
        f: Poly,
        m: LinearizedPoly,
    },
    /// `L` does not divide the maximal subspace polynomial; `remainder` is
    /// that polynomial reduced modulo `L`.
    NotDecomposable {
        remainder: Poly,
    },
}

/// `P = f(L(x)) + M(x)` for a given subspace polynomial `L`, if possible.
pub fn decompose_with(p: &Poly, l: &LinearizedPoly) -> Result<LDecomposition> {
    if !l.is_monic() {
        return Err(Error::pre(format!("{l} is not monic")));
    }
    let (_, r) = LinearizedPoly::field_poly(l.field()).div_rem_right(l)?;
    if !r.is_zero() {
        return Err(Error::pre(format!("{l} does not divide x^q-x")));
    }
    let (p, _) = normalize_input(p)?;
    let (big, _) = kernel_by_gcd(&p)?;
    let (_, rem) = big.div_rem_right(l)?;
    let direct = expand_in_base(&p, l)?;
    match (direct, rem.is_zero()) {
        (Some((f, m)), true) => Ok(LDecomposition::Decomposable { f, m }),
        (None, false) => Ok(LDecomposition::NotDecomposable {
            remainder: rem.to_poly(),
        }),
        (d, _) => Err(Error::invariant(format!(
            "{p}: basis-L digits say decomposable = {}, but {l} | {big} is {}",
            d.is_some(),
            rem.is_zero()
        ))),
    }
}

/// The multiplicative index `(q - 1) / s`, where `s` is the gcd of `q - 1`
/// and the gaps between the exponents of `P - P(0)`; 1 for monomials.
pub fn multiplicative_index(p: &Poly) -> Result<u64> {
    if p.is_constant() {
        return Err(Error::pre("polynomial must have degree at least 1"));
    }
    let q1 = p.field().q() as u64 - 1;
    let exps: Vec<u64> = p
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, _)| e as u64)
        .collect();
    if exps.len() == 1 {
        return Ok(1);
    }
    let r = exps[0];
    let s = exps[1..].iter().fold(q1, |s, &e| gcd(s, e - r));
    Ok(q1 / s)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field(p: u32, n: u32) -> Field {
        Field::new(p, n, None).unwrap()
    }

    fn pp(f: &Field, s: &str) -> Poly {
        Poly::parse(f, s).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let f8 = field(2, 3);
        for m in [KernelMethod::Gcd, KernelMethod::Brute] {
            assert!(additive_kernel(&pp(&f8, "x^3"), m).unwrap().is_zero());
            assert_eq!(additive_kernel(&pp(&f8, "x^2+x+1"), m).unwrap(), Subspace::whole(&f8));
            let f9 = field(3, 2);
            let v = additive_kernel(&pp(&f9, "(x^3-x)^2+x"), m).unwrap();
            assert_eq!(v, Subspace::span(&f9, &[Elt::ONE]));
        }
        assert!(matches!(
            additive_kernel(&pp(&f8, "[3]"), KernelMethod::Gcd),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn index_examples() {
        assert_eq!(additive_index(&pp(&field(2, 3), "x^3")).unwrap(), 3);
        assert_eq!(additive_index(&pp(&field(3, 2), "(x^3-x)^2+x")).unwrap(), 1);
        assert_eq!(additive_index(&pp(&field(5, 2), "x^5+[7]*x+1")).unwrap(), 0);
    }

    #[test]
    fn decomposition_examples() {
        let f9 = field(3, 2);
        let d = maximal_decomposition(&pp(&f9, "(x^3-x)^2+x")).unwrap();
        assert_eq!(d.l.to_poly(), pp(&f9, "x^3-x"));
        assert_eq!(d.f, pp(&f9, "x^2"));
        assert_eq!(d.m.to_poly(), pp(&f9, "x"));
        assert_eq!(d.index, 1);

        let f8 = field(2, 3);
        let d = maximal_decomposition(&pp(&f8, "x^3")).unwrap();
        assert_eq!(d.l, LinearizedPoly::identity(&f8));
        assert_eq!(d.f, pp(&f8, "x^3"));
        assert!(d.m.is_zero());
        assert_eq!(d.index, 3);

        let f25 = field(5, 2);
        let d = maximal_decomposition(&pp(&f25, "x^5+[3]")).unwrap();
        assert_eq!(d.l, LinearizedPoly::field_poly(&f25));
        assert_eq!(d.f, pp(&f25, "[3]"));
        assert_eq!(d.m.to_poly(), pp(&f25, "x^5"));
        assert_eq!(d.index, 0);
    }

    #[test]
    fn gcd_degree_matches_kernel_intersection() {
        let f = field(2, 4);
        for s in ["x^6+x^5+[3]*x^2", "(x^4+x)^3+[7]*x^2+x", "(x^2+x)^5+[9]*x"] {
            let d = maximal_decomposition(&pp(&f, s)).unwrap();
            let direct = d.kernel.elements().iter().filter(|&&u| d.m.eval(u).is_zero()).count();
            assert_eq!(d.gcd_lm().degree(), Some(direct));
            assert_eq!(d.gcd_lm_degree(), direct as u64);
        }
    }

    #[test]
    fn high_degree_inputs_are_reduced() {
        let f = field(2, 2);
        let d = maximal_decomposition(&pp(&f, "x^7+x^2")).unwrap();
        assert!(d.reduced);
        assert_eq!(d.poly, pp(&f, "x^2+x"));
        assert_eq!(d.index, 0);
        assert!(normalize_input(&pp(&f, "x^4-x+1")).is_err());
    }

    #[test]
    fn decompose_with_examples() {
        let f9 = field(3, 2);
        let p = pp(&f9, "(x^3-x)^2+x");
        let x = LinearizedPoly::identity(&f9);
        assert_eq!(
            decompose_with(&p, &x).unwrap(),
            LDecomposition::Decomposable {
                f: p.clone(),
                m: LinearizedPoly::zero(&f9)
            }
        );
        let whole = LinearizedPoly::field_poly(&f9);
        assert!(matches!(
            decompose_with(&p, &whole).unwrap(),
            LDecomposition::NotDecomposable { .. }
        ));
        let affine = pp(&f9, "x^3+[4]*x+2");
        assert!(matches!(
            decompose_with(&affine, &whole).unwrap(),
            LDecomposition::Decomposable { .. }
        ));
        let not_monic = LinearizedPoly::from_codes(&f9, &[1, 2]);
        assert!(decompose_with(&p, &not_monic).is_err());
    }

    #[test]
    fn multiplicative_index_examples() {
        assert_eq!(multiplicative_index(&pp(&field(2, 4), "[5]*x^7+[2]")).unwrap(), 1);
        assert_eq!(multiplicative_index(&pp(&field(2, 4), "x^5+x^3")).unwrap(), 15);
        assert_eq!(multiplicative_index(&pp(&field(3, 2), "x^3+x")).unwrap(), 4);
    }

    fn poly_strategy(f: Field, max_deg: usize) -> impl Strategy<Value = Poly> {
        let q = f.q();
        proptest::collection::vec(0..q, 2..=max_deg + 1).prop_map(move |c| Poly::from_codes(&f, &c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn methods_agree_f16(p in poly_strategy(field(2, 4), 12)) {
            prop_assume!(!p.is_constant());
            prop_assert_eq!(
                additive_kernel(&p, KernelMethod::Gcd).unwrap(),
                additive_kernel(&p, KernelMethod::Brute).unwrap()
            );
        }

        #[test]
        fn shift_identity_on_kernel_f27(p in poly_strategy(field(3, 3), 12)) {
            prop_assume!(!p.is_constant());
            let d = maximal_decomposition(&p).unwrap();
            let f = d.field();
            for a in f.elements() {
                for u in d.kernel.elements() {
                    prop_assert_eq!(p.eval(f.add(a, u)), f.add(p.eval(a), d.m.eval(u)));
                }
            }
        }

        #[test]
        fn index_zero_iff_affine_map_f9(p in poly_strategy(field(3, 2), 8)) {
            prop_assume!(!p.is_constant());
            let f = p.field().clone();
            let vals = p.values();
            let c = vals[0];
            let additive = f.elements().all(|a| f.elements().all(|b| {
                f.sub(vals[f.add(a, b).code() as usize], c)
                    == f.add(f.sub(vals[a.code() as usize], c), f.sub(vals[b.code() as usize], c))
            }));
            prop_assert_eq!(additive_index(&p).unwrap() == 0, additive);
        }
    }
}
