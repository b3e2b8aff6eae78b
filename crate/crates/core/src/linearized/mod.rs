//! p-linearized polynomials `sum a_i x^{p^i}` and the subspaces they cut out.
//!
//! Composition of linearized polynomials is again linearized, with
//! `(A o B)_k = sum_{i+j=k} a_i b_j^{p^i}`, so quotients and complements
//! are computed by right division in that (noncommutative) ring rather than
//! by dense division of polynomials of degree up to q.

mod subspace;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::linalg;
use crate::par::*;
use crate::poly::{write_terms, Poly};

pub use subspace::{all_subspaces, CosetDecomposition, Subspace};

/// `sum_i a_i x^{p^i}`, stored as `[a_0, a_1, ...]` without trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearizedPoly {
    field: Field,
    coeffs: Vec<Elt>,
}

impl LinearizedPoly {
    pub fn new(field: &Field, mut coeffs: Vec<Elt>) -> LinearizedPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LinearizedPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_codes(field: &Field, codes: &[u32]) -> LinearizedPoly {
        LinearizedPoly::new(field, codes.iter().map(|&c| field.elt(c)).collect())
    }

    pub fn zero(field: &Field) -> LinearizedPoly {
        LinearizedPoly::new(field, Vec::new())
    }

    /// The identity map `x`.
    pub fn identity(field: &Field) -> LinearizedPoly {
        LinearizedPoly::new(field, vec![Elt::ONE])
    }

    /// `c x^{p^i}`.
    pub fn monomial(field: &Field, c: Elt, i: usize) -> LinearizedPoly {
        let mut v = vec![Elt::ZERO; i + 1];
        v[i] = c;
        LinearizedPoly::new(field, v)
    }

    /// `x^q - x`.
    pub fn field_poly(field: &Field) -> LinearizedPoly {
        let n = field.n() as usize;
        let mut v = vec![Elt::ZERO; n + 1];
        v[0] = field.neg(Elt::ONE);
        v[n] = Elt::ONE;
        LinearizedPoly::new(field, v)
    }

    /// The absolute trace `x + x^p + ... + x^{p^{n-1}}`.
    pub fn trace(field: &Field) -> LinearizedPoly {
        LinearizedPoly::new(field, vec![Elt::ONE; field.n() as usize])
    }

    /// Linearized view of `P`, if every monomial has a p-power exponent and
    /// the constant term is zero.
    pub fn from_poly(poly: &Poly) -> Option<LinearizedPoly> {
        let f = poly.field();
        let p = f.p() as usize;
        let mut out = Vec::new();
        let mut next = 1usize;
        for (e, &c) in poly.coeffs().iter().enumerate() {
            if e == next {
                out.push(c);
                next = next.saturating_mul(p);
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(LinearizedPoly::new(f, out))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// `[a_0, a_1, ...]`.
    pub fn coeffs(&self) -> &[Elt] {
        &self.coeffs
    }

    pub fn codes(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.code()).collect()
    }

    pub fn coeff(&self, i: usize) -> Elt {
        self.coeffs.get(i).copied().unwrap_or(Elt::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest `i` with `a_i != 0`.
    pub fn p_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ordinary degree `p^i` of the polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.p_degree().map(|i| (self.field.p() as u64).pow(i as u32))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Elt::ONE)
    }

    /// Nonzero coefficient of `x`, equivalently `gcd(L, L') = 1`.
    pub fn is_separable(&self) -> bool {
        !self.coeff(0).is_zero()
    }

    pub fn eval(&self, a: Elt) -> Elt {
        let f = &self.field;
        let mut acc = Elt::ZERO;
        let mut power = a;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = f.frobenius(power);
            }
            acc = f.add(acc, f.mul(c, power));
        }
        acc
    }

    /// Values at every field element, indexed by code.
    pub fn values(&self) -> Vec<Elt> {
        (0..self.field.q()).into_par_iter().map(|c| self.eval(Elt(c))).collect()
    }

    pub fn to_poly(&self) -> Poly {
        let f = &self.field;
        let Some(deg) = self.degree() else {
            return Poly::zero(f);
        };
        let mut v = vec![Elt::ZERO; deg as usize + 1];
        let mut e = 1usize;
        for &c in &self.coeffs {
            v[e] = c;
            e *= f.p() as usize;
        }
        Poly::new(f, v)
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &LinearizedPoly) -> LinearizedPoly {
        assert!(
            self.field == other.field,
            "linearized polynomials over different fields"
        );
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return LinearizedPoly::zero(f);
        }
        let mut out = vec![Elt::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let t = f.mul(a, f.frobenius_iter(b, i as u32));
                out[i + j] = f.add(out[i + j], t);
            }
        }
        LinearizedPoly::new(f, out)
    }

    pub fn add(&self, other: &LinearizedPoly) -> LinearizedPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        LinearizedPoly::new(f, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &LinearizedPoly) -> LinearizedPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        LinearizedPoly::new(f, (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, c: Elt) -> LinearizedPoly {
        let f = &self.field;
        LinearizedPoly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Right division: `self = Q o divisor + R` with `p_degree(R) <
    /// p_degree(divisor)`.
    pub fn div_rem_right(&self, divisor: &LinearizedPoly) -> Result<(LinearizedPoly, LinearizedPoly)> {
        if self.field != divisor.field {
            return Err(Error::MixedFields);
        }
        let f = &self.field;
        let Some(m) = divisor.p_degree() else {
            return Err(Error::DivisionByZero);
        };
        let mut rem = self.coeffs.clone();
        if rem.len() <= m {
            return Ok((LinearizedPoly::zero(f), self.clone()));
        }
        let lead = divisor.coeffs[m];
        let mut quot = vec![Elt::ZERO; rem.len() - m];
        for top in (m..rem.len()).rev() {
            if rem[top].is_zero() {
                continue;
            }
            // c x^{p^s} o divisor has top coefficient c * lead^{p^s}
            let s = top - m;
            let c = f.div(rem[top], f.frobenius_iter(lead, s as u32))?;
            quot[s] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[s + j] = f.sub(rem[s + j], f.mul(c, f.frobenius_iter(b, s as u32)));
            }
        }
        rem.truncate(m);
        Ok((LinearizedPoly::new(f, quot), LinearizedPoly::new(f, rem)))
    }

    /// `{z in F_q : L(z) = 0}` by exhaustive evaluation.
    pub fn kernel(&self) -> Result<Subspace> {
        if self.is_zero() {
            return Err(Error::pre("kernel of the zero linearized polynomial"));
        }
        let f = &self.field;
        let roots: Vec<Elt> = (1..f.q())
            .into_par_iter()
            .map(Elt)
            .filter(|&a| self.eval(a).is_zero())
            .collect();
        Ok(Subspace::span(f, &roots))
    }

    /// `L(U)`, spanned by the images of a basis of `U`.
    pub fn image_of(&self, u: &Subspace) -> Subspace {
        let imgs: Vec<Elt> = u.basis().iter().map(|&b| self.eval(b)).collect();
        Subspace::span(&self.field, &imgs)
    }
}

impl fmt::Display for LinearizedPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.field.p() as u64;
        let terms = self.coeffs.iter().enumerate().rev().map(|(i, &c)| (p.pow(i as u32), c));
        write_terms(out, &self.field, terms)
    }
}

impl fmt::Debug for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearizedPoly({self} over {:?})", self.field)
    }
}

/// Linearized view of `poly`, see [`LinearizedPoly::from_poly`].
pub fn is_linearized(poly: &Poly) -> Option<LinearizedPoly> {
    LinearizedPoly::from_poly(poly)
}

/// Kernel of `L`, see [`LinearizedPoly::kernel`].
pub fn kernel(l: &LinearizedPoly) -> Result<Subspace> {
    l.kernel()
}

/// The subspace polynomial `prod_{v in U} (x - v)`, built one basis vector
/// at a time via `V'(x) = V(x)^p - V(b)^{p-1} V(x)`.
pub fn vanishing_poly(u: &Subspace) -> LinearizedPoly {
    let f = u.field();
    let mut v = LinearizedPoly::identity(f);
    for &b in u.basis() {
        let c = f.pow(v.eval(b), f.p() as u64 - 1);
        let mut next = vec![Elt::ZERO; v.coeffs.len() + 1];
        for (i, &a) in v.coeffs.iter().enumerate() {
            next[i + 1] = f.add(next[i + 1], f.frobenius(a));
            next[i] = f.sub(next[i], f.mul(c, a));
        }
        v = LinearizedPoly::new(f, next);
    }
    v
}

/// Digits `[Q_0, ..., Q_e]` of `P` in base `L`: `P = sum Q_i L^i` with
/// `deg Q_i < deg L`. The zero polynomial has the single digit 0.
pub fn basis_l_expansion(p: &Poly, l: &LinearizedPoly) -> Result<Vec<Poly>> {
    if l.degree().unwrap_or(0) < 1 {
        return Err(Error::pre("expansion base must have degree at least 1"));
    }
    let lp = l.to_poly();
    let mut digits = Vec::new();
    let mut cur = p.clone();
    loop {
        let (q, r) = cur.div_rem(&lp)?;
        digits.push(r);
        if q.is_zero() {
            return Ok(digits);
        }
        cur = q;
    }
}

/// The linearized `N` with `N(L(x)) = M(x)`.
///
/// `M` must be linearized and `L` separable with `L | M`; anything else is
/// a precondition error. The answer is checked by composing it back.
pub fn linearized_quotient(m: &Poly, l: &LinearizedPoly) -> Result<LinearizedPoly> {
    let m = is_linearized(m).ok_or_else(|| Error::pre("dividend is not p-linearized"))?;
    linearized_quotient_lin(&m, l)
}

/// [`linearized_quotient`] for an already linearized dividend.
pub fn linearized_quotient_lin(m: &LinearizedPoly, l: &LinearizedPoly) -> Result<LinearizedPoly> {
    if !l.is_separable() {
        return Err(Error::pre("divisor is not separable"));
    }
    let (n, r) = m.div_rem_right(l)?;
    if !r.is_zero() {
        return Err(Error::pre(format!("{l} does not divide {m}")));
    }
    if n.compose(l) != *m {
        return Err(Error::invariant(format!(
            "quotient {n} of {m} by {l} does not compose back"
        )));
    }
    Ok(n)
}

/// The `L~` with `L~(L(x)) = x^q - x = L(L~(x))`.
pub fn complement(l: &LinearizedPoly) -> Result<LinearizedPoly> {
    if !l.is_monic() {
        return Err(Error::pre("complement needs a monic subspace polynomial"));
    }
    let fp = LinearizedPoly::field_poly(l.field());
    let (t, r) = fp.div_rem_right(l)?;
    if !r.is_zero() {
        return Err(Error::pre(format!("{l} does not divide x^q-x")));
    }
    if t.compose(l) != fp || l.compose(&t) != fp {
        return Err(Error::invariant(format!("{l} and its complement {t} do not commute")));
    }
    Ok(t)
}

/// The unique `M_0 = sum_{i < bound} c_i x^{p^i}` with `M_0(u_j) = w_j`.
/// The `u_j` must be F_p-independent and exactly `bound` in number.
pub fn linearized_interpolate(field: &Field, pairs: &[(Elt, Elt)], bound: usize) -> Result<LinearizedPoly> {
    if pairs.len() != bound {
        return Err(Error::pre(format!(
            "linearized interpolation needs exactly {bound} pairs, got {}",
            pairs.len()
        )));
    }
    let f = field;
    let matrix = pairs
        .iter()
        .map(|&(u, _)| (0..bound as u32).map(|i| f.frobenius_iter(u, i)).collect())
        .collect();
    let rhs = pairs.iter().map(|&(_, w)| w).collect();
    let c = linalg::solve(f, matrix, rhs).ok_or_else(|| Error::pre("interpolation points are not F_p-independent"))?;
    Ok(LinearizedPoly::new(f, c))
}

/// `M(U)`, see [`LinearizedPoly::image_of`].
pub fn subspace_image(m: &LinearizedPoly, u: &Subspace) -> Subspace {
    m.image_of(u)
}
