//! Involutions through the maximal decomposition.
//!
//! `P` is an involution iff (i) `M(U) = U` with `M(M(u)) = u` on `U`, and
//! (ii) `P(P(zeta)) = zeta` for every coset representative `zeta` of `U`.

use crate::additive::maximal_decomposition;
use crate::error::{Error, Result};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionReport {
    pub is_involution: bool,
    pub cond_i: bool,
    pub cond_ii: bool,
    /// `P(P(y)) = y` for all `y`.
    pub brute: bool,
    /// Number of `y` with `P(y) = y`.
    pub fixed_points: u64,
}

pub fn is_involution(p: &Poly) -> Result<InvolutionReport> {
    let d = maximal_decomposition(p)?;
    let u = &d.kernel;
    let cond_i = d.image_subspace() == *u && u.elements().into_iter().all(|x| d.m.eval(d.m.eval(x)) == x);
    let cond_ii = d.cosets().reps().iter().all(|&z| d.poly.eval(d.poly.eval(z)) == z);
    let values = d.poly.values();
    let brute = values
        .iter()
        .enumerate()
        .all(|(y, v)| values[v.code() as usize].code() as usize == y);
    let fixed_points = values
        .iter()
        .enumerate()
        .filter(|(y, v)| v.code() as usize == *y)
        .count() as u64;
    let is_involution = cond_i && cond_ii;
    if is_involution != brute {
        return Err(Error::invariant(format!(
            "involution conditions give {is_involution} for {} (i: {cond_i}, ii: {cond_ii}), brute force gives {brute}",
            d.poly
        )));
    }
    Ok(InvolutionReport {
        is_involution,
        cond_i,
        cond_ii,
        brute,
        fixed_points,
    })
}
