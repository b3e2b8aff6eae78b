//! Value-set sizes from the coset structure of the decomposition.
//!
//! `P` maps each coset `zeta + U` of the additive kernel onto the coset
//! `P(zeta) + W` with `W = M(U)`, so the value set is a union of `c` cosets
//! of `W` and `|V_P| = c |W|`.

use std::collections::HashSet;

use crate::additive::{maximal_decomposition, multiplicative_index, AdditiveDecomposition};
use crate::error::{Error, Result};
use crate::field::Elt;
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ValueSetMethod {
    /// Count image cosets of `W` over the canonical representatives.
    Theorem,
    /// Evaluate on all of F_q.
    Brute,
}

impl std::str::FromStr for ValueSetMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem" => Ok(ValueSetMethod::Theorem),
            "brute" => Ok(ValueSetMethod::Brute),
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown value-set method {s:?} (expected theorem or brute)"),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValueSetSize {
    pub size: u64,
    /// Number of distinct cosets of `W` hit (theorem method only).
    pub c: Option<u64>,
}

pub fn value_set_size(p: &Poly, method: ValueSetMethod) -> Result<ValueSetSize> {
    match method {
        ValueSetMethod::Theorem => Ok(theorem_size(&maximal_decomposition(p)?)),
        ValueSetMethod::Brute => {
            let (p, _) = crate::additive::normalize_input(p)?;
            let distinct: HashSet<Elt> = p.values().into_iter().collect();
            Ok(ValueSetSize {
                size: distinct.len() as u64,
                c: None,
            })
        }
    }
}

pub(crate) fn theorem_size(d: &AdditiveDecomposition) -> ValueSetSize {
    let w = d.image_subspace();
    let keys: HashSet<Elt> = d.cosets().reps().iter().map(|&z| w.reduce(d.poly.eval(z))).collect();
    let c = keys.len() as u64;
    ValueSetSize {
        size: c * w.len(),
        c: Some(c),
    }
}

/// The value-set threshold for permutations, with the classical bounds in
/// terms of the degree and the multiplicative index for comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdReport {
    pub value_set: u64,
    pub is_pp: bool,
    pub gcd_is_x: bool,
    pub index: u32,
    /// `p^n - p^(n-k)`.
    pub threshold: u64,
    /// `gcd(L, M) = x` and `|V_P| > threshold` must force a permutation.
    pub implication_holds: bool,
    pub degree: usize,
    pub multiplicative_index: u64,
    /// `q - (q - 1)/d`, the degree bound for non-permutations.
    pub wan_bound: f64,
    /// `q - (q - 1)/l` with `l` the multiplicative index.
    pub mww_bound: f64,
}

pub fn value_set_pp_threshold(p: &Poly) -> Result<ThresholdReport> {
    let d = maximal_decomposition(p)?;
    let f = d.field();
    let q = f.q() as u64;
    let vs = theorem_size(&d).size;
    let gcd_is_x = d.gcd_lm_degree() == 1;
    let threshold = q - d.kernel.len();
    let is_pp = vs == q;
    let implication_holds = !(gcd_is_x && !is_pp && vs > threshold);
    let degree = d.poly.degree().unwrap_or(0);
    let l = multiplicative_index(&d.poly)?;
    let qf = q as f64;
    Ok(ThresholdReport {
        value_set: vs,
        is_pp,
        gcd_is_x,
        index: d.index,
        threshold,
        implication_holds,
        degree,
        multiplicative_index: l,
        wan_bound: qf - (qf - 1.0) / degree as f64,
        mww_bound: qf - (qf - 1.0) / l as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn both(p: &Poly) -> (ValueSetSize, ValueSetSize) {
        (
            value_set_size(p, ValueSetMethod::Theorem).unwrap(),
            value_set_size(p, ValueSetMethod::Brute).unwrap(),
        )
    }

    #[test]
    fn examples() {
        let f9 = Field::new(3, 2, None).unwrap();
        let (t, b) = both(&Poly::parse(&f9, "x^2").unwrap());
        assert_eq!((t.size, b.size), (5, 5));
        let (t, b) = both(&Poly::parse(&f9, "(x^3-x)^2+x").unwrap());
        assert_eq!(t.size, b.size);
        // a permutation hits all p^k cosets
        let (t, b) = both(&Poly::parse(&f9, "x^5").unwrap());
        assert_eq!((t.size, b.size, t.c), (9, 9, Some(9)));
        // index 0: the single coset is all of F_q
        let (t, _) = both(&Poly::parse(&f9, "x^3+[4]*x+1").unwrap());
        assert_eq!(t.c, Some(1));
    }

    #[test]
    fn threshold_report() {
        let f16 = Field::new(2, 4, None).unwrap();
        let r = value_set_pp_threshold(&Poly::parse(&f16, "(x^4+x)^3+x").unwrap()).unwrap();
        assert!(r.implication_holds);
        assert_eq!(r.threshold, 16 - 2u64.pow(4 - r.index));
        let r = value_set_pp_threshold(&Poly::x(&f16)).unwrap();
        assert!(r.is_pp && r.implication_holds);
    }
}
