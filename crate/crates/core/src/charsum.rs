//! Multiplicative character sums and the bounds derived from the maximal
//! decomposition.
//!
//! Characters are `eta_j(g^m) = exp(2 pi i j m / (q - 1))` for the field's
//! primitive element `g`, with `eta_j(0) = 0`. Sums over F_q are split into
//! fixed 4096-element chunks whose partial sums are combined by a pairwise
//! tree, so results do not depend on the thread count.

use num_complex::Complex64;

use crate::additive::{maximal_decomposition, AdditiveDecomposition};
use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::linearized::Subspace;
use crate::par::*;
use crate::poly::Poly;

const CHUNK: usize = 4096;

/// The multiplicative character `eta_j`.
#[derive(Clone, Debug)]
pub struct MultChar {
    field: Field,
    j: u32,
    roots: Vec<Complex64>,
}

impl MultChar {
    pub fn new(field: &Field, j: u32) -> Result<MultChar> {
        let order = field.q() - 1;
        if j >= order.max(1) {
            return Err(Error::pre(format!("character index {j} must be below {order}")));
        }
        let step = std::f64::consts::TAU / order as f64;
        let roots = (0..order)
            .map(|m| Complex64::from_polar(1.0, step * m as f64))
            .collect();
        Ok(MultChar {
            field: field.clone(),
            j,
            roots,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn is_trivial(&self) -> bool {
        self.j == 0
    }

    /// `(q - 1) / gcd(j, q - 1)`.
    pub fn order(&self) -> u32 {
        let m = self.field.q() - 1;
        m / gcd(self.j, m)
    }

    fn at_log(&self, m: u32) -> Complex64 {
        let order = self.field.q() as u64 - 1;
        self.roots[((self.j as u64 * m as u64) % order) as usize]
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn char_eval(chi: &MultChar, a: Elt) -> Complex64 {
    match chi.field.discrete_log(a) {
        Ok(m) => chi.at_log(m),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

fn tree_sum(mut parts: Vec<Complex64>) -> Complex64 {
    if parts.is_empty() {
        return Complex64::new(0.0, 0.0);
    }
    while parts.len() > 1 {
        parts = parts.chunks(2).map(|c| c.iter().sum()).collect();
    }
    parts[0]
}

/// `sum eta(v)` over a list of values, with a fixed reduction order.
fn sum_values(chi: &MultChar, values: &[Elt]) -> Complex64 {
    let chunks: Vec<&[Elt]> = values.chunks(CHUNK).collect();
    let parts: Vec<Complex64> = chunks
        .into_par_iter()
        .map(|c| c.iter().map(|&v| char_eval(chi, v)).sum::<Complex64>())
        .collect();
    tree_sum(parts)
}

/// `sum_{x in F_q} eta(P(x))`.
pub fn char_sum(p: &Poly, chi: &MultChar) -> Result<Complex64> {
    if !p.field().same_field(&chi.field) {
        return Err(Error::MixedFields);
    }
    Ok(sum_values(chi, &p.values()))
}

/// `p^{min(e, n/2)}`, exact when `2e <= n`.
fn affine_bound(f: &Field, e: u32) -> f64 {
    if 2 * e <= f.n() {
        (f.p() as f64).powi(e as i32)
    } else {
        (f.q() as f64).sqrt()
    }
}

/// Sum of a nontrivial `eta` over the affine space `a + W`, with the bound
/// `p^{min(e, n/2)}` where `|W| = p^e`. Exceeding the bound is an
/// invariant violation.
pub fn char_sum_affine(a: Elt, w: &Subspace, chi: &MultChar) -> Result<(Complex64, f64)> {
    if chi.is_trivial() {
        return Err(Error::pre("the affine-space bound needs a nontrivial character"));
    }
    let f = w.field();
    let values: Vec<Elt> = w.elements().into_iter().map(|u| f.add(a, u)).collect();
    let sum = sum_values(chi, &values);
    let bound = affine_bound(f, w.dim());
    if sum.norm() > bound + 1e-6 {
        return Err(Error::invariant(format!(
            "|sum over [{}] + {w:?}| = {} exceeds {bound} for j = {}",
            a.code(),
            sum.norm(),
            chi.j
        )));
    }
    Ok((sum, bound))
}

/// Whether `P = a g(x)^r` for some `a`, some polynomial `g` and a divisor
/// `r > 1` of `q - 1`; returns the smallest such `r`.
///
/// Values are screened first (every `P(x)/a` must be an `r`-th power),
/// then the candidate root is solved coefficient by coefficient from the
/// top and checked by exact expansion.
pub fn perfect_power_exponent(p: &Poly) -> Option<u64> {
    let f = p.field();
    let d = p.degree()? as u64;
    if d == 0 {
        return None;
    }
    let monic = p.monic();
    let values = monic.values();
    let order = f.q() as u64 - 1;
    (2..=order)
        .filter(|r| order.is_multiple_of(*r) && d.is_multiple_of(*r))
        .find(|&r| {
            let k = order / r;
            values.iter().all(|&v| v.is_zero() || f.pow(v, k) == Elt::ONE) && exact_root(&monic, r).is_some()
        })
}

/// Monic `g` with `g^r = p` for monic `p` and `p` not dividing `r`.
fn exact_root(p: &Poly, r: u64) -> Option<Poly> {
    let f = p.field();
    let d = p.degree()?;
    let m = d / r as usize;
    let r_inv = f.inv(f.from_int(r as i64)).ok()?;
    let mut g = vec![Elt::ZERO; m + 1];
    g[m] = Elt::ONE;
    for k in 1..=m {
        // coefficient of x^{d-k} in g^r is r g_{m-k} + (terms in g_{m-k+1..m})
        let partial = Poly::new(f, g.clone()).pow(r);
        let have = partial.coeff(d - k);
        g[m - k] = f.mul(f.sub(p.coeff(d - k), have), r_inv);
    }
    let g = Poly::new(f, g);
    (g.pow(r) == *p).then_some(g)
}

/// Bounds for `|sum eta(P(x))|` next to the measured value.
#[derive(Clone, Debug, PartialEq)]
pub struct CharSumReport {
    pub j: u32,
    pub re: f64,
    pub im: f64,
    pub abs: f64,
    /// `p^e = |M(U)| = deg L / deg gcd(L, M)`.
    pub e: u32,
    pub index: u32,
    pub gcd_degree: u64,
    /// `deg f`.
    pub s: u64,
    /// `p^{n - e + min(e, n/2)}`.
    pub additive_bound: f64,
    /// `(s deg L - 1) p^{n/2}`, with `deg P` in place of `s deg L` when `f` is constant.
    pub weil_bound: f64,
    /// `s >= 1` and `P` is not of the form `a g(x)^r` with `r | q - 1`.
    pub weil_applicable: bool,
    pub trivial_bound: f64,
    /// `e > n/2`.
    pub nontrivial_regime: bool,
    /// The additive bound is below both `q` and an applicable Weil bound.
    pub beats_weil_and_trivial: bool,
}

/// Precomputes the decomposition, the value table and the Weil
/// applicability of one polynomial for reports over many characters.
pub struct CharSumAnalyzer {
    d: AdditiveDecomposition,
    values: Vec<Elt>,
    perfect_power: Option<u64>,
}

impl CharSumAnalyzer {
    pub fn new(p: &Poly) -> Result<CharSumAnalyzer> {
        let d = maximal_decomposition(p)?;
        let values = d.poly.values();
        let perfect_power = perfect_power_exponent(&d.poly);
        Ok(CharSumAnalyzer {
            d,
            values,
            perfect_power,
        })
    }

    pub fn decomposition(&self) -> &AdditiveDecomposition {
        &self.d
    }

    /// Smallest `r > 1`, `r | q - 1`, with `P = a g^r`, if any.
    pub fn perfect_power(&self) -> Option<u64> {
        self.perfect_power
    }

    pub fn sum(&self, chi: &MultChar) -> Result<Complex64> {
        if !self.d.field().same_field(&chi.field) {
            return Err(Error::MixedFields);
        }
        Ok(sum_values(chi, &self.values))
    }

    pub fn report(&self, chi: &MultChar) -> Result<CharSumReport> {
        if chi.is_trivial() {
            return Err(Error::pre("character-sum bounds need a nontrivial character"));
        }
        let f = self.d.field();
        let sum = self.sum(chi)?;
        let n = f.n();
        let q = f.q() as f64;
        let e = self.d.image_subspace().dim();
        let additive_bound = (f.p() as f64).powi((n - e) as i32) * affine_bound(f, e);
        let s = self.d.f.degree().unwrap_or(0) as u64;
        let deg_l = self.d.l.degree().unwrap_or(1);
        let weil_deg = if s == 0 {
            self.d.poly.degree().unwrap_or(0) as u64
        } else {
            s * deg_l
        };
        let weil_bound = (weil_deg.max(1) - 1) as f64 * q.sqrt();
        let weil_applicable = s >= 1 && self.perfect_power.is_none();
        let abs = sum.norm();
        if abs > additive_bound + 1e-6 {
            return Err(Error::invariant(format!(
                "|sum eta_{}(P(x))| = {abs} exceeds p^(n-e+min(e,n/2)) = {additive_bound} for P = {}",
                chi.j, self.d.poly
            )));
        }
        Ok(CharSumReport {
            j: chi.j,
            re: sum.re,
            im: sum.im,
            abs,
            e,
            index: self.d.index,
            gcd_degree: self.d.gcd_lm_degree(),
            s,
            additive_bound,
            weil_bound,
            weil_applicable,
            trivial_bound: q,
            nontrivial_regime: 2 * e > n,
            beats_weil_and_trivial: weil_applicable && additive_bound < weil_bound && additive_bound < q,
        })
    }
}

pub fn bound_report(p: &Poly, chi: &MultChar) -> Result<CharSumReport> {
    CharSumAnalyzer::new(p)?.report(chi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linearized::all_subspaces;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-9
    }

    #[test]
    fn evaluation() {
        let f4 = Field::new(2, 2, None).unwrap();
        let chi = MultChar::new(&f4, 1).unwrap();
        let g = f4.primitive();
        assert!(close(
            char_eval(&chi, g),
            Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0)
        ));
        assert_eq!(char_eval(&chi, Elt::ZERO), Complex64::new(0.0, 0.0));
        let triv = MultChar::new(&f4, 0).unwrap();
        assert!(f4
            .elements()
            .skip(1)
            .all(|a| close(char_eval(&triv, a), Complex64::new(1.0, 0.0))));
        let f9 = Field::new(3, 2, None).unwrap();
        let quad = MultChar::new(&f9, 4).unwrap();
        assert_eq!(quad.order(), 2);
        for a in f9.elements().skip(1) {
            assert!(close(char_eval(&quad, f9.mul(a, a)), Complex64::new(1.0, 0.0)));
        }
        assert!(MultChar::new(&f9, 8).is_err());
    }

    #[test]
    fn multiplicative() {
        let f27 = Field::new(3, 3, None).unwrap();
        let chi = MultChar::new(&f27, 5).unwrap();
        for a in f27.elements().skip(1).step_by(3) {
            for b in f27.elements().skip(1).step_by(5) {
                assert!(close(
                    char_eval(&chi, f27.mul(a, b)),
                    char_eval(&chi, a) * char_eval(&chi, b)
                ));
            }
        }
    }

    #[test]
    fn sums() {
        let f5 = Field::new(5, 1, None).unwrap();
        let quad = MultChar::new(&f5, 2).unwrap();
        let s = char_sum(&Poly::parse(&f5, "x^2").unwrap(), &quad).unwrap();
        assert!(close(s, Complex64::new(4.0, 0.0)));
        let f16 = Field::new(2, 4, None).unwrap();
        for j in 1..15 {
            let chi = MultChar::new(&f16, j).unwrap();
            assert!(char_sum(&Poly::x(&f16), &chi).unwrap().norm() < 1e-9);
            let c = f16.elt(7);
            let s = char_sum(&Poly::constant(&f16, c), &chi).unwrap();
            assert!(close(s, char_eval(&chi, c) * 16.0));
            let p = Poly::parse(&f16, "x^5+[3]*x^2+1").unwrap();
            let conj = MultChar::new(&f16, 15 - j).unwrap();
            assert!(close(char_sum(&p, &chi).unwrap(), char_sum(&p, &conj).unwrap().conj()));
        }
        // trivial character counts the non-roots
        let p = Poly::parse(&f16, "x^2+x").unwrap();
        let triv = MultChar::new(&f16, 0).unwrap();
        assert!(close(char_sum(&p, &triv).unwrap(), Complex64::new(14.0, 0.0)));
    }

    #[test]
    fn affine_lemma_on_all_subspaces_of_f16() {
        let f16 = Field::new(2, 4, None).unwrap();
        let chars: Vec<MultChar> = (1..15).map(|j| MultChar::new(&f16, j).unwrap()).collect();
        for w in all_subspaces(&f16) {
            for &a in w.coset_reps().reps() {
                for chi in &chars {
                    char_sum_affine(a, &w, chi).unwrap();
                }
            }
        }
        let f4 = Field::new(2, 2, None).unwrap();
        let chi = MultChar::new(&f4, 1).unwrap();
        let (s, b) = char_sum_affine(Elt::ONE, &Subspace::span(&f4, &[Elt::ONE]), &chi).unwrap();
        assert!(s.norm() <= b && b == 2.0);
    }

    #[test]
    fn reports() {
        let f9 = Field::new(3, 2, None).unwrap();
        let p = Poly::parse(&f9, "(x^3-x)^2+x").unwrap();
        for j in 1..8 {
            let r = bound_report(&p, &MultChar::new(&f9, j).unwrap()).unwrap();
            assert_eq!((r.e, r.additive_bound), (1, 9.0));
        }
        let r = bound_report(&Poly::x(&f9), &MultChar::new(&f9, 1).unwrap()).unwrap();
        assert_eq!(r.additive_bound, 3.0);
        assert!(r.abs < 1e-9 && !r.weil_applicable);
        assert!(bound_report(&p, &MultChar::new(&f9, 0).unwrap()).is_err());
    }

    #[test]
    fn perfect_powers() {
        let f16 = Field::new(2, 4, None).unwrap();
        let g = Poly::parse(&f16, "x^2+[3]*x+[7]").unwrap();
        let p = g.pow(3).scale(f16.elt(9));
        assert_eq!(perfect_power_exponent(&p), Some(3));
        assert_eq!(perfect_power_exponent(&Poly::parse(&f16, "x^3+x+1").unwrap()), None);
        let f9 = Field::new(3, 2, None).unwrap();
        assert_eq!(perfect_power_exponent(&Poly::parse(&f9, "x^2+2*x+1").unwrap()), Some(2));
        assert_eq!(perfect_power_exponent(&Poly::parse(&f9, "x^2+1").unwrap()), None);
    }
}
