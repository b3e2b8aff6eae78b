//! Seeded random instances for sweeps and property tests.
//!
//! Every sampler takes an explicit RNG; [`rng`] derives independent ChaCha
//! streams from a seed so that parallel sweeps stay reproducible.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{TranslatorKind, TranslatorSpec};
use crate::field::{Elt, Field};
use crate::linearized::{linearized_interpolate, vanishing_poly, LinearizedPoly, Subspace};
use crate::poly::{lagrange_interpolate, Poly};

/// ChaCha8 generator for `(seed, stream)`.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn random_elt(f: &Field, rng: &mut impl Rng) -> Elt {
    f.elt(rng.random_range(0..f.q()))
}

pub fn random_nonzero(f: &Field, rng: &mut impl Rng) -> Elt {
    f.elt(rng.random_range(1..f.q()))
}

/// Uniform polynomial of degree at most `max_deg` (capped at `q - 1`),
/// resampled until non-constant.
pub fn random_poly(f: &Field, max_deg: usize, rng: &mut impl Rng) -> Poly {
    let d = max_deg.min(f.q() as usize - 1).max(1);
    loop {
        let p = Poly::new(f, (0..=d).map(|_| random_elt(f, rng)).collect());
        if !p.is_constant() {
            return p;
        }
    }
}

/// Random subspace of the given dimension.
pub fn random_subspace(f: &Field, dim: u32, rng: &mut impl Rng) -> Subspace {
    let dim = dim.min(f.n());
    let mut u = Subspace::zero(f);
    while u.dim() < dim {
        u = u.extend(&[random_nonzero(f, rng)]);
    }
    u
}

/// Random linearized polynomial of p-degree below `n`.
pub fn random_linearized(f: &Field, rng: &mut impl Rng) -> LinearizedPoly {
    LinearizedPoly::new(f, (0..f.n()).map(|_| random_elt(f, rng)).collect())
}

/// Random linearized `M` that is injective on `u`.
pub fn random_injective_on(u: &Subspace, rng: &mut impl Rng) -> LinearizedPoly {
    loop {
        let m = random_linearized(u.field(), rng);
        if m.image_of(u).dim() == u.dim() {
            return m;
        }
    }
}

/// `f(L(x)) + M(x)` with `L` the subspace polynomial of a random subspace
/// of dimension `1..=n`, `M` random and `deg f * deg L < q`.
pub fn random_decomposable(f: &Field, rng: &mut impl Rng) -> Poly {
    loop {
        let dim = rng.random_range(1..=f.n());
        let l = vanishing_poly(&random_subspace(f, dim, rng));
        let deg_l = l.degree().unwrap_or(1) as usize;
        let max_f = ((f.q() as usize - 1) / deg_l).min(12);
        let g = Poly::new(f, (0..=max_f).map(|_| random_elt(f, rng)).collect());
        let p = &g.compose(&l.to_poly()) + &random_linearized(f, rng).to_poly();
        if !p.is_constant() {
            return p;
        }
    }
}

/// A permutation `f(L(x)) + M(x)`: `M` is injective on `U = ker L`, and
/// `f` sends `L(zeta_i)` to `w_sigma(i) - M(zeta_i)` for a random bijection
/// `sigma` between the cosets of `U` and those of `M(U)`.
pub fn random_pp_decomposable(f: &Field, rng: &mut impl Rng) -> Poly {
    let dim = rng.random_range(1..=f.n());
    random_pp_with_kernel(&random_subspace(f, dim, rng), rng)
}

/// As [`random_pp_decomposable`] with a prescribed `U`.
pub fn random_pp_with_kernel(u: &Subspace, rng: &mut impl Rng) -> Poly {
    let f = u.field();
    let l = vanishing_poly(u);
    let m = random_injective_on(u, rng);
    let w = m.image_of(u);
    let zetas = u.coset_reps().reps().to_vec();
    let mut targets = w.coset_reps().reps().to_vec();
    targets.shuffle(rng);
    let points: Vec<(Elt, Elt)> = zetas
        .iter()
        .zip(&targets)
        .map(|(&z, &t)| (l.eval(z), f.sub(t, m.eval(z))))
        .collect();
    let g = lagrange_interpolate(f, &points).expect("cosets of U have distinct images under L");
    &g.compose(&l.to_poly()) + &m.to_poly()
}

/// An involution `eps x + f(L(x))` with `f(L(F_q))` inside `ker L`; for odd
/// `p`, `eps = -1` and `f` is even on `L(F_q)`, for `p = 2`, `eps = 1`.
pub fn random_involution(f: &Field, rng: &mut impl Rng) -> Poly {
    let dim = rng.random_range(1..=f.n());
    let u = random_subspace(f, dim, rng);
    let l = vanishing_poly(&u);
    let u_elems = u.elements();
    let mut image: Vec<Elt> = l.values();
    image.sort_unstable();
    image.dedup();
    let mut points: Vec<(Elt, Elt)> = Vec::with_capacity(image.len());
    for &y in &image {
        if points.iter().any(|&(a, _)| a == y) {
            continue;
        }
        let v = choose(&u_elems, rng);
        points.push((y, v));
        if f.p() != 2 && !y.is_zero() {
            points.push((f.neg(y), v));
        }
    }
    let g = lagrange_interpolate(f, &points).expect("distinct abscissae");
    let eps = if f.p() == 2 { Elt::ONE } else { f.neg(Elt::ONE) };
    &g.compose(&l.to_poly()) + &Poly::monomial(f, eps, 1)
}

fn choose(elems: &[Elt], rng: &mut impl Rng) -> Elt {
    elems[rng.random_range(0..elems.len())]
}

/// A random `(M, U)`-linear translator `g` onto `U` (with `1 <= dim U < n`)
/// and a random `h` with `h(U)` inside `U`.
///
/// `M` acts on `U` as a random linear map, `g(zeta_i + u) = phi_i + M(u)`
/// on the canonical cosets, and `phi` meets every coset of `M(U)` in `U`.
pub fn random_translator(f: &Field, rng: &mut impl Rng) -> (TranslatorSpec, Poly) {
    let dim = rng.random_range(1..f.n().max(2));
    let u = random_subspace(f, dim, rng);
    let u_elems = u.elements();
    let cosets = u.coset_reps();
    let (m, cover) = loop {
        let pairs: Vec<(Elt, Elt)> = u.basis().iter().map(|&b| (b, choose(&u_elems, rng))).collect();
        let m = linearized_interpolate(f, &pairs, pairs.len()).expect("basis vectors are independent");
        // one representative of each coset of M(U) inside U
        let w = m.image_of(&u);
        let mut seen = std::collections::HashSet::new();
        let cover: Vec<Elt> = u_elems.iter().copied().filter(|&e| seen.insert(w.reduce(e))).collect();
        if cover.len() <= cosets.reps().len() {
            break (m, cover);
        }
    };
    // phi hits every coset of M(U) in U, which makes g onto U
    let mut phi: Vec<Elt> = cover;
    while phi.len() < cosets.reps().len() {
        phi.push(choose(&u_elems, rng));
    }
    phi.shuffle(rng);
    let table: Vec<Elt> = f
        .elements()
        .map(|x| {
            let i = cosets.coset_of(x);
            f.add(phi[i], m.eval(f.sub(x, cosets.reps()[i])))
        })
        .collect();
    let points: Vec<(Elt, Elt)> = f.elements().zip(table).collect();
    let g = lagrange_interpolate(f, &points).expect("distinct abscissae");
    let h_points: Vec<(Elt, Elt)> = u_elems.iter().map(|&e| (e, choose(&u_elems, rng))).collect();
    let h = lagrange_interpolate(f, &h_points).expect("distinct abscissae");
    (
        TranslatorSpec {
            g,
            u,
            m,
            kind: TranslatorKind::General,
        },
        h,
    )
}

/// A random monic linearized `L` dividing `x^q - x` together with
/// `f = L~(g(x))` for a random `g`, so that `L(f(y)) = 0` everywhere.
pub fn random_translation_data(f: &Field, rng: &mut impl Rng) -> (LinearizedPoly, Poly) {
    let dim = rng.random_range(1..=f.n());
    let l = vanishing_poly(&random_subspace(f, dim, rng));
    let lt = crate::linearized::complement(&l).expect("subspace polynomials have complements");
    let g = random_poly(f, 4, rng);
    (l, lt.to_poly().compose(&g))
}

/// A polynomial `f(L(x)) + M(x)` with `dim ker L = n/2 + 1`, `M`
/// injective on the kernel, `1 <= deg f <= 3` and `P` not of the form
/// `a g(x)^r` with `r | q - 1`: the additive character-sum bound is then
/// below `q` and below Weil's bound. Needs `n >= 3`.
pub fn superior_instance(f: &Field, rng: &mut impl Rng) -> Poly {
    assert!(f.n() >= 3, "needs an extension of degree at least 3");
    let dim = f.n() / 2 + 1;
    loop {
        let u = random_subspace(f, dim, rng);
        let l = vanishing_poly(&u);
        let m = random_injective_on(&u, rng);
        let max_s = ((f.q() as u64 - 1) / l.degree().unwrap_or(1)).clamp(1, 3) as usize;
        let s = rng.random_range(1..=max_s);
        let mut coeffs: Vec<Elt> = (0..s).map(|_| random_elt(f, rng)).collect();
        coeffs.push(random_nonzero(f, rng));
        let p = &Poly::new(f, coeffs).compose(&l.to_poly()) + &m.to_poly();
        if crate::charsum::perfect_power_exponent(&p).is_none() {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{is_involution, is_linear_translator, is_permutation, PpMethod};

    #[test]
    fn samplers_produce_what_they_claim() {
        let mut r = rng(7, 0);
        for f in [
            Field::new(2, 4, None).unwrap(),
            Field::new(3, 2, None).unwrap(),
            Field::new(5, 2, None).unwrap(),
        ] {
            for _ in 0..10 {
                assert!(random_decomposable(&f, &mut r).degree().unwrap() < f.q() as usize);
                let p = random_pp_decomposable(&f, &mut r);
                assert!(is_permutation(&p, PpMethod::Brute).unwrap().is_pp, "{p}");
                let inv = random_involution(&f, &mut r);
                assert!(is_involution(&inv).unwrap().is_involution, "{inv} over {}", f.q());
                let (spec, _) = random_translator(&f, &mut r);
                let c = is_linear_translator(&spec).unwrap();
                assert!(c.translator && c.onto);
                let (l, g) = random_translation_data(&f, &mut r);
                assert!(f.elements().all(|y| l.eval(g.eval(y)).is_zero()));
            }
        }
    }

    #[test]
    fn streams_are_reproducible() {
        let f = Field::new(2, 4, None).unwrap();
        let a = random_poly(&f, 12, &mut rng(1, 3));
        let b = random_poly(&f, 12, &mut rng(1, 3));
        let c = random_poly(&f, 12, &mut rng(1, 4));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
