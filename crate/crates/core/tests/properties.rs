//! Property tests: structural answers against brute-force oracles on
//! random inputs over small fields.

use addix::additive::{additive_kernel, maximal_decomposition, KernelMethod};
use addix::analysis::{
    cycle_structure, cycle_structure_of_map, inverse_pp, is_involution, is_permutation, value_set_size, PpMethod,
    ValueSetMethod,
};
use addix::charsum::{char_sum, CharSumAnalyzer, MultChar};
use addix::linearized::vanishing_poly;
use addix::{sample, Field, Poly};
use proptest::prelude::*;

fn fields() -> Vec<Field> {
    [(2, 2), (2, 3), (2, 4), (3, 2), (5, 2), (3, 3)]
        .iter()
        .map(|&(p, n)| Field::new(p, n, None).unwrap())
        .collect()
}

fn field() -> impl Strategy<Value = Field> {
    prop::sample::select(fields())
}

/// A field with a random polynomial drawn from either the uniform or the
/// decomposable sampler.
fn field_poly() -> impl Strategy<Value = (Field, Poly)> {
    (field(), any::<u64>(), any::<bool>()).prop_map(|(f, seed, decomposable)| {
        let mut r = sample::rng(seed, 0);
        let p = if decomposable {
            sample::random_decomposable(&f, &mut r)
        } else {
            sample::random_poly(&f, 30, &mut r)
        };
        (f, p)
    })
}

fn field_pp() -> impl Strategy<Value = (Field, Poly)> {
    (field(), any::<u64>()).prop_map(|(f, seed)| {
        let p = sample::random_pp_decomposable(&f, &mut sample::rng(seed, 1));
        (f, p)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn kernel_methods_agree((_f, p) in field_poly()) {
        let a = additive_kernel(&p, KernelMethod::Gcd).unwrap();
        let b = additive_kernel(&p, KernelMethod::Brute).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn decomposition_recomposes_and_is_maximal((f, p) in field_poly()) {
        let d = maximal_decomposition(&p).unwrap();
        prop_assert_eq!(d.recompose(), d.poly.clone());
        prop_assert_eq!(d.l.degree().unwrap(), (f.p() as u64).pow(f.n() - d.index));
        prop_assert!(d.m.degree().is_none_or(|m| m < d.l.degree().unwrap()));
        prop_assert_eq!(vanishing_poly(&d.kernel), d.l.clone());
    }

    #[test]
    fn shift_identity_on_kernel((f, p) in field_poly()) {
        let d = maximal_decomposition(&p).unwrap();
        let red = &d.poly;
        for u in d.kernel.elements() {
            for x in f.elements() {
                prop_assert_eq!(red.eval(f.add(x, u)), f.add(red.eval(x), d.m.eval(u)));
            }
        }
    }

    #[test]
    fn value_set_theorem_matches_count((_f, p) in field_poly()) {
        let t = value_set_size(&p, ValueSetMethod::Theorem).unwrap();
        let b = value_set_size(&p, ValueSetMethod::Brute).unwrap();
        prop_assert_eq!(t.size, b.size);
    }

    #[test]
    fn permutation_certificate_matches_brute((_f, p) in field_poly()) {
        let c = is_permutation(&p, PpMethod::Certificate).unwrap();
        let b = is_permutation(&p, PpMethod::Brute).unwrap();
        prop_assert_eq!(c.is_pp, b.is_pp);
        if let Some((x, y)) = c.witness {
            prop_assert!(x != y);
            prop_assert_eq!(p.eval(x), p.eval(y));
        }
    }

    #[test]
    fn inverse_round_trips((f, p) in field_pp()) {
        let inv = inverse_pp(&p).unwrap().inverse;
        for x in f.elements() {
            prop_assert_eq!(inv.eval(p.eval(x)), x);
            prop_assert_eq!(p.eval(inv.eval(x)), x);
        }
    }

    #[test]
    fn cycle_structures_count_every_point((f, p) in field_pp()) {
        let c = cycle_structure(&p).unwrap();
        prop_assert_eq!(c.total(), f.q() as u64);
        prop_assert_eq!(c, cycle_structure_of_map(&p.values()).unwrap());
    }

    #[test]
    fn sampled_involutions_are_involutions(f in field(), seed in any::<u64>()) {
        let p = sample::random_involution(&f, &mut sample::rng(seed, 2));
        let r = is_involution(&p).unwrap();
        prop_assert!(r.is_involution && r.brute);
    }

    #[test]
    fn char_sums_respect_additive_bound((f, p) in field_poly(), j in 1u32..1000) {
        let j = j % (f.q() - 1);
        prop_assume!(j != 0);
        let chi = MultChar::new(&f, j).unwrap();
        let r = CharSumAnalyzer::new(&p).unwrap().report(&chi).unwrap();
        prop_assert!(r.abs <= r.additive_bound + 1e-6);
        prop_assert!((char_sum(&p, &chi).unwrap().norm() - r.abs).abs() < 1e-6);
    }
}
