//! Applications of the maximal decomposition: value sets, permutation
//! tests and inverses, cycle structures, involutions, linear translators
//! and the AGW criterion. Each structural verdict has a brute-force
//! counterpart that evaluates the polynomial on all of F_q.

mod agw;
mod cycles;
mod involution;
mod permutation;
mod translator;
mod valueset;

pub use agw::{agw_check, AgwDiagram, AgwReport};
pub use cycles::{
    construct_prescribed_cycles, cycle_structure, cycle_structure_of_map, translation_pp, two_nlp, two_nlp_parameters,
    CycleStructure, TranslationPp,
};
pub use involution::{is_involution, InvolutionReport};
pub use permutation::{inverse_pp, is_permutation, pp_criterion_quotient, InversePp, PpCertificate, PpMethod};
pub use translator::{
    is_linear_translator, translator_pp, TranslatorCheck, TranslatorKind, TranslatorPpReport, TranslatorSpec,
};
pub use valueset::{value_set_pp_threshold, value_set_size, ThresholdReport, ValueSetMethod, ValueSetSize};

use crate::field::Elt;

/// First collision in ascending code order: the smallest `b` whose value
/// was already taken by some `a < b`, as `(a, b)`.
pub(crate) fn first_collision(values: &[Elt]) -> Option<(Elt, Elt)> {
    let mut seen: std::collections::HashMap<Elt, u32> = std::collections::HashMap::with_capacity(values.len());
    for (b, v) in values.iter().enumerate() {
        if let Some(&a) = seen.get(v) {
            return Some((Elt(a), Elt(b as u32)));
        }
        seen.insert(*v, b as u32);
    }
    None
}

/// Whether a table indexed by element code is a permutation.
pub fn is_bijective(values: &[Elt]) -> bool {
    let mut hit = vec![false; values.len()];
    values.iter().all(|v| {
        let slot = hit.get_mut(v.code() as usize);
        match slot {
            Some(s) if !*s => {
                *s = true;
                true
            }
            _ => false,
        }
    })
}

/// Whether `map` (given as pairs) permutes the finite set of its keys.
pub(crate) fn permutes_set(pairs: impl Iterator<Item = (Elt, Elt)>) -> bool {
    let pairs: Vec<(Elt, Elt)> = pairs.collect();
    let domain: std::collections::HashSet<Elt> = pairs.iter().map(|&(a, _)| a).collect();
    let image: std::collections::HashSet<Elt> = pairs.iter().map(|&(_, b)| b).collect();
    image.len() == domain.len() && image.iter().all(|b| domain.contains(b))
}
