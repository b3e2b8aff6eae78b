//! F_p-subspaces of F_q and their cosets.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::field::{Elt, Field};
use crate::linalg::Echelon;

/// An F_p-subspace of F_q, held by its canonical (reduced echelon) basis.
/// Two subspaces are equal exactly when their bases are equal.
#[derive(Clone)]
pub struct Subspace {
    ech: Echelon,
    basis: Vec<Elt>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.field() == other.field() && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let codes: Vec<u32> = self.basis.iter().map(|b| b.code()).collect();
        write!(f, "Subspace{codes:?}")
    }
}

#[allow(clippy::len_without_is_empty)]
impl Subspace {
    pub fn zero(field: &Field) -> Subspace {
        Subspace::from_echelon(Echelon::new(field))
    }

    pub fn whole(field: &Field) -> Subspace {
        let gens: Vec<Elt> = (0..field.n()).map(|i| field.elt(field.p().pow(i))).collect();
        Subspace::span(field, &gens)
    }

    /// The F_p-span of arbitrary generators (dependent ones are dropped).
    pub fn span(field: &Field, gens: &[Elt]) -> Subspace {
        let mut ech = Echelon::new(field);
        for &g in gens {
            ech.insert(g);
        }
        Subspace::from_echelon(ech)
    }

    /// The span of `basis`, or `None` if the vectors are dependent.
    pub fn from_basis(field: &Field, basis: &[Elt]) -> Option<Subspace> {
        let mut ech = Echelon::new(field);
        for &b in basis {
            if !ech.insert(b) {
                return None;
            }
        }
        Some(Subspace::from_echelon(ech))
    }

    fn from_echelon(ech: Echelon) -> Subspace {
        let basis = ech.basis();
        Subspace { ech, basis }
    }

    pub fn field(&self) -> &Field {
        self.ech.field()
    }

    /// Canonical basis.
    pub fn basis(&self) -> &[Elt] {
        &self.basis
    }

    pub fn dim(&self) -> u32 {
        self.basis.len() as u32
    }

    /// Number of elements, `p^dim`.
    pub fn len(&self) -> u64 {
        (self.field().p() as u64).pow(self.dim())
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, a: Elt) -> bool {
        self.ech.contains(a)
    }

    /// Canonical representative of the coset `a + U`; two elements lie in
    /// the same coset exactly when their keys agree.
    pub fn reduce(&self, a: Elt) -> Elt {
        self.ech.reduce(a)
    }

    /// `U + span(gens)`.
    pub fn extend(&self, gens: &[Elt]) -> Subspace {
        let mut ech = self.ech.clone();
        for &g in gens {
            ech.insert(g);
        }
        Subspace::from_echelon(ech)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|&b| other.contains(b))
    }

    /// All elements, ascending by code.
    pub fn elements(&self) -> Vec<Elt> {
        let mut out = span_elements(self.field(), &self.basis);
        out.sort_unstable();
        out
    }

    /// Intersection with another subspace of the same field.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let (small, big) = if self.dim() <= other.dim() {
            (self, other)
        } else {
            (other, self)
        };
        let common: Vec<Elt> = small.elements().into_iter().filter(|&a| big.contains(a)).collect();
        Subspace::span(self.field(), &common)
    }

    /// Canonical coset representatives of `F_q / U`.
    pub fn coset_reps(&self) -> CosetDecomposition {
        let f = self.field();
        let mut ech = self.ech.clone();
        let mut complement = Vec::new();
        for a in f.elements() {
            if ech.dim() == f.n() as usize {
                break;
            }
            if ech.insert(a) {
                complement.push(a);
            }
        }
        let mut reps = span_elements(f, &complement);
        reps.sort_unstable();
        let index = reps.iter().enumerate().map(|(i, &r)| (self.reduce(r), i)).collect();
        CosetDecomposition {
            subspace: self.clone(),
            complement,
            reps,
            index,
        }
    }
}

/// Every F_p-combination of `gens` (with repetitions if they are dependent).
fn span_elements(f: &Field, gens: &[Elt]) -> Vec<Elt> {
    let mut out = vec![Elt::ZERO];
    for &g in gens {
        let multiples: Vec<Elt> = (0..f.p() as u64).map(|k| f.scale_int(g, k)).collect();
        out = multiples
            .iter()
            .flat_map(|&m| out.iter().map(move |&e| (m, e)))
            .map(|(m, e)| f.add(m, e))
            .collect();
    }
    out
}

/// The partition of F_q into the cosets `zeta_i + U`.
#[derive(Clone, Debug)]
pub struct CosetDecomposition {
    subspace: Subspace,
    complement: Vec<Elt>,
    reps: Vec<Elt>,
    index: HashMap<Elt, usize>,
}

impl CosetDecomposition {
    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    /// Greedy complementary basis: smallest codes extending the subspace.
    pub fn complement(&self) -> &[Elt] {
        &self.complement
    }

    /// Representatives in ascending code order; `reps()[0]` is zero.
    pub fn reps(&self) -> &[Elt] {
        &self.reps
    }

    /// Index of the coset containing `a`.
    pub fn coset_of(&self, a: Elt) -> usize {
        self.index[&self.subspace.reduce(a)]
    }
}

/// Every subspace of F_q, by breadth-first extension from `{0}`. Ordered
/// by dimension, then by canonical basis codes.
pub fn all_subspaces(field: &Field) -> Vec<Subspace> {
    let key = |s: &Subspace| s.basis().iter().map(|b| b.code()).collect::<Vec<_>>();
    let mut out = Vec::new();
    let mut level = vec![Subspace::zero(field)];
    while !level.is_empty() {
        let mut next: BTreeSet<Vec<u32>> = BTreeSet::new();
        let mut next_spaces = Vec::new();
        for s in &level {
            if s.dim() == field.n() {
                continue;
            }
            // one representative per coset is enough
            for &r in &s.coset_reps().reps()[1..] {
                let t = s.extend(&[r]);
                if next.insert(key(&t)) {
                    next_spaces.push(t);
                }
            }
        }
        next_spaces.sort_by_key(key);
        out.append(&mut level);
        level = next_spaces;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_counts() {
        let f16 = Field::new(2, 4, None).unwrap();
        let all = all_subspaces(&f16);
        assert_eq!(all.len(), 67);
        let by_dim: Vec<usize> = (0..=4).map(|d| all.iter().filter(|s| s.dim() == d).count()).collect();
        assert_eq!(by_dim, vec![1, 15, 35, 15, 1]);
        // F_9: 1 + 4 + 1
        assert_eq!(all_subspaces(&Field::new(3, 2, None).unwrap()).len(), 6);
    }

    #[test]
    fn coset_reps_examples() {
        let f = Field::new(3, 2, None).unwrap();
        assert_eq!(Subspace::whole(&f).coset_reps().reps(), &[Elt::ZERO]);
        let all: Vec<Elt> = f.elements().collect();
        assert_eq!(Subspace::zero(&f).coset_reps().reps(), &all[..]);

        let fp = Subspace::span(&f, &[Elt::ONE]);
        let cd = fp.coset_reps();
        assert_eq!(cd.reps().len(), 3);
        assert_eq!(cd.reps()[0], Elt::ZERO);
        for (i, &a) in cd.reps().iter().enumerate() {
            for &b in &cd.reps()[i + 1..] {
                assert!(!fp.contains(f.sub(a, b)));
            }
        }
        let mut hits = [0; 3];
        for a in f.elements() {
            hits[cd.coset_of(a)] += 1;
        }
        assert_eq!(hits, [3, 3, 3]);
    }

    #[test]
    fn elements_and_membership() {
        let f = Field::new(2, 4, None).unwrap();
        let s = Subspace::span(&f, &[f.elt(3), f.elt(5), f.elt(6)]);
        assert_eq!(s.dim(), 2);
        let els = s.elements();
        assert_eq!(els, vec![f.elt(0), f.elt(3), f.elt(5), f.elt(6)]);
        for a in f.elements() {
            assert_eq!(s.contains(a), els.contains(&a));
        }
        assert!(Subspace::from_basis(&f, &[f.elt(3), f.elt(5), f.elt(6)]).is_none());
        let t = Subspace::span(&f, &[f.elt(3), f.elt(8)]);
        assert_eq!(s.intersect(&t), Subspace::span(&f, &[f.elt(3)]));
    }
}
