//! Linear algebra over F_p (field elements as coefficient vectors) and over
//! F_q (square systems).

use crate::field::{Elt, Field};

/// Reduced row echelon form of a set of field elements viewed as vectors
/// over the prime field. Each row is normalised so its pivot digit (the
/// highest nonzero one) is 1, and every pivot column is cleared in the
/// other rows, so the basis is canonical for the span.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    field: Field,
    /// (pivot position, digit vector), sorted by descending pivot.
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    pub fn new(field: &Field) -> Self {
        Echelon {
            field: field.clone(),
            rows: Vec::new(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce_digits(&self, mut v: Vec<u32>) -> Vec<u32> {
        let p = self.field.p();
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c == 0 {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                *x = ((*x as u64 + (p - c) as u64 * r as u64) % p as u64) as u32;
            }
        }
        v
    }

    /// Canonical representative of `a + span`: the residual after
    /// clearing every pivot position.
    pub fn reduce(&self, a: Elt) -> Elt {
        let v = self.reduce_digits(self.field.digits(a));
        self.field.from_digits(&v).expect("digits stay reduced")
    }

    pub fn contains(&self, a: Elt) -> bool {
        self.reduce(a).is_zero()
    }

    /// Adds `a` to the span; returns whether it was independent.
    pub fn insert(&mut self, a: Elt) -> bool {
        let p = self.field.p() as u64;
        let mut v = self.reduce_digits(self.field.digits(a));
        let Some(piv) = v.iter().rposition(|&d| d != 0) else {
            return false;
        };
        let inv = mod_inv(v[piv] as u64, p);
        for x in v.iter_mut() {
            *x = (*x as u64 * inv % p) as u32;
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[piv] as u64;
            if c == 0 {
                continue;
            }
            for (x, &r) in row.iter_mut().zip(&v) {
                *x = ((*x as u64 + (p - c) * r as u64) % p) as u32;
            }
        }
        let at = self.rows.iter().position(|(q, _)| *q < piv).unwrap_or(self.rows.len());
        self.rows.insert(at, (piv, v));
        true
    }

    /// Canonical basis, ordered by descending pivot.
    pub fn basis(&self) -> Vec<Elt> {
        self.rows
            .iter()
            .map(|(_, r)| self.field.from_digits(r).expect("digits stay reduced"))
            .collect()
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let (mut b, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Solves the square system `matrix * x = rhs` over F_q. `None` when the
/// matrix is singular.
pub(crate) fn solve(field: &Field, mut matrix: Vec<Vec<Elt>>, mut rhs: Vec<Elt>) -> Option<Vec<Elt>> {
    let f = field;
    let n = rhs.len();
    debug_assert!(matrix.len() == n && matrix.iter().all(|r| r.len() == n));
    for col in 0..n {
        let pivot = (col..n).find(|&r| !matrix[r][col].is_zero())?;
        matrix.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = f.inv(matrix[col][col]).ok()?;
        for x in matrix[col].iter_mut() {
            *x = f.mul(*x, inv);
        }
        rhs[col] = f.mul(rhs[col], inv);
        for r in 0..n {
            if r == col || matrix[r][col].is_zero() {
                continue;
            }
            let c = matrix[r][col];
            let (src, dst) = if r < col {
                let (a, b) = matrix.split_at_mut(col);
                (&b[0], &mut a[r])
            } else {
                let (a, b) = matrix.split_at_mut(r);
                (&a[col], &mut b[0])
            };
            for (x, &s) in dst.iter_mut().zip(src.iter()) {
                *x = f.sub(*x, f.mul(c, s));
            }
            rhs[r] = f.sub(rhs[r], f.mul(c, rhs[col]));
        }
    }
    Some(rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_is_canonical() {
        let f = Field::new(3, 3, None).unwrap();
        let mut a = Echelon::new(&f);
        let mut b = Echelon::new(&f);
        for c in [5, 14, 19] {
            a.insert(f.elt(c));
        }
        // same span, different generators
        let s = |x: u32, y: u32| f.add(f.elt(x), f.elt(y));
        for e in [s(5, 14), s(14, 19), f.scale_int(f.elt(19), 2), f.elt(5)] {
            b.insert(e);
        }
        assert_eq!(a.dim(), b.dim());
        assert_eq!(a.basis(), b.basis());
        for c in 0..27 {
            assert_eq!(a.reduce(f.elt(c)), b.reduce(f.elt(c)));
        }
    }

    #[test]
    fn dependent_vectors_rejected() {
        let f = Field::new(2, 4, None).unwrap();
        let mut e = Echelon::new(&f);
        assert!(e.insert(f.elt(3)));
        assert!(e.insert(f.elt(5)));
        assert!(!e.insert(f.elt(6)));
        assert!(!e.insert(f.elt(0)));
        assert!(e.contains(f.elt(6)));
        assert!(!e.contains(f.elt(8)));
    }

    #[test]
    fn solves_small_system() {
        let f = Field::new(5, 1, None).unwrap();
        let m = vec![vec![f.elt(1), f.elt(2)], vec![f.elt(3), f.elt(4)]];
        let x = solve(&f, m, vec![f.elt(0), f.elt(1)]).unwrap();
        // x = (1, 2): 1 + 4 = 0, 3 + 8 = 11 = 1
        assert_eq!(x, vec![f.elt(1), f.elt(2)]);
        let singular = vec![vec![f.elt(1), f.elt(2)], vec![f.elt(2), f.elt(4)]];
        assert!(solve(&f, singular, vec![f.elt(0), f.elt(1)]).is_none());
    }
}
