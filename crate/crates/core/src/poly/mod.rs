//! Dense univariate polynomials over a [`Field`].

mod parse;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::par::*;

/// Dense polynomial, constant term first, without trailing zeros. The zero
/// polynomial has an empty coefficient vector and no degree.
///
/// Binary operators panic when the operands live in different fields; the
/// `Result`-returning methods report [`Error::MixedFields`] instead.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elt>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Elt>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// From integer codes, constant term first.
    pub fn from_codes(field: &Field, codes: &[u32]) -> Poly {
        Poly::new(field, codes.iter().map(|&c| field.elt(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Elt::ONE)
    }

    pub fn constant(field: &Field, c: Elt) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, Elt::ONE, 1)
    }

    pub fn monomial(field: &Field, c: Elt, deg: usize) -> Poly {
        let mut v = vec![Elt::ZERO; deg + 1];
        v[deg] = c;
        Poly::new(field, v)
    }

    /// `x^q - x`.
    pub fn field_poly(field: &Field) -> Poly {
        let mut v = vec![Elt::ZERO; field.q() as usize + 1];
        v[1] = field.neg(Elt::ONE);
        v[field.q() as usize] = Elt::ONE;
        Poly::new(field, v)
    }

    pub fn parse(field: &Field, s: &str) -> Result<Poly> {
        parse::parse(field, s)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elt] {
        &self.coeffs
    }

    pub fn codes(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.code()).collect()
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Elt {
        self.coeffs.get(i).copied().unwrap_or(Elt::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Elt {
        self.coeffs.last().copied().unwrap_or(Elt::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Elt::ONE
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    fn same(&self, other: &Poly) {
        assert!(self.field == other.field, "polynomials over different fields");
    }

    pub fn scale(&self, c: Elt) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn eval(&self, a: Elt) -> Elt {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Elt::ZERO, |acc, &c| f.add(f.mul(acc, a), c))
    }

    /// Values at every field element, indexed by element code.
    pub fn values(&self) -> Vec<Elt> {
        let q = self.field.q();
        (0..q).into_par_iter().map(|c| self.eval(Elt(c))).collect()
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &Poly) -> Poly {
        self.same(other);
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(f), |acc, &c| &(&acc * other) + &Poly::constant(f, c))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.scale_int(a, i as u64))
            .collect();
        Poly::new(f, c)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Elt::ZERO; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = f.mul(rem[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[top - dd] = c;
            for (k, &dk) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + k;
                rem[idx] = f.sub(rem[idx], f.mul(c, dk));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// `(self^e) mod m` by repeated squaring.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(&self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// `gcd(self, x^q - x)` without materialising `x^q - x`: the field
    /// polynomial is first reduced modulo `self` by repeated squaring.
    pub fn gcd_with_field_poly(&self) -> Result<Poly> {
        let f = &self.field;
        if self.is_zero() {
            return Ok(Poly::field_poly(f));
        }
        let x = Poly::x(f);
        let reduced = &x.pow_mod(f.q() as u64, self)? - &x.rem(self)?;
        self.gcd(&reduced)
    }

    /// Reduction modulo `x^q - x`: exponents `e >= q` fold to
    /// `((e - 1) mod (q - 1)) + 1`. Preserves the induced map on F_q.
    pub fn reduce_mod_field_poly(&self) -> Poly {
        let f = &self.field;
        let q = f.q() as usize;
        if self.coeffs.len() <= q {
            return self.clone();
        }
        let mut out = self.coeffs[..q].to_vec();
        for (e, &c) in self.coeffs.iter().enumerate().skip(q) {
            let r = (e - 1) % (q - 1) + 1;
            out[r] = f.add(out[r], c);
        }
        Poly::new(f, out)
    }

    /// Polynomials `F_1, ..., F_{d-1}` with
    /// `P_0(x + y) - P_0(x) - P_0(y) = sum_i F_i(y) x^i`, where
    /// `P_0 = P - P(0)` and `d = deg P`. `F_i` is returned as a polynomial
    /// in `y`; binomial coefficients are reduced mod p via Lucas' theorem.
    pub fn shift_expand(&self) -> Vec<Poly> {
        let f = &self.field;
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return Vec::new(),
        };
        let binom = Binomials::new(f.p());
        (1..d)
            .map(|i| {
                // coefficient of y^{j-i} is c_j * C(j, i) for j > i
                let mut v = vec![Elt::ZERO; d - i + 1];
                for j in i + 1..=d {
                    let c = self.coeffs[j];
                    if !c.is_zero() {
                        v[j - i] = f.scale_int(c, binom.choose_mod_p(j as u64, i as u64));
                    }
                }
                Poly::new(f, v)
            })
            .collect()
    }
}

/// Binomial coefficients modulo a prime by Lucas' theorem.
struct Binomials {
    p: u64,
    fact: Vec<u64>,
    inv_fact: Vec<u64>,
}

impl Binomials {
    fn new(p: u32) -> Self {
        let p = p as u64;
        let mut fact = vec![1u64; p as usize];
        for i in 1..p as usize {
            fact[i] = fact[i - 1] * i as u64 % p;
        }
        let inv_fact = fact.iter().map(|&v| mod_pow(v, p - 2, p)).collect();
        Binomials { p, fact, inv_fact }
    }

    fn small(&self, n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        self.fact[n as usize] * self.inv_fact[k as usize] % self.p * self.inv_fact[(n - k) as usize] % self.p
    }

    fn choose_mod_p(&self, mut n: u64, mut k: u64) -> u64 {
        let mut acc = 1;
        while k > 0 || n > 0 {
            acc = acc * self.small(n % self.p, k % self.p) % self.p;
            if acc == 0 {
                return 0;
            }
            n /= self.p;
            k /= self.p;
        }
        acc
    }
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// The unique polynomial of degree `< points.len()` through the given
/// points.
pub fn lagrange_interpolate(field: &Field, points: &[(Elt, Elt)]) -> Result<Poly> {
    let f = field;
    if points.is_empty() || points.len() > f.q() as usize {
        return Err(Error::pre("interpolation needs between 1 and q points"));
    }
    let mut seen = std::collections::HashSet::with_capacity(points.len());
    if let Some((a, _)) = points.iter().find(|(a, _)| !seen.insert(*a)) {
        return Err(Error::pre(format!("duplicated abscissa {}", a.code())));
    }
    // master = prod (x - a_i)
    let mut master = vec![Elt::ONE];
    for &(a, _) in points {
        let mut next = vec![Elt::ZERO; master.len() + 1];
        for (k, &m) in master.iter().enumerate() {
            next[k + 1] = f.add(next[k + 1], m);
            next[k] = f.sub(next[k], f.mul(a, m));
        }
        master = next;
    }
    let mut acc = vec![Elt::ZERO; points.len()];
    for &(a, b) in points {
        if b.is_zero() {
            continue;
        }
        // synthetic division: master / (x - a)
        let mut basis = vec![Elt::ZERO; points.len()];
        let mut carry = Elt::ZERO;
        for k in (0..points.len()).rev() {
            carry = f.add(master[k + 1], f.mul(carry, a));
            basis[k] = carry;
        }
        let denom = basis.iter().rev().fold(Elt::ZERO, |s, &c| f.add(f.mul(s, a), c));
        let w = f.div(b, denom)?;
        for (slot, &c) in acc.iter_mut().zip(&basis) {
            *slot = f.add(*slot, f.mul(w, c));
        }
    }
    Ok(Poly::new(f, acc))
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.same(rhs);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.same(rhs);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.same(rhs);
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![Elt::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Poly::new(f, out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self} over {:?})", self.field)
    }
}

impl fmt::Display for Poly {
    /// Compact form that [`Poly::parse`] reads back, e.g. `x^3-x` or
    /// `[5]*x^2+x+1`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            out,
            &self.field,
            self.coeffs.iter().enumerate().rev().map(|(e, &c)| (e as u64, c)),
        )
    }
}

/// Writes `sum c x^e` for terms given by descending exponent, skipping zero
/// coefficients, in the syntax the parser accepts.
pub(crate) fn write_terms(
    out: &mut impl fmt::Write,
    f: &Field,
    terms: impl Iterator<Item = (u64, Elt)>,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        if c.is_zero() {
            continue;
        }
        let text = f.fmt_elt(c);
        let (neg, mag) = match text.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, text),
        };
        if neg {
            write!(out, "-")?;
        } else if !first {
            write!(out, "+")?;
        }
        first = false;
        let mono = match e {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{e}"),
        };
        match (mag.as_str(), mono.is_empty()) {
            (m, true) => write!(out, "{m}")?,
            ("1", false) => write!(out, "{mono}")?,
            (m, false) => write!(out, "{m}*{mono}")?,
        }
    }
    if first {
        write!(out, "0")?;
    }
    Ok(())
}
