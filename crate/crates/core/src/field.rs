//! Exact arithmetic in F_q = F_p[x]/(m(x)).
//!
//! Elements are stored by their canonical integer code: the residue class
//! `c_0 + c_1 x + ... + c_{n-1} x^{n-1}` (with `0 <= c_i < p`) has code
//! `sum c_i p^i`. Code 0 is the additive identity and code 1 the
//! multiplicative identity, and the prime subfield is exactly the codes
//! `0..p`.
//!
//! Multiplication goes through exp/log tables relative to the canonical
//! primitive element. The tables are built on first use, under a
//! once-only initialisation, by `q - 1` schoolbook multiplications.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_Q: u64 = 1 << 20;

/// An element of a finite field, identified by its canonical code.
///
/// An `Elt` carries no reference to its field; arithmetic goes through the
/// owning [`Field`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elt(pub(crate) u32);

impl Elt {
    pub const ZERO: Elt = Elt(0);
    pub const ONE: Elt = Elt(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    p: u32,
    n: u32,
    q: u32,
    /// Monic modulus, constant term first, length `n + 1`.
    modulus: Vec<u32>,
    primitive: Elt,
    tables: OnceLock<Tables>,
}

/// A concrete finite field F_{p^n}. Cheap to clone (reference counted).
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.inner.p, self.inner.n)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.inner.modulus.iter().map(|c| c.to_string()).collect();
        write!(f, "{}^{}/{}", self.inner.p, self.inner.n, m.join(","))
    }
}

impl Field {
    /// Builds F_{p^n}. Without an explicit modulus the monic irreducible of
    /// degree `n` with the smallest code `sum c_i p^i` over its lower
    /// coefficients is used (for `n = 1` that is `x`, so the field is F_p).
    pub fn new(p: u32, n: u32, modulus: Option<&[u32]>) -> Result<Field> {
        Self::with_cap(p, n, modulus, MAX_Q)
    }

    /// Like [`Field::new`] with a lower size cap (never above [`MAX_Q`]).
    pub fn with_cap(p: u32, n: u32, modulus: Option<&[u32]>, cap: u64) -> Result<Field> {
        let cap = cap.min(MAX_Q);
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if n == 0 {
            return Err(Error::BadModulus("extension degree must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(n)
            .filter(|&q| q <= cap)
            .ok_or(Error::FieldTooLarge { p: p as u64, n, cap })?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != n as usize + 1 {
                    return Err(Error::BadModulus(format!(
                        "expected {} coefficients, got {}",
                        n + 1,
                        m.len()
                    )));
                }
                if m[n as usize] != 1 {
                    return Err(Error::BadModulus("modulus must be monic".into()));
                }
                if let Some(c) = m.iter().find(|&&c| c >= p) {
                    return Err(Error::BadModulus(format!("coefficient {c} not reduced mod {p}")));
                }
                if !fp::is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                m.to_vec()
            }
            None => smallest_irreducible(p, n),
        };
        let mut inner = Inner {
            p,
            n,
            q: q as u32,
            modulus,
            primitive: Elt::ONE,
            tables: OnceLock::new(),
        };
        inner.primitive = find_primitive(&inner);
        Ok(Field { inner: Arc::new(inner) })
    }

    /// Parses `"p^n"`, `"p"` or `"p^n/c0,c1,...,cn"` (modulus, constant first).
    pub fn parse(spec: &str) -> Result<Field> {
        spec.parse()
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.inner.n
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// The element of smallest code with multiplicative order `q - 1`.
    pub fn primitive(&self) -> Elt {
        self.inner.primitive
    }

    pub fn same_field(&self, other: &Field) -> bool {
        self == other
    }

    /// Element with the given code. Panics when `code >= q`; see
    /// [`Field::try_elt`] for the checked variant.
    #[inline]
    pub fn elt(&self, code: u32) -> Elt {
        assert!(
            code < self.inner.q,
            "element code {code} out of range for q = {}",
            self.inner.q
        );
        Elt(code)
    }

    pub fn try_elt(&self, code: u64) -> Result<Elt> {
        if code < self.inner.q as u64 {
            Ok(Elt(code as u32))
        } else {
            Err(Error::BadElement { code, q: self.inner.q })
        }
    }

    #[inline]
    pub fn zero(&self) -> Elt {
        Elt::ZERO
    }

    #[inline]
    pub fn one(&self) -> Elt {
        Elt::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Elt {
        Elt(v.rem_euclid(self.inner.p as i64) as u32)
    }

    /// All `q` elements in ascending code order.
    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elt> + ExactSizeIterator + Clone {
        (0..self.inner.q).map(Elt)
    }

    /// Coefficient vector of `a` in the basis `1, x, ..., x^{n-1}`.
    pub fn digits(&self, a: Elt) -> Vec<u32> {
        let p = self.inner.p;
        let mut c = a.0;
        (0..self.inner.n)
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Elt> {
        let p = self.inner.p as u64;
        if digits.len() > self.inner.n as usize || digits.iter().any(|&d| d as u64 >= p) {
            return Err(Error::BadModulus(format!("invalid coefficient vector {digits:?}")));
        }
        let code = digits.iter().rev().fold(0u64, |acc, &d| acc * p + d as u64);
        Ok(Elt(code as u32))
    }

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        let p = self.inner.p;
        if p == 2 {
            return Elt(a.0 ^ b.0);
        }
        if self.inner.n == 1 {
            let s = a.0 + b.0;
            return Elt(if s >= p { s - p } else { s });
        }
        let (mut x, mut y, mut r, mut place) = (a.0, b.0, 0u32, 1u32);
        while x != 0 || y != 0 {
            let mut d = x % p + y % p;
            if d >= p {
                d -= p;
            }
            r += d * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Elt(r)
    }

    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        let p = self.inner.p;
        if p == 2 || a.0 == 0 {
            return a;
        }
        if self.inner.n == 1 {
            return Elt(p - a.0);
        }
        let (mut x, mut r, mut place) = (a.0, 0u32, 1u32);
        while x != 0 {
            let d = x % p;
            if d != 0 {
                r += (p - d) * place;
            }
            x /= p;
            place = place.wrapping_mul(p);
        }
        Elt(r)
    }

    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        if a.0 == 0 || b.0 == 0 {
            return Elt::ZERO;
        }
        let t = self.tables();
        let order = self.inner.q - 1;
        let mut e = t.log[a.0 as usize] + t.log[b.0 as usize];
        if e >= order {
            e -= order;
        }
        Elt(t.exp[e as usize])
    }

    pub fn inv(&self, a: Elt) -> Result<Elt> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let t = self.tables();
        let order = self.inner.q - 1;
        let l = t.log[a.0 as usize];
        Ok(Elt(t.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, a: Elt, b: Elt) -> Result<Elt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elt, e: u64) -> Elt {
        if e == 0 {
            return Elt::ONE;
        }
        if a.0 == 0 {
            return Elt::ZERO;
        }
        let t = self.tables();
        let order = (self.inner.q - 1) as u64;
        let l = t.log[a.0 as usize] as u64;
        Elt(t.exp[((l * (e % order)) % order) as usize])
    }

    /// The Frobenius map `a -> a^p`.
    #[inline]
    pub fn frobenius(&self, a: Elt) -> Elt {
        self.pow(a, self.inner.p as u64)
    }

    /// `a^{p^i}`.
    pub fn frobenius_iter(&self, a: Elt, i: u32) -> Elt {
        (0..i % self.inner.n).fold(a, |acc, _| self.frobenius(acc))
    }

    /// Multiplication by an element of the prime field given as an integer.
    pub fn scale_int(&self, a: Elt, c: u64) -> Elt {
        self.mul(a, self.from_int((c % self.inner.p as u64) as i64))
    }

    pub fn in_prime_subfield(&self, a: Elt) -> bool {
        a.0 < self.inner.p
    }

    /// Exponent `m` in `[0, q - 2]` with `primitive^m = a`.
    pub fn discrete_log(&self, a: Elt) -> Result<u32> {
        if a.0 == 0 {
            return Err(Error::pre("discrete logarithm of zero"));
        }
        Ok(self.tables().log[a.0 as usize])
    }

    /// `primitive^m`.
    pub fn exp(&self, m: u64) -> Elt {
        let order = (self.inner.q - 1) as u64;
        Elt(self.tables().exp[(m % order) as usize])
    }

    /// Reference multiplication by reduction modulo the defining polynomial,
    /// independent of the exp/log tables.
    pub fn mul_schoolbook(&self, a: Elt, b: Elt) -> Elt {
        schoolbook_mul(&self.inner, a, b)
    }

    /// Human-readable element: prime-subfield elements as (signed) integers,
    /// everything else as `[code]`.
    pub fn fmt_elt(&self, a: Elt) -> String {
        let p = self.inner.p;
        if a.0 < p {
            if p > 2 && a.0 > p / 2 {
                format!("-{}", p - a.0)
            } else {
                a.0.to_string()
            }
        } else {
            format!("[{}]", a.0)
        }
    }

    fn tables(&self) -> &Tables {
        self.inner.tables.get_or_init(|| build_tables(&self.inner))
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let bad = |msg: &str| Error::Parse {
            pos: 0,
            msg: format!("field spec {s:?}: {msg}"),
        };
        let s = s.trim();
        let (head, modulus) = match s.split_once('/') {
            Some((h, m)) => (h, Some(m)),
            None => (s, None),
        };
        let (p, n) = match head.split_once('^') {
            Some((p, n)) => (p.trim(), n.trim()),
            None => (head.trim(), "1"),
        };
        let p: u32 = p.parse().map_err(|_| bad("bad characteristic"))?;
        let n: u32 = n.parse().map_err(|_| bad("bad extension degree"))?;
        let modulus = modulus
            .map(|m| {
                m.split(',')
                    .map(|c| c.trim().parse::<u32>().map_err(|_| bad("bad modulus coefficient")))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        Field::new(p, n, modulus.as_deref())
    }
}

pub(crate) fn is_prime(v: u64) -> bool {
    if v < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= v {
        if v.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `v`.
pub(crate) fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= v {
        if v.is_multiple_of(d) {
            out.push(d);
            while v.is_multiple_of(d) {
                v /= d;
            }
        }
        d += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

fn smallest_irreducible(p: u32, n: u32) -> Vec<u32> {
    let lower = (p as u64).pow(n);
    (0..lower)
        .map(|code| {
            let mut m: Vec<u32> = (0..n)
                .scan(code, |c, _| {
                    let d = (*c % p as u64) as u32;
                    *c /= p as u64;
                    Some(d)
                })
                .collect();
            m.push(1);
            m
        })
        .find(|m| fp::is_irreducible(m, p))
        .expect("an irreducible polynomial of every degree exists")
}

fn schoolbook_mul(f: &Inner, a: Elt, b: Elt) -> Elt {
    let (p, n) = (f.p as u64, f.n as usize);
    let da = code_digits(a.0, f.p, n);
    let db = code_digits(b.0, f.p, n);
    let mut prod = vec![0u64; 2 * n - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
        }
    }
    for top in (n..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        // x^n = -(m_0 + ... + m_{n-1} x^{n-1})
        for (k, &m) in f.modulus[..n].iter().enumerate() {
            let idx = top - n + k;
            prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
        }
        prod[top] = 0;
    }
    let code = prod[..n].iter().rev().fold(0u64, |acc, &d| acc * p + d);
    Elt(code as u32)
}

fn code_digits(mut c: u32, p: u32, n: usize) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn slow_pow(f: &Inner, a: Elt, mut e: u64) -> Elt {
    let (mut base, mut acc) = (a, Elt::ONE);
    while e > 0 {
        if e & 1 == 1 {
            acc = schoolbook_mul(f, acc, base);
        }
        base = schoolbook_mul(f, base, base);
        e >>= 1;
    }
    acc
}

fn find_primitive(f: &Inner) -> Elt {
    let order = (f.q - 1) as u64;
    let factors = prime_factors(order);
    (1..f.q)
        .map(Elt)
        .find(|&g| factors.iter().all(|&r| slow_pow(f, g, order / r) != Elt::ONE))
        .expect("the multiplicative group of a finite field is cyclic")
}

fn build_tables(f: &Inner) -> Tables {
    let order = (f.q - 1) as usize;
    let mut exp = Vec::with_capacity(order);
    let mut log = vec![0u32; f.q as usize];
    let mut cur = Elt::ONE;
    for i in 0..order {
        exp.push(cur.0);
        log[cur.0 as usize] = i as u32;
        cur = schoolbook_mul(f, cur, f.primitive);
    }
    Tables { exp, log }
}

/// Dense polynomials over the prime field, used only to certify moduli.
mod fp {
    fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv(a: u32, p: u32) -> u32 {
        let (mut base, mut e, mut acc) = (a as u64, p as u64 - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    fn rem(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
        let dm = m.len() - 1;
        let lead_inv = inv(m[dm], p) as u64;
        while a.len() > dm {
            let top = a.len() - 1;
            let c = a[top] as u64 * lead_inv % p as u64;
            if c != 0 {
                for (k, &mk) in m.iter().enumerate() {
                    let idx = top - dm + k;
                    a[idx] = ((a[idx] as u64 + (p as u64 - c) * mk as u64) % p as u64) as u32;
                }
            }
            a.pop();
            a = trim(a);
        }
        trim(a)
    }

    fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        rem(prod.into_iter().map(|c| c as u32).collect(), m, p)
    }

    fn pow_mod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut base = a.to_vec();
        let mut acc = vec![1u32];
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, m, p);
            }
            base = mul_mod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    fn gcd(mut a: Vec<u32>, mut b: Vec<u32>, p: u32) -> Vec<u32> {
        while !b.is_empty() {
            let r = rem(a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or: a monic `m` of degree `n` is irreducible iff
    /// `gcd(m, x^{p^i} - x) = 1` for every `1 <= i <= n/2`.
    pub(super) fn is_irreducible(m: &[u32], p: u32) -> bool {
        let n = m.len() - 1;
        if n == 1 {
            return true;
        }
        let mut h = rem(vec![0, 1], m, p);
        for _ in 1..=n / 2 {
            h = pow_mod(&h, p as u64, m, p);
            let mut diff = h.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(m.to_vec(), trim(diff), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}
