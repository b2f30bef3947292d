//! Arithmetic in finite fields F_q, q = p^m <= 256.
//!
//! Elements are stored by their polynomial-basis code: the element
//! c_0 + c_1 x + ... + c_{m-1} x^{m-1} has code sum c_i p^i. Addition is
//! digitwise mod p; multiplication reduces modulo a fixed monic irreducible
//! polynomial of degree m. All q x q results are precomputed at construction.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: usize = 256;

/// A field element, identified by its polynomial-basis code.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u8);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Wraps a code without checking it against a field. Use
    /// [`Field::elem`] for a checked conversion.
    pub const fn from_code(code: u8) -> Elem {
        Elem(code)
    }

    pub const fn code(self) -> u8 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Inner {
    p: usize,
    m: usize,
    q: usize,
    /// Coefficients c_0..c_m of the modulus (c_m = 1). Empty for prime fields.
    modulus: Vec<u8>,
    default_modulus: bool,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// Arithmetic context for one finite field. Cloning is cheap and clones
/// share the lookup tables.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("Field");
        s.field("q", &self.q());
        if self.m() > 1 {
            s.field("modulus", &self.modulus());
        }
        s.finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl Field {
    /// Builds F_{p^m}. Without an override the default modulus is used:
    /// x^2+x+1 for F_4, x^3+x+1 for F_8, x^2+1 for F_9, and otherwise the
    /// irreducible monic polynomial of least code.
    pub fn new(p: usize, m: usize, modulus_override: Option<&[u8]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidModulus("extension degree must be at least 1".into()));
        }
        let q = checked_pow(p, m).filter(|&q| q <= MAX_ORDER);
        let q = match q {
            Some(q) => q,
            None => return Err(Error::UnsupportedOrder(p.saturating_pow(m as u32))),
        };
        let default = default_modulus(p, m);
        let (modulus, default_modulus) = match modulus_override {
            None => (default, true),
            Some(_) if m == 1 => {
                return Err(Error::InvalidModulus("prime fields take no modulus".into()))
            }
            Some(poly) => {
                if poly.len() != m + 1 || poly[m] != 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected a monic polynomial of degree {m}"
                    )));
                }
                if poly.iter().any(|&c| c as usize >= p) {
                    return Err(Error::InvalidModulus(format!("coefficients must be below {p}")));
                }
                if !poly::is_irreducible(poly, p) {
                    return Err(Error::ReduciblePolynomial { p });
                }
                let is_default = poly == default.as_slice();
                (poly.to_vec(), is_default)
            }
        };
        Ok(Field(Arc::new(build_tables(p, m, q, modulus, default_modulus))))
    }

    /// The prime field F_p.
    pub fn prime(p: usize) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// The field of order `q` with its default modulus.
    pub fn from_order(q: usize) -> Result<Field> {
        let (p, m) = prime_power(q).ok_or(Error::UnsupportedOrder(q))?;
        Field::new(p, m, None)
    }

    /// The field of order `q`, optionally with an explicit modulus.
    pub fn with_modulus(q: usize, modulus: Option<&[u8]>) -> Result<Field> {
        let (p, m) = prime_power(q).ok_or(Error::UnsupportedOrder(q))?;
        Field::new(p, m, modulus)
    }

    pub fn p(&self) -> usize {
        self.0.p
    }

    pub fn m(&self) -> usize {
        self.0.m
    }

    pub fn q(&self) -> usize {
        self.0.q
    }

    /// Modulus coefficients c_0..c_m, empty for a prime field.
    pub fn modulus(&self) -> &[u8] {
        &self.0.modulus
    }

    pub fn has_default_modulus(&self) -> bool {
        self.0.default_modulus
    }

    /// File header fragment: `q=<q>` plus `poly=<c_0,...,c_m>` for a
    /// non-default modulus.
    pub fn header(&self) -> String {
        if self.has_default_modulus() {
            format!("q={}", self.q())
        } else {
            let poly: Vec<String> = self.modulus().iter().map(|c| c.to_string()).collect();
            format!("q={} poly={}", self.q(), poly.join(","))
        }
    }

    pub fn elem(&self, code: usize) -> Result<Elem> {
        if code < self.q() {
            Ok(Elem(code as u8))
        } else {
            Err(Error::InvalidElement { code, q: self.q() })
        }
    }

    pub fn contains(&self, e: Elem) -> bool {
        (e.0 as usize) < self.q()
    }

    /// All elements in ascending code order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q()).map(|c| Elem(c as u8))
    }

    /// F_q^*, ascending by code.
    pub fn nonzero_elems(&self) -> Vec<Elem> {
        (1..self.q()).map(|c| Elem(c as u8)).collect()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.add_code(a.0, b.0))
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.add_code(a.0, self.neg_code(b.0)))
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg_code(a.0))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.mul_code(a.0, b.0))
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(Elem(self.0.inv[a.0 as usize]))
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub(crate) fn add_code(&self, a: u8, b: u8) -> u8 {
        self.0.add[a as usize * self.0.q + b as usize]
    }

    #[inline]
    pub(crate) fn mul_code(&self, a: u8, b: u8) -> u8 {
        self.0.mul[a as usize * self.0.q + b as usize]
    }

    #[inline]
    pub(crate) fn neg_code(&self, a: u8) -> u8 {
        self.0.neg[a as usize]
    }

    #[inline]
    pub(crate) fn inv_code(&self, a: u8) -> u8 {
        self.0.inv[a as usize]
    }

    /// Row `a` of the multiplication table: `mul_row(a)[b] == a*b`.
    #[inline]
    pub(crate) fn mul_row(&self, a: u8) -> &[u8] {
        let q = self.0.q;
        &self.0.mul[a as usize * q..(a as usize + 1) * q]
    }

    /// Addition computed digit by digit, bypassing the tables.
    pub fn add_direct(&self, a: Elem, b: Elem) -> Elem {
        Elem(add_digits(self.0.p, self.0.m, a.0 as usize, b.0 as usize) as u8)
    }

    /// Multiplication computed by polynomial reduction, bypassing the tables.
    pub fn mul_direct(&self, a: Elem, b: Elem) -> Elem {
        let inner = &self.0;
        Elem(mul_poly_codes(inner.p, inner.m, &inner.modulus, a.0 as usize, b.0 as usize) as u8)
    }
}

fn build_tables(p: usize, m: usize, q: usize, modulus: Vec<u8>, default_modulus: bool) -> Inner {
    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    for a in 0..q {
        for b in a..q {
            let s = add_digits(p, m, a, b) as u8;
            let t = mul_poly_codes(p, m, &modulus, a, b) as u8;
            add[a * q + b] = s;
            add[b * q + a] = s;
            mul[a * q + b] = t;
            mul[b * q + a] = t;
        }
    }
    let mut neg = vec![0u8; q];
    let mut inv = vec![0u8; q];
    for a in 0..q {
        for b in 0..q {
            if add[a * q + b] == 0 {
                neg[a] = b as u8;
            }
            if mul[a * q + b] == 1 {
                inv[a] = b as u8;
            }
        }
    }
    Inner {
        p,
        m,
        q,
        modulus,
        default_modulus,
        add,
        mul,
        neg,
        inv,
    }
}

fn add_digits(p: usize, m: usize, mut a: usize, mut b: usize) -> usize {
    let mut out = 0;
    let mut place = 1;
    for _ in 0..m {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

fn mul_poly_codes(p: usize, m: usize, modulus: &[u8], a: usize, b: usize) -> usize {
    if m == 1 {
        return a * b % p;
    }
    let pa = poly::from_code(a, p, m);
    let pb = poly::from_code(b, p, m);
    let prod = poly::mul(&pa, &pb, p);
    let rem = poly::rem(&prod, modulus, p);
    poly::to_code(&rem, p)
}

fn default_modulus(p: usize, m: usize) -> Vec<u8> {
    match (p, m) {
        (_, 1) => Vec::new(),
        (2, 2) => vec![1, 1, 1],
        (2, 3) => vec![1, 1, 0, 1],
        (3, 2) => vec![1, 0, 1],
        _ => {
            let q = p.pow(m as u32);
            (0..q)
                .map(|low| {
                    let mut c = poly::from_code(low, p, m);
                    c.resize(m, 0);
                    c.push(1);
                    c
                })
                .find(|c| poly::is_irreducible(c, p))
                .expect("an irreducible polynomial of every degree exists")
        }
    }
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn checked_pow(p: usize, m: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..m {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

/// Splits `q` into (p, m) with q = p^m, p prime.
pub fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|&d| q.is_multiple_of(d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// Dense polynomials over F_p, coefficients stored low degree first.
pub(crate) mod poly {
    pub fn from_code(mut code: usize, p: usize, len: usize) -> Vec<u8> {
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            out.push((code % p) as u8);
            code /= p;
        }
        trim(out)
    }

    pub fn to_code(c: &[u8], p: usize) -> usize {
        c.iter().rev().fold(0, |acc, &d| acc * p + d as usize)
    }

    pub fn trim(mut c: Vec<u8>) -> Vec<u8> {
        while c.last() == Some(&0) {
            c.pop();
        }
        c
    }

    pub fn mul(a: &[u8], b: &[u8], p: usize) -> Vec<u8> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0usize; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as usize * y as usize) % p;
            }
        }
        trim(out.into_iter().map(|c| c as u8).collect())
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem(a: &[u8], m: &[u8], p: usize) -> Vec<u8> {
        let deg = m.len() - 1;
        let mut r: Vec<usize> = a.iter().map(|&c| c as usize).collect();
        while r.len() > deg {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - deg;
            if lead != 0 {
                for (i, &c) in m.iter().enumerate() {
                    r[shift + i] = (r[shift + i] + p - lead * c as usize % p) % p;
                }
            }
            r.pop();
        }
        trim(r.into_iter().map(|c| c as u8).collect())
    }

    /// Trial division by every monic polynomial of degree 1..=deg/2.
    pub fn is_irreducible(f: &[u8], p: usize) -> bool {
        let deg = f.len() - 1;
        if deg == 0 {
            return false;
        }
        for d in 1..=deg / 2 {
            let count = p.pow(d as u32);
            for low in 0..count {
                let mut g = from_code(low, p, d);
                g.resize(d, 0);
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}
