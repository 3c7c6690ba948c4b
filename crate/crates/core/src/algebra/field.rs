//! The coefficient field F_q, q = p^m.
//!
//! Elements are stored as a canonical residue: the integer itself when
//! m = 1, and `c_0 + c_1 p + ... + c_{m-1} p^{m-1}` for the element
//! `c_0 + c_1 z + ... + c_{m-1} z^{m-1}` of F_p[z]/(modulus) when m > 1.
//! Extension fields carry full addition and multiplication tables.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest extension field for which tables are built.
const MAX_TABLE_Q: u32 = 1024;

/// An element of F_q in canonical form. Meaningless without its [`Field`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(pub(crate) u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    frob: Vec<u32>,
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    tables: Option<Tables>,
}

/// Immutable, cheaply clonable field descriptor.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.modulus {
            None => write!(f, "F_{}", self.0.p),
            Some(m) => write!(f, "F_{}[z]/({:?})", self.0.p, m),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Dense F_p polynomial helpers (ascending coefficients), only used to set up
// extension fields.
fn fp_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn fp_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut r: Vec<u32> = prod.into_iter().map(|x| x as u32).collect();
    fp_rem(&mut r, m, p);
    r
}

fn fp_rem(r: &mut Vec<u32>, m: &[u32], p: u32) {
    fp_trim(r);
    let dm = m.len() - 1;
    let lead_inv = fp_inv(m[dm], p) as u64;
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] as u64 * lead_inv % p as u64;
        for (j, &mj) in m.iter().enumerate() {
            let idx = top - dm + j;
            r[idx] = ((r[idx] as u64 + (p as u64 - c) * mj as u64) % p as u64) as u32;
        }
        fp_trim(r);
    }
}

fn fp_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        fp_rem(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn fp_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut r: Vec<u32> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    fp_trim(&mut r);
    r
}

/// Rabin-style test: f of degree m is irreducible iff gcd(x^{p^i} - x, f) = 1
/// for 1 <= i <= m/2.
fn fp_is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut xp = x.clone();
    for _ in 1..=m / 2 {
        // xp <- xp^p mod f
        let mut acc = vec![1u32];
        for _ in 0..p {
            acc = fp_mulmod(&acc, &xp, f, p);
        }
        xp = acc;
        let diff = fp_sub(&xp, &x, p);
        let g = fp_gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn decode(mut v: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(v % p);
        v /= p;
    }
    out
}

fn encode(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &x| acc * p + x)
}

impl Field {
    /// Builds F_{p^m}. When `m > 1` and no modulus is given, the least monic
    /// irreducible of degree m is chosen, ordering candidates by the integer
    /// `c_0 + c_1 p + ... + c_{m-1} p^{m-1}` of their lower coefficients.
    /// A supplied modulus is given in ascending order and must be monic.
    pub fn new(p: u64, m: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) || p > u32::MAX as u64 / 2 {
            return Err(Error::NonPrimeP(p));
        }
        let p = p as u32;
        if m == 0 {
            return Err(Error::DegreeMismatch { expected: 1, found: 0 });
        }
        if m == 1 {
            if let Some(md) = modulus {
                let mut md = md.to_vec();
                fp_trim(&mut md);
                if md.len() != 2 {
                    return Err(Error::DegreeMismatch { expected: 1, found: md.len().saturating_sub(1) as u32 });
                }
            }
            return Ok(Field(Arc::new(Inner { p, m, q: p, modulus: None, tables: None })));
        }
        let q64 = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q64 > MAX_TABLE_Q as u64 {
            return Err(Error::FieldTooLarge { p, m });
        }
        let q = q64 as u32;
        let modulus = match modulus {
            Some(md) => {
                let mut md: Vec<u32> = md.iter().map(|&c| c % p).collect();
                fp_trim(&mut md);
                let deg = md.len().saturating_sub(1) as u32;
                if deg != m {
                    return Err(Error::DegreeMismatch { expected: m, found: deg });
                }
                if md[m as usize] != 1 {
                    return Err(Error::InvalidArgument("modulus must be monic".into()));
                }
                if !fp_is_irreducible(&md, p) {
                    return Err(Error::ReducibleModulus { p });
                }
                md
            }
            None => {
                let mut found = None;
                for k in 0..q {
                    let mut cand = decode(k, p, m);
                    cand.push(1);
                    if fp_is_irreducible(&cand, p) {
                        found = Some(cand);
                        break;
                    }
                }
                found.expect("an irreducible polynomial of every degree exists")
            }
        };
        let tables = Self::build_tables(p, m, q, &modulus);
        Ok(Field(Arc::new(Inner { p, m, q, modulus: Some(modulus), tables: Some(tables) })))
    }

    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Field> {
        Self::new(p, 1, None)
    }

    fn build_tables(p: u32, m: u32, q: u32, modulus: &[u32]) -> Tables {
        let n = q as usize;
        let elems: Vec<Vec<u32>> = (0..q).map(|v| decode(v, p, m)).collect();
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let s: Vec<u32> = (0..m as usize).map(|i| (elems[a][i] + elems[b][i]) % p).collect();
                add[a * n + b] = encode(&s, p);
                let mut pr = fp_mulmod(&elems[a], &elems[b], modulus, p);
                pr.resize(m as usize, 0);
                mul[a * n + b] = encode(&pr, p);
            }
        }
        let neg: Vec<u32> = (0..n)
            .map(|a| {
                let s: Vec<u32> = elems[a].iter().map(|&c| (p - c) % p).collect();
                encode(&s, p)
            })
            .collect();
        let mut inv = vec![0u32; n];
        for a in 1..n {
            for b in 1..n {
                if mul[a * n + b] == 1 {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        let frob: Vec<u32> = (0..n)
            .map(|a| {
                let mut r = 1usize;
                for _ in 0..p {
                    r = mul[r * n + a] as usize;
                }
                r as u32
            })
            .collect();
        Tables { add, mul, neg, inv, frob }
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Ascending coefficients of the defining modulus (present iff m > 1).
    pub fn modulus(&self) -> Option<&[u32]> {
        self.0.modulus.as_deref()
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.m == 1
    }

    /// Element from its canonical residue; panics when out of range.
    pub fn elem(&self, v: u32) -> Fq {
        assert!(v < self.0.q, "residue {} out of range for q = {}", v, self.0.q);
        Fq(v)
    }

    /// Element from its canonical residue, rejecting out-of-range input.
    pub fn try_elem(&self, v: u32) -> Result<Fq> {
        if v < self.0.q {
            Ok(Fq(v))
        } else {
            Err(Error::Parse(format!("coefficient {v} out of range for q = {}", self.0.q)))
        }
    }

    /// Image of an integer under Z -> F_p -> F_q.
    pub fn from_int(&self, v: i64) -> Fq {
        Fq(v.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.0.q).map(Fq)
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        match &self.0.tables {
            None => {
                let s = a.0 + b.0;
                Fq(if s >= self.0.p { s - self.0.p } else { s })
            }
            Some(t) => Fq(t.add[a.0 as usize * self.0.q as usize + b.0 as usize]),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        match &self.0.tables {
            None => Fq(if a.0 == 0 { 0 } else { self.0.p - a.0 }),
            Some(t) => Fq(t.neg[a.0 as usize]),
        }
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        match &self.0.tables {
            None => Fq((a.0 as u64 * b.0 as u64 % self.0.p as u64) as u32),
            Some(t) => Fq(t.mul[a.0 as usize * self.0.q as usize + b.0 as usize]),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a.is_zero() {
            return None;
        }
        Some(match &self.0.tables {
            None => Fq(fp_inv(a.0, self.0.p)),
            Some(t) => Fq(t.inv[a.0 as usize]),
        })
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut r = Fq::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// The absolute Frobenius a -> a^p.
    #[inline]
    pub fn frobenius(&self, a: Fq) -> Fq {
        match &self.0.tables {
            None => a,
            Some(t) => Fq(t.frob[a.0 as usize]),
        }
    }

    /// a -> a^(p^k).
    pub fn frobenius_pow(&self, a: Fq, k: u32) -> Fq {
        if self.0.tables.is_none() {
            return a;
        }
        let mut r = a;
        for _ in 0..(k % self.0.m) {
            r = self.frobenius(r);
        }
        r
    }

    /// `(-1)^e` as a field element.
    pub fn sign(&self, e: u64) -> Fq {
        if e.is_multiple_of(2) {
            Fq::ONE
        } else {
            self.neg(Fq::ONE)
        }
    }

    #[inline]
    pub(crate) fn has_tables(&self) -> bool {
        self.0.tables.is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(f2.q(), 2);
        assert!(f2.modulus().is_none());
        let f3 = Field::new(3, 1, None).unwrap();
        assert_eq!(f3.q(), 3);
        assert_eq!(f3.mul(f3.elem(2), f3.elem(2)), f3.elem(1));
    }

    #[test]
    fn f4_default_modulus() {
        let f4 = Field::new(2, 2, None).unwrap();
        assert_eq!(f4.q(), 4);
        assert_eq!(f4.modulus(), Some(&[1, 1, 1][..]));
        // z * z = z + 1
        assert_eq!(f4.mul(f4.elem(2), f4.elem(2)), f4.elem(3));
    }

    #[test]
    fn default_moduli_are_least_irreducibles() {
        assert_eq!(Field::new(3, 2, None).unwrap().modulus(), Some(&[1, 0, 1][..]));
        assert_eq!(Field::new(2, 3, None).unwrap().modulus(), Some(&[1, 1, 0, 1][..]));
    }

    #[test]
    fn errors() {
        assert_eq!(Field::new(4, 1, None).unwrap_err(), Error::NonPrimeP(4));
        assert_eq!(Field::new(2, 2, Some(&[1, 0, 1])).unwrap_err(), Error::ReducibleModulus { p: 2 });
        assert_eq!(Field::new(2, 2, Some(&[1, 1, 0, 1])).unwrap_err(), Error::DegreeMismatch { expected: 2, found: 3 });
    }

    #[test]
    fn frobenius_fixes_fq_exhaustively() {
        for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)] {
            let f = Field::new(p, m, None).unwrap();
            for a in f.elements() {
                assert_eq!(f.pow(a, f.q() as u64), a);
                assert_eq!(f.frobenius_pow(a, m), a);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Fq::ONE);
                }
            }
        }
    }
}
