//! Kernels for polynomials in t whose coefficients are sparse polynomials in
//! a second variable. A row list is sorted by ascending t-exponent and holds
//! no empty rows.

use std::collections::BTreeMap;

use super::field::{Field, Fq};
use super::terms::{self, Terms};

pub(crate) type Rows = Vec<(u64, Terms)>;

pub(crate) fn from_map(map: BTreeMap<u64, Terms>) -> Rows {
    map.into_iter().filter(|(_, t)| !t.is_empty()).collect()
}

pub(crate) fn add(f: &Field, a: &[(u64, Terms)], b: &[(u64, Terms)]) -> Rows {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (ea, eb) = (a[i].0, b[j].0);
        if ea < eb {
            out.push(a[i].clone());
            i += 1;
        } else if eb < ea {
            out.push(b[j].clone());
            j += 1;
        } else {
            let s = terms::add(f, &a[i].1, &b[j].1);
            if !s.is_empty() {
                out.push((ea, s));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

pub(crate) fn neg(f: &Field, a: &[(u64, Terms)]) -> Rows {
    a.iter().map(|(e, t)| (*e, terms::neg(f, t))).collect()
}

pub(crate) fn sub(f: &Field, a: &[(u64, Terms)], b: &[(u64, Terms)]) -> Rows {
    add(f, a, &neg(f, b))
}

pub(crate) fn scale(f: &Field, a: &[(u64, Terms)], c: Fq) -> Rows {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(e, t)| (*e, terms::scale(f, t, c))).collect()
}

/// Multiplies every row by the inner polynomial `p`.
pub(crate) fn mul_inner(f: &Field, a: &[(u64, Terms)], p: &[(u64, Fq)]) -> Rows {
    if p.is_empty() {
        return Vec::new();
    }
    a.iter().map(|(e, t)| (*e, terms::mul(f, t, p))).collect()
}

/// Multiplies by a polynomial in t with constant coefficients.
pub(crate) fn mul_outer(f: &Field, a: &[(u64, Terms)], p: &[(u64, Fq)]) -> Rows {
    if p.len() == 1 {
        let (s, c) = p[0];
        return a.iter().map(|(e, t)| (e + s, terms::scale(f, t, c))).collect();
    }
    let mut map: BTreeMap<u64, Terms> = BTreeMap::new();
    for &(s, c) in p {
        for (e, t) in a {
            accumulate(f, &mut map, e + s, terms::scale(f, t, c));
        }
    }
    from_map(map)
}

fn accumulate(f: &Field, map: &mut BTreeMap<u64, Terms>, key: u64, t: Terms) {
    match map.get_mut(&key) {
        Some(cur) => *cur = terms::add(f, cur, &t),
        None => {
            map.insert(key, t);
        }
    }
}

pub(crate) fn mul(f: &Field, a: &[(u64, Terms)], b: &[(u64, Terms)]) -> Rows {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if b.len() == 1 && b[0].0 == 0 {
        return from_map(a.iter().map(|(e, t)| (*e, terms::mul(f, t, &b[0].1))).collect());
    }
    if a.len() == 1 && a[0].0 == 0 {
        return from_map(b.iter().map(|(e, t)| (*e, terms::mul(f, &a[0].1, t))).collect());
    }
    // Group the products by output row and sum each group with one dense
    // or sorted pass.
    let mut groups: BTreeMap<u64, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, (ea, _)) in a.iter().enumerate() {
        for (j, (eb, _)) in b.iter().enumerate() {
            groups.entry(ea + eb).or_default().push((i, j));
        }
    }
    let mut out = Vec::with_capacity(groups.len());
    for (e, pairs) in groups {
        let row = if pairs.len() == 1 {
            let (i, j) = pairs[0];
            terms::mul(f, &a[i].1, &b[j].1)
        } else {
            let mut all: Terms = Vec::new();
            for (i, j) in pairs {
                all.extend(terms::mul(f, &a[i].1, &b[j].1));
            }
            terms::normalize(f, all)
        };
        if !row.is_empty() {
            out.push((e, row));
        }
    }
    out
}

/// `a^(p^k)`: both exponents scale by p^k, coefficients go through Frobenius.
pub(crate) fn frobenius(f: &Field, a: &[(u64, Terms)], k: u32) -> Option<Rows> {
    let s = (f.p() as u64).checked_pow(k)?;
    let mut out = Vec::with_capacity(a.len());
    for (e, t) in a {
        out.push((e.checked_mul(s)?, terms::frobenius(f, t, k)?));
    }
    Some(out)
}

pub(crate) fn one() -> Rows {
    vec![(0, vec![(0, Fq::ONE)])]
}

pub(crate) fn pow(f: &Field, a: &[(u64, Terms)], n: u64) -> Option<Rows> {
    if n == 0 {
        return Some(one());
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    let p = f.p() as u64;
    let mut result = one();
    let mut base: Rows = a.to_vec();
    let mut n = n;
    loop {
        let digit = n % p;
        if digit > 0 {
            let mut d = one();
            let mut b = base.clone();
            let mut e = digit;
            while e > 0 {
                if e & 1 == 1 {
                    d = mul(f, &d, &b);
                }
                e >>= 1;
                if e > 0 {
                    b = mul(f, &b, &b);
                }
            }
            result = mul(f, &result, &d);
        }
        n /= p;
        if n == 0 {
            break;
        }
        base = frobenius(f, &base, 1)?;
    }
    Some(result)
}

/// Division by a polynomial in t with constant coefficients; `d` nonempty.
pub(crate) fn divrem_outer(f: &Field, a: &[(u64, Terms)], d: &[(u64, Fq)]) -> (Rows, Rows) {
    let (dd, lc) = *d.last().expect("nonzero divisor");
    let inv = f.inv(lc).expect("nonzero leading coefficient");
    let mut rem: BTreeMap<u64, Terms> = a.iter().cloned().collect();
    let mut quot: Vec<(u64, Terms)> = Vec::new();
    loop {
        let (top, row) = match rem.iter().next_back() {
            Some((&e, _)) if e >= dd => (e, rem.remove(&e).unwrap()),
            _ => break,
        };
        let qrow = terms::scale(f, &row, inv);
        let shift = top - dd;
        for &(e, c) in &d[..d.len() - 1] {
            let sub = terms::scale(f, &qrow, f.neg(c));
            accumulate(f, &mut rem, e + shift, sub);
            if rem.get(&(e + shift)).is_some_and(|t| t.is_empty()) {
                rem.remove(&(e + shift));
            }
        }
        quot.push((shift, qrow));
    }
    quot.reverse();
    (quot, from_map(rem))
}

/// Applies `e -> e * s` to every inner exponent.
pub(crate) fn scale_inner_exponents(a: &[(u64, Terms)], s: u64) -> Option<Rows> {
    let mut out = Vec::with_capacity(a.len());
    for (e, t) in a {
        let mut row = Vec::with_capacity(t.len());
        for &(k, c) in t {
            row.push((k.checked_mul(s)?, c));
        }
        out.push((*e, row));
    }
    Some(out)
}

pub(crate) fn term_count(a: &[(u64, Terms)]) -> usize {
    a.iter().map(|(_, t)| t.len()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_outer_round_trip() {
        let f = Field::prime(3).unwrap();
        let a: Rows = vec![(0, vec![(1, Fq(1))]), (2, vec![(0, Fq(2)), (3, Fq(1))])];
        let d: Terms = vec![(0, Fq(1)), (1, Fq(2))];
        let prod = mul_outer(&f, &a, &d);
        let (q, r) = divrem_outer(&f, &prod, &d);
        assert_eq!(q, a);
        assert!(r.is_empty());
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let f = Field::prime(3).unwrap();
        let a: Rows = vec![(0, vec![(1, Fq(2))]), (1, vec![(0, Fq(1))])];
        let mut m = one();
        for _ in 0..7 {
            m = mul(&f, &m, &a);
        }
        assert_eq!(pow(&f, &a, 7).unwrap(), m);
    }
}
