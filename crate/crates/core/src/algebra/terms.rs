//! Kernels on sparse term lists: `(exponent, coefficient)` pairs sorted by
//! ascending exponent with no zero coefficients.

use super::field::{Field, Fq};

pub(crate) type Terms = Vec<(u64, Fq)>;

/// Sorts, merges equal exponents and drops zeros.
pub(crate) fn normalize(f: &Field, mut v: Terms) -> Terms {
    v.sort_unstable_by_key(|t| t.0);
    let mut out: Terms = Vec::with_capacity(v.len());
    for (e, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == e => last.1 = f.add(last.1, c),
            _ => out.push((e, c)),
        }
        if let Some(last) = out.last() {
            if last.1.is_zero() {
                out.pop();
            }
        }
    }
    out.retain(|t| !t.1.is_zero());
    out
}

pub(crate) fn add(f: &Field, a: &[(u64, Fq)], b: &[(u64, Fq)]) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (ea, ca) = a[i];
        let (eb, cb) = b[j];
        if ea < eb {
            out.push((ea, ca));
            i += 1;
        } else if eb < ea {
            out.push((eb, cb));
            j += 1;
        } else {
            let s = f.add(ca, cb);
            if !s.is_zero() {
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

pub(crate) fn neg(f: &Field, a: &[(u64, Fq)]) -> Terms {
    a.iter().map(|&(e, c)| (e, f.neg(c))).collect()
}

pub(crate) fn sub(f: &Field, a: &[(u64, Fq)], b: &[(u64, Fq)]) -> Terms {
    add(f, a, &neg(f, b))
}

pub(crate) fn scale(f: &Field, a: &[(u64, Fq)], c: Fq) -> Terms {
    if c.is_zero() {
        return Vec::new();
    }
    if c == Fq::ONE {
        return a.to_vec();
    }
    a.iter().map(|&(e, x)| (e, f.mul(x, c))).collect()
}

/// `c * x^shift * a`.
pub(crate) fn scale_shift(f: &Field, a: &[(u64, Fq)], c: Fq, shift: u64) -> Terms {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|&(e, x)| (e + shift, f.mul(x, c))).collect()
}

/// Accumulates `sum_k a_k * b_k` style products into a dense buffer.
struct DenseAcc {
    lo: u64,
    wide: Vec<u64>,
    narrow: Vec<Fq>,
    lazy: bool,
    p: u64,
}

impl DenseAcc {
    fn new(f: &Field, lo: u64, span: usize) -> Self {
        let lazy = !f.has_tables() && f.p() < (1 << 16);
        DenseAcc {
            lo,
            wide: if lazy { vec![0; span] } else { Vec::new() },
            narrow: if lazy { Vec::new() } else { vec![Fq::ZERO; span] },
            lazy,
            p: f.p() as u64,
        }
    }

    #[inline]
    fn push(&mut self, f: &Field, e: u64, a: Fq, b: Fq) {
        let idx = (e - self.lo) as usize;
        if self.lazy {
            self.wide[idx] += a.0 as u64 * b.0 as u64;
        } else {
            self.narrow[idx] = f.add(self.narrow[idx], f.mul(a, b));
        }
    }

    fn finish(self) -> Terms {
        let lo = self.lo;
        if self.lazy {
            let p = self.p;
            self.wide
                .into_iter()
                .enumerate()
                .filter_map(|(i, v)| {
                    let r = (v % p) as u32;
                    (r != 0).then_some((lo + i as u64, Fq(r)))
                })
                .collect()
        } else {
            self.narrow.into_iter().enumerate().filter_map(|(i, v)| (!v.is_zero()).then_some((lo + i as u64, v))).collect()
        }
    }
}

pub(crate) fn mul(f: &Field, a: &[(u64, Fq)], b: &[(u64, Fq)]) -> Terms {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len() == 1 {
        return scale_shift(f, b, a[0].1, a[0].0);
    }
    if b.len() == 1 {
        return scale_shift(f, a, b[0].1, b[0].0);
    }
    let lo = a[0].0 + b[0].0;
    let hi = a[a.len() - 1].0 + b[b.len() - 1].0;
    let span = (hi - lo + 1) as u128;
    let work = (a.len() * b.len()) as u128;
    if span <= 64 + 8 * work && span <= (1 << 26) {
        let mut acc = DenseAcc::new(f, lo, span as usize);
        for &(ea, ca) in a {
            for &(eb, cb) in b {
                acc.push(f, ea + eb, ca, cb);
            }
        }
        acc.finish()
    } else {
        let mut prods = Vec::with_capacity(a.len() * b.len());
        for &(ea, ca) in a {
            for &(eb, cb) in b {
                prods.push((ea + eb, f.mul(ca, cb)));
            }
        }
        normalize(f, prods)
    }
}

/// `a^(p^k)`: exponents scale by p^k, coefficients go through Frobenius.
pub(crate) fn frobenius(f: &Field, a: &[(u64, Fq)], k: u32) -> Option<Terms> {
    let s = (f.p() as u64).checked_pow(k)?;
    let mut out = Vec::with_capacity(a.len());
    for &(e, c) in a {
        out.push((e.checked_mul(s)?, f.frobenius_pow(c, k)));
    }
    Some(out)
}

/// `a^n`, splitting n into base-p digits so sparse inputs stay sparse.
pub(crate) fn pow(f: &Field, a: &[(u64, Fq)], n: u64) -> Option<Terms> {
    if n == 0 {
        return Some(vec![(0, Fq::ONE)]);
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() == 1 {
        let (e, c) = a[0];
        return Some(vec![(e.checked_mul(n)?, f.pow(c, n))]);
    }
    let p = f.p() as u64;
    let mut result: Terms = vec![(0, Fq::ONE)];
    let mut base: Terms = a.to_vec();
    let mut n = n;
    loop {
        let digit = n % p;
        if digit > 0 {
            let mut d = vec![(0, Fq::ONE)];
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

/// Long division; `b` must be nonempty.
pub(crate) fn divrem(f: &Field, a: &[(u64, Fq)], b: &[(u64, Fq)]) -> (Terms, Terms) {
    let (db, lb) = *b.last().expect("nonzero divisor");
    let inv = f.inv(lb).expect("nonzero leading coefficient");
    if b.len() == 1 {
        // Monomial divisor.
        let mut q = Vec::new();
        let mut r = Vec::new();
        for &(e, c) in a {
            if e >= db {
                q.push((e - db, f.mul(c, inv)));
            } else {
                r.push((e, c));
            }
        }
        return (q, r);
    }
    let dense_ok =
        a.last().map(|t| t.0).unwrap_or(0) <= (1 << 24) && a.last().map(|t| t.0 as usize).unwrap_or(0) <= 16 * (a.len() + b.len()) + 64;
    if dense_ok {
        let da = match a.last() {
            None => return (Vec::new(), Vec::new()),
            Some(t) => t.0,
        };
        if da < db {
            return (Vec::new(), a.to_vec());
        }
        let mut r = vec![Fq::ZERO; da as usize + 1];
        for &(e, c) in a {
            r[e as usize] = c;
        }
        let mut q = vec![Fq::ZERO; (da - db) as usize + 1];
        for k in (db..=da).rev() {
            let c = r[k as usize];
            if c.is_zero() {
                continue;
            }
            let qc = f.mul(c, inv);
            let shift = k - db;
            q[shift as usize] = qc;
            for &(e, bc) in b {
                let idx = (e + shift) as usize;
                r[idx] = f.sub(r[idx], f.mul(qc, bc));
            }
        }
        let qt = q.into_iter().enumerate().filter(|t| !t.1.is_zero()).map(|(i, c)| (i as u64, c)).collect();
        let rt = r.into_iter().take(db as usize).enumerate().filter(|t| !t.1.is_zero()).map(|(i, c)| (i as u64, c)).collect();
        return (qt, rt);
    }
    let mut rem: Terms = a.to_vec();
    let mut quot: Terms = Vec::new();
    while let Some(&(e, c)) = rem.last() {
        if e < db {
            break;
        }
        let qc = f.mul(c, inv);
        let shift = e - db;
        quot.push((shift, qc));
        let sub = scale_shift(f, b, qc, shift);
        rem = self::sub(f, &rem, &sub);
    }
    quot.reverse();
    (quot, rem)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_and_dense_mul_agree() {
        let f = Field::prime(3).unwrap();
        let a: Terms = vec![(0, Fq(1)), (1, Fq(2)), (5, Fq(1))];
        let b: Terms = vec![(0, Fq(2)), (3, Fq(1))];
        let dense = mul(&f, &a, &b);
        let mut prods = Vec::new();
        for &(ea, ca) in &a {
            for &(eb, cb) in &b {
                prods.push((ea + eb, f.mul(ca, cb)));
            }
        }
        assert_eq!(dense, normalize(&f, prods));
    }

    #[test]
    fn pow_frobenius_is_sparse() {
        let f = Field::prime(2).unwrap();
        let a: Terms = vec![(0, Fq(1)), (1, Fq(1))];
        let r = pow(&f, &a, 1 << 20).unwrap();
        assert_eq!(r, vec![(0, Fq(1)), (1 << 20, Fq(1))]);
    }
}
