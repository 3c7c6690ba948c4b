//! Truncated Laurent series in 1/θ.
//!
//! A series is known exactly on exponents `>= low` and carries the marker
//! `O(θ^(low-1))`. Every operation propagates the marker soundly; nothing
//! below it is ever reported.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, Fq, RatFun, UniPoly, Var};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    field: Field,
    low: i64,
    // coeffs[k] is the coefficient of θ^(low + k); no trailing zeros.
    coeffs: Vec<Fq>,
}

/// Outcome of comparing two series on their common known range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Agreement {
    pub equal: bool,
    /// The weaker of the two markers: exponents above it were compared.
    pub compared_down_to: i64,
    /// Highest exponent where the coefficients differ.
    pub first_mismatch: Option<i64>,
    /// Number of leading exponents on which the two agree.
    pub agreed_terms: u64,
}

impl LaurentSeries {
    fn build(field: &Field, low: i64, mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LaurentSeries { field: field.clone(), low, coeffs }
    }

    /// `O(θ^(low-1))`.
    pub fn zero(field: &Field, low: i64) -> Self {
        LaurentSeries { field: field.clone(), low, coeffs: Vec::new() }
    }

    pub fn one(field: &Field, low: i64) -> Self {
        Self::monomial(field, Fq::ONE, 0, low)
    }

    pub fn monomial(field: &Field, c: Fq, e: i64, low: i64) -> Self {
        Self::from_terms(field, [(e, c)], low)
    }

    /// Terms below `low` are dropped.
    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (i64, Fq)>, low: i64) -> Self {
        let terms: Vec<_> = terms.into_iter().filter(|(e, c)| *e >= low && !c.is_zero()).collect();
        let top = terms.iter().map(|t| t.0).max().unwrap_or(low - 1);
        let mut coeffs = vec![Fq::ZERO; (top - low + 1).max(0) as usize];
        for (e, c) in terms {
            let k = (e - low) as usize;
            coeffs[k] = field.add(coeffs[k], c);
        }
        Self::build(field, low, coeffs)
    }

    /// A polynomial in θ, exact down to `low`.
    pub fn from_poly(p: &UniPoly, low: i64) -> Self {
        Self::from_terms(p.field(), p.terms().iter().map(|&(e, c)| (e as i64, c)), low)
    }

    /// Expansion at infinity of `r`, exact on exponents `>= low`.
    pub fn from_ratfun(r: &RatFun, low: i64) -> Result<Self> {
        Self::quotient(r.num(), r.den(), low)
    }

    /// `num / den` expanded in 1/θ by long division.
    pub fn quotient(num: &UniPoly, den: &UniPoly, low: i64) -> Result<Self> {
        let f = num.field();
        let db = den.degree().ok_or(Error::DivisionByZero)? as i64;
        let Some(da) = num.degree() else {
            return Ok(Self::zero(f, low));
        };
        let da = da as i64;
        let top = da - db;
        if top < low {
            return Ok(Self::zero(f, low));
        }
        let inv = f.inv(den.leading_coeff()).expect("nonzero");
        // rem[k] holds the coefficient of θ^(low + k).
        let base = low;
        let mut rem = vec![Fq::ZERO; (da - base + 1) as usize];
        for &(e, c) in num.terms() {
            let e = e as i64;
            if e >= base {
                rem[(e - base) as usize] = c;
            }
        }
        let mut out = vec![Fq::ZERO; (top - low + 1) as usize];
        let lower: Vec<(i64, Fq)> = den.terms()[..den.terms().len() - 1].iter().map(|&(e, c)| (e as i64, c)).collect();
        for e in (low..=top).rev() {
            let c = f.mul(rem[(e + db - base) as usize], inv);
            if c.is_zero() {
                continue;
            }
            out[(e - low) as usize] = c;
            for &(de, dc) in &lower {
                let k = e + de - base;
                if k >= 0 {
                    let k = k as usize;
                    rem[k] = f.sub(rem[k], f.mul(c, dc));
                }
            }
        }
        Ok(Self::build(f, low, out))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Lowest exactly known exponent.
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Leading exponent, if a nonzero coefficient is known.
    pub fn leading_exponent(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn leading_coeff(&self) -> Option<Fq> {
        self.coeffs.last().copied()
    }

    fn top_or_marker(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    /// True when no nonzero coefficient is known.
    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> Fq {
        if e < self.low {
            return Fq::ZERO;
        }
        self.coeffs.get((e - self.low) as usize).copied().unwrap_or(Fq::ZERO)
    }

    /// Nonzero terms in descending exponent order.
    pub fn terms(&self) -> Vec<(i64, Fq)> {
        self.coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).map(|(k, &c)| (self.low + k as i64, c)).collect()
    }

    /// Forgets everything below `low`.
    pub fn truncate(&self, low: i64) -> Self {
        if low <= self.low {
            return self.clone();
        }
        let skip = ((low - self.low) as usize).min(self.coeffs.len());
        Self::build(&self.field, low, self.coeffs[skip..].to_vec())
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        let low = self.low.max(other.low);
        let top = self.top_or_marker().max(other.top_or_marker());
        let mut out = vec![Fq::ZERO; (top - low + 1).max(0) as usize];
        for (k, slot) in out.iter_mut().enumerate() {
            let e = low + k as i64;
            *slot = self.field.add(self.coeff(e), other.coeff(e));
        }
        Ok(Self::build(&self.field, low, out))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(self.field.neg(Fq::ONE))
    }

    pub fn scale(&self, c: Fq) -> Self {
        Self::build(&self.field, self.low, self.coeffs.iter().map(|&x| self.field.mul(x, c)).collect())
    }

    /// Multiplication by θ^k.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries { field: self.field.clone(), low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        // The unknown tail of one factor, O(θ^(low-1)), meets the other's
        // leading exponent; an all-unknown factor counts as its marker.
        let (ta, tb) = (self.top_or_marker(), other.top_or_marker());
        let low = (self.low + tb).max(other.low + ta);
        let top = ta + tb;
        if self.coeffs.is_empty() || other.coeffs.is_empty() || top < low {
            return Ok(Self::zero(&self.field, low));
        }
        let f = &self.field;
        let mut out = vec![Fq::ZERO; (top - low + 1) as usize];
        for (i, &a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let ea = self.low + i as i64;
            for (j, &b) in other.coeffs.iter().enumerate().rev() {
                let e = ea + other.low + j as i64;
                if e < low {
                    break;
                }
                if !b.is_zero() {
                    let k = (e - low) as usize;
                    out[k] = f.add(out[k], f.mul(a, b));
                }
            }
        }
        Ok(Self::build(f, low, out))
    }

    /// Product with an exact polynomial in θ; the marker moves up by its degree.
    pub fn mul_poly(&self, p: &UniPoly) -> Result<Self> {
        if p.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let Some(d) = p.degree() else {
            return Err(Error::InvalidArgument("multiplication by the zero polynomial".into()));
        };
        let low = self.low + d as i64;
        let f = &self.field;
        let mut terms = Vec::new();
        for (e, c) in self.terms() {
            for &(pe, pc) in p.terms() {
                if e + pe as i64 >= low {
                    terms.push((e + pe as i64, f.mul(c, pc)));
                }
            }
        }
        Ok(Self::from_terms(f, terms, low))
    }

    /// Quotient by an exact nonzero polynomial in θ.
    pub fn div_poly(&self, p: &UniPoly) -> Result<Self> {
        let d = p.degree().ok_or(Error::DivisionByZero)? as i64;
        let one = UniPoly::one(&self.field, Var::Theta);
        let t = self.top_or_marker();
        let inv = Self::quotient(&one, p, self.low - d - t - 1)?;
        Ok(self.checked_mul(&inv)?.truncate(self.low - d))
    }

    /// Product with an exact rational function.
    pub fn mul_ratfun(&self, r: &RatFun) -> Result<Self> {
        self.mul_poly(r.num())?.div_poly(r.den())
    }

    pub fn inv(&self) -> Result<Self> {
        let Some(e) = self.leading_exponent() else {
            return Err(Error::UnknownLeadingTerm);
        };
        let f = &self.field;
        let lc_inv = f.inv(self.leading_coeff().unwrap()).expect("nonzero");
        // Relative precision of self is e - low, so 1/self is known down to
        // -e - (e - low).
        let low = self.low - 2 * e;
        let n = (e - self.low + 1) as usize;
        // a_j: coefficient of θ^(e-j); b_k: coefficient of θ^(-e-k).
        let a: Vec<Fq> = (0..n).map(|j| self.coeff(e - j as i64)).collect();
        let mut b = vec![Fq::ZERO; n];
        for k in 0..n {
            let mut s = if k == 0 { Fq::ONE } else { Fq::ZERO };
            for j in 1..=k {
                s = f.sub(s, f.mul(a[j], b[k - j]));
            }
            b[k] = f.mul(s, lc_inv);
        }
        Ok(Self::from_terms(f, b.into_iter().enumerate().map(|(k, c)| (-e - k as i64, c)), low))
    }

    /// `self^p`, computed termwise through Frobenius.
    pub fn frobenius(&self) -> Self {
        let p = self.field.p() as i64;
        let low = p * (self.low - 1) + 1;
        Self::from_terms(&self.field, self.terms().into_iter().map(|(e, c)| (p * e, self.field.frobenius(c))), low)
    }

    /// Integer powers; negative exponents go through `inv`.
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut n = n.unsigned_abs();
        if n == 0 {
            return Ok(Self::one(&self.field, base.low.min(0)));
        }
        let p = self.field.p() as u64;
        let mut result: Option<Self> = None;
        let mut base = base;
        loop {
            let digit = n % p;
            if digit > 0 {
                let mut d = base.clone();
                for _ in 1..digit {
                    d = d.checked_mul(&base)?;
                }
                result = Some(match result {
                    None => d,
                    Some(r) => r.checked_mul(&d)?,
                });
            }
            n /= p;
            if n == 0 {
                break;
            }
            base = base.frobenius();
        }
        Ok(result.expect("n > 0"))
    }

    /// Compares on the common known range.
    pub fn agree(&self, other: &Self) -> Result<Agreement> {
        self.same(other)?;
        let low = self.low.max(other.low);
        let top = self.top_or_marker().max(other.top_or_marker());
        if top < low {
            return Err(Error::EmptyOverlap);
        }
        let first_mismatch = (low..=top).rev().find(|&e| self.coeff(e) != other.coeff(e));
        let agreed = match first_mismatch {
            Some(m) => (top - m) as u64,
            None => (top - low + 1) as u64,
        };
        Ok(Agreement { equal: first_mismatch.is_none(), compared_down_to: low - 1, first_mismatch, agreed_terms: agreed })
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson { low_known: self.low, terms: self.terms().into_iter().map(|(e, c)| (e, c.value())).collect() }
    }

    pub fn from_json(field: &Field, j: &SeriesJson) -> Self {
        Self::from_terms(field, j.terms.iter().map(|&(e, c)| (e, field.elem(c))), j.low_known)
    }

    pub fn to_text(&self) -> String {
        let mut parts: Vec<String> = self.terms().into_iter().map(|(e, c)| term_text(c, e)).collect();
        parts.push(format!("O({})", power_text(self.low - 1)));
        parts.join(" + ")
    }
}

fn power_text(e: i64) -> String {
    match e {
        0 => "1".into(),
        1 => "th".into(),
        _ => format!("th^{e}"),
    }
}

fn term_text(c: Fq, e: i64) -> String {
    if c == Fq::ONE {
        power_text(e)
    } else if e == 0 {
        c.to_string()
    } else {
        format!("{c}*{}", power_text(e))
    }
}

/// Serialized form of a series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SeriesJson {
    pub low_known: i64,
    pub terms: Vec<(i64, u32)>,
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries({})", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(f: &Field, c: &[u32]) -> UniPoly {
        UniPoly::from_dense(f, Var::Theta, c)
    }

    #[test]
    fn expand_ratfun() {
        let f = Field::prime(2).unwrap();
        let r = RatFun::make(th(&f, &[1]), th(&f, &[0, 1])).unwrap();
        assert_eq!(LaurentSeries::from_ratfun(&r, -3).unwrap().to_text(), "th^-1 + O(th^-4)");
        let r = RatFun::make(th(&f, &[1]), th(&f, &[0, 1, 1])).unwrap();
        assert_eq!(LaurentSeries::from_ratfun(&r, -4).unwrap().to_text(), "th^-2 + th^-3 + th^-4 + O(th^-5)");
        let s = LaurentSeries::from_ratfun(&RatFun::from_poly(th(&f, &[1, 0, 1])), -3).unwrap();
        assert_eq!(s.to_text(), "th^2 + 1 + O(th^-4)");
    }

    #[test]
    fn geometric_inverse() {
        let f = Field::prime(2).unwrap();
        let a = LaurentSeries::from_terms(&f, [(0, Fq::ONE), (-1, Fq::ONE)], -6);
        let b = a.inv().unwrap();
        assert_eq!(b.low(), -6);
        assert!((-6..=0).all(|e| b.coeff(e) == Fq::ONE));
        let one = a.checked_mul(&b).unwrap();
        assert!(one.agree(&LaurentSeries::one(&f, -6)).unwrap().equal);
    }

    #[test]
    fn powers() {
        let f = Field::prime(3).unwrap();
        let x = LaurentSeries::monomial(&f, Fq::ONE, -1, -20);
        assert_eq!(x.pow(3).unwrap().terms(), vec![(-3, Fq::ONE)]);
        let a = LaurentSeries::from_terms(&f, [(1, Fq(1)), (0, Fq(2)), (-2, Fq(1))], -10);
        let mut m = a.clone();
        for _ in 1..7 {
            m = m.checked_mul(&a).unwrap();
        }
        let p = a.pow(7).unwrap();
        assert!(p.agree(&m).unwrap().equal);
        assert_eq!(p.low(), m.low());
    }

    #[test]
    fn agreement_conventions() {
        let f = Field::prime(3).unwrap();
        let a = LaurentSeries::monomial(&f, Fq::ONE, -1, -1);
        let b = LaurentSeries::from_terms(&f, [(-1, Fq::ONE), (-5, Fq::ONE)], -5);
        let r = a.agree(&b).unwrap();
        assert!(r.equal);
        assert_eq!(r.compared_down_to, -2);
        let c = LaurentSeries::monomial(&f, Fq(2), -1, -1);
        assert_eq!(a.agree(&c).unwrap().first_mismatch, Some(-1));
        let z = LaurentSeries::zero(&f, 3);
        assert_eq!(z.agree(&LaurentSeries::zero(&f, 1)).unwrap_err(), Error::EmptyOverlap);
    }

    #[test]
    fn divide_by_polynomial() {
        let f = Field::prime(3).unwrap();
        let p = th(&f, &[2, 1, 1]);
        let a = LaurentSeries::from_terms(&f, [(0, Fq::ONE), (-3, Fq(2))], -15);
        let back = a.div_poly(&p).unwrap().mul_poly(&p).unwrap();
        let r = back.agree(&a).unwrap();
        assert!(r.equal && r.compared_down_to >= -16);
    }
}
