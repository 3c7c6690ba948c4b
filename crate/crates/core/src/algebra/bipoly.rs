//! Polynomials in t with coefficients in F_q[θ].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Fq};
use super::poly::{monomial_text, UniPoly, Var};
use super::rows::{self, Rows};
use super::terms::{self, Terms};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: Field,
    rows: Rows,
}

impl BiPoly {
    pub fn zero(field: &Field) -> Self {
        BiPoly { field: field.clone(), rows: Vec::new() }
    }

    pub fn one(field: &Field) -> Self {
        BiPoly { field: field.clone(), rows: rows::one() }
    }

    pub fn constant_from(field: &Field, c: Fq) -> Self {
        Self::monomial(field, c, 0, 0)
    }

    /// `c * t^i * θ^j`.
    pub fn monomial(field: &Field, c: Fq, t_exp: u64, theta_exp: u64) -> Self {
        let rows = if c.is_zero() { Vec::new() } else { vec![(t_exp, vec![(theta_exp, c)])] };
        BiPoly { field: field.clone(), rows }
    }

    /// From `(t-exponent, θ-exponent, coefficient)` triples in any order.
    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (u64, u64, Fq)>) -> Self {
        let mut map: std::collections::BTreeMap<u64, Terms> = Default::default();
        for (i, j, c) in terms {
            map.entry(i).or_default().push((j, c));
        }
        let rows = map.into_iter().map(|(i, t)| (i, terms::normalize(field, t))).filter(|r| !r.1.is_empty()).collect();
        BiPoly { field: field.clone(), rows }
    }

    /// A polynomial in θ alone.
    pub fn from_theta(p: &UniPoly) -> Result<Self> {
        expect_var(p, Var::Theta)?;
        let rows = if p.is_zero() { Vec::new() } else { vec![(0, p.terms().to_vec())] };
        Ok(BiPoly { field: p.field().clone(), rows })
    }

    /// A polynomial in t alone.
    pub fn from_t(p: &UniPoly) -> Result<Self> {
        expect_var(p, Var::T)?;
        Ok(BiPoly { field: p.field().clone(), rows: p.terms().iter().map(|&(e, c)| (e, vec![(0, c)])).collect() })
    }

    /// `t^a - θ^b`.
    pub fn t_minus_theta(field: &Field, a: u64, b: u64) -> Self {
        let m1 = field.neg(Fq::ONE);
        if a == 0 && b == 0 {
            return Self::zero(field);
        }
        if a == 0 {
            return Self::from_terms(field, [(0, 0, Fq::ONE), (0, b, m1)]);
        }
        BiPoly { field: field.clone(), rows: vec![(0, vec![(b, m1)]), (a, vec![(0, Fq::ONE)])] }
    }

    pub(crate) fn from_rows(field: &Field, rows: Rows) -> Self {
        BiPoly { field: field.clone(), rows }
    }

    pub(crate) fn raw_rows(&self) -> &Rows {
        &self.rows
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.rows == rows::one()
    }

    /// Rows `(t-exponent, coefficient in θ)` by ascending t-exponent.
    pub fn rows(&self) -> impl Iterator<Item = (u64, UniPoly)> + '_ {
        self.rows.iter().map(move |(e, t)| (*e, UniPoly::from_raw(&self.field, Var::Theta, t.clone())))
    }

    /// Coefficient of `t^i` as a polynomial in θ.
    pub fn coeff_t(&self, i: u64) -> UniPoly {
        match self.rows.binary_search_by_key(&i, |r| r.0) {
            Ok(k) => UniPoly::from_raw(&self.field, Var::Theta, self.rows[k].1.clone()),
            Err(_) => UniPoly::zero(&self.field, Var::Theta),
        }
    }

    /// All terms as `(t-exponent, θ-exponent, coefficient)`.
    pub fn terms(&self) -> Vec<(u64, u64, Fq)> {
        self.rows.iter().flat_map(|(i, t)| t.iter().map(move |&(j, c)| (*i, j, c))).collect()
    }

    pub fn term_count(&self) -> usize {
        rows::term_count(&self.rows)
    }

    pub fn t_degree(&self) -> Option<u64> {
        self.rows.last().map(|r| r.0)
    }

    pub fn theta_degree(&self) -> Option<u64> {
        self.rows.iter().filter_map(|(_, t)| t.last().map(|x| x.0)).max()
    }

    /// The polynomial in t when no θ occurs.
    pub fn as_t_poly(&self) -> Option<UniPoly> {
        let mut out = Vec::with_capacity(self.rows.len());
        for (i, t) in &self.rows {
            if t.len() != 1 || t[0].0 != 0 {
                return None;
            }
            out.push((*i, t[0].1));
        }
        Some(UniPoly::from_raw(&self.field, Var::T, out))
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    fn with_rows(&self, rows: Rows) -> Self {
        BiPoly { field: self.field.clone(), rows }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with_rows(rows::add(&self.field, &self.rows, &other.rows)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with_rows(rows::sub(&self.field, &self.rows, &other.rows)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with_rows(rows::mul(&self.field, &self.rows, &other.rows)))
    }

    pub fn scale(&self, c: Fq) -> Self {
        self.with_rows(rows::scale(&self.field, &self.rows, c))
    }

    pub fn mul_t(&self, p: &UniPoly) -> Result<Self> {
        expect_var(p, Var::T)?;
        if p.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        Ok(self.with_rows(rows::mul_outer(&self.field, &self.rows, p.terms())))
    }

    pub fn mul_theta(&self, p: &UniPoly) -> Result<Self> {
        expect_var(p, Var::Theta)?;
        Ok(self.with_rows(rows::mul_inner(&self.field, &self.rows, p.terms())))
    }

    /// Division by a polynomial in t, as a polynomial in t over F_q[θ].
    pub fn divrem_t(&self, d: &UniPoly) -> Result<(Self, Self)> {
        expect_var(d, Var::T)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = rows::divrem_outer(&self.field, &self.rows, d.terms());
        Ok((self.with_rows(q), self.with_rows(r)))
    }

    pub fn exact_div_t(&self, d: &UniPoly) -> Result<Self> {
        let (q, r) = self.divrem_t(d)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(q)
    }

    pub fn pow(&self, n: u64) -> Self {
        self.try_pow(n).expect("exponent overflow in pow")
    }

    pub fn try_pow(&self, n: u64) -> Result<Self> {
        rows::pow(&self.field, &self.rows, n).map(|r| self.with_rows(r)).ok_or(Error::ExponentOverflow)
    }

    /// `f(t^{q^k}, θ^{q^k})`, which equals `f^{q^k}`.
    pub fn pow_q_power(&self, k: u32) -> Result<Self> {
        let m = self.field.m();
        rows::frobenius(&self.field, &self.rows, k * m).map(|r| self.with_rows(r)).ok_or(Error::ExponentOverflow)
    }

    /// The specialisation t := θ.
    pub fn eval_t_at_theta(&self) -> UniPoly {
        let mut all: Terms = Vec::new();
        for (i, t) in &self.rows {
            all.extend(t.iter().map(|&(j, c)| (i + j, c)));
        }
        UniPoly::from_raw(&self.field, Var::Theta, terms::normalize(&self.field, all))
    }

    pub fn to_text(&self) -> String {
        if self.rows.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, t) in self.rows.iter().rev() {
            for &(j, c) in t.iter().rev() {
                parts.push(monomial_text(c, &[(Var::T, *i), (Var::Theta, j)]));
            }
        }
        parts.join(" + ")
    }
}

fn expect_var(p: &UniPoly, v: Var) -> Result<()> {
    if p.var() != v {
        return Err(Error::VariableMismatch { left: p.var().to_string(), right: v.to_string() });
    }
    Ok(())
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({})", self.to_text())
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &'a BiPoly) -> BiPoly {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &'a BiPoly) -> BiPoly {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &'a BiPoly) -> BiPoly {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.with_rows(rows::neg(&self.field, &self.rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        let f = Field::prime(3).unwrap();
        let h = BiPoly::from_terms(&f, [(3, 0, Fq(2)), (1, 0, Fq(2)), (0, 3, Fq(2))]);
        assert_eq!(h.to_text(), "2*t^3 + 2*t + 2*th^3");
    }

    #[test]
    fn square_of_binomial() {
        let f = Field::prime(3).unwrap();
        let b = BiPoly::t_minus_theta(&f, 1, 3);
        let sq = b.pow(2);
        assert_eq!(sq, &b * &b);
        assert_eq!(sq.to_text(), "t^2 + t*th^3 + th^6");
    }

    #[test]
    fn divide_by_t_poly() {
        let f = Field::prime(2).unwrap();
        let b = BiPoly::t_minus_theta(&f, 2, 1);
        let d = UniPoly::from_dense(&f, Var::T, &[1, 1]);
        let prod = b.mul_t(&d).unwrap();
        assert_eq!(prod.exact_div_t(&d).unwrap(), b);
        assert_eq!(b.exact_div_t(&d).unwrap_err(), Error::InexactDivision);
    }

    #[test]
    fn specialise_t() {
        let f = Field::prime(3).unwrap();
        let b = BiPoly::t_minus_theta(&f, 1, 1);
        assert!(b.eval_t_at_theta().is_zero());
    }
}
