//! Univariate polynomials over F_q in a named variable.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::field::{Field, Fq};
use super::terms::{self, Terms};
use crate::error::{Error, Result};

/// The variables the library works with: θ, the motive variable t, and the
/// root variable u of the twist ring (θ = u^{q^R}).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    #[serde(rename = "th")]
    Theta,
    #[serde(rename = "t")]
    T,
    #[serde(rename = "u")]
    U,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::Theta => "th",
            Var::T => "t",
            Var::U => "u",
        }
    }

    pub fn parse(s: &str) -> Result<Var> {
        match s {
            "th" | "theta" => Ok(Var::Theta),
            "t" => Ok(Var::T),
            "u" => Ok(Var::U),
            _ => Err(Error::Parse(format!("unknown variable {s:?}"))),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    var: Var,
    terms: Terms,
}

impl UniPoly {
    pub fn zero(field: &Field, var: Var) -> Self {
        UniPoly { field: field.clone(), var, terms: Vec::new() }
    }

    pub fn one(field: &Field, var: Var) -> Self {
        Self::constant(field, var, Fq::ONE)
    }

    pub fn constant(field: &Field, var: Var, c: Fq) -> Self {
        Self::monomial(field, var, c, 0)
    }

    pub fn monomial(field: &Field, var: Var, c: Fq, e: u64) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(e, c)] };
        UniPoly { field: field.clone(), var, terms }
    }

    /// The variable itself.
    pub fn x(field: &Field, var: Var) -> Self {
        Self::monomial(field, var, Fq::ONE, 1)
    }

    /// From arbitrary `(exponent, coefficient)` pairs in any order; equal
    /// exponents are summed.
    pub fn from_terms(field: &Field, var: Var, terms: impl IntoIterator<Item = (u64, Fq)>) -> Self {
        let v: Terms = terms.into_iter().collect();
        UniPoly { field: field.clone(), var, terms: terms::normalize(field, v) }
    }

    /// From dense ascending residues `c_0, c_1, ...`.
    pub fn from_dense(field: &Field, var: Var, coeffs: &[u32]) -> Self {
        Self::from_terms(field, var, coeffs.iter().enumerate().map(|(i, &c)| (i as u64, field.elem(c))))
    }

    pub(crate) fn from_raw(field: &Field, var: Var, terms: Terms) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        UniPoly { field: field.clone(), var, terms }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Ascending `(exponent, coefficient)` pairs, no zeros.
    pub fn terms(&self) -> &[(u64, Fq)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == (0, Fq::ONE)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.last().map(|t| t.0)
    }

    pub fn leading_coeff(&self) -> Fq {
        self.terms.last().map(|t| t.1).unwrap_or(Fq::ZERO)
    }

    pub fn coeff(&self, e: u64) -> Fq {
        match self.terms.binary_search_by_key(&e, |t| t.0) {
            Ok(i) => self.terms[i].1,
            Err(_) => Fq::ZERO,
        }
    }

    pub fn constant_term(&self) -> Fq {
        self.coeff(0)
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == Fq::ONE
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.var != other.var {
            return Err(Error::VariableMismatch { left: self.var.to_string(), right: other.var.to_string() });
        }
        Ok(())
    }

    fn with_terms(&self, terms: Terms) -> Self {
        UniPoly { field: self.field.clone(), var: self.var, terms }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with_terms(terms::add(&self.field, &self.terms, &other.terms)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with_terms(terms::sub(&self.field, &self.terms, &other.terms)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.with_terms(terms::mul(&self.field, &self.terms, &other.terms)))
    }

    pub fn scale(&self, c: Fq) -> Self {
        self.with_terms(terms::scale(&self.field, &self.terms, c))
    }

    /// Multiplies by `x^e`.
    pub fn shift(&self, e: u64) -> Self {
        self.with_terms(self.terms.iter().map(|&(k, c)| (k + e, c)).collect())
    }

    pub fn pow(&self, n: u64) -> Self {
        self.try_pow(n).expect("exponent overflow in pow")
    }

    pub fn try_pow(&self, n: u64) -> Result<Self> {
        terms::pow(&self.field, &self.terms, n).map(|t| self.with_terms(t)).ok_or(Error::ExponentOverflow)
    }

    /// `f^(q^k)`: exponents scale by q^k; F_q coefficients are fixed.
    pub fn pow_q_power(&self, k: u32) -> Result<Self> {
        let s = (self.field.q() as u64).checked_pow(k).ok_or(Error::ExponentOverflow)?;
        self.scale_exponents(s)
    }

    pub(crate) fn scale_exponents(&self, s: u64) -> Result<Self> {
        let mut t = Vec::with_capacity(self.terms.len());
        for &(e, c) in &self.terms {
            t.push((e.checked_mul(s).ok_or(Error::ExponentOverflow)?, c));
        }
        Ok(self.with_terms(t))
    }

    /// Quotient and remainder with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.same(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = terms::divrem(&self.field, &self.terms, &divisor.terms);
        Ok((self.with_terms(q), self.with_terms(r)))
    }

    /// Quotient, failing unless the division is exact.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(q)
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divrem(divisor)?.1)
    }

    pub fn monic(&self) -> Self {
        match self.field.inv(self.leading_coeff()) {
            None => self.clone(),
            Some(inv) => self.scale(inv),
        }
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Monic lcm.
    pub fn lcm(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(self.with_terms(Vec::new()));
        }
        let g = self.gcd(other)?;
        Ok(self.exact_div(&g)?.checked_mul(other)?.monic())
    }

    pub fn eval(&self, x: Fq) -> Fq {
        let f = &self.field;
        self.terms.iter().fold(Fq::ZERO, |acc, &(e, c)| f.add(acc, f.mul(c, f.pow(x, e))))
    }

    /// Substitutes the variable by the polynomial `x` (result in `x`'s variable).
    pub fn compose(&self, x: &UniPoly) -> Result<Self> {
        if self.field != x.field {
            return Err(Error::FieldMismatch);
        }
        let mut acc = UniPoly::zero(&self.field, x.var);
        for &(e, c) in &self.terms {
            acc = &acc + &x.try_pow(e)?.scale(c);
        }
        Ok(acc)
    }

    /// Same coefficients in another variable.
    pub fn with_var(&self, var: Var) -> Self {
        UniPoly { field: self.field.clone(), var, terms: self.terms.clone() }
    }

    /// The renaming θ ↦ t.
    pub fn subst_theta_to_t(&self) -> Result<Self> {
        if self.var != Var::Theta {
            return Err(Error::VariableMismatch { left: self.var.to_string(), right: Var::Theta.to_string() });
        }
        Ok(self.with_var(Var::T))
    }

    /// Canonical text form, descending exponents, e.g. `2*t^3 + 2*t + 1`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|&(e, c)| monomial_text(c, &[(self.var, e)])).collect();
        parts.join(" + ")
    }
}

/// `c*x^a*y^b` with unit coefficients and exponents elided.
pub(crate) fn monomial_text(c: Fq, powers: &[(Var, u64)]) -> String {
    let vars: Vec<String> = powers
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|&(v, e)| if e == 1 { v.name().to_string() } else { format!("{}^{}", v.name(), e) })
        .collect();
    if vars.is_empty() {
        return c.to_string();
    }
    let body = vars.join("*");
    if c == Fq::ONE {
        body
    } else {
        format!("{}*{}", c, body)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({})", self.to_text())
    }
}

// Operator forms panic on field or variable mismatch; use the checked_*
// methods at API boundaries.
impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        self.checked_add(rhs).expect("UniPoly add")
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self.checked_sub(rhs).expect("UniPoly sub")
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        self.checked_mul(rhs).expect("UniPoly mul")
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        self.with_terms(terms::neg(&self.field, &self.terms))
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        &self - &rhs
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

/// JSON form: exponents as decimal strings, coefficients as residues,
/// highest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub var: Var,
    pub terms: Vec<(String, u32)>,
}

pub(crate) fn parse_exponent(s: &str) -> Result<u64> {
    s.parse().map_err(|_| Error::Parse(format!("bad exponent {s:?}")))
}

impl UniPoly {
    pub fn to_json(&self) -> PolyJson {
        PolyJson { var: self.var, terms: self.terms().iter().rev().map(|(e, c)| (e.to_string(), c.value())).collect() }
    }

    pub fn from_json(field: &Field, j: &PolyJson) -> Result<Self> {
        let terms = j.terms.iter().map(|(e, c)| Ok((parse_exponent(e)?, field.try_elem(*c)?))).collect::<Result<Vec<_>>>()?;
        Ok(UniPoly::from_terms(field, j.var, terms))
    }
}

/// Operations of the generic polynomial entry point.
#[derive(Clone, Debug)]
pub enum PolyOp {
    Add(UniPoly),
    Sub(UniPoly),
    Mul(UniPoly),
    DivRem(UniPoly),
    Gcd(UniPoly),
    Pow(u64),
    Eval(Fq),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyOutput {
    Poly(UniPoly),
    Pair(UniPoly, UniPoly),
    Scalar(Fq),
}

pub fn poly_arith(a: &UniPoly, op: &PolyOp) -> Result<PolyOutput> {
    Ok(match op {
        PolyOp::Add(b) => PolyOutput::Poly(a.checked_add(b)?),
        PolyOp::Sub(b) => PolyOutput::Poly(a.checked_sub(b)?),
        PolyOp::Mul(b) => PolyOutput::Poly(a.checked_mul(b)?),
        PolyOp::DivRem(b) => {
            let (q, r) = a.divrem(b)?;
            PolyOutput::Pair(q, r)
        }
        PolyOp::Gcd(b) => PolyOutput::Poly(a.gcd(b)?),
        PolyOp::Pow(n) => PolyOutput::Poly(a.try_pow(*n)?),
        PolyOp::Eval(x) => PolyOutput::Scalar(a.eval(*x)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn th(f: &Field, c: &[u32]) -> UniPoly {
        UniPoly::from_dense(f, Var::Theta, c)
    }

    #[test]
    fn square_in_char_two() {
        let f = f2();
        let a = th(&f, &[1, 1]);
        assert_eq!(&a * &a, th(&f, &[1, 0, 1]));
    }

    #[test]
    fn divrem_by_hand() {
        let f = f2();
        let (q, r) = th(&f, &[0, 0, 0, 1]).divrem(&th(&f, &[0, 1, 1])).unwrap();
        assert_eq!(q, th(&f, &[1, 1]));
        assert_eq!(r, th(&f, &[0, 1]));
    }

    #[test]
    fn gcd_is_monic() {
        let f = f2();
        let g = th(&f, &[0, 1, 1]).gcd(&th(&f, &[0, 1])).unwrap();
        assert_eq!(g, th(&f, &[0, 1]));
        let f3 = Field::prime(3).unwrap();
        let g = th(&f3, &[0, 2]).gcd(&th(&f3, &[0, 0, 2])).unwrap();
        assert_eq!(g, th(&f3, &[0, 1]));
    }

    #[test]
    fn errors() {
        let f = f2();
        let a = th(&f, &[1, 1]);
        let b = UniPoly::x(&f, Var::T);
        assert!(matches!(a.checked_add(&b), Err(Error::VariableMismatch { .. })));
        let g = Field::prime(3).unwrap();
        assert_eq!(a.checked_mul(&UniPoly::x(&g, Var::Theta)), Err(Error::FieldMismatch));
        assert_eq!(a.divrem(&UniPoly::zero(&f, Var::Theta)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn subst_renames() {
        let f = Field::prime(3).unwrap();
        let d1 = th(&f, &[0, 2, 0, 1]);
        let t = d1.subst_theta_to_t().unwrap();
        assert_eq!(t.var(), Var::T);
        assert_eq!(t.terms(), d1.terms());
        assert_eq!(t.to_text(), "t^3 + 2*t");
        assert!(t.subst_theta_to_t().is_err());
        assert_eq!(UniPoly::one(&f, Var::Theta).subst_theta_to_t().unwrap(), UniPoly::one(&f, Var::T));
    }

    #[test]
    fn zero_degree_is_sentinel() {
        let f = f2();
        assert_eq!(UniPoly::zero(&f, Var::T).degree(), None);
        assert_eq!(UniPoly::one(&f, Var::T).degree(), Some(0));
    }

    #[test]
    fn generic_entry_point() {
        let f = f2();
        let out = poly_arith(&th(&f, &[0, 0, 0, 1]), &PolyOp::DivRem(th(&f, &[0, 1, 1]))).unwrap();
        assert_eq!(out, PolyOutput::Pair(th(&f, &[1, 1]), th(&f, &[0, 1])));
        let out = poly_arith(&th(&f, &[1, 1]), &PolyOp::Eval(Fq::ONE)).unwrap();
        assert_eq!(out, PolyOutput::Scalar(Fq::ZERO));
    }
}
