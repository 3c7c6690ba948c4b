//! The twist ring F_q[u][t] with θ = u^{q^R}.
//!
//! Coefficients of the paper's δ's live in F_q[θ^{1/q^R}]; writing
//! u = θ^{1/q^R} makes them ordinary polynomials. The Frobenius twist
//! f ↦ f^{(k)} raises every coefficient to the q^k-th power, which on F_q[u]
//! is the exponent scaling u^e ↦ u^{e q^k}.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::bipoly::BiPoly;
use super::field::{Field, Fq};
use super::poly::{monomial_text, parse_exponent, UniPoly, Var};
use super::rows::{self, Rows};
use super::terms::Terms;
use crate::error::{Error, Result};

/// JSON form: `(t-exponent, u-exponent, coefficient)` with exponents as
/// decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TwistedJson {
    pub root_depth: u32,
    pub terms: Vec<(String, String, u32)>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct TwistedPoly {
    field: Field,
    root_depth: u32,
    rows: Rows,
}

impl TwistedPoly {
    pub fn zero(field: &Field, root_depth: u32) -> Self {
        TwistedPoly { field: field.clone(), root_depth, rows: Vec::new() }
    }

    pub fn one(field: &Field, root_depth: u32) -> Self {
        TwistedPoly { field: field.clone(), root_depth, rows: rows::one() }
    }

    /// From `(t-exponent, u-exponent, coefficient)` triples.
    pub fn from_terms(field: &Field, root_depth: u32, terms: impl IntoIterator<Item = (u64, u64, Fq)>) -> Self {
        let b = BiPoly::from_terms(field, terms);
        TwistedPoly { field: field.clone(), root_depth, rows: b.raw_rows().clone() }
    }

    /// Embeds F_q[θ][t]: θ^e becomes u^{e q^R}.
    pub fn from_bipoly(b: &BiPoly, root_depth: u32) -> Result<Self> {
        let s = q_pow(b.field(), root_depth)?;
        let rows = rows::scale_inner_exponents(b.raw_rows(), s).ok_or(Error::ExponentOverflow)?;
        Ok(TwistedPoly { field: b.field().clone(), root_depth, rows })
    }

    pub fn from_t(p: &UniPoly, root_depth: u32) -> Result<Self> {
        Self::from_bipoly(&BiPoly::from_t(p)?, root_depth)
    }

    /// `t - θ^{q^k}` for `k >= -R`; negative `k` are q-power roots of θ.
    pub fn t_minus_theta_q_power(field: &Field, root_depth: u32, k: i64) -> Result<Self> {
        let e = k + root_depth as i64;
        if e < 0 {
            return Err(Error::InvalidArgument(format!("θ^(q^{k}) needs root depth at least {}", -k)));
        }
        let ue = q_pow(field, e as u32)?;
        Ok(TwistedPoly { field: field.clone(), root_depth, rows: BiPoly::t_minus_theta(field, 1, ue).raw_rows().clone() })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn root_depth(&self) -> u32 {
        self.root_depth
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// All terms as `(t-exponent, u-exponent, coefficient)`.
    pub fn terms(&self) -> Vec<(u64, u64, Fq)> {
        self.rows.iter().flat_map(|(i, t)| t.iter().map(move |&(j, c)| (*i, j, c))).collect()
    }

    pub fn to_json(&self) -> TwistedJson {
        TwistedJson {
            root_depth: self.root_depth,
            terms: self.terms().into_iter().rev().map(|(i, j, c)| (i.to_string(), j.to_string(), c.value())).collect(),
        }
    }

    pub fn from_json(field: &Field, j: &TwistedJson) -> Result<Self> {
        let terms = j
            .terms
            .iter()
            .map(|(i, e, c)| Ok((parse_exponent(i)?, parse_exponent(e)?, field.try_elem(*c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_terms(field, j.root_depth, terms))
    }

    pub fn term_count(&self) -> usize {
        rows::term_count(&self.rows)
    }

    /// Back to F_q[θ][t] when every u-exponent is a multiple of q^R.
    pub fn to_bipoly(&self) -> Option<BiPoly> {
        let s = q_pow(&self.field, self.root_depth).ok()?;
        let mut out: Rows = Vec::with_capacity(self.rows.len());
        for (i, t) in &self.rows {
            let mut row: Terms = Vec::with_capacity(t.len());
            for &(e, c) in t {
                if e % s != 0 {
                    return None;
                }
                row.push((e / s, c));
            }
            out.push((*i, row));
        }
        Some(BiPoly::from_rows(&self.field, out))
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.root_depth != other.root_depth {
            return Err(Error::RootDepthMismatch(self.root_depth, other.root_depth));
        }
        Ok(())
    }

    fn with_rows(&self, rows: Rows) -> Self {
        TwistedPoly { field: self.field.clone(), root_depth: self.root_depth, rows }
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

    pub fn neg(&self) -> Self {
        self.with_rows(rows::neg(&self.field, &self.rows))
    }

    pub fn scale(&self, c: Fq) -> Self {
        self.with_rows(rows::scale(&self.field, &self.rows, c))
    }

    /// Multiplies by an element of F_q[t].
    pub fn mul_t(&self, p: &UniPoly) -> Result<Self> {
        if p.var() != Var::T {
            return Err(Error::VariableMismatch { left: p.var().to_string(), right: "t".into() });
        }
        if p.is_zero() {
            return Ok(self.with_rows(Vec::new()));
        }
        Ok(self.with_rows(rows::mul_outer(&self.field, &self.rows, p.terms())))
    }

    pub fn try_pow(&self, n: u64) -> Result<Self> {
        rows::pow(&self.field, &self.rows, n).map(|r| self.with_rows(r)).ok_or(Error::ExponentOverflow)
    }

    /// `f^{(k)}`: u-exponents scale by q^k.
    pub fn twist_up(&self, k: u32) -> Result<Self> {
        let s = q_pow(&self.field, k)?;
        Ok(self.with_rows(rows::scale_inner_exponents(&self.rows, s).ok_or(Error::ExponentOverflow)?))
    }

    /// `f^{(-1)}`: u-exponents divided by q.
    pub fn twist_down(&self) -> Result<Self> {
        let q = self.field.q() as u64;
        let mut out: Rows = Vec::with_capacity(self.rows.len());
        for (i, t) in &self.rows {
            let mut row: Terms = Vec::with_capacity(t.len());
            for &(e, c) in t {
                if e % q != 0 {
                    return Err(Error::NotTwistDivisible(e));
                }
                row.push((e / q, c));
            }
            out.push((*i, row));
        }
        Ok(self.with_rows(out))
    }

    /// `f^{(-k)}`.
    pub fn twist_down_by(&self, k: u32) -> Result<Self> {
        let mut f = self.clone();
        for _ in 0..k {
            f = f.twist_down()?;
        }
        Ok(f)
    }

    pub fn to_text(&self) -> String {
        if self.rows.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, t) in self.rows.iter().rev() {
            for &(j, c) in t.iter().rev() {
                parts.push(monomial_text(c, &[(Var::T, *i), (Var::U, j)]));
            }
        }
        parts.join(" + ")
    }
}

fn q_pow(f: &Field, k: u32) -> Result<u64> {
    (f.q() as u64).checked_pow(k).ok_or(Error::ExponentOverflow)
}

impl fmt::Display for TwistedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for TwistedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwistedPoly[R={}]({})", self.root_depth, self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twist_of_linear_factor() {
        let f = Field::prime(3).unwrap();
        let a = TwistedPoly::t_minus_theta_q_power(&f, 2, 0).unwrap();
        let b = TwistedPoly::t_minus_theta_q_power(&f, 2, 1).unwrap();
        assert_eq!(a.twist_up(1).unwrap(), b);
        assert_eq!(b.twist_down().unwrap(), a);
    }

    #[test]
    fn twist_down_examples() {
        let f = Field::prime(2).unwrap();
        let u = TwistedPoly::from_terms(&f, 1, [(0, 1, Fq::ONE)]);
        assert_eq!(u.twist_down().unwrap_err(), Error::NotTwistDivisible(1));
        let g = TwistedPoly::from_terms(&f, 1, [(1, 4, Fq::ONE), (0, 0, Fq::ONE)]);
        assert_eq!(g.twist_down().unwrap(), TwistedPoly::from_terms(&f, 1, [(1, 2, Fq::ONE), (0, 0, Fq::ONE)]));
        let c = TwistedPoly::one(&f, 1);
        assert_eq!(c.twist_up(3).unwrap(), c);
    }

    #[test]
    fn embedding_round_trip() {
        let f = Field::prime(3).unwrap();
        let b = BiPoly::t_minus_theta(&f, 2, 5);
        let tw = TwistedPoly::from_bipoly(&b, 2).unwrap();
        assert_eq!(tw.terms().iter().map(|x| x.1).max(), Some(45));
        assert_eq!(tw.to_bipoly().unwrap(), b);
    }
}
