//! Reduced fractions of univariate polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::field::{Field, Fq};
use super::poly::{UniPoly, Var};
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFun {
    num: UniPoly,
    den: UniPoly,
}

impl RatFun {
    pub fn make(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.field() != den.field() {
            return Err(Error::FieldMismatch);
        }
        if num.var() != den.var() {
            return Err(Error::VariableMismatch { left: num.var().to_string(), right: den.var().to_string() });
        }
        if num.is_zero() {
            return Ok(Self::zero(num.field(), num.var()));
        }
        let g = num.gcd(&den)?;
        let (num, den) = if g.is_one() { (num, den) } else { (num.exact_div(&g)?, den.exact_div(&g)?) };
        let lc = den.leading_coeff();
        let inv = den.field().inv(lc).expect("nonzero");
        Ok(RatFun { num: num.scale(inv), den: den.scale(inv) })
    }

    pub fn from_poly(p: UniPoly) -> Self {
        let den = UniPoly::one(p.field(), p.var());
        RatFun { num: p, den }
    }

    pub fn zero(field: &Field, var: Var) -> Self {
        Self::from_poly(UniPoly::zero(field, var))
    }

    pub fn one(field: &Field, var: Var) -> Self {
        Self::from_poly(UniPoly::one(field, var))
    }

    pub fn constant(field: &Field, var: Var, c: Fq) -> Self {
        Self::from_poly(UniPoly::constant(field, var, c))
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn var(&self) -> Var {
        self.num.var()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// The numerator when the denominator is 1.
    pub fn to_poly(&self) -> Option<UniPoly> {
        self.is_poly().then(|| self.num.clone())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.den == other.den {
            return Self::make(self.num.checked_add(&other.num)?, self.den.clone());
        }
        let g = self.den.gcd(&other.den)?;
        let a = other.den.exact_div(&g)?;
        let b = self.den.exact_div(&g)?;
        let num = self.num.checked_mul(&a)?.checked_add(&other.num.checked_mul(&b)?)?;
        Self::make(num, self.den.checked_mul(&a)?)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        // Cross-cancel first to keep intermediate degrees small.
        let g1 = self.num.gcd(&other.den)?;
        let g2 = other.num.gcd(&self.den)?;
        let n1 = if g1.is_zero() || g1.is_one() { self.num.clone() } else { self.num.exact_div(&g1)? };
        let d2 = if g1.is_zero() || g1.is_one() { other.den.clone() } else { other.den.exact_div(&g1)? };
        let n2 = if g2.is_zero() || g2.is_one() { other.num.clone() } else { other.num.exact_div(&g2)? };
        let d1 = if g2.is_zero() || g2.is_one() { self.den.clone() } else { self.den.exact_div(&g2)? };
        Self::make(n1.checked_mul(&n2)?, d1.checked_mul(&d2)?)
    }

    pub fn inv(&self) -> Result<Self> {
        Self::make(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    fn neg_ref(&self) -> Self {
        RatFun { num: -&self.num, den: self.den.clone() }
    }

    pub fn scale(&self, c: Fq) -> Self {
        if c.is_zero() {
            return Self::zero(self.field(), self.var());
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &UniPoly) -> Result<Self> {
        self.checked_mul(&Self::from_poly(p.clone()))
    }

    pub fn div_poly(&self, p: &UniPoly) -> Result<Self> {
        self.checked_div(&Self::from_poly(p.clone()))
    }

    /// Integer powers; negative exponents invert.
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let e = n.unsigned_abs();
        Ok(RatFun { num: base.num.try_pow(e)?, den: base.den.try_pow(e)? })
    }

    pub fn with_var(&self, var: Var) -> Self {
        RatFun { num: self.num.with_var(var), den: self.den.with_var(var) }
    }

    pub fn subst_theta_to_t(&self) -> Result<Self> {
        Ok(RatFun { num: self.num.subst_theta_to_t()?, den: self.den.subst_theta_to_t()? })
    }

    /// Value at `x`, or `None` where the denominator vanishes.
    pub fn eval(&self, x: Fq) -> Option<Fq> {
        let d = self.den.eval(x);
        self.field().inv(d).map(|di| self.field().mul(self.num.eval(x), di))
    }

    pub fn to_text(&self) -> String {
        if self.den.is_one() {
            self.num.to_text()
        } else {
            format!("({})/({})", self.num.to_text(), self.den.to_text())
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({})", self.to_text())
    }
}

impl From<UniPoly> for RatFun {
    fn from(p: UniPoly) -> Self {
        RatFun::from_poly(p)
    }
}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, rhs: &'a RatFun) -> RatFun {
        self.checked_add(rhs).expect("ratfun add")
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &'a RatFun) -> RatFun {
        self.checked_sub(rhs).expect("ratfun sub")
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &'a RatFun) -> RatFun {
        self.checked_mul(rhs).expect("ratfun mul")
    }
}

impl<'a> Div<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn div(self, rhs: &'a RatFun) -> RatFun {
        self.checked_div(rhs).expect("ratfun div")
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(f: &Field, c: &[u32]) -> UniPoly {
        UniPoly::from_dense(f, Var::Theta, c)
    }

    #[test]
    fn make_reduces() {
        let f = Field::prime(2).unwrap();
        let r = RatFun::make(th(&f, &[0, 1, 1]), th(&f, &[0, 1])).unwrap();
        assert_eq!(r.num(), &th(&f, &[1, 1]));
        assert!(r.den().is_one());
        let r = RatFun::make(th(&f, &[1]), th(&f, &[0, 1, 1])).unwrap();
        assert_eq!(r.den(), &th(&f, &[0, 1, 1]));
        let z = RatFun::make(th(&f, &[]), th(&f, &[0, 1])).unwrap();
        assert!(z.is_zero() && z.den().is_one());
        assert_eq!(RatFun::make(th(&f, &[1]), th(&f, &[])).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn monic_denominator() {
        let f = Field::prime(3).unwrap();
        let r = RatFun::make(th(&f, &[1]), th(&f, &[1, 2])).unwrap();
        assert!(r.den().is_monic());
        assert_eq!(r.num(), &th(&f, &[2]));
    }

    #[test]
    fn field_ops() {
        let f = Field::prime(3).unwrap();
        let a = RatFun::make(th(&f, &[1]), th(&f, &[0, 1])).unwrap();
        let b = RatFun::make(th(&f, &[1]), th(&f, &[1, 1])).unwrap();
        let s = &a + &b;
        // 1/θ + 1/(θ+1) = (2θ+1)/(θ²+θ)
        assert_eq!(s, RatFun::make(th(&f, &[1, 2]), th(&f, &[0, 1, 1])).unwrap());
        assert_eq!(&(&s - &b), &a);
        assert!((&a * &a.inv().unwrap()).is_one());
        assert_eq!(a.pow(-2).unwrap().to_poly().unwrap(), th(&f, &[0, 0, 1]));
    }
}
