//! Brackets, Carlitz factorials, Bernoulli–Carlitz numbers, powers of the
//! Carlitz period and the binomial polynomials Ψ_k.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::algebra::{BiPoly, Field, Fq, RatFun, UniPoly, Var};
use crate::error::{Error, Result};
use crate::series::LaurentSeries;

/// Default cap on monic polynomials visited by one power-sum enumeration.
pub const DEFAULT_BUDGET: u64 = 1 << 21;

/// Shared per-field caches. Reads are concurrent; each cache is filled
/// under its own write lock.
pub struct CarlitzContext {
    field: Field,
    d: RwLock<Vec<UniPoly>>,
    l: RwLock<Vec<UniPoly>>,
    gamma: RwLock<HashMap<u64, UniPoly>>,
    // Coefficients of z / exp_C(z) divided by Γ, i.e. BC(n)/Γ_{n+1}.
    bc: RwLock<Vec<RatFun>>,
    pub(crate) g: RwLock<Vec<BiPoly>>,
    pub(crate) h: RwLock<Vec<BiPoly>>,
    pub(crate) sums: RwLock<HashMap<(u32, u64), RatFun>>,
    pub(crate) sum_series: RwLock<HashMap<(u32, u64), LaurentSeries>>,
    /// Maximum number of monic polynomials a single enumeration may visit.
    pub budget: u64,
}

impl CarlitzContext {
    pub fn new(field: &Field) -> Self {
        let one = UniPoly::one(field, Var::Theta);
        CarlitzContext {
            field: field.clone(),
            d: RwLock::new(vec![one.clone()]),
            l: RwLock::new(vec![one]),
            gamma: RwLock::new(HashMap::new()),
            bc: RwLock::new(vec![RatFun::one(field, Var::Theta)]),
            g: RwLock::new(vec![BiPoly::one(field)]),
            h: RwLock::new(Vec::new()),
            sums: RwLock::new(HashMap::new()),
            sum_series: RwLock::new(HashMap::new()),
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(field: &Field, budget: u64) -> Self {
        CarlitzContext { budget, ..Self::new(field) }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    /// `q^k`, checked.
    pub fn q_pow(&self, k: u32) -> Result<u64> {
        self.q().checked_pow(k).ok_or(Error::ExponentOverflow)
    }

    pub fn theta(&self) -> UniPoly {
        UniPoly::x(&self.field, Var::Theta)
    }

    /// `θ^{q^k}`.
    pub fn theta_q_power(&self, k: u32) -> Result<UniPoly> {
        Ok(UniPoly::monomial(&self.field, Var::Theta, Fq::ONE, self.q_pow(k)?))
    }

    /// `[n] = θ^{q^n} - θ`.
    pub fn bracket(&self, n: u32) -> Result<UniPoly> {
        if n == 0 {
            return Err(Error::BracketZeroIndex);
        }
        Ok(&self.theta_q_power(n)? - &self.theta())
    }

    /// `D_n = [n] D_{n-1}^q`.
    pub fn d(&self, n: u32) -> Result<UniPoly> {
        extend(&self.d, n, |prev, k| Ok(&self.bracket(k)? * &prev.pow_q_power(1)?))
    }

    /// `L_n = [n] L_{n-1}`.
    pub fn l(&self, n: u32) -> Result<UniPoly> {
        extend(&self.l, n, |prev, k| Ok(&self.bracket(k)? * prev))
    }

    /// `Γ_k = ∏ D_i^{n_i}` over the base-q digits of `k - 1`.
    pub fn gamma(&self, k: u64) -> Result<UniPoly> {
        if k == 0 {
            return Err(Error::NonpositiveIndex);
        }
        if let Some(g) = self.gamma.read().unwrap().get(&k) {
            return Ok(g.clone());
        }
        let mut g = UniPoly::one(&self.field, Var::Theta);
        for (i, digit) in digits(k - 1, self.q()).into_iter().enumerate() {
            if digit > 0 {
                g = &g * &self.d(i as u32)?.try_pow(digit)?;
            }
        }
        self.gamma.write().unwrap().insert(k, g.clone());
        Ok(g)
    }

    pub fn bracket_t(&self, n: u32) -> Result<UniPoly> {
        Ok(self.bracket(n)?.with_var(Var::T))
    }

    pub fn d_t(&self, n: u32) -> Result<UniPoly> {
        Ok(self.d(n)?.with_var(Var::T))
    }

    pub fn l_t(&self, n: u32) -> Result<UniPoly> {
        Ok(self.l(n)?.with_var(Var::T))
    }

    pub fn gamma_t(&self, k: u64) -> Result<UniPoly> {
        Ok(self.gamma(k)?.with_var(Var::T))
    }

    /// `BC(n)`, from the power-series inverse of `exp_C(z)/z`.
    pub fn bernoulli_carlitz(&self, n: u64) -> Result<RatFun> {
        let c = self.bc_coeff(n)?;
        c.mul_poly(&self.gamma(n + 1)?)
    }

    /// `BC(q^n - q^i) = (-1)^{n-i} Γ_{q^n-q^i+1} / L_{n-i}^{q^i}` for `i < n`.
    pub fn bernoulli_closed_form(&self, n: u32, i: u32) -> Result<RatFun> {
        if i >= n {
            return Err(Error::InvalidArgument(format!("need i < n, got i={i}, n={n}")));
        }
        let k = self.q_pow(n)? - self.q_pow(i)?;
        let den = self.l(n - i)?.pow_q_power(i)?;
        let num = self.gamma(k + 1)?.scale(self.field.sign((n - i) as u64));
        RatFun::make(num, den)
    }

    fn bc_coeff(&self, n: u64) -> Result<RatFun> {
        if let Some(c) = self.bc.read().unwrap().get(n as usize) {
            return Ok(c.clone());
        }
        let mut cache = self.bc.write().unwrap();
        let q = self.q();
        while (cache.len() as u64) <= n {
            let k = cache.len() as u64;
            // c_k = -Σ_{i>=1} c_{k-(q^i-1)} / D_i
            let mut acc = RatFun::zero(&self.field, Var::Theta);
            let mut i = 1u32;
            loop {
                let step = q.checked_pow(i).map(|x| x - 1).unwrap_or(u64::MAX);
                if step > k {
                    break;
                }
                let prev = &cache[(k - step) as usize];
                if !prev.is_zero() {
                    acc = acc.checked_add(&prev.div_poly(&self.d(i)?)?)?;
                }
                i += 1;
            }
            cache.push(-&acc);
        }
        Ok(cache[n as usize].clone())
    }

    /// `π̃^w` for `(q-1) | w`, exact on exponents `>= low`.
    pub fn pi_power(&self, w: u64, low: i64) -> Result<LaurentSeries> {
        let q = self.q();
        if w == 0 || !w.is_multiple_of(q - 1) {
            return Err(Error::WeightNotEven { w, q_minus_1: q - 1 });
        }
        let k = w / (q - 1);
        let lead = (k * q) as i64;
        let rel = (lead - low).max(0);
        // ∏_{i>=1} (1 - θ^{1-q^i}) with factors below relative precision dropped.
        let f = &self.field;
        let mut prod = LaurentSeries::one(f, -rel);
        let mut i = 1u32;
        loop {
            let e = match q.checked_pow(i) {
                Some(x) if (x - 1) as i64 <= rel => (x - 1) as i64,
                _ => break,
            };
            let factor = LaurentSeries::from_terms(f, [(0, Fq::ONE), (-e, f.neg(Fq::ONE))], -rel);
            prod = prod.checked_mul(&factor)?;
            i += 1;
        }
        let exp = i64::try_from(w).map_err(|_| Error::ExponentOverflow)?;
        let s = prod.pow(-exp)?;
        Ok(s.shift(lead).scale(f.sign(k * q)))
    }

    /// Coefficients of `x^{q^i}`, `i = 0..=k`, in `Ψ_k(x)`.
    pub fn psi_binomial(&self, k: u32) -> Result<Vec<RatFun>> {
        let sign = self.field.sign(k as u64);
        let lk = self.l(k)?.scale(sign);
        let mut out = Vec::with_capacity(k as usize + 1);
        for i in 0..=k {
            let thi = self.theta_q_power(i)?;
            let mut num = UniPoly::one(&self.field, Var::Theta);
            for j in 1..=i {
                num = &num * &(&thi - &self.theta_q_power(k + j)?);
            }
            let den = &self.d(i)? * &lk.pow_q_power(i)?;
            out.push(RatFun::make(num, den)?);
        }
        Ok(out)
    }

    /// `Ψ_k(a)` for a polynomial argument.
    pub fn psi_eval(&self, k: u32, a: &UniPoly) -> Result<RatFun> {
        let mut acc = RatFun::zero(&self.field, a.var());
        for (i, c) in self.psi_binomial(k)?.into_iter().enumerate() {
            let c = c.with_var(a.var());
            acc = acc.checked_add(&c.mul_poly(&a.pow_q_power(i as u32)?)?)?;
        }
        Ok(acc)
    }
}

fn extend(cache: &RwLock<Vec<UniPoly>>, n: u32, step: impl Fn(&UniPoly, u32) -> Result<UniPoly>) -> Result<UniPoly> {
    if let Some(v) = cache.read().unwrap().get(n as usize) {
        return Ok(v.clone());
    }
    let mut c = cache.write().unwrap();
    while c.len() <= n as usize {
        let k = c.len() as u32;
        let next = step(&c[k as usize - 1], k)?;
        c.push(next);
    }
    Ok(c[n as usize].clone())
}

/// Base-q digits, least significant first.
pub fn digits(mut n: u64, q: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % q);
        n /= q;
    }
    out
}
