//! Anderson–Thakur polynomials H_n.
//!
//! Three independent routes: the recurrence in `n` (the default), the sum over
//! q-power weighted partitions filtered by Lucas's theorem, and the closed
//! forms for indices just below a power of q.

use serde::Serialize;

use crate::algebra::{BiPoly, Fq, UniPoly, Var};
use crate::carlitz::{digits, CarlitzContext};
use crate::error::{Error, Result};

/// `H_n` together with `Γ_{n+1}` at θ = t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtPolynomial {
    pub n: u64,
    pub value: BiPoly,
    pub gamma_at_t: UniPoly,
}

/// `G_i = ∏_{j=1}^{i} (t^{q^i} - θ^{q^j})`, `G_0 = 1`.
pub fn g_poly(ctx: &CarlitzContext, i: u32) -> Result<BiPoly> {
    if let Some(g) = ctx.g.read().unwrap().get(i as usize) {
        return Ok(g.clone());
    }
    let mut cache = ctx.g.write().unwrap();
    while cache.len() <= i as usize {
        let k = cache.len() as u32;
        let tk = ctx.q_pow(k)?;
        let mut g = BiPoly::one(ctx.field());
        for j in 1..=k {
            g = &g * &BiPoly::t_minus_theta(ctx.field(), tk, ctx.q_pow(j)?);
        }
        cache.push(g);
    }
    Ok(cache[i as usize].clone())
}

/// `H_n` by the recurrence
/// `H_n / Γ_{n+1}(t) = Σ_i G_i/D_i(t) · H_{n-q^i} / Γ_{n-q^i+1}(t)`.
///
/// Each multiplier `Γ_{n+1}(t) / (D_i(t) Γ_{n-q^i+1}(t))` is a polynomial in
/// t, so the whole computation stays in F_q[θ][t]; a remainder in that
/// division is reported as `DenominatorNotCleared`.
pub fn at_poly(ctx: &CarlitzContext, n: u64) -> Result<AtPolynomial> {
    let value = h(ctx, n)?;
    Ok(AtPolynomial { n, value, gamma_at_t: ctx.gamma_t(n + 1)? })
}

/// The bare polynomial `H_n`, memoized.
pub fn h(ctx: &CarlitzContext, n: u64) -> Result<BiPoly> {
    if let Some(v) = ctx.h.read().unwrap().get(n as usize) {
        return Ok(v.clone());
    }
    let q = ctx.q();
    loop {
        let m = ctx.h.read().unwrap().len() as u64;
        if m > n {
            break;
        }
        let next = if m < q {
            BiPoly::one(ctx.field())
        } else {
            let gm = ctx.gamma_t(m + 1)?;
            let mut acc = BiPoly::zero(ctx.field());
            let mut i = 0u32;
            while let Some(qi) = q.checked_pow(i).filter(|&x| x <= m) {
                let den = &ctx.d_t(i)? * &ctx.gamma_t(m - qi + 1)?;
                let (rho, rem) = gm.divrem(&den)?;
                if !rem.is_zero() {
                    return Err(Error::DenominatorNotCleared(m));
                }
                let prev = ctx.h.read().unwrap()[(m - qi) as usize].clone();
                let term = g_poly(ctx, i)?.checked_mul(&prev)?.mul_t(&rho)?;
                acc = acc.checked_add(&term)?;
                i += 1;
            }
            acc
        };
        let mut w = ctx.h.write().unwrap();
        if w.len() as u64 == m {
            w.push(next);
        }
    }
    Ok(ctx.h.read().unwrap()[n as usize].clone())
}

/// Digit vectors `a` with `Σ a_i q^i = n`, in lexicographic order of
/// `(a_0, a_1, ...)`. Stops with `BudgetExceeded` after `budget` vectors.
pub fn weighted_partitions(q: u64, n: u64, budget: u64) -> Result<Vec<Vec<u64>>> {
    let mut powers = vec![1u64];
    while let Some(x) = powers.last().unwrap().checked_mul(q).filter(|&x| x <= n) {
        powers.push(x);
    }
    let mut out = Vec::new();
    let mut cur = vec![0u64; powers.len()];
    fn rec(i: usize, rest: u64, powers: &[u64], cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>, budget: u64) -> Result<()> {
        if i + 1 == powers.len() {
            if rest.is_multiple_of(powers[i]) {
                if out.len() as u64 >= budget {
                    return Err(Error::BudgetExceeded(format!("more than {budget} partitions")));
                }
                cur[i] = rest / powers[i];
                out.push(cur.clone());
            }
            return Ok(());
        }
        for a in 0..=rest / powers[i] {
            cur[i] = a;
            rec(i + 1, rest - a * powers[i], powers, cur, out, budget)?;
        }
        cur[i] = 0;
        Ok(())
    }
    rec(0, n, &powers, &mut cur, &mut out, budget)?;
    Ok(out)
}

/// `H_n` from the partition expansion
/// `H_n / Γ_{n+1}(t) = Σ_a C_a ∏ (G_i / D_i(t))^{a_i}`.
pub fn at_poly_oracle(ctx: &CarlitzContext, n: u64, budget: u64) -> Result<AtPolynomial> {
    let f = ctx.field();
    let p = f.p() as u64;
    let parts = weighted_partitions(ctx.q(), n, budget)?;
    let survivors: Vec<(Vec<u64>, u32)> = parts
        .into_iter()
        .filter_map(|a| {
            let c = lucas_multinomial(p, &a);
            (c != 0).then_some((a, c))
        })
        .collect();
    let len = survivors.iter().map(|(a, _)| a.len()).max().unwrap_or(0);
    let top: Vec<u64> = (0..len).map(|i| survivors.iter().map(|(a, _)| a.get(i).copied().unwrap_or(0)).max().unwrap()).collect();
    let mut num = BiPoly::zero(f);
    for (a, c) in &survivors {
        let mut term = BiPoly::constant_from(f, f.elem(*c));
        let mut cofactor = UniPoly::one(f, Var::T);
        for (i, &ai) in a.iter().enumerate() {
            if ai > 0 {
                term = term.checked_mul(&g_poly(ctx, i as u32)?.try_pow(ai)?)?;
            }
            if top[i] > ai && i > 0 {
                cofactor = &cofactor * &ctx.d_t(i as u32)?.try_pow(top[i] - ai)?;
            }
        }
        num = num.checked_add(&term.mul_t(&cofactor)?)?;
    }
    let mut common = UniPoly::one(f, Var::T);
    for (i, &ti) in top.iter().enumerate().skip(1) {
        common = &common * &ctx.d_t(i as u32)?.try_pow(ti)?;
    }
    let gamma = ctx.gamma_t(n + 1)?;
    let value = num.mul_t(&gamma)?.exact_div_t(&common).map_err(|_| Error::DenominatorNotCleared(n))?;
    Ok(AtPolynomial { n, value, gamma_at_t: gamma })
}

/// The multinomial coefficient `(Σ a_i)! / ∏ a_i!` modulo `p`, via Lucas:
/// zero exactly when adding the `a_i` in base p carries.
pub fn lucas_multinomial(p: u64, a: &[u64]) -> u32 {
    let mut rows: Vec<Vec<u64>> = a.iter().map(|&x| digits(x, p)).collect();
    let width = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    for r in &mut rows {
        r.resize(width, 0);
    }
    let fact = |k: u64| (1..=k).fold(1u64, |acc, x| acc * x % p);
    let inv = |x: u64| {
        let mut r = 1u64;
        let (mut b, mut e) = (x % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut out = 1u64;
    for j in 0..width {
        let col: u64 = rows.iter().map(|r| r[j]).sum();
        if col >= p {
            return 0;
        }
        let mut c = fact(col);
        for r in &rows {
            c = c * inv(fact(r[j])) % p;
        }
        out = out * c % p;
    }
    out as u32
}

/// `(ã, ã̃)` with `a_i = q·ã̃_i + ã_i` and `0 <= ã_i < q`.
pub fn reduce_vector(q: u64, a: &[u64]) -> (Vec<u64>, Vec<u64>) {
    a.iter().map(|&x| (x % q, x / q)).unzip()
}

/// Index `q^n - Σ N_i q^i - 1` of the closed form with digits `N`.
pub fn closed_form_index(ctx: &CarlitzContext, n: u32, digits_n: &[u64]) -> Result<u64> {
    let mut s = 0u64;
    for (i, &d) in digits_n.iter().enumerate() {
        s = s.checked_add(d.checked_mul(ctx.q_pow(i as u32)?).ok_or(Error::ExponentOverflow)?).ok_or(Error::ExponentOverflow)?;
    }
    let top = ctx.q_pow(n)?;
    if s >= top {
        return Err(Error::InvalidArgument("digit vector exceeds q^n".into()));
    }
    Ok(top - s - 1)
}

/// Closed form for `H_{q^n - Σ N_i q^i - 1}` when `Σ N_i <= q-1`:
///
/// `H/Γ(t) = (-1)^{Σ_{i<=n-2} (n-1-i) N_i q^i} / ∏_{i<=n-2} L_{n-1-i}(t)^{N_i q^i}
///           · ∏_{i=1}^{n-1} (t - θ^{q^i})^{Σ_{j<=n-1-i} N_j q^j}`.
pub fn at_closed_form(ctx: &CarlitzContext, n: u32, digits_n: &[u64]) -> Result<AtPolynomial> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if digits_n.len() > n as usize {
        return Err(Error::InvalidArgument(format!("expected at most {n} digits")));
    }
    let mut nd = digits_n.to_vec();
    nd.resize(n as usize, 0);
    let q = ctx.q();
    let sum: u64 = nd.iter().sum();
    if sum > q - 1 {
        return Err(Error::DigitSumTooLarge { sum, max: q - 1 });
    }
    let idx = closed_form_index(ctx, n, &nd)?;
    let f = ctx.field();
    let nn = n as usize;
    let mut sign_exp = 0u64;
    let mut den = UniPoly::one(f, Var::T);
    for (i, &ni) in nd.iter().enumerate().take(nn.saturating_sub(1)) {
        let qi = ctx.q_pow(i as u32)?;
        sign_exp += ((nn - 1 - i) as u64) * ni * qi;
        if ni > 0 {
            den = &den * &ctx.l_t((nn - 1 - i) as u32)?.try_pow(ni * qi)?;
        }
    }
    let mut num = BiPoly::constant_from(f, f.sign(sign_exp));
    for i in 1..nn {
        let e: u64 = (0..nn - i).map(|j| nd[j] * ctx.q().pow(j as u32)).sum();
        if e > 0 {
            num = num.checked_mul(&BiPoly::t_minus_theta(f, 1, ctx.q_pow(i as u32)?).try_pow(e)?)?;
        }
    }
    let gamma = ctx.gamma_t(idx + 1)?;
    let value = num.mul_t(&gamma)?.exact_div_t(&den).map_err(|_| Error::DenominatorNotCleared(idx))?;
    Ok(AtPolynomial { n: idx, value, gamma_at_t: gamma })
}

/// `H_{q^3-q^2+q-2} = -[2](t)^{q-2} ((t-θ^q)^{q^2-q+1} + [1](t)^{q^2-1} (t-θ^q))`.
pub fn at_special_q3(ctx: &CarlitzContext) -> Result<AtPolynomial> {
    let q = ctx.q();
    if q == 2 {
        return Err(Error::QTooSmall);
    }
    let f = ctx.field();
    let lin = BiPoly::t_minus_theta(f, 1, q);
    let inner = lin.try_pow(q * q - q + 1)?.checked_add(&lin.mul_t(&ctx.bracket_t(1)?.try_pow(q * q - 1)?)?)?;
    let value = inner.mul_t(&ctx.bracket_t(2)?.try_pow(q - 2)?)?.scale(f.neg(Fq::ONE));
    let n = q * q * q - q * q + q - 2;
    Ok(AtPolynomial { n, value, gamma_at_t: ctx.gamma_t(n + 1)? })
}

/// Serializable summary of an [`AtPolynomial`].
#[derive(Clone, Debug, Serialize)]
pub struct AtReport {
    pub n: String,
    pub text: String,
    pub terms: Vec<(String, String, u32)>,
    pub gamma_at_t: String,
}

impl AtPolynomial {
    pub fn report(&self) -> AtReport {
        AtReport {
            n: self.n.to_string(),
            text: self.value.to_text(),
            terms: self.value.terms().into_iter().rev().map(|(i, j, c)| (i.to_string(), j.to_string(), c.value())).collect(),
            gamma_at_t: self.gamma_at_t.to_text(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn ctx(p: u64) -> CarlitzContext {
        CarlitzContext::new(&Field::prime(p).unwrap())
    }

    #[test]
    fn small_g() {
        let c = ctx(3);
        assert!(g_poly(&c, 0).unwrap().is_one());
        assert_eq!(g_poly(&c, 1).unwrap().to_text(), "t^3 + 2*th^3");
        assert_eq!(g_poly(&c, 2).unwrap().t_degree(), Some(18));
    }

    #[test]
    fn h_by_hand() {
        let c = ctx(3);
        assert!(h(&c, 2).unwrap().is_one());
        assert_eq!(h(&c, 3).unwrap().to_text(), "2*t^3 + 2*t + 2*th^3");
        assert_eq!(h(&c, 5).unwrap().to_text(), "t^3 + 2*t");
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(lucas_multinomial(2, &[1, 1]), 0);
        assert_eq!(lucas_multinomial(3, &[1, 1]), 2);
        assert_eq!(lucas_multinomial(2, &[2, 1]), 1);
        assert_eq!(lucas_multinomial(5, &[]), 1);
    }

    #[test]
    fn reduction_map() {
        assert_eq!(reduce_vector(3, &[4, 0]), (vec![1, 0], vec![1, 0]));
        assert_eq!(reduce_vector(3, &[2, 1]), (vec![2, 1], vec![0, 0]));
    }

    #[test]
    fn oracle_small() {
        let c = ctx(3);
        for n in 0..=12 {
            assert_eq!(at_poly_oracle(&c, n, 10_000).unwrap().value, h(&c, n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn closed_form_small() {
        let c = ctx(3);
        assert!(at_closed_form(&c, 1, &[2]).unwrap().value.is_one());
        let h5 = at_closed_form(&c, 2, &[0, 1]).unwrap();
        assert_eq!(h5.n, 5);
        assert_eq!(h5.value, h(&c, 5).unwrap());
        assert_eq!(at_closed_form(&c, 2, &[2, 1]).unwrap_err(), Error::DigitSumTooLarge { sum: 3, max: 2 });
        assert_eq!(at_special_q3(&ctx(2)).unwrap_err(), Error::QTooSmall);
    }
}
