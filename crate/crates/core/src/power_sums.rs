//! Power sums over monic polynomials and truncated multizeta values.

use crate::algebra::{Field, Fq, RatFun, UniPoly, Var};
use crate::carlitz::CarlitzContext;
use crate::error::{Error, Result};
use crate::report::{Detail, VerificationReport, MIN_TERMS};
use crate::series::LaurentSeries;

/// Largest degree enumerated by default for a given q.
pub fn max_degree(q: u64) -> u32 {
    match q {
        2 => 20,
        3 => 10,
        4 | 5 => 6,
        _ => 3,
    }
}

fn check_budget(ctx: &CarlitzContext, d: u32) -> Result<u64> {
    let q = ctx.q();
    let count = q.checked_pow(d);
    match count {
        Some(c) if d <= max_degree(q) && c <= ctx.budget => Ok(c),
        _ => Err(Error::BudgetExceeded(format!("{q}^{d} monic polynomials of degree {d} (budget {})", ctx.budget))),
    }
}

/// The monic polynomials of degree `d`, lexicographic in the lower coefficients.
pub fn monics(field: &Field, d: u32) -> impl Iterator<Item = UniPoly> + '_ {
    let q = field.q() as u64;
    (0..q.pow(d)).map(move |mut idx| {
        let mut terms = Vec::with_capacity(d as usize + 1);
        for i in 0..d as u64 {
            terms.push((i, field.elem((idx % q) as u32)));
            idx /= q;
        }
        terms.push((d as u64, Fq::ONE));
        UniPoly::from_terms(field, Var::Theta, terms)
    })
}

/// `β(d, s) = d s + (q-1) d (d+1) / 2`, a lower bound for the valuation of
/// `S_d(s)` at infinity: expanding `a^{-s}` about `θ^{-ds}`, a monomial in
/// the lower coefficients of `a` survives the sum over F_q only when every
/// coefficient occurs to a positive multiple of q-1.
pub fn valuation_bound(q: u64, d: u32, s: u64) -> i64 {
    let d = d as i64;
    d * s as i64 + (q as i64 - 1) * d * (d + 1) / 2
}

/// `S_d(s) = Σ_{a monic, deg a = d} a^{-s}`, exactly.
pub fn power_sum_exact(ctx: &CarlitzContext, d: u32, s: u64) -> Result<RatFun> {
    if let Some(v) = ctx.sums.read().unwrap().get(&(d, s)) {
        return Ok(v.clone());
    }
    check_budget(ctx, d)?;
    let f = ctx.field();
    let mut acc = RatFun::zero(f, Var::Theta);
    for a in monics(f, d) {
        acc = acc.checked_add(&RatFun::make(UniPoly::one(f, Var::Theta), a.try_pow(s)?)?)?;
    }
    ctx.sums.write().unwrap().insert((d, s), acc.clone());
    Ok(acc)
}

/// `S_d(s_1, ..., s_r) = S_d(s_1) Σ_{d > d_2} S_{d_2}(s_2, ..., s_r)`, exactly.
pub fn power_sum_tuple_exact(ctx: &CarlitzContext, d: u32, tuple: &[u64]) -> Result<RatFun> {
    let (&s1, rest) = tuple.split_first().ok_or_else(|| Error::InvalidArgument("empty tuple".into()))?;
    let head = power_sum_exact(ctx, d, s1)?;
    if rest.is_empty() {
        return Ok(head);
    }
    let mut inner = RatFun::zero(ctx.field(), Var::Theta);
    for d2 in 0..d {
        inner = inner.checked_add(&power_sum_tuple_exact(ctx, d2, rest)?)?;
    }
    head.checked_mul(&inner)
}

/// `S_d(s)` as a series exact on exponents `>= low`.
pub fn power_sum_series(ctx: &CarlitzContext, d: u32, s: u64, low: i64) -> Result<LaurentSeries> {
    if let Some(v) = ctx.sum_series.read().unwrap().get(&(d, s)) {
        if v.low() <= low {
            return Ok(v.truncate(low));
        }
    }
    let f = ctx.field();
    let out = if d == 0 {
        LaurentSeries::one(f, low)
    } else if -valuation_bound(ctx.q(), d, s) < low {
        LaurentSeries::zero(f, low)
    } else if let Some(exact) = ctx.sums.read().unwrap().get(&(d, s)).cloned() {
        LaurentSeries::from_ratfun(&exact, low)?
    } else {
        check_budget(ctx, d)?;
        let one = UniPoly::one(f, Var::Theta);
        let mut acc = LaurentSeries::zero(f, low);
        for a in monics(f, d) {
            acc = acc.checked_add(&LaurentSeries::quotient(&one, &a.try_pow(s)?, low)?)?;
        }
        acc
    };
    ctx.sum_series.write().unwrap().insert((d, s), out.clone());
    Ok(out)
}

/// `ζ(s_1, ..., s_r)` exact on exponents `>= low`.
///
/// Sums `T_i(d) = S_d(s_i) Σ_{d' < d} T_{i+1}(d')` over the degrees whose
/// terms can reach `low`; every omitted chain has valuation beyond the marker
/// by the bound in [`valuation_bound`].
pub fn multizeta_to(ctx: &CarlitzContext, tuple: &[u64], low: i64) -> Result<LaurentSeries> {
    let r = tuple.len();
    if r == 0 || tuple.contains(&0) {
        return Err(Error::InvalidArgument("tuple entries must be positive".into()));
    }
    let q = ctx.q();
    let f = ctx.field();
    let beta_min: Vec<i64> = (0..r).map(|i| valuation_bound(q, (r - 1 - i) as u32, tuple[i])).collect();
    // tail[i] = Σ_{j >= i} β(r-1-j, s_j): the least valuation of positions i..r.
    let mut tail = vec![0i64; r + 1];
    for i in (0..r).rev() {
        tail[i] = tail[i + 1] + beta_min[i];
    }
    let mut need = vec![low; r];
    for i in 1..r {
        need[i] = need[i - 1] + beta_min[i - 1];
    }
    // Degrees that matter at each position.
    let top_deg: Vec<u32> = (0..r)
        .map(|i| {
            let mut d = (r - 1 - i) as u32;
            while valuation_bound(q, d + 1, tuple[i]) + tail[i + 1] <= -need[i] {
                d += 1;
            }
            d
        })
        .collect();
    // prefix[d] = Σ_{d' < d} T_{i+1}(d'), starting from the last position.
    let mut prefix: Vec<LaurentSeries> = Vec::new();
    for i in (0..r).rev() {
        let lo_deg = (r - 1 - i) as u32;
        let hi_deg = if i == 0 { top_deg[0] } else { top_deg[i].max(top_deg[i - 1].saturating_sub(1)) };
        let mut terms: Vec<LaurentSeries> = Vec::new();
        for d in 0..=hi_deg {
            if d < lo_deg || d > top_deg[i] {
                terms.push(LaurentSeries::zero(f, need[i]));
                continue;
            }
            let s = power_sum_series(ctx, d, tuple[i], need[i] + tail[i + 1])?;
            let t = if i + 1 == r {
                s
            } else {
                let inner = prefix.get(d as usize).cloned().unwrap_or_else(|| prefix.last().unwrap().clone());
                s.checked_mul(&inner)?
            };
            terms.push(t.truncate(need[i]));
        }
        let mut next = Vec::with_capacity(terms.len() + 1);
        let mut acc = LaurentSeries::zero(f, need[i]);
        next.push(acc.clone());
        for t in &terms {
            acc = acc.checked_add(t)?;
            next.push(acc.clone());
        }
        prefix = next;
    }
    Ok(prefix.last().unwrap().truncate(low))
}

/// The exponent `-Σ β(r-i, s_i)`, an upper bound for the leading exponent.
pub fn leading_bound(q: u64, tuple: &[u64]) -> i64 {
    let r = tuple.len();
    -(0..r).map(|i| valuation_bound(q, (r - 1 - i) as u32, tuple[i])).sum::<i64>()
}

/// `ζ(s_1, ..., s_r)` with `terms` exact exponents from its leading term down.
pub fn multizeta(ctx: &CarlitzContext, tuple: &[u64], terms: u64) -> Result<LaurentSeries> {
    let span = terms.max(1) as i64;
    let mut lead = leading_bound(ctx.q(), tuple);
    loop {
        let z = multizeta_to(ctx, tuple, lead - span + 1)?;
        match z.leading_exponent() {
            Some(e) if e < lead => lead = e,
            Some(_) => return Ok(z),
            // Cancellation pushed the leading term below the window; the
            // budget gate ends this if the value is out of reach.
            None => lead -= span,
        }
    }
}

/// `ζ(k)` with `terms` exact exponents.
pub fn zeta_value(ctx: &CarlitzContext, k: u64, terms: u64) -> Result<LaurentSeries> {
    multizeta(ctx, &[k], terms)
}

/// Degree in θ of a nonzero rational function.
pub fn ratfun_degree(r: &RatFun) -> i64 {
    r.num().degree().unwrap_or(0) as i64 - r.den().degree().unwrap_or(0) as i64
}

/// `c · ζ(w)` exact on exponents `>= low`.
pub fn scaled_zeta(ctx: &CarlitzContext, c: &RatFun, w: u64, low: i64) -> Result<LaurentSeries> {
    multizeta_to(ctx, &[w], low - ratfun_degree(c))?.mul_ratfun(c)
}

/// `c · π̃^w` exact on exponents `>= low`.
pub fn scaled_pi(ctx: &CarlitzContext, c: &RatFun, w: u64, low: i64) -> Result<LaurentSeries> {
    ctx.pi_power(w, low - ratfun_degree(c))?.mul_ratfun(c)
}

/// Compares `ζ(tuple)` with `candidate · ζ(w)`.
pub fn ratio_check(ctx: &CarlitzContext, tuple: &[u64], candidate: &RatFun, terms: u64) -> Result<VerificationReport> {
    if candidate.is_zero() {
        return Err(Error::InvalidArgument("candidate ratio is zero".into()));
    }
    let w: u64 = tuple.iter().sum();
    let lhs = multizeta(ctx, tuple, terms)?;
    let rhs = scaled_zeta(ctx, candidate, w, lhs.low())?;
    let a = lhs.agree(&rhs)?;
    let mut rep = VerificationReport::new("zeta-like", ctx.field().q()).param("tuple", join(tuple)).param("candidate", candidate);
    rep.push(Detail::series("ratio", &a, MIN_TERMS));
    Ok(rep)
}

/// Compares `ζ(tuple)` with `candidate · π̃^w`.
pub fn eulerian_check(ctx: &CarlitzContext, tuple: &[u64], candidate: &RatFun, terms: u64) -> Result<VerificationReport> {
    let w: u64 = tuple.iter().sum();
    let q = ctx.q();
    if !w.is_multiple_of(q - 1) {
        return Err(Error::WeightNotEven { w, q_minus_1: q - 1 });
    }
    if candidate.is_zero() {
        return Err(Error::InvalidArgument("candidate ratio is zero".into()));
    }
    let lhs = multizeta(ctx, tuple, terms)?;
    let rhs = scaled_pi(ctx, candidate, w, lhs.low())?;
    let a = lhs.agree(&rhs)?;
    let mut rep = VerificationReport::new("eulerian", ctx.field().q()).param("tuple", join(tuple)).param("candidate", candidate);
    rep.push(Detail::series("eulerian", &a, MIN_TERMS));
    Ok(rep)
}

pub(crate) fn join(t: &[u64]) -> String {
    t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64) -> CarlitzContext {
        CarlitzContext::new(&Field::prime(p).unwrap())
    }

    #[test]
    fn small_power_sums() {
        let c = ctx(2);
        assert!(power_sum_exact(&c, 0, 5).unwrap().is_one());
        let b1 = c.bracket(1).unwrap();
        let one = UniPoly::one(c.field(), Var::Theta);
        assert_eq!(power_sum_exact(&c, 1, 1).unwrap(), RatFun::make(one.clone(), b1.clone()).unwrap());
        assert_eq!(power_sum_exact(&c, 1, 2).unwrap(), RatFun::make(one.clone(), b1.pow(2)).unwrap());
        assert_eq!(power_sum_tuple_exact(&c, 1, &[2, 1]).unwrap(), RatFun::make(one, b1.pow(2)).unwrap());
        assert!(power_sum_tuple_exact(&c, 0, &[1, 1]).unwrap().is_zero());
    }

    #[test]
    fn bound_is_sound() {
        for p in [2, 3] {
            let c = ctx(p);
            for d in 1..=3 {
                for s in 1..=7 {
                    let e = power_sum_exact(&c, d, s).unwrap();
                    let v = -ratfun_degree(&e);
                    assert!(v >= valuation_bound(p, d, s), "q={p} d={d} s={s}");
                }
            }
        }
    }

    #[test]
    fn q_power_sums() {
        let c = ctx(3);
        for d in 0..=3 {
            for j in 0..=2 {
                let s = 3u64.pow(j);
                // 1/l_d^{q^j} with l_d = (-1)^d L_d.
                let l = c.l(d).unwrap().scale(c.field().sign(d as u64)).pow_q_power(j).unwrap();
                let expect = RatFun::make(UniPoly::one(c.field(), Var::Theta), l).unwrap();
                assert_eq!(power_sum_exact(&c, d, s).unwrap(), expect);
            }
        }
    }

    #[test]
    fn leading_one() {
        let c = ctx(3);
        let z = zeta_value(&c, 2, 10).unwrap();
        assert_eq!(z.leading_exponent(), Some(0));
        assert_eq!(z.leading_coeff(), Some(Fq::ONE));
        assert_eq!(z.low(), -9);
    }

    #[test]
    fn matches_brute_force() {
        let c = ctx(2);
        // ζ(1, 2) over pairs with deg a_1 <= 4, compared above its tail.
        let f = c.field();
        let low = -12;
        let mut brute = LaurentSeries::zero(f, low);
        let one = UniPoly::one(f, Var::Theta);
        for d1 in 0..=5u32 {
            for d2 in 0..d1 {
                for a in monics(f, d1) {
                    for b in monics(f, d2) {
                        let den = &a * &b.pow(2);
                        brute = brute.checked_add(&LaurentSeries::quotient(&one, &den, low).unwrap()).unwrap();
                    }
                }
            }
        }
        let z = multizeta_to(&c, &[1, 2], low).unwrap();
        assert!(z.agree(&brute).unwrap().equal);
    }

    #[test]
    fn budget_gate() {
        let c = ctx(2);
        let small = CarlitzContext::with_budget(c.field(), 4);
        assert!(matches!(power_sum_exact(&small, 3, 1), Err(Error::BudgetExceeded(_))));
        let f9 = Field::new(3, 2, None).unwrap();
        let c9 = CarlitzContext::new(&f9);
        assert!(matches!(multizeta(&c9, &[1, 1, 1], 99), Err(Error::BudgetExceeded(_))));
    }
}
