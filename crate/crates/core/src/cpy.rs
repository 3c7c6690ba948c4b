//! The Chang–Papanikolas–Yu system
//!
//! ```text
//! δ_i = δ_i^{(-1)} (t-θ)^{σ_i} + δ_{i+1}^{(-1)} H_{s_i-1}^{(-1)} (t-θ)^{σ_i}   (i < r)
//! δ_r = δ_r^{(-1)} (t-θ)^{s_r} + a H_{s_r-1}^{(-1)} (t-θ)^{s_r}
//! ```
//!
//! with `σ_i = s_i + ... + s_r` and `+ b H_{w-1}^{(-1)} (t-θ)^w` added to the
//! first equation. Checking happens after twisting every equation up once,
//! where all terms are polynomials in F_q[u][t] and no q-th roots are needed.

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, Fq, PolyJson, RatFun, TwistedJson, TwistedPoly, UniPoly, Var};
use crate::anderson_thakur::h;
use crate::carlitz::CarlitzContext;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct DeltaSystem {
    pub tuple: Vec<u64>,
    pub weight: u64,
    pub root_depth: u32,
    /// `σ_i = s_i + ... + s_r`.
    pub sigma: Vec<u64>,
    /// `H_{s_i - 1}` embedded at the root depth.
    pub h: Vec<TwistedPoly>,
    /// `H_{w-1}`, present when the first equation carries the b-term.
    pub h_w: Option<TwistedPoly>,
    field: Field,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionBundle {
    pub a: UniPoly,
    pub b: UniPoly,
    pub deltas: Vec<TwistedPoly>,
    pub root_depth: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckReport {
    pub satisfied: bool,
    /// 1-based index of the first equation that fails.
    pub failing_equation: Option<usize>,
    /// Every failing equation, ascending.
    pub failing_equations: Vec<usize>,
    pub degenerate: bool,
}

/// `(a, δ_j, ..., δ_r)` from the explicit subsystem solution, with the
/// auxiliary `f_j, ..., f_r` (polynomials in θ).
#[derive(Clone, Debug)]
pub struct SubsystemSolution {
    pub tuple: Vec<u64>,
    pub start: usize,
    pub a: UniPoly,
    pub deltas: Vec<TwistedPoly>,
    pub f: Vec<UniPoly>,
    pub root_depth: u32,
}

/// `{rootDepth, a, b, deltas}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BundleJson {
    pub root_depth: u32,
    pub a: PolyJson,
    pub b: PolyJson,
    pub deltas: Vec<TwistedJson>,
}

impl SolutionBundle {
    pub fn to_json(&self) -> BundleJson {
        BundleJson {
            root_depth: self.root_depth,
            a: self.a.to_json(),
            b: self.b.to_json(),
            deltas: self.deltas.iter().map(|d| d.to_json()).collect(),
        }
    }

    pub fn from_json(field: &Field, j: &BundleJson) -> Result<Self> {
        let a = UniPoly::from_json(field, &j.a)?;
        let b = UniPoly::from_json(field, &j.b)?;
        for p in [&a, &b] {
            if !p.is_zero() && p.var() != Var::T {
                return Err(Error::Parse("a and b must be polynomials in t".into()));
            }
        }
        let deltas = j.deltas.iter().map(|d| TwistedPoly::from_json(field, d)).collect::<Result<Vec<_>>>()?;
        if let Some(d) = deltas.iter().find(|d| d.root_depth() != j.root_depth) {
            return Err(Error::RootDepthMismatch(j.root_depth, d.root_depth()));
        }
        Ok(SolutionBundle { a: a.with_var(Var::T), b: b.with_var(Var::T), deltas, root_depth: j.root_depth })
    }

    pub fn is_degenerate(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.deltas.iter().all(|d| d.is_zero())
    }

    /// `(f δ_1, ..., f δ_r, f a, f b)`.
    pub fn scaled(&self, f: &UniPoly) -> Result<Self> {
        Ok(SolutionBundle {
            a: self.a.checked_mul(f)?,
            b: self.b.checked_mul(f)?,
            deltas: self.deltas.iter().map(|d| d.mul_t(f)).collect::<Result<_>>()?,
            root_depth: self.root_depth,
        })
    }

    pub fn zero(field: &Field, r: usize, root_depth: u32) -> Self {
        SolutionBundle {
            a: UniPoly::zero(field, Var::T),
            b: UniPoly::zero(field, Var::T),
            deltas: vec![TwistedPoly::zero(field, root_depth); r],
            root_depth,
        }
    }
}

fn embed_h(ctx: &CarlitzContext, n: u64, root_depth: u32) -> Result<TwistedPoly> {
    TwistedPoly::from_bipoly(&h(ctx, n)?, root_depth)
}

/// The system for a tuple of depth at least 2.
pub fn build_system(ctx: &CarlitzContext, tuple: &[u64], root_depth: u32) -> Result<DeltaSystem> {
    if tuple.len() < 2 {
        return Err(Error::DepthTooSmall);
    }
    system(ctx, tuple, root_depth, true)
}

fn system(ctx: &CarlitzContext, tuple: &[u64], root_depth: u32, with_b: bool) -> Result<DeltaSystem> {
    if tuple.is_empty() || tuple.contains(&0) {
        return Err(Error::InvalidArgument("tuple entries must be positive".into()));
    }
    let r = tuple.len();
    let mut sigma = vec![0u64; r];
    let mut acc = 0u64;
    for i in (0..r).rev() {
        acc = acc.checked_add(tuple[i]).ok_or(Error::ExponentOverflow)?;
        sigma[i] = acc;
    }
    let h_list = tuple.iter().map(|&s| embed_h(ctx, s - 1, root_depth)).collect::<Result<Vec<_>>>()?;
    let h_w = if with_b { Some(embed_h(ctx, acc - 1, root_depth)?) } else { None };
    Ok(DeltaSystem { tuple: tuple.to_vec(), weight: acc, root_depth, sigma, h: h_list, h_w, field: ctx.field().clone() })
}

impl DeltaSystem {
    pub fn depth(&self) -> usize {
        self.tuple.len()
    }

    /// `(t - θ^q)^e` at this root depth.
    fn twisted_linear_power(&self, e: u64) -> Result<TwistedPoly> {
        TwistedPoly::t_minus_theta_q_power(&self.field, self.root_depth, 1)?.try_pow(e)
    }

    fn validate(&self, sol: &SolutionBundle) -> Result<()> {
        if sol.root_depth != self.root_depth {
            return Err(Error::RootDepthMismatch(self.root_depth, sol.root_depth));
        }
        if let Some(d) = sol.deltas.iter().find(|d| d.root_depth() != self.root_depth) {
            return Err(Error::RootDepthMismatch(self.root_depth, d.root_depth()));
        }
        if sol.deltas.len() != self.depth() {
            return Err(Error::InvalidArgument(format!("expected {} deltas, got {}", self.depth(), sol.deltas.len())));
        }
        Ok(())
    }

    /// The right-hand side of equation `i` before the twist, as the factor
    /// multiplying `(t-θ)^{σ_i}` after one twist up: `δ_i + δ_{i+1} H + ...`.
    fn inner(&self, sol: &SolutionBundle, i: usize) -> Result<TwistedPoly> {
        let r = self.depth();
        let next = if i + 1 < r { sol.deltas[i + 1].checked_mul(&self.h[i])? } else { self.h[i].mul_t(&sol.a)? };
        let mut acc = sol.deltas[i].checked_add(&next)?;
        if i == 0 {
            if let Some(hw) = &self.h_w {
                acc = acc.checked_add(&hw.mul_t(&sol.b)?)?;
            }
        }
        Ok(acc)
    }

    fn twisted_up_holds(&self, sol: &SolutionBundle, i: usize) -> Result<bool> {
        let lhs = sol.deltas[i].twist_up(1)?;
        let rhs = self.inner(sol, i)?.checked_mul(&self.twisted_linear_power(self.sigma[i])?)?;
        Ok(lhs == rhs)
    }

    fn twisted_down_holds(&self, sol: &SolutionBundle, i: usize) -> Result<bool> {
        let lin = TwistedPoly::t_minus_theta_q_power(&self.field, self.root_depth, 0)?;
        let rhs = self.inner(sol, i)?.twist_down()?.checked_mul(&lin.try_pow(self.sigma[i])?)?;
        Ok(sol.deltas[i] == rhs)
    }

    fn report(&self, sol: &SolutionBundle, holds: impl Fn(usize) -> Result<bool>) -> Result<CheckReport> {
        self.validate(sol)?;
        let mut failing = Vec::new();
        for i in 0..self.depth() {
            if !holds(i)? {
                failing.push(i + 1);
            }
        }
        Ok(CheckReport {
            satisfied: failing.is_empty(),
            failing_equation: failing.first().copied(),
            failing_equations: failing,
            degenerate: sol.is_degenerate(),
        })
    }

    /// Checks `δ_i^{(1)} = (δ_i + δ_{i+1} H_{s_i-1} [+ b H_{w-1}]) (t-θ^q)^{σ_i}`
    /// (with `a H_{s_r-1}` in the last equation).
    pub fn check(&self, sol: &SolutionBundle) -> Result<CheckReport> {
        self.report(sol, |i| self.twisted_up_holds(sol, i))
    }

    /// The same check in the untwisted form
    /// `δ_i = (δ_i + δ_{i+1} H + ...)^{(-1)} (t-θ)^{σ_i}`; fails with
    /// `NotTwistDivisible` when a q-th root leaves the ring.
    pub fn check_twisting_down(&self, sol: &SolutionBundle) -> Result<CheckReport> {
        self.report(sol, |i| self.twisted_down_holds(sol, i))
    }
}

/// Checks a bundle against a system.
pub fn check_solution(system: &DeltaSystem, sol: &SolutionBundle) -> Result<CheckReport> {
    system.check(sol)
}

/// `t^a - θ^{c q^k}` at root depth `R`; `k` may be negative down to `-R`.
fn t_minus_theta_power(field: &Field, root_depth: u32, a: u64, c: u64, k: i64) -> Result<TwistedPoly> {
    let e = k + root_depth as i64;
    if e < 0 {
        return Err(Error::InvalidArgument(format!("root depth {root_depth} too small for θ^(q^{k})")));
    }
    let q = field.q() as u64;
    let u = q.checked_pow(e as u32).and_then(|x| x.checked_mul(c)).ok_or(Error::ExponentOverflow)?;
    Ok(TwistedPoly::from_terms(field, root_depth, [(a, 0, Fq::ONE), (0, u, field.neg(Fq::ONE))]))
}

fn is_p_power(p: u64, mut x: u64) -> bool {
    if x == 0 {
        return false;
    }
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

fn check_p_power(ctx: &CarlitzContext, pm: u64) -> Result<()> {
    if !is_p_power(ctx.field().p() as u64, pm) || pm > ctx.q() {
        return Err(Error::BadPPower(pm));
    }
    Ok(())
}

fn pow_u(ctx: &CarlitzContext, base: u64, k: u32) -> Result<u64> {
    ctx.q_pow(k)?.checked_mul(base).ok_or(Error::ExponentOverflow)
}

/// The explicit solution of the subsystem for
/// `s_i = p^M (q-1) q^{m+i-2}`, `i = j..r`:
///
/// ```text
/// f_r = [2]^{p^M q^{r+m-3}} ... [r-1]^{p^M q^m} Γ_{s_r}
/// f_i = -f_{i+1} Γ_{s_i} / [r-i+1]^{p^M q^{m+i-2}}
/// δ_i = f_i(t) [(t-θ)(t-θ^{1/q}) ... (t-θ^{1/q^{r-i}})]^{p^M q^{r+m-1}}
/// a   = -[1]^{p^M q^{r+m-2}} ... [r-1]^{p^M q^m} (t)
/// ```
pub fn build_subsystem_family(ctx: &CarlitzContext, pm: u64, m: u32, r: usize, j: usize) -> Result<SubsystemSolution> {
    check_p_power(ctx, pm)?;
    if r < 2 || j < 2 || j > r {
        return Err(Error::InvalidArgument(format!("need r >= 2 and 2 <= j <= r, got r={r}, j={j}")));
    }
    subsystem(ctx, pm, m, r, j, r as u32)
}

fn subsystem(ctx: &CarlitzContext, pm: u64, m: u32, r: usize, j: usize, root_depth: u32) -> Result<SubsystemSolution> {
    let f = ctx.field();
    let q = ctx.q();
    let ru = r as u32;
    let s = |i: usize| -> Result<u64> { pow_u(ctx, pm * (q - 1), m + i as u32 - 2) };
    let tuple: Vec<u64> = (j..=r).map(s).collect::<Result<_>>()?;
    // f_r, then downwards to f_j.
    let mut fr = ctx.gamma(s(r)?)?;
    for k in 2..ru {
        fr = &fr * &ctx.bracket(k)?.try_pow(pow_u(ctx, pm, ru + m - 1 - k)?)?;
    }
    let mut fs = vec![fr];
    for i in (j..r).rev() {
        let prev = fs.last().unwrap();
        let num = prev.checked_mul(&ctx.gamma(s(i)?)?)?;
        let den = ctx.bracket(ru - i as u32 + 1)?.try_pow(pow_u(ctx, pm, m + i as u32 - 2)?)?;
        let fi = num.exact_div(&den).map_err(|_| Error::DenominatorNotCleared(i as u64))?;
        fs.push(-&fi);
    }
    fs.reverse();
    let big = pow_u(ctx, pm, ru + m - 1)?;
    let mut deltas = Vec::with_capacity(r - j + 1);
    for (idx, i) in (j..=r).enumerate() {
        let mut d = TwistedPoly::from_t(&fs[idx].with_var(Var::T), root_depth)?;
        for k in 0..=(r - i) as i64 {
            d = d.checked_mul(&t_minus_theta_power(f, root_depth, big, pm, ru as i64 + m as i64 - 1 - k)?)?;
        }
        deltas.push(d);
    }
    let mut a = UniPoly::one(f, Var::T);
    for k in 1..ru {
        a = &a * &ctx.bracket_t(k)?.try_pow(pow_u(ctx, pm, ru + m - 1 - k)?)?;
    }
    Ok(SubsystemSolution { tuple, start: j, a: -&a, deltas, f: fs, root_depth })
}

impl SubsystemSolution {
    /// Checks the fragment as a system of its own (no b-term).
    pub fn check(&self, ctx: &CarlitzContext) -> Result<CheckReport> {
        let sys = system(ctx, &self.tuple, self.root_depth, false)?;
        let bundle = SolutionBundle {
            a: self.a.clone(),
            b: UniPoly::zero(ctx.field(), Var::T),
            deltas: self.deltas.clone(),
            root_depth: self.root_depth,
        };
        sys.check(&bundle)
    }
}

/// Bundle for `(1, q^2-1, (q-1)q^2, ..., (q-1)q^{n+1})`, `q > 2`.
pub fn build_solution_thm_a(ctx: &CarlitzContext, n: u32) -> Result<(Vec<u64>, SolutionBundle)> {
    let q = ctx.q();
    if q == 2 {
        return Err(Error::QTooSmall);
    }
    let f = ctx.field();
    let r = n as usize + 2;
    let root_depth = r as u32;
    let w = ctx.q_pow(n + 2)?;
    let mut tuple = vec![1, q * q - 1];
    for i in 3..=r {
        tuple.push(pow_u(ctx, q - 1, i as u32 - 1)?);
    }
    // δ_3.., a from the subsystem with p^M = 1, m = 1; its a is -[1]^q when n = 0.
    let sub = subsystem(ctx, 1, 1, r, 3.min(r), root_depth)?;
    let sign_n = f.sign(n as u64);
    let bn1q = ctx.bracket_t(n + 1)?.pow_q_power(1)?;
    let gw = ctx.gamma_t(w)?;
    // δ_2
    let mut d2 = TwistedPoly::from_t(&(&bn1q * &gw).scale(sign_n), root_depth)?;
    for k in 0..=n as i64 {
        d2 = d2.checked_mul(&t_minus_theta_power(f, root_depth, w, 1, n as i64 + 2 - k)?)?;
    }
    d2 = d2.checked_mul(&t_minus_theta_power(f, root_depth, 1, 1, 1)?)?;
    // f = -[n+2] L_1 ... L_{n+1} (t)
    let mut fpoly = ctx.bracket_t(n + 2)?;
    for k in 1..=n + 1 {
        fpoly = &fpoly * &ctx.l_t(k)?;
    }
    let fpoly = -&fpoly;
    let one = UniPoly::one(f, Var::T);
    let b = (&(&ctx.bracket_t(n + 2)? - &one) * &bn1q).scale(sign_n);
    let bcoef = (&bn1q * &gw).scale(f.sign(n as u64 + 1));
    // F_0, F_1, then F_i = F_{i-1}^{(-1)} (t-θ)^w.
    let lin_w = t_minus_theta_power(f, root_depth, w, 1, n as i64 + 2)?;
    let f0 = TwistedPoly::from_t(&bcoef, root_depth)?.checked_mul(&lin_w)?;
    let f1 = f0.checked_mul(&t_minus_theta_power(f, root_depth, 1, 1, n as i64 + 1)?)?;
    let mut d1 = f0.checked_add(&f1)?;
    let mut fi = f1;
    for _ in 2..=n + 1 {
        fi = fi.twist_down()?.checked_mul(&lin_w)?;
        d1 = d1.checked_add(&fi)?;
    }
    let mut deltas = vec![d1, d2];
    for d in sub.deltas.iter().skip(if r >= 3 { 0 } else { usize::MAX }) {
        deltas.push(d.mul_t(&fpoly)?);
    }
    let a = sub.a.checked_mul(&fpoly)?;
    Ok((tuple, SolutionBundle { a, b, deltas, root_depth }))
}

/// Digits after moving the top block: `w = q^{n+r-1} - Σ N'_i q^i`.
fn shifted_digits(q: u64, digits_n: &[u64], pm: u64, r: usize) -> Vec<u64> {
    let n = digits_n.len();
    let mut out = vec![0u64; n + r - 1];
    out[..n].copy_from_slice(digits_n);
    out[n - 1] -= q - pm;
    out[n + r - 2] += q - pm;
    out
}

/// `Γ_k(t) (-1)^{Σ (top-i) N_i q^i} / ∏ L_{top-i}(t)^{N_i q^i}`, `i < len`.
fn closed_form_factor(ctx: &CarlitzContext, k: u64, top: usize, digits_n: &[u64], len: usize) -> Result<RatFun> {
    let f = ctx.field();
    let mut sign = 0u64;
    let mut den = UniPoly::one(f, Var::T);
    for (i, &ni) in digits_n.iter().enumerate().take(len) {
        let qi = ctx.q_pow(i as u32)?;
        sign += (top - i) as u64 * ni * qi;
        if ni > 0 {
            den = &den * &ctx.l_t((top - i) as u32)?.try_pow(ni * qi)?;
        }
    }
    RatFun::make(ctx.gamma_t(k)?.scale(f.sign(sign)), den)
}

/// Tuple `(q^n - Σ N_i q^i, p^m (q-1) q^{n-1}, ..., p^m (q-1) q^{n+r-3})`.
pub fn thm_b_tuple(ctx: &CarlitzContext, n: u32, digits_n: &[u64], pm: u64, r: usize) -> Result<Vec<u64>> {
    let q = ctx.q();
    let s1 = crate::anderson_thakur::closed_form_index(ctx, n, digits_n)? + 1;
    let mut t = vec![s1];
    for i in 2..=r {
        t.push(pow_u(ctx, pm * (q - 1), n + i as u32 - 3)?);
    }
    Ok(t)
}

fn thm_b_validate(ctx: &CarlitzContext, n: u32, digits_n: &[u64], pm: u64, r: usize) -> Result<Vec<u64>> {
    let q = ctx.q();
    if q == 2 {
        return Err(Error::QTooSmall);
    }
    check_p_power(ctx, pm)?;
    if n == 0 || r < 2 || digits_n.len() != n as usize {
        return Err(Error::InvalidArgument(format!("need n >= 1, r >= 2 and exactly n digits (n={n}, r={r})")));
    }
    let sum: u64 = digits_n.iter().sum();
    if sum == 0 || sum > q - 1 {
        return Err(Error::ConditionViolated(format!("digit sum {sum} must lie in 1..={}", q - 1)));
    }
    let tuple = thm_b_tuple(ctx, n, digits_n, pm, r)?;
    if (q - 1) * tuple[0] > tuple[1] {
        return Err(Error::ConditionViolated(format!("(q-1)·{} > {}", tuple[0], tuple[1])));
    }
    Ok(tuple)
}

/// Bundle for the family `(q^n - Σ N_i q^i, p^m (q-1) q^{n-1}, ...)`.
///
/// `b = -f_2(t) B_1` and `f_1 = B_2` are rational in t; the whole bundle is
/// scaled by their common denominator.
pub fn build_solution_thm_b(ctx: &CarlitzContext, n: u32, digits_n: &[u64], pm: u64, r: usize) -> Result<(Vec<u64>, SolutionBundle)> {
    let tuple = thm_b_validate(ctx, n, digits_n, pm, r)?;
    let q = ctx.q();
    let f = ctx.field();
    let root_depth = r as u32;
    let w: u64 = tuple.iter().sum();
    let nd = shifted_digits(q, digits_n, pm, r);
    let sub = subsystem(ctx, pm, n - 1, r, 2, root_depth)?;
    let b1 = closed_form_factor(ctx, tuple[0], n as usize - 1, digits_n, n as usize - 1)?;
    let b2 = closed_form_factor(ctx, w, n as usize + r - 2, &nd, n as usize)?;
    let f2 = RatFun::from_poly(sub.f[0].with_var(Var::T));
    let b = -&(&f2 * &b1);
    let scale = b.den().lcm(b2.den())?;
    let b_poly = b.mul_poly(&scale)?.to_poly().expect("cleared");
    let f1_poly = b2.mul_poly(&scale)?.to_poly().expect("cleared");
    // F_0 = b H_{w-1}^{(-1)} (t-θ)^w, F_i = F_{i-1}^{(-1)} (t-θ)^w.
    let lin_w = TwistedPoly::t_minus_theta_q_power(f, root_depth, 0)?.try_pow(w)?;
    let hw = embed_h(ctx, w - 1, root_depth)?;
    let mut fi = hw.twist_down()?.mul_t(&b_poly)?.checked_mul(&lin_w)?;
    let mut d1 = fi.clone();
    for _ in 1..=r - 2 {
        fi = fi.twist_down()?.checked_mul(&lin_w)?;
        d1 = d1.checked_add(&fi)?;
    }
    let mut deltas = vec![d1];
    for d in &sub.deltas {
        deltas.push(d.mul_t(&f1_poly)?);
    }
    let a = sub.a.checked_mul(&f1_poly)?;
    Ok((tuple, SolutionBundle { a, b: b_poly, deltas, root_depth }))
}

/// The ratio printed with the family:
/// `(-1)^{(r-1)(1+Σ N_i)} ∏_{i<n} L_{n+r-2-i}^{N'_i q^i}
///  / ([1]^{p^m q^{n+r-3}} ... [r-1]^{p^m q^{n-1}} ∏_{i<=n-2} L_{n-1-i}^{N_i q^i})`.
pub fn thm_b_display_ratio(ctx: &CarlitzContext, n: u32, digits_n: &[u64], pm: u64, r: usize) -> Result<RatFun> {
    thm_b_validate(ctx, n, digits_n, pm, r)?;
    let f = ctx.field();
    let q = ctx.q();
    let nd = shifted_digits(q, digits_n, pm, r);
    let sum: u64 = digits_n.iter().sum();
    let mut num = UniPoly::one(f, Var::Theta).scale(f.sign((r as u64 - 1) * (1 + sum)));
    for (i, &ni) in nd.iter().enumerate().take(n as usize) {
        if ni > 0 {
            num = &num * &ctx.l(n + r as u32 - 2 - i as u32)?.try_pow(ni * ctx.q_pow(i as u32)?)?;
        }
    }
    let mut den = UniPoly::one(f, Var::Theta);
    for k in 1..r as u32 {
        den = &den * &ctx.bracket(k)?.try_pow(pow_u(ctx, pm, n + r as u32 - 2 - k)?)?;
    }
    for (i, &ni) in digits_n.iter().enumerate().take(n as usize - 1) {
        if ni > 0 {
            den = &den * &ctx.l(n - 1 - i as u32)?.try_pow(ni * ctx.q_pow(i as u32)?)?;
        }
    }
    RatFun::make(num, den)
}

/// Tuple `(1, q(q-1), q^3-q^2+q-1)`.
pub fn thm_q3_tuple(q: u64) -> Vec<u64> {
    vec![1, q * (q - 1), q * q * q - q * q + q - 1]
}

/// The printed bundle for `(1, q(q-1), q^3-q^2+q-1)`:
///
/// ```text
/// a  = Γ_{q^3}[3] (t)
/// b  = [1]^{q-3} [2]^{q-2} (1-[3]) (t)
/// δ_1 = c (t-θ)^{q^3} [(t-θ^q)(t-θ^{1/q})^{q^3} - θ^{q^2} + t + 1]
/// δ_2 = -c (t-θ)^{q^3} (t-θ^{1/q})^{q^3} (t-θ^q)
/// δ_3 = a [2]^{q-2} / [1] (t) · (t-θ)^{q^3} (t-θ^q)
/// ```
/// with `c = a [2]^{q-2} [1]^{q-3} / [3] (t)`.
pub fn build_solution_thm_q3(ctx: &CarlitzContext) -> Result<(Vec<u64>, SolutionBundle)> {
    let q = ctx.q();
    if q == 2 {
        return Err(Error::QTooSmall);
    }
    let f = ctx.field();
    let root_depth = 3;
    let q3 = q * q * q;
    let (b1, b2, b3) = (ctx.bracket_t(1)?, ctx.bracket_t(2)?, ctx.bracket_t(3)?);
    let g = ctx.gamma_t(q3)?;
    let a = &g * &b3;
    let one = UniPoly::one(f, Var::T);
    let b = &(&b1.try_pow(q - 3)? * &b2.try_pow(q - 2)?) * &(&one - &b3);
    let c = &(&g * &b2.try_pow(q - 2)?) * &b1.try_pow(q - 3)?;
    let c3 = (&a * &b2.try_pow(q - 2)?).exact_div(&b1)?;
    let lin0 = t_minus_theta_power(f, root_depth, q3, 1, 3)?;
    let lin_q = t_minus_theta_power(f, root_depth, 1, 1, 1)?;
    let root = t_minus_theta_power(f, root_depth, q3, 1, 2)?; // (t-θ^{1/q})^{q^3} = t^{q^3} - θ^{q^2}
    let tail =
        TwistedPoly::from_terms(f, root_depth, [(0, pow_u(ctx, 1, 2 + root_depth)?, f.neg(Fq::ONE)), (1, 0, Fq::ONE), (0, 0, Fq::ONE)]);
    let cw = TwistedPoly::from_t(&c, root_depth)?.checked_mul(&lin0)?;
    let d1 = cw.checked_mul(&lin_q.checked_mul(&root)?.checked_add(&tail)?)?;
    let d2 = cw.checked_mul(&root)?.checked_mul(&lin_q)?.neg();
    let d3 = TwistedPoly::from_t(&c3, root_depth)?.checked_mul(&lin0)?.checked_mul(&lin_q)?;
    Ok((thm_q3_tuple(q), SolutionBundle { a, b, deltas: vec![d1, d2, d3], root_depth }))
}

/// `-b(θ) Γ_w / (a(θ) Γ_{s_1} ... Γ_{s_r})` for `(q-1) ∤ w`.
pub fn ratio_from_ab(ctx: &CarlitzContext, a: &UniPoly, b: &UniPoly, tuple: &[u64]) -> Result<RatFun> {
    let q = ctx.q();
    let w: u64 = tuple.iter().sum();
    if w.is_multiple_of(q - 1) {
        return Err(Error::WeightEven { w, q_minus_1: q - 1 });
    }
    if a.is_zero() {
        return Err(Error::DegenerateA);
    }
    let num = (&b.with_var(Var::Theta) * &ctx.gamma(w)?).scale(ctx.field().neg(Fq::ONE));
    let mut den = a.with_var(Var::Theta);
    for &s in tuple {
        den = &den * &ctx.gamma(s)?;
    }
    RatFun::make(num, den)
}
