//! Acceptance matrix: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ffmzv_core::anderson_thakur::{at_closed_form, at_poly, at_poly_oracle, at_special_q3};
use ffmzv_core::cpy::{self, SolutionBundle};
use ffmzv_core::power_sums::{power_sum_exact, zeta_value};
use ffmzv_core::verify::{verify_eulerian_family_a, verify_eulerian_family_b, verify_family, verify_powersum_lemma, verify_thm_q3, Params};
use ffmzv_core::{CarlitzContext, Field, RatFun, Status, UniPoly, Var, VerificationReport};

type Outcome = Result<String, String>;
type Case = (CarlitzContext, Vec<u64>, SolutionBundle);
type Check = (&'static str, fn() -> Outcome);

fn ctx(q: u64) -> CarlitzContext {
    let (p, m) = match q {
        4 => (2, 2),
        9 => (3, 2),
        p => (p, 1),
    };
    CarlitzContext::new(&Field::new(p, m, None).unwrap())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Debug>(x: E) -> String {
    format!("{x:?}")
}

/// Every non-informational detail verified, series ones with at least `min` terms.
fn report_ok(rep: &VerificationReport, min: u64) -> Result<u64, String> {
    let mut least = u64::MAX;
    for d in rep.details.iter().filter(|d| !d.informational) {
        ensure(d.status == Status::Verified, || format!("{} {:?}: {} is {:?}", rep.family, rep.params, d.name, d.status))?;
        if let Some(n) = d.agreed_terms {
            ensure(n >= min, || format!("{}: {} agreed on {n} < {min} terms", rep.family, d.name))?;
            least = least.min(n);
        }
    }
    Ok(least)
}

/// Admissible digit vectors of length `n` (digit sum at most q-1).
fn digit_vectors(q: u64, n: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u64>| {
                let used: u64 = v.iter().sum();
                (0..q - used).map(move |d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out
}

fn ac1() -> Outcome {
    for q in [2u64, 3, 4] {
        let c = ctx(q);
        for n in 0..=q * q * q + q {
            let a = at_poly(&c, n).map_err(e)?;
            let b = at_poly_oracle(&c, n, 1 << 24).map_err(e)?;
            ensure(a.value == b.value, || format!("q={q}: H_{n} differs from the oracle"))?;
        }
    }
    Ok("H_n = oracle for n <= q^3+q, q in {2,3,4}".into())
}

fn ac2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut count = 0;
    for q in [3u64, 4, 5] {
        let c = ctx(q);
        let mut cases: Vec<(u32, Vec<u64>)> = Vec::new();
        for n in 1..=2u32 {
            cases.extend(digit_vectors(q, n as usize).into_iter().map(|d| (n, d)));
        }
        let three = digit_vectors(q, 3);
        cases.extend((0..50).map(|_| (3, three.choose(&mut rng).expect("nonempty").clone())));
        for (n, d) in cases {
            let cf = at_closed_form(&c, n, &d).map_err(e)?;
            let h = at_poly(&c, cf.n).map_err(e)?;
            ensure(cf.value == h.value, || format!("q={q} n={n} N={d:?}: closed form differs from H_{}", cf.n))?;
            count += 1;
        }
    }
    Ok(format!("{count} closed forms equal H_n (n <= 2 exhaustive, 50 samples at n = 3)"))
}

fn ac3() -> Outcome {
    for q in [3u64, 4, 5] {
        let c = ctx(q);
        let s = at_special_q3(&c).map_err(e)?;
        ensure(s.n == q * q * q - q * q + q - 2, || format!("q={q}: wrong index {}", s.n))?;
        ensure(s.value == at_poly(&c, s.n).map_err(e)?.value, || format!("q={q}: special form differs"))?;
    }
    Ok("H_{q^3-q^2+q-2} special form for q in {3,4,5}".into())
}

fn ac4() -> Outcome {
    for (q, top) in [(2u64, 4u32), (3, 3)] {
        let c = ctx(q);
        for n in 1..=top {
            for i in 0..n {
                let k = c.q_pow(n).map_err(e)? - c.q_pow(i).map_err(e)?;
                let inv = c.bernoulli_carlitz(k).map_err(e)?;
                ensure(inv == c.bernoulli_closed_form(n, i).map_err(e)?, || format!("q={q}: BC(q^{n}-q^{i}) differs"))?;
            }
        }
    }
    Ok("BC(q^n-q^i) by inversion equals the closed form".into())
}

fn ac5() -> Outcome {
    let mut least = u64::MAX;
    for q in [2u64, 3] {
        let c = ctx(q);
        for n in [q - 1, 2 * (q - 1)] {
            let z = zeta_value(&c, n, 12).map_err(e)?.mul_poly(&c.gamma(n + 1).map_err(e)?).map_err(e)?;
            let rhs = c.pi_power(n, z.low()).map_err(e)?.mul_ratfun(&c.bernoulli_carlitz(n).map_err(e)?).map_err(e)?;
            let a = z.agree(&rhs).map_err(e)?;
            ensure(a.equal && a.agreed_terms >= 12, || format!("q={q} n={n}: Γζ vs BCπ̃ {a:?}"))?;
            least = least.min(a.agreed_terms);
        }
        for n in 1..=2u32 {
            let w = c.q_pow(n).map_err(e)? - 1;
            let z = zeta_value(&c, w, 12).map_err(e)?.mul_poly(&c.l(n).map_err(e)?).map_err(e)?;
            let rhs = c.pi_power(w, z.low()).map_err(e)?.scale(c.field().sign(n as u64));
            let a = z.agree(&rhs).map_err(e)?;
            ensure(a.equal && a.agreed_terms >= 12, || format!("q={q} n={n}: L_n ζ(q^n-1) {a:?}"))?;
            least = least.min(a.agreed_terms);
        }
    }
    Ok(format!("Bernoulli evaluations agree on >= {least} terms"))
}

fn ac6() -> Outcome {
    for q in [2u64, 3] {
        let c = ctx(q);
        for n in 1..=2 {
            report_ok(&verify_powersum_lemma(&c, n, 3).map_err(e)?, 0)?;
        }
    }
    let c = ctx(2);
    let b1 = c.bracket(1).map_err(e)?;
    let expect = RatFun::make(UniPoly::one(c.field(), Var::Theta), b1.pow(3)).map_err(e)?;
    let lhs = power_sum_exact(&c, 1, 1).map_err(e)?.checked_mul(&power_sum_exact(&c, 1, 2).map_err(e)?).map_err(e)?;
    let rhs = power_sum_exact(&c, 1, 3)
        .map_err(e)?
        .checked_sub(&ffmzv_core::power_sums::power_sum_tuple_exact(&c, 1, &[2, 1]).map_err(e)?)
        .map_err(e)?;
    ensure(lhs == expect && rhs == expect, || format!("q=2 n=1 d=1: {lhs} / {rhs}"))?;
    Ok("power-sum lemma exact; q=2,n=1,d=1 both sides 1/(θ²+θ)³".into())
}

fn ac7() -> Outcome {
    let mut parts = Vec::new();
    for (q, cases, min) in [(2u64, &[(1u32, 2usize), (1, 3), (2, 2)][..], 10u64), (3, &[(1, 2), (1, 3)][..], 6)] {
        let c = ctx(q);
        for &(n, r) in cases {
            let rep = verify_eulerian_family_a(&c, n, r, min).map_err(e)?;
            let t = report_ok(&rep, min)?;
            ensure(rep.details.len() >= 3, || "missing details".into())?;
            parts.push(format!("q={q}({n},{r}):{t}"));
        }
    }
    Ok(format!("recursion and both closed forms; agreed terms {}", parts.join(" ")))
}

fn ac8() -> Outcome {
    let c = ctx(2);
    let mut parts = Vec::new();
    for r in [2usize, 3] {
        let rep = verify_eulerian_family_b(&c, r, 8).map_err(e)?;
        let t = report_ok(&rep, 8)?;
        ensure(rep.details.iter().any(|d| d.name.starts_with("input")), || "input formula not checked".into())?;
        parts.push(format!("r={r}:{t}"));
    }
    // Beyond the required range the printed denominator breaks down; the
    // report must then carry a verified alternative normalization.
    let rep = verify_eulerian_family_b(&c, 4, 8).map_err(e)?;
    let derived = rep.details.iter().filter(|d| d.name.contains("derived normalization")).collect::<Vec<_>>();
    ensure(!derived.is_empty() && derived.iter().all(|d| d.status == Status::Verified), || {
        "r=4: no verified normalization reported".into()
    })?;
    let printed = rep.params.get("printed").map(String::as_str).unwrap_or("verified");
    Ok(format!(
        "recursion, input formula and printed closed form; agreed terms {}; r=4 printed form {printed}, derived normalization verified",
        parts.join(" ")
    ))
}

fn ac9() -> Outcome {
    let mut count = 0;
    for q in [3u64, 4] {
        let c = ctx(q);
        let p = c.field().p() as u64;
        let mut pms = vec![1, p, q];
        pms.dedup();
        for &pm in &pms {
            for m in [0u32, 1] {
                for r in [2usize, 3] {
                    for j in 2..=r {
                        let s = cpy::build_subsystem_family(&c, pm, m, r, j).map_err(e)?;
                        let rep = s.check(&c).map_err(e)?;
                        ensure(rep.satisfied && !rep.degenerate, || format!("q={q} pM={pm} m={m} r={r} j={j}: {rep:?}"))?;
                        count += 1;
                    }
                }
            }
        }
    }
    let check = |c: &CarlitzContext, tuple: &[u64], sol: &SolutionBundle, what: &str| -> Result<(), String> {
        let rep = cpy::check_solution(&cpy::build_system(c, tuple, sol.root_depth).map_err(e)?, sol).map_err(e)?;
        ensure(rep.satisfied && !rep.degenerate, || format!("{what}: {rep:?}"))
    };
    let c3 = ctx(3);
    for n in 0..=1 {
        let (t, s) = cpy::build_solution_thm_a(&c3, n).map_err(e)?;
        check(&c3, &t, &s, &format!("thmA n={n}"))?;
        count += 1;
    }
    for q in [3u64, 4] {
        let c = ctx(q);
        let p = c.field().p() as u64;
        let mut built = 0;
        for pm in [1, p, q] {
            for d0 in 0..q {
                match cpy::build_solution_thm_b(&c, 1, &[d0], pm, 2) {
                    Ok((t, s)) => {
                        check(&c, &t, &s, &format!("thmB q={q} N=({d0}) pm={pm}"))?;
                        built += 1;
                    }
                    Err(ffmzv_core::Error::ConditionViolated(_)) => {}
                    Err(x) => return Err(e(x)),
                }
            }
        }
        ensure(built > 0, || format!("no admissible thmB case at q={q}"))?;
        count += built;
    }
    for q in [3u64, 5] {
        let c = ctx(q);
        let (t, s) = cpy::build_solution_thm_q3(&c).map_err(e)?;
        check(&c, &t, &s, &format!("thmQ3 q={q}"))?;
        count += 1;
    }
    Ok(format!("{count} constructed solutions satisfy their systems, none degenerate"))
}

fn ac10() -> Outcome {
    let c = ctx(3);
    let rep = verify_thm_q3(&c, 8).map_err(e)?;
    let matching = rep.params.get("matchingExponent").cloned().unwrap_or_default();
    let series: Vec<_> = rep.details.iter().filter(|d| d.name.ends_with("(series)")).collect();
    ensure(series.len() == 2, || "expected one series check per exponent".into())?;
    let ok: Vec<_> = series.iter().filter(|d| d.status == Status::Verified && d.agreed_terms >= Some(5)).collect();
    ensure(ok.len() == 1, || format!("matching exponent not decided: {matching}"))?;
    ensure(matching == "7", || format!("unexpected matching exponent {matching}"))?;
    let other = series.iter().find(|d| d.status != Status::Verified).expect("one fails");
    Ok(format!(
        "exponent q²-q+1 = {matching} matches ({} terms); q²-q-1 fails at θ^{}",
        ok[0].agreed_terms.unwrap_or(0),
        other.first_mismatch.map(|x| x.to_string()).unwrap_or_default()
    ))
}

fn ac11() -> Outcome {
    let c = ctx(3);
    let params: Params = [("n", "1"), ("N", "2"), ("pm", "3"), ("r", "2")].into_iter().map(|(k, v)| (k.into(), v.into())).collect();
    let rep = verify_family(&c, "conj29a", &params, 6).map_err(e)?;
    let t = report_ok(&rep, 6)?;
    let names: Vec<_> = rep.details.iter().map(|d| d.name.as_str()).collect();
    ensure(names.contains(&"printed ratio equals bundle ratio") && names.contains(&"printed ratio (series)"), || format!("{names:?}"))?;
    Ok(format!("printed ratio equals ratio_from_ab and agrees on {t} terms"))
}

fn ac12() -> Outcome {
    for q in [2u64, 3, 4] {
        let c = ctx(q);
        let f = c.field().clone();
        for k in 0..=3u32 {
            // every a with deg a < k
            for idx in 0..q.pow(k) {
                let mut x = idx;
                let coeffs: Vec<u32> = (0..k)
                    .map(|_| {
                        let d = (x % q) as u32;
                        x /= q;
                        d
                    })
                    .collect();
                let a = UniPoly::from_dense(&f, Var::Theta, &coeffs);
                ensure(c.psi_eval(k, &a).map_err(e)?.is_zero(), || format!("q={q} k={k}: Ψ_k({a}) != 0"))?;
            }
            let top = UniPoly::monomial(&f, Var::Theta, f.elem(1), k as u64);
            ensure(c.psi_eval(k, &top).map_err(e)?.is_one(), || format!("q={q} k={k}: Ψ_k(θ^k) != 1"))?;
        }
    }
    Ok("Ψ_k vanishes below degree k and is 1 at θ^k".into())
}

fn ac13() -> Outcome {
    let mut count = 0;
    let mut bundles: Vec<Case> = Vec::new();
    let c3 = ctx(3);
    for n in 0..=1 {
        let (t, s) = cpy::build_solution_thm_a(&c3, n).map_err(e)?;
        bundles.push((ctx(3), t, s));
    }
    let (t, s) = cpy::build_solution_thm_b(&c3, 1, &[2], 3, 2).map_err(e)?;
    bundles.push((ctx(3), t, s));
    for q in [3u64, 5] {
        let c = ctx(q);
        let (t, s) = cpy::build_solution_thm_q3(&c).map_err(e)?;
        bundles.push((c, t, s));
    }
    for (c, tuple, sol) in &bundles {
        let system = cpy::build_system(c, tuple, sol.root_depth).map_err(e)?;
        let t = UniPoly::x(c.field(), Var::T);
        let t1 = &t + &UniPoly::one(c.field(), Var::T);
        for f in [t, t1] {
            let rep = system.check(&sol.scaled(&f).map_err(e)?).map_err(e)?;
            ensure(rep.satisfied && !rep.degenerate, || format!("{tuple:?} scaled by {f}: {rep:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} scaled bundles remain solutions"))
}

fn main() -> ExitCode {
    let checks: [Check; 13] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
        ("AC9", ac9),
        ("AC10", ac10),
        ("AC11", ac11),
        ("AC12", ac12),
        ("AC13", ac13),
    ];
    let mut failed = 0;
    for (name, f) in checks {
        let start = Instant::now();
        let res = f();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("{name:<5} PASS  {msg} [{secs:.2}s]"),
            Err(msg) => {
                failed += 1;
                println!("{name:<5} FAIL  {msg} [{secs:.2}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 13 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
