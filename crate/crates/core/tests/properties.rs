use num_bigint::BigUint;
use proptest::prelude::*;

use ffmzv_core::anderson_thakur::{at_poly, lucas_multinomial};
use ffmzv_core::power_sums::multizeta;
use ffmzv_core::verify::verify_eulerian_family_b;
use ffmzv_core::{BiPoly, CarlitzContext, Field, LaurentSeries, Status, TwistedPoly, UniPoly, Var};

fn field(q: u32) -> Field {
    match q {
        4 => Field::new(2, 2, None).unwrap(),
        8 => Field::new(2, 3, None).unwrap(),
        9 => Field::new(3, 2, None).unwrap(),
        p => Field::prime(p as u64).unwrap(),
    }
}

fn qs() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 4, 5, 8, 9])
}

fn poly(f: &Field, var: Var, coeffs: &[u32]) -> UniPoly {
    let q = f.q();
    UniPoly::from_dense(f, var, &coeffs.iter().map(|c| c % q).collect::<Vec<_>>())
}

fn multinomial_mod_p(p: u64, a: &[u64]) -> u32 {
    let fact = |n: u64| (1..=n).fold(BigUint::from(1u32), |acc, k| acc * k);
    let total: u64 = a.iter().sum();
    let m = a.iter().fold(fact(total), |acc, &x| acc / fact(x));
    (m % p).try_into().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(q in qs(), a in 0u32..9, b in 0u32..9, c in 0u32..9) {
        let f = field(q);
        let (a, b, c) = (f.elem(a % q), f.elem(b % q), f.elem(c % q));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.elem(0));
        if let Some(i) = f.inv(a) {
            prop_assert_eq!(f.mul(a, i), f.elem(1));
        } else {
            prop_assert!(a.is_zero());
        }
        prop_assert_eq!(f.frobenius_pow(a, f.m()), a);
    }

    #[test]
    fn poly_ring_and_division(q in qs(), x in prop::collection::vec(0u32..9, 0..6), y in prop::collection::vec(0u32..9, 1..5)) {
        let f = field(q);
        let a = poly(&f, Var::Theta, &x);
        let b = poly(&f, Var::Theta, &y);
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.divrem(&b).unwrap();
        prop_assert_eq!(&(&quo * &b) + &rem, a.clone());
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
        // Canonical form: no stored zero coefficients, round trip through JSON.
        prop_assert!(a.terms().iter().all(|(_, c)| !c.is_zero()));
        prop_assert_eq!(UniPoly::from_json(&f, &a.to_json()).unwrap(), a.clone());
        // Frobenius is additive: (a+b)^q = a^q + b^q.
        prop_assert_eq!((&a + &b).pow_q_power(1).unwrap(), &a.pow_q_power(1).unwrap() + &b.pow_q_power(1).unwrap());
    }

    #[test]
    fn twist_is_a_ring_homomorphism(
        q in prop::sample::select(vec![2u32, 3, 4]),
        x in prop::collection::vec((0u64..3, 0u64..6, 1u32..4), 0..5),
        y in prop::collection::vec((0u64..3, 0u64..6, 1u32..4), 0..5),
    ) {
        let f = field(q);
        let mk = |v: &[(u64, u64, u32)]| TwistedPoly::from_terms(&f, 1, v.iter().map(|&(i, j, c)| (i, j, f.elem(c % q))));
        let (a, b) = (mk(&x), mk(&y));
        let up = |p: &TwistedPoly| p.twist_up(1).unwrap();
        prop_assert_eq!(up(&a.checked_mul(&b).unwrap()), up(&a).checked_mul(&up(&b)).unwrap());
        prop_assert_eq!(up(&a.checked_add(&b).unwrap()), up(&a).checked_add(&up(&b)).unwrap());
        prop_assert_eq!(up(&a).twist_down().unwrap(), a);
    }

    #[test]
    fn series_ring_laws(q in prop::sample::select(vec![2u32, 3, 5]), x in prop::collection::vec(0u32..5, 1..6), y in prop::collection::vec(0u32..5, 1..6)) {
        let f = field(q);
        let a = poly(&f, Var::Theta, &x);
        let b = poly(&f, Var::Theta, &y);
        prop_assume!(!a.is_zero() && !b.is_zero());
        let low = -12;
        let sa = LaurentSeries::quotient(&UniPoly::one(&f, Var::Theta), &a, low).unwrap();
        let sb = LaurentSeries::from_poly(&b, low);
        let prod = sa.checked_mul(&sb).unwrap();
        let direct = LaurentSeries::quotient(&b, &a, low).unwrap();
        prop_assert!(prod.agree(&direct).unwrap().equal);
        let one = sa.checked_mul(&sa.inv().unwrap()).unwrap();
        prop_assert!(one.agree(&LaurentSeries::one(&f, one.low())).unwrap().equal);
        prop_assert!(sa.checked_add(&sb).unwrap().checked_sub(&sb).unwrap().agree(&sa).unwrap().equal);
    }

    #[test]
    fn lucas_matches_factorials(p in prop::sample::select(vec![2u64, 3, 5, 7]), a in prop::collection::vec(0u64..20, 1..4)) {
        prop_assert_eq!(lucas_multinomial(p, &a), multinomial_mod_p(p, &a));
    }
}

#[test]
fn h_below_scaled_power_is_gamma() {
    for q in [3u32, 4] {
        let f = field(q);
        let ctx = CarlitzContext::new(&f);
        let p = f.p() as u64;
        let mut pms = vec![1u64];
        while pms.last().unwrap() * p <= q as u64 {
            pms.push(pms.last().unwrap() * p);
        }
        for pm in pms {
            for k in 0..=3u32 {
                let idx = pm * (q as u64 - 1) * (q as u64).pow(k);
                let h = at_poly(&ctx, idx - 1).unwrap();
                assert_eq!(h.value, BiPoly::from_t(&ctx.gamma_t(idx).unwrap()).unwrap(), "q={q} p^m={pm} k={k}");
            }
        }
    }
}

#[test]
fn eulerian_b_printed_denominator_breaks_at_depth_four() {
    let ctx = CarlitzContext::new(&field(2));
    let rep = verify_eulerian_family_b(&ctx, 4, 8).unwrap();
    assert_eq!(rep.params.get("printed").map(String::as_str), Some("failed-as-printed"));
    let printed = rep.details.iter().find(|d| d.name == "closed form as printed (pi)").unwrap();
    assert_eq!(printed.status, Status::Failed);
    let derived: Vec<_> = rep.details.iter().filter(|d| d.name.contains("derived normalization")).collect();
    assert_eq!(derived.len(), 2);
    assert!(derived.iter().all(|d| d.status == Status::Verified));
    for d in ["recursion", "input zeta(1,1,2,...)"] {
        assert_eq!(rep.details.iter().find(|x| x.name == d).unwrap().status, Status::Verified, "{d}");
    }
}

#[test]
fn more_precision_only_extends() {
    for (q, tuple) in [(2u32, vec![1u64, 2]), (3, vec![1, 2]), (3, vec![2, 2, 2]), (4, vec![3])] {
        let ctx = CarlitzContext::new(&field(q));
        let short = multizeta(&ctx, &tuple, 4).unwrap();
        let long = multizeta(&ctx, &tuple, 10).unwrap();
        let a = short.agree(&long).unwrap();
        assert!(a.equal, "q={q} {tuple:?}: {a:?}");
        assert!(long.low() <= short.low());
    }
}
