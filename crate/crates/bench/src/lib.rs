//! Inputs shared by the benchmarks.

use ffmzv_core::{BiPoly, Field};

/// `(t - θ)^n` over F_p.
pub fn binomial_power(p: u64, n: u64) -> BiPoly {
    let f = Field::prime(p).expect("prime");
    BiPoly::t_minus_theta(&f, 1, 1).pow(n)
}
