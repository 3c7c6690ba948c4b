//! Exact computations with Anderson–Thakur polynomials, Carlitz quantities,
//! power sums and multizeta values over F_q[θ].

pub mod algebra;
pub mod anderson_thakur;
pub mod carlitz;
pub mod cpy;
pub mod error;
pub mod power_sums;
pub mod report;
pub mod series;
pub mod verify;

pub use algebra::{BiPoly, Field, Fq, RatFun, TwistedPoly, UniPoly, Var};
pub use carlitz::CarlitzContext;
pub use error::{Error, Result};
pub use report::{Detail, Mode, Status, VerificationReport};
pub use series::{Agreement, LaurentSeries};
