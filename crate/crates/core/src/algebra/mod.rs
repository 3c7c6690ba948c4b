//! Exact arithmetic: the coefficient field, polynomials in one or two
//! variables, rational functions and the twist ring.

pub mod bipoly;
pub mod field;
pub mod poly;
pub mod ratfun;
pub(crate) mod rows;
pub(crate) mod terms;
pub mod twisted;

pub use bipoly::BiPoly;
pub use field::{Field, Fq};
pub use poly::{poly_arith, PolyJson, PolyOp, PolyOutput, UniPoly, Var};
pub use ratfun::RatFun;
pub use twisted::{TwistedJson, TwistedPoly};
