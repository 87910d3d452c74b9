//! Exact computation with multiple polylogarithms at non-positive indices.
//!
//! Every `Li⁻_s(z) = Σ_{n1>…>nr>0} n1^s1 ⋯ nr^sr z^n1` is a rational function in
//! `ℚ[z, 1/(1−z)]`. This crate evaluates them exactly, relates them to the
//! Magnus polynomial basis of the free algebra `ℚ⟨x0, x1⟩`, and produces and
//! checks ℚ-linear functional equations among them.
//!
//! Module map:
//!
//! - [`words`]: multi-indices, words over `X = {x0, x1}` and `Y = {y0, y1, …}`,
//!   and the bijections between them.
//! - [`freealg`]: noncommutative polynomials with rational coefficients, the
//!   commutator bracket and the isomorphism `π: ℚ⟨X⟩x1 → ℚ⟨Y⟩`.
//! - [`magnus`]: Lie powers, Magnus polynomials and the (dual) array binomial
//!   coefficients relating them to monomials.
//! - [`ratpoly`]: the value ring, elements `P(z)/(1−z)^d` in canonical form.
//! - [`polylog`]: the linear map `Li⁻_•`, series oracles, product expansions
//!   and kernel elements.
//! - [`cli`]: the command-line front end.

pub mod cli;
pub mod error;
pub mod freealg;
pub mod magnus;
pub mod polylog;
pub mod rational;
pub mod ratpoly;
pub mod relation;
pub mod words;

pub use error::{Error, Result};
pub use freealg::NcPoly;
pub use magnus::{array_binom, dual_array_binom, lie_power, magnus_poly};
pub use polylog::{polylog_map, polylog_rational, LinComb, Permutation};
pub use ratpoly::RatFun;
pub use words::{Alphabet, Index, MagnusIndex, Word};
