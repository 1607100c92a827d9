//! Exact decision procedures for when the averages
//!
//! ```text
//! μ_f^{a,b} = (1/n) Σ_{x ∈ Z_n} ω^{a·f(x) + b·x},   ω = e^{2πi/n}
//! ```
//!
//! are algebraic integers, for a function `f: Z_n → Z_n`.
//!
//! Linear functions `x ↦ αx + β` always qualify; for prime `n` they are the
//! only ones. The crate checks this exhaustively at small scale, scans
//! composite `n` for functions that qualify without being linear, and
//! classifies the perfect self-isometries of `C_p` induced by bijections of
//! its characters.
//!
//! All arithmetic is exact: elements of `Z[ω]` are integer vectors modulo
//! the cyclotomic polynomial, never floating-point approximations.
//!
//! Modules, bottom up:
//!
//! - [`cyclotomic`]: `Φ_n`, canonical elements of `Z[ω]`, divisibility and
//!   Galois conjugation.
//! - [`modfun`]: function tables, polynomials mod `n`, interpolation over
//!   `Z_p`, permutation tests and slope sets `W_f`.
//! - [`integrality`]: the sums themselves and their integrality.
//! - [`search`]: parallel exhaustive scans and their reports.
//! - [`isometry`]: characters of `C_p` and perfect isometries.
//! - [`cli`]: the `rootavg` command-line front end.

pub mod arith;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod integrality;
pub mod isometry;
pub mod modfun;
pub mod search;

pub use cyclotomic::{cyclotomic_poly, reduce, CycInt, CycPoly, CyclotomicRing, ExpSum};
pub use error::{Error, Result};
pub use integrality::{
    dichotomy_check, galois_equivariance_check, is_mu_integral, mu_numerator, passes_a1, passes_all, MuWitness,
};
pub use isometry::{
    character_table, classify_perfect, integrality_condition, is_perfect, mu_isometry, separation_condition,
    CyclicCharacterTable, IsometryReport,
};
pub use modfun::{degree, interpolate, stothers_holds, w_set, Degree, ModFunction, PolyModN, WSet};
pub use search::{
    enumerate_functions, shift_reduction_check, verify_conjecture, verify_stothers, verify_theorem, FunctionSpace,
    SearchConfig, SearchReport, StothersReport,
};
