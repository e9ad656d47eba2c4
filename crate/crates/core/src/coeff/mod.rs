//! Exact scalars: finite fields `F_{p^f}`, rationals carrying a `p`-adic
//! valuation, and the ramified quadratic extension `K(pi)` with `pi^2 = d p`.

mod field;
mod quad;
mod rational;

pub use field::{is_prime, CharIdx, Field, FieldElem};
pub use quad::QuadElem;
pub use rational::{
    canonical_residue, parse_rat, pow_p, rat, rat_to_string, unit_part, vp, vp_int, PLocalRat,
    Rat,
};
