//! p-local lattices, orders in split semisimple algebras and duality.

mod ambient;
mod hnf;
mod order;

pub use ambient::{AlgElem, Ambient, Block, Center, Scalar, SymmElem};
pub use hnf::{idx, is_integral, Lattice};
pub use order::{BlockOrder, CanonicalOrder, CanonicalPiece, DecompMatrix};
