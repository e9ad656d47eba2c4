//! Standard-form self-dual lifts of the blocks of `F_q Δ₂(q)`, and the
//! conjectural basic order of `SL₂(2^f)`.

mod mtable;
mod nebe;
mod normalize;
mod params;
mod standard;
mod verify;

pub use mtable::{carries, digits, m_table, word_orderings, MTable};
pub use nebe::{nebe_order, nebe_u, verify_nebe};
pub use normalize::{conjugate, normalize, principal_generator, random_ext_element, rotate, roundtrip_report};
pub use params::{index_scale, kappa, LiftParams, Variant};
pub use standard::{
    diagonal_piece, ext_colon, ext_product, lift_data, order_from_pieces, path_lattice, standard_lift, LiftData,
};
pub use verify::verify_lift;

#[cfg(test)]
mod tests;
