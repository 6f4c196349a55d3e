//! Named counting sequences, each computed by its own formula so that the
//! results can be checked against [`crate::riordan`] and
//! [`crate::permcore`].

pub mod derangements;
pub mod howard;
pub mod inverse;
pub mod stirling_b;
pub mod type_a;

pub use derangements::{d_asym, d_egf, d_explicit, d_poly, d_rec, d_table, RPolynomial};
pub use howard::{howard_check, HowardVariant};
pub use inverse::{inverse_triangle_rec, inverse_triangle_table, lattice_s, tree_count, tree_counts};
pub use stirling_b::{
    diagonals, lah, par_ge, par_le, triangle_ge2_rec, triangle_gem_rec, StirlingBRecurrence,
};
pub use type_a::{incomplete_factorial, stirling_a, typeb_factorial_conv};
