//! Exact arithmetic for the maximal order of an imaginary quadratic field:
//! elements, ideals, class representatives, lattice minima, singular
//! points, and Bezout solving.

mod algint;
mod bezout;
mod disc;
mod ideal;
mod singular;

pub use algint::{AlgInt, FieldElem, PlanePoint};
pub use bezout::{bezout_solve, reduce_mod, NotCoprime};
pub use disc::{fundamental_discs, Disc, DiscError};
pub use ideal::{
    class_number, class_representatives, gauss_reduce, has_element_of_norm, ideals_of_norm,
    is_coprime, minimal_ideals_in_class, prime_splitting, Ideal, IdealError, Splitting,
};
pub use singular::{canonical_point_rep, is_singular, singular_points};
