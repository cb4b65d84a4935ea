//! Exact computation of Bianchi polyhedron floors over imaginary quadratic
//! orders: Swan numbers, curvature bounds, a Jacobsthal-type sieve function,
//! singular points, and the supporting Diophantine machinery. All predicates
//! are exact; floating point appears only in rendering and spatial indexing.

pub mod bounds;
pub mod diophantine;
pub mod exact;
pub mod jacobsthal;
pub mod qfield;
pub mod swan;
