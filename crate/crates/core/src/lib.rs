//! Computational toolkit for quivers with relations: path-algebra bases, string modules,
//! syzygies, projective dimension, interval decompositions, and the family of special
//! biserial algebras `Λ_m(r)` together with their named modules.

pub mod decomp;
pub mod homology;
pub mod linalg;
pub mod paperlab;
pub mod presentation;
pub mod repcore;
