//! Kontsevich graph complexes: generation, differentials, ranks over prime
//! fields and cohomology tables.

pub mod cohomology;
pub mod complex;
pub mod graphs;
pub mod kneissler;
pub mod linalg;
