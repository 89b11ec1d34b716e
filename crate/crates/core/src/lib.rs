pub mod error;
pub mod field;
pub mod groebner;
pub mod monomial;
pub mod poly;
pub mod ring;
pub mod ideal;
pub mod automorphism;
pub mod hilbert;
pub mod matrix;
pub mod module;
pub mod linalg;
pub mod invariants;
pub mod exterior;
