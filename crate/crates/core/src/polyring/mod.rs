//! Exact arithmetic substrate: sparse Laurent polynomials over big
//! integers, factored rational functions, symmetric reduction and the
//! substitution homomorphisms.

mod parse;
mod poly;
mod psi;
mod ratfn;
mod symmetric;
mod table;

pub use parse::{parse_polynomial, parse_rational};
pub use poly::{LaurentPolynomial, Monomial};
pub use psi::{psi_hat, ElementarySymbols};
pub use ratfn::{substitute_poly, Factor, RationalFunction};
pub use symmetric::{block_symmetric, elementary_expand, elementary_reduce};
pub use table::{SeedTable, VarRole, VariableTable};
pub(crate) use table::is_identifier;
