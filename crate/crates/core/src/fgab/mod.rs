//! Exact arithmetic on integer matrices and finitely generated abelian groups.

mod coeff;
pub mod functors;
pub mod group;
pub mod lattice;
pub mod map;
pub mod matrix;
pub mod presentation;
pub mod random;
pub mod snf;
pub mod subquotient;

pub use functors::{ext1, hom, lambda, lambda2, lambda3, tensor, tor};
pub use group::FgAb;
pub use map::{homology_at, is_exact, is_short_exact, FgAbMap, Quotient, Subgroup};
pub use matrix::IntMatrix;
pub use presentation::{BlockSum, Presentation};
pub use snf::{invariant_factors, smith_normal_form, SmithForm};
pub use subquotient::Subquotient;

pub type Int = num_bigint::BigInt;

/// Shorthand for small integer literals.
pub fn int(x: i64) -> Int {
    Int::from(x)
}

pub fn ints(xs: &[i64]) -> Vec<Int> {
    xs.iter().map(|&x| Int::from(x)).collect()
}
