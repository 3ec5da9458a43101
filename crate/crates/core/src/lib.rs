//! Exact computations around Pontrjagin duality, Picard stack classification
//! data, group cohomology weights and topological T-duality of torus bundles.

pub mod acceptance;
pub mod error;
pub mod complexes;
pub mod extensions;
pub mod fgab;
pub mod groupcohomology;
pub mod json;
pub mod lca;
pub mod picard;
pub mod simplicial;
pub mod tduality;

pub use error::{Error, Result};
