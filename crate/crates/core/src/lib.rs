//! Numerical toolkit for tube functions and fractal zeta functions of
//! compact sets: exact constructions of the classical families, distance and
//! tube zeta evaluation as Dirichlet-type integrals, closed-form meromorphic
//! continuations with pole/residue data, and exact-arithmetic certification
//! of quasiperiodic unions.

pub mod checks;
pub mod contfrac;
pub mod dti;
pub mod error;
pub mod merom;
pub mod quad;
pub mod quasi;
pub mod sets;
pub mod spectrum;
pub mod tubes;
pub mod zeta;

pub use error::{Error, Result};
pub use merom::{ComplexDimensions, MeromorphicZeta, ZetaKind};
pub use sets::{FractalSet, GapTable, LengthModel};
pub use tubes::{ContentEstimate, TubeModel, TubeSource};
pub use zeta::{ZetaEvalConfig, ZetaValue};
