//! Exact arithmetic for affine Weyl groups realized through their Shi
//! coefficients: alcove characterizations, the `Phi+`-representation, and the
//! decomposition of the Shi variety into irreducible components.

pub mod affine_weyl;
pub mod cli;
pub mod error;
mod linalg;
pub mod phi_rep;
pub mod plot;
pub mod root_system;
pub mod shi_characterization;
pub mod shi_variety;

pub use affine_weyl::{AffineElement, AffineWeylGroup, FiniteWeylElement, ShiVector, SignVector};
pub use error::{Error, Result};
pub use phi_rep::{AffineIsometry, PhiRepresentation};
pub use root_system::{CartanType, Family, Root, RootSystem};
pub use shi_characterization::{Criterion, ShiValidator};
pub use shi_variety::{AdmissibleVector, ComponentTable, EnumerationOptions, ShiVariety};
