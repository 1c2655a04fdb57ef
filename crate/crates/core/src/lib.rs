//! Boothby-Wang contact structures on simply-connected 5-manifolds.
//!
//! Given a closed simply-connected symplectic 4-manifold `M` with an integral,
//! indivisible symplectic class, the circle bundle `X -> M` with that Euler
//! class carries a contact structure `xi`. This crate computes, from the
//! second-cohomology data of `M` alone:
//!
//! * the diffeomorphism type of `X` and the level of `xi` (the divisibility
//!   of `c1(xi)`), see [`manifolds`];
//! * the generator degrees of the contact-homology algebra and their residue
//!   classes, see [`algebra`];
//! * whether two such algebras on the same level are isomorphic, with an
//!   explicit witness or a distinguishing residue class, see [`isomorphism`];
//! * lower bounds on the number of inequivalent contact structures per level
//!   from a catalog of 4-manifolds with divisible canonical class, see
//!   [`geography`].
//!
//! All of it rests on exact integer linear algebra in [`lattice`].

pub mod algebra;
pub mod cli;
pub mod corpus;
pub mod geography;
pub mod isomorphism;
pub mod lattice;
pub mod manifolds;
pub mod report;
pub mod selftest;

use std::path::PathBuf;

use thiserror::Error;

pub use algebra::{DegreeSpectrum, GeneratorIndex, QbStatus, ResidueClassTable};
pub use geography::{Catalog, CountReport, GeographyEntry};
pub use isomorphism::{Decision, IsomorphismReport};
pub use lattice::{AdaptedBasis, Covector, IntVector};
pub use manifolds::{FiveManifoldContact, SymplecticFourManifoldDescriptor, ValidatedDescriptor};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Lattice(#[from] lattice::LatticeError),
    #[error(transparent)]
    Validation(#[from] manifolds::ValidationError),
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
    #[error(transparent)]
    Isomorphism(#[from] isomorphism::IsomorphismError),
    #[error(transparent)]
    Geography(#[from] geography::GeographyError),
    #[error("{path}: {source}")]
    Catalog {
        path: PathBuf,
        source: geography::CatalogLoadError,
    },
    #[error("{path}: malformed descriptor: {source}")]
    Descriptor {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{0} self-test suite(s) failed")]
    SelftestFailed(usize),
}

impl Error {
    /// Short stable identifier for machine-readable error lines.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Lattice(_) => "lattice",
            Error::Validation(e) => e.code(),
            Error::Algebra(_) => "algebra",
            Error::Isomorphism(_) => "isomorphism",
            Error::Geography(_) => "geography",
            Error::Catalog { .. } => "catalog",
            Error::Descriptor { .. } => "malformed_descriptor",
            Error::Io { .. } => "io",
            Error::Usage(_) => "usage",
            Error::SelftestFailed(_) => "selftest_failed",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Validate and classify in one step.
pub fn classify(desc: SymplecticFourManifoldDescriptor) -> Result<(ValidatedDescriptor, FiveManifoldContact)> {
    let validated = desc.validate()?;
    let contact = manifolds::boothby_wang(&validated)?;
    Ok((validated, contact))
}
