//! nilflex-core: exact-arithmetic engine for the symplectic Hodge theory of
//! nilpotent Lie algebras.
//!
//! The crate computes Chevalley–Eilenberg cohomology of nilpotent Lie
//! algebras given by rational structure constants, classifies their
//! homogeneous symplectic forms through an exact nondegeneracy polynomial,
//! computes symplectically harmonic Betti numbers both via Lefschetz-map
//! ranks and via a direct harmonic-form computation, and certifies
//! flexibility (variation of those numbers across symplectic forms). All
//! arithmetic is exact: arbitrary-precision rationals and multivariate
//! polynomials over them.

pub mod algebra;
pub mod catalog;
pub mod cohomology;
pub mod error;
pub mod forms;
pub mod harmonic;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod report;
pub mod symplectic;

pub use algebra::{abelian, heisenberg3, kodaira_thurston, parse_spec, parse_spec_file, AlgebraSpec, NilpotentLieAlgebra};
pub use catalog::{catalog4, catalog6, expected_flexible, find_entry, run_catalog, run_entry, run_structure, verify_all, CatalogEntry, EntryReport, RunConfig, VerifySummary};
pub use cohomology::{CohomClass, CohomologyRing};
pub use error::{Error, Result};
pub use forms::{ComplexBasis, IndexMask, KForm};
pub use harmonic::{product_harmonic_betti, product_star_check, FixedSymplecticForm, HarmonicProfile, IdentityReport, ProductBetti, ProductCheck};
pub use matrix::{quotient_coordinates, Matrix, MinorWitness, QuotientMap};
pub use poly::{var_index, var_name, MultiPoly};
pub use rational::Rational;
pub use report::{emit, Format, Report, SCHEMA_VERSION};
pub use symplectic::{Constraint, FlexibilityCertificate, LefschetzMatrix, RankBetti, RankStratum, SampleConfig, SymplecticFamily, ThirdRank};
