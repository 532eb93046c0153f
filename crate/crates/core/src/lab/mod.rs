//! Algebras over prime fields, complexes of projectives, and the tilting
//! checks behind a reflection.

pub mod algebra;
pub mod complex;
pub mod module;
pub mod presentation;
pub mod samples;
pub mod verify;

pub use algebra::{build_algebra, AlgebraError, AlgebraTable, Element, PathClass};
pub use complex::{hom_dim, ChainMap, ComplexError, HomSpace, ProjComplex};
pub use module::ModuleRep;
pub use presentation::{injective_presentation, tilting_complex, InjectivePresentation, PresentationError, Summand, TiltingComplex};
pub use verify::{verify_algebra, verify_many, verify_many_sequential, verify_reflection, VerificationReport, VerifyError, Witness, WitnessKind};
