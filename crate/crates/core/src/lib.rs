//! Numerical invariants, spectra and cohomology tables of rank-2 torsion-free
//! sheaves on projective 3-space.
//!
//! Everything here works with numbers only: Chern classes, dimensions of
//! cohomology groups and the integer lists ("spectra") that control them.
//! No sheaf is ever represented as a module. The crate is split into
//!
//! * [`invariants`]: Euler characteristics, splitting types and the
//!   total-Chern-class oracle for resolutions,
//! * [`spectrum`]: the spectrum type, its numerical constraints and the
//!   exhaustive candidate enumerator,
//! * [`cohomology`]: spectrum to table and back,
//! * [`sheafcalc`]: building-block sheaves and a long-exact-sequence solver,
//! * [`workbench`]: the component catalog and the reports built on it.

pub mod cohomology;
pub mod error;
pub mod invariants;
pub mod sheafcalc;
pub mod spectrum;
pub mod workbench;

pub use cohomology::{CohomologyTable, Entry, TwistRange};
pub use error::{Error, Result};
pub use invariants::{ChernClasses, ChernSeries, SingularityProfile, SingularityType, SplittingType};
pub use sheafcalc::{Construction, MonadShape, SheafSymbol, ShortExactSequenceSpec, Term};
pub use spectrum::{ChainUpParam, Regime, Spectrum, SpectrumWithS};
pub use workbench::{Catalog, ComponentDescriptor, Family};
