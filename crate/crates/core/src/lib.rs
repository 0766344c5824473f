//! Spectral spaces, dimension functions and the support-level model of
//! local-to-global filtrations.
//!
//! * [`ordinal`]: ordinals below ω^ω in Cantor normal form.
//! * [`space`]: finite T0 spaces, ordinal spaces and a Cantor marker, with
//!   closure, Thomason, proconstructible and visibility predicates.
//! * [`dimfn`]: dimension functions, Krull dimension and Cantor–Bendixson
//!   rank, axiom and compatibility checks.
//! * [`ltg`]: support operators and the staged filtration of a support.
//! * [`stone`]: spectra of absolutely flat rings given by Boolean
//!   presentations, and the subset/localising-subcategory correspondence for
//!   finite products of fields.
//! * [`cli`]: the `ttg` command line.

pub mod cli;
pub mod dimfn;
pub mod ltg;
pub mod ordinal;
pub mod space;
pub mod stone;

pub use ordinal::{Ordinal, OrdinalClass, OrdinalError};
pub use space::{
    FiniteSpace, OrdinalSet, OrdinalSpace, PointId, PointSet, Space, SpaceError, SpaceView,
    SubsetHandle,
};
