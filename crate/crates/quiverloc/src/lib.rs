//! Locality sets, quivers and the constructions relating them.
//!
//! A locality set is a finite carrier with a binary relation listing the
//! composable pairs; a quiver is a finite directed multigraph. The crate
//! implements the two translations between them (arrows with
//! target-meets-source on one side, endpoint classes on the other), the
//! regular hull and the full cover they induce, the path semigroup of a
//! quiver with its partial concatenation, the reduced path algebra over
//! exact rationals, and the extension of a generator map into any fine
//! partial semigroup.
//!
//! Everything is verified at desk scale: brute-force enumerators and an
//! independent saturation oracle live in [`oracle`], and
//! [`correspondence::verify_roundtrips`] checks the projection laws
//! exhaustively on small carriers. The `quiverloc` binary exposes the
//! same functionality over line-oriented documents.

pub mod algebra;
pub mod cli;
pub mod correspondence;
pub mod document;
pub mod dot;
pub mod error;
pub mod locality;
pub mod oracle;
pub mod path;
pub mod quiver;
pub mod semigroup;
mod union_find;

pub use algebra::{AlgebraElement, Coefficient};
pub use correspondence::{
    canonical_iso, endpoint_classes, full_cover, locality_of_quiver, quiver_of_locality,
    regular_hull, verify_roundtrips, EndpointClass, FullCoverResult, RoundtripReport,
};
pub use document::{parse_document, serialize_document, Document};
pub use dot::emit_dot;
pub use error::{Error, Result};
pub use locality::{Label, LocalityMapWitness, LocalitySet};
pub use oracle::{
    brute_regular_hull, enumerate_fine_semigroups, enumerate_locality_sets, enumerate_quivers,
    EnumerationBudget,
};
pub use path::{check_path_semigroup_fine, enumerate_paths, Path};
pub use quiver::{Arrow, Quiver, QuiverHom, QuiverId};
pub use semigroup::{free_extension, verify_freeness, FinitePartialSemigroup, FreenessReport};
