//! De Bruijn and Kautz digraphs, local arc rewirings that preserve their
//! characteristic polynomial, and exact tools to verify it.
//!
//! Everything spectral runs over arbitrary-precision integers: no floating
//! point is involved anywhere, so cospectrality results are proofs, not
//! approximations. The crate revolves around a few pieces:
//!
//! * [`families`] builds the classical iterated line digraphs.
//! * [`modify`] rewires arcs inside a locally line-digraph block and
//!   validates the conditions under which the spectrum cannot change.
//! * [`spectral`] computes characteristic polynomials, integer spectra, and
//!   the matrix reachability equations these families satisfy.
//! * [`iso`] decides isomorphism two independent ways and produces
//!   relabeling-invariant certificates.
//! * [`enumerate`] exhaustively lists all digraphs with a unique-walk
//!   property at small orders and sweeps whole rewiring families.
//!
//! The `examples/` directory is the guided tour: each example is a runnable
//! walk through one capability, starting from `generate_families` and ending
//! at `enumerate_classes`. The `cospectra` binary exposes the same
//! operations for shell pipelines.

pub mod digraph;
pub mod enumerate;
pub mod families;
pub mod format;
pub mod iso;
pub mod matrix;
pub mod modify;
pub mod spectral;

pub mod cli;

pub use digraph::{CycleCensus, Digraph, DigraphError, VertexWord};
pub use enumerate::{
    enumerate_upp, enumerate_upp_jobs, perm_sweep, EnumerateError, PermSweepClass,
    PermSweepReport, SearchMode, SearchSpec,
};
pub use families::{de_bruijn, kautz};
pub use format::{
    graph_from_json, graph_to_dot, graph_to_json, plan_from_json, plan_to_json,
    spectrum_from_json, spectrum_to_json, FormatError,
};
pub use iso::{
    canonical_form, invariant_vector, isomorphic, CanonicalForm, InvariantVector, IsoError,
    VertexInvariant, MAX_VERTICES,
};
pub use matrix::{BitMatrix, IntMatrix};
pub use modify::{
    converse_modify, de_bruijn_permutation_modify, de_bruijn_permutation_plan, double_modify,
    find_local_line_sets, random_modification, LocalLineSet, Modification, ModifyError,
    PermutationFamily, Side, ValidationReport,
};
pub use spectral::{
    char_poly, check_reachability_equation, cospectral, integer_spectrum,
    verify_polynomial_identity, zero_multiplicity, CharPoly, IntSpectrum, ReachabilityKind,
};
