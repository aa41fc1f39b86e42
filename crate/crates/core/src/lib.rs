//! Finite projective geometry toolkit for cones over Baer subgeometries,
//! unitals, hyperovals and maximal arcs: field arithmetic, PG(n,q)
//! enumeration, canonical constructions, intersection spectra, and the
//! exact counting used to characterize sets of type `(a,b,c)`.

pub mod bitset;
pub mod counting;
pub mod error;
pub mod gf;
pub mod objects;
pub mod pg;
pub mod spectra;
pub mod verify;

pub use bitset::BitSet;
pub use counting::{
    c_rs, feasible_k, lemma_congruence, pencil_feasible, step_sign_check, t_closed_form, theorem_instance, theta,
    verify_identities, BaseDescriptor, Congruence, FeasibleK, KCondition, LemmaOutcome, SignReport, TheoremId,
    TheoremInstance, TypeParameters,
};
pub use error::{Error, Result};
pub use gf::{Elem, Field};
pub use objects::{ConeDescriptor, PointSet};
pub use pg::{Geometry, Subspace};
pub use spectra::{
    is_blocking, recognize_cone, spectrum, spectrum_with_workers, ConeRecognition, PencilProfile, Spectrum,
};
pub use verify::{verify_theorem, Check, VerifyReport};
