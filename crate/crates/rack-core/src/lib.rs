//! Finite racks and the collapse machinery for conjugacy classes of
//! symmetric and alternating groups.
//!
//! The library is organized around verifiable certificates: every positive
//! "type D" answer carries a witness `(Y = R ⊔ S, r, s)` that is re-checked
//! from scratch, and every negative answer states exactly which search space
//! was exhausted. All searches are deterministic ordered scans, so a run with
//! the same inputs and caps always produces byte-identical certificates.

pub mod abelian;
pub mod affine;
pub mod cocycle;
pub mod cyclotomic;
pub mod group;
pub mod perm;
pub mod rack;
pub mod reps;
pub mod typed;

pub use group::{Ambient, ConjClassSpec, GeneratedGroup, SplitPart};
pub use perm::{CycleType, Permutation};
pub use rack::FiniteRack;
pub use typed::{classify, Caps, TypeDWitness, Verdict};
