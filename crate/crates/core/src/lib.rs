//! Binary quantum state discrimination compared against preparation-noncontextual
//! models.
//!
//! * [`qtheory`]: qubit states, POVMs and the minimum-error, unambiguous and
//!   maximum-confidence constructions.
//! * [`ncmodel`]: the four-region ontological model with its vertex oracles.
//! * [`bounds`]: closed forms for each scheme and figure of merit, and gap certificates.
//! * [`harness`]: sweeps, figure CSVs and the verification run used by the `ctxsd` binary.

pub mod bounds;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod ncmodel;
pub mod qtheory;
pub mod tolerance;

pub use error::{Error, Result};
pub use tolerance::Tolerances;
