//! Sum-of-squares certificates: exact verification, numeric search with
//! exact rounding, and the two built-in proofs.

mod builtin;
mod certificate;
mod psd;
mod sdp;
mod search;
mod verify;

pub use builtin::{goodman_certificate, mantel_certificate, prove_goodman, prove_mantel};
pub use certificate::{AssumptionTerm, Certificate, Direction, SosBlock, Target};
pub use psd::{ldl, psd_check_exact, Ldl, RationalMatrix};
pub use sdp::{solve as solve_sdp, SdpConstraint, SdpProblem, SdpSolution};
pub use search::{block_flags, search_certificate, SearchConfig};
pub use verify::{expand_block, square_form, verify_certificate, StepKind, TraceStep, Verdict};
