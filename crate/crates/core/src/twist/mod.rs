//! Twisted convolution on the predual and the Heisenberg operator calculus.

pub mod convolve;
pub mod grid;
pub mod group;
pub mod heisenberg;
pub mod symbols;

pub use convolve::{delta_action, twisted_convolve, twisted_convolve_direct};
pub use grid::{Evaluator, Grid, SampledSymbol};
pub use group::PredualGroup;
pub use heisenberg::{
    ccr_phase_check, line_gaussian, verify_pedersen_identities, DiscretizedOperator, PedersenCalculus,
    PedersenResiduals,
};
