//! Exact nilpotent Lie algebra computations, polynomial group cocycles,
//! twisted convolution with the Heisenberg operator calculus, and a twisted
//! Calderón-Zygmund decomposition.

pub mod catalog;
pub mod cz;
pub mod error;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod orbit;
mod par;
pub mod poly;
pub mod rational;
pub mod report;
pub mod seed;
pub mod symplectic;
pub mod twist;

pub use error::{Error, Result};
pub use lie::LieAlgebra;
pub use rational::Rational;
