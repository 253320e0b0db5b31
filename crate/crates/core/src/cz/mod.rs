//! Calderón–Zygmund theory for twisted convolution operators on the predual.

pub mod cover;
pub mod decompose;
pub mod kernel;
pub mod multiplier;
pub mod pseudo;
pub mod transference;

pub use cover::{cz_cover, Ball, BallGeometry, Covering};
pub use decompose::{cz_decompose, CZResult, DecompositionChecks};
pub use kernel::{
    hormander_twist_estimate, kernel_apply, truncated_power, weak11_empirical, weak11_scaling_check,
    HormanderEstimate, Weak11Level, Weak11Report,
};
pub use multiplier::{left_delta_action, lp_ratios, multiplier_check, superposition_convolve, MultiplierReport, SUPERPOSITION_CUTOFF};
pub use pseudo::{Calibration, PseudoDistance, CALIBRATION_RADII};
pub use transference::{angle, flat_map, proj_p, sharp_map, TorusGridFunction, DEFAULT_ANGLES};
