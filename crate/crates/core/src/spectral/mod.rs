//! Discrete-torus Fourier model: rational frequency sets, rectangle
//! multipliers, and the operators built from them.

pub mod freq;
pub mod grid;
pub mod masks;
pub mod norm;
pub mod operators;
pub mod periodized;

pub use freq::{check_separation, gen_rationals, FrequencySet};
pub use grid::{Spectrum2, TorusGrid2};
pub use masks::{apply_multiplier, build_masks, BinMask, MaskFamily};
pub use norm::{norm_estimate, NormEstimate, OperatorMode};
pub use operators::{maximal_op, osc_op, square_functions, variation_sums, VariationBounds};
pub use periodized::{periodized_bound_test, PeriodizedReport};
