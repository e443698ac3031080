pub mod dyadic_rm;
pub mod error;
pub mod experiments;
pub mod fft;
pub mod kernels;
pub mod numeric;
pub mod oscillation;
pub mod spectral;

pub use error::{Error, Result};
