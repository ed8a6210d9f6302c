//! Shared numerical kernels: grid storage, differentiation, interpolation,
//! quadrature, root finding, and log-log slope fits.

pub mod diff;
pub mod field;
pub mod fit;
pub mod gridops;
pub mod interp;
pub mod quad;
pub mod rootfind;

pub use diff::{centered4_periodic, fd_weights, spectral_derivative};
pub use field::Field2;
pub use fit::{loglog_fit, LogLogFit};
pub use interp::{cubic_interp_clamped, cubic_interp_periodic, Bicubic};
pub use quad::{cumint_cubic, gauss_legendre, integrate_cubic};
pub use rootfind::bracketed_root;
