//! Archimedean special functions: exponential integral, Whittaker
//! functions, majorants, Kudla Green kernels, Gaussians, the secondary
//! spherical function and the radial Laplacian.

pub mod ei;
pub mod gamma;
pub mod geom;
pub mod hyper;

pub use ei::{exp_integral, EULER_GAMMA};
pub use gamma::{digamma, gamma};
pub use geom::{
    gaussian_weights, kudla_green_value, majorant, radial_laplacian, radial_laplacian_fd,
    whittaker, GreenConvention, RealQuadPoint,
};
pub use hyper::{gauss_2f1, secondary_spherical};
