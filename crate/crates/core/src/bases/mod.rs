//! Orthonormal bases on `[0, 1]`: piecewise constants, Fourier, and splinets
//! built from clamped B-splines.

mod bspline;
mod io;
mod knots;
mod ortho;
mod projection;
mod splinet;

pub use bspline::{eval_bspline, BsplineElement, BsplineFamily};
pub use io::{read_knots, read_knots_in, write_basis_csv, write_knots, write_knots_in};
pub use knots::KnotSet;
pub use ortho::{
    build_fourier, build_piecewise_constant, build_splinet, BasisElement, BasisKind, OrthoBasis,
};
pub use projection::{amse, project, reconstruct, SampledBasis};
pub use splinet::SplinetElement;
