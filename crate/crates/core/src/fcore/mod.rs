//! Grids, sampled functions, quadrature and inner products.

mod dataset;
mod grid;
mod io;
mod poly;
mod quadrature;

pub use dataset::FunctionalDataset;
pub use grid::{inner_product, l2_norm_sq, DomainMap, Grid};
pub use io::{read_dataset_csv, read_dataset_file, write_dataset_csv, write_dataset_file};
pub use poly::{exact_poly_inner_product, PiecewisePoly, PiecewisePolynomial, MAX_POLY_DEGREE};
pub use quadrature::QuadratureRule;
