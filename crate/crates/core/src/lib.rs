extern crate blas_src;

pub mod acceptance;
pub mod basis;
pub mod cli;
pub mod drive;
pub mod error;
pub mod fpt;
pub mod hamiltonians;
pub mod linalg;
pub mod observables;
pub mod symmetry;
pub mod xxzmap;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
