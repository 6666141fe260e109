#![no_std]
extern crate alloc;

pub mod bounds;
pub mod complementarity;
pub mod dims;
pub mod families;
pub mod error;
pub mod flip;
pub mod linalg;
pub mod random;
pub mod state;
pub mod tol;
pub mod tripartite;

pub use dims::{Dims, MultiIndex};
pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector};
pub use num_complex::Complex64;
pub use state::{DensityMatrix, StateVector};
