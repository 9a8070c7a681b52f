//! Dense numerics: matrices, vectors, seeded Gaussian ensembles and the
//! incremental QR factorization behind every least-squares step.

mod io;
mod matrix;
mod qr;
mod rng;
mod vector;

pub use io::{read_matrix_csv, read_vector_csv, write_matrix_csv, write_vector_csv};
pub use matrix::DenseMatrix;
pub use qr::{ls_solve, qr_append_columns, residual, QrState, RANK_TOLERANCE};
pub use rng::{gaussian_sensing_matrix, GaussianStream};
pub use vector::{axpy, dot, norm2, DenseVector};
