//! Unitary submatrices of the discrete Fourier matrix on `Z_N`: orthogonal
//! sampling sets, convolution idempotents, digit-tables, counting, difference
//! graphs and tilings, all decided with exact arithmetic.

pub mod bounds;
pub mod combin;
pub mod counting;
pub mod digit_table;
pub mod error;
pub mod graph;
pub mod idempotent;
pub mod poly;
pub mod sampling;
pub mod tiling;
pub mod zn;

pub use bounds::SearchBounds;
pub use digit_table::DigitTable;
pub use error::{Error, Result};
pub use idempotent::Idempotent;
pub use poly::{cyclotomic, IntPolynomial};
pub use zn::{DivisorSet, IndexSet, Modulus};
