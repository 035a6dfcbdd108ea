//! Conjugacy classes of SL(2,q) and the number of classes in their products.
//!
//! * [`field`]: GF(p^m) with integer-coded elements.
//! * [`matrix`]: 2x2 matrices of determinant one.
//! * [`classes`]: the class table, canonical labels and classification.
//! * [`product`]: `eta(A^S B^S)` and `min(G)`.
//! * [`checks`]: validators for the structural identities and bounds.

pub mod checks;
pub mod classes;
pub mod error;
pub mod field;
pub mod matrix;
pub mod product;

pub use checks::{run_suite, Check, CheckConfig, CheckResult, Fault};
pub use classes::{ClassEntry, ClassLabel, ClassTable, UClass};
pub use error::{Error, Result};
pub use field::{Elem, Field, FieldError, FieldParams, MAX_ORDER};
pub use matrix::{Mat2, MatrixError, MatrixLiteral, Sl2};
pub use product::{eta, min_g, EtaReport, MinEta, ProductSummary};
