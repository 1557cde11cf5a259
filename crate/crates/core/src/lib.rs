pub mod circuit;
pub mod hnf;
pub mod linrel;
pub mod matrix;
pub mod num;
pub mod sample;
pub mod semantics;
pub mod span;
pub mod theory;

pub use circuit::{Circuit, Gen, Interface};
pub use linrel::{LinRel, Subspace};
pub use matrix::{MatQ, MatZ, Matrix};
pub use num::{Int, Rat};
pub use span::{CospanZ, SpanZ};
