//! Exact linear algebra on based vector spaces.

pub mod complex;
pub mod label;
pub mod linmap;
pub mod matrix;
pub mod rational;
pub mod space;
pub mod sparse;
pub mod subspace;

pub use complex::ComplexOfSpaces;
pub use label::Label;
pub use linmap::{kernel_image, LinMap};
pub use matrix::{Matrix, Rref};
pub use rational::Q;
pub use space::BasedSpace;
pub use sparse::{SparseComplex, SparseMatrix};
pub use subspace::{quotient_space, subspace_algebra, Subspace, SubspaceOp};
