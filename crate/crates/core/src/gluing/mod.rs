//! The gluing algebra of partially labeled graphs and the tropical moment
//! matrix built from it.

pub mod basis;
pub mod combination;
pub mod labeled;
pub mod moment;

pub use basis::{default_label_budget, enumerate_basis, Basis, BasisKind, GraphBasis};
pub use combination::{eval_combination, square_expand, GraphCombination, LabeledCombination};
pub use labeled::{glue, LabeledGraph};
pub use moment::{alpha_vector, moment_matrix, moment_matrix_auto, ExponentVector, MomentMatrix, Monomial};
