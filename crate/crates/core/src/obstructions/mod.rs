//! Certificates that a binomial is not sos-testable: the degree functional
//! `L`, the square-difference vectors `m(A, B)`, trivial squares, the
//! counting obstruction with its LP cross-check and principal-minor
//! refutations of density points.

pub mod counting;
pub mod degree;
pub mod minors;
pub mod pairs;
pub mod trivial;

pub use counting::{check_preconditions, counting_obstruction, infer_p, Conclusion, ObstructionReport, Preconditions};
pub use degree::{g_eval, l_value, y_pairing, y_vector, YVector};
pub use minors::{
    edge_triangle_fixed, minor_certificate, minor_constraints, MinorCertificate, MinorConstraint, MinorVerdict,
};
pub use pairs::{copy_bound_check, copy_bound_verdict, m_sparse, m_vector, pair_stats, CopyBoundVerdict, PairStats};
pub use trivial::{is_trivial_square, square_root_witness};
