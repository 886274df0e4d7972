//! Z^d shifts of finite type: specifications, sublattices, torus fixed
//! points, count sequences and entropy estimates.

mod entropy;
mod lattice;
mod sequence;
mod spec;
mod torus;

pub use entropy::{box_pattern_count, entropy_box_estimate};
pub use lattice::{sublattices_of_index, sublattices_up_to, Sublattice};
pub use sequence::{periodic_count_sequence, periodically_equivalent, Equivalence};
pub use spec::{chessboard, full_shift, golden_mean, product_sft, Pattern, SftSpec, Symbol, MAX_PRODUCT_PATTERNS};
pub use torus::{count_fixed_points, fixed_points, FixedPoints, Mode, TorusConfiguration};
