//! Closed subgroups of the complex plane.

pub mod closure;
pub mod eisenstein;
pub mod invariants;
pub mod limit;
pub mod reduce;
pub mod subgroup;

pub use closure::{closure_of_generators, RationalClosure};
pub use eisenstein::{eisenstein_invariants, g2g3, Eisenstein, EisensteinMode};
pub use invariants::{coarea, lattice_invariants, ExtReal, LatticeInvariants};
pub use limit::{classify_limit_c, LimitReport, LimitThresholds, LimitVerdict};
pub use reduce::{reduce_basis, reduce_with_transform, LatticeBasis};
pub use subgroup::{dual, membership_c, sample_ball_c, scale_action, SubgroupC};
