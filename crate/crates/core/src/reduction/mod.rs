//! Reductions between β-optimal arrangements and β-optimal linear
//! reassemblings through auxiliary graphs, and the cutwidth reduction for
//! graphs of maximum degree three.

mod auxiliary;
mod drivers;
mod sequence;

pub use auxiliary::{edge_bound, AuxiliaryGraph};
pub use drivers::{
    alpha_reassembling_from_arrangement, reduce_alpha, reduce_beta, AlphaBranch, AlphaReduction,
    AnchorBeta, BalanceChecks, BestAnchor, BetaReduction, Direction,
};
pub use sequence::{vc_sequence, RebalanceCase, VCSequence};
