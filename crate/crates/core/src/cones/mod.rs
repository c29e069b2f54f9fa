//! Cones of quadratic forms, their lifts, perfect cone fans and the fan
//! level checkers.

pub mod checks;
pub mod cone;
pub mod fan;
pub mod hull;
pub mod lifted;
pub mod lp;
pub mod perfect;
pub mod refine;
pub mod toric;

pub use cone::Cone;
pub use fan::Fan;
pub use lifted::{
    group_act, in_cone_c, in_cone_c_tilde, lifted_fan, rank1_lift_generators, LiftedPoint,
};
pub use perfect::perfect_cone_fan;
pub use refine::refine_to_smooth;
pub use toric::{toric_is_canonical, ToricReport, ToricVerdict};
