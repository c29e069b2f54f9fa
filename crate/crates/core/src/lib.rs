//! Exact lattice, polyhedral and Reid-Tai computations for toroidal
//! compactifications of Kuga varieties, and the slope based Kodaira
//! dimension decision procedure.

pub mod cones;
pub mod error;
pub mod exact;
pub mod reid_tai;
pub mod slope;

pub use cones::{Cone, Fan, LiftedPoint};
pub use error::{Error, Result};
pub use exact::{EigenProfile, IntMatrix, QuadForm, Rational, RootOfUnity};
pub use reid_tai::{GammaKind, StabilizerProfile, TangentSpectrum, UKind};
pub use slope::{DivisorClass, FourierSupport, KodairaKind, KodairaVerdict};

/// Crate version, echoed in certificates.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
