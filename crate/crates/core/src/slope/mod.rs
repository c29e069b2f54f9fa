//! Divisor classes and slopes on the partial compactification, vanishing
//! orders of Fourier supports, and Kodaira dimensions of Kuga varieties.

pub mod classes;
pub mod fourier;
pub mod kodaira;

pub use classes::{
    n0_prime_class, s_min_record, slope, theta_null_class, Achiever, DivisorClass, SlopeRecord,
};
pub use fourier::{cusp_form_slope, vanishing_order, FourierSupport};
pub use kodaira::{
    kdim_table, kodaira_dimension, KdimTable, KodairaKind, KodairaVerdict, RuleStep,
};
