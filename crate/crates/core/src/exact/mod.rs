//! Exact integer and rational machinery shared by every other module.

pub mod lattice;
pub mod matrix;
pub mod poly;
pub mod profile;
pub mod quadform;
pub mod rational;
pub mod symplectic;

pub use matrix::IntMatrix;
pub use poly::{
    charpoly, cyclotomic_factor, cyclotomic_polynomial, CyclotomicFactorization, IntPoly,
};
pub use profile::{eigen_profile, EigenProfile, RootOfUnity};
pub use quadform::{is_psd, quad_min, rank_and_radical, QuadForm};
pub use rational::Rational;
pub use symplectic::{cocycle_check, fixed_point_eigen_check, is_symplectic};
