//! Reid-Tai ages of boundary stabilizers, profile scans and the
//! canonical-singularity certificate.

pub mod certify;
pub mod scan;
pub mod spectrum;

pub use certify::{certify, certify_with, Certificate, CertifyParams};
pub use scan::{
    interior_singularity_table, rt_scan, u_nontrivial_bound_check, InteriorVerdict, ScanRecord,
    ScanReport,
};
pub use spectrum::{
    age, assemble_spectrum, is_quasireflection, min_age, AgeReport, GammaKind, StabilizerProfile,
    TangentSpectrum, UKind,
};
