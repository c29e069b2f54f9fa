//! Canonical-singularity certificate for a Namikawa compactification.

use serde::Serialize;

use super::scan::{
    interior_singularity_table, rt_scan, InteriorVerdict, ScanRecord, DEFAULT_D_MAX,
};
use crate::cones::checks::{check_lifted_fan, FanCheckReport};
use crate::cones::lifted::{base_fan, lifted_fan, lifted_representatives};
use crate::cones::perfect::perfect_cone_fan;
use crate::cones::Fan;
use crate::error::{invalid, Error, Result};
use crate::exact::rational::pq_string;
use crate::exact::Rational;

/// Representative fans over the principal cone grow like `3^n` for
/// `g'' = 2`; beyond this many cones a slice is reported as skipped.
pub const MAX_SLICE_CONES: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertifyParams {
    pub d_max: u64,
    /// Build windowed lifted fans instead of translation representatives.
    pub fan_window: Option<i64>,
    /// Boundary ranks `g''` to check fans for; defaults to `1..=min(2, g)`.
    pub slices: Option<Vec<usize>>,
}

impl Default for CertifyParams {
    fn default() -> Self {
        Self {
            d_max: DEFAULT_D_MAX,
            fan_window: None,
            slices: None,
        }
    }
}

/// Fan conditions for one boundary rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanSliceCheck {
    pub g_dd: usize,
    pub n: usize,
    pub source: String,
    pub cones: usize,
    pub skipped: bool,
    pub report: Option<FanCheckReport>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub profiles_scanned: usize,
    pub pass: bool,
    #[serde(with = "pq_string")]
    pub min_age: Rational,
    /// The bound `(g + n)/d` from the order argument is at least 1.
    pub proof_bound_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub version: String,
    pub g: usize,
    pub n: usize,
    pub pass: bool,
    pub interior: InteriorVerdict,
    /// Violations, quasireflections, the global minimum and the weakest
    /// proof bound, in that order.
    pub scan: Vec<ScanRecord>,
    pub scan_summary: ScanSummary,
    /// First record responsible for a failure, if any.
    pub witness: Option<ScanRecord>,
    pub fan_checks: Vec<FanSliceCheck>,
    pub params: CertifyParams,
}

/// Runs every check with default parameters.
pub fn certify(g: usize, n: usize) -> Result<Certificate> {
    certify_with(g, n, &CertifyParams::default())
}

pub fn certify_with(g: usize, n: usize, params: &CertifyParams) -> Result<Certificate> {
    if g < 2 || n < 1 {
        return Err(invalid("certify needs g >= 2 and n >= 1"));
    }
    let slices = match &params.slices {
        Some(s) => {
            if let Some(&bad) = s.iter().find(|&&k| k > 2) {
                return Err(Error::UnsupportedRank(bad));
            }
            if s.iter().any(|&k| k == 0 || k > g) {
                return Err(invalid(format!("slices must lie in 1..={g}")));
            }
            s.clone()
        }
        None => (1..=g.min(2)).collect(),
    };
    let interior = interior_singularity_table(g, n)?;
    let report = rt_scan(g, n, params.d_max)?;
    let proof_bound_ok = report.proof_bound_ok();

    let mut scan = report.violations.clone();
    scan.extend(report.quasireflections.iter().cloned());
    scan.push(report.minimum.clone());
    scan.extend(report.proof_bound_witness.iter().cloned());

    let witness = report.violations.first().cloned().or_else(|| {
        if proof_bound_ok {
            None
        } else {
            report.proof_bound_witness.clone()
        }
    });

    let fan_checks = slices
        .iter()
        .map(|&k| fan_slice(k, n, params.fan_window))
        .collect::<Result<Vec<_>>>()?;
    let pass = interior == InteriorVerdict::Canonical
        && report.pass
        && proof_bound_ok
        && fan_checks.iter().all(|c| c.pass || c.skipped);
    Ok(Certificate {
        version: crate::VERSION.to_string(),
        g,
        n,
        pass,
        interior,
        scan,
        scan_summary: ScanSummary {
            profiles_scanned: report.profiles_scanned,
            pass: report.pass,
            min_age: report.minimum.min_age.clone(),
            proof_bound_ok,
        },
        witness,
        fan_checks,
        params: params.clone(),
    })
}

fn slice_fans(g_dd: usize, n: usize, window: Option<i64>) -> Result<(Fan, Fan, String)> {
    Ok(match window {
        Some(w) => (
            lifted_fan(g_dd, n, w)?,
            base_fan(g_dd, w)?,
            format!("window {w}"),
        ),
        None => (
            lifted_representatives(g_dd, n)?,
            perfect_cone_fan(g_dd, 0)?,
            "representatives".to_string(),
        ),
    })
}

fn expected_cones(g_dd: usize, n: usize) -> usize {
    if g_dd == 1 {
        1
    } else {
        3usize.saturating_pow(n as u32)
    }
}

/// Lifted fan conditions for `g''` and `n`, with toric canonicity of
/// every cone.
pub fn fan_slice(g_dd: usize, n: usize, window: Option<i64>) -> Result<FanSliceCheck> {
    if window.is_none() && expected_cones(g_dd, n) > MAX_SLICE_CONES {
        return Ok(FanSliceCheck {
            g_dd,
            n,
            source: "representatives".to_string(),
            cones: expected_cones(g_dd, n),
            skipped: true,
            report: None,
            pass: false,
        });
    }
    let (tilde, base, source) = slice_fans(g_dd, n, window)?;
    let report = check_lifted_fan(&tilde, &base, g_dd, n)?;
    Ok(FanSliceCheck {
        g_dd,
        n,
        source,
        cones: tilde.len(),
        skipped: false,
        pass: report.pass,
        report: Some(report),
    })
}
