//! Supports of Fourier expansions and the resulting vanishing orders.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exact::quadform::{is_psd, quad_min};
use crate::exact::rational::int;
use crate::exact::{QuadForm, Rational};

/// Indices `T` with nonzero Fourier coefficient: even integral symmetric
/// matrices of size `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSupport")]
pub struct FourierSupport {
    pub g: usize,
    pub matrices: Vec<QuadForm>,
}

#[derive(Deserialize)]
struct RawSupport {
    g: usize,
    matrices: Vec<QuadForm>,
}

impl TryFrom<RawSupport> for FourierSupport {
    type Error = Error;
    fn try_from(r: RawSupport) -> Result<Self> {
        FourierSupport::new(r.g, r.matrices)
    }
}

impl FourierSupport {
    pub fn new(g: usize, matrices: Vec<QuadForm>) -> Result<Self> {
        if matrices.is_empty() {
            return Err(invalid("empty Fourier support"));
        }
        for t in &matrices {
            if t.dim() != g {
                return Err(invalid(format!(
                    "support matrix of size {} in genus {g}",
                    t.dim()
                )));
            }
            if !t.is_even() {
                return Err(invalid("support matrices need an even diagonal"));
            }
        }
        Ok(Self { g, matrices })
    }
}

/// `min_T min_{x ≠ 0} xᵗTx / 2` over the support.
pub fn vanishing_order(s: &FourierSupport) -> Result<Rational> {
    let mut best: Option<Rational> = None;
    for t in &s.matrices {
        if !is_psd(t) {
            return Err(invalid("support matrix is not positive semi-definite"));
        }
        let (m, _) = quad_min(t)?;
        let v = Rational::from_integer(m) / int(2);
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    }
    best.ok_or_else(|| invalid("empty Fourier support"))
}

/// `weight / vanishing_order` for a cusp form.
pub fn cusp_form_slope(weight: u32, s: &FourierSupport) -> Result<Rational> {
    let b = vanishing_order(s)?;
    if b == int(0) {
        return Err(Error::NotCuspForm);
    }
    Ok(int(weight as i64) / b)
}
