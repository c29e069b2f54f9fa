//! Classes `aλ − bδ` and the minimal slope table.

use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{display, int, pq_string, rat};
use crate::exact::Rational;

/// The class `lambda_coeff·λ − delta_coeff·δ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorClass {
    #[serde(with = "pq_string")]
    pub lambda_coeff: Rational,
    #[serde(with = "pq_string")]
    pub delta_coeff: Rational,
}

impl DivisorClass {
    pub fn new(lambda_coeff: Rational, delta_coeff: Rational) -> Self {
        Self {
            lambda_coeff,
            delta_coeff,
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.delta_coeff.is_negative() {
            "+"
        } else {
            "-"
        };
        write!(
            f,
            "{}*lambda {sign} {}*delta",
            display(&self.lambda_coeff),
            display(&self.delta_coeff.abs())
        )
    }
}

/// `2^e` for a possibly negative exponent.
fn pow2(e: i64) -> Rational {
    if e >= 0 {
        int(1 << e)
    } else {
        rat(1, 1 << -e)
    }
}

fn factorial(k: u64) -> i64 {
    (1..=k as i64).product()
}

/// `2^{g−2}(2^g+1)λ − 2^{2g−5}δ`.
pub fn theta_null_class(g: u32) -> Result<DivisorClass> {
    if g == 0 || g > 28 {
        return Err(Error::OutOfRange(format!("theta-null class for g = {g}")));
    }
    let g = g as i64;
    Ok(DivisorClass::new(
        pow2(g - 2) * int((1 << g) + 1),
        pow2(2 * g - 5),
    ))
}

/// Class of the second Andreotti-Mayer component, defined for `g >= 4`.
pub fn n0_prime_class(g: u32) -> Result<DivisorClass> {
    if !(4..=18).contains(&g) {
        return Err(Error::OutOfRange(format!(
            "N0' class is only available for 4 <= g <= 18, got {g}"
        )));
    }
    let gi = g as i64;
    let a = rat(factorial(g as u64 + 1), 4) + rat(factorial(g as u64), 2)
        - pow2(gi - 3) * int((1 << gi) + 1);
    let b = rat(factorial(g as u64 + 1), 24) - pow2(2 * gi - 6);
    Ok(DivisorClass::new(a, b))
}

/// `a/b` for an effective class with both coefficients positive.
pub fn slope(d: &DivisorClass) -> Result<Rational> {
    if !d.lambda_coeff.is_positive() || !d.delta_coeff.is_positive() {
        return Err(Error::NotEffective(d.to_string()));
    }
    Ok(&d.lambda_coeff / &d.delta_coeff)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Achiever {
    ThetaNull,
    N0Prime,
    External,
}

/// Known value of the minimal slope of effective divisors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeRecord {
    pub g: u32,
    #[serde(with = "pq_string")]
    pub value: Rational,
    pub is_upper_bound_only: bool,
    pub achieved_by: Achiever,
    pub minimizer_rigid: bool,
    /// Slope of the `N0'` class when `value` is only a bound.
    #[serde(
        serialize_with = "pq_string::serialize_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub secondary: Option<Rational>,
}

pub fn s_min_record(g: u32) -> Result<SlopeRecord> {
    let exact = |g, achieved_by, class: DivisorClass| -> Result<SlopeRecord> {
        Ok(SlopeRecord {
            g,
            value: slope(&class)?,
            is_upper_bound_only: false,
            achieved_by,
            minimizer_rigid: true,
            secondary: None,
        })
    };
    match g {
        0 => Err(Error::OutOfRange("g must be at least 1".into())),
        1..=3 => exact(g, Achiever::ThetaNull, theta_null_class(g)?),
        4 | 5 => exact(g, Achiever::N0Prime, n0_prime_class(g)?),
        6 => Ok(SlopeRecord {
            g,
            value: int(7),
            is_upper_bound_only: true,
            achieved_by: Achiever::External,
            minimizer_rigid: false,
            secondary: Some(slope(&n0_prime_class(6)?)?),
        }),
        _ => Err(Error::Unknown(format!(
            "minimal slope for g = {g} is not tabulated"
        ))),
    }
}

impl SlopeRecord {
    /// The value used in slope comparisons: the `N0'` bound for `g = 6`.
    pub fn comparison_value(&self) -> &Rational {
        self.secondary.as_ref().unwrap_or(&self.value)
    }
}
