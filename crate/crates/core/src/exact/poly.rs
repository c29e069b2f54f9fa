//! Integer polynomials, characteristic polynomials and cyclotomic factoring.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::matrix::IntMatrix;
use crate::error::{invalid, Result};

/// Dense polynomial, coefficients stored lowest degree first. The zero
/// polynomial has no coefficients; otherwise the leading one is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(vec![]);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Division by a monic divisor. Returns `(quotient, remainder)`.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::new(vec![]), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_mag = !mag.is_one() || k == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Characteristic polynomial `det(x - m)` by the Faddeev-LeVerrier
/// recursion; every division is exact over the integers.
pub fn charpoly(m: &IntMatrix) -> Result<IntPoly> {
    if !m.is_square() {
        return Err(invalid("characteristic polynomial of a non-square matrix"));
    }
    let n = m.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut acc = IntMatrix::zeros(n, n);
    for k in 1..=n {
        // acc = m * acc_prev + c_{n-k+1} * I
        let mut next = m * &acc;
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        acc = next;
        let am = m * &acc;
        let trace: BigInt = (0..n).map(|i| am[(i, i)].clone()).sum();
        coeffs[n - k] = -(trace / BigInt::from(k));
    }
    Ok(IntPoly::new(coeffs))
}

/// Euler's totient.
pub fn totient(mut d: u64) -> u64 {
    let mut result = d;
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            while d.is_multiple_of(p) {
                d /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if d > 1 {
        result -= result / d;
    }
    result
}

/// The `d`-th cyclotomic polynomial, by dividing `x^d - 1` by every
/// `Φ_e` with `e | d`, `e < d`.
pub fn cyclotomic_polynomial(d: u64) -> IntPoly {
    assert!(d >= 1, "cyclotomic index must be positive");
    let mut coeffs = vec![BigInt::zero(); d as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[d as usize] = BigInt::one();
    let mut p = IntPoly::new(coeffs);
    for e in 1..d {
        if d.is_multiple_of(e) {
            let (q, r) = p.div_rem_monic(&cyclotomic_polynomial(e));
            debug_assert!(r.coeffs.is_empty());
            p = q;
        }
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicFactorization {
    /// Pairs `(d, multiplicity)` in increasing `d`.
    pub factors: Vec<(u64, usize)>,
    /// Cofactor left after removing every cyclotomic factor; `1` when the
    /// input is a product of cyclotomic polynomials.
    pub remainder: IntPoly,
}

impl CyclotomicFactorization {
    pub fn is_complete(&self) -> bool {
        self.remainder.is_one()
    }

    /// Least common multiple of the indices, i.e. the order of any torsion
    /// matrix with this characteristic polynomial.
    pub fn lcm(&self) -> u64 {
        self.factors.iter().fold(1, |acc, &(d, _)| acc.lcm(&d))
    }
}

/// Strips cyclotomic factors off a monic polynomial.
pub fn cyclotomic_factor(p: &IntPoly) -> Result<CyclotomicFactorization> {
    if !p.is_monic() {
        return Err(invalid("cyclotomic factoring needs a monic polynomial"));
    }
    let mut rest = p.clone();
    let mut factors = Vec::new();
    let mut d = 1u64;
    // phi(d) >= sqrt(d/2), so no index beyond 2 deg^2 can divide.
    loop {
        let deg = rest.degree().unwrap_or(0) as u64;
        if deg == 0 || d > 2 * deg * deg + 2 {
            break;
        }
        if totient(d) <= deg {
            let phi = cyclotomic_polynomial(d);
            let mut mult = 0;
            loop {
                let (q, r) = rest.div_rem_monic(&phi);
                if !r.coeffs.is_empty() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                factors.push((d, mult));
            }
        }
        d += 1;
    }
    Ok(CyclotomicFactorization {
        factors,
        remainder: rest,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(
            cyclotomic_polynomial(12),
            IntPoly::from_i64(&[1, 0, -1, 0, 1])
        );
        for d in 1..40 {
            assert_eq!(cyclotomic_polynomial(d).degree(), Some(totient(d) as usize));
        }
    }

    #[test]
    fn factoring() {
        let f = cyclotomic_factor(&IntPoly::from_i64(&[1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(4, 1)]);
        assert!(f.is_complete());
        let f = cyclotomic_factor(&IntPoly::from_i64(&[1, -2, 1])).unwrap();
        assert_eq!(f.factors, vec![(1, 2)]);
        let f = cyclotomic_factor(&IntPoly::from_i64(&[-2, 0, 1])).unwrap();
        assert!(f.factors.is_empty());
        assert_eq!(f.remainder, IntPoly::from_i64(&[-2, 0, 1]));
    }

    #[test]
    fn charpoly_of_rotation() {
        let m = IntMatrix::from_i64(&[&[0, -1], &[1, -1]]);
        assert_eq!(charpoly(&m).unwrap(), IntPoly::from_i64(&[1, 1, 1]));
        let m = IntMatrix::from_i64(&[&[2, 1, 0], &[0, 3, 4], &[1, 0, 1]]);
        // det(x - m) = x^3 - 6x^2 + 11x - 10
        assert_eq!(charpoly(&m).unwrap(), IntPoly::from_i64(&[-10, 11, -6, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64(&[-2, 0, 1]).to_string(), "x^2 - 2");
        assert_eq!(IntPoly::from_i64(&[1, -1, 1]).to_string(), "x^2 - x + 1");
    }
}
