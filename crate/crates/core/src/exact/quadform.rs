//! Integral quadratic forms: rank, radical, semidefiniteness and minima.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::lattice::{integer_kernel, sign_normalize, IntVec};
use super::matrix::IntMatrix;
use super::rational::Rational;
use crate::error::{invalid, Result};

/// Symmetric integer Gram matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "IntMatrix", into = "IntMatrix")]
pub struct QuadForm {
    matrix: IntMatrix,
}

impl TryFrom<IntMatrix> for QuadForm {
    type Error = crate::error::Error;
    fn try_from(m: IntMatrix) -> Result<Self> {
        Self::new(m)
    }
}

impl From<QuadForm> for IntMatrix {
    fn from(q: QuadForm) -> IntMatrix {
        q.matrix
    }
}

impl QuadForm {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if !matrix.is_symmetric() {
            return Err(invalid(
                "quadratic form matrix must be square and symmetric",
            ));
        }
        Ok(Self { matrix })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::new(IntMatrix::from_i64(rows)).expect("symmetric literal")
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        Self {
            matrix: IntMatrix::diagonal(entries),
        }
    }

    pub fn scaled_identity(n: usize, s: i64) -> Self {
        Self::diagonal(&vec![s; n])
    }

    /// The rank-one form `ξ ξᵗ`.
    pub fn rank_one(xi: &[BigInt]) -> Self {
        let n = xi.len();
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = &xi[i] * &xi[j];
            }
        }
        Self { matrix: m }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn eval(&self, x: &[BigInt]) -> BigInt {
        let mx = self.matrix.mul_vec(x).expect("vector of form dimension");
        x.iter().zip(&mx).map(|(a, b)| a * b).sum()
    }

    /// Pullback `hᵗ q h`.
    pub fn pullback(&self, h: &IntMatrix) -> Result<Self> {
        let m = h.transpose().checked_mul(&self.matrix)?.checked_mul(h)?;
        Self::new(m)
    }

    pub fn is_even(&self) -> bool {
        (0..self.dim()).all(|i| (&self.matrix[(i, i)] % 2u32).is_zero())
    }
}

/// Rank over Q and a saturated basis of the radical.
pub fn rank_and_radical(q: &QuadForm) -> (usize, Vec<IntVec>) {
    let radical = integer_kernel(q.matrix());
    (q.dim() - radical.len(), radical)
}

fn rational_matrix(q: &QuadForm) -> Vec<Vec<Rational>> {
    q.matrix
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(Rational::from_integer).collect())
        .collect()
}

/// Exact PSD test by symmetric Schur-complement elimination.
pub fn is_psd(q: &QuadForm) -> bool {
    let mut a = rational_matrix(q);
    let mut active: Vec<usize> = (0..q.dim()).collect();
    while !active.is_empty() {
        if active.iter().any(|&i| a[i][i].is_negative()) {
            return false;
        }
        let Some(pos) = active.iter().position(|&i| a[i][i].is_positive()) else {
            // Zero diagonal: a PSD matrix must then vanish identically.
            return active
                .iter()
                .all(|&i| active.iter().all(|&j| a[i][j].is_zero()));
        };
        let p = active.remove(pos);
        let piv = a[p][p].clone();
        for &i in &active {
            let f = &a[i][p] / &piv;
            if f.is_zero() {
                continue;
            }
            for &j in &active {
                let d = &f * &a[p][j];
                a[i][j] -= d;
            }
        }
    }
    true
}

/// Minimum of `xᵗ q x` over nonzero integer `x`, with a witness.
///
/// Forms with a radical return 0 and a primitive radical vector. Positive
/// definite forms are enumerated Fincke-Pohst style inside the ellipsoid of
/// radius `min_i q_ii`, exactly. Among minimal vectors the witness has the
/// smallest l1 norm, then is lexicographically largest after making its
/// first nonzero entry positive.
pub fn quad_min(q: &QuadForm) -> Result<(BigInt, IntVec)> {
    if !is_psd(q) {
        return Err(invalid("quad_min needs a positive semidefinite form"));
    }
    let (_, radical) = rank_and_radical(q);
    if let Some(v) = radical.into_iter().min_by(witness_order) {
        return Ok((BigInt::zero(), v));
    }
    let n = q.dim();
    let (d, mu) = ldl(q);
    let radius = (0..n)
        .map(|i| Rational::from_integer(q.matrix[(i, i)].clone()))
        .min()
        .expect("dim > 0");
    let mut best: Option<(BigInt, IntVec)> = None;
    let mut x = vec![BigInt::zero(); n];
    enumerate(n, &d, &mu, &radius, &mut x, q, &mut best);
    Ok(best.expect("a basis vector always lies inside the initial radius"))
}

fn witness_order(a: &IntVec, b: &IntVec) -> std::cmp::Ordering {
    let l1 = |v: &IntVec| v.iter().map(|x| x.abs()).sum::<BigInt>();
    l1(a).cmp(&l1(b)).then_with(|| b.cmp(a))
}

/// `q(x) = Σ d_i (x_i + Σ_{j>i} mu_ij x_j)^2`.
fn ldl(q: &QuadForm) -> (Vec<Rational>, Vec<Vec<Rational>>) {
    let n = q.dim();
    let mut a = rational_matrix(q);
    let mut d = vec![Rational::zero(); n];
    let mut mu = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        d[i] = a[i][i].clone();
        for j in i + 1..n {
            mu[i][j] = &a[i][j] / &d[i];
        }
        for j in i + 1..n {
            for k in i + 1..n {
                let s = &mu[i][j] * &a[i][k];
                a[j][k] -= s;
            }
        }
    }
    (d, mu)
}

fn enumerate(
    level: usize,
    d: &[Rational],
    mu: &[Vec<Rational>],
    budget: &Rational,
    x: &mut Vec<BigInt>,
    q: &QuadForm,
    best: &mut Option<(BigInt, IntVec)>,
) {
    if level == 0 {
        if x.iter().all(Zero::is_zero) {
            return;
        }
        let val = q.eval(x);
        let w = sign_normalize(x);
        let better = match best {
            None => true,
            Some((bv, bw)) => val < *bv || (val == *bv && witness_order(&w, bw).is_lt()),
        };
        if better {
            *best = Some((val, w));
        }
        return;
    }
    let i = level - 1;
    let center: Rational = -(i + 1..x.len())
        .map(|j| &mu[i][j] * Rational::from_integer(x[j].clone()))
        .sum::<Rational>();
    // d_i (x_i - c)^2 <= budget
    let span = (budget / &d[i]).to_f64().unwrap_or(f64::MAX).sqrt();
    let c = center.to_f64().unwrap_or(0.0);
    let lo = (c - span).floor() as i64 - 1;
    let hi = (c + span).ceil() as i64 + 1;
    for xi in lo..=hi {
        let xi_r = Rational::from_integer(BigInt::from(xi));
        let diff = &xi_r - &center;
        let used = &d[i] * &diff * &diff;
        if used > *budget {
            continue;
        }
        x[i] = BigInt::from(xi);
        let rest = budget - &used;
        enumerate(i, d, mu, &rest, x, q, best);
    }
    x[i] = BigInt::zero();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::lattice::ivec;

    #[test]
    fn radical_examples() {
        let (r, rad) = rank_and_radical(&QuadForm::diagonal(&[1, 0]));
        assert_eq!((r, rad), (1, vec![ivec(&[0, 1])]));
        let (r, rad) = rank_and_radical(&QuadForm::rank_one(&ivec(&[1, 1])));
        assert_eq!((r, rad), (1, vec![ivec(&[1, -1])]));
        let (r, rad) = rank_and_radical(&QuadForm::scaled_identity(2, 2));
        assert_eq!(r, 2);
        assert!(rad.is_empty());
    }

    #[test]
    fn psd_examples() {
        assert!(is_psd(&QuadForm::diagonal(&[1, 0])));
        assert!(!is_psd(&QuadForm::diagonal(&[1, -1])));
        assert!(is_psd(&QuadForm::from_i64(&[&[2, 1], &[1, 2]])));
        assert!(!is_psd(&QuadForm::from_i64(&[&[0, 1], &[1, 0]])));
        assert!(!is_psd(&QuadForm::from_i64(&[&[1, 2], &[2, 1]])));
    }

    #[test]
    fn minima() {
        let (v, w) = quad_min(&QuadForm::scaled_identity(2, 2)).unwrap();
        assert_eq!((v, w), (BigInt::from(2), ivec(&[1, 0])));
        let (v, w) = quad_min(&QuadForm::from_i64(&[&[2, 1], &[1, 2]])).unwrap();
        assert_eq!((v, w), (BigInt::from(2), ivec(&[1, 0])));
        let (v, w) = quad_min(&QuadForm::diagonal(&[2, 0])).unwrap();
        assert_eq!((v, w), (BigInt::zero(), ivec(&[0, 1])));
        assert!(quad_min(&QuadForm::diagonal(&[1, -1])).is_err());
        // twice the A3 root lattice
        let (v, _) = quad_min(&QuadForm::from_i64(&[
            &[4, -2, 0],
            &[-2, 4, -2],
            &[0, -2, 4],
        ]))
        .unwrap();
        assert_eq!(v, BigInt::from(4));
    }
}
