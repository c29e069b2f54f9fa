//! Roots of unity as exact rotation numbers, and eigenvalue profiles of
//! finite-order integer matrices.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::IntMatrix;
use super::poly::{charpoly, cyclotomic_factor};
use super::rational::{rat, Rational};
use crate::error::{invalid, Error, Result};

/// `e^{2πi num/order}` with `0 <= num < order` and `gcd(num, order) = 1`;
/// the eigenvalue 1 is `0/1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    num: u64,
    order: u64,
}

impl RootOfUnity {
    pub const ONE: Self = Self { num: 0, order: 1 };
    pub const MINUS_ONE: Self = Self { num: 1, order: 2 };

    /// Reduces `a/k` modulo 1 (negative `a` allowed).
    pub fn new(a: i64, k: u64) -> Self {
        assert!(k > 0, "root of unity needs a positive order");
        let a = a.rem_euclid(k as i64) as u64;
        if a == 0 {
            return Self::ONE;
        }
        let g = a.gcd(&k);
        Self {
            num: a / g,
            order: k / g,
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    /// Exponent `a/k` in `[0, 1)`.
    pub fn exponent(&self) -> Rational {
        rat(self.num as i64, self.order as i64)
    }

    pub fn conj(&self) -> Self {
        Self::new(-(self.num as i64), self.order)
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.order <= 2
    }

    pub fn mul(&self, other: &Self) -> Self {
        let k = self.order.lcm(&other.order);
        let a = self.num * (k / self.order) + other.num * (k / other.order);
        Self::new(a as i64, k)
    }

    pub fn pow(&self, e: i64) -> Self {
        let a = (self.num as i128 * e as i128).rem_euclid(self.order as i128);
        Self::new(a as i64, self.order)
    }

    pub fn to_complex(&self) -> num_complex::Complex<f64> {
        let theta = 2.0 * std::f64::consts::PI * self.num as f64 / self.order as f64;
        num_complex::Complex::new(theta.cos(), theta.sin())
    }
}

impl Ord for RootOfUnity {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.order).cmp(&(other.num * self.order))
    }
}

impl PartialOrd for RootOfUnity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.order)
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for RootOfUnity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (a, k) = s.split_once('/').unwrap_or((s, "1"));
        let a: i64 = a
            .trim()
            .parse()
            .map_err(|_| invalid(format!("bad root of unity {s:?}")))?;
        let k: u64 = k
            .trim()
            .parse()
            .map_err(|_| invalid(format!("bad root of unity {s:?}")))?;
        if k == 0 {
            return Err(invalid("root of unity with order 0"));
        }
        Ok(Self::new(a, k))
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// Sorted multiset of roots of unity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EigenProfile {
    entries: Vec<RootOfUnity>,
}

impl EigenProfile {
    pub fn new(mut entries: Vec<RootOfUnity>) -> Self {
        entries.sort();
        Self { entries }
    }

    pub fn from_fracs(fracs: &[(i64, u64)]) -> Self {
        Self::new(fracs.iter().map(|&(a, k)| RootOfUnity::new(a, k)).collect())
    }

    pub fn trivial(n: usize) -> Self {
        Self {
            entries: vec![RootOfUnity::ONE; n],
        }
    }

    pub fn scalar(z: RootOfUnity, n: usize) -> Self {
        Self {
            entries: vec![z; n],
        }
    }

    pub fn entries(&self) -> &[RootOfUnity] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.entries.iter().map(RootOfUnity::conj).collect())
    }

    pub fn is_conjugation_closed(&self) -> bool {
        self.conjugate() == *self
    }

    pub fn all_equal_to(&self, z: RootOfUnity) -> bool {
        self.entries.iter().all(|e| *e == z)
    }

    /// Least common multiple of the entry orders (1 for the empty profile).
    pub fn order(&self) -> u64 {
        self.entries.iter().fold(1, |acc, e| acc.lcm(&e.order))
    }

    /// Sum of exponents, the Reid-Tai age of a diagonal action.
    pub fn age(&self) -> Rational {
        self.entries.iter().map(RootOfUnity::exponent).sum()
    }

    pub fn count_nontrivial(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_one()).count()
    }

    /// Splits a conjugation-closed profile of even size into conjugate
    /// pairs `(small, large)` with `small <= 1/2`; self-conjugate entries
    /// pair with copies of themselves.
    pub fn conjugate_pairs(&self) -> Result<Vec<(RootOfUnity, RootOfUnity)>> {
        let mut pool = self.entries.clone();
        let mut pairs = Vec::with_capacity(pool.len() / 2);
        while let Some(e) = pool.first().copied() {
            pool.remove(0);
            let partner = e.conj();
            let pos = pool
                .iter()
                .position(|x| *x == partner)
                .ok_or_else(|| invalid(format!("entry {e} has no conjugate partner")))?;
            pool.remove(pos);
            pairs.push(if e <= partner {
                (e, partner)
            } else {
                (partner, e)
            });
        }
        pairs.sort();
        Ok(pairs)
    }

    /// The splitting picking the smaller exponent of every pair.
    pub fn lower_half(&self) -> Result<Self> {
        Ok(Self::new(
            self.conjugate_pairs()?.into_iter().map(|p| p.0).collect(),
        ))
    }

    /// The splitting picking the larger exponent of every pair.
    pub fn upper_half(&self) -> Result<Self> {
        Ok(Self::new(
            self.conjugate_pairs()?.into_iter().map(|p| p.1).collect(),
        ))
    }
}

impl fmt::Display for EigenProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for EigenProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Exact eigenvalues of a finite-order integer matrix.
///
/// The characteristic polynomial must factor into cyclotomics, and `m^L`
/// must be the identity for `L` the lcm of their indices (this rejects
/// unipotent matrices such as `[[1,1],[0,1]]`).
pub fn eigen_profile(m: &IntMatrix) -> Result<EigenProfile> {
    if !m.is_square() {
        return Err(invalid("eigen profile of a non-square matrix"));
    }
    let cp = charpoly(m)?;
    let fac = cyclotomic_factor(&cp)?;
    if !fac.is_complete() {
        return Err(Error::NotTorsion(format!(
            "characteristic polynomial has the non-cyclotomic factor {}",
            fac.remainder
        )));
    }
    let order = fac.lcm();
    if !m.pow(order)?.is_identity() {
        return Err(Error::NotTorsion(format!(
            "m^{order} is not the identity although every eigenvalue is a root of unity"
        )));
    }
    let mut entries = Vec::with_capacity(m.rows());
    for &(d, mult) in &fac.factors {
        for a in 0..d {
            if a.gcd(&d) == 1 || d == 1 {
                for _ in 0..mult {
                    entries.push(RootOfUnity::new(a as i64, d));
                }
            }
        }
    }
    Ok(EigenProfile::new(entries))
}
