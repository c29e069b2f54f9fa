//! Fans stored by their (maximal) cones, with an optional projection onto a
//! base lattice.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::cone::{Cone, JsonInteger};
use crate::error::{invalid, Result};
use crate::exact::lattice::IntVec;
use crate::exact::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    ambient_rank: usize,
    cones: Vec<Cone>,
    projection: Option<IntMatrix>,
}

impl Fan {
    pub fn new(
        ambient_rank: usize,
        mut cones: Vec<Cone>,
        projection: Option<IntMatrix>,
    ) -> Result<Self> {
        if cones.iter().any(|c| c.ambient_rank() != ambient_rank) {
            return Err(invalid("cones of different ambient rank"));
        }
        if let Some(p) = &projection {
            if p.cols() != ambient_rank {
                return Err(invalid("projection does not start from the fan's lattice"));
            }
        }
        cones.sort();
        cones.dedup();
        Ok(Self {
            ambient_rank,
            cones,
            projection,
        })
    }

    pub fn empty(ambient_rank: usize) -> Self {
        Self {
            ambient_rank,
            cones: vec![],
            projection: None,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn projection(&self) -> Option<&IntMatrix> {
        self.projection.as_ref()
    }

    pub fn with_projection(mut self, p: Option<IntMatrix>) -> Self {
        self.projection = p;
        self
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    /// Distinct ray generators of all cones, sorted.
    pub fn rays(&self) -> Vec<IntVec> {
        let set: BTreeSet<IntVec> = self
            .cones
            .iter()
            .flat_map(|c| c.generators().iter().cloned())
            .collect();
        set.into_iter().collect()
    }

    pub fn max_dim(&self) -> usize {
        self.cones.iter().map(Cone::dim).max().unwrap_or(0)
    }

    /// Whether some cone contains `v`.
    pub fn support_contains(&self, v: &[num_bigint::BigInt]) -> bool {
        self.cones.iter().any(|c| c.contains(v))
    }

    /// Pairs of cones whose intersection is not a common face.
    ///
    /// With `S` the shared generators, the test asks that `S` spans a face
    /// of both cones, cut out by `φ₁` and `φ₂`, and that no point of the
    /// intersection has `φ₁ + φ₂ > 0`.
    pub fn intersection_violations(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for i in 0..self.cones.len() {
            for j in i + 1..self.cones.len() {
                if !meet_is_common_face(&self.cones[i], &self.cones[j]) {
                    bad.push((i, j));
                }
            }
        }
        bad
    }
}

fn meet_is_common_face(a: &Cone, b: &Cone) -> bool {
    use crate::cones::lp::feasible_nonneg;
    use crate::exact::Rational;
    use num_traits::Zero;

    let shared: Vec<IntVec> = a
        .generators()
        .iter()
        .filter(|g| b.generators().contains(g))
        .cloned()
        .collect();
    let ia = a.indices_of(&shared).expect("shared generators");
    let ib = b.indices_of(&shared).expect("shared generators");
    let (Some(pa), Some(pb)) = (a.separating_functional(&ia), b.separating_functional(&ib)) else {
        return false;
    };
    // Σ λ g − Σ μ h = 0, (φa + φb)(Σ λ g) = 1, λ, μ >= 0 must be infeasible.
    let n = a.ambient_rank();
    let (ka, kb) = (a.generators().len(), b.generators().len());
    let mut rows = Vec::with_capacity(n + 1);
    let mut rhs = Vec::with_capacity(n + 1);
    for k in 0..n {
        let mut row = vec![Rational::zero(); ka + kb];
        for (i, g) in a.generators().iter().enumerate() {
            row[i] = Rational::from_integer(g[k].clone());
        }
        for (j, h) in b.generators().iter().enumerate() {
            row[ka + j] = -Rational::from_integer(h[k].clone());
        }
        rows.push(row);
        rhs.push(Rational::zero());
    }
    let phi: Vec<Rational> = pa.iter().zip(&pb).map(|(x, y)| x + y).collect();
    let mut last = vec![Rational::zero(); ka + kb];
    for (i, g) in a.generators().iter().enumerate() {
        last[i] = g
            .iter()
            .zip(&phi)
            .map(|(x, p)| Rational::from_integer(x.clone()) * p)
            .sum();
    }
    rows.push(last);
    rhs.push(Rational::from_integer(1.into()));
    feasible_nonneg(&rows, &rhs).is_none()
}

#[derive(Serialize, Deserialize)]
struct FanJson {
    ambient_rank: usize,
    cones: Vec<Vec<Vec<JsonInteger>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    projection: Option<IntMatrix>,
}

impl Serialize for Fan {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FanJson {
            ambient_rank: self.ambient_rank,
            cones: self
                .cones
                .iter()
                .map(|c| {
                    c.generators()
                        .iter()
                        .map(|g| g.iter().cloned().map(JsonInteger).collect())
                        .collect()
                })
                .collect(),
            projection: self.projection.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Fan {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = FanJson::deserialize(d)?;
        let cones = raw
            .cones
            .into_iter()
            .map(|c| {
                Cone::new(
                    raw.ambient_rank,
                    c.into_iter()
                        .map(|g| g.into_iter().map(|x| x.0).collect())
                        .collect(),
                )
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Fan::new(raw.ambient_rank, cones, raw.projection).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn staircase() -> Fan {
        let cones = (-2..2)
            .map(|c| Cone::from_i64(2, &[&[1, c], &[1, c + 1]]).unwrap())
            .collect();
        Fan::new(2, cones, Some(IntMatrix::from_i64(&[&[1, 0]]))).unwrap()
    }

    #[test]
    fn staircase_is_a_fan() {
        let f = staircase();
        assert!(f.intersection_violations().is_empty());
        assert_eq!(f.rays().len(), 5);
    }

    #[test]
    fn overlapping_cones_are_caught() {
        let a = Cone::from_i64(2, &[&[1, 0], &[1, 2]]).unwrap();
        let b = Cone::from_i64(2, &[&[1, 1], &[1, 3]]).unwrap();
        let f = Fan::new(2, vec![a, b], None).unwrap();
        assert_eq!(f.intersection_violations(), vec![(0, 1)]);
    }

    #[test]
    fn json_round_trip() {
        let f = staircase();
        let js = serde_json::to_string(&f).unwrap();
        assert!(js.starts_with(r#"{"ambient_rank":2,"cones":[[[1,-2],[1,-1]]"#));
        assert!(js.ends_with(r#""projection":[["1","0"]]}"#));
        let back: Fan = serde_json::from_str(&js).unwrap();
        assert_eq!(back, f);
    }
}
