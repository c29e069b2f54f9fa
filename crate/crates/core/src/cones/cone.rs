//! Rational polyhedral cones in `Z^N` given by primitive generators.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::hull::facets_in_span;
use super::lp::feasible_nonneg;
use crate::error::{invalid, Result};
use crate::exact::lattice::{coordinates, dot, ivec, primitive, rank_of, to_rational, IntVec};
pub(crate) use crate::exact::matrix::JsonInteger;
use crate::exact::Rational;

/// Strongly convex cone; generators are primitive, sorted and distinct.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    ambient_rank: usize,
    generators: Vec<IntVec>,
}

impl Cone {
    pub fn new(ambient_rank: usize, generators: Vec<IntVec>) -> Result<Self> {
        let cone = Self::new_unchecked(ambient_rank, generators)?;
        if !cone.is_pointed() {
            return Err(invalid("cone contains a line"));
        }
        Ok(cone)
    }

    /// Normalizes the generators without the strong convexity test.
    pub(crate) fn new_unchecked(ambient_rank: usize, generators: Vec<IntVec>) -> Result<Self> {
        if ambient_rank == 0 {
            return Err(invalid("ambient rank must be positive"));
        }
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.len() != ambient_rank {
                return Err(invalid(format!(
                    "generator of length {} in rank {ambient_rank}",
                    g.len()
                )));
            }
            if g.iter().all(Zero::is_zero) {
                return Err(invalid("zero generator"));
            }
            gens.push(primitive(&g));
        }
        gens.sort();
        gens.dedup();
        Ok(Self {
            ambient_rank,
            generators: gens,
        })
    }

    pub fn from_i64(ambient_rank: usize, gens: &[&[i64]]) -> Result<Self> {
        Self::new(ambient_rank, gens.iter().map(|g| ivec(g)).collect())
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[IntVec] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        rank_of(&self.generators, self.ambient_rank)
    }

    pub fn is_simplicial(&self) -> bool {
        self.dim() == self.generators.len()
    }

    /// Whether some functional is positive on every generator.
    pub fn is_pointed(&self) -> bool {
        if self.generators.is_empty() {
            return true;
        }
        let phi: IntVec = (0..self.ambient_rank)
            .map(|k| self.generators.iter().map(|g| &g[k]).sum())
            .collect();
        if self.generators.iter().all(|g| dot(&phi, g).is_positive()) {
            return true;
        }
        self.separating_functional(&[]).is_some()
    }

    /// A functional vanishing on `zero_set` and `>= 1` on the other
    /// generators, if one exists. Indices refer to `generators()`.
    pub fn separating_functional(&self, zero_set: &[usize]) -> Option<Vec<Rational>> {
        let n = self.ambient_rank;
        let others: Vec<usize> = (0..self.generators.len())
            .filter(|i| !zero_set.contains(i))
            .collect();
        let vars = 2 * n + others.len();
        let mut a = Vec::with_capacity(self.generators.len());
        let mut b = Vec::with_capacity(self.generators.len());
        for (i, g) in self.generators.iter().enumerate() {
            let mut row = vec![Rational::zero(); vars];
            for k in 0..n {
                row[k] = Rational::from_integer(g[k].clone());
                row[n + k] = -Rational::from_integer(g[k].clone());
            }
            if let Some(pos) = others.iter().position(|&o| o == i) {
                row[2 * n + pos] = -Rational::from_integer(1.into());
                b.push(Rational::from_integer(1.into()));
            } else {
                b.push(Rational::zero());
            }
            a.push(row);
        }
        let x = feasible_nonneg(&a, &b)?;
        Some((0..n).map(|k| &x[k] - &x[n + k]).collect())
    }

    /// Whether the generators indexed by `subset` span a face.
    pub fn is_face(&self, subset: &[usize]) -> bool {
        self.separating_functional(subset).is_some()
    }

    /// Index set of the generators lying on the smallest face containing the
    /// given vectors' generators; `None` when some vector is not a generator.
    pub fn indices_of(&self, vectors: &[IntVec]) -> Option<Vec<usize>> {
        vectors
            .iter()
            .map(|v| self.generators.iter().position(|g| g == v))
            .collect()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        if v.len() != self.ambient_rank {
            return false;
        }
        if self.is_simplicial() {
            return match coordinates(&self.generators, v) {
                Some(c) => c.iter().all(|x| !x.is_negative()),
                None => false,
            };
        }
        let a: Vec<Vec<Rational>> = (0..self.ambient_rank)
            .map(|k| {
                self.generators
                    .iter()
                    .map(|g| Rational::from_integer(g[k].clone()))
                    .collect()
            })
            .collect();
        feasible_nonneg(&a, &to_rational(v)).is_some()
    }

    /// Generators that are not nonnegative combinations of the others.
    pub fn extreme_generators(&self) -> Vec<IntVec> {
        self.generators
            .iter()
            .enumerate()
            .filter(|(i, g)| {
                let rest: Vec<IntVec> = self
                    .generators
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| j != i)
                    .map(|(_, h)| h.clone())
                    .collect();
                rest.is_empty()
                    || !Cone {
                        ambient_rank: self.ambient_rank,
                        generators: rest,
                    }
                    .contains(g)
            })
            .map(|(_, g)| g.clone())
            .collect()
    }

    /// Every face as a sorted generator index set, from the apex (empty set)
    /// to the cone itself.
    pub fn faces(&self) -> Result<Vec<Vec<usize>>> {
        let all: Vec<usize> = (0..self.generators.len()).collect();
        if self.generators.is_empty() {
            return Ok(vec![all]);
        }
        let (_, facets) = facets_in_span(&self.generators)?;
        let mut faces = vec![all];
        let mut frontier = faces.clone();
        while let Some(f) = frontier.pop() {
            for facet in &facets {
                let meet: Vec<usize> = f
                    .iter()
                    .copied()
                    .filter(|i| facet.incident.contains(i))
                    .collect();
                if !faces.contains(&meet) {
                    faces.push(meet.clone());
                    frontier.push(meet);
                }
            }
        }
        if !faces.iter().any(Vec::is_empty) {
            faces.push(vec![]);
        }
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(faces)
    }

    /// Sub-cone spanned by the listed generators.
    pub fn sub_cone(&self, subset: &[usize]) -> Cone {
        Cone {
            ambient_rank: self.ambient_rank,
            generators: subset.iter().map(|&i| self.generators[i].clone()).collect(),
        }
    }

    /// Image under an integer linear map (rows act on column vectors).
    pub fn map(&self, m: &crate::exact::IntMatrix) -> Result<Cone> {
        let gens = self
            .generators
            .iter()
            .map(|g| m.mul_vec(g))
            .collect::<Result<Vec<_>>>()?;
        Cone::new_unchecked(m.rows(), gens)
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| {
                format!(
                    "({})",
                    g.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        write!(f, "cone{{{}}}", gens.join(","))
    }
}

/// JSON: list of generators, each a list of integers.
impl Serialize for Cone {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<JsonInteger>> = self
            .generators
            .iter()
            .map(|g| g.iter().map(|x| JsonInteger(x.clone())).collect())
            .collect();
        rows.serialize(s)
    }
}
