//! Perfect cone decomposition of positive semidefinite binary forms.
//!
//! Maximal cones are spanned by `ξ₁ξ₁ᵗ, ξ₂ξ₂ᵗ, (ξ₁+ξ₂)(ξ₁+ξ₂)ᵗ` for a basis
//! `(ξ₁, ξ₂)` of `Z²` (a superbase); two cones share a facet exactly when
//! the superbases share two vectors.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::Signed;

use super::cone::Cone;
use super::fan::Fan;
use crate::error::{invalid, Error, Result};
use crate::exact::lattice::{sign_normalize, IntVec};
use crate::exact::QuadForm;

pub fn sym2_dim(g: usize) -> usize {
    g * (g + 1) / 2
}

/// Upper triangle, row major: `(m11, m12, m22)` for binary forms.
pub fn sym2_coords(q: &QuadForm) -> IntVec {
    let n = q.dim();
    let mut v = Vec::with_capacity(sym2_dim(n));
    for i in 0..n {
        for j in i..n {
            v.push(q.matrix()[(i, j)].clone());
        }
    }
    v
}

pub fn sym2_from_coords(v: &[BigInt], n: usize) -> QuadForm {
    let mut m = crate::exact::IntMatrix::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            m[(i, j)] = v[k].clone();
            m[(j, i)] = v[k].clone();
            k += 1;
        }
    }
    QuadForm::new(m).expect("symmetric by construction")
}

/// Ray of the form `ξξᵗ`.
pub fn rank_one_coords(xi: &[BigInt]) -> IntVec {
    sym2_coords(&QuadForm::rank_one(xi))
}

/// A basis `(u, v)` of `Z²`, standing for the superbase `{u, v, u+v}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Superbase {
    pub u: IntVec,
    pub v: IntVec,
}

impl Superbase {
    pub fn principal() -> Self {
        Self {
            u: vec![1.into(), 0.into()],
            v: vec![0.into(), 1.into()],
        }
    }

    pub fn vectors(&self) -> [IntVec; 3] {
        let w: IntVec = self.u.iter().zip(&self.v).map(|(a, b)| a + b).collect();
        [self.u.clone(), self.v.clone(), w]
    }

    /// Order independent identity of the cone.
    pub fn key(&self) -> BTreeSet<IntVec> {
        self.vectors().iter().map(|x| sign_normalize(x)).collect()
    }

    pub fn max_entry(&self) -> BigInt {
        self.vectors()
            .iter()
            .flat_map(|x| x.iter().map(|e| e.abs()))
            .max()
            .expect("nonempty")
    }

    /// The three neighbours across the facets of the cone.
    pub fn flips(&self) -> [Superbase; 3] {
        let [u, v, w] = self.vectors();
        let neg = |x: &IntVec| x.iter().map(|e| -e).collect::<IntVec>();
        [
            // keep u, v: third becomes u - v
            Superbase {
                u: u.clone(),
                v: neg(&v),
            },
            // keep u, w = u+v: third becomes w + u
            Superbase {
                u: u.clone(),
                v: w.clone(),
            },
            // keep v, w: third becomes w + v
            Superbase { u: v, v: w },
        ]
    }

    pub fn cone(&self) -> Cone {
        let gens = self.vectors().iter().map(|x| rank_one_coords(x)).collect();
        Cone::new_unchecked(3, gens).expect("rank one forms are nonzero")
    }
}

/// Breadth-first flip search from the principal cone. `keep` filters the
/// cones that are reported and expanded.
fn flip_search(max_depth: Option<usize>, keep: impl Fn(&Superbase) -> bool) -> Vec<Superbase> {
    let start = Superbase::principal();
    let mut seen = BTreeSet::from([start.key()]);
    let mut out = vec![start.clone()];
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((sb, depth)) = queue.pop_front() {
        if max_depth.is_some_and(|m| depth >= m) {
            continue;
        }
        for nb in sb.flips() {
            if !keep(&nb) || !seen.insert(nb.key()) {
                continue;
            }
            out.push(nb.clone());
            queue.push_back((nb, depth + 1));
        }
    }
    out
}

/// Superbases whose vectors all have entries bounded by `bound`.
pub fn superbases_in_box(bound: i64) -> Vec<Superbase> {
    let b = BigInt::from(bound);
    flip_search(None, |sb| sb.max_entry() <= b)
}

fn check_rank(g_dd: usize) -> Result<()> {
    match g_dd {
        1 | 2 => Ok(()),
        0 => Err(invalid("g'' must be at least 1")),
        _ => Err(Error::UnsupportedRank(g_dd)),
    }
}

/// Perfect cone fan: the single ray `(1)` for `g'' = 1`; for `g'' = 2` the
/// principal cone and every cone reached by at most `depth` facet flips.
pub fn perfect_cone_fan(g_dd: usize, depth: usize) -> Result<Fan> {
    check_rank(g_dd)?;
    if g_dd == 1 {
        return Fan::new(1, vec![Cone::new_unchecked(1, vec![vec![1.into()]])?], None);
    }
    let cones = flip_search(Some(depth), |_| true)
        .iter()
        .map(Superbase::cone)
        .collect();
    Fan::new(3, cones, None)
}

/// Perfect cone fan restricted to cones whose rank one generators come from
/// vectors with entries at most `bound` in absolute value.
pub fn perfect_cone_fan_window(g_dd: usize, bound: i64) -> Result<Fan> {
    check_rank(g_dd)?;
    if g_dd == 1 {
        return perfect_cone_fan(1, 0);
    }
    let cones = superbases_in_box(bound)
        .iter()
        .map(Superbase::cone)
        .collect();
    Fan::new(3, cones, None)
}
