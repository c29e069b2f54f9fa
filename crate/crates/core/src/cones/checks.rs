//! Fan level conditions: equidimensionality in codimension one, absence of
//! interior rays, presence of base cones and the induced action on rays.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::cone::Cone;
use super::fan::Fan;
use super::lifted::{in_cone_c_tilde, LiftedPoint};
use super::toric::{toric_is_canonical, ToricVerdict};
use crate::error::{invalid, Result};
use crate::exact::lattice::{primitive, IntVec};
use crate::exact::matrix::int_vec_json;
use crate::exact::quadform::rank_and_radical;
use crate::exact::IntMatrix;
use num_traits::Zero;

/// Rays of a fan that fail a per-ray condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayReport {
    pub ok: bool,
    #[serde(serialize_with = "int_vec_json::serialize_list")]
    pub offending: Vec<IntVec>,
}

impl RayReport {
    fn from_offending(offending: Vec<IntVec>) -> Self {
        RayReport {
            ok: offending.is_empty(),
            offending,
        }
    }
}

/// Every ray of `tilde` must project to zero or onto a ray of `base`.
pub fn is_equidim_codim1(tilde: &Fan, base: &Fan) -> Result<RayReport> {
    let p = tilde
        .projection()
        .ok_or_else(|| invalid("fan has no base projection"))?;
    if p.rows() != base.ambient_rank() || p.cols() != tilde.ambient_rank() {
        return Err(invalid("projection does not match the fans"));
    }
    let base_rays: BTreeSet<IntVec> = base.rays().into_iter().collect();
    let mut offending = Vec::new();
    for r in tilde.rays() {
        let image = p.mul_vec(&r)?;
        // rays of the form (0; l) leave the lifted cone, so they never pass
        if image.iter().all(Zero::is_zero) || !base_rays.contains(&primitive(&image)) {
            offending.push(r);
        }
    }
    Ok(RayReport::from_offending(offending))
}

/// Every ray generator `(b; l)` must have a rank one quadratic part.
pub fn no_interior_rays(tilde: &Fan, g_dd: usize, n: usize) -> Result<RayReport> {
    let mut offending = Vec::new();
    for r in tilde.rays() {
        let q = LiftedPoint::unflatten(&r, g_dd, n)?;
        if rank_and_radical(&q.b).0 != 1 {
            offending.push(r);
        }
    }
    Ok(RayReport::from_offending(offending))
}

/// Base cones whose image `σ × {0}` is not a face of `tilde`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseConeReport {
    pub ok: bool,
    pub missing: Vec<Cone>,
}

pub fn base_cones_included(tilde: &Fan, base: &Fan) -> Result<BaseConeReport> {
    let width = tilde.ambient_rank();
    let s = base.ambient_rank();
    if s > width {
        return Err(invalid("base lattice is larger than the lifted lattice"));
    }
    let mut missing = Vec::new();
    for sigma in base.cones() {
        let lifted: Vec<IntVec> = sigma
            .generators()
            .iter()
            .map(|g| {
                let mut v = g.clone();
                v.resize(width, Zero::zero());
                v
            })
            .collect();
        let found = tilde
            .cones()
            .iter()
            .any(|c| c.indices_of(&lifted).is_some_and(|idx| c.is_face(&idx)));
        if !found {
            missing.push(sigma.clone());
        }
    }
    Ok(BaseConeReport {
        ok: missing.is_empty(),
        missing,
    })
}

/// Effect of a lattice automorphism on the cones of a fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayPermutationReport {
    /// No stabilized cone has its rays permuted.
    pub ok: bool,
    /// Cones mapped to themselves with a nontrivial permutation of rays.
    pub nontrivial: Vec<Cone>,
    /// Distinct maximal cones exchanged by the action, each pair once.
    pub swapped: Vec<(Cone, Cone)>,
}

/// Checks that `m` acts trivially on the rays of every cone it stabilizes.
///
/// Faces of the stored cones are included. Fails with invalid input when
/// `m` does not map the fan to itself.
pub fn ray_permutation_check(m: &IntMatrix, f: &Fan) -> Result<RayPermutationReport> {
    let r = f.ambient_rank();
    if m.rows() != r || m.cols() != r {
        return Err(invalid("matrix does not act on the fan lattice"));
    }
    let image_of = |g: &IntVec| -> Result<IntVec> { m.mul_vec(g) };
    let keyset = |gens: &[IntVec]| -> BTreeSet<IntVec> { gens.iter().cloned().collect() };
    let stored: BTreeSet<BTreeSet<IntVec>> =
        f.cones().iter().map(|c| keyset(c.generators())).collect();

    let mut swapped = Vec::new();
    for c in f.cones() {
        let img: Vec<IntVec> = c.generators().iter().map(image_of).collect::<Result<_>>()?;
        let key = keyset(&img);
        if !stored.contains(&key) {
            return Err(invalid(format!("the action moves {c:?} off the fan")));
        }
        let src = keyset(c.generators());
        if key != src && src < key {
            let other = f
                .cones()
                .iter()
                .find(|d| keyset(d.generators()) == key)
                .expect("stored");
            let back: BTreeSet<IntVec> = other
                .generators()
                .iter()
                .map(image_of)
                .collect::<Result<_>>()?;
            if back == src {
                swapped.push((c.clone(), other.clone()));
            }
        }
    }

    // every face of every cone, keyed by its generator set
    let mut faces: BTreeMap<BTreeSet<IntVec>, Cone> = BTreeMap::new();
    for c in f.cones() {
        for idx in c.faces()? {
            if idx.len() < 2 {
                continue;
            }
            let sub = c.sub_cone(&idx);
            faces.entry(keyset(sub.generators())).or_insert(sub);
        }
    }
    let mut nontrivial = Vec::new();
    for (key, face) in &faces {
        let img: Vec<IntVec> = face
            .generators()
            .iter()
            .map(image_of)
            .collect::<Result<_>>()?;
        if keyset(&img) == *key && img.iter().zip(face.generators()).any(|(a, b)| a != b) {
            nontrivial.push(face.clone());
        }
    }
    Ok(RayPermutationReport {
        ok: nontrivial.is_empty(),
        nontrivial,
        swapped,
    })
}

/// Every ray generator must lie in the lifted cone.
pub fn rays_in_lifted_cone(tilde: &Fan, g_dd: usize, n: usize) -> Result<RayReport> {
    let mut offending = Vec::new();
    for r in tilde.rays() {
        if !in_cone_c_tilde(&LiftedPoint::unflatten(&r, g_dd, n)?) {
            offending.push(r);
        }
    }
    Ok(RayReport::from_offending(offending))
}

/// Toric verdict counts over the cones of a fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToricSummary {
    pub smooth: usize,
    pub canonical: usize,
    /// Cones that are not canonical or not Q-Gorenstein.
    pub offending: Vec<Cone>,
}

pub fn toric_summary(f: &Fan) -> ToricSummary {
    let mut t = ToricSummary {
        smooth: 0,
        canonical: 0,
        offending: Vec::new(),
    };
    for c in f.cones() {
        match toric_is_canonical(c).verdict {
            ToricVerdict::Smooth => t.smooth += 1,
            ToricVerdict::Canonical => t.canonical += 1,
            _ => t.offending.push(c.clone()),
        }
    }
    t
}

/// All fan level conditions for a lifted fan over `base`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanCheckReport {
    pub in_cone: RayReport,
    pub equidim: RayReport,
    pub no_interior_rays: RayReport,
    pub base_cones: BaseConeReport,
    pub toric: ToricSummary,
    pub pass: bool,
}

pub fn check_lifted_fan(tilde: &Fan, base: &Fan, g_dd: usize, n: usize) -> Result<FanCheckReport> {
    let in_cone = rays_in_lifted_cone(tilde, g_dd, n)?;
    let equidim = is_equidim_codim1(tilde, base)?;
    let no_interior = no_interior_rays(tilde, g_dd, n)?;
    let base_cones = base_cones_included(tilde, base)?;
    let toric = toric_summary(tilde);
    let pass =
        in_cone.ok && equidim.ok && no_interior.ok && base_cones.ok && toric.offending.is_empty();
    Ok(FanCheckReport {
        in_cone,
        equidim,
        no_interior_rays: no_interior,
        base_cones,
        toric,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::lifted::{action_matrix, base_fan, base_projection, lifted_fan};
    use crate::exact::lattice::ivec;

    fn staircase() -> Fan {
        lifted_fan(1, 1, 3).unwrap()
    }

    #[test]
    fn staircase_conditions() {
        let f = staircase();
        let base = base_fan(1, 3).unwrap();
        assert!(is_equidim_codim1(&f, &base).unwrap().ok);
        assert!(no_interior_rays(&f, 1, 1).unwrap().ok);
        assert!(base_cones_included(&f, &base).unwrap().ok);
        let full = check_lifted_fan(&f, &base, 1, 1).unwrap();
        assert!(full.pass && full.toric.smooth == f.len());
    }

    #[test]
    fn vertical_ray_offends() {
        let f = Fan::new(
            2,
            vec![Cone::from_i64(2, &[&[0, 1], &[1, 0]]).unwrap()],
            Some(base_projection(1, 1)),
        )
        .unwrap();
        let base = base_fan(1, 3).unwrap();
        let rep = is_equidim_codim1(&f, &base).unwrap();
        assert_eq!(rep.offending, vec![ivec(&[0, 1])]);
        assert_eq!(
            rays_in_lifted_cone(&f, 1, 1).unwrap().offending,
            vec![ivec(&[0, 1])]
        );
        assert!(is_equidim_codim1(&f.clone().with_projection(None), &base).is_err());
    }

    #[test]
    fn rank_two_ray_projects_inside_a_chamber() {
        // (x1^2 + x2^2 + (x1+x2)^2 ; 0) lies over the interior of the principal cone
        let gens: &[&[i64]] = &[&[1, 0, 0, 0, 0], &[0, 0, 1, 0, 0], &[2, 1, 2, 0, 0]];
        let f = Fan::new(
            5,
            vec![Cone::from_i64(5, gens).unwrap()],
            Some(base_projection(2, 1)),
        )
        .unwrap();
        let base = base_fan(2, 2).unwrap();
        let rep = is_equidim_codim1(&f, &base).unwrap();
        assert_eq!(rep.offending, vec![ivec(&[2, 1, 2, 0, 0])]);
        assert!(!no_interior_rays(&f, 2, 1).unwrap().ok);
        assert!(no_interior_rays(&Fan::empty(5), 2, 1).unwrap().ok);
    }

    #[test]
    fn reflection_swaps_staircase_cones() {
        let f = staircase();
        let m = action_matrix(&IntMatrix::from_i64(&[&[-1]]), &[ivec(&[0])], 1).unwrap();
        let rep = ray_permutation_check(&m, &f).unwrap();
        assert!(rep.ok);
        let pair = (
            Cone::from_i64(2, &[&[1, -1], &[1, 0]]).unwrap(),
            Cone::from_i64(2, &[&[1, 0], &[1, 1]]).unwrap(),
        );
        assert!(rep.swapped.contains(&pair));
        let id = IntMatrix::identity(2);
        let rep = ray_permutation_check(&id, &f).unwrap();
        assert!(rep.ok && rep.swapped.is_empty());
    }

    #[test]
    fn swap_inside_a_cone_is_flagged() {
        let f = Fan::new(
            2,
            vec![Cone::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap()],
            None,
        )
        .unwrap();
        let m = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let rep = ray_permutation_check(&m, &f).unwrap();
        assert!(!rep.ok);
        assert_eq!(rep.nontrivial.len(), 1);
        let shear = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert!(ray_permutation_check(&shear, &f).is_err());
    }
}
