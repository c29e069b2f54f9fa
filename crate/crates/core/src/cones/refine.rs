//! Smooth refinements of fans of dimension at most three.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::cone::Cone;
use super::fan::Fan;
use super::hull::facets_in_span;
use crate::error::{Error, Result};
use crate::exact::lattice::{coordinates, maximal_minor_gcd, saturated_span, IntVec};
use crate::exact::Rational;

type Simplex = Vec<IntVec>;

fn is_smooth(s: &Simplex, width: usize) -> bool {
    maximal_minor_gcd(s, width).is_one()
}

/// Refines `f` until every cone is smooth.
///
/// Non-simplicial three dimensional cones are first split into simplices
/// fanned out from their lexicographically smallest ray. Two dimensional
/// cones that are not faces of a three dimensional cone are resolved by
/// Hirzebruch-Jung continued fractions. Everything else is repaired by
/// star subdivision at the box point with the smallest coordinate sum
/// (ties broken lexicographically), applied to every cone containing the
/// face that carries the point; all choices are deterministic.
pub fn refine_to_smooth(f: &Fan) -> Result<Fan> {
    let width = f.ambient_rank();
    let mut simplices: Vec<Simplex> = Vec::new();
    for c in f.cones() {
        let d = c.dim();
        if d > 3 {
            return Err(Error::UnsupportedDimension(d));
        }
        let ext = c.extreme_generators();
        if ext.len() == d {
            simplices.push(ext);
        } else {
            simplices.extend(triangulate(&ext)?);
        }
    }
    normalize(&mut simplices);
    while let Some(pos) = pick_non_smooth(&simplices, width) {
        let s = simplices[pos].clone();
        let is_face_of_bigger = simplices
            .iter()
            .any(|t| t.len() > s.len() && s.iter().all(|g| t.contains(g)));
        if s.len() == 2 && !is_face_of_bigger {
            let rays = hirzebruch_jung(&s[0], &s[1]);
            simplices.remove(pos);
            let mut chain = vec![s[0].clone()];
            chain.extend(rays);
            chain.push(s[1].clone());
            for w in chain.windows(2) {
                simplices.push(w.to_vec());
            }
        } else {
            let (v, support) = minimal_box_point(&s);
            let mut next = Vec::with_capacity(simplices.len() + 4);
            for t in simplices.drain(..) {
                if support.iter().all(|g| t.contains(g)) {
                    for g in &support {
                        let mut u: Simplex = t.iter().filter(|x| *x != g).cloned().collect();
                        u.push(v.clone());
                        next.push(u);
                    }
                } else {
                    next.push(t);
                }
            }
            simplices = next;
        }
        normalize(&mut simplices);
    }
    let cones = simplices
        .into_iter()
        .map(|s| Cone::new_unchecked(width, s))
        .collect::<Result<Vec<_>>>()?;
    Fan::new(width, cones, f.projection().cloned())
}

fn normalize(simplices: &mut Vec<Simplex>) {
    for s in simplices.iter_mut() {
        s.sort();
    }
    simplices.sort();
    simplices.dedup();
}

/// Largest dimension first, then sorted order.
fn pick_non_smooth(simplices: &[Simplex], width: usize) -> Option<usize> {
    let mut idx: Vec<usize> = (0..simplices.len()).collect();
    idx.sort_by(|&a, &b| simplices[b].len().cmp(&simplices[a].len()).then(a.cmp(&b)));
    idx.into_iter().find(|&i| !is_smooth(&simplices[i], width))
}

fn triangulate(ext: &[IntVec]) -> Result<Vec<Simplex>> {
    let mut gens = ext.to_vec();
    gens.sort();
    let (_, facets) = facets_in_span(&gens)?;
    let apex = &gens[0];
    Ok(facets
        .iter()
        .filter(|f| !f.incident.contains(&0))
        .map(|f| {
            let mut s = vec![apex.clone()];
            s.extend(f.incident.iter().map(|&i| gens[i].clone()));
            s
        })
        .collect())
}

/// Nonzero lattice point `Σ t_i v_i` with `0 <= t_i < 1` minimizing `Σ t_i`,
/// and the generators with `t_i > 0`.
fn minimal_box_point(s: &Simplex) -> (IntVec, Vec<IntVec>) {
    let width = s[0].len();
    let basis = saturated_span(s, width);
    let local: Vec<Vec<BigInt>> = s
        .iter()
        .map(|g| {
            coordinates(&basis, g)
                .expect("in span")
                .into_iter()
                .map(|x| x.to_integer())
                .collect()
        })
        .collect();
    let d = basis.len();
    let bx: Vec<(BigInt, BigInt)> = (0..d)
        .map(|k| {
            let lo: BigInt = local.iter().map(|v| v[k].clone().min(BigInt::zero())).sum();
            let hi: BigInt = local.iter().map(|v| v[k].clone().max(BigInt::zero())).sum();
            (lo, hi)
        })
        .collect();
    let mut best: Option<(Rational, IntVec, Vec<Rational>)> = None;
    let mut x: Vec<BigInt> = bx.iter().map(|b| b.0.clone()).collect();
    loop {
        if x.iter().any(|v| !v.is_zero()) {
            if let Some(t) = coordinates(&local, &x) {
                let one = Rational::one();
                if t.iter().all(|ti| !ti.is_negative() && *ti < one) {
                    let sum: Rational = t.iter().sum();
                    let amb: IntVec = (0..width)
                        .map(|k| x.iter().zip(&basis).map(|(xi, b)| xi * &b[k]).sum())
                        .collect();
                    let better = match &best {
                        None => true,
                        Some((bs, bv, _)) => sum < *bs || (sum == *bs && amb < *bv),
                    };
                    if better {
                        best = Some((sum, amb, t));
                    }
                }
            }
        }
        let mut k = d;
        let done = loop {
            if k == 0 {
                break true;
            }
            k -= 1;
            if x[k] < bx[k].1 {
                x[k] += 1;
                break false;
            }
            x[k] = bx[k].0.clone();
        };
        if done {
            break;
        }
    }
    let (_, v, t) = best.expect("a non-smooth simplicial cone has a box point");
    let support = s
        .iter()
        .zip(&t)
        .filter(|(_, ti)| ti.is_positive())
        .map(|(g, _)| g.clone())
        .collect();
    (v, support)
}

/// Rays strictly between `v1` and `v2` in the minimal resolution of the
/// two dimensional cone they span, ordered from `v1`.
pub fn hirzebruch_jung(v1: &IntVec, v2: &IntVec) -> Vec<IntVec> {
    let width = v1.len();
    let basis = saturated_span(&[v1.clone(), v2.clone()], width);
    let loc = |v: &IntVec| -> Vec<BigInt> {
        coordinates(&basis, v)
            .expect("in span")
            .into_iter()
            .map(|x| x.to_integer())
            .collect()
    };
    let a = loc(v1);
    let b = loc(v2);
    let det = |p: &[BigInt], q: &[BigInt]| &p[0] * &q[1] - &p[1] * &q[0];
    let eg = a[0].extended_gcd(&a[1]);
    let mut w = vec![-eg.y.clone(), eg.x.clone()];
    if eg.gcd.is_negative() {
        w = w.iter().map(|x| -x).collect();
    }
    // b = alpha w + beta a, with alpha = det(a, b) up to the sign of det(a, w)
    let mut alpha = det(&a, &b) * det(&a, &w);
    if alpha.is_negative() {
        w = w.iter().map(|x| -x).collect();
        alpha = -alpha;
    }
    let rest: Vec<BigInt> = b.iter().zip(&w).map(|(bi, wi)| bi - &alpha * wi).collect();
    let beta = if !a[0].is_zero() {
        &rest[0] / &a[0]
    } else {
        &rest[1] / &a[1]
    };
    let m = alpha;
    // shift w so that b = m w - k a with 0 <= k < m
    let s = Integer::div_ceil(&beta, &m);
    let w: Vec<BigInt> = w.iter().zip(&a).map(|(wi, ai)| wi + &s * ai).collect();
    let k = &m * &s - &beta;
    if m.is_one() || k.is_zero() {
        return vec![];
    }
    let to_amb = |v: &[BigInt]| -> IntVec {
        (0..width)
            .map(|c| &v[0] * &basis[0][c] + &v[1] * &basis[1][c])
            .collect()
    };
    let mut out = Vec::new();
    let (mut prev, mut cur) = (a.clone(), w.clone());
    let (mut p, mut q) = (m.clone(), k.clone());
    while !q.is_zero() {
        out.push(to_amb(&cur));
        let bi = Integer::div_ceil(&p, &q);
        let next: Vec<BigInt> = cur.iter().zip(&prev).map(|(c, pr)| &bi * c - pr).collect();
        let nq = &bi * &q - &p;
        p = q;
        q = nq;
        prev = cur;
        cur = next;
    }
    debug_assert_eq!(cur, b);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::toric::{toric_is_canonical, ToricVerdict};
    use crate::exact::lattice::ivec;

    fn fan_of(rank: usize, cones: &[&[&[i64]]]) -> Fan {
        Fan::new(
            rank,
            cones
                .iter()
                .map(|c| Cone::from_i64(rank, c).unwrap())
                .collect(),
            None,
        )
        .unwrap()
    }

    #[test]
    fn a1_gets_the_middle_ray() {
        let f = fan_of(2, &[&[&[1, 0], &[1, 2]]]);
        let r = refine_to_smooth(&f).unwrap();
        assert_eq!(r.rays(), vec![ivec(&[1, 0]), ivec(&[1, 1]), ivec(&[1, 2])]);
    }

    #[test]
    fn continued_fraction_chains() {
        assert_eq!(
            hirzebruch_jung(&ivec(&[0, 1]), &ivec(&[3, -2])),
            vec![ivec(&[1, 0]), ivec(&[2, -1])]
        );
        assert_eq!(
            hirzebruch_jung(&ivec(&[0, 1]), &ivec(&[3, -1])),
            vec![ivec(&[1, 0])]
        );
        assert!(hirzebruch_jung(&ivec(&[1, 0]), &ivec(&[1, 1])).is_empty());
        let rays = hirzebruch_jung(&ivec(&[1, 0]), &ivec(&[2, 7]));
        let mut chain = vec![ivec(&[1, 0])];
        chain.extend(rays);
        chain.push(ivec(&[2, 7]));
        for w in chain.windows(2) {
            assert!(maximal_minor_gcd(w, 2).is_one());
        }
    }

    #[test]
    fn smooth_fan_is_fixed() {
        let f = fan_of(2, &[&[&[1, 0], &[1, 1]], &[&[1, 1], &[1, 2]]]);
        assert_eq!(refine_to_smooth(&f).unwrap().cones(), f.cones());
    }

    #[test]
    fn three_dimensional_quotient() {
        let f = fan_of(3, &[&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 3]]]);
        let r = refine_to_smooth(&f).unwrap();
        for c in r.cones() {
            assert_eq!(toric_is_canonical(c).verdict, ToricVerdict::Smooth);
            assert!(c.generators().iter().all(|g| f.cones()[0].contains(g)));
        }
    }

    #[test]
    fn squares_are_triangulated() {
        let f = fan_of(3, &[&[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1], &[1, 1, 1]]]);
        let r = refine_to_smooth(&f).unwrap();
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn dimension_four_is_rejected() {
        let f = fan_of(
            4,
            &[&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]],
        );
        assert_eq!(refine_to_smooth(&f), Err(Error::UnsupportedDimension(4)));
    }
}
