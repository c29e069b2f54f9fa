//! Facets of polyhedral cones by the double description method, and lower
//! hulls of lifted point configurations.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{invalid, Result};
use crate::exact::lattice::{coordinates, dot, primitive, rank_of, rref, saturated_span, IntVec};
use crate::exact::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    /// Inward primitive normal, `normal · g >= 0` on every generator.
    pub normal: IntVec,
    /// Sorted indices of the generators on the facet.
    pub incident: Vec<usize>,
}

#[derive(Clone)]
struct Ray {
    v: IntVec,
    zeros: Vec<u64>,
}

fn bit_set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn bit_and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn bit_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn bit_count(a: &[u64]) -> u32 {
    a.iter().map(|x| x.count_ones()).sum()
}

/// Facets of the cone spanned by `gens`, which must be full dimensional and
/// pointed in `Z^d`.
pub fn facets(gens: &[IntVec]) -> Result<Vec<Facet>> {
    let d = gens.first().map_or(0, Vec::len);
    if d == 0 {
        return Err(invalid("cone without generators"));
    }
    if rank_of(gens, d) != d {
        return Err(invalid("facets need a full dimensional cone"));
    }
    if d == 1 {
        let sign = gens[0][0].signum();
        if gens.iter().any(|g| g[0].signum() != sign) {
            return Err(invalid("cone is not pointed"));
        }
        return Ok(vec![Facet {
            normal: vec![sign],
            incident: vec![],
        }]);
    }
    let words = gens.len().div_ceil(64);
    // Greedy choice of d independent generators.
    let mut basis_idx = Vec::new();
    for (i, _) in gens.iter().enumerate() {
        let mut trial: Vec<IntVec> = basis_idx.iter().map(|&k: &usize| gens[k].clone()).collect();
        trial.push(gens[i].clone());
        if rank_of(&trial, d) == trial.len() {
            basis_idx.push(i);
            if basis_idx.len() == d {
                break;
            }
        }
    }
    // Rays of {y : A0 y >= 0} are the columns of A0^{-1}.
    let mut rays = Vec::with_capacity(d);
    for col in 0..d {
        let mut aug: Vec<Vec<Rational>> = basis_idx
            .iter()
            .enumerate()
            .map(|(r, &k)| {
                gens[k]
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .chain(std::iter::once(Rational::from_integer(BigInt::from(
                        (r == col) as i64,
                    ))))
                    .collect()
            })
            .collect();
        rref(&mut aug);
        let sol: Vec<Rational> = aug.iter().map(|row| row[d].clone()).collect();
        let v = clear_denominators(&sol);
        let mut zeros = vec![0u64; words];
        for (r, &k) in basis_idx.iter().enumerate() {
            if r != col {
                bit_set(&mut zeros, k);
            }
        }
        rays.push(Ray { v, zeros });
    }
    for (i, a) in gens.iter().enumerate() {
        if basis_idx.contains(&i) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (r, val) in rays.iter().zip(&vals) {
            if !val.is_negative() {
                let mut r = r.clone();
                if val.is_zero() {
                    bit_set(&mut r.zeros, i);
                }
                next.push(r);
            }
        }
        for (pi, p) in rays.iter().enumerate() {
            if !vals[pi].is_positive() {
                continue;
            }
            for (ni, n) in rays.iter().enumerate() {
                if !vals[ni].is_negative() {
                    continue;
                }
                let common = bit_and(&p.zeros, &n.zeros);
                if (bit_count(&common) as usize) + 2 < d {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == pi || k == ni || !bit_subset(&common, &r.zeros));
                if !adjacent {
                    continue;
                }
                let v: IntVec =
                    p.v.iter()
                        .zip(&n.v)
                        .map(|(x, y)| x * (-&vals[ni]) + y * &vals[pi])
                        .collect();
                let mut zeros = common;
                bit_set(&mut zeros, i);
                next.push(Ray {
                    v: primitive(&v),
                    zeros,
                });
            }
        }
        rays = next;
    }
    let normals: Vec<IntVec> = rays.iter().map(|r| r.v.clone()).collect();
    if rank_of(&normals, d) != d {
        return Err(invalid("cone is not pointed"));
    }
    let mut out: Vec<Facet> = rays
        .into_iter()
        .map(|r| {
            let incident = (0..gens.len())
                .filter(|&k| dot(&gens[k], &r.v).is_zero())
                .collect();
            Facet {
                normal: r.v,
                incident,
            }
        })
        .collect();
    out.sort_by(|a, b| a.incident.cmp(&b.incident));
    out.dedup_by(|a, b| a.incident == b.incident);
    Ok(out)
}

fn clear_denominators(v: &[Rational]) -> IntVec {
    use num_integer::Integer;
    let l = v.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    primitive(
        &v.iter()
            .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
            .collect::<Vec<_>>(),
    )
}

/// Facets of a cone that need not be full dimensional, computed in a basis
/// of the saturated span. Normals are expressed in that basis.
pub fn facets_in_span(gens: &[IntVec]) -> Result<(Vec<IntVec>, Vec<Facet>)> {
    let width = gens.first().map_or(0, Vec::len);
    let basis = saturated_span(gens, width);
    let local: Vec<IntVec> = gens
        .iter()
        .map(|g| {
            coordinates(&basis, g)
                .expect("generator lies in its own span")
                .into_iter()
                .map(|x| x.to_integer())
                .collect()
        })
        .collect();
    let f = facets(&local)?;
    Ok((basis, f))
}

/// Lower facets of the convex hull of `points` lifted by `heights`: each
/// cell is the sorted list of point indices lying on one lower facet.
pub fn lower_hull_cells(points: &[IntVec], heights: &[BigInt]) -> Result<Vec<Vec<usize>>> {
    let dim = points.first().map_or(0, Vec::len);
    let mut vecs: Vec<IntVec> = points
        .iter()
        .zip(heights)
        .map(|(p, h)| {
            std::iter::once(BigInt::from(1))
                .chain(p.iter().cloned())
                .chain(std::iter::once(h.clone()))
                .collect()
        })
        .collect();
    let mut vertical = vec![BigInt::zero(); dim + 2];
    vertical[dim + 1] = BigInt::from(1);
    vecs.push(vertical);
    let vert_idx = vecs.len() - 1;
    let (_, fs) = facets_in_span(&vecs)?;
    let mut cells: Vec<Vec<usize>> = fs
        .into_iter()
        .filter(|f| !f.incident.contains(&vert_idx))
        .map(|f| f.incident)
        .collect();
    cells.sort();
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::lattice::ivec;

    #[test]
    fn square_cone_has_four_facets() {
        let gens = vec![
            ivec(&[1, 0, 0]),
            ivec(&[1, 1, 0]),
            ivec(&[1, 0, 1]),
            ivec(&[1, 1, 1]),
        ];
        let f = facets(&gens).unwrap();
        assert_eq!(f.len(), 4);
        assert!(f.iter().all(|x| x.incident.len() == 2));
    }

    #[test]
    fn redundant_generator_is_not_a_vertex() {
        let gens = vec![ivec(&[1, 0]), ivec(&[1, 1]), ivec(&[0, 1])];
        let f = facets(&gens).unwrap();
        let inc: Vec<_> = f.iter().map(|x| x.incident.clone()).collect();
        assert_eq!(inc, vec![vec![0], vec![2]]);
    }

    #[test]
    fn non_pointed_is_rejected() {
        assert!(facets(&[ivec(&[1, 0]), ivec(&[-1, 0]), ivec(&[0, 1])]).is_err());
    }

    #[test]
    fn parabola_lower_hull_gives_unit_intervals() {
        let pts: Vec<IntVec> = (-3..=3).map(|c| ivec(&[c])).collect();
        let hs: Vec<BigInt> = (-3i64..=3).map(|c| BigInt::from(c * c)).collect();
        let cells = lower_hull_cells(&pts, &hs).unwrap();
        assert_eq!(cells.len(), 6);
        assert!(cells.iter().all(|c| c.len() == 2 && c[1] == c[0] + 1));
    }

    #[test]
    fn lower_dimensional_cone() {
        let gens = vec![ivec(&[1, 0, 1]), ivec(&[0, 1, 1])];
        let (basis, f) = facets_in_span(&gens).unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(f.len(), 2);
    }
}
