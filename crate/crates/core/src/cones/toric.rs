//! Smoothness and canonicity of affine toric varieties `U_σ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::cone::Cone;
use crate::exact::lattice::{
    coordinates, maximal_minor_gcd, saturated_span, solve_rational, IntVec,
};
use crate::exact::rational::pq_string_vec;
use crate::exact::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ToricVerdict {
    Smooth,
    Canonical,
    NotCanonical,
    NotQGorenstein,
}

impl ToricVerdict {
    /// Smooth or canonical.
    pub fn is_canonical(self) -> bool {
        matches!(self, Self::Smooth | Self::Canonical)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToricReport {
    pub verdict: ToricVerdict,
    /// Covector with `m·v = 1` on every ray generator, in ambient
    /// coordinates; absent for smooth and non Q-Gorenstein cones.
    #[serde(serialize_with = "pq_string_vec::serialize_opt")]
    pub m: Option<Vec<Rational>>,
    /// Gorenstein index: least `N` with `N·m` integral on the lattice.
    pub index: u64,
    /// Nonzero lattice point of the cone with `m·v < 1`.
    #[serde(serialize_with = "crate::exact::matrix::int_vec_json::serialize_opt")]
    pub violating_point: Option<IntVec>,
}

/// Decides smooth / canonical / not canonical / not Q-Gorenstein.
///
/// Works in a basis of the saturated span of the cone. Smooth means
/// simplicial with unimodular generators. Otherwise `m` solves `m·v_i = 1`;
/// the cone is canonical iff no nonzero lattice point has `m·v < 1`, and
/// such points are searched in the box around `{0} ∪ {v_i}`, which contains
/// the slab `{v ∈ σ : m·v <= 1}`.
pub fn toric_is_canonical(c: &Cone) -> ToricReport {
    let gens = if c.is_simplicial() {
        c.generators().to_vec()
    } else {
        c.extreme_generators()
    };
    let width = c.ambient_rank();
    let basis = saturated_span(&gens, width);
    let d = basis.len();
    let local: Vec<IntVec> = gens
        .iter()
        .map(|g| {
            coordinates(&basis, g)
                .expect("in span")
                .into_iter()
                .map(|x| x.to_integer())
                .collect()
        })
        .collect();
    let simplicial = gens.len() == d;
    if simplicial && maximal_minor_gcd(&local, d).is_one() {
        return ToricReport {
            verdict: ToricVerdict::Smooth,
            m: None,
            index: 1,
            violating_point: None,
        };
    }
    let a: Vec<Vec<Rational>> = local
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let ones = vec![Rational::one(); local.len()];
    let Some(m_local) = solve_rational(&a, &ones) else {
        return ToricReport {
            verdict: ToricVerdict::NotQGorenstein,
            m: None,
            index: 0,
            violating_point: None,
        };
    };
    let m_ambient = {
        let a: Vec<Vec<Rational>> = gens
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect()
            })
            .collect();
        solve_rational(&a, &ones).expect("consistent in local coordinates")
    };
    let index = m_local
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let index_u64 = index.to_u64().unwrap_or(u64::MAX);
    if index.is_one() {
        return ToricReport {
            verdict: ToricVerdict::Canonical,
            m: Some(m_ambient),
            index: 1,
            violating_point: None,
        };
    }
    let p: IntVec = m_local
        .iter()
        .map(|x| (x * Rational::from_integer(index.clone())).to_integer())
        .collect();
    let found = fast_search(&local, &p, &index, simplicial)
        .unwrap_or_else(|| slow_search(&local, &p, &index));
    let violating_point = found.map(|x| {
        (0..width)
            .map(|k| x.iter().zip(&basis).map(|(xi, b)| xi * &b[k]).sum())
            .collect()
    });
    ToricReport {
        verdict: if violating_point.is_some() {
            ToricVerdict::NotCanonical
        } else {
            ToricVerdict::Canonical
        },
        m: Some(m_ambient),
        index: index_u64,
        violating_point,
    }
}

fn bounding_box(local: &[IntVec]) -> Vec<(BigInt, BigInt)> {
    let d = local[0].len();
    (0..d)
        .map(|k| {
            let lo = local
                .iter()
                .map(|v| v[k].clone())
                .min()
                .expect("gens")
                .min(BigInt::zero());
            let hi = local
                .iter()
                .map(|v| v[k].clone())
                .max()
                .expect("gens")
                .max(BigInt::zero());
            (lo, hi)
        })
        .collect()
}

/// Machine integer search; `None` when the data do not fit comfortably.
fn fast_search(
    local: &[IntVec],
    p: &IntVec,
    index: &BigInt,
    simplicial: bool,
) -> Option<Option<IntVec>> {
    let d = p.len();
    let small = |x: &BigInt| x.to_i64().filter(|v| v.abs() < 1 << 20);
    let pv: Vec<i64> = p.iter().map(small).collect::<Option<_>>()?;
    let n = small(index)?;
    let bx: Vec<(i64, i64)> = bounding_box(local)
        .iter()
        .map(|(a, b)| Some((small(a)?, small(b)?)))
        .collect::<Option<_>>()?;
    let volume: f64 = bx.iter().map(|(a, b)| (b - a + 1) as f64).product();
    if volume > 5e6 {
        return None;
    }
    // For simplicial cones: adj(A) x >= 0 (times sign det) decides membership,
    // with A having the generators as columns.
    let inverse = if simplicial {
        Some(adjugate_columns(local)?)
    } else {
        None
    };
    let cone_local = Cone::new_unchecked(d, local.to_vec()).ok()?;
    let mut best: Option<(i64, Vec<i64>)> = None;
    let mut x: Vec<i64> = bx.iter().map(|b| b.0).collect();
    loop {
        let level: i64 = pv.iter().zip(&x).map(|(a, b)| a * b).sum();
        if level > 0 && level < n && best.as_ref().is_none_or(|(l, _)| level < *l) {
            let inside = match &inverse {
                Some((adj, sign)) => adj.iter().all(|row| {
                    let s: i128 = row.iter().zip(&x).map(|(a, b)| a * (*b as i128)).sum();
                    s * sign >= 0
                }),
                None => {
                    cone_local.contains(&x.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>())
                }
            };
            if inside {
                best = Some((level, x.clone()));
            }
        }
        let mut k = d;
        loop {
            if k == 0 {
                return Some(best.map(|(_, v)| v.into_iter().map(BigInt::from).collect()));
            }
            k -= 1;
            if x[k] < bx[k].1 {
                x[k] += 1;
                break;
            }
            x[k] = bx[k].0;
        }
    }
}

/// Adjugate of the square matrix with `cols` as columns, and the sign of
/// its determinant.
fn adjugate_columns(cols: &[IntVec]) -> Option<(Vec<Vec<i128>>, i128)> {
    let d = cols.len();
    let a: Vec<Vec<i128>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| cols[j][i].to_i128())
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<_>>()?;
    let det = det_i128(&a);
    if det == 0 {
        return None;
    }
    let mut adj = vec![vec![0i128; d]; d];
    for i in 0..d {
        for j in 0..d {
            let minor: Vec<Vec<i128>> = (0..d)
                .filter(|&r| r != j)
                .map(|r| (0..d).filter(|&c| c != i).map(|c| a[r][c]).collect())
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i][j] = s * det_i128(&minor);
        }
    }
    Some((adj, det.signum()))
}

fn det_i128(a: &[Vec<i128>]) -> i128 {
    match a.len() {
        0 => 1,
        1 => a[0][0],
        2 => a[0][0] * a[1][1] - a[0][1] * a[1][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = (1..n)
                    .map(|r| (0..n).filter(|&c| c != j).map(|c| a[r][c]).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * a[0][j] * det_i128(&minor)
            })
            .sum(),
    }
}

fn slow_search(local: &[IntVec], p: &IntVec, index: &BigInt) -> Option<IntVec> {
    let d = p.len();
    let bx = bounding_box(local);
    let cone_local = Cone::new_unchecked(d, local.to_vec()).expect("nonzero generators");
    let mut best: Option<(BigInt, IntVec)> = None;
    let mut x: IntVec = bx.iter().map(|b| b.0.clone()).collect();
    loop {
        let level: BigInt = p.iter().zip(&x).map(|(a, b)| a * b).sum();
        if level.is_positive()
            && level < *index
            && best.as_ref().is_none_or(|(l, _)| level < *l)
            && cone_local.contains(&x)
        {
            best = Some((level, x.clone()));
        }
        let mut k = d;
        loop {
            if k == 0 {
                return best.map(|(_, v)| v);
            }
            k -= 1;
            if x[k] < bx[k].1 {
                x[k] += 1;
                break;
            }
            x[k] = bx[k].0.clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::lattice::ivec;
    use crate::exact::rational::int;

    #[test]
    fn two_dimensional_examples() {
        let c = Cone::from_i64(2, &[&[1, 0], &[1, 1]]).unwrap();
        assert_eq!(toric_is_canonical(&c).verdict, ToricVerdict::Smooth);
        let c = Cone::from_i64(2, &[&[1, 0], &[1, 2]]).unwrap();
        let r = toric_is_canonical(&c);
        assert_eq!(r.verdict, ToricVerdict::Canonical);
        assert_eq!(r.m, Some(vec![int(1), int(0)]));
        let c = Cone::from_i64(2, &[&[1, 0], &[1, 3]]).unwrap();
        assert_eq!(toric_is_canonical(&c).verdict, ToricVerdict::Canonical);
    }

    #[test]
    fn terminal_quotient_is_not_canonical() {
        // 1/3(1,1): generators (0,1), (3,-1); the point (1,0) has m-value 2/3
        let c = Cone::from_i64(2, &[&[0, 1], &[3, -1]]).unwrap();
        let r = toric_is_canonical(&c);
        assert_eq!(r.verdict, ToricVerdict::NotCanonical);
        assert_eq!(r.index, 3);
        assert_eq!(r.violating_point, Some(ivec(&[1, 0])));
    }

    #[test]
    fn square_cone_is_gorenstein() {
        let c = Cone::from_i64(3, &[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1], &[1, 1, 1]]).unwrap();
        let r = toric_is_canonical(&c);
        assert_eq!(r.verdict, ToricVerdict::Canonical);
        assert_eq!(r.index, 1);
    }

    #[test]
    fn non_gorenstein_pyramid() {
        // m = (1,1,1) on the coordinate rays but m·(1,1,-2) = 0
        let c = Cone::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, -2]]).unwrap();
        assert_eq!(toric_is_canonical(&c).verdict, ToricVerdict::NotQGorenstein);
    }

    #[test]
    fn lower_dimensional_cone_in_bigger_lattice() {
        let c = Cone::from_i64(3, &[&[1, 0, 0], &[1, 2, 0]]).unwrap();
        assert_eq!(toric_is_canonical(&c).verdict, ToricVerdict::Canonical);
        let c = Cone::from_i64(3, &[&[1, 0, 1], &[0, 1, 1]]).unwrap();
        assert_eq!(toric_is_canonical(&c).verdict, ToricVerdict::Smooth);
    }
}
