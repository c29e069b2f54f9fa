//! Lifted points `(b; ℓ₁, …, ℓ_n)`, the action of `GL(g'', Z) ⋉ (Z^{g''})^n`
//! on them, and the lifted fan over the perfect cone decomposition.
//!
//! Over a base cone spanned by `ξ_iξ_iᵗ` the lifted cones are spanned by
//! points `(ξ_iξ_iᵗ; c¹ξ_iᵗ, …, cⁿξ_iᵗ)`. For one covector they are the
//! lower faces of the configuration `(e_i, c ξ_i)` lifted to height `c²`;
//! for `n` covectors they are fibre products of such cells over the rays.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cone::{Cone, JsonInteger};
use super::fan::Fan;
use super::hull::lower_hull_cells;
use super::perfect::{superbases_in_box, sym2_coords, sym2_dim, sym2_from_coords, Superbase};
use crate::error::{invalid, Error, Result};
use crate::exact::lattice::{dot, is_primitive, maximal_minor_gcd, IntVec};
use crate::exact::{is_psd, rank_and_radical, IntMatrix, QuadForm};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LiftedPointJson", into = "LiftedPointJson")]
pub struct LiftedPoint {
    pub b: QuadForm,
    pub ells: Vec<IntVec>,
}

#[derive(Serialize, Deserialize)]
struct LiftedPointJson {
    b: QuadForm,
    ells: Vec<Vec<JsonInteger>>,
}

impl From<LiftedPoint> for LiftedPointJson {
    fn from(q: LiftedPoint) -> Self {
        Self {
            b: q.b,
            ells: q
                .ells
                .into_iter()
                .map(|l| l.into_iter().map(JsonInteger).collect())
                .collect(),
        }
    }
}

impl TryFrom<LiftedPointJson> for LiftedPoint {
    type Error = Error;
    fn try_from(j: LiftedPointJson) -> Result<Self> {
        LiftedPoint::new(
            j.b,
            j.ells
                .into_iter()
                .map(|l| l.into_iter().map(|x| x.0).collect())
                .collect(),
        )
    }
}

pub fn lifted_rank(g_dd: usize, n: usize) -> usize {
    sym2_dim(g_dd) + n * g_dd
}

impl LiftedPoint {
    pub fn new(b: QuadForm, ells: Vec<IntVec>) -> Result<Self> {
        if ells.iter().any(|l| l.len() != b.dim()) {
            return Err(invalid("covector length differs from the form's dimension"));
        }
        Ok(Self { b, ells })
    }

    pub fn g_dd(&self) -> usize {
        self.b.dim()
    }

    pub fn n(&self) -> usize {
        self.ells.len()
    }

    /// `(b11, b12, …, b_gg, ℓ₁, …, ℓ_n)`.
    pub fn flatten(&self) -> IntVec {
        let mut v = sym2_coords(&self.b);
        for l in &self.ells {
            v.extend(l.iter().cloned());
        }
        v
    }

    pub fn unflatten(v: &[BigInt], g_dd: usize, n: usize) -> Result<Self> {
        if v.len() != lifted_rank(g_dd, n) {
            return Err(invalid("flattened point has the wrong length"));
        }
        let s = sym2_dim(g_dd);
        let b = sym2_from_coords(&v[..s], g_dd);
        let ells = (0..n)
            .map(|j| v[s + j * g_dd..s + (j + 1) * g_dd].to_vec())
            .collect();
        Ok(Self { b, ells })
    }
}

/// `b` positive semidefinite (integral input has a rational radical).
pub fn in_cone_c(b: &QuadForm) -> bool {
    is_psd(b)
}

/// `b` positive semidefinite and every `ℓ_j` vanishing on its radical.
pub fn in_cone_c_tilde(q: &LiftedPoint) -> bool {
    if !is_psd(&q.b) {
        return false;
    }
    let (_, radical) = rank_and_radical(&q.b);
    q.ells
        .iter()
        .all(|l| radical.iter().all(|r| dot(l, r).is_zero()))
}

/// All `(ξξᵗ; c₁ξᵗ, …, c_nξᵗ)` with `|c_j| <= coeff_bound`, `c`
/// lexicographically increasing.
pub fn rank1_lift_generators(
    xi: &[BigInt],
    n: usize,
    coeff_bound: i64,
) -> Result<Vec<LiftedPoint>> {
    if xi.is_empty() || !is_primitive(xi) {
        return Err(invalid("ξ must be a primitive nonzero vector"));
    }
    if coeff_bound < 1 {
        return Err(invalid("coefficient bound must be at least 1"));
    }
    let b = QuadForm::rank_one(xi);
    let mut out = Vec::new();
    let mut c = vec![-coeff_bound; n];
    loop {
        let ells = c
            .iter()
            .map(|&cj| xi.iter().map(|x| x * cj).collect())
            .collect();
        out.push(LiftedPoint { b: b.clone(), ells });
        // odometer
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if c[k] < coeff_bound {
                c[k] += 1;
                break;
            }
            c[k] = -coeff_bound;
        }
    }
}

fn check_unimodular(h: &IntMatrix) -> Result<()> {
    if !h.is_square() || maximal_minor_gcd(&h.to_rows(), h.cols()) != BigInt::from(1) {
        return Err(invalid("h is not in GL(g'', Z)"));
    }
    Ok(())
}

fn act_unchecked(h: &IntMatrix, x: &[IntVec], q: &LiftedPoint) -> Result<LiftedPoint> {
    let b = q.b.matrix();
    let bh = b.checked_mul(h)?;
    let new_b = h.transpose().checked_mul(&bh)?;
    let ht = h.transpose();
    let ells = q
        .ells
        .iter()
        .zip(x)
        .map(|(l, xj)| {
            let lh = ht.mul_vec(l)?;
            let shift = bh.transpose().mul_vec(xj)?;
            Ok(lh.iter().zip(&shift).map(|(a, s)| a + s).collect())
        })
        .collect::<Result<Vec<IntVec>>>()?;
    Ok(LiftedPoint {
        b: QuadForm::new(new_b)?,
        ells,
    })
}

/// `b ↦ hᵗ b h`, `ℓ_j ↦ ℓ_j h + x_jᵗ b h`.
pub fn group_act(h: &IntMatrix, x: &[IntVec], q: &LiftedPoint) -> Result<LiftedPoint> {
    check_unimodular(h)?;
    if h.rows() != q.g_dd() || x.len() != q.n() || x.iter().any(|v| v.len() != q.g_dd()) {
        return Err(invalid("group element does not match the point's shape"));
    }
    let out = act_unchecked(h, x, q)?;
    debug_assert!(!in_cone_c_tilde(q) || in_cone_c_tilde(&out));
    Ok(out)
}

/// Matrix of `group_act(h, x, ·)` on flattened coordinates.
pub fn action_matrix(h: &IntMatrix, x: &[IntVec], n: usize) -> Result<IntMatrix> {
    check_unimodular(h)?;
    let g = h.rows();
    if x.len() != n {
        return Err(invalid("need one translation vector per covector"));
    }
    let dim = lifted_rank(g, n);
    let mut m = IntMatrix::zeros(dim, dim);
    for k in 0..dim {
        let mut e = vec![BigInt::zero(); dim];
        e[k] = 1.into();
        let img = act_unchecked(h, x, &LiftedPoint::unflatten(&e, g, n)?)?.flatten();
        for (r, val) in img.into_iter().enumerate() {
            m[(r, k)] = val;
        }
    }
    Ok(m)
}

/// Projection `(b; ℓ) ↦ b` on flattened coordinates.
pub fn base_projection(g_dd: usize, n: usize) -> IntMatrix {
    let s = sym2_dim(g_dd);
    let mut p = IntMatrix::zeros(s, lifted_rank(g_dd, n));
    for i in 0..s {
        p[(i, i)] = 1.into();
    }
    p
}

/// A cell over the principal base cone: for each base ray `i` the set of
/// coefficients `c` used on that ray.
pub type Cell = Vec<BTreeSet<i64>>;

fn principal_xis(g_dd: usize) -> Vec<Vec<i64>> {
    match g_dd {
        1 => vec![vec![1]],
        _ => vec![vec![1, 0], vec![0, 1], vec![1, 1]],
    }
}

/// Translating `ℓ` by `b(x, ·)` shifts the coefficient on ray `i` by `ξ_i·x`.
fn translate(cell: &Cell, xis: &[Vec<i64>], x: &[i64]) -> Cell {
    cell.iter()
        .zip(xis)
        .map(|(cs, xi)| {
            let s: i64 = xi.iter().zip(x).map(|(a, b)| a * b).sum();
            cs.iter().map(|c| c + s).collect()
        })
        .collect()
}

/// Representative with `min c = 0` on the first `g''` rays (a basis).
fn canonical(cell: &Cell, xis: &[Vec<i64>], g_dd: usize) -> Cell {
    let x: Vec<i64> = (0..g_dd)
        .map(|i| -cell[i].iter().min().copied().unwrap_or(0))
        .collect();
    translate(cell, xis, &x)
}

/// Translation classes of maximal cells for a single covector.
pub fn single_cell_classes(g_dd: usize) -> Result<&'static [Cell]> {
    static ONE: OnceLock<Vec<Cell>> = OnceLock::new();
    static TWO: OnceLock<Vec<Cell>> = OnceLock::new();
    let slot = match g_dd {
        1 => &ONE,
        2 => &TWO,
        _ => return Err(Error::UnsupportedRank(g_dd)),
    };
    if let Some(v) = slot.get() {
        return Ok(v);
    }
    let computed = compute_single_cells(g_dd)?;
    Ok(slot.get_or_init(|| computed))
}

fn compute_single_cells(g_dd: usize) -> Result<Vec<Cell>> {
    const RANGE: i64 = 3;
    let xis = principal_xis(g_dd);
    let k = xis.len();
    let mut labels = Vec::new();
    let mut points = Vec::new();
    let mut heights = Vec::new();
    for (i, xi) in xis.iter().enumerate() {
        for c in -RANGE..=RANGE {
            let mut p: IntVec = (0..k).map(|j| BigInt::from((i == j) as i64)).collect();
            p.extend(xi.iter().map(|x| BigInt::from(c * x)));
            points.push(p);
            heights.push(BigInt::from(c * c));
            labels.push((i, c));
        }
    }
    let mut classes = BTreeSet::new();
    for cell_idx in lower_hull_cells(&points, &heights)? {
        let mut cell: Cell = vec![BTreeSet::new(); k];
        for &p in &cell_idx {
            let (i, c) = labels[p];
            cell[i].insert(c);
        }
        // cells meeting the truncation boundary may be artifacts
        if cell
            .iter()
            .any(|cs| cs.is_empty() || cs.iter().any(|c| c.abs() >= RANGE))
        {
            continue;
        }
        classes.insert(canonical(&cell, &xis, g_dd));
    }
    Ok(classes.into_iter().collect())
}

/// Translates of `class` whose coefficients all lie in `[-bound, bound]`.
fn translates_in_window(class: &Cell, xis: &[Vec<i64>], g_dd: usize, bound: i64) -> Vec<Cell> {
    let reach = 2 * bound + 4;
    let mut out = Vec::new();
    let mut x = vec![-reach; g_dd];
    loop {
        let t = translate(class, xis, &x);
        if t.iter().all(|cs| cs.iter().all(|c| c.abs() <= bound)) {
            out.push(t);
        }
        let mut k = g_dd;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if x[k] < reach {
                x[k] += 1;
                break;
            }
            x[k] = -reach;
        }
    }
}

/// Generators of the product cell over the superbase `sb`: one point per
/// ray `i` and per choice of a coefficient from every factor.
fn product_cell_generators(sb: &Superbase, g_dd: usize, factors: &[&Cell]) -> Vec<IntVec> {
    let xis: Vec<IntVec> = if g_dd == 1 {
        vec![vec![1.into()]]
    } else {
        sb.vectors().to_vec()
    };
    let mut gens = Vec::new();
    for (i, xi) in xis.iter().enumerate() {
        let r = sym2_coords(&QuadForm::rank_one(xi));
        let mut choices: Vec<Vec<i64>> = vec![vec![]];
        for f in factors {
            choices = choices
                .into_iter()
                .flat_map(|prefix| {
                    f[i].iter().map(move |&c| {
                        let mut p = prefix.clone();
                        p.push(c);
                        p
                    })
                })
                .collect();
        }
        for cs in choices {
            let mut v = r.clone();
            for c in cs {
                v.extend(xi.iter().map(|x| x * c));
            }
            gens.push(v);
        }
    }
    gens
}

fn cartesian<'a>(lists: &[&'a [Cell]]) -> Vec<Vec<&'a Cell>> {
    let mut acc: Vec<Vec<&Cell>> = vec![vec![]];
    for list in lists {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    acc
}

fn base_superbases(g_dd: usize, bound: i64) -> Vec<Superbase> {
    if g_dd == 1 {
        vec![Superbase::principal()]
    } else {
        superbases_in_box(bound)
    }
}

/// Lifted fan over the window `|ξ|∞ <= window − 1`, `|c| <= window − 1`.
///
/// Cones are the maximal lifted cells; base cones `σ × {0}` and all other
/// faces are implicit.
pub fn lifted_fan(g_dd: usize, n: usize, window: i64) -> Result<Fan> {
    if window < 2 {
        return Err(Error::EmptyFan);
    }
    if n == 0 {
        return Err(invalid("lifted fan needs n >= 1"));
    }
    let classes = single_cell_classes(g_dd)?;
    let bound = window - 1;
    let xis = principal_xis(g_dd);
    let per_factor: Vec<Cell> = classes
        .iter()
        .flat_map(|cl| translates_in_window(cl, &xis, g_dd, bound))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let rank = lifted_rank(g_dd, n);
    let mut cones = Vec::new();
    for sb in base_superbases(g_dd, bound) {
        let lists = vec![per_factor.as_slice(); n];
        for combo in cartesian(&lists) {
            cones.push(Cone::new_unchecked(
                rank,
                product_cell_generators(&sb, g_dd, &combo),
            )?);
        }
    }
    if cones.is_empty() {
        return Err(Error::EmptyFan);
    }
    Fan::new(rank, cones, Some(base_projection(g_dd, n)))
}

/// One lifted cone per translation class over the principal base cone.
/// Every cone of the lifted fan is the image of one of these under
/// `GL(g'', Z) ⋉ (Z^{g''})^n`.
pub fn lifted_representatives(g_dd: usize, n: usize) -> Result<Fan> {
    if n == 0 {
        return Err(invalid("lifted fan needs n >= 1"));
    }
    let classes = single_cell_classes(g_dd)?;
    let rank = lifted_rank(g_dd, n);
    let lists = vec![classes; n];
    let sb = Superbase::principal();
    let cones = cartesian(&lists)
        .into_iter()
        .map(|combo| Cone::new_unchecked(rank, product_cell_generators(&sb, g_dd, &combo)))
        .collect::<Result<Vec<_>>>()?;
    Fan::new(rank, cones, Some(base_projection(g_dd, n)))
}

/// The base fan matching `lifted_fan(g_dd, n, window)`.
pub fn base_fan(g_dd: usize, window: i64) -> Result<Fan> {
    super::perfect::perfect_cone_fan_window(g_dd, window - 1)
}

/// `ξ`-part of a rank one quadratic part, if it is rank one.
pub fn rank_one_root(b: &QuadForm) -> Option<IntVec> {
    let (r, _) = rank_and_radical(b);
    if r != 1 {
        return None;
    }
    let n = b.dim();
    let i = (0..n).find(|&i| !b.matrix()[(i, i)].is_zero())?;
    let d = b.matrix()[(i, i)].clone();
    let root = d.sqrt();
    if &root * &root != d {
        return None;
    }
    Some((0..n).map(|j| &b.matrix()[(i, j)] / &root).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::lattice::ivec;

    #[test]
    fn cone_c_examples() {
        assert!(in_cone_c(&QuadForm::diagonal(&[1, 0])));
        assert!(!in_cone_c(&QuadForm::diagonal(&[-1, 1])));
        assert!(in_cone_c(&QuadForm::rank_one(&ivec(&[2, 3]))));
        let p = |b: QuadForm, l: &[i64]| LiftedPoint::new(b, vec![ivec(l)]).unwrap();
        assert!(!in_cone_c_tilde(&p(QuadForm::diagonal(&[0]), &[1])));
        assert!(in_cone_c_tilde(&p(QuadForm::diagonal(&[1]), &[5])));
        assert!(!in_cone_c_tilde(&p(QuadForm::diagonal(&[1, 0]), &[0, 1])));
    }

    #[test]
    fn rank_one_lifts() {
        let pts = rank1_lift_generators(&ivec(&[1]), 1, 1).unwrap();
        let flat: Vec<IntVec> = pts.iter().map(LiftedPoint::flatten).collect();
        assert_eq!(flat, vec![ivec(&[1, -1]), ivec(&[1, 0]), ivec(&[1, 1])]);
        let pts = rank1_lift_generators(&ivec(&[1, 0]), 0, 4).unwrap();
        assert_eq!(pts.len(), 1);
        let pts = rank1_lift_generators(&ivec(&[1, 1]), 1, 1).unwrap();
        let ells: Vec<IntVec> = pts.iter().map(|p| p.ells[0].clone()).collect();
        assert_eq!(ells, vec![ivec(&[-1, -1]), ivec(&[0, 0]), ivec(&[1, 1])]);
        assert!(rank1_lift_generators(&ivec(&[2, 2]), 1, 1).is_err());
        assert!(pts.iter().all(in_cone_c_tilde));
    }

    #[test]
    fn actions() {
        let q = LiftedPoint::new(QuadForm::diagonal(&[1]), vec![ivec(&[0])]).unwrap();
        let h = IntMatrix::identity(1);
        let out = group_act(&h, &[ivec(&[1])], &q).unwrap();
        assert_eq!(out.ells, vec![ivec(&[1])]);
        let q = LiftedPoint::new(QuadForm::diagonal(&[1]), vec![ivec(&[1])]).unwrap();
        let out = group_act(&IntMatrix::from_i64(&[&[-1]]), &[ivec(&[0])], &q).unwrap();
        assert_eq!(out.ells, vec![ivec(&[-1])]);
        assert!(group_act(&IntMatrix::from_i64(&[&[2]]), &[ivec(&[0])], &q).is_err());
        let m = action_matrix(&h, &[ivec(&[1])], 1).unwrap();
        assert_eq!(m, IntMatrix::from_i64(&[&[1, 0], &[1, 1]]));
    }

    #[test]
    fn staircase_from_lower_hull() {
        let f = lifted_fan(1, 1, 3).unwrap();
        let expected: Vec<Cone> = (-2..2)
            .map(|c| Cone::from_i64(2, &[&[1, c], &[1, c + 1]]).unwrap())
            .collect();
        assert_eq!(f.cones(), expected.as_slice());
    }

    #[test]
    fn unit_squares_for_two_covectors() {
        let f = lifted_fan(1, 2, 2).unwrap();
        assert_eq!(f.len(), 4);
        for c in f.cones() {
            assert_eq!(c.generators().len(), 4);
            assert_eq!(c.dim(), 3);
        }
    }

    #[test]
    fn binary_cells_are_simplicial() {
        let classes = single_cell_classes(2).unwrap();
        assert!(!classes.is_empty());
        let reps = lifted_representatives(2, 1).unwrap();
        for c in reps.cones() {
            assert_eq!(c.dim(), 5);
            assert!(c.is_simplicial());
        }
    }

    #[test]
    fn rank_one_roots() {
        assert_eq!(
            rank_one_root(&QuadForm::rank_one(&ivec(&[2, -3]))),
            Some(ivec(&[2, -3]))
        );
        assert_eq!(rank_one_root(&QuadForm::diagonal(&[1, 1])), None);
    }
}
