//! Integer and rational linear algebra on small dense systems: unimodular
//! column echelon forms, saturated kernels, rank and rational solves.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::rational::Rational;

pub type IntVec = Vec<BigInt>;

pub fn ivec(xs: &[i64]) -> IntVec {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    content(v).is_one()
}

/// Divides out the content; the zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> IntVec {
    let g = content(v);
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Flips the sign so that the first nonzero entry is positive.
pub fn sign_normalize(v: &[BigInt]) -> IntVec {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => v.iter().map(|y| -y).collect(),
        _ => v.to_vec(),
    }
}

/// Result of reducing `m` by unimodular column operations:
/// `echelon = m * transform`, lower echelon, with the first `rank` columns
/// nonzero and the remaining ones zero.
pub struct ColumnEchelon {
    pub echelon: IntMatrix,
    pub transform: IntMatrix,
    pub rank: usize,
    /// Row index of the leading entry of each nonzero column.
    pub pivot_rows: Vec<usize>,
}

pub fn column_echelon(m: &IntMatrix) -> ColumnEchelon {
    let (rows, cols) = (m.rows(), m.cols());
    let mut e = m.clone();
    let mut u = IntMatrix::identity(cols);
    let mut rank = 0;
    let mut pivot_rows = Vec::new();
    for i in 0..rows {
        if rank == cols {
            break;
        }
        // Fold every column j > rank into column `rank` by extended gcd.
        for j in rank + 1..cols {
            if e[(i, j)].is_zero() {
                continue;
            }
            let a = e[(i, rank)].clone();
            let b = e[(i, j)].clone();
            let ext = a.extended_gcd(&b);
            let (g, x, y) = (ext.gcd, ext.x, ext.y);
            let (ag, bg) = (&a / &g, &b / &g);
            // [col_rank, col_j] <- [x col_rank + y col_j, -bg col_rank + ag col_j]
            combine_columns(&mut e, rank, j, &x, &y, &bg, &ag);
            combine_columns(&mut u, rank, j, &x, &y, &bg, &ag);
        }
        if !e[(i, rank)].is_zero() {
            if e[(i, rank)].is_negative() {
                negate_column(&mut e, rank);
                negate_column(&mut u, rank);
            }
            pivot_rows.push(i);
            rank += 1;
        }
    }
    ColumnEchelon {
        echelon: e,
        transform: u,
        rank,
        pivot_rows,
    }
}

fn combine_columns(
    m: &mut IntMatrix,
    p: usize,
    q: usize,
    x: &BigInt,
    y: &BigInt,
    bg: &BigInt,
    ag: &BigInt,
) {
    for r in 0..m.rows() {
        let cp = m[(r, p)].clone();
        let cq = m[(r, q)].clone();
        m[(r, p)] = x * &cp + y * &cq;
        m[(r, q)] = ag * &cq - bg * &cp;
    }
}

fn negate_column(m: &mut IntMatrix, p: usize) {
    for r in 0..m.rows() {
        m[(r, p)] = -m[(r, p)].clone();
    }
}

fn matrix_of_rows(rows: &[IntVec], width: usize) -> IntMatrix {
    if rows.is_empty() {
        return IntMatrix::zeros(1, width);
    }
    IntMatrix::from_rows(rows).expect("rows of equal width")
}

/// Saturated basis of `{x in Z^cols : m x = 0}`, each vector sign-normalized.
pub fn integer_kernel(m: &IntMatrix) -> Vec<IntVec> {
    let ce = column_echelon(m);
    (ce.rank..m.cols())
        .map(|j| {
            sign_normalize(
                &(0..m.cols())
                    .map(|i| ce.transform[(i, j)].clone())
                    .collect::<Vec<_>>(),
            )
        })
        .collect()
}

pub fn rank(m: &IntMatrix) -> usize {
    column_echelon(m).rank
}

pub fn rank_of(vectors: &[IntVec], width: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(&matrix_of_rows(vectors, width))
}

/// gcd of the maximal minors of the matrix whose rows are `vectors`; zero
/// when the vectors are dependent. Equals the index of their span in its
/// saturation.
pub fn maximal_minor_gcd(vectors: &[IntVec], width: usize) -> BigInt {
    let m = matrix_of_rows(vectors, width);
    let ce = column_echelon(&m);
    if ce.rank < vectors.len() {
        return BigInt::zero();
    }
    (0..vectors.len())
        .map(|i| ce.echelon[(i, i)].clone())
        .product::<BigInt>()
        .abs()
}

/// Basis of the lattice `span_R(vectors) ∩ Z^width`.
pub fn saturated_span(vectors: &[IntVec], width: usize) -> Vec<IntVec> {
    let ann = integer_kernel(&matrix_of_rows(vectors, width));
    if vectors.iter().all(|v| v.iter().all(Zero::is_zero)) {
        return vec![];
    }
    if ann.is_empty() {
        return (0..width)
            .map(|i| (0..width).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
    }
    integer_kernel(&matrix_of_rows(&ann, width))
}

/// Reduced row echelon form over the rationals; returns pivot columns.
pub fn rref(a: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let (head, tail) = a.split_at_mut(i.max(r));
                let (src, dst) = if i < r {
                    (&tail[0], &mut head[i])
                } else {
                    (&head[r], &mut tail[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d -= &f * s;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Some solution of `a x = b` over the rationals, or `None` when
/// inconsistent. Free variables are set to zero.
pub fn solve_rational(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            row.iter()
                .cloned()
                .chain(std::iter::once(rhs.clone()))
                .collect()
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn to_rational(v: &[BigInt]) -> Vec<Rational> {
    v.iter()
        .map(|x| Rational::from_integer(x.clone()))
        .collect()
}

/// Coordinates of `v` in the basis `basis` (rows), if `v` lies in its span.
pub fn coordinates(basis: &[IntVec], v: &[BigInt]) -> Option<Vec<Rational>> {
    let width = v.len();
    let a: Vec<Vec<Rational>> = (0..width)
        .map(|i| {
            basis
                .iter()
                .map(|b| Rational::from_integer(b[i].clone()))
                .collect()
        })
        .collect();
    solve_rational(&a, &to_rational(v))
}
