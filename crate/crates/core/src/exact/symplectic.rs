//! Symplectic predicates and floating-point checks of the automorphy factor
//! `J(β, τ) = Cτ + D` on the Siegel upper half-space.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::matrix::IntMatrix;
use super::profile::{eigen_profile, EigenProfile};
use crate::error::{invalid, Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// `ᵗm J m == J` for the standard skew form of size `2g`.
pub fn is_symplectic(m: &IntMatrix, g: usize) -> Result<bool> {
    if g == 0 || m.rows() != 2 * g || m.cols() != 2 * g {
        return Err(invalid(format!(
            "expected a {0}x{0} matrix for g = {g}",
            2 * g
        )));
    }
    let j = IntMatrix::standard_symplectic(g);
    Ok(m.transpose().checked_mul(&j)?.checked_mul(m)? == j)
}

/// Embeds `[[a, b], [c, d]]` in `Sp(2g, Z)` as `(a 1_g, b 1_g; c 1_g, d 1_g)`.
pub fn embed_sl2(a: i64, b: i64, c: i64, d: i64, g: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(2 * g, 2 * g);
    for i in 0..g {
        m[(i, i)] = BigInt::from(a);
        m[(i, i + g)] = BigInt::from(b);
        m[(i + g, i)] = BigInt::from(c);
        m[(i + g, i + g)] = BigInt::from(d);
    }
    m
}

pub fn to_complex(m: &IntMatrix) -> CMatrix {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        Complex64::new(m[(i, j)].to_f64().unwrap_or(f64::NAN), 0.0)
    })
}

/// `i·1_g`.
pub fn siegel_i(g: usize) -> CMatrix {
    CMatrix::identity(g, g) * Complex64::new(0.0, 1.0)
}

/// `τ·1_g` for a scalar point of the upper half-plane.
pub fn scalar_point(tau: Complex64, g: usize) -> CMatrix {
    CMatrix::identity(g, g) * tau
}

struct Blocks {
    a: CMatrix,
    b: CMatrix,
    c: CMatrix,
    d: CMatrix,
}

fn blocks(beta: &CMatrix) -> Result<Blocks> {
    let n = beta.nrows();
    if !n.is_multiple_of(2) || beta.ncols() != n {
        return Err(invalid("symplectic matrix must be 2g x 2g"));
    }
    let g = n / 2;
    Ok(Blocks {
        a: beta.view((0, 0), (g, g)).into_owned(),
        b: beta.view((0, g), (g, g)).into_owned(),
        c: beta.view((g, 0), (g, g)).into_owned(),
        d: beta.view((g, g), (g, g)).into_owned(),
    })
}

/// `J(β, τ) = Cτ + D`.
pub fn automorphy_factor(beta: &CMatrix, tau: &CMatrix) -> Result<CMatrix> {
    let bl = blocks(beta)?;
    if tau.nrows() != bl.a.nrows() || !tau.is_square() {
        return Err(invalid("τ has the wrong size"));
    }
    Ok(&bl.c * tau + &bl.d)
}

/// `β·τ = (Aτ + B)(Cτ + D)⁻¹`.
pub fn act(beta: &CMatrix, tau: &CMatrix) -> Result<CMatrix> {
    let bl = blocks(beta)?;
    let j = automorphy_factor(beta, tau)?;
    let inv = invert(&j)?;
    Ok((&bl.a * tau + &bl.b) * inv)
}

fn invert(j: &CMatrix) -> Result<CMatrix> {
    let det = j.determinant();
    let scale = j.iter().map(|z| z.norm()).fold(0.0_f64, f64::max).max(1.0);
    if det.norm() <= 1e-12 * scale.powi(j.nrows() as i32) {
        return Err(Error::DegenerateInput(
            "Cτ + D is numerically singular".into(),
        ));
    }
    j.clone()
        .try_inverse()
        .ok_or_else(|| Error::DegenerateInput("Cτ + D is numerically singular".into()))
}

fn sup_norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `‖J(β₁β₂, τ) − J(β₁, β₂τ) J(β₂, τ)‖∞`.
pub fn cocycle_residual(b1: &CMatrix, b2: &CMatrix, tau: &CMatrix) -> Result<f64> {
    let lhs = automorphy_factor(&(b1 * b2), tau)?;
    let rhs = automorphy_factor(b1, &act(b2, tau)?)? * automorphy_factor(b2, tau)?;
    Ok(sup_norm(&(lhs - rhs)))
}

pub fn cocycle_check(b1: &CMatrix, b2: &CMatrix, tau: &CMatrix, tol: f64) -> Result<bool> {
    Ok(cocycle_residual(b1, b2, tau)? <= tol)
}

/// One of the elementary generators of `Sp(2g, Z)`: `J`, a symmetric
/// translation `(1, S; 0, 1)` or its transpose, or `(A, 0; 0, A⁻ᵗ)` for an
/// elementary `A`.
pub fn random_generator<R: Rng>(rng: &mut R, g: usize) -> IntMatrix {
    let n = 2 * g;
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let i = rng.gen_range(0..g);
    let j = rng.gen_range(0..g);
    let mut m = IntMatrix::identity(n);
    match rng.gen_range(0..4) {
        0 => return IntMatrix::standard_symplectic(g),
        1 => {
            m[(i, g + j)] += sign;
            if i != j {
                m[(j, g + i)] += sign;
            }
        }
        2 => {
            m[(g + i, j)] += sign;
            if i != j {
                m[(g + j, i)] += sign;
            }
        }
        _ => {
            if i != j {
                // A = 1 + s E_ij, A^{-t} = 1 - s E_ji
                m[(i, j)] += sign;
                m[(g + j, g + i)] -= sign;
            } else {
                m[(i, i)] = BigInt::from(-1);
                m[(g + i, g + i)] = BigInt::from(-1);
            }
        }
    }
    m
}

pub fn random_symplectic<R: Rng>(rng: &mut R, g: usize, word_len: usize) -> IntMatrix {
    (0..word_len).fold(IntMatrix::identity(2 * g), |acc, _| {
        &acc * &random_generator(rng, g)
    })
}

/// A point `X + iY` of the Siegel upper half-space with `Y` positive definite.
pub fn random_siegel_point<R: Rng>(rng: &mut R, g: usize) -> CMatrix {
    let x = DMatrix::from_fn(g, g, |_, _| rng.gen_range(-1.0..1.0));
    let x = (&x + x.transpose()) * 0.5;
    let m = DMatrix::from_fn(g, g, |_, _| rng.gen_range(-1.0..1.0));
    let y = &m * m.transpose() + DMatrix::identity(g, g) * 0.5;
    DMatrix::from_fn(g, g, |i, j| Complex64::new(x[(i, j)], y[(i, j)]))
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleReport {
    pub g: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_residual: f64,
    pub failures: usize,
    pub pass: bool,
}

/// Seeded batch of cocycle checks on random pairs of words of length 4.
pub fn cocycle_trials(g: usize, trials: usize, seed: u64, tol: f64) -> Result<CocycleReport> {
    if g == 0 {
        return Err(invalid("g must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_residual = 0.0_f64;
    let mut failures = 0;
    for _ in 0..trials {
        let b1 = to_complex(&random_symplectic(&mut rng, g, 4));
        let b2 = to_complex(&random_symplectic(&mut rng, g, 4));
        let tau = random_siegel_point(&mut rng, g);
        let r = cocycle_residual(&b1, &b2, &tau)?;
        max_residual = max_residual.max(r);
        // NaN counts as a failure
        if r.is_nan() || r > tol {
            failures += 1;
        }
    }
    Ok(CocycleReport {
        g,
        trials,
        seed,
        tol,
        max_residual,
        failures,
        pass: failures == 0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Splitting {
    /// The conjugate splitting `Λ̄`: smaller exponent of every pair.
    LambdaBar,
    /// The splitting `Λ`: larger exponent of every pair.
    Lambda,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedPointReport {
    pub profile: EigenProfile,
    /// Eigenvalues of `Cτ + D` as `[re, im]`.
    pub eigenvalues: Vec<[f64; 2]>,
    pub matched: Option<Splitting>,
    /// Largest distance between a computed eigenvalue and its match.
    pub max_deviation: f64,
    pub is_trivial: bool,
    pub has_non_one_eigenvalue: bool,
}

/// Compares the spectrum of `Cτ + D` with the two conjugation splittings of
/// the exact eigenvalue profile of `gamma`.
pub fn fixed_point_eigen_check(
    gamma: &IntMatrix,
    tau: &CMatrix,
    tol: f64,
) -> Result<FixedPointReport> {
    let g = tau.nrows();
    if !is_symplectic(gamma, g)? {
        return Err(invalid("gamma is not symplectic"));
    }
    let beta = to_complex(gamma);
    let moved = act(&beta, tau)?;
    if sup_norm(&(moved - tau)) > tol {
        return Err(invalid("τ is not fixed by gamma"));
    }
    let profile = eigen_profile(gamma)?;
    let j = automorphy_factor(&beta, tau)?;
    let eig: Vec<Complex64> = j
        .eigenvalues()
        .ok_or_else(|| Error::DegenerateInput("eigenvalue iteration did not converge".into()))?
        .iter()
        .copied()
        .collect();
    let candidates = [
        (Splitting::LambdaBar, profile.lower_half()?),
        (Splitting::Lambda, profile.upper_half()?),
    ];
    let mut matched = None;
    let mut max_deviation = f64::INFINITY;
    for (which, split) in &candidates {
        let expected: Vec<Complex64> = split.entries().iter().map(|r| r.to_complex()).collect();
        let dev = multiset_distance(&eig, &expected);
        if dev <= tol && matched.is_none() {
            matched = Some(*which);
            max_deviation = dev;
        } else if matched.is_none() {
            max_deviation = max_deviation.min(dev);
        }
    }
    let one = Complex64::new(1.0, 0.0);
    Ok(FixedPointReport {
        eigenvalues: eig.iter().map(|z| [z.re, z.im]).collect(),
        has_non_one_eigenvalue: eig.iter().any(|z| (z - one).norm() > tol),
        is_trivial: gamma.is_identity(),
        profile,
        matched,
        max_deviation,
    })
}

/// Greedy bottleneck matching; exact enough for the well-separated roots of
/// unity that occur here.
fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0_f64;
    for z in a {
        let (k, d) = b
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, w)| (k, (z - w).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("sizes agree");
        used[k] = true;
        worst = worst.max(d);
    }
    worst
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub order: u64,
    pub gamma: IntMatrix,
    #[serde(skip)]
    pub tau: CMatrix,
}

/// Finite-order elements of `SL(2, Z)` embedded diagonally in `Sp(2g, Z)`,
/// each with a fixed point.
pub fn fixed_point_catalog(g: usize) -> Vec<CatalogEntry> {
    let i = Complex64::new(0.0, 1.0);
    let rho = Complex64::new(0.5, 3f64.sqrt() / 2.0);
    let entry = |name: &str, order, (a, b, c, d), tau: Complex64| CatalogEntry {
        name: name.to_string(),
        order,
        gamma: embed_sl2(a, b, c, d, g),
        tau: scalar_point(tau, g),
    };
    vec![
        entry("identity", 1, (1, 0, 0, 1), i),
        entry("minus-identity", 2, (-1, 0, 0, -1), i),
        entry("order-3", 3, (0, -1, 1, -1), rho),
        entry("order-4", 4, (0, -1, 1, 0), i),
        entry("order-6", 6, (1, -1, 1, 0), rho),
    ]
}
