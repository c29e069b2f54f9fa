//! Tangent spectra of boundary stabilizers and their Reid-Tai ages.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exact::rational::pq_string;
use crate::exact::{EigenProfile, Rational, RootOfUnity};

/// Action of the `Sp(2g', Z)` block on the cusp.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaKind {
    Identity,
    MinusIdentity,
    /// Eigenvalues of `γ'`, `2g'` entries, closed under conjugation.
    Elliptic(EigenProfile),
}

/// Action of the `GL(g'', Z)` block.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UKind {
    /// `u = ε·1` with `ε = ±1`.
    Epsilon(i8),
    /// Eigenvalues of `u`, `g''` entries, closed under conjugation.
    General(EigenProfile),
}

/// Eigenvalue data of a stabilizer element of a boundary point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawProfile")]
pub struct StabilizerProfile {
    pub g_prime: usize,
    pub g_dd: usize,
    pub n: usize,
    pub gamma: GammaKind,
    pub u: UKind,
}

#[derive(Deserialize)]
struct RawProfile {
    g_prime: usize,
    g_dd: usize,
    n: usize,
    gamma: GammaKind,
    u: UKind,
}

impl TryFrom<RawProfile> for StabilizerProfile {
    type Error = crate::error::Error;
    fn try_from(r: RawProfile) -> Result<Self> {
        StabilizerProfile::new(r.g_prime, r.g_dd, r.n, r.gamma, r.u)
    }
}

impl StabilizerProfile {
    pub fn new(g_prime: usize, g_dd: usize, n: usize, gamma: GammaKind, u: UKind) -> Result<Self> {
        if g_dd == 0 {
            return Err(invalid("g'' must be at least 1"));
        }
        if let GammaKind::Elliptic(p) = &gamma {
            if p.len() != 2 * g_prime {
                return Err(invalid(format!(
                    "gamma' profile has {} entries, expected {}",
                    p.len(),
                    2 * g_prime
                )));
            }
            if !p.is_conjugation_closed() {
                return Err(invalid("gamma' profile is not closed under conjugation"));
            }
            if p.all_equal_to(RootOfUnity::ONE) || p.all_equal_to(RootOfUnity::MINUS_ONE) {
                return Err(invalid(
                    "scalar gamma' must use the Identity or MinusIdentity kind",
                ));
            }
            p.conjugate_pairs()?;
        }
        match &u {
            UKind::Epsilon(e) if *e != 1 && *e != -1 => {
                return Err(invalid("epsilon must be +1 or -1"))
            }
            UKind::General(p) if p.len() != g_dd => {
                return Err(invalid(format!(
                    "u profile has {} entries, expected {g_dd}",
                    p.len()
                )))
            }
            UKind::General(p) if !p.is_conjugation_closed() => {
                return Err(invalid("u profile is not closed under conjugation"))
            }
            _ => {}
        }
        Ok(Self {
            g_prime,
            g_dd,
            n,
            gamma,
            u,
        })
    }

    /// Conjugate pairs `(λ, λ̄)` of `γ'`, smaller exponent first.
    pub fn gamma_pairs(&self) -> Vec<(RootOfUnity, RootOfUnity)> {
        match &self.gamma {
            GammaKind::Identity => vec![(RootOfUnity::ONE, RootOfUnity::ONE); self.g_prime],
            GammaKind::MinusIdentity => {
                vec![(RootOfUnity::MINUS_ONE, RootOfUnity::MINUS_ONE); self.g_prime]
            }
            GammaKind::Elliptic(p) => p.conjugate_pairs().expect("validated on construction"),
        }
    }

    /// Eigenvalues `μ_j` of `u`.
    pub fn mu(&self) -> Vec<RootOfUnity> {
        match &self.u {
            UKind::Epsilon(1) => vec![RootOfUnity::ONE; self.g_dd],
            UKind::Epsilon(_) => vec![RootOfUnity::MINUS_ONE; self.g_dd],
            UKind::General(p) => p.entries().to_vec(),
        }
    }

    /// Order of `γ'` (1 for the identity).
    pub fn gamma_order(&self) -> u64 {
        match &self.gamma {
            GammaKind::Identity => 1,
            GammaKind::MinusIdentity => 2,
            GammaKind::Elliptic(p) => p.order(),
        }
    }

    /// Order of the combined action on eigenvalue data.
    pub fn order(&self) -> u64 {
        num_integer::lcm(EigenProfile::new(self.mu()).order(), self.gamma_order())
    }
}

/// Eigenvalues on the four factors of the tangent space at a boundary point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangentSpectrum {
    /// Action on the tangent space of the cusp's Siegel space.
    pub h_factor: EigenProfile,
    pub omega_factor: EigenProfile,
    /// Action on the fibre directions.
    pub z_factor: EigenProfile,
    /// Action on the torus embedding, eigenvalue-1 entries of `μ_iμ_j` dropped.
    pub toric_factor: EigenProfile,
}

impl TangentSpectrum {
    pub fn factors(&self) -> [&EigenProfile; 4] {
        [
            &self.h_factor,
            &self.omega_factor,
            &self.z_factor,
            &self.toric_factor,
        ]
    }

    pub fn age(&self) -> Rational {
        self.factors().iter().map(|f| f.age()).sum()
    }
}

/// Reid-Tai age of a diagonal action.
pub fn age(profile: &EigenProfile) -> Rational {
    profile.age()
}

/// Exactly one eigenvalue differs from 1.
pub fn is_quasireflection(s: &TangentSpectrum) -> bool {
    s.factors()
        .iter()
        .map(|f| f.count_nontrivial())
        .sum::<usize>()
        == 1
}

/// Spectrum for one choice of `λ_i` from every pair (`true` picks the
/// larger exponent) and one sign of the exponent on the fibre factor.
///
/// `h = {λ̄_i λ̄_j}_{i<=j}`, `ω = {λ_i μ_j}`, `z = n × {λ_i^{±1}}` and the
/// torus part is `{μ_i μ_j ≠ 1}_{i<=j}` together with `n` copies of each `μ_i`.
pub fn assemble_spectrum(
    p: &StabilizerProfile,
    lambda_choice: &[bool],
    z_sign: i8,
) -> Result<TangentSpectrum> {
    let pairs = p.gamma_pairs();
    if lambda_choice.len() != pairs.len() {
        return Err(invalid(format!(
            "choice vector has {} bits, expected {}",
            lambda_choice.len(),
            pairs.len()
        )));
    }
    if z_sign != 1 && z_sign != -1 {
        return Err(invalid("z_sign must be +1 or -1"));
    }
    let lambda: Vec<RootOfUnity> = pairs
        .iter()
        .zip(lambda_choice)
        .map(|(pr, &up)| if up { pr.1 } else { pr.0 })
        .collect();
    let mu = p.mu();
    let mut h = Vec::new();
    for i in 0..lambda.len() {
        for j in i..lambda.len() {
            h.push(lambda[i].conj().mul(&lambda[j].conj()));
        }
    }
    let omega = lambda
        .iter()
        .flat_map(|l| mu.iter().map(move |m| l.mul(m)))
        .collect();
    let z = lambda
        .iter()
        .flat_map(|l| std::iter::repeat_n(l.pow(z_sign as i64), p.n))
        .collect();
    let mut toric = Vec::new();
    for i in 0..mu.len() {
        for j in i..mu.len() {
            let e = mu[i].mul(&mu[j]);
            if !e.is_one() {
                toric.push(e);
            }
        }
    }
    for m in &mu {
        toric.extend(std::iter::repeat_n(*m, p.n));
    }
    Ok(TangentSpectrum {
        h_factor: EigenProfile::new(h),
        omega_factor: EigenProfile::new(omega),
        z_factor: EigenProfile::new(z),
        toric_factor: EigenProfile::new(toric),
    })
}

/// Minimal age over the splittings of `γ'` and the fibre sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgeReport {
    #[serde(with = "pq_string")]
    pub age: Rational,
    pub is_quasireflection: bool,
    #[serde(serialize_with = "crate::exact::rational::pq_string_vec::serialize")]
    pub per_factor_ages: [Rational; 4],
    pub lambda_choice: Vec<bool>,
    pub z_sign: i8,
}

/// Choices are visited with `z_sign = +1` before `-1` and bit vectors in
/// binary counting order (bit `i` of the counter is pair `i`); the first
/// minimizer wins.
pub fn min_age(p: &StabilizerProfile) -> AgeReport {
    let k = p.gamma_pairs().len();
    let mut best: Option<AgeReport> = None;
    for z_sign in [1i8, -1] {
        for mask in 0u64..(1u64 << k) {
            let choice: Vec<bool> = (0..k).map(|i| mask >> i & 1 == 1).collect();
            let s = assemble_spectrum(p, &choice, z_sign).expect("consistent choice");
            let per = s.factors().map(|f| f.age());
            let total: Rational = per.iter().sum();
            if best.as_ref().is_none_or(|b| total < b.age) {
                best = Some(AgeReport {
                    age: total,
                    is_quasireflection: is_quasireflection(&s),
                    per_factor_ages: per,
                    lambda_choice: choice,
                    z_sign,
                });
            }
        }
    }
    best.expect("at least one choice")
}
