//! Exhaustive scans over stabilizer eigenvalue data.

use num_integer::Integer;
use serde::Serialize;

use super::spectrum::{assemble_spectrum, min_age, GammaKind, StabilizerProfile, UKind};
use crate::error::{invalid, Result};
use crate::exact::rational::{pq_string, rat};
use crate::exact::{EigenProfile, Rational, RootOfUnity};

pub const DEFAULT_D_MAX: u64 = 12;

/// Conjugate pair representatives `a/k <= 1/2` with `k <= d_max`, by value.
fn pair_types(d_max: u64) -> Vec<RootOfUnity> {
    let mut out = vec![RootOfUnity::ONE];
    for k in 2..=d_max {
        for a in 1..=k / 2 {
            if a.gcd(&k) == 1 {
                out.push(RootOfUnity::new(a as i64, k));
            }
        }
    }
    out.sort();
    out
}

/// Nondecreasing index tuples of length `len` over `0..count`.
fn multisets(count: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(
        start: usize,
        count: usize,
        len: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..count {
            cur.push(i);
            rec(i, count, len, cur, out);
            cur.pop();
        }
    }
    rec(0, count, len, &mut cur, &mut out);
    out
}

/// `Identity`, `MinusIdentity`, then every other conjugation-closed profile
/// of size `2g'` with entry orders at most `d_max`.
pub fn gamma_kinds(g_prime: usize, d_max: u64) -> Vec<GammaKind> {
    if g_prime == 0 {
        return vec![GammaKind::Identity];
    }
    let types = pair_types(d_max);
    let mut out = vec![GammaKind::Identity, GammaKind::MinusIdentity];
    for idx in multisets(types.len(), g_prime) {
        let entries: Vec<RootOfUnity> = idx
            .iter()
            .flat_map(|&i| [types[i], types[i].conj()])
            .collect();
        let p = EigenProfile::new(entries);
        if !p.all_equal_to(RootOfUnity::ONE) && !p.all_equal_to(RootOfUnity::MINUS_ONE) {
            out.push(GammaKind::Elliptic(p));
        }
    }
    out
}

/// Conjugation-closed `u`-profiles of size `g''`, other than `±1`.
pub fn u_profiles(g_dd: usize, d_max: u64) -> Vec<EigenProfile> {
    let pairs: Vec<RootOfUnity> = pair_types(d_max)
        .into_iter()
        .filter(|r| !r.is_self_conjugate())
        .collect();
    let mut out = Vec::new();
    for p in 0..=g_dd / 2 {
        let rest = g_dd - 2 * p;
        for idx in multisets(pairs.len(), p) {
            for minus in 0..=rest {
                let mut entries: Vec<RootOfUnity> = idx
                    .iter()
                    .flat_map(|&i| [pairs[i], pairs[i].conj()])
                    .collect();
                entries.extend(std::iter::repeat_n(RootOfUnity::ONE, rest - minus));
                entries.extend(std::iter::repeat_n(RootOfUnity::MINUS_ONE, minus));
                let prof = EigenProfile::new(entries);
                if !prof.all_equal_to(RootOfUnity::ONE)
                    && !prof.all_equal_to(RootOfUnity::MINUS_ONE)
                {
                    out.push(prof);
                }
            }
        }
    }
    out.sort_by(|a, b| a.entries().cmp(b.entries()));
    out.dedup();
    out
}

fn u_kinds(g_dd: usize, d_max: u64) -> Vec<UKind> {
    let mut out = vec![UKind::Epsilon(1), UKind::Epsilon(-1)];
    out.extend(u_profiles(g_dd, d_max).into_iter().map(UKind::General));
    out
}

/// Integer exponents over a common denominator; the minimizer matches
/// `min_age` including its tie-break.
struct FastAge {
    l: i64,
}

impl FastAge {
    fn exp(&self, r: &RootOfUnity) -> i64 {
        r.num() as i64 * (self.l / r.order() as i64)
    }

    /// Numerator of the minimal age over `l`, the mask and the sign.
    fn min_age(&self, p: &StabilizerProfile) -> (i64, u64, i8) {
        let l = self.l;
        let pairs: Vec<(i64, i64)> = p
            .gamma_pairs()
            .iter()
            .map(|(a, b)| (self.exp(a), self.exp(b)))
            .collect();
        let mu: Vec<i64> = p.mu().iter().map(|m| self.exp(m)).collect();
        let n = p.n as i64;
        let mut toric = 0;
        for i in 0..mu.len() {
            for j in i..mu.len() {
                toric += (mu[i] + mu[j]) % l;
            }
            toric += n * mu[i];
        }
        let k = pairs.len();
        let mut lam = vec![0i64; k];
        let mut best = (i64::MAX, 0u64, 1i8);
        for z_sign in [1i8, -1] {
            for mask in 0u64..(1u64 << k) {
                for (i, pr) in pairs.iter().enumerate() {
                    lam[i] = if mask >> i & 1 == 1 { pr.1 } else { pr.0 };
                }
                let mut total = toric;
                for i in 0..k {
                    for j in i..k {
                        total += (2 * l - lam[i] - lam[j]) % l;
                    }
                    for m in &mu {
                        total += (lam[i] + m) % l;
                    }
                    let z = if z_sign == 1 {
                        lam[i]
                    } else {
                        (l - lam[i]) % l
                    };
                    total += n * z;
                }
                if total < best.0 {
                    best = (total, mask, z_sign);
                }
            }
        }
        best
    }
}

fn lcm_up_to(d: u64) -> i64 {
    (1..=d).fold(1u64, |a, b| a.lcm(&b)) as i64
}

/// One scanned profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRecord {
    pub profile: StabilizerProfile,
    /// Order of the combined eigenvalue data.
    pub order: u64,
    #[serde(with = "pq_string")]
    pub min_age: Rational,
    pub is_quasireflection: bool,
    pub lambda_choice: Vec<bool>,
    pub z_sign: i8,
    /// `(g + n)/d` for elliptic `γ'` with `g' < 5`, `u = ±1` and `d <= 6`.
    #[serde(
        serialize_with = "pq_string::serialize_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub proof_bound: Option<Rational>,
}

/// Outcome of `rt_scan`. Only notable records are kept: every profile with
/// minimal age below 1, the global minimum and the weakest proof bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub g: usize,
    pub n: usize,
    pub d_max: u64,
    pub profiles_scanned: usize,
    /// No profile has minimal age below 1 without being a quasireflection.
    pub pass: bool,
    pub minimum: ScanRecord,
    pub violations: Vec<ScanRecord>,
    pub quasireflections: Vec<ScanRecord>,
    pub proof_bound_witness: Option<ScanRecord>,
}

impl ScanReport {
    /// The weakest proof bound is at least 1.
    pub fn proof_bound_ok(&self) -> bool {
        self.proof_bound_witness
            .as_ref()
            .and_then(|r| r.proof_bound.as_ref())
            .is_none_or(|b| *b >= rat(1, 1))
    }
}

fn proof_bound(p: &StabilizerProfile, g: usize, n: usize) -> Option<Rational> {
    let d = p.order();
    match (&p.gamma, &p.u) {
        (GammaKind::Elliptic(_), UKind::Epsilon(_)) if p.g_prime < 5 && d <= 6 => {
            Some(rat((g + n) as i64, d as i64))
        }
        _ => None,
    }
}

fn record(p: StabilizerProfile, g: usize, n: usize) -> ScanRecord {
    let r = min_age(&p);
    ScanRecord {
        order: p.order(),
        min_age: r.age,
        is_quasireflection: r.is_quasireflection,
        lambda_choice: r.lambda_choice,
        z_sign: r.z_sign,
        proof_bound: proof_bound(&p, g, n),
        profile: p,
    }
}

/// Every stabilizer profile for genus `g` and `n` factors, in canonical
/// order: by `g'`, then `γ'` kind, then `u` kind. `γ' = 1, u = 1` acts
/// trivially on the boundary and is skipped.
pub fn scan_profiles(g: usize, n: usize, d_max: u64) -> Vec<StabilizerProfile> {
    let mut out = Vec::new();
    for g_prime in 0..g {
        let g_dd = g - g_prime;
        let us = u_kinds(g_dd, d_max);
        for gamma in gamma_kinds(g_prime, d_max) {
            for u in &us {
                if gamma == GammaKind::Identity && *u == UKind::Epsilon(1) {
                    continue;
                }
                let p = StabilizerProfile::new(g_prime, g_dd, n, gamma.clone(), u.clone())
                    .expect("generated profile");
                out.push(p);
            }
        }
    }
    out
}

/// Minimal Reid-Tai age over all stabilizer profiles of `(g, n)`.
pub fn rt_scan(g: usize, n: usize, d_max: u64) -> Result<ScanReport> {
    if g < 2 {
        return Err(invalid("rt_scan needs g >= 2"));
    }
    if d_max < 2 {
        return Err(invalid("d_max must be at least 2"));
    }
    let fast = FastAge {
        l: lcm_up_to(d_max),
    };
    let one = fast.l;
    let mut scanned = 0;
    let mut minimum: Option<(i64, StabilizerProfile)> = None;
    let mut weakest: Option<(Rational, StabilizerProfile)> = None;
    let mut violations = Vec::new();
    let mut quasireflections = Vec::new();
    for p in scan_profiles(g, n, d_max) {
        scanned += 1;
        let (num, _, _) = fast.min_age(&p);
        if let Some(b) = proof_bound(&p, g, n) {
            if weakest.as_ref().is_none_or(|w| b < w.0) {
                weakest = Some((b, p.clone()));
            }
        }
        if minimum.as_ref().is_none_or(|m| num < m.0) {
            minimum = Some((num, p.clone()));
        }
        if num < one {
            let r = record(p, g, n);
            if r.is_quasireflection {
                quasireflections.push(r);
            } else {
                violations.push(r);
            }
        }
    }
    let minimum = record(minimum.expect("g >= 2 has profiles").1, g, n);
    Ok(ScanReport {
        g,
        n,
        d_max,
        profiles_scanned: scanned,
        pass: violations.is_empty(),
        minimum,
        violations,
        quasireflections,
        proof_bound_witness: weakest.map(|w| record(w.1, g, n)),
    })
}

/// Torus-factor age of one `u`-profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UEntry {
    pub profile: EigenProfile,
    #[serde(with = "pq_string")]
    pub toric_age: Rational,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UBoundReport {
    pub g_dd: usize,
    pub n: usize,
    pub d_max: u64,
    pub entries: Vec<UEntry>,
    /// Every `u ≠ ±1` has torus age at least 1.
    pub general_pass: bool,
    #[serde(with = "pq_string")]
    pub minus_one_age: Rational,
    /// `u = -1` reaches age 1 exactly when `(g'', n) ≠ (1, 1)`.
    pub minus_one_expected: bool,
    pub pass: bool,
}

fn toric_age(g_dd: usize, n: usize, u: UKind) -> Rational {
    let p = StabilizerProfile::new(0, g_dd, n, GammaKind::Identity, u).expect("valid u");
    assemble_spectrum(&p, &[], 1)
        .expect("no choices")
        .toric_factor
        .age()
}

/// Torus-factor ages for all nontrivial `u`, and the `u = -1` branch.
pub fn u_nontrivial_bound_check(g_dd: usize, n: usize) -> Result<UBoundReport> {
    if g_dd == 0 {
        return Err(invalid("g'' must be at least 1"));
    }
    let one = rat(1, 1);
    let entries: Vec<UEntry> = u_profiles(g_dd, DEFAULT_D_MAX)
        .into_iter()
        .map(|u| {
            let a = toric_age(g_dd, n, UKind::General(u.clone()));
            UEntry {
                pass: a >= one,
                profile: u,
                toric_age: a,
            }
        })
        .collect();
    let general_pass = entries.iter().all(|e| e.pass);
    let minus_one_age = toric_age(g_dd, n, UKind::Epsilon(-1));
    let minus_one_expected = (g_dd, n) != (1, 1);
    let pass = general_pass && (minus_one_age >= one) == minus_one_expected;
    Ok(UBoundReport {
        g_dd,
        n,
        d_max: DEFAULT_D_MAX,
        entries,
        general_pass,
        minus_one_age,
        minus_one_expected,
        pass,
    })
}

/// Singularities away from the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InteriorVerdict {
    /// Canonical, with no quasireflections in the stabilizers.
    Canonical,
    /// Known exceptional pair where the interior argument does not apply.
    Exception,
}

pub fn interior_singularity_table(g: usize, n: usize) -> Result<InteriorVerdict> {
    if g < 2 {
        return Err(invalid("interior table needs g >= 2"));
    }
    Ok(match (g, n) {
        (2, 1) | (2, 2) | (3, 1) => InteriorVerdict::Exception,
        _ => InteriorVerdict::Canonical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_sizes() {
        assert_eq!(pair_types(12).len(), 24);
        // two scalar kinds plus 24 - 2 elliptic single pairs
        assert_eq!(gamma_kinds(1, 12).len(), 24);
        assert_eq!(u_profiles(1, 12).len(), 0);
        assert_eq!(u_profiles(2, 12).len(), 23);
    }

    #[test]
    fn fast_path_matches_exact_min_age() {
        let fast = FastAge { l: lcm_up_to(12) };
        for (g, n) in [(2, 1), (2, 3), (3, 2)] {
            for p in scan_profiles(g, n, 12).into_iter().step_by(7) {
                let (num, mask, sign) = fast.min_age(&p);
                let r = min_age(&p);
                assert_eq!(rat(num, fast.l), r.age, "{p:?}");
                let bits: Vec<bool> = (0..r.lambda_choice.len())
                    .map(|i| mask >> i & 1 == 1)
                    .collect();
                assert_eq!((bits, sign), (r.lambda_choice, r.z_sign));
            }
        }
    }

    #[test]
    fn u_bound_examples() {
        let r = u_nontrivial_bound_check(2, 1).unwrap();
        let third = r
            .entries
            .iter()
            .find(|e| e.profile == EigenProfile::from_fracs(&[(1, 3), (2, 3)]))
            .unwrap();
        assert_eq!(third.toric_age, rat(2, 1));
        let mixed = r
            .entries
            .iter()
            .find(|e| e.profile == EigenProfile::from_fracs(&[(0, 1), (1, 2)]))
            .unwrap();
        assert!(mixed.pass);
        assert!(r.pass);
        let r = u_nontrivial_bound_check(1, 1).unwrap();
        assert_eq!(r.minus_one_age, rat(1, 2));
        assert!(r.pass && !r.minus_one_expected);
        assert_eq!(
            u_nontrivial_bound_check(1, 2).unwrap().minus_one_age,
            rat(1, 1)
        );
    }

    #[test]
    fn interior_table() {
        assert_eq!(
            interior_singularity_table(4, 1).unwrap(),
            InteriorVerdict::Canonical
        );
        assert_eq!(
            interior_singularity_table(2, 2).unwrap(),
            InteriorVerdict::Exception
        );
        assert_eq!(
            interior_singularity_table(3, 1).unwrap(),
            InteriorVerdict::Exception
        );
        assert!(interior_singularity_table(1, 1).is_err());
    }
}
