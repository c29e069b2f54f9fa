//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the lines are always shown; exits nonzero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use kuga_core::cones::checks::{base_cones_included, is_equidim_codim1, no_interior_rays};
use kuga_core::cones::lifted::{base_fan, lifted_fan};
use kuga_core::cones::{toric_is_canonical, Cone, ToricVerdict};
use kuga_core::exact::rational::{rat, to_pq};
use kuga_core::exact::symplectic::{
    cocycle_trials, fixed_point_catalog, fixed_point_eigen_check, Splitting,
};
use kuga_core::exact::{quad_min, QuadForm};
use kuga_core::reid_tai::scan::{rt_scan, u_nontrivial_bound_check};
use kuga_core::reid_tai::{assemble_spectrum, GammaKind, StabilizerProfile, UKind};
use kuga_core::slope::{
    n0_prime_class, s_min_record, slope, theta_null_class, vanishing_order, DivisorClass,
};
use kuga_core::FourierSupport;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

struct Outcome {
    pass: bool,
    detail: String,
}

fn timed(budget: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let t = Instant::now();
    let mut o = f();
    let el = t.elapsed();
    if el > budget {
        o.pass = false;
        o.detail
            .push_str(&format!("; over budget ({el:.2?} > {budget:?})"));
    } else {
        o.detail.push_str(&format!("; {el:.2?}"));
    }
    o
}

// ---------------------------------------------------------------- 1

fn expected_kappa(g: usize, n: usize) -> Value {
    let exceptions = [(4, 3), (3, 5), (3, 4), (2, 7), (2, 6), (2, 5)];
    if [(2, 7), (3, 5), (4, 3)].contains(&(g, n)) {
        Value::from("zero")
    } else if g >= 2 && g + n >= 7 && !exceptions.contains(&(g, n)) {
        serde_json::json!({ "general_type": g * (g + 1) / 2 })
    } else {
        Value::from("minus_infinity")
    }
}

fn criterion_1() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_kuga"))
        .args(["--json", "kodaira", "--table", "6", "12"])
        .output()
        .expect("run kuga");
    if !out.status.success() {
        return Outcome {
            pass: false,
            detail: format!("exit status {}", out.status),
        };
    }
    let v: Value = serde_json::from_slice(&out.stdout).expect("json output");
    let rows = &v["result"]["rows"];
    let mut bad = Vec::new();
    for g in 1..=6 {
        for n in 1..=12 {
            let got = &rows[g - 1][n - 1]["kind"];
            if *got != expected_kappa(g, n) {
                bad.push(format!("({g},{n}): {got}"));
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("72 cells, {} mismatches {bad:?}", bad.len()),
    }
}

// ---------------------------------------------------------------- 2

fn criterion_2() -> Outcome {
    let mut bad = Vec::new();
    let mut check = |what: String, ok: bool| {
        if !ok {
            bad.push(what);
        }
    };
    for (g, s) in [(2, rat(10, 1)), (3, rat(9, 1))] {
        let c = theta_null_class(g).unwrap();
        check(
            format!("theta-null slope g={g}"),
            slope(&c).unwrap() == s && s_min_record(g).unwrap().value == s,
        );
    }
    for (g, a, b, s) in [
        (4, 8, 1, rat(8, 1)),
        (5, 108, 14, rat(54, 7)),
        (6, 1100, 146, rat(550, 73)),
    ] {
        let c = n0_prime_class(g).unwrap();
        check(
            format!("N0' class g={g}"),
            c == DivisorClass::new(rat(a, 1), rat(b, 1)),
        );
        check(format!("N0' slope g={g}"), slope(&c).unwrap() == s);
        let rec = s_min_record(g).unwrap();
        let quoted = if g == 6 {
            rec.secondary.clone().unwrap()
        } else {
            rec.value.clone()
        };
        check(format!("s_min g={g}"), quoted == s);
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("slopes 10, 9, 8, 54/7, 550/73; failures {bad:?}"),
    }
}

// ---------------------------------------------------------------- 3

fn criterion_3() -> Outcome {
    let mut pass_half = Vec::new();
    for g in 2..=5usize {
        for n in (6 - g).max(1)..=6 {
            let r = rt_scan(g, n, 12).unwrap();
            if !(r.pass && r.minimum.min_age >= rat(1, 1)) {
                pass_half.push(format!("({g},{n}) min {}", to_pq(&r.minimum.min_age)));
            }
        }
    }
    let mut sharp_half = Vec::new();
    for g in 2..=4usize {
        let n = 5 - g;
        let r = rt_scan(g, n, 12).unwrap();
        let found = r
            .violations
            .iter()
            .any(|v| v.profile.g_prime == 1 && v.order == 6);
        if !found {
            sharp_half.push(format!(
                "({g},{n}) no g'=1 d=6 violation, min age {}",
                to_pq(&r.minimum.min_age)
            ));
        }
    }
    Outcome {
        pass: pass_half.is_empty() && sharp_half.is_empty(),
        detail: format!("g+n>=6 failures {pass_half:?}; g+n=5 missing witnesses {sharp_half:?}"),
    }
}

// ---------------------------------------------------------------- 4

fn criterion_4() -> Outcome {
    let age = |n: usize| {
        let p = StabilizerProfile::new(0, 1, n, GammaKind::Identity, UKind::Epsilon(-1)).unwrap();
        assemble_spectrum(&p, &[], 1).unwrap().age()
    };
    let a11 = age(1);
    let a12 = age(2);
    let r11 = u_nontrivial_bound_check(1, 1).unwrap();
    let r12 = u_nontrivial_bound_check(1, 2).unwrap();
    let pass = a11 == rat(1, 2)
        && a12 == rat(1, 1)
        && r11.minus_one_age == a11
        && r12.minus_one_age == a12;
    Outcome {
        pass,
        detail: format!("(1,1): {}, (1,2): {}", to_pq(&a11), to_pq(&a12)),
    }
}

// ---------------------------------------------------------------- 5

/// Box points `Σ t_i v_i`, `0 <= t_i < 1`, of a simplicial cone given by
/// `k` independent vectors in `Z^r`: smooth iff there are none besides 0,
/// canonical iff every nonzero one has `Σ t_i >= 1`.
fn box_oracle(gens: &[Vec<i64>]) -> ToricVerdict {
    let r = gens[0].len();
    let k = gens.len();
    // a k x k minor with nonzero determinant picks coordinates for t
    let rows = (0..r).collect::<Vec<_>>();
    let choose: Vec<Vec<usize>> = subsets(&rows, k);
    let (sel, det) = choose
        .iter()
        .map(|s| {
            (
                s.clone(),
                det_i64(
                    &(0..k)
                        .map(|i| s.iter().map(|&c| gens[i][c]).collect())
                        .collect::<Vec<_>>(),
                ),
            )
        })
        .find(|(_, d)| *d != 0)
        .expect("independent generators");
    // t = b adj(m) / det, with adj(m) from Cramer on unit vectors
    let m: Vec<Vec<i64>> = (0..k)
        .map(|i| sel.iter().map(|&c| gens[i][c]).collect())
        .collect();
    let adj: Vec<Vec<i64>> = (0..k)
        .map(|c| {
            (0..k)
                .map(|i| {
                    let mut mi = m.clone();
                    mi[i] = (0..k).map(|j| i64::from(j == c)).collect();
                    det_i64(&mi)
                })
                .collect()
        })
        .collect();
    let (sign, d) = if det < 0 { (-1, -det) } else { (1, det) };
    let hi: Vec<i64> = (0..r).map(|c| gens.iter().map(|g| g[c]).sum()).collect();
    let mut x = vec![0i64; r];
    let mut min_sum: Option<i64> = None; // numerator over d
    loop {
        if x.iter().any(|&v| v != 0) {
            let nums: Vec<i64> = (0..k)
                .map(|i| sign * (0..k).map(|c| x[sel[c]] * adj[c][i]).sum::<i64>())
                .collect();
            let in_box = nums.iter().all(|&t| 0 <= t && t < d);
            if in_box
                && (0..r)
                    .all(|c| gens.iter().zip(&nums).map(|(g, t)| g[c] * t).sum::<i64>() == x[c] * d)
            {
                let s: i64 = nums.iter().sum();
                min_sum = Some(min_sum.map_or(s, |ms| ms.min(s)));
            }
        }
        let mut c = r;
        let done = loop {
            if c == 0 {
                break true;
            }
            c -= 1;
            if x[c] < hi[c] {
                x[c] += 1;
                break false;
            }
            x[c] = 0;
        };
        if done {
            break;
        }
    }
    match min_sum {
        None => ToricVerdict::Smooth,
        Some(s) if s >= d => ToricVerdict::Canonical,
        Some(_) => ToricVerdict::NotCanonical,
    }
}

fn det_i64(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        _ => unreachable!(),
    }
}

fn subsets<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        for mut rest in subsets(&items[i + 1..], k - 1) {
            rest.insert(0, items[i].clone());
            out.push(rest);
        }
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn primitive_vectors(r: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let total = 5usize.pow(r as u32);
    for code in 1..total {
        let v: Vec<i64> = (0..r)
            .map(|i| (code / 5usize.pow(i as u32) % 5) as i64)
            .collect();
        if v.iter().fold(0, |a, &b| gcd(a, b)) == 1 {
            out.push(v);
        }
    }
    out
}

fn rank_i64(vs: &[Vec<i64>]) -> usize {
    let r = vs[0].len();
    let rows: Vec<usize> = (0..r).collect();
    for k in (1..=vs.len().min(r)).rev() {
        for s in subsets(&(0..vs.len()).collect::<Vec<_>>(), k) {
            for c in subsets(&rows, k) {
                let m: Vec<Vec<i64>> = s
                    .iter()
                    .map(|&i| c.iter().map(|&j| vs[i][j]).collect())
                    .collect();
                if det_i64(&m) != 0 {
                    return k;
                }
            }
        }
    }
    0
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    let f = lifted_fan(1, 1, 3).unwrap();
    let stairs: Vec<Cone> = (-2..2)
        .map(|c| Cone::from_i64(2, &[&[1, c], &[1, c + 1]]).unwrap())
        .collect();
    if f.cones() != stairs.as_slice() {
        bad.push("staircase".to_string());
    }
    let base = base_fan(1, 3).unwrap();
    if !is_equidim_codim1(&f, &base).unwrap().ok {
        bad.push("equidim".into());
    }
    if !no_interior_rays(&f, 1, 1).unwrap().ok {
        bad.push("interior rays".into());
    }
    if !base_cones_included(&f, &base).unwrap().ok {
        bad.push("base cones".into());
    }
    if !f
        .cones()
        .iter()
        .all(|c| toric_is_canonical(c).verdict == ToricVerdict::Smooth)
    {
        bad.push("staircase smoothness".into());
    }
    let f2 = lifted_fan(1, 2, 3).unwrap();
    if !f2
        .cones()
        .iter()
        .all(|c| toric_is_canonical(c).verdict.is_canonical())
    {
        bad.push("n=2 canonicity".into());
    }
    let mut checked = 0usize;
    let mut disagree = Vec::new();
    for r in 1..=3usize {
        let prims = primitive_vectors(r);
        let idx: Vec<usize> = (0..prims.len()).collect();
        for k in 1..=r {
            for s in subsets(&idx, k) {
                let gens: Vec<Vec<i64>> = s.iter().map(|&i| prims[i].clone()).collect();
                if rank_i64(&gens) != k {
                    continue;
                }
                let refs: Vec<&[i64]> = gens.iter().map(Vec::as_slice).collect();
                let cone = Cone::from_i64(r, &refs).unwrap();
                let got = toric_is_canonical(&cone).verdict;
                let want = box_oracle(&gens);
                checked += 1;
                if got != want && disagree.len() < 5 {
                    disagree.push(format!("{cone:?}: {got:?} vs {want:?}"));
                }
            }
        }
    }
    if !disagree.is_empty() {
        bad.push(format!("oracle disagreements {disagree:?}"));
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("{checked} simplicial cones against the box oracle; failures {bad:?}"),
    }
}

// ---------------------------------------------------------------- 6

fn criterion_6() -> Outcome {
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for g in 1..=3 {
        let r = cocycle_trials(g, 1000, 20260101 + g as u64, 1e-9).unwrap();
        worst = worst.max(r.max_residual);
        if !r.pass {
            bad.push(format!("cocycle g={g} residual {:e}", r.max_residual));
        }
        for e in fixed_point_catalog(g) {
            let rep = fixed_point_eigen_check(&e.gamma, &e.tau, 1e-9).unwrap();
            let ok = rep.matched == Some(Splitting::LambdaBar)
                && rep.max_deviation < 1e-9
                && (rep.is_trivial || rep.has_non_one_eigenvalue);
            if !ok {
                bad.push(format!("fixed point {} g={g}", e.name));
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("max cocycle residual {worst:.2e}; failures {bad:?}"),
    }
}

// ---------------------------------------------------------------- 7

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = Vec::new();
    for trial in 0..500 {
        let d = rng.gen_range(1..=4usize);
        let k = rng.gen_range(1..=d);
        let b: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..d).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        let t: Vec<Vec<i64>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| (0..k).map(|l| b[l][i] * b[l][j]).sum())
                    .collect()
            })
            .collect();
        let rows: Vec<&[i64]> = t.iter().map(Vec::as_slice).collect();
        let q = QuadForm::from_i64(&rows);
        let (m, w) = quad_min(&q).unwrap();
        let brute = brute_min(&t);
        let w_val: BigInt = q.eval(&w);
        let ok = m == BigInt::from(brute) && w_val == m && w.iter().any(|x| *x != BigInt::from(0));
        if !ok {
            bad.push(format!("trial {trial}: {t:?} quad_min {m} brute {brute}"));
        }
    }
    for g in 2..=4 {
        let s = FourierSupport::new(g, vec![QuadForm::scaled_identity(g, 2)]).unwrap();
        if vanishing_order(&s).unwrap() != rat(1, 1) {
            bad.push(format!("vanishing order g={g}"));
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("500 forms; failures {:?}", &bad[..bad.len().min(3)]),
    }
}

/// Exact minimum over nonzero integer vectors. A singular form has a
/// rational, hence integral, kernel vector; otherwise `x_i^2 <= c (T^-1)_ii`
/// for any `c` above the minimum, which bounds the search box.
fn brute_min(t: &[Vec<i64>]) -> i64 {
    let d = t.len();
    let det = det_n(t);
    if det == 0 {
        return 0;
    }
    let c = (0..d).map(|i| t[i][i]).min().unwrap();
    let bound: Vec<i64> = (0..d)
        .map(|i| {
            let minor: Vec<Vec<i64>> = (0..d)
                .filter(|&r| r != i)
                .map(|r| (0..d).filter(|&q| q != i).map(|q| t[r][q]).collect())
                .collect();
            let adj_ii = if d == 1 { 1 } else { det_n(&minor) };
            let mut b = 0;
            while (b + 1) * (b + 1) * det <= c * adj_ii {
                b += 1;
            }
            b
        })
        .collect();
    let mut best = i64::MAX;
    let mut x: Vec<i64> = bound.iter().map(|b| -b).collect();
    loop {
        if x.iter().any(|&v| v != 0) {
            let v: i64 = (0..d)
                .map(|i| (0..d).map(|j| x[i] * t[i][j] * x[j]).sum::<i64>())
                .sum();
            best = best.min(v);
        }
        let mut k = d;
        let done = loop {
            if k == 0 {
                break true;
            }
            k -= 1;
            if x[k] < bound[k] {
                x[k] += 1;
                break false;
            }
            x[k] = -bound[k];
        };
        if done {
            return best;
        }
    }
}

fn det_n(m: &[Vec<i64>]) -> i64 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| (0..m.len()).filter(|&q| q != j).map(|q| row[q]).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det_n(&minor)
        })
        .sum()
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 Kodaira table", Duration::from_secs(1), criterion_1),
        (
            "2 divisor classes and slopes",
            Duration::from_millis(100),
            criterion_2,
        ),
        ("3 Reid-Tai sharpness", Duration::from_secs(60), criterion_3),
        ("4 exception branches", Duration::from_secs(1), criterion_4),
        ("5 fan conditions", Duration::from_secs(30), criterion_5),
        ("6 cocycle and fixed points", Duration::from_secs(5), criterion_6),
        ("7 quadratic minima", Duration::from_secs(10), criterion_7),
    ];
    let mut failed = 0;
    for (name, budget, f) in criteria {
        let o = timed(budget, f);
        println!(
            "criterion {name}: {} ({})",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
