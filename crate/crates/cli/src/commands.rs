//! Subcommand implementations. Each returns a JSON value, a text
//! rendering and whether the mathematical check passed.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use kuga_core::cones::checks::{check_lifted_fan, is_equidim_codim1};
use kuga_core::cones::lifted::{base_projection, lifted_fan, rank_one_root, LiftedPoint};
use kuga_core::cones::perfect::{perfect_cone_fan_window, sym2_dim};
use kuga_core::cones::refine_to_smooth;
use kuga_core::exact::rational::{display, to_f64};
use kuga_core::exact::symplectic::{
    cocycle_trials, fixed_point_catalog, fixed_point_eigen_check, Splitting,
};
use kuga_core::reid_tai::{certify_with, rt_scan, CertifyParams, ScanRecord};
use kuga_core::slope::{
    cusp_form_slope, kdim_table, kodaira_dimension, n0_prime_class, s_min_record, slope,
    theta_null_class, Achiever, KodairaKind,
};
use kuga_core::{Error, Fan, FourierSupport, Rational};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::*;
use crate::error::CliError;

pub struct Outcome {
    pub value: Value,
    pub text: String,
    pub pass: bool,
}

type Res = std::result::Result<Outcome, CliError>;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Sorted keys, two-space indentation, trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn write_json(path: &Path, v: &Value) -> std::result::Result<(), CliError> {
    fs::write(path, render_json(v)).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> std::result::Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn frac(r: &Rational) -> String {
    let s = display(r);
    if r.is_integer() {
        s
    } else {
        format!("{s} ({:.4})", to_f64(r))
    }
}

pub fn run(cli: &Cli) -> Res {
    match &cli.command {
        Command::Kodaira(a) => kodaira(a),
        Command::Certify(a) => certify(a),
        Command::Scan(a) => scan(a),
        Command::Fan(FanCommand::Build(a)) => fan_build(a),
        Command::Fan(FanCommand::Check(a)) => fan_check(a),
        Command::Fan(FanCommand::Refine(a)) => fan_refine(a),
        Command::Verify(VerifyCommand::Cocycle(a)) => cocycle(a, cli.seed, cli.tol),
        Command::Verify(VerifyCommand::FixedPoint(a)) => fixed_point(a, cli.tol),
        Command::Slope(SlopeCommand::Class(a)) => slope_class(a),
        Command::Slope(SlopeCommand::Form(a)) => slope_form(a),
        Command::Slope(SlopeCommand::Table) => slope_table(),
    }
}

fn kappa_cell(k: KodairaKind) -> String {
    match k {
        KodairaKind::GeneralType(d) => d.to_string(),
        KodairaKind::Zero => "0".into(),
        KodairaKind::MinusInfinity => "-inf".into(),
    }
}

fn kodaira(a: &KodairaArgs) -> Res {
    if let Some(t) = &a.table {
        let table = kdim_table(t[0], t[1])?;
        let mut text = String::from("kappa(X_g^n); general type entries show the dimension\n");
        write!(text, "{:>4}", "g\\n").unwrap();
        for n in 1..=table.n_max {
            write!(text, "{n:>5}").unwrap();
        }
        text.push('\n');
        for (gi, row) in table.rows.iter().enumerate() {
            write!(text, "{:>4}", gi + 1).unwrap();
            for v in row {
                write!(text, "{:>5}", kappa_cell(v.kind)).unwrap();
            }
            text.push('\n');
        }
        return Ok(Outcome {
            value: to_value(&table),
            text,
            pass: true,
        });
    }
    let (g, n) = (a.g.expect("clap group"), a.n.expect("clap requires"));
    let v = kodaira_dimension(g, n)?;
    let mut text = format!("{v}\n");
    if v.informational {
        text.push_str("  (n = 0: statement about A_g)\n");
    }
    for s in &v.justification {
        writeln!(text, "  [{}] {}", s.rule, s.detail).unwrap();
    }
    Ok(Outcome {
        value: to_value(&v),
        text,
        pass: true,
    })
}

fn describe(r: &ScanRecord) -> String {
    let mut s = format!(
        "g'={} g''={} order {} gamma' {} u {} min age {}",
        r.profile.g_prime,
        r.profile.g_dd,
        r.order,
        serde_json::to_string(&r.profile.gamma).unwrap(),
        serde_json::to_string(&r.profile.u).unwrap(),
        frac(&r.min_age)
    );
    if let Some(b) = &r.proof_bound {
        write!(s, ", order bound (g+n)/d = {}", frac(b)).unwrap();
    }
    s
}

fn certify(a: &CertifyArgs) -> Res {
    let params = CertifyParams {
        d_max: a.d_max,
        fan_window: a.fan_window,
        slices: if a.slices.is_empty() {
            None
        } else {
            Some(a.slices.clone())
        },
    };
    let c = certify_with(a.g, a.n, &params)?;
    let value = to_value(&c);
    if let Some(p) = &a.out {
        write_json(p, &value)?;
    }
    let mut text = format!(
        "certify g={} n={}: {}\n",
        c.g,
        c.n,
        if c.pass { "PASS" } else { "FAIL" }
    );
    writeln!(
        text,
        "  interior: {}",
        serde_json::to_string(&c.interior).unwrap()
    )
    .unwrap();
    let s = &c.scan_summary;
    writeln!(
        text,
        "  scan: {} profiles, min age {}, ages >= 1: {}, order bound >= 1: {}",
        s.profiles_scanned,
        frac(&s.min_age),
        s.pass,
        s.proof_bound_ok
    )
    .unwrap();
    if let Some(w) = &c.witness {
        writeln!(text, "  witness: {}", describe(w)).unwrap();
    }
    for f in &c.fan_checks {
        let state = if f.skipped {
            "skipped".to_string()
        } else if f.pass {
            "pass".into()
        } else {
            "FAIL".into()
        };
        writeln!(
            text,
            "  fan g''={} ({}, {} cones): {state}",
            f.g_dd, f.source, f.cones
        )
        .unwrap();
    }
    if let Some(p) = &a.out {
        writeln!(text, "  certificate written to {}", p.display()).unwrap();
    }
    Ok(Outcome {
        value,
        text,
        pass: c.pass,
    })
}

fn scan(a: &ScanArgs) -> Res {
    let r = rt_scan(a.g, a.n, a.d_max)?;
    let mut text = format!(
        "rt scan g={} n={} d_max={}: {} profiles, {}\n",
        r.g,
        r.n,
        r.d_max,
        r.profiles_scanned,
        if r.pass { "PASS" } else { "FAIL" }
    );
    writeln!(text, "  minimum: {}", describe(&r.minimum)).unwrap();
    for v in &r.violations {
        writeln!(text, "  violation: {}", describe(v)).unwrap();
    }
    for q in &r.quasireflections {
        writeln!(text, "  quasireflection: {}", describe(q)).unwrap();
    }
    if let Some(w) = &r.proof_bound_witness {
        writeln!(text, "  weakest order bound: {}", describe(w)).unwrap();
    }
    Ok(Outcome {
        value: to_value(&r),
        text,
        pass: r.pass,
    })
}

fn fan_summary(f: &Fan) -> String {
    format!(
        "{} cones, {} rays, ambient rank {}",
        f.len(),
        f.rays().len(),
        f.ambient_rank()
    )
}

fn fan_build(a: &FanBuildArgs) -> Res {
    let f = lifted_fan(a.gdd, a.n, a.window)?;
    let value = to_value(&f);
    let mut text = format!(
        "lifted fan g''={} n={} window {}: {}\n",
        a.gdd,
        a.n,
        a.window,
        fan_summary(&f)
    );
    match &a.out {
        Some(p) => {
            write_json(p, &value)?;
            writeln!(text, "  written to {}", p.display()).unwrap();
        }
        None => text.push_str(&render_json(&value)),
    }
    Ok(Outcome {
        value,
        text,
        pass: true,
    })
}

/// Loads a fan file and fills in `n`, the projection and the base fan.
fn load_lifted(a: &FanFileArgs) -> std::result::Result<(Fan, Fan, usize), CliError> {
    let f: Fan = read_json(&a.input)?;
    let s = sym2_dim(a.gdd);
    if a.gdd == 0 || a.gdd > 2 {
        return Err(Error::UnsupportedRank(a.gdd).into());
    }
    let r = f.ambient_rank();
    let n = match a.n {
        Some(n) => n,
        None if r > s && (r - s).is_multiple_of(a.gdd) => (r - s) / a.gdd,
        None => {
            return Err(CliError::Usage(format!(
                "ambient rank {r} does not fit g'' = {}",
                a.gdd
            )))
        }
    };
    if s + n * a.gdd != r {
        return Err(CliError::Usage(format!(
            "ambient rank {r} does not match g'' = {}, n = {n}",
            a.gdd
        )));
    }
    let f = if f.projection().is_some() {
        f
    } else {
        f.with_projection(Some(base_projection(a.gdd, n)))
    };
    let bound = match a.window {
        Some(w) => w - 1,
        None => {
            let mut b = 1i64;
            for ray in f.rays() {
                let q = LiftedPoint::unflatten(&ray, a.gdd, n)?;
                if let Some(root) = rank_one_root(&q.b) {
                    for x in root {
                        b = b.max(i64::try_from(x.magnitude().clone()).unwrap_or(i64::MAX));
                    }
                }
            }
            b
        }
    };
    let base = perfect_cone_fan_window(a.gdd, bound)?;
    Ok((f, base, n))
}

/// Pairwise intersection checks are quadratic in the number of cones.
const MAX_PAIRWISE_CONES: usize = 64;

fn fan_check(a: &FanFileArgs) -> Res {
    let (f, base, n) = load_lifted(a)?;
    let report = check_lifted_fan(&f, &base, a.gdd, n)?;
    let pairwise = (f.len() <= MAX_PAIRWISE_CONES).then(|| f.intersection_violations());
    let pass = report.pass && pairwise.as_ref().is_none_or(Vec::is_empty);
    let mut text = format!(
        "fan check g''={} n={n}: {}: {}\n",
        a.gdd,
        fan_summary(&f),
        if pass { "PASS" } else { "FAIL" }
    );
    let line = |name: &str, ok: bool, rays: &[kuga_core::exact::lattice::IntVec]| {
        let list: Vec<String> = rays
            .iter()
            .map(|r| {
                format!(
                    "({})",
                    r.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        if ok {
            format!("  {name}: ok\n")
        } else {
            format!("  {name}: violated by {}\n", list.join(" "))
        }
    };
    text.push_str(&line(
        "in_cone",
        report.in_cone.ok,
        &report.in_cone.offending,
    ));
    text.push_str(&line(
        "equidim_codim1",
        report.equidim.ok,
        &report.equidim.offending,
    ));
    text.push_str(&line(
        "no_interior_rays",
        report.no_interior_rays.ok,
        &report.no_interior_rays.offending,
    ));
    if report.base_cones.ok {
        text.push_str("  base_cones: ok\n");
    } else {
        writeln!(
            text,
            "  base_cones: missing {:?}",
            report.base_cones.missing
        )
        .unwrap();
    }
    writeln!(
        text,
        "  toric: {} smooth, {} canonical, {} offending",
        report.toric.smooth,
        report.toric.canonical,
        report.toric.offending.len()
    )
    .unwrap();
    match &pairwise {
        Some(v) if v.is_empty() => text.push_str("  pairwise intersections: ok\n"),
        Some(v) => writeln!(text, "  pairwise intersections: {} bad pairs", v.len()).unwrap(),
        None => writeln!(
            text,
            "  pairwise intersections: skipped (more than {MAX_PAIRWISE_CONES} cones)"
        )
        .unwrap(),
    }
    let value = json!({ "report": report, "pairwise_violations": pairwise, "pass": pass });
    Ok(Outcome { value, text, pass })
}

fn fan_refine(a: &FanFileArgs) -> Res {
    let (f, base, _) = load_lifted(a)?;
    let refined = refine_to_smooth(&f)?;
    let equidim = is_equidim_codim1(&refined, &base)?;
    let fan_value = to_value(&refined);
    let mut text = format!(
        "refined: {} -> {}\n",
        fan_summary(&f),
        fan_summary(&refined)
    );
    if equidim.ok {
        text.push_str("  equidim_codim1: ok\n");
    } else {
        writeln!(
            text,
            "  equidim_codim1: violated by {} new rays",
            equidim.offending.len()
        )
        .unwrap();
    }
    match &a.out {
        Some(p) => {
            write_json(p, &fan_value)?;
            writeln!(text, "  written to {}", p.display()).unwrap();
        }
        None => text.push_str(&render_json(&fan_value)),
    }
    let pass = equidim.ok;
    Ok(Outcome {
        value: json!({ "fan": fan_value, "equidim": equidim, "pass": pass }),
        text,
        pass,
    })
}

fn cocycle(a: &CocycleArgs, seed: u64, tol: f64) -> Res {
    if a.g > 3 {
        return Err(Error::UnsupportedRank(a.g).into());
    }
    let r = cocycle_trials(a.g, a.trials, seed, tol)?;
    let text = format!(
        "cocycle g={} trials={} seed={}: max residual {:.3e} (tol {:e}), {} failures: {}\n",
        r.g,
        r.trials,
        r.seed,
        r.max_residual,
        r.tol,
        r.failures,
        if r.pass { "PASS" } else { "FAIL" }
    );
    Ok(Outcome {
        value: to_value(&r),
        text,
        pass: r.pass,
    })
}

fn fixed_point(a: &FixedPointArgs, tol: f64) -> Res {
    if a.g == 0 || a.g > 3 {
        return Err(Error::UnsupportedRank(a.g).into());
    }
    let catalog: Vec<_> = fixed_point_catalog(a.g)
        .into_iter()
        .filter(|e| a.element.as_ref().is_none_or(|name| *name == e.name))
        .collect();
    if catalog.is_empty() {
        return Err(CliError::Usage(format!(
            "unknown catalog element {:?}",
            a.element.as_deref().unwrap_or("")
        )));
    }
    let mut text = String::new();
    let mut entries = Vec::new();
    let mut all = true;
    for e in &catalog {
        let r = fixed_point_eigen_check(&e.gamma, &e.tau, tol)?;
        let ok = r.matched == Some(Splitting::LambdaBar)
            && r.max_deviation <= tol
            && (r.is_trivial || r.has_non_one_eigenvalue);
        all &= ok;
        writeln!(
            text,
            "{:<15} order {}: profile {}, matches {:?}, deviation {:.2e}, eigenvalue != 1: {}: {}",
            e.name,
            e.order,
            r.profile,
            r.matched,
            r.max_deviation,
            r.has_non_one_eigenvalue,
            if ok { "PASS" } else { "FAIL" }
        )
        .unwrap();
        entries.push(json!({ "element": e, "report": r, "pass": ok }));
    }
    Ok(Outcome {
        value: json!({ "g": a.g, "tol": tol, "entries": entries, "pass": all }),
        text,
        pass: all,
    })
}

fn slope_class(a: &SlopeClassArgs) -> Res {
    let class = match a.which {
        Which::ThetaNull => theta_null_class(a.g)?,
        Which::N0Prime => n0_prime_class(a.g)?,
    };
    let s = slope(&class)?;
    let text = format!("{class}, slope {}\n", display(&s));
    Ok(Outcome {
        value: json!({ "class": class, "slope": kuga_core::exact::rational::to_pq(&s) }),
        text,
        pass: true,
    })
}

fn slope_form(a: &SlopeFormArgs) -> Res {
    let support: FourierSupport = read_json(&a.support)?;
    let s = cusp_form_slope(a.weight, &support)?;
    let text = format!("{}\n", display(&s));
    Ok(Outcome {
        value: json!({ "weight": a.weight, "support": support, "slope": kuga_core::exact::rational::to_pq(&s) }),
        text,
        pass: true,
    })
}

fn slope_table() -> Res {
    let mut rows = Vec::new();
    let mut text = String::new();
    for g in 1..=6 {
        let r = s_min_record(g)?;
        let by = match r.achieved_by {
            Achiever::ThetaNull => "theta-null",
            Achiever::N0Prime => "N0'",
            Achiever::External => "external bound",
        };
        let rel = if r.is_upper_bound_only { "<=" } else { "=" };
        let mut line = format!("s_min({g}) {rel} {}  [{by}", frac(&r.value));
        if let Some(sec) = &r.secondary {
            write!(line, "; N0' slope {}", frac(sec)).unwrap();
        }
        line.push_str(if r.minimizer_rigid {
            ", rigid]"
        } else {
            ", rigidity unknown]"
        });
        writeln!(text, "{line}").unwrap();
        rows.push(r);
    }
    Ok(Outcome {
        value: to_value(&rows),
        text,
        pass: true,
    })
}
