use kuga_core::slope::{kdim_table, kodaira_dimension};
use kuga_core::KodairaKind;

#[test]
fn more_points_never_lower_the_kodaira_dimension() {
    let rank = |k: &KodairaKind| match k {
        KodairaKind::MinusInfinity => -1i64,
        KodairaKind::Zero => 0,
        KodairaKind::GeneralType(d) => *d as i64,
    };
    for g in 2..=9 {
        for n in 1..20 {
            let a = kodaira_dimension(g, n).unwrap();
            let b = kodaira_dimension(g, n + 1).unwrap();
            assert!(rank(&a.kind) <= rank(&b.kind), "g={g} n={n}");
            if let KodairaKind::GeneralType(d) = a.kind {
                assert_eq!(d, g * (g + 1) / 2);
            }
        }
    }
}

#[test]
fn table_agrees_with_pointwise_verdicts() {
    let t = kdim_table(9, 20).unwrap();
    for g in 1..=9 {
        for n in 1..=20 {
            assert_eq!(
                t.get(g, n).unwrap().kind,
                kodaira_dimension(g, n).unwrap().kind
            );
        }
    }
}
