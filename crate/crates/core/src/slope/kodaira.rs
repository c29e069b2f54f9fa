//! Kodaira dimension of the Kuga varieties `X_g^n`.

use std::fmt;

use serde::Serialize;

use super::classes::s_min_record;
use crate::error::{Error, Result};
use crate::exact::rational::{display, int};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KodairaKind {
    GeneralType(usize),
    Zero,
    MinusInfinity,
}

/// One applied rule with its inequality written out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleStep {
    pub rule: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KodairaVerdict {
    pub g: usize,
    pub n: usize,
    pub kind: KodairaKind,
    pub justification: Vec<RuleStep>,
    /// `n = 0`: a statement about `A_g`, outside the fibred setting.
    pub informational: bool,
}

impl fmt::Display for KodairaVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            KodairaKind::GeneralType(d) => write!(f, "kappa = {d} (general type)"),
            KodairaKind::Zero => write!(f, "kappa = 0"),
            KodairaKind::MinusInfinity if self.g == 1 => {
                write!(f, "kappa = -infinity (fibres rational)")
            }
            KodairaKind::MinusInfinity => write!(f, "kappa = -infinity"),
        }
    }
}

fn step(rule: &'static str, detail: impl Into<String>) -> RuleStep {
    RuleStep {
        rule,
        detail: detail.into(),
    }
}

/// Decides `κ(X_g^n)` from the fibre structure, the Iitaka fact for
/// `g >= 7` and the comparison of `s_min(g)` with `g + n + 1`.
pub fn kodaira_dimension(g: usize, n: usize) -> Result<KodairaVerdict> {
    if g == 0 {
        return Err(Error::OutOfRange("g must be at least 1".into()));
    }
    let dim = g * (g + 1) / 2;
    let verdict = |kind, justification| {
        Ok(KodairaVerdict {
            g,
            n,
            kind,
            justification,
            informational: n == 0,
        })
    };
    if g == 1 {
        return verdict(
            KodairaKind::MinusInfinity,
            vec![step(
                "fibres-rational",
                "g = 1: the fibres of X_1^n are rational",
            )],
        );
    }
    if g >= 7 {
        return verdict(
            KodairaKind::GeneralType(dim),
            vec![step(
                "iitaka",
                format!("g = {g} >= 7: A_g is of general type, and so is X_g^n (dimension {dim})"),
            )],
        );
    }
    let rec = s_min_record(g as u32)?;
    let s = rec.comparison_value().clone();
    let target = int((g + n + 1) as i64);
    let s_txt = if rec.is_upper_bound_only {
        format!("s_min({g}) <= {}", display(&s))
    } else {
        format!("s_min({g}) = {}", display(&s))
    };
    let target_txt = format!("g + n + 1 = {}", g + n + 1);
    if s < target {
        let mut just = vec![step("slope-below", format!("{s_txt} < {target_txt}"))];
        if g + n >= 6 {
            just.push(step(
                "canonical-compactification",
                format!("g + n = {} >= 6", g + n),
            ));
            return verdict(KodairaKind::GeneralType(dim), just);
        }
        return Err(Error::Undecidable(format!(
            "{s_txt} < {target_txt} but g + n = {} < 6 gives no canonical compactification",
            g + n
        )));
    }
    if rec.is_upper_bound_only {
        return Err(Error::Undecidable(format!(
            "{s_txt} is only a bound and is not below {target_txt}"
        )));
    }
    if s == target {
        if rec.minimizer_rigid {
            return verdict(
                KodairaKind::Zero,
                vec![
                    step("slope-equal", format!("{s_txt} = {target_txt}")),
                    step(
                        "rigid-minimizer",
                        format!("the divisor of slope {} is rigid", display(&s)),
                    ),
                ],
            );
        }
        return Err(Error::Undecidable(format!(
            "{s_txt} = {target_txt} with a non-rigid minimizer"
        )));
    }
    verdict(
        KodairaKind::MinusInfinity,
        vec![step("slope-above", format!("{s_txt} > {target_txt}"))],
    )
}

/// Verdicts for `1 <= g <= g_max`, `1 <= n <= n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KdimTable {
    pub g_max: usize,
    pub n_max: usize,
    /// `rows[g - 1][n - 1]`.
    pub rows: Vec<Vec<KodairaVerdict>>,
}

impl KdimTable {
    pub fn get(&self, g: usize, n: usize) -> Option<&KodairaVerdict> {
        self.rows.get(g.checked_sub(1)?)?.get(n.checked_sub(1)?)
    }
}

pub fn kdim_table(g_max: usize, n_max: usize) -> Result<KdimTable> {
    if g_max == 0 || n_max == 0 || g_max > 9 || n_max > 20 {
        return Err(Error::OutOfRange(format!(
            "table needs 1 <= g_max <= 9 and 1 <= n_max <= 20, got {g_max}, {n_max}"
        )));
    }
    let rows = (1..=g_max)
        .map(|g| {
            (1..=n_max)
                .map(|n| kodaira_dimension(g, n))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KdimTable { g_max, n_max, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_cases() {
        assert_eq!(kodaira_dimension(2, 7).unwrap().kind, KodairaKind::Zero);
        assert_eq!(
            kodaira_dimension(3, 4).unwrap().kind,
            KodairaKind::MinusInfinity
        );
        assert_eq!(
            kodaira_dimension(6, 1).unwrap().kind,
            KodairaKind::GeneralType(21)
        );
        assert_eq!(
            kodaira_dimension(5, 1).unwrap().kind,
            KodairaKind::MinusInfinity
        );
        assert_eq!(
            kodaira_dimension(4, 4).unwrap().kind,
            KodairaKind::GeneralType(10)
        );
        assert_eq!(
            kodaira_dimension(2, 8).unwrap().kind,
            KodairaKind::GeneralType(3)
        );
        assert_eq!(
            kodaira_dimension(1, 3).unwrap().to_string(),
            "kappa = -infinity (fibres rational)"
        );
        assert_eq!(kodaira_dimension(2, 7).unwrap().to_string(), "kappa = 0");
        assert_eq!(
            kodaira_dimension(8, 1).unwrap().kind,
            KodairaKind::GeneralType(36)
        );
    }

    #[test]
    fn zero_fibre_queries() {
        let v = kodaira_dimension(3, 0).unwrap();
        assert!(v.informational);
        assert_eq!(v.kind, KodairaKind::MinusInfinity);
        assert!(matches!(
            kodaira_dimension(6, 0),
            Err(Error::Undecidable(_))
        ));
        assert_eq!(
            kodaira_dimension(7, 0).unwrap().kind,
            KodairaKind::GeneralType(28)
        );
    }

    #[test]
    fn monotone_in_n() {
        let t = kdim_table(6, 20).unwrap();
        for g in 2..=6 {
            let mut seen_general = false;
            for n in 1..=20 {
                let general = matches!(t.get(g, n).unwrap().kind, KodairaKind::GeneralType(_));
                assert!(!seen_general || general, "({g}, {n})");
                seen_general |= general;
            }
        }
        assert!(kdim_table(10, 1).is_err());
    }
}
