use std::time::Instant;

use serde::Serialize;

use srs_core::dynamics::{
    decide_finiteness, decide_on_graph, witness_set_with_budget, Cycle, ParameterVector, Verdict,
};
use srs_core::par::{self, Exec};
use srs_core::rational::rat;

/// Parameters in 22 distinct components of the finite region (expected
/// `Finite`) and 3 parameters in holes of its largest component (expected
/// `NonFinite`).
pub fn reference_parameters() -> Vec<(ParameterVector, Verdict)> {
    const COMPONENTS: [(i64, i64, i64, i64); 22] = [
        (1, 2, 1, 2),
        (152, 157, 193, 157),
        (313, 315, 239, 210),
        (167, 168, 255, 224),
        (314, 317, 359, 317),
        (453, 455, 496, 455),
        (305, 306, 37, 34),
        (362, 363, 259, 242),
        (356, 357, 382, 357),
        (358, 359, 384, 359),
        (1121, 1124, 601, 562),
        (1375, 1378, 640, 689),
        (2061, 2066, 959, 1033),
        (309, 310, 141, 155),
        (1533, 1538, 699, 769),
        (989, 992, 901, 992),
        (1127, 1133, 1009, 1133),
        (1607, 1612, 691, 806),
        (694, 697, 521, 697),
        (92, 93, 16, 31),
        (537, 539, 67, 539),
        (304, 305, 38, 305),
    ];
    const HOLES: [(i64, i64, i64, i64); 3] = [(911, 914, 391, 457), (2455, 2463, 2108, 2463), (265, 266, 1, 4)];
    let p = |(a, b, c, d): (i64, i64, i64, i64)| ParameterVector::new(vec![rat(a, b), rat(c, d)]).expect("two entries");
    COMPONENTS
        .into_iter()
        .map(|t| (p(t), Verdict::Finite))
        .chain(HOLES.into_iter().map(|t| (p(t), Verdict::NonFinite)))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ReferenceCheck {
    pub r: ParameterVector,
    pub expected: Verdict,
    pub verdict: Option<Verdict>,
    pub cycle: Option<Cycle>,
    pub pass: bool,
    pub error: Option<String>,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReferenceReport {
    pub checks: Vec<ReferenceCheck>,
    pub pass: bool,
    /// Only the verdicts at the listed parameters are checked, not the
    /// number of components or holes.
    pub scope: &'static str,
}

/// Decides finiteness at every reference parameter. A `NonFinite` verdict
/// passes only with a nontrivial cycle of that parameter. `budget` bounds the
/// witness set size; `None` uses the default.
pub fn reference_report(budget: Option<usize>, exec: Exec) -> ReferenceReport {
    let params = reference_parameters();
    let checks = par::map(exec, &params, |(r, expected)| {
        let t = Instant::now();
        let decision = match budget {
            Some(b) => witness_set_with_budget(r, b).map(|g| decide_on_graph(&g)),
            None => decide_finiteness(r),
        };
        let millis = t.elapsed().as_millis();
        match decision {
            Ok(d) => {
                let cycle_ok = match (&d.witness_cycle, d.verdict) {
                    (Some(c), Verdict::NonFinite) => !c.is_trivial() && c.is_cycle_of(r).unwrap_or(false),
                    (None, Verdict::Finite) => true,
                    _ => false,
                };
                ReferenceCheck {
                    r: r.clone(),
                    expected: *expected,
                    verdict: Some(d.verdict),
                    pass: d.verdict == *expected && cycle_ok,
                    cycle: d.witness_cycle,
                    error: None,
                    millis,
                }
            }
            Err(e) => ReferenceCheck {
                r: r.clone(),
                expected: *expected,
                verdict: None,
                cycle: None,
                pass: false,
                error: Some(e.to_string()),
                millis,
            },
        }
    });
    let pass = checks.iter().all(|c| c.pass);
    ReferenceReport {
        checks,
        pass,
        scope: "verdicts at the listed parameters only",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_shape() {
        let ps = reference_parameters();
        assert_eq!(ps.len(), 25);
        assert_eq!(ps.iter().filter(|p| p.1 == Verdict::NonFinite).count(), 3);
        assert_eq!(ps[19].0.to_string(), "(92/93, 16/31)");
    }

    #[test]
    fn first_entries_decide() {
        let ps = reference_parameters();
        for (r, v) in [&ps[0], &ps[19], &ps[24]] {
            assert_eq!(decide_finiteness(r).unwrap().verdict, *v, "{r}");
        }
    }
}
