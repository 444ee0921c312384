use rustc_hash::FxHashMap;

use super::{Cycle, DynamicsError, LatticePoint, ParameterVector};

pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

/// `τ_r(a) = (a_2, …, a_d, −⌊r·a⌋)`.
pub fn tau(r: &ParameterVector, a: &LatticePoint) -> Result<LatticePoint, DynamicsError> {
    r.check_dim(a.dim())?;
    let f = r.floor_dot(a.entries())?;
    let mut out = LatticePoint(a.0[1..].iter().copied().collect());
    out.0.push(f.checked_neg().ok_or(DynamicsError::Overflow)?);
    Ok(out)
}

/// `τ*_r(a) = −τ_r(−a)`.
pub fn tau_star(r: &ParameterVector, a: &LatticePoint) -> Result<LatticePoint, DynamicsError> {
    tau(r, &a.checked_neg()?)?.checked_neg()
}

/// An orbit split into its preperiod and the cycle it falls into.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub preperiod: Vec<LatticePoint>,
    pub cycle: Cycle,
}

pub fn orbit_with_default_cap(r: &ParameterVector, a: &LatticePoint) -> Result<Orbit, DynamicsError> {
    orbit(r, a, DEFAULT_ORBIT_CAP)
}

/// Iterates `τ_r` from `a` until a point repeats, taking at most `cap` steps.
pub fn orbit(r: &ParameterVector, a: &LatticePoint, cap: usize) -> Result<Orbit, DynamicsError> {
    r.check_dim(a.dim())?;
    let mut seen: FxHashMap<LatticePoint, usize> = FxHashMap::default();
    let mut seq = vec![a.clone()];
    seen.insert(a.clone(), 0);
    for _ in 0..cap.max(1) {
        let next = tau(r, seq.last().expect("nonempty"))?;
        if let Some(&i) = seen.get(&next) {
            let cycle = seq.split_off(i);
            return Ok(Orbit {
                preperiod: seq,
                cycle: Cycle::new_unchecked(cycle),
            });
        }
        seen.insert(next.clone(), seq.len());
        seq.push(next);
    }
    Err(DynamicsError::CapExceeded { cap })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: &[i64]) -> LatticePoint {
        LatticePoint::new(a)
    }

    #[test]
    fn tau_examples() {
        let r = ParameterVector::from_ratios(&[(1, 1), (-2, 3)]).unwrap();
        assert_eq!(tau(&r, &p(&[2, 1])).unwrap(), p(&[1, -1]));
        assert_eq!(tau(&r, &p(&[0, 0])).unwrap(), p(&[0, 0]));
        let r = ParameterVector::from_ratios(&[(-1, 3), (1, 3)]).unwrap();
        assert_eq!(tau(&r, &p(&[0, 1])).unwrap(), p(&[1, 0]));
        assert_eq!(tau_star(&r, &p(&[0, 1])).unwrap(), p(&[1, -1]));
        let r = ParameterVector::from_ratios(&[(0, 1), (0, 1)]).unwrap();
        assert_eq!(tau_star(&r, &p(&[5, 7])).unwrap(), p(&[7, 0]));
        assert!(matches!(
            tau(&r, &p(&[1, 2, 3])),
            Err(DynamicsError::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn orbit_examples() {
        let r = ParameterVector::from_ratios(&[(-1, 3), (1, 3)]).unwrap();
        let o = orbit(&r, &p(&[1, 1]), 100).unwrap();
        assert_eq!(o.preperiod, vec![p(&[1, 1])]);
        assert_eq!(o.cycle.points(), &[p(&[1, 0]), p(&[0, 1])]);

        let r = ParameterVector::from_ratios(&[(0, 1), (0, 1)]).unwrap();
        let o = orbit(&r, &p(&[3, 4]), 100).unwrap();
        assert_eq!(o.preperiod, vec![p(&[3, 4]), p(&[4, 0])]);
        assert!(o.cycle.is_trivial());

        let o = orbit(&r, &p(&[0, 0]), 1).unwrap();
        assert!(o.preperiod.is_empty());
        assert!(o.cycle.is_trivial());
    }

    #[test]
    fn orbit_cap() {
        // r = (1, 0) gives τ(a1, a2) = (a2, -a1), period 4 from (1, 0).
        let r = ParameterVector::from_ratios(&[(1, 1), (0, 1)]).unwrap();
        assert_eq!(
            orbit(&r, &p(&[1, 0]), 3).unwrap_err(),
            DynamicsError::CapExceeded { cap: 3 }
        );
        assert_eq!(orbit(&r, &p(&[1, 0]), 4).unwrap().cycle.len(), 4);
    }
}
