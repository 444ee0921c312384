use num_traits::{One, Signed, Zero};

use super::ParameterVector;
use crate::rational::Rational;

/// Whether `X^d + r_d X^{d-1} + … + r_1` has all roots in the open unit disk,
/// i.e. whether `r` lies in the interior of the eventually periodic region.
pub fn is_interior(r: &ParameterVector) -> bool {
    let mut coeffs: Vec<Rational> = r.entries().to_vec();
    coeffs.push(Rational::one());
    is_schur_stable(&coeffs)
}

/// Exact Schur–Cohn test. `coeffs` lists the coefficients from the constant
/// term upwards; the leading one must be nonzero.
pub fn is_schur_stable(coeffs: &[Rational]) -> bool {
    let mut a: Vec<Rational> = coeffs.to_vec();
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    loop {
        let n = match a.len() {
            0 => return false,
            len => len - 1,
        };
        if n == 0 {
            return true;
        }
        if a[0].abs() >= a[n].abs() {
            return false;
        }
        let b: Vec<Rational> = (0..n).map(|k| &a[n] * &a[k + 1] - &a[0] * &a[n - 1 - k]).collect();
        a = b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn triangle(r1: &Rational, r2: &Rational) -> bool {
        r1.abs() < Rational::one() && r2.abs() < Rational::one() + r1
    }

    #[test]
    fn examples() {
        assert!(is_interior(&ParameterVector::from_ratios(&[(1, 2), (1, 2)]).unwrap()));
        assert!(!is_interior(&ParameterVector::from_ratios(&[(1, 1), (-2, 3)]).unwrap()));
        assert!(is_interior(&ParameterVector::from_ratios(&[(0, 1), (0, 1)]).unwrap()));
    }

    #[test]
    fn one_dimensional() {
        for (p, q, want) in [
            (1, 2, true),
            (-1, 2, true),
            (1, 1, false),
            (-1, 1, false),
            (3, 2, false),
        ] {
            assert_eq!(is_interior(&ParameterVector::from_ratios(&[(p, q)]).unwrap()), want);
        }
    }

    #[test]
    fn matches_triangle_on_a_grid() {
        for i in -14..=14 {
            for j in -28..=28 {
                let (r1, r2) = (rat(i, 12), rat(j, 12));
                let r = ParameterVector::new(vec![r1.clone(), r2.clone()]).unwrap();
                assert_eq!(is_interior(&r), triangle(&r1, &r2), "{r}");
            }
        }
    }
}
