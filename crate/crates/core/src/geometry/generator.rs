use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{ConvexCell, GeometryError, LinearConstraint, Normalized, Relation};
use crate::dynamics::Cycle;
use crate::rational::Rational;

/// The hyperplane `normal·x + offset = 0` in its unique integer form: gcd of all
/// entries 1 and first nonzero normal entry positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalGenerator {
    pub normal: Vec<i64>,
    pub offset: i64,
}

pub fn canonical_generator(normal: &[i64], offset: i64) -> Result<CanonicalGenerator, GeometryError> {
    let Some(&lead) = normal.iter().find(|&&x| x != 0) else {
        return Err(GeometryError::ZeroNormal);
    };
    let g = normal
        .iter()
        .fold(offset.unsigned_abs(), |g, &x| g.gcd(&x.unsigned_abs())) as i64;
    let sign = if lead < 0 { -1 } else { 1 };
    Ok(CanonicalGenerator {
        normal: normal.iter().map(|&x| sign * (x / g)).collect(),
        offset: sign * (offset / g),
    })
}

impl CanonicalGenerator {
    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn value(&self, x: &[Rational]) -> Rational {
        let mut acc = BigRational::from_integer(self.offset.into());
        for (&a, xi) in self.normal.iter().zip(x) {
            if a != 0 {
                acc += xi * BigInt::from(a);
            }
        }
        acc
    }

    /// Sign of `normal·x + offset`.
    pub fn sign_at(&self, x: &[Rational]) -> i8 {
        use num_traits::Signed;
        let v = self.value(x);
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    }

    /// The constraint `sign·(normal·x + offset) rel 0`.
    pub fn constraint(&self, sign: i8, relation: Relation) -> LinearConstraint {
        let s = i64::from(sign.signum());
        let normal: Vec<i64> = self.normal.iter().map(|&a| s * a).collect();
        match LinearConstraint::from_i64(&normal, s * self.offset, relation) {
            Normalized::Constraint(c) => c,
            _ => unreachable!("generator normals are nonzero"),
        }
    }
}

impl fmt::Debug for CanonicalGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}·r + {} = 0", self.normal, self.offset)
    }
}

/// The set of parameters `r` for which `pi` is a cycle: for each consecutive
/// pair `(a, b)`, `0 ≤ r·a + b_d < 1`.
pub fn cutout_polyhedron(pi: &Cycle) -> Result<ConvexCell, GeometryError> {
    let pts = pi.points();
    let d = pi.dim();
    let n = pts.len();
    let mut items = Vec::with_capacity(2 * n);
    for i in 0..n {
        let (a, b) = (&pts[i], &pts[(i + 1) % n]);
        if !a.shifts_into(b) {
            return Err(GeometryError::ShiftIncompatible(format!("{a} -> {b}")));
        }
        let bd = b.entries()[d - 1];
        let neg: Vec<i64> = a.entries().iter().map(|&x| -x).collect();
        items.push(LinearConstraint::from_i64(a.entries(), bd, Relation::Ge));
        items.push(LinearConstraint::from_i64(&neg, 1 - bd, Relation::Gt));
    }
    Ok(ConvexCell::from_normalized(d, items))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::LatticePoint;
    use crate::rational::rat;

    #[test]
    fn canonical_examples() {
        let g = canonical_generator(&[2, 4], 6).unwrap();
        assert_eq!((g.normal.as_slice(), g.offset), (&[1, 2][..], 3));
        let g = canonical_generator(&[-1, 2], -3).unwrap();
        assert_eq!((g.normal.as_slice(), g.offset), (&[1, -2][..], 3));
        let g = canonical_generator(&[0, -3], 0).unwrap();
        assert_eq!((g.normal.as_slice(), g.offset), (&[0, 1][..], 0));
        assert_eq!(canonical_generator(&[0, 0], 1).unwrap_err(), GeometryError::ZeroNormal);
    }

    fn cycle(pts: &[[i64; 2]]) -> Cycle {
        Cycle::new(pts.iter().map(|p| LatticePoint::new(p)).collect()).unwrap()
    }

    #[test]
    fn cutout_of_two_cycle_is_half_open_square() {
        let cell = cutout_polyhedron(&cycle(&[[0, 1], [1, 0]])).unwrap();
        assert_eq!(cell.constraints().len(), 4);
        assert!(cell.contains(&[rat(-1, 1), rat(0, 1)]).unwrap());
        assert!(!cell.contains(&[rat(0, 1), rat(1, 2)]).unwrap());
        assert!(!cell.contains(&[rat(-1, 2), rat(1, 1)]).unwrap());
        assert!(cell.contains(&[rat(-1, 2), rat(1, 2)]).unwrap());
    }

    #[test]
    fn cutout_of_trivial_cycle_is_everything() {
        let cell = cutout_polyhedron(&Cycle::trivial(2)).unwrap();
        assert_eq!(cell, ConvexCell::whole(2));
    }

    #[test]
    fn cutout_of_five_cycle() {
        let cell = cutout_polyhedron(&cycle(&[[1, -1], [-1, -1], [-1, 1], [1, 2], [2, 1]])).unwrap();
        assert!(cell.contains(&[rat(1, 1), rat(-2, 3)]).unwrap());
        // The first and third pairs bound r1 − r2 from both sides; two closed
        // rows are subsumed by strict ones with the same coefficients.
        assert_eq!(cell.constraints().len(), 8);
    }
}
