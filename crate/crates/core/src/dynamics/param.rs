use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::DynamicsError;
use crate::rational::{common_denominator, format_rational, parse_rational_list, ParseError, Rational};

/// A parameter `r = (r_1, ..., r_d)` with exact rational entries.
///
/// The entries are also kept over a common denominator `q` so that `r·a` for
/// an integer vector `a` is `(p·a) / q`. When `p` and `q` fit into `i128` the
/// floor of `r·a` is computed without allocation.
#[derive(Clone)]
pub struct ParameterVector {
    entries: Vec<Rational>,
    numerators: Vec<BigInt>,
    denominator: BigInt,
    small: Option<(Vec<i128>, i128)>,
}

impl ParameterVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self, DynamicsError> {
        if entries.is_empty() {
            return Err(DynamicsError::EmptyParameter);
        }
        let denominator = common_denominator(&entries);
        let numerators: Vec<BigInt> = entries.iter().map(|e| e.numer() * (&denominator / e.denom())).collect();
        let small = numerators
            .iter()
            .map(|n| n.to_i128())
            .collect::<Option<Vec<_>>>()
            .zip(denominator.to_i128());
        Ok(Self {
            entries,
            numerators,
            denominator,
            small,
        })
    }

    pub fn from_ratios(pairs: &[(i64, i64)]) -> Result<Self, DynamicsError> {
        Self::new(
            pairs
                .iter()
                .map(|&(p, q)| BigRational::new(p.into(), q.into()))
                .collect(),
        )
    }

    pub fn parse(s: &str) -> Result<Self, ParseError> {
        let entries = parse_rational_list(s)?;
        Self::new(entries).map_err(|_| ParseError::Empty)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub(crate) fn check_dim(&self, found: usize) -> Result<(), DynamicsError> {
        if found != self.dim() {
            return Err(DynamicsError::DimensionMismatch {
                expected: self.dim(),
                found,
            });
        }
        Ok(())
    }

    /// Exact inner product `r·a`.
    pub fn dot(&self, a: &[i64]) -> Rational {
        let num: BigInt = self.numerators.iter().zip(a).map(|(p, &x)| p * BigInt::from(x)).sum();
        BigRational::new(num, self.denominator.clone())
    }

    /// `⌊r·a⌋`. The caller guarantees matching dimensions.
    pub fn floor_dot(&self, a: &[i64]) -> Result<i64, DynamicsError> {
        if let Some((p, q)) = &self.small {
            let mut acc: i128 = 0;
            let mut ok = true;
            for (pi, &x) in p.iter().zip(a) {
                match pi.checked_mul(x as i128).and_then(|t| acc.checked_add(t)) {
                    Some(v) => acc = v,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return i64::try_from(acc.div_euclid(*q)).map_err(|_| DynamicsError::Overflow);
            }
        }
        let num: BigInt = self.numerators.iter().zip(a).map(|(p, &x)| p * BigInt::from(x)).sum();
        num.div_floor(&self.denominator).to_i64().ok_or(DynamicsError::Overflow)
    }

    /// Whether `r·a` is an integer.
    pub fn dot_is_integer(&self, a: &[i64]) -> bool {
        if let Some((p, q)) = &self.small {
            let acc = p.iter().zip(a).try_fold(0i128, |acc, (pi, &x)| {
                pi.checked_mul(x as i128).and_then(|t| acc.checked_add(t))
            });
            if let Some(acc) = acc {
                return acc.rem_euclid(*q) == 0;
            }
        }
        let num: BigInt = self.numerators.iter().zip(a).map(|(p, &x)| p * BigInt::from(x)).sum();
        (num % &self.denominator).is_zero()
    }
}

impl PartialEq for ParameterVector {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for ParameterVector {}

impl Hash for ParameterVector {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.entries.hash(state);
    }
}

impl PartialOrd for ParameterVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ParameterVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.entries.cmp(&other.entries)
    }
}

impl fmt::Debug for ParameterVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParameterVector{self}")
    }
}

impl fmt::Display for ParameterVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Serialized as a list of rational strings.
impl serde::Serialize for ParameterVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.entries.iter().map(format_rational))
    }
}
