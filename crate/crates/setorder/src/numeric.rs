//! Exact scalars, extended reals, and rational vectors.
//!
//! Every quantity in this crate is a `BigRational`; nothing is ever rounded.
//! `ExtReal` adjoins the two infinities so that optimal values of unbounded
//! or infeasible subproblems stay total, with the usual conventions
//! `sup {} = -inf` and `inf {} = +inf`. The one non-total operation is
//! addition: `(+inf) + (-inf)` is refused with an error instead of being
//! assigned a value.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("indeterminate sum (+inf) + (-inf)")]
    IndeterminateSum,
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as an exact rational.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`, tolerating surrounding whitespace.
pub fn parse_rat(s: &str) -> Result<Rat, NumericError> {
    let t = s.trim();
    if t.contains('/') {
        let (num, den) = t.split_once('/').unwrap();
        let n = BigInt::from_str(num.trim())
            .map_err(|_| NumericError::ParseRational(s.to_string()))?;
        let d = BigInt::from_str(den.trim())
            .map_err(|_| NumericError::ParseRational(s.to_string()))?;
        if d.is_zero() {
            return Err(NumericError::ParseRational(s.to_string()));
        }
        Ok(Rat::new(n, d))
    } else {
        BigInt::from_str(t)
            .map(Rat::from_integer)
            .map_err(|_| NumericError::ParseRational(s.to_string()))
    }
}

/// Dense rational vector. Dimension is fixed at construction; the arithmetic
/// helpers panic on mismatched dimensions, which is an internal invariant
/// (all external inputs are dimension-checked at the schema boundary).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(pub Vec<Rat>);

impl Vector {
    pub fn zero(dim: usize) -> Self {
        Vector(vec![Rat::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| rat_i(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }

    pub fn dot(&self, other: &Vector) -> Rat {
        assert_eq!(self.dim(), other.dim(), "dot of mismatched dimensions");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .fold(Rat::zero(), |acc, t| acc + t)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim(), "add of mismatched dimensions");
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim(), "sub of mismatched dimensions");
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Rat) -> Vector {
        Vector(self.0.iter().map(|a| a * c).collect())
    }

    /// The unique positive multiple with coprime integer entries. Used to
    /// deduplicate facet normals, which are only meaningful up to positive
    /// scaling. Zero vectors are returned unchanged.
    pub fn primitive(&self) -> Vector {
        if self.is_zero() {
            return self.clone();
        }
        let lcm_den = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|r| r.numer() * (&lcm_den / r.denom()))
            .collect();
        let gcd = ints
            .iter()
            .fold(BigInt::zero(), |acc, n| acc.gcd(n));
        Vector(ints.iter().map(|n| Rat::from_integer(n / &gcd)).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Vector {
    type Err = NumericError;

    /// Comma-separated rationals, e.g. `"2,0"` or `"-1/2, 3"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coords = s
            .split(',')
            .map(parse_rat)
            .collect::<Result<Vec<_>, _>>()?;
        if coords.is_empty() {
            return Err(NumericError::ParseRational(s.to_string()));
        }
        Ok(Vector(coords))
    }
}

/// Rational line with `-inf` and `+inf` adjoined. The derived order is the
/// total extension of the rational order (variant order is load-bearing).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtReal {
    NegInf,
    Fin(Rat),
    PosInf,
}

impl ExtReal {
    pub fn fin_i(n: i64) -> Self {
        ExtReal::Fin(rat_i(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Fin(_))
    }

    pub fn as_fin(&self) -> Option<&Rat> {
        match self {
            ExtReal::Fin(r) => Some(r),
            _ => None,
        }
    }

    /// Guarded addition; the only failure is `(+inf) + (-inf)`.
    pub fn checked_add(&self, other: &ExtReal) -> Result<ExtReal, NumericError> {
        use ExtReal::*;
        match (self, other) {
            (PosInf, NegInf) | (NegInf, PosInf) => Err(NumericError::IndeterminateSum),
            (PosInf, _) | (_, PosInf) => Ok(PosInf),
            (NegInf, _) | (_, NegInf) => Ok(NegInf),
            (Fin(a), Fin(b)) => Ok(Fin(a + b)),
        }
    }

    /// `self - other`, failing on `inf - inf` of equal signs.
    pub fn checked_sub(&self, other: &ExtReal) -> Result<ExtReal, NumericError> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> ExtReal {
        match self {
            ExtReal::NegInf => ExtReal::PosInf,
            ExtReal::PosInf => ExtReal::NegInf,
            ExtReal::Fin(r) => ExtReal::Fin(-r),
        }
    }

    /// Scaling by a strictly positive rational, which fixes both infinities.
    pub fn scale_pos(&self, c: &Rat) -> ExtReal {
        assert!(c.is_positive(), "scale_pos needs a positive factor");
        match self {
            ExtReal::Fin(r) => ExtReal::Fin(r * c),
            inf => inf.clone(),
        }
    }

    pub fn le_zero(&self) -> bool {
        *self <= ExtReal::Fin(Rat::zero())
    }

    pub fn lt_zero(&self) -> bool {
        *self < ExtReal::Fin(Rat::zero())
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => write!(f, "-inf"),
            ExtReal::PosInf => write!(f, "inf"),
            ExtReal::Fin(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn ext_max(a: ExtReal, b: ExtReal) -> ExtReal {
    if a >= b {
        a
    } else {
        b
    }
}

pub fn ext_min(a: ExtReal, b: ExtReal) -> ExtReal {
    if a <= b {
        a
    } else {
        b
    }
}

/// Supremum with `sup {} = -inf`.
pub fn ext_sup<I: IntoIterator<Item = ExtReal>>(values: I) -> ExtReal {
    values.into_iter().fold(ExtReal::NegInf, ext_max)
}

/// Infimum with `inf {} = +inf`.
pub fn ext_inf<I: IntoIterator<Item = ExtReal>>(values: I) -> ExtReal {
    values.into_iter().fold(ExtReal::PosInf, ext_min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_display_roundtrip() {
        for s in ["3/2", "-3/2", "7", "0", "-1/4"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!(parse_rat(" 2/4 ").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-2/-4").unwrap(), rat(1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn ext_order_is_total_and_expected() {
        use ExtReal::*;
        assert!(NegInf < Fin(rat_i(-1000)));
        assert!(Fin(rat_i(1000)) < PosInf);
        assert!(Fin(rat(1, 3)) < Fin(rat(1, 2)));
        assert!(NegInf < PosInf);
    }

    #[test]
    fn empty_conventions() {
        assert_eq!(ext_sup(std::iter::empty()), ExtReal::NegInf);
        assert_eq!(ext_inf(std::iter::empty()), ExtReal::PosInf);
    }

    #[test]
    fn indeterminate_sum_is_refused() {
        assert_eq!(
            ExtReal::PosInf.checked_add(&ExtReal::NegInf),
            Err(NumericError::IndeterminateSum)
        );
        assert_eq!(
            ExtReal::NegInf.checked_sub(&ExtReal::NegInf),
            Err(NumericError::IndeterminateSum)
        );
        assert_eq!(
            ExtReal::PosInf.checked_add(&ExtReal::fin_i(5)),
            Ok(ExtReal::PosInf)
        );
    }

    #[test]
    fn vector_parse() {
        let v: Vector = "2, 0".parse().unwrap();
        assert_eq!(v, Vector::from_ints(&[2, 0]));
        let w: Vector = "-1/2,3".parse().unwrap();
        assert_eq!(w.0, vec![rat(-1, 2), rat_i(3)]);
        assert!("".parse::<Vector>().is_err());
        assert!("1,,2".parse::<Vector>().is_err());
    }

    #[test]
    fn primitive_direction() {
        let v = Vector(vec![rat(2, 3), rat(-4, 3)]);
        assert_eq!(v.primitive(), Vector::from_ints(&[1, -2]));
        let w = Vector::from_ints(&[0, 6]);
        assert_eq!(w.primitive(), Vector::from_ints(&[0, 1]));
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-50i64..=50, 1i64..=12).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_ext() -> impl Strategy<Value = ExtReal> {
        prop_oneof![
            8 => arb_rat().prop_map(ExtReal::Fin),
            1 => Just(ExtReal::NegInf),
            1 => Just(ExtReal::PosInf),
        ]
    }

    proptest! {
        #[test]
        fn field_laws_on_rationals(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            if !a.is_zero() {
                prop_assert_eq!(&a * (Rat::one() / &a), Rat::one());
            }
        }

        #[test]
        fn ext_add_commutes_when_defined(a in arb_ext(), b in arb_ext()) {
            prop_assert_eq!(a.checked_add(&b), b.checked_add(&a));
        }

        #[test]
        fn ext_add_monotone(a in arb_ext(), b in arb_ext(), c in arb_ext()) {
            if let (Ok(ac), Ok(bc)) = (a.checked_add(&c), b.checked_add(&c)) {
                if a <= b {
                    prop_assert!(ac <= bc);
                }
            }
        }

        #[test]
        fn sup_inf_duality(xs in proptest::collection::vec(arb_ext(), 0..6)) {
            let sup = ext_sup(xs.iter().cloned());
            let neg_inf_of_neg = ext_inf(xs.iter().map(ExtReal::neg)).neg();
            prop_assert_eq!(sup, neg_inf_of_neg);
        }
    }
}
