//! Exact coefficients over the rationals or a prime field.
//!
//! A [`Scalar`] always carries its field. Mixing fields is an error in the
//! `checked_*` methods and a panic in the operator impls, which are meant for
//! code that has already established that both sides agree (every [`Poly`]
//! does).
//!
//! [`Poly`]: crate::Poly

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient field: ℚ or F_p for a prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// Builds F_p, rejecting composite moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// 0 for ℚ.
    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    /// True iff the characteristic divides `n` (never for ℚ unless `n = 0`).
    pub fn char_divides(self, n: u64) -> bool {
        match self {
            FieldSpec::Rationals => n == 0,
            FieldSpec::Prime(p) => n.is_multiple_of(p),
        }
    }

    /// Every element of a prime field in residue order; `None` for ℚ.
    pub fn elements(self) -> Option<impl Iterator<Item = Scalar>> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some((0..p).map(move |r| Scalar::Mod { value: r, p })),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `q` or `fp:P`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let p = s
            .strip_prefix("fp:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::syntax(0, format!("unknown field `{s}`; expected `q` or `fp:P`")))?;
        FieldSpec::prime(p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element in canonical form.
///
/// Rationals are reduced with a positive denominator (guaranteed by
/// `BigRational`); residues live in `[0, p)`. Equality of values is
/// therefore equality of representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, p: u64 },
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Self {
        Scalar::from_int(field, 0)
    }

    pub fn one(field: FieldSpec) -> Self {
        Scalar::from_int(field, 1)
    }

    pub fn from_int(field: FieldSpec, n: i64) -> Self {
        Scalar::from_bigint(field, &BigInt::from(n))
    }

    pub fn from_bigint(field: FieldSpec, n: &BigInt) -> Self {
        match field {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Mod { value: r.to_u64().expect("residue fits in u64"), p }
            }
        }
    }

    /// `num / den` reduced into the field.
    pub fn from_ratio(field: FieldSpec, num: &BigInt, den: &BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match field {
            FieldSpec::Rationals => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            FieldSpec::Prime(_) => {
                Scalar::from_bigint(field, num).checked_div(&Scalar::from_bigint(field, den))
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Mod { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    /// The rational value, if this is an element of ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Mod { .. } => None,
        }
    }

    /// True when printing this scalar would start with a minus sign.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field().to_string(), other.field().to_string()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => {
                Scalar::Mod { value: ((*a as u128 + *b as u128) % *p as u128) as u64, p: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => {
                Scalar::Mod { value: ((*a as u128 * *b as u128) % *p as u128) as u64, p: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    /// Multiplicative inverse; Fermat's little theorem in F_p.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Mod { p, .. } => self.pow_big(&BigUint::from(p - 2)),
        })
    }

    pub fn pow(&self, e: u32) -> Scalar {
        self.pow_big(&BigUint::from(e))
    }

    fn pow_big(&self, e: &BigUint) -> Scalar {
        match self {
            Scalar::Rational(r) => {
                let e = e.to_u32().expect("rational exponent fits in u32");
                Scalar::Rational(num_traits::pow(r.clone(), e as usize))
            }
            Scalar::Mod { value, p } => {
                let v = BigUint::from(*value).modpow(e, &BigUint::from(*p));
                Scalar::Mod { value: v.to_u64().unwrap(), p: *p }
            }
        }
    }

    /// Every `y` in the field with `y^e = self`.
    ///
    /// Over ℚ this uses exact integer roots of numerator and denominator; over
    /// F_p it enumerates the field. The result is sorted.
    pub fn nth_roots(&self, e: u32) -> Vec<Scalar> {
        assert!(e >= 1, "root index must be positive");
        let mut roots = match self {
            Scalar::Rational(r) => rational_nth_roots(r, e),
            Scalar::Mod { p, .. } => (0..*p)
                .map(|y| Scalar::Mod { value: y, p: *p })
                .filter(|y| y.pow(e) == *self)
                .collect(),
        };
        roots.sort();
        roots
    }
}

fn exact_root(n: &BigInt, e: u32) -> Option<BigInt> {
    let r = n.nth_root(e);
    (num_traits::pow(r.clone(), e as usize) == *n).then_some(r)
}

fn rational_nth_roots(x: &BigRational, e: u32) -> Vec<Scalar> {
    if x.is_zero() {
        return vec![Scalar::Rational(x.clone())];
    }
    if x.is_negative() && e.is_multiple_of(2) {
        return Vec::new();
    }
    let (Some(num), Some(den)) = (exact_root(&x.numer().abs(), e), exact_root(x.denom(), e)) else {
        return Vec::new();
    };
    let root = BigRational::new(num, den);
    if e % 2 == 1 {
        let signed = if x.is_negative() { -root } else { root };
        vec![Scalar::Rational(signed)]
    } else {
        vec![Scalar::Rational(-root.clone()), Scalar::Rational(root)]
    }
}

/// The integer binomial coefficient `C(n, k)` reduced into `field`.
pub fn binomial_in_field(n: u32, k: u32, field: FieldSpec) -> Scalar {
    assert!(k <= n, "binomial requires k <= n");
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for t in 0..k {
        acc = acc * BigUint::from(n - t) / BigUint::from(t + 1);
    }
    Scalar::from_bigint(field, &BigInt::from_biguint(Sign::Plus, acc))
}

/// Residues in `[0, p)` order numerically, rationals by value. Scalars from
/// different fields order by field first.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Mod { value: a, p: pa }, Scalar::Mod { value: b, p: pb }) => {
                pa.cmp(pb).then(a.cmp(b))
            }
            (Scalar::Rational(_), Scalar::Mod { .. }) => Ordering::Less,
            (Scalar::Mod { .. }, Scalar::Rational(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar field mismatch")
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar field mismatch")
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Mod { value, p } => Scalar::Mod { value: (p - value) % p, p: *p },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(FieldSpec::Rationals, &n.into(), &d.into()).unwrap()
    }

    fn fp(v: i64, p: u64) -> Scalar {
        Scalar::from_int(FieldSpec::Prime(p), v)
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
        assert_eq!((&q(1, 2) + &q(1, 3)).to_string(), "5/6");
    }

    #[test]
    fn prime_field_product() {
        assert_eq!(&fp(3, 7) * &fp(5, 7), fp(1, 7));
        assert_eq!(fp(-1, 7), fp(6, 7));
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(q(0, 1).inv(), Err(Error::DivisionByZero));
        assert_eq!(fp(0, 5).inv(), Err(Error::DivisionByZero));
        assert_eq!(q(1, 1).checked_div(&q(0, 1)), Err(Error::DivisionByZero));
    }

    #[test]
    fn mismatched_fields() {
        assert!(matches!(q(1, 1).checked_add(&fp(1, 7)), Err(Error::FieldMismatch(..))));
        assert!(matches!(fp(1, 5).checked_mul(&fp(1, 7)), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn composite_modulus_rejected() {
        assert_eq!(FieldSpec::prime(9), Err(Error::NotPrime(9)));
        assert_eq!(FieldSpec::prime(1), Err(Error::NotPrime(1)));
        assert_eq!(FieldSpec::prime(13), Ok(FieldSpec::Prime(13)));
        assert_eq!("fp:7".parse::<FieldSpec>(), Ok(FieldSpec::Prime(7)));
        assert_eq!("q".parse::<FieldSpec>(), Ok(FieldSpec::Rationals));
        assert!("fp:x".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn roots_over_rationals() {
        assert_eq!(q(8, 1).nth_roots(3), vec![q(2, 1)]);
        assert_eq!(q(2, 1).nth_roots(2), vec![]);
        assert_eq!(q(-8, 27).nth_roots(3), vec![q(-2, 3)]);
        assert_eq!(q(4, 9).nth_roots(2), vec![q(-2, 3), q(2, 3)]);
        assert_eq!(q(-4, 1).nth_roots(2), vec![]);
        assert_eq!(q(0, 1).nth_roots(4), vec![q(0, 1)]);
        assert_eq!(q(5, 1).nth_roots(1), vec![q(5, 1)]);
    }

    #[test]
    fn cube_roots_of_six_mod_seven() {
        // cubes mod 7: 0,1,1,6,1,6,6
        assert_eq!(fp(6, 7).nth_roots(3), vec![fp(3, 7), fp(5, 7), fp(6, 7)]);
    }

    #[test]
    fn binomials_reduce_into_field() {
        assert_eq!(binomial_in_field(3, 1, FieldSpec::Rationals), q(3, 1));
        assert_eq!(binomial_in_field(4, 2, FieldSpec::Prime(2)), fp(0, 2));
        assert_eq!(binomial_in_field(5, 0, FieldSpec::Prime(7)), fp(1, 7));
        assert_eq!(binomial_in_field(40, 20, FieldSpec::Rationals).to_string(), "137846528820");
    }

    proptest! {
        #[test]
        fn inverse_law_rationals(n in -1000i64..1000, d in 1i64..1000) {
            let x = q(n, d);
            prop_assume!(!x.is_zero());
            prop_assert_eq!(&x * &x.inv().unwrap(), q(1, 1));
        }

        #[test]
        fn inverse_law_prime_field(v in 1i64..13, pi in 0usize..4) {
            let p = [2u64, 3, 7, 13][pi];
            let x = fp(v, p);
            prop_assume!(!x.is_zero());
            prop_assert_eq!(&x * &x.inv().unwrap(), fp(1, p));
        }

        #[test]
        fn prime_field_roots_match_filter(v in 0i64..13, e in 1u32..7, pi in 0usize..4) {
            let p = [2u64, 5, 7, 13][pi];
            let x = fp(v, p);
            let brute: Vec<Scalar> = (0..p as i64).map(|y| fp(y, p)).filter(|y| y.pow(e) == x).collect();
            prop_assert_eq!(x.nth_roots(e), brute);
        }

        #[test]
        fn rational_roots_are_roots(n in -60i64..60, d in 1i64..20, e in 1u32..5) {
            let y = q(n, d);
            let x = y.pow(e);
            let roots = x.nth_roots(e);
            prop_assert!(roots.contains(&y));
            for r in roots {
                prop_assert_eq!(r.pow(e), x.clone());
            }
        }

        #[test]
        fn canonical_form_is_stable(n in -500i64..500, d in 1i64..500, k in 1i64..9) {
            // n/d and (kn)/(kd) are the same value and must share a representation
            prop_assert_eq!(q(n, d), q(n * k, d * k));
            prop_assert_eq!(q(n, d).to_string(), q(n * k, d * k).to_string());
            prop_assert_eq!(fp(n, 13), fp(n + 13 * k, 13));
        }
    }
}
