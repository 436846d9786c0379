//! Dense univariate helpers for near-point and curve-candidate searches.
//!
//! Coefficient lists are lowest degree first, as produced by
//! [`Poly::univariate_view`](super::Poly::univariate_view).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

fn field_of(u: &[Scalar]) -> Result<FieldSpec> {
    u.iter().find(|c| !c.is_zero()).map(Scalar::field).ok_or(Error::ZeroPolynomial)
}

fn trim(u: &[Scalar]) -> &[Scalar] {
    let top = u.iter().rposition(|c| !c.is_zero()).map_or(0, |d| d + 1);
    &u[..top]
}

fn eval(u: &[Scalar], t: &Scalar) -> Scalar {
    let mut acc = Scalar::zero(t.field());
    for c in u.iter().rev() {
        acc = &(&acc * t) + c;
    }
    acc
}

/// Divides by `(t - c)`, returning the quotient and the remainder `u(c)`.
fn synthetic_division(u: &[Scalar], c: &Scalar) -> (Vec<Scalar>, Scalar) {
    let Some((lead, rest)) = u.split_last() else {
        return (Vec::new(), Scalar::zero(c.field()));
    };
    let mut quotient = Vec::with_capacity(rest.len());
    let mut carry = lead.clone();
    for a in rest.iter().rev() {
        quotient.push(carry.clone());
        carry = &(&carry * c) + a;
    }
    quotient.reverse();
    (quotient, carry)
}

/// Largest `e` with `(t - c)^e` dividing `u`.
///
/// Repeated synthetic division, so it is correct in every characteristic.
pub fn root_multiplicity(u: &[Scalar], c: &Scalar) -> Result<u32> {
    field_of(u)?;
    let mut current = trim(u).to_vec();
    let mut mult = 0;
    loop {
        let (q, r) = synthetic_division(&current, c);
        if !r.is_zero() {
            return Ok(mult);
        }
        mult += 1;
        current = q;
    }
}

/// All roots in the coefficient field, sorted and without repetition.
///
/// Over ℚ the candidates come from the rational-root theorem applied to the
/// primitive integer form; over F_p every residue is tried.
pub fn rational_roots(u: &[Scalar]) -> Result<Vec<Scalar>> {
    let field = field_of(u)?;
    let u = trim(u);
    let mut roots = match field {
        FieldSpec::Prime(_) => field
            .elements()
            .expect("prime field is finite")
            .filter(|t| eval(u, t).is_zero())
            .collect(),
        FieldSpec::Rationals => rational_roots_over_q(u),
    };
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn rational_roots_over_q(u: &[Scalar]) -> Vec<Scalar> {
    let rationals: Vec<_> = u.iter().map(|c| c.as_rational().expect("rational coefficients").clone()).collect();
    let lcm = rationals.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let mut ints: Vec<BigInt> = rationals.iter().map(|r| (r * &lcm).to_integer()).collect();

    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push(Scalar::zero(FieldSpec::Rationals));
        ints.drain(..low);
    }
    if ints.len() <= 1 {
        return roots;
    }
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    for c in &mut ints {
        *c /= &content;
    }

    let constant = ints[0].abs();
    let leading = ints[ints.len() - 1].abs();
    for num in divisors(&constant) {
        for den in divisors(&leading) {
            for sign in [1, -1] {
                let cand = Scalar::from_ratio(FieldSpec::Rationals, &(&num * sign), &den).unwrap();
                if eval(u, &cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let root = n.sqrt();
    let mut d = BigInt::one();
    while d <= root {
        if (n % &d).is_zero() {
            let pair = n / &d;
            if pair != d {
                large.push(pair);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
