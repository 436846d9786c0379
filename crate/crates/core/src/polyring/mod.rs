//! Sparse polynomials in X, Y, Z with exact coefficients.

mod univariate;

pub use univariate::{rational_roots, root_multiplicity};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn symbol(self) -> char {
        match self {
            Var::X => 'X',
            Var::Y => 'Y',
            Var::Z => 'Z',
        }
    }
}

/// Exponent triple of a monomial `X^i Y^j Z^k`.
///
/// Orders lexicographically with Z > Y > X, which is the canonical printing
/// order (read in reverse).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Exponent {
    pub i: u32,
    pub j: u32,
    pub k: u32,
}

impl Exponent {
    pub const fn new(i: u32, j: u32, k: u32) -> Self {
        Exponent { i, j, k }
    }

    pub fn total(&self) -> u32 {
        self.i + self.j + self.k
    }

    pub fn get(&self, v: Var) -> u32 {
        match v {
            Var::X => self.i,
            Var::Y => self.j,
            Var::Z => self.k,
        }
    }

    fn get_mut(&mut self, v: Var) -> &mut u32 {
        match v {
            Var::X => &mut self.i,
            Var::Y => &mut self.j,
            Var::Z => &mut self.k,
        }
    }

    pub fn with(mut self, v: Var, e: u32) -> Self {
        *self.get_mut(v) = e;
        self
    }

    pub fn divides(&self, other: &Exponent) -> bool {
        self.i <= other.i && self.j <= other.j && self.k <= other.k
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, o: Exponent) -> Exponent {
        Exponent::new(self.i + o.i, self.j + o.j, self.k + o.k)
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, o: Exponent) -> Exponent {
        Exponent::new(self.i - o.i, self.j - o.j, self.k - o.k)
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.k, self.j, self.i).cmp(&(other.k, other.j, other.i))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lex with X > Y > Z; only used to drive multivariate division.
fn grlex(a: &Exponent, b: &Exponent) -> Ordering {
    a.total().cmp(&b.total()).then((a.i, a.j, a.k).cmp(&(b.i, b.j, b.k)))
}

/// A polynomial over a fixed field. No stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    terms: BTreeMap<Exponent, Scalar>,
}

impl Poly {
    pub fn zero(field: FieldSpec) -> Self {
        Poly { field, terms: BTreeMap::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        Poly::constant(Scalar::one(field))
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::monomial(c, Exponent::default())
    }

    pub fn var(field: FieldSpec, v: Var) -> Self {
        Poly::monomial(Scalar::one(field), Exponent::default().with(v, 1))
    }

    pub fn monomial(c: Scalar, e: Exponent) -> Self {
        let mut p = Poly::zero(c.field());
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    /// Sums the given terms; coefficients must all lie in `field`.
    pub fn from_terms(field: FieldSpec, terms: impl IntoIterator<Item = (Exponent, Scalar)>) -> Result<Self> {
        let mut p = Poly::zero(field);
        for (e, c) in terms {
            if c.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), c.field().to_string()));
            }
            p.add_term(e, &c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponent, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let sum = &*old + c;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order (lex, Z > Y > X).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Exponent::default())
    }

    /// Minimum total degree of the support; the multiplicity at the origin.
    pub fn order(&self) -> Result<u32> {
        self.terms.keys().map(Exponent::total).min().ok_or(Error::ZeroPolynomial)
    }

    /// Highest exponent of `v`; 0 for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e.get(v)).max().unwrap_or(0)
    }

    pub fn involves(&self, v: Var) -> bool {
        self.degree_in(v) > 0
    }

    /// Leading term under lex order Z > Y > X, if any.
    pub fn leading_term(&self) -> Option<(&Exponent, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Coefficient of `v^d` as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, v: Var, d: u32) -> Poly {
        let mut out = Poly::zero(self.field);
        for (e, c) in &self.terms {
            if e.get(v) == d {
                out.terms.insert(e.with(v, 0), c.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field);
        }
        Poly {
            field: self.field,
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &Scalar, m: Exponent) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field);
        }
        Poly {
            field: self.field,
            terms: self.terms.iter().map(|(e, a)| (*e + m, a * c)).collect(),
        }
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()))
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let mut out = Poly::zero(self.field);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(*ea + *eb, &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Simultaneous substitution of the listed variables; the rest stay put.
    pub fn substitute(&self, assignments: &[(Var, Poly)]) -> Result<Poly> {
        let mut images: [Option<&Poly>; 3] = [None, None, None];
        for (v, p) in assignments {
            self.check_field(p)?;
            images[*v as usize] = Some(p);
        }
        // powers[v][d] = image(v)^d, built on demand
        let mut powers: [Vec<Poly>; 3] = Default::default();
        for v in Var::ALL {
            if let Some(img) = images[v as usize] {
                let top = self.degree_in(v);
                let table = &mut powers[v as usize];
                table.push(Poly::one(self.field));
                for d in 1..=top {
                    let next = &table[d as usize - 1] * img;
                    table.push(next);
                }
            }
        }

        let mut out = Poly::zero(self.field);
        for (e, c) in &self.terms {
            let mut fixed = Exponent::default();
            let mut term = Poly::constant(c.clone());
            for v in Var::ALL {
                let d = e.get(v);
                match images[v as usize] {
                    Some(_) => term = &term * &powers[v as usize][d as usize],
                    None => fixed = fixed.with(v, d),
                }
            }
            for (te, tc) in term.terms {
                out.add_term(te + fixed, &tc);
            }
        }
        Ok(out)
    }

    /// `P / v^r`, failing unless `v^r` divides every term.
    pub fn divide_exact_power(&self, v: Var, r: u32) -> Result<Poly> {
        let shift = Exponent::default().with(v, r);
        let mut out = Poly::zero(self.field);
        for (e, c) in &self.terms {
            if e.get(v) < r {
                return Err(Error::NotDivisible { var: v.symbol(), power: r });
            }
            out.terms.insert(*e - shift, c.clone());
        }
        Ok(out)
    }

    /// Multivariate division by a single divisor under graded lex (X > Y > Z).
    ///
    /// Returns `(quotient, remainder)` with `self = quotient * divisor +
    /// remainder` and no remainder term divisible by the divisor's leading
    /// monomial. Since one polynomial is a Gröbner basis of its own ideal, the
    /// remainder is zero exactly when the divisor divides `self`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(divisor)?;
        let (lead_e, lead_c) = divisor
            .terms
            .iter()
            .max_by(|a, b| grlex(a.0, b.0))
            .map(|(e, c)| (*e, c.clone()))
            .ok_or(Error::DivisionByZero)?;
        let lead_inv = lead_c.inv()?;

        let mut work = self.clone();
        let mut quotient = Poly::zero(self.field);
        let mut remainder = Poly::zero(self.field);
        while let Some((e, c)) = work.terms.iter().max_by(|a, b| grlex(a.0, b.0)).map(|(e, c)| (*e, c.clone())) {
            if lead_e.divides(&e) {
                let q = &c * &lead_inv;
                let m = e - lead_e;
                quotient.add_term(m, &q);
                work = &work - &divisor.mul_monomial(&q, m);
            } else {
                work.terms.remove(&e);
                remainder.add_term(e, &c);
            }
        }
        Ok((quotient, remainder))
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Whether `g^r` divides `self`. The zero polynomial is divisible by anything.
    pub fn divisible_by_power(&self, g: &Poly, r: u32) -> Result<bool> {
        self.check_field(g)?;
        if self.is_zero() || r == 0 {
            return Ok(true);
        }
        if g.is_zero() {
            return Ok(false);
        }
        let (_, rem) = self.div_rem(&g.pow(r))?;
        Ok(rem.is_zero())
    }

    /// Dense coefficients in `v`, lowest degree first.
    pub fn univariate_view(&self, v: Var) -> Result<Vec<Scalar>> {
        if Var::ALL.iter().any(|&w| w != v && self.involves(w)) {
            return Err(Error::NotUnivariate(v.symbol()));
        }
        if self.is_zero() {
            return Ok(Vec::new());
        }
        let mut dense = vec![Scalar::zero(self.field); self.degree_in(v) as usize + 1];
        for (e, c) in &self.terms {
            dense[e.get(v) as usize] = c.clone();
        }
        Ok(dense)
    }

    /// Builds `Σ u[d] v^d`.
    pub fn from_univariate(field: FieldSpec, v: Var, coeffs: &[Scalar]) -> Result<Poly> {
        Poly::from_terms(
            field,
            coeffs
                .iter()
                .enumerate()
                .map(|(d, c)| (Exponent::default().with(v, d as u32), c.clone())),
        )
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial field mismatch")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial field mismatch")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial field mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            field: self.field,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::print_canonical(self))
    }
}
