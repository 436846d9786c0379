//! Surface equations in Weierstrass form `Z^n + Σ_{k<n} a_k(X,Y) Z^k`.

use crate::error::{Error, Result};
use crate::polyring::{Poly, Var};
use crate::scalar::Scalar;

/// A monic-in-Z equation whose order equals its Z-degree `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeierstrassSurface {
    eq: Poly,
    n: u32,
}

impl WeierstrassSurface {
    /// Validates the Weierstrass invariants with `n = deg_Z(P)`.
    pub fn from_poly(eq: Poly) -> Result<Self> {
        if eq.is_zero() {
            return Err(Error::InvalidSurface("zero equation".into()));
        }
        let n = eq.degree_in(Var::Z);
        if n == 0 {
            return Err(Error::InvalidSurface("equation does not involve Z".into()));
        }
        let lead = eq.coefficient_of(Var::Z, n);
        if lead != Poly::one(eq.field()) {
            return Err(Error::InvalidSurface(format!("coefficient of Z^{n} is {lead}, not 1")));
        }
        let order = eq.order()?;
        if order != n {
            return Err(Error::InvalidSurface(format!("order {order} differs from the Z-degree {n}")));
        }
        Ok(WeierstrassSurface { eq, n })
    }

    pub fn equation(&self) -> &Poly {
        &self.eq
    }

    pub fn into_equation(self) -> Poly {
        self.eq
    }

    /// The multiplicity `n`.
    pub fn multiplicity(&self) -> u32 {
        self.n
    }

    /// `a_k` for `k = 0 .. n-1`.
    pub fn z_profile(&self) -> Vec<Poly> {
        (0..self.n).map(|k| self.eq.coefficient_of(Var::Z, k)).collect()
    }

    pub fn coefficient(&self, k: u32) -> Poly {
        self.eq.coefficient_of(Var::Z, k)
    }

    /// Applies `Z ↦ Z + α(X, Y)` for a non-unit `α`.
    pub fn z_translate(&self, alpha: &Poly) -> Result<Self> {
        if alpha.involves(Var::Z) {
            return Err(Error::NotBivariate);
        }
        if !alpha.constant_term().is_zero() {
            return Err(Error::UnitTranslation(alpha.to_string()));
        }
        let shifted = &Poly::var(self.eq.field(), Var::Z) + alpha;
        let eq = self.eq.substitute(&[(Var::Z, shifted)])?;
        WeierstrassSurface::from_poly(eq)
            .map_err(|e| Error::Internal(format!("Z-translation broke Weierstrass form: {e}")))
    }

    /// `Z ↦ Z - a_{n-1}/n`, producing an equation with `a_{n-1} = 0`.
    pub fn tchirnhausen(&self) -> Result<Self> {
        let field = self.eq.field();
        if field.char_divides(self.n as u64) {
            return Err(Error::CharacteristicDividesDegree { p: field.characteristic(), n: self.n });
        }
        let inv_n = Scalar::from_int(field, self.n as i64).inv()?;
        let alpha = self.coefficient(self.n - 1).scale(&-inv_n);
        self.z_translate(&alpha)
    }

    /// True iff `a_{n-1} = 0`.
    pub fn is_wt(&self) -> bool {
        self.coefficient(self.n - 1).is_zero()
    }
}

impl std::fmt::Display for WeierstrassSurface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.eq.fmt(f)
    }
}
