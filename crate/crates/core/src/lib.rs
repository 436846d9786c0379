//! Exact computations on embedded surface singularities given in Weierstrass
//! form: Newton–Hironaka polygons, vertex contraction, quadratic and monoidal
//! blow-ups, and a Levi–Zariski style driver that blows up equimultiple
//! centers until the multiplicity drops.
//!
//! Coefficients are exact, over ℚ or a prime field F_p.

pub mod driver;
pub mod error;
pub mod expr;
pub mod polygon;
pub mod polyring;
pub mod report;
pub mod scalar;
pub mod surface;
pub mod transform;

pub use error::{Error, ErrorKind, Result};
pub use polygon::{NewtonPolygon, PolygonPoint};
pub use polyring::{Exponent, Poly, Var};
pub use scalar::{FieldSpec, Scalar};
pub use surface::WeierstrassSurface;
pub use transform::{Center, CurveCenter, Direction, NearPoints, TransformResult};
