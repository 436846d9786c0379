//! The Newton–Hironaka polygon of a Weierstrass equation, vertex contraction
//! and reduction to the characteristic polygon.
//!
//! A term `a_{ijk} X^i Y^j Z^k` with `k < n` projects to
//! `(i/(n-k), j/(n-k))`. The polygon is the convex hull of the union of the
//! first quadrants translated to these points; it is stored by the vertices
//! of its staircase boundary.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::expr::rational_text;
use crate::polyring::{Exponent, Poly};
use crate::scalar::{binomial_in_field, Scalar};
use crate::surface::WeierstrassSurface;

/// Default cap on successive contractions in [`minimize`].
pub const DEFAULT_CONTRACTION_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolygonPoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl PolygonPoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        PolygonPoint { x, y }
    }

    pub fn from_ratios(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        PolygonPoint {
            x: BigRational::new(xn.into(), xd.into()),
            y: BigRational::new(yn.into(), yd.into()),
        }
    }

    /// `self ≥ other` in both coordinates.
    pub fn dominates(&self, other: &PolygonPoint) -> bool {
        self.x >= other.x && self.y >= other.y
    }

    /// Both coordinates as natural numbers, when they are.
    pub fn integral(&self) -> Option<(u32, u32)> {
        if !self.x.is_integer() || !self.y.is_integer() {
            return None;
        }
        let conv = |r: &BigRational| u32::try_from(r.to_integer()).ok();
        Some((conv(&self.x)?, conv(&self.y)?))
    }

    /// Exact text pair, e.g. `["0", "4/3"]`.
    pub fn text_pair(&self) -> [String; 2] {
        [rational_text(&self.x), rational_text(&self.y)]
    }
}

impl fmt::Display for PolygonPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", rational_text(&self.x), rational_text(&self.y))
    }
}

/// `(b - a) × (c - a)`.
/// Sign of the cross product `(b - a) × (c - a)`, computed on unreduced
/// fractions.
fn cross(a: &PolygonPoint, b: &PolygonPoint, c: &PolygonPoint) -> Ordering {
    // u - v as (numerator, positive denominator), no gcd
    fn diff(u: &BigRational, v: &BigRational) -> (BigInt, BigInt) {
        (u.numer() * v.denom() - v.numer() * u.denom(), u.denom() * v.denom())
    }
    let (n1, d1) = diff(&b.x, &a.x);
    let (n2, d2) = diff(&c.y, &a.y);
    let (n3, d3) = diff(&b.y, &a.y);
    let (n4, d4) = diff(&c.x, &a.x);
    (n1 * n2 * d3 * d4).cmp(&(n3 * n4 * d1 * d2))
}

/// Vertices of the staircase boundary: x strictly increasing, y strictly
/// decreasing, edge slopes strictly increasing. Empty means the empty region.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NewtonPolygon {
    vertices: Vec<PolygonPoint>,
}

impl NewtonPolygon {
    pub fn vertices(&self) -> &[PolygonPoint] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Membership in the region: on or above the boundary.
    pub fn contains(&self, p: &PolygonPoint) -> bool {
        let (Some(first), Some(last)) = (self.vertices.first(), self.vertices.last()) else {
            return false;
        };
        if p.x < first.x || p.y < last.y {
            return false;
        }
        // only the edge spanning p.x can separate p from the region
        let after = self.vertices.partition_point(|v| v.x <= p.x);
        if after == self.vertices.len() {
            return true;
        }
        !cross(&self.vertices[after - 1], &self.vertices[after], p).is_lt()
    }

    /// Region inclusion `self ⊆ other`.
    pub fn is_subset(&self, other: &NewtonPolygon) -> bool {
        self.vertices.iter().all(|v| other.contains(v))
    }

    /// Region inclusion `self ⊆ other \ {point}`.
    pub fn is_subset_excluding(&self, other: &NewtonPolygon, point: &PolygonPoint) -> bool {
        self.is_subset(other) && !self.contains(point)
    }

    pub fn text_pairs(&self) -> Vec<[String; 2]> {
        self.vertices.iter().map(PolygonPoint::text_pair).collect()
    }
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// One point per term of each `a_k`, `k < n`.
pub fn projected_points(s: &WeierstrassSurface) -> BTreeSet<PolygonPoint> {
    let n = s.multiplicity();
    s.equation()
        .terms()
        .filter(|(e, _)| e.k < n)
        .map(|(e, _)| project(e, n))
        .collect()
}

fn project(e: &Exponent, n: u32) -> PolygonPoint {
    let d = BigInt::from(n - e.k);
    PolygonPoint {
        x: BigRational::new(e.i.into(), d.clone()),
        y: BigRational::new(e.j.into(), d),
    }
}

/// Vertices of `CH(∪ (p + ℝ²≥0))`.
///
/// Dominated points are discarded first; the survivors form a staircase and
/// the lower convex chain of that staircase (collinear points dropped) is the
/// boundary.
pub fn hull<'a>(points: impl IntoIterator<Item = &'a PolygonPoint>) -> NewtonPolygon {
    let mut pts: Vec<&PolygonPoint> = points.into_iter().collect();
    pts.sort_by(|a, b| a.x.cmp(&b.x).then(a.y.cmp(&b.y)));
    pts.dedup();

    // after sorting by x, a point survives iff its y is below every earlier y
    let mut staircase: Vec<&PolygonPoint> = Vec::new();
    for p in pts {
        if staircase.last().is_none_or(|q| p.y < q.y) {
            staircase.push(p);
        }
    }

    let mut chain: Vec<&PolygonPoint> = Vec::new();
    for p in staircase {
        while chain.len() >= 2 && !cross(chain[chain.len() - 2], chain[chain.len() - 1], p).is_gt() {
            chain.pop();
        }
        chain.push(p);
    }
    NewtonPolygon { vertices: chain.into_iter().cloned().collect() }
}

/// `Δ(S)`.
pub fn newton_polygon(s: &WeierstrassSurface) -> NewtonPolygon {
    hull(&projected_points(s))
}

fn require_vertex(s: &WeierstrassSurface, v: &PolygonPoint) -> Result<NewtonPolygon> {
    let poly = newton_polygon(s);
    if poly.vertices.contains(v) {
        Ok(poly)
    } else {
        Err(Error::NotAVertex(format!("{},{}", rational_text(&v.x), rational_text(&v.y))))
    }
}

/// Every term with `k < n` projecting onto the vertex `v`.
pub fn vertex_fiber(s: &WeierstrassSurface, v: &PolygonPoint) -> Result<Vec<(Exponent, Scalar)>> {
    require_vertex(s, v)?;
    let n = s.multiplicity();
    Ok(s.equation()
        .terms()
        .filter(|(e, _)| e.k < n && project(e, n) == *v)
        .map(|(e, c)| (*e, c.clone()))
        .collect())
}

/// Applies the contraction `Z ↦ Z + α X^a Y^b` for the vertex `(a, b)`.
pub fn contract(s: &WeierstrassSurface, a: u32, b: u32, alpha: &Scalar) -> Result<WeierstrassSurface> {
    s.z_translate(&Poly::monomial(alpha.clone(), Exponent::new(a, b, 0)))
}

/// The `α` of a contraction of the vertex `v`, if one exists.
///
/// A contraction must make the fiber of `v` vanish, which forces the fiber to
/// be the expansion of `(Z - α X^a Y^b)^n` minus `Z^n`. Candidates for `α` are
/// therefore the common solutions of `c_k = C(n,k) (-α)^{n-k}` over the
/// fiber coefficients; each candidate is confirmed by recomputing the polygon.
pub fn contractible(s: &WeierstrassSurface, v: &PolygonPoint) -> Result<Option<Scalar>> {
    let before = require_vertex(s, v)?;
    let Some((a, b)) = v.integral() else {
        return Ok(None);
    };
    let n = s.multiplicity();
    let field = s.equation().field();
    let fiber = vertex_fiber(s, v)?;

    let mut candidates: Option<BTreeSet<Scalar>> = None;
    for (e, c) in &fiber {
        let binom = binomial_in_field(n, e.k, field);
        if binom.is_zero() {
            // this monomial of (Z + γ m)^n vanishes in the field, so it can't be removed
            return Ok(None);
        }
        let target = c.checked_div(&binom)?;
        let roots: BTreeSet<Scalar> = target.nth_roots(n - e.k).into_iter().collect();
        candidates = Some(match candidates {
            None => roots,
            Some(prev) => prev.intersection(&roots).cloned().collect(),
        });
    }

    for gamma in candidates.unwrap_or_default() {
        let alpha = -gamma;
        let after = newton_polygon(&contract(s, a, b, &alpha)?);
        if after.is_subset_excluding(&before, v) {
            return Ok(Some(alpha));
        }
    }
    Ok(None)
}

/// True iff no vertex of `Δ(S)` is contractible, i.e. `Δ(S)` is the
/// characteristic polygon.
pub fn is_minimal(s: &WeierstrassSurface) -> Result<bool> {
    for v in newton_polygon(s).vertices() {
        if contractible(s, v)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Contracts vertices (smallest x first) until none is contractible.
pub fn minimize(s: &WeierstrassSurface, step_cap: usize) -> Result<WeierstrassSurface> {
    let mut current = s.clone();
    let mut steps = 0;
    'outer: loop {
        for v in newton_polygon(&current).vertices() {
            if let Some(alpha) = contractible(&current, v)? {
                if steps == step_cap {
                    return Err(Error::ContractionCapExceeded(step_cap));
                }
                let (a, b) = v.integral().expect("contractible vertices are integral");
                current = contract(&current, a, b, &alpha)?;
                steps += 1;
                continue 'outer;
            }
        }
        return Ok(current);
    }
}
