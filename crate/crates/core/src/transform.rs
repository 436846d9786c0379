//! Blow-ups: quadratic transformations at a point of the exceptional plane and
//! monoidal transformations along a permitted curve `(Z, G)`, together with the
//! searches that find equimultiple centers.
//!
//! Only points of the exceptional plane lying in `Z = 0` are considered; for
//! WT (or minimized) equations `Z = 0` has maximal contact and contains every
//! near point.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::polygon::is_minimal;
use crate::polyring::{rational_roots, root_multiplicity, Exponent, Poly, Var};
use crate::scalar::Scalar;
use crate::surface::WeierstrassSurface;

/// A point of the exceptional plane in `Z = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// `(1:c:0)`, reached in the chart `Y ↦ X(Y + c)`.
    XChart(Scalar),
    /// `(0:1:0)`.
    YChart,
}

impl Direction {
    /// Normalizes a projective point `(a:b:c)`; `c` must vanish.
    pub fn from_projective(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<Self> {
        if !c.is_zero() {
            return Err(Error::InvalidCenter(format!("direction ({a}:{b}:{c}) is not in the plane Z = 0")));
        }
        if !a.is_zero() {
            Ok(Direction::XChart(b.checked_div(a)?))
        } else if !b.is_zero() {
            Ok(Direction::YChart)
        } else {
            Err(Error::InvalidCenter("(0:0:0) is not a projective point".into()))
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::XChart(c) => write!(f, "1:{c}:0"),
            Direction::YChart => write!(f, "0:1:0"),
        }
    }
}

/// A smooth curve `(Z, G)` through the origin, `G` in X and Y of order 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveCenter {
    generator: Poly,
}

impl CurveCenter {
    pub fn new(generator: Poly) -> Result<Self> {
        if generator.involves(Var::Z) {
            return Err(Error::InvalidCenter(format!("generator {generator} must not involve Z")));
        }
        match generator.order() {
            Ok(1) => Ok(CurveCenter { generator }),
            _ => Err(Error::InvalidCenter(format!(
                "generator {generator} must have order 1 (smooth, through the origin)"
            ))),
        }
    }

    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    /// The same curve with the leading coefficient of its generator scaled to 1.
    fn normalized(&self) -> CurveCenter {
        let (_, lead) = self.generator.leading_term().expect("generator is nonzero");
        let inv = lead.inv().expect("leading coefficient is nonzero");
        CurveCenter { generator: self.generator.scale(&inv) }
    }
}

impl fmt::Display for CurveCenter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.generator.fmt(f)
    }
}

/// Curves order by printed generator.
impl Ord for CurveCenter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_string().cmp(&other.to_string())
    }
}

impl PartialOrd for CurveCenter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A blow-up center as written in scripts: `Q a:b:0` or `M G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Center {
    Point(Direction),
    Curve(CurveCenter),
}

impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Center::Point(d) => write!(f, "Q {d}"),
            Center::Curve(c) => write!(f, "M {c}"),
        }
    }
}

/// The strict transform after one blow-up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformResult {
    pub result: Poly,
    pub new_order: u32,
    pub dropped: bool,
    /// Present iff the multiplicity was preserved.
    pub surface: Option<WeierstrassSurface>,
}

impl TransformResult {
    fn new(result: Poly, n: u32) -> Result<Self> {
        let new_order = result.order()?;
        let surface = match new_order.cmp(&n) {
            Ordering::Less => None,
            Ordering::Equal => Some(
                WeierstrassSurface::from_poly(result.clone())
                    .map_err(|e| Error::Internal(format!("equimultiple transform is not in Weierstrass form: {e}")))?,
            ),
            Ordering::Greater => {
                return Err(Error::Internal(format!("multiplicity rose from {n} to {new_order}")));
            }
        };
        Ok(TransformResult { result, new_order, dropped: new_order < n, surface })
    }
}

fn exceptional_division(total: Poly, v: Var, n: u32) -> Result<Poly> {
    total
        .divide_exact_power(v, n)
        .map_err(|e| Error::Internal(format!("total transform not divisible by the exceptional divisor: {e}")))
}

/// `F(X, X(Y + c), XZ) / X^n` or `F(XY, Y, YZ) / Y^n`.
fn chart_transform(s: &WeierstrassSurface, d: &Direction) -> Result<Poly> {
    let f = s.equation().field();
    let x = Poly::var(f, Var::X);
    let y = Poly::var(f, Var::Y);
    let z = Poly::var(f, Var::Z);
    let n = s.multiplicity();
    match d {
        Direction::XChart(c) => {
            let shifted_y = &y + &Poly::constant(c.clone());
            let total = s.equation().substitute(&[(Var::Y, &x * &shifted_y), (Var::Z, &x * &z)])?;
            exceptional_division(total, Var::X, n)
        }
        Direction::YChart => {
            let total = s.equation().substitute(&[(Var::X, &x * &y), (Var::Z, &y * &z)])?;
            exceptional_division(total, Var::Y, n)
        }
    }
}

/// Blows up the origin and returns the chart centered at `d`.
pub fn quadratic(s: &WeierstrassSurface, d: &Direction) -> Result<TransformResult> {
    if let Direction::XChart(c) = d {
        if c.field() != s.equation().field() {
            return Err(Error::FieldMismatch(s.equation().field().to_string(), c.field().to_string()));
        }
    }
    TransformResult::new(chart_transform(s, d)?, s.multiplicity())
}

/// Equimultiplicity along `(Z, G)`: `G^{n-k}` divides `a_k` for every `k < n`.
pub fn is_permitted(s: &WeierstrassSurface, c: &CurveCenter) -> Result<bool> {
    let n = s.multiplicity();
    for (k, a) in s.z_profile().iter().enumerate() {
        if !a.divisible_by_power(c.generator(), n - k as u32)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Blows up a permitted curve in the chart `Z ↦ G Z`:
/// the result is `Z^n + Σ (a_k / G^{n-k}) Z^k`.
pub fn monoidal(s: &WeierstrassSurface, c: &CurveCenter) -> Result<TransformResult> {
    if !is_permitted(s, c)? {
        return Err(Error::NotPermitted(c.to_string()));
    }
    let n = s.multiplicity();
    let f = s.equation().field();
    let mut result = Poly::monomial(Scalar::one(f), Exponent::new(0, 0, n));
    for (k, a) in s.z_profile().iter().enumerate() {
        let k = k as u32;
        let q = a
            .div_exact(&c.generator().pow(n - k))?
            .ok_or_else(|| Error::Internal(format!("permitted center does not divide a_{k}")))?;
        result = &result + &q.mul_monomial(&Scalar::one(f), Exponent::new(0, 0, k));
    }
    TransformResult::new(result, n)
}

/// The equimultiple points of the exceptional plane lying in `Z = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearPoints {
    /// Isolated near points, X-chart directions by ascending `c` first.
    pub isolated: Vec<Direction>,
    /// Every `(1:c:0)` is a near point: the whole exceptional line of the
    /// X-chart is equimultiple, so `isolated` lists no X-chart direction.
    pub x_line: bool,
}

impl NearPoints {
    pub fn contains(&self, d: &Direction) -> bool {
        match d {
            Direction::XChart(_) if self.x_line => true,
            _ => self.isolated.contains(d),
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.x_line && self.isolated.is_empty()
    }

    /// The canonically first near point; `(1:0:0)` stands for the whole line.
    pub fn first(&self, field: crate::scalar::FieldSpec) -> Option<Direction> {
        if self.x_line {
            Some(Direction::XChart(Scalar::zero(field)))
        } else {
            self.isolated.first().cloned()
        }
    }
}

impl fmt::Display for NearPoints {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.x_line {
            parts.push("(1:c:0) for every c".into());
        }
        parts.extend(self.isolated.iter().map(|d| format!("({d})")));
        if parts.is_empty() {
            f.write_str("none")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// Points of the exceptional plane (in `Z = 0`) where the strict transform
/// keeps multiplicity `n`.
///
/// Write the untranslated X-chart transform as `Σ X^i Z^k g_{i,k}(Y)`. The
/// point `(1:c:0)` is equimultiple iff `c` is a root of multiplicity at least
/// `n - i - k` of every nonzero `g_{i,k}` with `i + k < n`. When there is no
/// such `g` the whole line is equimultiple.
pub fn near_points(s: &WeierstrassSurface) -> Result<NearPoints> {
    if !s.is_wt() && !is_minimal(s)? {
        return Err(Error::NoMaximalContact);
    }
    let n = s.multiplicity();
    let field = s.equation().field();
    let untranslated = chart_transform(s, &Direction::XChart(Scalar::zero(field)))?;

    let mut slices: BTreeMap<(u32, u32), Poly> = BTreeMap::new();
    for (e, c) in untranslated.terms() {
        if e.i + e.k < n {
            let g = slices.entry((e.i, e.k)).or_insert_with(|| Poly::zero(field));
            *g = &*g + &Poly::monomial(c.clone(), Exponent::new(0, e.j, 0));
        }
    }

    let mut near = NearPoints { isolated: Vec::new(), x_line: slices.is_empty() };
    if let Some((_, bounding)) = slices.iter().min_by_key(|(ik, g)| (g.degree_in(Var::Y), **ik)) {
        for c in rational_roots(&bounding.univariate_view(Var::Y)?)? {
            let mut ok = true;
            for (&(i, k), g) in &slices {
                if root_multiplicity(&g.univariate_view(Var::Y)?, &c)? < n - i - k {
                    ok = false;
                    break;
                }
            }
            if ok {
                near.isolated.push(Direction::XChart(c));
            }
        }
    }
    if quadratic(s, &Direction::YChart)?.new_order == n {
        near.isolated.push(Direction::YChart);
    }

    let representative = near.x_line.then(|| Direction::XChart(Scalar::zero(field)));
    for d in near.isolated.iter().chain(representative.iter()) {
        if quadratic(s, d)?.dropped {
            return Err(Error::Internal(format!("near point ({d}) drops the multiplicity")));
        }
    }
    Ok(near)
}

/// Linear permitted curves: `X`, `Y`, and `X - cY` / `Y - cX` with `c` a root
/// of the lowest homogeneous part of the lowest-weight `a_k`. Sorted by
/// printed generator, each normalized to leading coefficient 1.
pub fn find_permitted_curves(s: &WeierstrassSurface) -> Result<Vec<CurveCenter>> {
    let n = s.multiplicity();
    let field = s.equation().field();
    let x = Poly::var(field, Var::X);
    let y = Poly::var(field, Var::Y);
    let mut candidates = vec![x.clone(), y.clone()];

    let profile = s.z_profile();
    let weight_of = |k: usize| (profile[k].order().expect("nonzero"), n - k as u32);
    let lowest = (0..profile.len())
        .filter(|&k| !profile[k].is_zero())
        .min_by(|&a, &b| {
            let (oa, da) = weight_of(a);
            let (ob, db) = weight_of(b);
            (oa as u64 * db as u64).cmp(&(ob as u64 * da as u64)).then(a.cmp(&b))
        });

    if let Some(k) = lowest {
        let a = &profile[k];
        let d = a.order()?;
        let mut in_x = vec![Scalar::zero(field); d as usize + 1];
        let mut in_y = vec![Scalar::zero(field); d as usize + 1];
        for (e, c) in a.terms().filter(|(e, _)| e.total() == d) {
            in_x[e.i as usize] = c.clone();
            in_y[e.j as usize] = c.clone();
        }
        // X - cY divides the form iff Σ coeff(i, d-i) c^i = 0
        for c in rational_roots(&in_x)? {
            candidates.push(&x - &y.scale(&c));
        }
        for c in rational_roots(&in_y)? {
            candidates.push(&y - &x.scale(&c));
        }
    }

    let mut unique: BTreeMap<String, CurveCenter> = BTreeMap::new();
    for g in candidates {
        let curve = CurveCenter::new(g)?.normalized();
        unique.entry(curve.to_string()).or_insert(curve);
    }
    let mut permitted = Vec::new();
    for curve in unique.into_values() {
        if is_permitted(s, &curve)? {
            permitted.push(curve);
        }
    }
    Ok(permitted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;
    use crate::scalar::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn p(text: &str) -> Poly {
        parse_poly(text, Q).unwrap()
    }

    fn s(text: &str) -> WeierstrassSurface {
        WeierstrassSurface::from_poly(p(text)).unwrap()
    }

    fn curve(text: &str) -> CurveCenter {
        CurveCenter::new(p(text)).unwrap()
    }

    fn xc(c: i64) -> Direction {
        Direction::XChart(Scalar::from_int(Q, c))
    }

    const F: &str = "Z^3 + X^19*Z + (X-Y)^4";
    const F1: &str = "Z^3 + X^17*Z + X*Y^4";
    const F3: &str = "Z^3 + X^13*Z + X^3*Y^4";
    const F4: &str = "Z^3 + X^11*Z + Y^4";
    const F7: &str = "Z^3 + X^5*Z + X^3*Y^4";
    const F8: &str = "Z^3 + X^3*Z + Y^4";

    #[test]
    fn quadratic_examples() {
        let r = quadratic(&s(F), &xc(1)).unwrap();
        assert_eq!(r.result, p(F1));
        assert!(!r.dropped);
        assert_eq!(r.surface, Some(s(F1)));

        let r = quadratic(&s(F1), &xc(0)).unwrap();
        assert_eq!(r.result, p("Z^3 + X^15*Z + X^2*Y^4"));

        let r = quadratic(&s("Z^3 + X^3*Z + Y^4"), &xc(0)).unwrap();
        assert_eq!(r.result, p("Z^3 + X*Z + X*Y^4"));
        assert_eq!(r.new_order, 2);
        assert!(r.dropped);
        assert_eq!(r.surface, None);
    }

    #[test]
    fn y_chart() {
        let r = quadratic(&s(F1), &Direction::YChart).unwrap();
        assert_eq!(r.result, p("Z^3 + X^17*Y^15*Z + X*Y^2"));
        assert!(!r.dropped);
        let r = quadratic(&s(F8), &Direction::YChart).unwrap();
        assert_eq!(r.result, p("Z^3 + X^3*Y*Z + Y"));
        assert_eq!(r.new_order, 1);
    }

    #[test]
    fn permittedness() {
        assert!(is_permitted(&s(F3), &curve("X")).unwrap());
        assert!(!is_permitted(&s(F1), &curve("X")).unwrap());
        assert!(!is_permitted(&s(F), &curve("X - Y")).unwrap());
        assert!(matches!(CurveCenter::new(p("X^2 + Y^3")), Err(Error::InvalidCenter(_))));
        assert!(matches!(CurveCenter::new(p("1 + X")), Err(Error::InvalidCenter(_))));
        assert!(matches!(CurveCenter::new(p("Z")), Err(Error::InvalidCenter(_))));
    }

    #[test]
    fn monoidal_examples() {
        assert_eq!(monoidal(&s(F3), &curve("X")).unwrap().result, p(F4));
        assert_eq!(monoidal(&s(F7), &curve("X")).unwrap().result, p(F8));
        assert_eq!(monoidal(&s(F1), &curve("X")), Err(Error::NotPermitted("X".into())));
        // a nonlinear smooth generator supplied by hand
        let g = curve("X - Y^2");
        let surf = s("Z^2 + (X - Y^2)^3");
        let r = monoidal(&surf, &g).unwrap();
        assert_eq!(r.result, p("Z^2 + X - Y^2"));
        assert!(r.dropped);
    }

    #[test]
    fn near_point_examples() {
        let isolated = |ds: Vec<Direction>| NearPoints { isolated: ds, x_line: false };
        assert_eq!(near_points(&s(F)).unwrap(), isolated(vec![xc(1)]));
        assert_eq!(near_points(&s(F4)).unwrap(), isolated(vec![xc(0)]));
        assert_eq!(near_points(&s(F8)).unwrap(), isolated(vec![]));
        assert!(near_points(&s(F8)).unwrap().is_empty());
        assert_eq!(near_points(&s(F1)).unwrap(), isolated(vec![xc(0), Direction::YChart]));
    }

    #[test]
    fn near_point_preconditions() {
        // Z^2 + 2XZ + X^2 + Y^5 hides a contractible vertex
        assert_eq!(near_points(&s("Z^2 + 2*X*Z + X^2 + Y^5")), Err(Error::NoMaximalContact));
    }

    #[test]
    fn equimultiple_exceptional_line() {
        // F_2 of the F(19) sequence: every (1:c:0) keeps multiplicity 3
        let f2 = s("Z^3 + X^15*Z + X^2*Y^4");
        let near = near_points(&f2).unwrap();
        assert!(near.x_line);
        assert_eq!(near.isolated, vec![Direction::YChart]);
        assert_eq!(near.first(Q), Some(xc(0)));
        for c in [-3, 0, 2, 7] {
            assert!(near.contains(&xc(c)));
            assert!(!quadratic(&f2, &xc(c)).unwrap().dropped);
        }
        let flat = near_points(&s("Z^2 + X^4")).unwrap();
        assert!(flat.x_line);
        assert_eq!(flat.to_string(), "(1:c:0) for every c (0:1:0)");
    }

    #[test]
    fn permitted_curve_search() {
        assert_eq!(find_permitted_curves(&s(F)).unwrap(), vec![]);
        assert_eq!(find_permitted_curves(&s(F3)).unwrap(), vec![curve("X")]);
        let found = find_permitted_curves(&s("Z^2 + (X-Y)^2*(X+Y)^5")).unwrap();
        assert_eq!(found, vec![curve("Y + X"), curve("Y - X")]);
        assert_eq!(find_permitted_curves(&s("Z^2 + Y^2*X^3")).unwrap(), vec![curve("X"), curve("Y")]);
        // X - 2Y only shows up through the rational root c = 2
        let found = find_permitted_curves(&s("Z^2 + (X - 2*Y)^2*Y")).unwrap();
        assert_eq!(found, vec![CurveCenter::new(p("Y - 1/2*X")).unwrap()]);
    }

    #[test]
    fn direction_normalization() {
        let q = |n: i64| Scalar::from_int(Q, n);
        assert_eq!(Direction::from_projective(&q(2), &q(4), &q(0)).unwrap(), xc(2));
        assert_eq!(Direction::from_projective(&q(0), &q(3), &q(0)).unwrap(), Direction::YChart);
        assert!(Direction::from_projective(&q(0), &q(0), &q(0)).is_err());
        assert_eq!(xc(-1).to_string(), "1:-1:0");
    }
}
