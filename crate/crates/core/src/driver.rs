//! Resolution runs: the Levi–Zariski center-selection policy, scripted center
//! sequences, and the polygon-versus-step-count harness for the family
//! `Z^3 + X^m Z + (X - Y)^4`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expr::parse_poly;
use crate::polygon::{newton_polygon, NewtonPolygon};
use crate::polyring::Poly;
use crate::scalar::FieldSpec;
use crate::surface::WeierstrassSurface;
use crate::transform::{
    find_permitted_curves, monoidal, near_points, quadratic, Center, CurveCenter, Direction, TransformResult,
};

/// Default step cap for [`run`].
pub const DEFAULT_MAX_STEPS: usize = 500;

/// Smallest parameter accepted for the counterexample family.
pub const MIN_FAMILY_PARAMETER: u32 = 19;

/// The center a step blew up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepCenter {
    Point(Direction),
    Curve(CurveCenter),
    /// Blow-up of the origin when no near point is left; the direction is the
    /// chart that was kept.
    Terminal(Direction),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub index: usize,
    pub center: StepCenter,
    pub equation_after: Poly,
    pub order_after: u32,
    /// Present while the multiplicity is preserved.
    pub polygon_after: Option<NewtonPolygon>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionTrace {
    pub initial: WeierstrassSurface,
    pub steps: Vec<Step>,
    /// Index of the step where the multiplicity first decreased.
    pub drop_step: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    Scripted(Vec<Center>),
    Auto,
}

/// One Levi–Zariski step: a permitted curve if there is one, otherwise a near
/// point, otherwise the terminal blow-up of the origin.
pub fn lz_step(s: &WeierstrassSurface) -> Result<(StepCenter, TransformResult)> {
    if let Some(curve) = find_permitted_curves(s)?.into_iter().next() {
        let r = monoidal(s, &curve)?;
        return Ok((StepCenter::Curve(curve), r));
    }
    if let Some(d) = near_points(s)?.first(s.equation().field()) {
        let r = quadratic(s, &d)?;
        return Ok((StepCenter::Point(d), r));
    }
    let d = Direction::XChart(crate::scalar::Scalar::zero(s.equation().field()));
    let r = quadratic(s, &d)?;
    if !r.dropped {
        return Err(Error::Internal("terminal blow-up kept the multiplicity".into()));
    }
    Ok((StepCenter::Terminal(d), r))
}

fn apply_scripted(s: &WeierstrassSurface, center: &Center) -> Result<(StepCenter, TransformResult)> {
    match center {
        Center::Curve(c) => Ok((StepCenter::Curve(c.clone()), monoidal(s, c)?)),
        Center::Point(d) => {
            let r = quadratic(s, d)?;
            if r.dropped {
                return Err(Error::NotNearPoint(d.to_string()));
            }
            Ok((StepCenter::Point(d.clone()), r))
        }
    }
}

/// Runs until the first multiplicity drop (auto) or the end of the script.
///
/// Scripted directions must be near points and scripted curves permitted.
/// In auto mode reaching `max_steps` without a drop is an error.
pub fn run(s: &WeierstrassSurface, strategy: &Strategy, max_steps: usize) -> Result<ResolutionTrace> {
    let mut trace = ResolutionTrace { initial: s.clone(), steps: Vec::new(), drop_step: None };
    let mut current = s.clone();
    let script_len = match strategy {
        Strategy::Scripted(centers) => centers.len(),
        Strategy::Auto => usize::MAX,
    };

    while trace.steps.len() < script_len {
        if let Strategy::Auto = strategy {
            if trace.steps.len() == max_steps {
                return Err(Error::StepCapReached(max_steps));
            }
        }
        let (center, r) = match strategy {
            Strategy::Auto => lz_step(&current)?,
            Strategy::Scripted(centers) => apply_scripted(&current, &centers[trace.steps.len()])?,
        };
        let index = trace.steps.len() + 1;
        trace.steps.push(Step {
            index,
            center,
            equation_after: r.result.clone(),
            order_after: r.new_order,
            polygon_after: r.surface.as_ref().map(newton_polygon),
        });
        match r.surface {
            Some(next) => current = next,
            None => {
                trace.drop_step = Some(index);
                break;
            }
        }
    }
    Ok(trace)
}

/// `Z^3 + X^m Z + (X - Y)^4` over `field`.
pub fn family_surface(m: u32, field: FieldSpec) -> Result<WeierstrassSurface> {
    if m < MIN_FAMILY_PARAMETER {
        return Err(Error::ParameterOutOfRange(m));
    }
    WeierstrassSurface::from_poly(parse_poly(&format!("Z^3 + X^{m}*Z + (X-Y)^4"), field)?)
}

/// The eight centers leading from `F` to `F_8`.
pub fn family_script(field: FieldSpec) -> Vec<Center> {
    let one = crate::scalar::Scalar::one(field);
    let zero = crate::scalar::Scalar::zero(field);
    let x = CurveCenter::new(Poly::var(field, crate::polyring::Var::X)).expect("X is smooth");
    let toward_origin = || Center::Point(Direction::XChart(zero.clone()));
    vec![
        Center::Point(Direction::XChart(one)),
        toward_origin(),
        toward_origin(),
        Center::Curve(x.clone()),
        toward_origin(),
        toward_origin(),
        toward_origin(),
        Center::Curve(x),
    ]
}

/// Runs the eight scripted steps and compares the equations after steps 1, 3,
/// 4 and 8 with `Z^3 + X^{m-2}Z + XY^4`, `Z^3 + X^{m-6}Z + X^3Y^4`,
/// `Z^3 + X^{m-8}Z + Y^4` and `Z^3 + X^{m-16}Z + Y^4`.
pub fn verify_paper_sequence(m: u32) -> Result<bool> {
    let field = FieldSpec::Rationals;
    let f = family_surface(m, field)?;
    let trace = run(&f, &Strategy::Scripted(family_script(field)), 8)?;
    let expected = [
        (1, format!("Z^3 + X^{}*Z + X*Y^4", m - 2)),
        (3, format!("Z^3 + X^{}*Z + X^3*Y^4", m - 6)),
        (4, format!("Z^3 + X^{}*Z + Y^4", m - 8)),
        (8, format!("Z^3 + X^{}*Z + Y^4", m - 16)),
    ];
    Ok(trace.steps.len() == 8
        && expected.iter().all(|(i, text)| trace.steps[i - 1].equation_after.to_string() == *text))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleParams {
    m_values: Vec<u32>,
}

impl CounterexampleParams {
    pub fn new(m_values: Vec<u32>) -> Result<Self> {
        if let Some(&m) = m_values.iter().find(|&&m| m < MIN_FAMILY_PARAMETER) {
            return Err(Error::ParameterOutOfRange(m));
        }
        Ok(CounterexampleParams { m_values })
    }

    pub fn m_values(&self) -> &[u32] {
        &self.m_values
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyEntry {
    pub m: u32,
    pub polygon: NewtonPolygon,
    pub drop_step: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub entries: Vec<FamilyEntry>,
    /// Every polygon has vertices `(0,4/3)` and `(4/3,0)`.
    pub polygons_equal: bool,
    /// Step counts strictly increase along the listed `m`.
    pub counts_increasing: bool,
    /// `count(m + 8) - count(m) = 4` for consecutive listed values 8 apart.
    pub period_holds: bool,
}

/// Computes polygon and auto-mode drop step for every `m`, in parallel; the
/// entries keep the input order.
pub fn counterexample_report(params: &CounterexampleParams) -> Result<CounterexampleReport> {
    let field = FieldSpec::Rationals;
    let entries = params
        .m_values
        .par_iter()
        .map(|&m| {
            let f = family_surface(m, field)?;
            let trace = run(&f, &Strategy::Auto, DEFAULT_MAX_STEPS)?;
            let drop_step = trace.drop_step.ok_or(Error::StepCapReached(DEFAULT_MAX_STEPS))?;
            Ok(FamilyEntry { m, polygon: newton_polygon(&f), drop_step })
        })
        .collect::<Result<Vec<_>>>()?;

    let reference = crate::polygon::hull(&[
        crate::polygon::PolygonPoint::from_ratios(0, 1, 4, 3),
        crate::polygon::PolygonPoint::from_ratios(4, 3, 0, 1),
    ]);
    let polygons_equal = entries.iter().all(|e| e.polygon == reference);
    let counts_increasing = entries.windows(2).all(|w| w[0].drop_step < w[1].drop_step);
    let period_holds = entries
        .windows(2)
        .filter(|w| w[1].m == w[0].m + 8)
        .all(|w| w[1].drop_step == w[0].drop_step + 4);
    Ok(CounterexampleReport { entries, polygons_equal, counts_increasing, period_holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_center;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn s(text: &str) -> WeierstrassSurface {
        WeierstrassSurface::from_poly(parse_poly(text, Q).unwrap()).unwrap()
    }

    #[test]
    fn step_choices() {
        let (c, r) = lz_step(&family_surface(19, Q).unwrap()).unwrap();
        assert_eq!(c, StepCenter::Point(Direction::XChart(crate::scalar::Scalar::one(Q))));
        assert!(!r.dropped);

        let (c, _) = lz_step(&s("Z^3 + X^13*Z + X^3*Y^4")).unwrap();
        assert!(matches!(c, StepCenter::Curve(ref g) if g.to_string() == "X"));

        let (c, r) = lz_step(&s("Z^3 + X^3*Z + Y^4")).unwrap();
        assert!(matches!(c, StepCenter::Terminal(_)));
        assert!(r.dropped);
    }

    #[test]
    fn scripted_family_steps() {
        let script: Vec<Center> = ["Q 1:1:0", "Q 1:0:0", "Q 1:0:0", "M X"]
            .iter()
            .map(|t| parse_center(t, Q).unwrap())
            .collect();
        let trace = run(&family_surface(19, Q).unwrap(), &Strategy::Scripted(script), 10).unwrap();
        let eqs: Vec<String> = trace.steps.iter().map(|st| st.equation_after.to_string()).collect();
        assert_eq!(eqs[0], "Z^3 + X^17*Z + X*Y^4");
        assert_eq!(eqs[2], "Z^3 + X^13*Z + X^3*Y^4");
        assert_eq!(eqs[3], "Z^3 + X^11*Z + Y^4");
        assert_eq!(trace.drop_step, None);
    }

    #[test]
    fn scripted_violations() {
        let f = family_surface(19, Q).unwrap();
        let bad_curve = Strategy::Scripted(vec![parse_center("M X", Q).unwrap()]);
        assert_eq!(run(&f, &bad_curve, 10), Err(Error::NotPermitted("X".into())));
        let bad_point = Strategy::Scripted(vec![parse_center("Q 1:2:0", Q).unwrap()]);
        assert_eq!(run(&f, &bad_point, 10), Err(Error::NotNearPoint("1:2:0".into())));
    }

    #[test]
    fn auto_run() {
        let trace = run(&family_surface(19, Q).unwrap(), &Strategy::Auto, 50).unwrap();
        assert_eq!(trace.drop_step, Some(9));
        assert_eq!(trace.steps.len(), 9);
        assert_eq!(trace.steps[7].equation_after.to_string(), "Z^3 + X^3*Z + Y^4");
        for pair in trace.steps.windows(2) {
            assert!(pair[1].order_after <= pair[0].order_after);
        }
        assert!(trace.steps[..8].iter().all(|st| st.order_after == 3 && st.polygon_after.is_some()));
        assert!(trace.steps[8].polygon_after.is_none());
        assert_eq!(run(&family_surface(19, Q).unwrap(), &Strategy::Auto, 5), Err(Error::StepCapReached(5)));
    }

    #[test]
    fn reference_sequence_checks() {
        assert_eq!(verify_paper_sequence(19), Ok(true));
        assert_eq!(verify_paper_sequence(27), Ok(true));
        assert_eq!(verify_paper_sequence(18), Err(Error::ParameterOutOfRange(18)));
    }

    #[test]
    fn reports() {
        let r = counterexample_report(&CounterexampleParams::new(vec![19, 27, 35]).unwrap()).unwrap();
        assert_eq!(r.entries.iter().map(|e| e.drop_step).collect::<Vec<_>>(), vec![9, 13, 17]);
        assert!(r.polygons_equal && r.counts_increasing && r.period_holds);

        let r = counterexample_report(&CounterexampleParams::new(vec![19]).unwrap()).unwrap();
        assert_eq!(r.entries[0].drop_step, 9);
        assert_eq!(r.entries[0].polygon.to_string(), "(0,4/3) (4/3,0)");

        let r = counterexample_report(&CounterexampleParams::new(vec![]).unwrap()).unwrap();
        assert!(r.entries.is_empty());

        assert_eq!(CounterexampleParams::new(vec![19, 7]), Err(Error::ParameterOutOfRange(7)));
    }

    #[test]
    fn other_characteristic() {
        // the family works the same over F_7 (characteristic other than 3)
        let f = family_surface(19, FieldSpec::Prime(7)).unwrap();
        let trace = run(&f, &Strategy::Auto, 50).unwrap();
        assert_eq!(trace.drop_step, Some(9));
    }
}
