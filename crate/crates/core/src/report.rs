//! Machine-readable views of polygons, traces and family reports, and the
//! SVG rendering of a polygon. All numbers that are not naturals are exact
//! `a/b` strings.

use std::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::driver::{CounterexampleReport, ResolutionTrace, StepCenter};
use crate::polygon::NewtonPolygon;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonJson {
    pub vertices: Vec<[String; 2]>,
}

impl From<&NewtonPolygon> for PolygonJson {
    fn from(p: &NewtonPolygon) -> Self {
        PolygonJson { vertices: p.text_pairs() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterJson {
    #[serde(rename = "type")]
    pub kind: String,
    pub direction: Option<String>,
    pub generator: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub index: usize,
    pub center: CenterJson,
    pub equation: String,
    pub order: u32,
    pub polygon: Option<PolygonJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub initial: String,
    pub multiplicity: u32,
    pub steps: Vec<StepJson>,
    pub drop_step: Option<usize>,
}

impl From<&ResolutionTrace> for TraceJson {
    fn from(t: &ResolutionTrace) -> Self {
        let steps = t
            .steps
            .iter()
            .map(|s| {
                let center = match &s.center {
                    StepCenter::Point(d) => CenterJson {
                        kind: "point".into(),
                        direction: Some(d.to_string()),
                        generator: None,
                    },
                    StepCenter::Curve(c) => CenterJson {
                        kind: "curve".into(),
                        direction: None,
                        generator: Some(c.to_string()),
                    },
                    StepCenter::Terminal(d) => CenterJson {
                        kind: "terminal".into(),
                        direction: Some(d.to_string()),
                        generator: None,
                    },
                };
                StepJson {
                    index: s.index,
                    center,
                    equation: s.equation_after.to_string(),
                    order: s.order_after,
                    polygon: s.polygon_after.as_ref().map(PolygonJson::from),
                }
            })
            .collect();
        TraceJson {
            initial: t.initial.to_string(),
            multiplicity: t.initial.multiplicity(),
            steps,
            drop_step: t.drop_step,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyEntryJson {
    pub m: u32,
    pub polygon: PolygonJson,
    pub drop_step: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleJson {
    pub entries: Vec<FamilyEntryJson>,
    pub polygons_equal: bool,
    pub counts_increasing: bool,
    pub period_holds: bool,
}

impl From<&CounterexampleReport> for CounterexampleJson {
    fn from(r: &CounterexampleReport) -> Self {
        CounterexampleJson {
            entries: r
                .entries
                .iter()
                .map(|e| FamilyEntryJson { m: e.m, polygon: (&e.polygon).into(), drop_step: e.drop_step })
                .collect(),
            polygons_equal: r.polygons_equal,
            counts_increasing: r.counts_increasing,
            period_holds: r.period_holds,
        }
    }
}

const CANVAS: i64 = 480;
const MARGIN: i64 = 40;
const PLOT: i64 = CANVAS - 2 * MARGIN;

/// Rounds half away from zero to two decimals, printed without floats.
fn fixed2(r: &BigRational) -> String {
    let hundredths = r * BigRational::from_integer(100.into());
    let (q, rem) = hundredths.numer().div_mod_floor(hundredths.denom());
    let twice = &rem * 2;
    let rounded: BigInt = if twice >= *hundredths.denom() { q + 1 } else { q };
    let negative = rounded < BigInt::zero();
    let abs = if negative { -rounded } else { rounded };
    let (int, frac) = abs.div_rem(&BigInt::from(100));
    format!("{}{}.{:02}", if negative { "-" } else { "" }, int, frac.to_u32().unwrap())
}

/// Deterministic 480×480 drawing: unit grid, axes, the staircase boundary
/// extended by axis-parallel rays, and each vertex as a labeled dot.
pub fn render_svg(p: &NewtonPolygon) -> String {
    let top = p
        .vertices()
        .iter()
        .flat_map(|v| [&v.x, &v.y])
        .map(|c| c.ceil().to_integer().to_i64().unwrap_or(i64::MAX - 1))
        .max()
        .unwrap_or(0);
    let bound = (top + 1).max(2);
    let scale = BigRational::new(PLOT.into(), bound.into());
    let px = |x: &BigRational| fixed2(&(BigRational::from_integer(MARGIN.into()) + x * &scale));
    let py = |y: &BigRational| fixed2(&(BigRational::from_integer((MARGIN + PLOT).into()) - y * &scale));
    let unit = |n: i64| BigRational::from_integer(n.into());

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="{CANVAS}" height="{CANVAS}" fill="white"/>"#);
    let _ = writeln!(svg, r##"<g stroke="#d0d0d0" stroke-width="1">"##);
    for u in 0..=bound {
        let (a, lo, hi) = (unit(u), unit(0), unit(bound));
        let _ = writeln!(svg, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, px(&a), py(&lo), px(&a), py(&hi));
        let _ = writeln!(svg, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, px(&lo), py(&a), px(&hi), py(&a));
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, r#"<g stroke="black" stroke-width="1.5">"#);
    let (lo, hi) = (unit(0), unit(bound));
    let _ = writeln!(svg, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, px(&lo), py(&lo), px(&hi), py(&lo));
    let _ = writeln!(svg, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, px(&lo), py(&lo), px(&lo), py(&hi));
    let _ = writeln!(svg, "</g>");

    if let (Some(first), Some(last)) = (p.vertices().first(), p.vertices().last()) {
        let mut pts = vec![format!("{},{}", px(&first.x), py(&hi))];
        pts.extend(p.vertices().iter().map(|v| format!("{},{}", px(&v.x), py(&v.y))));
        pts.push(format!("{},{}", px(&hi), py(&last.y)));
        let _ = writeln!(
            svg,
            r##"<polygon points="{} {},{}" fill="#1f5fbf" fill-opacity="0.15" stroke="none"/>"##,
            pts.join(" "),
            px(&hi),
            py(&hi)
        );
        let _ = writeln!(
            svg,
            r##"<polyline points="{}" fill="none" stroke="#1f5fbf" stroke-width="2"/>"##,
            pts.join(" ")
        );
        for v in p.vertices() {
            let _ = writeln!(svg, r##"<circle cx="{}" cy="{}" r="4" fill="#1f5fbf"/>"##, px(&v.x), py(&v.y));
            let [xt, yt] = v.text_pair();
            let _ = writeln!(
                svg,
                r#"<text x="{}" y="{}" font-family="monospace" font-size="12">({xt}, {yt})</text>"#,
                px(&(&v.x + BigRational::new(3.into(), (4 * bound).into()))),
                py(&(&v.y + BigRational::new(3.into(), (4 * bound).into()))),
            );
        }
    } else {
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="12">empty polygon</text>"#,
            MARGIN + 8,
            MARGIN + 16
        );
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::driver::{family_surface, run, Strategy};
    use crate::polygon::newton_polygon;
    use crate::scalar::FieldSpec;

    #[test]
    fn rounding() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(fixed2(&r(440, 1)), "440.00");
        assert_eq!(fixed2(&r(400, 3)), "133.33");
        assert_eq!(fixed2(&r(200, 3)), "66.67");
        assert_eq!(fixed2(&r(1, 200)), "0.01");
        assert_eq!(fixed2(&r(-1, 3)), "-0.33");
    }

    #[test]
    fn polygon_json_shape() {
        let f = family_surface(19, FieldSpec::Rationals).unwrap();
        let json = PolygonJson::from(&newton_polygon(&f));
        assert_eq!(json.vertices, vec![["0".to_string(), "4/3".to_string()], ["4/3".to_string(), "0".to_string()]]);
    }

    #[test]
    fn trace_json_fields() {
        let f = family_surface(19, FieldSpec::Rationals).unwrap();
        let t = TraceJson::from(&run(&f, &Strategy::Auto, 50).unwrap());
        assert_eq!(t.multiplicity, 3);
        assert_eq!(t.drop_step, Some(9));
        assert_eq!(t.steps[0].center.kind, "point");
        assert_eq!(t.steps[0].center.direction.as_deref(), Some("1:1:0"));
        assert_eq!(t.steps[3].center.kind, "curve");
        assert_eq!(t.steps[3].center.generator.as_deref(), Some("X"));
        assert_eq!(t.steps[8].center.kind, "terminal");
        assert!(t.steps[8].polygon.is_none());
        assert_eq!(t.steps[3].equation, "Z^3 + X^11*Z + Y^4");
    }

    #[test]
    fn svg_is_deterministic_and_labeled() {
        let f = family_surface(19, FieldSpec::Rationals).unwrap();
        let a = render_svg(&newton_polygon(&f));
        let b = render_svg(&newton_polygon(&f));
        assert_eq!(a, b);
        assert!(a.contains("(0, 4/3)"));
        assert!(a.contains("(4/3, 0)"));
        assert!(a.starts_with("<svg"));
        assert!(render_svg(&NewtonPolygon::default()).contains("empty polygon"));
    }
}
