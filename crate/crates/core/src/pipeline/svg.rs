use std::fmt::Write as _;

use super::{PlanGeometry, PlanReport};
use crate::geometry::{Point, Polygon, Rect};

/// SVG user units per metre.
const UNITS_PER_M: f64 = 100.0;
const MARGIN_M: f64 = 1.0;

struct Frame {
    min_x: f64,
    max_y: f64,
}

impl Frame {
    fn x(&self, x: f64) -> String {
        fmt_num((x - self.min_x) * UNITS_PER_M)
    }

    fn y(&self, y: f64) -> String {
        fmt_num((self.max_y - y) * UNITS_PER_M)
    }

    fn points(&self, p: &Polygon<f64>) -> String {
        p.vertices().iter().map(|v| format!("{},{}", self.x(v.x), self.y(v.y))).collect::<Vec<_>>().join(" ")
    }

    fn rect(&self, r: &Rect<f64>, attrs: &str) -> String {
        format!(
            r#"<rect {attrs} x="{}" y="{}" width="{}" height="{}"/>"#,
            self.x(r.min.x),
            self.y(r.max.y),
            fmt_num(r.width() * UNITS_PER_M),
            fmt_num(r.height() * UNITS_PER_M)
        )
    }
}

fn fmt_num(v: f64) -> String {
    let s = format!("{v:.1}");
    match s.as_str() {
        "-0.0" => "0.0".to_string(),
        _ => s,
    }
}

/// Draws the aircraft outline, the dashed envelope, target points, camera
/// footprints and numbered camera centres.
///
/// One user unit is 0.01 m; the viewBox origin sits at the bottom-left of the
/// drawn area, with world y increasing upwards.
pub fn render_layout_svg(report: &PlanReport, geom: &PlanGeometry) -> String {
    let (w, l) = (report.footprint.width_m, report.footprint.length_m);
    let cells: Vec<Rect<f64>> =
        report.solution.positions.iter().map(|&[x, y]| Rect::centred(Point::new(x, y), w, l)).collect();
    let mut extent = geom.envelope.bounds().union(&geom.outline.bounds());
    if let Some(b) = &geom.bay {
        extent = extent.union(b);
    }
    for c in &cells {
        extent = extent.union(c);
    }
    let extent = extent.expand(MARGIN_M, MARGIN_M);
    let frame = Frame { min_x: extent.min.x, max_y: extent.max.y };
    let (vw, vh) = (fmt_num(extent.width() * UNITS_PER_M), fmt_num(extent.height() * UNITS_PER_M));

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<!-- camera layout: {} ({}); 1 user unit = 0.01 m; origin at bottom-left = ({:.3} m, {:.3} m); world y points up -->",
        report.scenario.name, report.scenario.mode, extent.min.x, extent.min.y
    );
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{vw}" height="{vh}" viewBox="0 0 {vw} {vh}">"#
    );
    let _ = writeln!(
        s,
        "<title>{} cameras, {}, optimal={}</title>",
        report.solution.camera_count, report.bom.total_gbp, report.solution.optimal
    );
    let _ =
        writeln!(s, r##"<rect class="background" x="0" y="0" width="{vw}" height="{vh}" fill="#ffffff"/>"##);
    if let Some(b) = &geom.bay {
        let _ = writeln!(
            s,
            "{}",
            frame.rect(b, r##"class="bay" fill="none" stroke="#555555" stroke-width="8""##)
        );
    }
    let _ = writeln!(
        s,
        r##"<polygon class="outline" points="{}" fill="#cfe8cf" stroke="#2e7d32" stroke-width="6"/>"##,
        frame.points(&geom.outline)
    );
    let _ = writeln!(
        s,
        r##"<polygon class="envelope" points="{}" fill="none" stroke="#2e7d32" stroke-width="4" stroke-dasharray="30,20"/>"##,
        frame.points(&geom.envelope)
    );
    s.push_str("<g class=\"grid\" fill=\"#1565c0\">\n");
    for p in &geom.grid_points {
        let _ =
            writeln!(s, r#"<circle class="grid-point" cx="{}" cy="{}" r="5"/>"#, frame.x(p.x), frame.y(p.y));
    }
    s.push_str("</g>\n");
    s.push_str("<g class=\"footprints\" fill=\"#ff9800\" fill-opacity=\"0.2\" stroke=\"#e65100\" stroke-width=\"4\">\n");
    for c in &cells {
        let _ = writeln!(s, "{}", frame.rect(c, r#"class="footprint""#));
    }
    s.push_str("</g>\n");
    s.push_str("<g class=\"cameras\" font-family=\"sans-serif\" font-size=\"60\">\n");
    for (k, &[x, y]) in report.solution.positions.iter().enumerate() {
        let _ = writeln!(
            s,
            r##"<circle class="camera" cx="{cx}" cy="{cy}" r="15" fill="#b71c1c"/><text x="{cx}" y="{cy}" dx="20" dy="-20">{k}</text>"##,
            cx = frame.x(x),
            cy = frame.y(y),
        );
    }
    s.push_str("</g>\n</svg>\n");
    s
}
