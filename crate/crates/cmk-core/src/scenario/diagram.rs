//! SVG diagram emission: standard axes, the tilted primed axes with γ-scaled
//! unit ticks, the light cone, events in both representations, and flag
//! lightlines where connected.
//!
//! The SVG is generated directly as text with deterministic element order and
//! shortest round-trip number formatting, so identical scenarios produce
//! byte-identical output.

use super::fig3::fmt_num;
use super::flags::plan_flags;
use super::{EventCoords, PartyRole, Result, Scenario};
use crate::causaloid::SpaceTag;
use crate::eta::{lift_to_s, project_to_qg, QGEvent};
use crate::minkowski::Event;
use std::fmt::Write;

const CANVAS: f64 = 640.0;
const HALF: f64 = CANVAS / 2.0;
const PLOT_RADIUS: f64 = 290.0;

struct Canvas {
    svg: String,
    scale: f64,
}

impl Canvas {
    fn new(world_bound: f64) -> Self {
        let mut svg = String::new();
        let size = fmt_num(CANVAS);
        writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
        )
        .expect("string write");
        writeln!(
            svg,
            r#"<rect width="{size}" height="{size}" fill="white"/>"#
        )
        .expect("string write");
        Canvas {
            svg,
            scale: PLOT_RADIUS / world_bound,
        }
    }

    /// World (x, ct) with ct pointing up maps onto the canvas.
    fn map(&self, x: f64, ct: f64) -> (f64, f64) {
        (HALF + x * self.scale, HALF - ct * self.scale)
    }

    fn line(&mut self, from: (f64, f64), to: (f64, f64), stroke: &str, extra: &str) {
        let (x1, y1) = self.map(from.0, from.1);
        let (x2, y2) = self.map(to.0, to.1);
        writeln!(
            self.svg,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{stroke}"{extra}/>"#,
            fmt_num(x1),
            fmt_num(y1),
            fmt_num(x2),
            fmt_num(y2)
        )
        .expect("string write");
    }

    fn circle(&mut self, at: (f64, f64), r: f64, fill: &str) {
        let (cx, cy) = self.map(at.0, at.1);
        writeln!(
            self.svg,
            r#"<circle cx="{}" cy="{}" r="{}" fill="{fill}"/>"#,
            fmt_num(cx),
            fmt_num(cy),
            fmt_num(r)
        )
        .expect("string write");
    }

    fn text(&mut self, at: (f64, f64), offset: (f64, f64), label: &str) {
        let (x, y) = self.map(at.0, at.1);
        writeln!(
            self.svg,
            r#"<text x="{}" y="{}" font-size="14" font-family="monospace">{label}</text>"#,
            fmt_num(x + offset.0),
            fmt_num(y + offset.1)
        )
        .expect("string write");
    }

    fn finish(mut self) -> Vec<u8> {
        self.svg.push_str("</svg>\n");
        self.svg.into_bytes()
    }
}

/// Both representations of one event: the standard-frame point and the foot
/// on the x′-axis.
fn representations(e: &super::ScenarioEvent, sc: &Scenario) -> Result<((f64, f64), (f64, f64))> {
    match e.coords {
        EventCoords::Qg { x_prime } => {
            let lifted = lift_to_s(&QGEvent::new(x_prime)?, &sc.strength);
            let on_axis = (lifted.x(), lifted.ct());
            // lightline placement in the standard frame
            let s_point = (lifted.x(), lifted.x().abs());
            Ok((s_point, on_axis))
        }
        EventCoords::S { x, ct } => {
            let projected = project_to_qg(&Event::one_d(x, ct)?, &sc.strength)?;
            let lifted = lift_to_s(&projected, &sc.strength);
            Ok(((x, ct), (lifted.x(), lifted.ct())))
        }
    }
}

/// Render a scenario as an SVG diagram.
pub fn emit_diagram(sc: &Scenario) -> Result<Vec<u8>> {
    let gamma = sc.strength.gamma();

    let mut bound: f64 = gamma.max(1.0);
    let mut reps = Vec::new();
    for e in &sc.events {
        let (s_point, qg_point) = representations(e, sc)?;
        bound = bound
            .max(s_point.0.abs())
            .max(s_point.1.abs())
            .max(qg_point.0.abs())
            .max(qg_point.1.abs());
        reps.push((e, s_point, qg_point));
    }
    bound *= 1.2;

    let mut canvas = Canvas::new(bound);

    // standard axes
    canvas.line((-bound, 0.0), (bound, 0.0), "black", "");
    canvas.line((0.0, -bound), (0.0, bound), "black", "");
    canvas.text((bound, 0.0), (-16.0, 18.0), "x");
    canvas.text((0.0, bound), (8.0, 14.0), "ct");

    // light cone
    let dashed = r#" stroke-dasharray="6,4""#;
    canvas.line((-bound, -bound), (bound, bound), "gray", dashed);
    canvas.line((-bound, bound), (bound, -bound), "gray", dashed);

    // unit ticks on the standard axes
    for t in [-1.0, 1.0] {
        canvas.line((t, -0.02 * bound), (t, 0.02 * bound), "black", "");
        canvas.line((-0.02 * bound, t), (0.02 * bound, t), "black", "");
    }

    // primed axes: x'-axis along ct = beta·x, ct'-axis along ct = x/beta;
    // at beta = 0 they coincide with the standard axes
    let theta = sc.strength.theta_deg().to_radians();
    let (sin_t, cos_t) = (theta.sin(), theta.cos());
    let x_axis_dir = (cos_t, sin_t);
    let ct_axis_dir = (sin_t, cos_t);
    let reach = bound / cos_t.max(1e-12);
    canvas.line(
        (-reach * x_axis_dir.0, -reach * x_axis_dir.1),
        (reach * x_axis_dir.0, reach * x_axis_dir.1),
        "blue",
        "",
    );
    canvas.line(
        (-reach * ct_axis_dir.0, -reach * ct_axis_dir.1),
        (reach * ct_axis_dir.0, reach * ct_axis_dir.1),
        "blue",
        "",
    );
    canvas.text(
        (0.92 * bound * x_axis_dir.0, 0.92 * bound * x_axis_dir.1),
        (6.0, -6.0),
        "x&#8242;",
    );
    canvas.text(
        (0.92 * bound * ct_axis_dir.0, 0.92 * bound * ct_axis_dir.1),
        (10.0, 4.0),
        "ct&#8242;",
    );

    // gamma-scaled unit ticks on the primed axes
    for t in [-gamma, gamma] {
        let (px, py) = (t * x_axis_dir.0, t * x_axis_dir.1);
        canvas.circle((px, py), 2.5, "blue");
        let (px, py) = (t * ct_axis_dir.0, t * ct_axis_dir.1);
        canvas.circle((px, py), 2.5, "blue");
    }

    // flag lightlines where connected
    let plan = match sc.space {
        SpaceTag::S => plan_flags(sc)?,
        SpaceTag::Qg => plan_flags(&super::flags::lightline_counterpart(sc)?)?,
    };
    let mut flag_index = 0;
    for (e, s_point, _) in &reps {
        if e.role == PartyRole::Coordinator {
            continue;
        }
        flag_index += 1;
        let connected = plan
            .flags
            .iter()
            .find(|f| f.party == e.id)
            .is_some_and(|f| f.connected);
        if connected {
            canvas.line((0.0, 0.0), *s_point, "red", "");
            let mid = (s_point.0 / 2.0, s_point.1 / 2.0);
            canvas.text(mid, (6.0, -6.0), &format!("L{flag_index}"));
        }
    }

    // events: standard-frame point and the x'-axis representation
    for (e, s_point, qg_point) in &reps {
        if e.role == PartyRole::Coordinator {
            canvas.circle(*s_point, 4.0, "black");
            canvas.text(*s_point, (8.0, 16.0), &e.id);
            continue;
        }
        canvas.line(*s_point, *qg_point, "gray", dashed);
        canvas.circle(*s_point, 4.0, "black");
        canvas.text(*s_point, (8.0, -8.0), &e.id);
        canvas.circle(*qg_point, 4.0, "blue");
        canvas.text(*qg_point, (8.0, 16.0), &format!("{}&#8242;", e.id));
    }

    Ok(canvas.finish())
}
