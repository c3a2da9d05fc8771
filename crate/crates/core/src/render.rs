//! SVG 1.1 drawings of wedges and of their unfolded arrangements.
//!
//! The apex sits at the origin and the line at infinity is the circle of
//! radius `R`. A bounce of rank `k` is drawn at radius `R·ρ^k`, so rank order
//! is the only thing the picture encodes; distances carry no meaning.
//! Wedge `w` of the unfolding maps the folded polar angle `θ` to
//! `wπ/m + θ` when `w` is even and `(w + 1)π/m − θ` when it is odd.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_rational::Ratio;
use thiserror::Error;

use crate::kaleidoscope::{expand, ExpandError, LineClass, Side, WedgeSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderOptions {
    /// Width and height attributes of the document.
    pub canvas: u32,
    pub radius: Ratio<u64>,
    pub ratio: Ratio<u64>,
    pub mirror_stroke: String,
    pub infinity_stroke: String,
    /// Beam `i` uses entry `i % len`.
    pub beam_strokes: Vec<String>,
    pub show_labels: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            canvas: 600,
            radius: Ratio::from_integer(100),
            ratio: Ratio::new(4, 5),
            mirror_stroke: "#555555".into(),
            infinity_stroke: "#999999".into(),
            beam_strokes: vec![
                "#c0392b".into(),
                "#2c6fbb".into(),
                "#27ae60".into(),
                "#8e44ad".into(),
            ],
            show_labels: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("radius must be positive")]
    NonPositiveRadius,
    #[error("radius ratio must lie strictly between 0 and 1")]
    RatioOutOfRange,
    #[error("canvas size must be positive")]
    EmptyCanvas,
    #[error("at least one beam stroke is required")]
    NoBeamStrokes,
    #[error("rank {0} has no distinguishable radius")]
    RadiiCollapse(u32),
    #[error(transparent)]
    Expand(#[from] ExpandError),
}

impl RenderOptions {
    pub fn validate(&self) -> Result<(), RenderError> {
        if *self.radius.numer() == 0 {
            return Err(RenderError::NonPositiveRadius);
        }
        if *self.ratio.numer() == 0 || self.ratio >= Ratio::from_integer(1) {
            return Err(RenderError::RatioOutOfRange);
        }
        if self.canvas == 0 {
            return Err(RenderError::EmptyCanvas);
        }
        if self.beam_strokes.is_empty() {
            return Err(RenderError::NoBeamStrokes);
        }
        Ok(())
    }
}

fn to_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Radii for ranks `0..=max_rank`, index = rank. Rank 0 is the ideal circle.
fn radii(opts: &RenderOptions, max_rank: u32) -> Result<Vec<f64>, RenderError> {
    let big = to_f64(opts.radius);
    let rho = to_f64(opts.ratio);
    let mut out = vec![big];
    for k in 1..=max_rank {
        let r = big * rho.powi(k as i32);
        // the printed coordinates must keep ranks apart
        let prev = *out.last().expect("non-empty");
        if r.is_nan() || r <= 0.0 || fmt_num(r) == fmt_num(prev) {
            return Err(RenderError::RadiiCollapse(k));
        }
        out.push(r);
    }
    Ok(out)
}

fn fmt_num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn point(radius: f64, angle: f64) -> String {
    format!(
        "{},{}",
        fmt_num(radius * angle.cos()),
        fmt_num(-radius * angle.sin())
    )
}

fn header(out: &mut String, opts: &RenderOptions, title: &str) {
    let r = fmt_num(to_f64(opts.radius) * 1.05);
    let d = fmt_num(to_f64(opts.radius) * 2.1);
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{c}" height="{c}" viewBox="-{r} -{r} {d} {d}">"#,
        c = opts.canvas
    );
    let _ = writeln!(out, "<title>{title}</title>");
}

/// Polar coordinates inside the folded wedge.
struct Folded<'a> {
    w: &'a WedgeSpec,
    radii: Vec<f64>,
    half: f64,
}

impl Folded<'_> {
    fn event(&self, beam: usize, idx: usize) -> (f64, f64) {
        let e = self.w.beams()[beam].events[idx];
        let theta = match e.side {
            Side::Bottom => 0.0,
            Side::Top => self.half,
        };
        (self.radii[e.rank as usize], theta)
    }

    fn segment(&self, beam: usize, s: usize) -> [(f64, f64); 2] {
        let start = if s == 0 {
            (self.radii[0], 0.0)
        } else {
            self.event(beam, s - 1)
        };
        [start, self.event(beam, s)]
    }
}

fn folded<'a>(w: &'a WedgeSpec, opts: &RenderOptions) -> Result<Folded<'a>, RenderError> {
    opts.validate()?;
    let max_rank = w
        .beams()
        .iter()
        .flat_map(|b| b.events.iter().map(|e| e.rank))
        .max()
        .unwrap_or(0);
    Ok(Folded {
        w,
        radii: radii(opts, max_rank)?,
        half: PI / w.m() as f64,
    })
}

/// The folded wedge: two rays, one polyline per beam, one marker per bounce point.
pub fn render_wedge(w: &WedgeSpec, opts: &RenderOptions) -> Result<String, RenderError> {
    let f = folded(w, opts)?;
    let big = f.radii[0];
    let mut out = String::new();
    header(&mut out, opts, &format!("wedge m={}", w.m()));

    let _ = writeln!(
        out,
        r#"<g fill="none" stroke="{}" stroke-width="0.6">"#,
        opts.mirror_stroke
    );
    for theta in [0.0, f.half] {
        let _ = writeln!(out, r#"<path d="M 0.000,0.000 L {}"/>"#, point(big, theta));
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g fill="none" stroke-width="0.8">"#);
    for (bi, beam) in w.beams().iter().enumerate() {
        let mut pts = vec![point(big, 0.0)];
        pts.extend((0..beam.events.len()).map(|i| {
            let (r, t) = f.event(bi, i);
            point(r, t)
        }));
        let _ = writeln!(
            out,
            r#"<polyline class="beam-{}" stroke="{}" points="{}"/>"#,
            beam.name,
            opts.beam_strokes[bi % opts.beam_strokes.len()],
            pts.join(" ")
        );
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g fill="black">"#);
    for side in [Side::Bottom, Side::Top] {
        for rank in w.keys_on(side) {
            let theta = if side == Side::Top { f.half } else { 0.0 };
            let r = f.radii[rank as usize];
            let at = point(r, theta);
            let (x, y) = at.split_once(',').expect("point has two coordinates");
            let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="0.8"/>"#);
            if opts.show_labels {
                let _ = writeln!(
                    out,
                    r#"<text x="{x}" y="{y}" font-size="3">{}{rank}</text>"#,
                    side.letter()
                );
            }
        }
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    Ok(out)
}

/// The full arrangement: one polyline per curve, in curve id order.
///
/// Mirrors are diameters through the apex and the line at infinity is a
/// closed polyline on the bounding circle.
pub fn render_arrangement(w: &WedgeSpec, opts: &RenderOptions) -> Result<String, RenderError> {
    let f = folded(w, opts)?;
    let arr = expand(w)?;
    let m = w.m();
    let big = f.radii[0];
    let mut out = String::new();
    header(
        &mut out,
        opts,
        &format!("arrangement m={} n={}", m, arr.structure.curve_count()),
    );
    let _ = writeln!(out, r#"<g fill="none" stroke-width="0.6">"#);

    let stroke = |class: &LineClass| -> &str {
        match class {
            LineClass::Mirror(_) => &opts.mirror_stroke,
            LineClass::Infinity => &opts.infinity_stroke,
            LineClass::Beam(name) => {
                let idx = w
                    .beams()
                    .iter()
                    .position(|b| &b.name == name)
                    .expect("beam classes name wedge beams");
                &opts.beam_strokes[idx % opts.beam_strokes.len()]
            }
        }
    };

    let mut beam_paths = arr.paths.iter().peekable();
    for curve in 0..arr.structure.curve_count() as u32 {
        let class = arr.class_of(curve);
        let pts: Vec<String> = match &class {
            LineClass::Mirror(_) => {
                let a = curve as f64 * f.half;
                vec![point(big, a), point(0.0, 0.0), point(big, a + PI)]
            }
            LineClass::Infinity => {
                let steps = 8 * m;
                (0..=steps)
                    .map(|i| point(big, 2.0 * PI * (i % steps) as f64 / steps as f64))
                    .collect()
            }
            LineClass::Beam(_) => {
                let path = beam_paths
                    .next_if(|p| p.curve == curve)
                    .expect("beam curves follow mirrors and infinity in path order");
                let mut pts: Vec<String> = Vec::new();
                for step in &path.steps {
                    let mut seg = f.segment(path.beam, step.segment);
                    if step.reversed {
                        seg.reverse();
                    }
                    let base = step.wedge as f64 * f.half;
                    for (r, theta) in seg {
                        let angle = if step.wedge % 2 == 0 {
                            base + theta
                        } else {
                            base + f.half - theta
                        };
                        let p = point(r, angle);
                        if pts.last() != Some(&p) {
                            pts.push(p);
                        }
                    }
                }
                pts
            }
        };
        let label = match &class {
            LineClass::Mirror(_) => "mirror".to_string(),
            LineClass::Infinity => "infinity".to_string(),
            LineClass::Beam(name) => format!("beam-{name}"),
        };
        let _ = writeln!(
            out,
            r#"<polyline id="c{curve}" class="{label}" stroke="{}" points="{}"/>"#,
            stroke(&class),
            pts.join(" ")
        );
    }
    let _ = writeln!(out, "</g>");

    if opts.show_labels {
        let _ = writeln!(out, r#"<g font-size="3">"#);
        for i in 0..m {
            let at = point(big * 1.02, i as f64 * f.half);
            let (x, y) = at.split_once(',').expect("point has two coordinates");
            let _ = writeln!(out, r#"<text x="{x}" y="{y}">{i}</text>"#);
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
