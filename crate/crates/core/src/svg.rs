//! SVG pictures of the (s, t) half plane. Geometry is exact up to this
//! point; coordinates are written with six decimals.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::arith::{parse_rat, Int, Rat};
use crate::atlas::Window;
use crate::cones::boundary_rays;
use crate::error::{Error, Result};
use crate::lattice::{MukaiVector, SurfaceLattice};
use crate::quadext::QuadExt;
use crate::report::AtlasReport;

const WIDTH: f64 = 720.0;
const MARGIN: f64 = 40.0;
const LEGEND_LINE: f64 = 16.0;

fn f(x: &Rat) -> f64 {
    x.to_f64().expect("finite rational")
}

fn fq(x: &QuadExt) -> f64 {
    f(x.rat_part()) + f(x.irr_part()) * x.radicand().to_f64().unwrap_or(0.0).sqrt()
}

fn num(x: f64) -> String {
    // avoid "-0.000000"
    let s = format!("{x:.6}");
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        "0.000000".into()
    } else {
        s
    }
}

struct Frame {
    s_min: f64,
    t_max: f64,
    scale: f64,
}

impl Frame {
    fn x(&self, s: f64) -> f64 {
        MARGIN + (s - self.s_min) * self.scale
    }

    fn y(&self, t: f64) -> f64 {
        MARGIN + (self.t_max - t) * self.scale
    }
}

fn parse_triple(s: &str) -> Result<[Int; 3]> {
    let bad = || Error::Parse(format!("not a triple: {s}"));
    let inner = s.trim().strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
    let parts: Vec<Int> = inner.split(',').map(|p| p.trim().parse::<Int>().map_err(|_| bad())).collect::<Result<_>>()?;
    parts.try_into().map_err(|_| bad())
}

/// Window, axes, wall arcs and lines clipped to the window, marks at s±
/// and d/r, and a legend of (P,Q,R) with codimension tags.
pub fn svg_render(report: &AtlasReport, window: &Window) -> Result<String> {
    let walls = report.walls.as_deref().unwrap_or(&[]);
    let [r, d, a] = parse_triple(&report.input.v)?;
    let s_lo = f(&window.s_lo);
    let s_hi = f(&window.s_hi);
    let t_lo = f(&window.t2_lo).sqrt();
    let t_hi = f(&window.t2_hi).sqrt();
    let pad = (s_hi - s_lo) * 0.1;
    let frame = Frame { s_min: s_lo - pad, t_max: t_hi * 1.1, scale: WIDTH / (s_hi - s_lo + 2.0 * pad) };
    let plot_h = frame.t_max * frame.scale;
    let legend_h = LEGEND_LINE * (walls.len() as f64 + 1.0);
    let total_w = WIDTH + 2.0 * MARGIN;
    let total_h = plot_h + 2.0 * MARGIN + legend_h;

    let mut out = String::new();
    let w = &mut out;
    writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{1}" viewBox="0 0 {0} {1}">"#,
        num(total_w),
        num(total_h)
    )
    .unwrap();
    let (wx, wy) = (frame.x(s_lo), frame.y(t_hi));
    let (ww, wh) = (frame.x(s_hi) - wx, frame.y(t_lo) - wy);
    writeln!(
        w,
        r#"<defs><clipPath id="window"><rect x="{}" y="{}" width="{}" height="{}"/></clipPath></defs>"#,
        num(wx),
        num(wy),
        num(ww),
        num(wh)
    )
    .unwrap();
    writeln!(
        w,
        r##"<rect class="window" x="{}" y="{}" width="{}" height="{}" fill="#e8eef8" stroke="none"/>"##,
        num(wx),
        num(wy),
        num(ww),
        num(wh)
    )
    .unwrap();

    let y0 = frame.y(0.0);
    writeln!(
        w,
        r#"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        num(MARGIN),
        num(y0),
        num(MARGIN + WIDTH),
        num(y0)
    )
    .unwrap();
    if frame.s_min < 0.0 && frame.x(0.0) < MARGIN + WIDTH {
        let x = frame.x(0.0);
        writeln!(
            w,
            r#"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
            num(x),
            num(y0),
            num(x),
            num(MARGIN)
        )
        .unwrap();
    }

    writeln!(w, r##"<g clip-path="url(#window)" fill="none" stroke="#b03030">"##).unwrap();
    for entry in walls {
        let g = &entry.geometry;
        let rat_field = |x: &Option<String>| x.as_deref().and_then(parse_rat).ok_or_else(|| Error::Parse(format!("{g:?}")));
        match g.kind.as_str() {
            "line" => {
                let x = frame.x(f(&rat_field(&g.s0)?));
                writeln!(w, r#"<path class="wall" d="M {} {} L {} {}"/>"#, num(x), num(y0), num(x), num(MARGIN)).unwrap();
            }
            "circle" => {
                let c = f(&rat_field(&g.center)?);
                let rho = f(&rat_field(&g.radius2)?).sqrt();
                let rr = rho * frame.scale;
                writeln!(
                    w,
                    r#"<path class="wall" d="M {} {} A {} {} 0 0 1 {} {}"/>"#,
                    num(frame.x(c - rho)),
                    num(y0),
                    num(rr),
                    num(rr),
                    num(frame.x(c + rho)),
                    num(y0)
                )
                .unwrap();
            }
            _ => {}
        }
    }
    writeln!(w, "</g>").unwrap();

    let mut marks: Vec<(String, f64)> = Vec::new();
    let n: Int = report.input.n.parse().map_err(|_| Error::Parse(report.input.n.clone()))?;
    let l = SurfaceLattice::rank_one(n)?;
    if let Ok(b) = boundary_rays(&l, &MukaiVector::from_triple(&[r.clone(), d.clone(), a])) {
        marks.push(("s-".into(), fq(&b.s_minus)));
        marks.push(("s+".into(), fq(&b.s_plus)));
    }
    if r != Int::from(0) {
        marks.push(("d/r".into(), f(&Rat::new(d, r))));
    }
    for (label, s) in &marks {
        let x = frame.x(*s);
        if !(MARGIN..=MARGIN + WIDTH).contains(&x) {
            continue;
        }
        writeln!(
            w,
            r##"<line class="mark" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#2050a0"/>"##,
            num(x),
            num(y0 - 5.0),
            num(x),
            num(y0 + 5.0)
        )
        .unwrap();
        writeln!(w, r#"<text class="mark" x="{}" y="{}" font-size="11" text-anchor="middle">{label}</text>"#, num(x), num(y0 + 18.0))
            .unwrap();
    }

    let mut y = plot_h + 2.0 * MARGIN;
    writeln!(w, r#"<text class="legend" x="{}" y="{}" font-size="12">v = {}</text>"#, num(MARGIN), num(y), report.input.v).unwrap();
    for entry in walls {
        y += LEGEND_LINE;
        writeln!(
            w,
            r#"<text class="legend" x="{}" y="{}" font-size="12">({},{},{}) {}</text>"#,
            num(MARGIN),
            num(y),
            entry.pqr[0],
            entry.pqr[1],
            entry.pqr[2],
            entry.codim
        )
        .unwrap();
    }
    writeln!(w, "</svg>").unwrap();
    Ok(out)
}
