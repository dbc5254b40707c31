//! SVG and CSV rendering of planar supports.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::num::{RatVec, Q};
use crate::support::{self, SupportSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlotError {
    #[error("plots need two-dimensional input, got dimension {0}")]
    NotPlanar(usize),
    #[error(transparent)]
    Support(#[from] support::SupportError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Mark {
    Point,
    Ray,
    Semigroup,
    Tail,
    Limit,
}

impl Mark {
    fn name(self) -> &'static str {
        match self {
            Mark::Point => "point",
            Mark::Ray => "ray",
            Mark::Semigroup => "semigroup",
            Mark::Tail => "ptail",
            Mark::Limit => "limit",
        }
    }

    fn style(self) -> &'static str {
        match self {
            Mark::Point => r##"r="3" fill="#222""##,
            Mark::Ray => r##"r="3" fill="#1f5fa8""##,
            Mark::Semigroup => r##"r="3" fill="#2e8b57""##,
            Mark::Tail => r##"r="2" fill="#c0392b""##,
            Mark::Limit => r##"r="3" fill="none" stroke="#c0392b""##,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plot {
    pub svg: String,
    pub csv: String,
}

const SIZE: f64 = 400.0;
const MARGIN: f64 = 20.0;

fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn f(x: &Q) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

/// Sampled elements of every family, `levels` terms each.
pub fn marks(s: &SupportSpec, levels: u32) -> Vec<(Mark, RatVec)> {
    let mut out: Vec<(Mark, RatVec)> = Vec::new();
    out.extend(s.points.iter().map(|p| (Mark::Point, p.clone())));
    for r in &s.rays {
        for k in 0..levels {
            out.push((Mark::Ray, r.base.add(&r.step.scale(&Q::from_integer(k.into())))));
        }
    }
    for g in &s.semigroups {
        let single = SupportSpec {
            semigroups: vec![g.clone()],
            ..SupportSpec::default()
        };
        out.extend(single.sample(levels).into_iter().map(|p| (Mark::Semigroup, p)));
    }
    for t in &s.ptails {
        out.extend((1..=levels).map(|k| (Mark::Tail, t.point(k))));
        out.push((Mark::Limit, t.limit()));
    }
    out.sort();
    out.dedup();
    out
}

/// Renders the support with the dual support cone shaded when it exists.
/// Output depends only on the input: fixed canvas, sorted elements.
pub fn render(s: &SupportSpec, levels: u32) -> Result<Plot, PlotError> {
    if s.is_empty() && s.dim.is_none_or(|d| d == 2) {
        return Ok(draw(&[], None));
    }
    let n = s.validate()?;
    if n != 2 {
        return Err(PlotError::NotPlanar(n));
    }
    let ms = marks(s, levels);
    let infinite = !(s.rays.is_empty() && s.semigroups.is_empty() && s.ptails.is_empty());
    let shade = if infinite {
        support::tau(s).ok().map(|t| t.dual()).and_then(|d| {
            let r = d.rays();
            (d.is_strongly_convex() && r.len() == 2).then(|| (r[0].clone(), r[1].clone()))
        })
    } else {
        None
    };
    Ok(draw(&ms, shade))
}

fn draw(ms: &[(Mark, RatVec)], shade: Option<(RatVec, RatVec)>) -> Plot {
    let pts: Vec<(f64, f64)> = ms.iter().map(|(_, p)| (f(&p.0[0]), f(&p.0[1]))).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (-1.0f64, 1.0f64, -1.0f64, 1.0f64);
    for &(x, y) in &pts {
        x0 = x0.min(x - 1.0);
        x1 = x1.max(x + 1.0);
        y0 = y0.min(y - 1.0);
        y1 = y1.max(y + 1.0);
    }
    let span = (x1 - x0).max(y1 - y0);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let sx = |x: f64| MARGIN + (x - x0) * scale;
    let sy = |y: f64| SIZE - MARGIN - (y - y0) * scale;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        svg,
        r#"<defs><clipPath id="frame"><rect x="0" y="0" width="{SIZE}" height="{SIZE}"/></clipPath></defs>"#
    );
    let _ = writeln!(svg, r##"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="#ffffff"/>"##);
    if let Some((a, b)) = shade {
        let l = 4.0 * span;
        let (ax, ay) = unit(&a);
        let (bx, by) = unit(&b);
        let corners = [
            (0.0, 0.0),
            (l * ax, l * ay),
            (l * (ax + bx), l * (ay + by)),
            (l * bx, l * by),
        ];
        let path: Vec<String> = corners
            .iter()
            .map(|&(x, y)| format!("{:.3},{:.3}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            svg,
            r##"<polygon class="dual-cone" clip-path="url(#frame)" points="{}" fill="#f4d03f" fill-opacity="0.3"/>"##,
            path.join(" ")
        );
    }
    let _ = writeln!(
        svg,
        r##"<line class="axis" x1="0" y1="{:.3}" x2="{SIZE}" y2="{:.3}" stroke="#999"/>"##,
        sy(0.0),
        sy(0.0)
    );
    let _ = writeln!(
        svg,
        r##"<line class="axis" x1="{:.3}" y1="0" x2="{:.3}" y2="{SIZE}" stroke="#999"/>"##,
        sx(0.0),
        sx(0.0)
    );
    let mut csv = String::from("kind,x,y\n");
    for ((m, p), &(x, y)) in ms.iter().zip(&pts) {
        let _ = writeln!(
            svg,
            r#"<circle class="{}" cx="{:.3}" cy="{:.3}" {}/>"#,
            m.name(),
            sx(x),
            sy(y),
            m.style()
        );
        let _ = writeln!(csv, "{},{},{}", m.name(), fmt_q(&p.0[0]), fmt_q(&p.0[1]));
    }
    svg.push_str("</svg>\n");
    Plot { svg, csv }
}

fn unit(v: &RatVec) -> (f64, f64) {
    let (x, y) = (f(&v.0[0]), f(&v.0[1]));
    let r = (x * x + y * y).sqrt();
    (x / r, y / r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn empty_plot_is_valid() {
        let p = render(&SupportSpec::default(), 8).unwrap();
        assert!(p.svg.starts_with("<svg") && p.svg.trim_end().ends_with("</svg>"));
        assert_eq!(p.csv, "kind,x,y\n");
    }

    #[test]
    fn tails_and_shading() {
        let p = render(&fixtures::ex4(2), 6).unwrap();
        assert!(p.svg.contains("dual-cone"));
        assert!(p.csv.lines().any(|l| l.starts_with("ptail,")));
        assert!(p.csv.contains("limit,2,-1"));
        assert_eq!(p, render(&fixtures::ex4(2), 6).unwrap());
    }

    #[test]
    fn rejects_other_dimensions() {
        assert_eq!(render(&fixtures::ex_c(), 3), Err(PlotError::NotPlanar(3)));
    }
}
