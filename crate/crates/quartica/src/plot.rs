//! Diagnostic SVG plots of the real part of atlas entries in an affine chart.
//! Numeric only; nothing here feeds back into exact results.

use num_complex::Complex64;
use thiserror::Error;

use quartica_core::geometry::{Conic, ProjLine, ProjPoint};
use quartica_core::poly::MultiPoly;

use crate::atlas::{atlas_get, AtlasError, Payload};

const TOL: f64 = 1e-9;
const SIZE: f64 = 600.0;
const GRID: usize = 240;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlotError {
    #[error(transparent)]
    Atlas(#[from] AtlasError),
    #[error("malformed chart `{0}`; expected x=1, y=1 or z=1")]
    BadChart(String),
    #[error("nothing to draw: no real points in the chart")]
    NothingVisible,
}

/// The affine chart `v = 1`, viewed on `[-radius, radius]^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chart {
    pub var: usize,
    pub radius: f64,
}

impl Chart {
    pub fn parse(s: &str) -> Result<Self, PlotError> {
        let bad = || PlotError::BadChart(s.to_string());
        let (v, one) = s.split_once('=').ok_or_else(bad)?;
        if one.trim() != "1" {
            return Err(bad());
        }
        let var = ["x", "y", "z"].iter().position(|n| *n == v.trim()).ok_or_else(bad)?;
        Ok(Chart { var, radius: 3.0 })
    }

    /// The two affine coordinates, in variable order.
    fn axes(&self) -> (usize, usize) {
        match self.var {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        }
    }

    fn to_affine(&self, p: [f64; 3]) -> Option<(f64, f64)> {
        let w = p[self.var];
        if w.abs() < TOL {
            return None;
        }
        let (a, b) = self.axes();
        let (u, v) = (p[a] / w, p[b] / w);
        (u.abs() <= self.radius && v.abs() <= self.radius).then_some((u, v))
    }

    fn to_screen(&self, (u, v): (f64, f64)) -> (f64, f64) {
        let s = SIZE / (2.0 * self.radius);
        ((u + self.radius) * s, (self.radius - v) * s)
    }

    fn homogeneous(&self, u: f64, v: f64) -> [f64; 3] {
        let mut p = [0.0; 3];
        let (a, b) = self.axes();
        p[self.var] = 1.0;
        p[a] = u;
        p[b] = v;
        p
    }
}

/// Divides by the entry of largest modulus and returns the real parts when
/// every imaginary part vanishes.
fn real_direction(c: &[Complex64]) -> Option<Vec<f64>> {
    let big = c.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm()))?;
    if big.norm() < TOL {
        return None;
    }
    let n: Vec<Complex64> = c.iter().map(|z| z / big).collect();
    n.iter().all(|z| z.im.abs() < 1e-7).then(|| n.iter().map(|z| z.re).collect())
}

fn real_point(p: &ProjPoint) -> Option<[f64; 3]> {
    real_direction(&p.embed()).map(|v| [v[0], v[1], v[2]])
}

fn cross(a: [Complex64; 3], b: [Complex64; 3]) -> [Complex64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// What a line contributes: a real line, or the one real point of a non-real line.
enum LineShape {
    Real([f64; 3]),
    Point([f64; 3]),
}

fn line_shape(l: &ProjLine) -> Option<LineShape> {
    let c = l.embed();
    if let Some(v) = real_direction(&c) {
        return Some(LineShape::Real([v[0], v[1], v[2]]));
    }
    let conj = c.map(|z| z.conj());
    let p = cross(c, conj);
    real_direction(&p.map(|z| Complex64::new(z.im, 0.0))).map(|v| LineShape::Point([v[0], v[1], v[2]]))
}

/// Clips `a u + b v + c w = 0` (in chart coordinates) to the view box.
fn clip_line(chart: &Chart, l: [f64; 3]) -> Option<((f64, f64), (f64, f64))> {
    let (ia, ib) = chart.axes();
    let (a, b, c) = (l[ia], l[ib], l[chart.var]);
    let r = chart.radius;
    let mut pts = Vec::new();
    if b.abs() > TOL {
        for u in [-r, r] {
            let v = -(a * u + c) / b;
            if v.abs() <= r + TOL {
                pts.push((u, v));
            }
        }
    }
    if a.abs() > TOL {
        for v in [-r, r] {
            let u = -(b * v + c) / a;
            if u.abs() <= r + TOL {
                pts.push((u, v));
            }
        }
    }
    pts.dedup_by(|p, q| (p.0 - q.0).abs() < TOL && (p.1 - q.1).abs() < TOL);
    match pts.as_slice() {
        [p, q, ..] => Some((*p, *q)),
        _ => None,
    }
}

fn real_poly(p: &MultiPoly) -> Option<Vec<([u32; 3], f64)>> {
    let terms: Vec<(&[u32; 3], Complex64)> = p.terms().map(|(e, c)| (e, c.embed())).collect();
    let coeffs: Vec<Complex64> = terms.iter().map(|(_, c)| *c).collect();
    let re = real_direction(&coeffs)?;
    Some(terms.iter().zip(re).map(|((e, _), c)| (**e, c)).collect())
}

fn eval_real(terms: &[([u32; 3], f64)], p: [f64; 3]) -> f64 {
    terms.iter().map(|(e, c)| c * p[0].powi(e[0] as i32) * p[1].powi(e[1] as i32) * p[2].powi(e[2] as i32)).sum()
}

/// Marching squares on the sign of a real polynomial.
fn curve_segments(chart: &Chart, p: &MultiPoly) -> Vec<((f64, f64), (f64, f64))> {
    let Some(terms) = real_poly(p) else { return Vec::new() };
    let r = chart.radius;
    let step = 2.0 * r / GRID as f64;
    let at = |i: usize, j: usize| (-r + i as f64 * step, -r + j as f64 * step);
    let vals: Vec<Vec<f64>> = (0..=GRID)
        .map(|i| {
            (0..=GRID)
                .map(|j| {
                    let (u, v) = at(i, j);
                    eval_real(&terms, chart.homogeneous(u, v))
                })
                .collect()
        })
        .collect();
    let mut segs = Vec::new();
    for i in 0..GRID {
        for j in 0..GRID {
            let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            let mut cut = Vec::new();
            for k in 0..4 {
                let (a, b) = (corners[k], corners[(k + 1) % 4]);
                let (fa, fb) = (vals[a.0][a.1], vals[b.0][b.1]);
                if (fa < 0.0) != (fb < 0.0) {
                    let s = fa / (fa - fb);
                    let (pa, pb) = (at(a.0, a.1), at(b.0, b.1));
                    cut.push((pa.0 + s * (pb.0 - pa.0), pa.1 + s * (pb.1 - pa.1)));
                }
            }
            for pair in cut.chunks(2) {
                if let [a, b] = pair {
                    segs.push((*a, *b));
                }
            }
        }
    }
    segs
}

/// Counts of what a plot shows.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PlotSummary {
    pub real_lines: usize,
    pub line_points: usize,
    pub points: usize,
    pub curves: usize,
}

pub struct Plot {
    pub svg: String,
    pub summary: PlotSummary,
}

struct Canvas {
    chart: Chart,
    body: String,
    summary: PlotSummary,
}

impl Canvas {
    fn segment(&mut self, a: (f64, f64), b: (f64, f64), class: &str) {
        let (a, b) = (self.chart.to_screen(a), self.chart.to_screen(b));
        self.body.push_str(&format!(
            "<line class=\"{class}\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>\n",
            a.0, a.1, b.0, b.1
        ));
    }

    fn marker(&mut self, p: [f64; 3], class: &str) -> bool {
        let Some(q) = self.chart.to_affine(p) else { return false };
        let (x, y) = self.chart.to_screen(q);
        self.body.push_str(&format!("<circle class=\"{class}\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\"/>\n"));
        true
    }

    fn lines(&mut self, ls: &[ProjLine]) {
        for l in ls {
            match line_shape(l) {
                Some(LineShape::Real(c)) => {
                    if let Some((a, b)) = clip_line(&self.chart, c) {
                        self.segment(a, b, "line");
                        self.summary.real_lines += 1;
                    }
                }
                Some(LineShape::Point(p)) => {
                    if self.marker(p, "line-point") {
                        self.summary.line_points += 1;
                    }
                }
                None => {}
            }
        }
    }

    fn points(&mut self, ps: &[ProjPoint]) {
        for p in ps {
            if real_point(p).is_some_and(|q| self.marker(q, "point")) {
                self.summary.points += 1;
            }
        }
    }

    fn curve(&mut self, p: &MultiPoly) {
        let segs = curve_segments(&self.chart, p);
        if !segs.is_empty() {
            self.summary.curves += 1;
        }
        for (a, b) in segs {
            self.segment(a, b, "curve");
        }
    }

    fn conics(&mut self, qs: &[Conic]) {
        for q in qs {
            self.curve(&q.to_poly());
        }
    }
}

/// Plots the real points of the given atlas entries in `chart`.
pub fn plot_svg(ids: &[&str], chart: Chart) -> Result<Plot, PlotError> {
    let mut canvas = Canvas { chart, body: String::new(), summary: PlotSummary::default() };
    for id in ids {
        let entry = atlas_get(id)?;
        match &entry.payload {
            Payload::Curve(c) => canvas.curve(c.form()),
            Payload::Lines(ls) => canvas.lines(ls),
            Payload::Points(ps) => canvas.points(ps),
            Payload::Conics(qs) => canvas.conics(qs),
            Payload::Factored(_) => canvas.curve(&entry.poly()),
            Payload::Generators(gs) => {
                for g in gs {
                    for f in g {
                        canvas.curve(f);
                    }
                }
            }
        }
    }
    if canvas.body.is_empty() {
        return Err(PlotError::NothingVisible);
    }
    let names = ["x", "y", "z"];
    let svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n\
         <title>{} in the chart {}=1</title>\n\
         <style>.line{{stroke:#1f5fa8;stroke-width:1.5}} .curve{{stroke:#a8321f;stroke-width:1.2}} \
         .point{{fill:#000}} .line-point{{fill:none;stroke:#1f5fa8;stroke-width:1.5}}</style>\n\
         <rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n{}</svg>\n",
        ids.join(", "),
        names[chart.var],
        canvas.body
    );
    Ok(Plot { svg, summary: canvas.summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{FERMAT_QUARTIC, KK_FERMAT_LINES};

    fn z1() -> Chart {
        Chart::parse("z=1").unwrap()
    }

    #[test]
    fn chart_parsing() {
        assert_eq!(Chart::parse("y = 1").unwrap().var, 1);
        assert!(Chart::parse("z=2").is_err());
        assert!(Chart::parse("w=1").is_err());
    }

    #[test]
    fn empty_selection_is_nothing_visible() {
        assert_eq!(plot_svg(&[], z1()).err(), Some(PlotError::NothingVisible));
    }

    #[test]
    fn fermat_quartic_has_no_real_points() {
        assert_eq!(plot_svg(&[FERMAT_QUARTIC], z1()).err(), Some(PlotError::NothingVisible));
    }

    #[test]
    fn real_lines_are_drawn() {
        let p = plot_svg(&[KK_FERMAT_LINES], z1()).unwrap();
        assert_eq!(p.summary.real_lines, 6);
        assert_eq!(p.svg.matches("<line ").count(), 6);
    }

    #[test]
    fn a_real_circle_is_traced() {
        let t = quartica_core::field::Tower::rationals();
        let (x, y, z) = quartica_core::poly::xyz(&t);
        let c = &(&x.pow(2) + &y.pow(2)) - &z.pow(2);
        let segs = curve_segments(&z1(), &c);
        assert!(segs.len() > 100);
        for (a, _) in segs {
            assert!((a.0.hypot(a.1) - 1.0).abs() < 0.05);
        }
    }
}
