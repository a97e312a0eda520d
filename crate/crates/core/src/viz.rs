//! Standalone SVG renderings: segmented matching with compression blocks and
//! amplitude shading, point-to-point matching, and warping paths drawn over a
//! heat-mapped cost matrix.
//!
//! All numbers are written with three decimals, so equal inputs give
//! byte-identical documents.

use std::fmt::Write;

use crate::dtw::CostMatrix;
use crate::error::{DswError, Result};
use crate::metrics::{AmplitudeBand, SegmentReport};
use crate::path::{Point, WarpingPath};
use crate::segmenter::SimplifiedPath;
use crate::series::Series;

/// Stroke and fill colors by role.
#[derive(Debug, Clone, PartialEq)]
pub struct Palette {
    pub series1: String,
    pub series2: String,
    pub connector: String,
    pub block: String,
    pub shade: String,
    pub optimal: String,
    pub simplified: String,
}

impl Default for Palette {
    fn default() -> Self {
        Palette {
            series1: "#1f77b4".into(),
            series2: "#2ca02c".into(),
            connector: "#7f7f7f".into(),
            block: "#ff7f0e".into(),
            shade: "#ffbb78".into(),
            optimal: "#d62728".into(),
            simplified: "#2ca02c".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColorRole {
    Series1,
    Series2,
    Connector,
    Block,
    Shade,
    Optimal,
    Simplified,
}

impl Palette {
    pub fn color(&self, role: ColorRole) -> &str {
        match role {
            ColorRole::Series1 => &self.series1,
            ColorRole::Series2 => &self.series2,
            ColorRole::Connector => &self.connector,
            ColorRole::Block => &self.block,
            ColorRole::Shade => &self.shade,
            ColorRole::Optimal => &self.optimal,
            ColorRole::Simplified => &self.simplified,
        }
    }
}

/// Canvas geometry, colors and point-to-point thinning.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    width: f64,
    height: f64,
    gap: f64,
    margin: f64,
    stride: usize,
    pub palette: Palette,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            width: 800.0,
            height: 400.0,
            gap: 80.0,
            margin: 20.0,
            stride: 1,
            palette: Palette::default(),
        }
    }
}

impl RenderSpec {
    pub fn new(width: f64, height: f64, gap: f64, stride: usize) -> Result<Self> {
        let margin = RenderSpec::default().margin;
        let positive = |name: &'static str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(DswError::InvalidParameter {
                    name,
                    value: v,
                    reason: "must be positive and finite",
                })
            }
        };
        positive("width", width)?;
        positive("height", height)?;
        positive("gap", gap)?;
        if stride == 0 {
            return Err(DswError::InvalidParameter {
                name: "stride",
                value: 0.0,
                reason: "must be at least 1",
            });
        }
        if width <= 2.0 * margin || height <= 2.0 * margin + gap {
            return Err(DswError::InvalidParameter {
                name: "height",
                value: height,
                reason: "canvas too small for margins and gap",
            });
        }
        Ok(RenderSpec {
            width,
            height,
            gap,
            margin,
            stride,
            palette: Palette::default(),
        })
    }

    pub fn with_stride(mut self, stride: usize) -> Result<Self> {
        if stride == 0 {
            return Err(DswError::InvalidParameter {
                name: "stride",
                value: 0.0,
                reason: "must be at least 1",
            });
        }
        self.stride = stride;
        Ok(self)
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    pub fn stride(&self) -> usize {
        self.stride
    }
}

/// Affine map from (sample index, value) to screen coordinates for the
/// two-panel series views. Series 1 is drawn in the upper panel, series 2 in
/// the lower one, both on a shared horizontal scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesLayout {
    margin: f64,
    unit: f64,
    panel: f64,
    gap: f64,
    lo: f64,
    hi: f64,
}

impl SeriesLayout {
    pub fn new(spec: &RenderSpec, n: usize, m: usize, lo: f64, hi: f64) -> Self {
        let steps = (n.max(m).max(2) - 1) as f64;
        let (lo, hi) = if hi > lo { (lo, hi) } else { (lo - 1.0, hi + 1.0) };
        SeriesLayout {
            margin: spec.margin,
            unit: (spec.width - 2.0 * spec.margin) / steps,
            panel: (spec.height - 2.0 * spec.margin - spec.gap) / 2.0,
            gap: spec.gap,
            lo,
            hi,
        }
    }

    /// Screen width of one sample step.
    pub fn unit(&self) -> f64 {
        self.unit
    }

    /// Horizontal position of 1-based index `i` (fractional indices allowed).
    pub fn x(&self, i: f64) -> f64 {
        self.margin + (i - 1.0) * self.unit
    }

    pub fn y_upper(&self, v: f64) -> f64 {
        self.margin + (self.hi - v) / (self.hi - self.lo) * self.panel
    }

    pub fn y_lower(&self, v: f64) -> f64 {
        self.y_upper(v) + self.panel + self.gap
    }

    /// Top edge and height of the strip between the two panels.
    pub fn gap_strip(&self) -> (f64, f64) {
        (self.margin + self.panel, self.gap)
    }
}

/// Fixed three-decimal formatting without negative zero.
fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

struct Doc {
    buf: String,
}

impl Doc {
    fn new(spec: &RenderSpec, title: &str) -> Self {
        let (w, h) = (num(spec.width), num(spec.height));
        let mut buf = String::new();
        buf.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            buf,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
        );
        let _ = writeln!(buf, "<title>{}</title>", escape(title));
        let _ = writeln!(
            buf,
            "<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" style=\"fill:#ffffff\"/>"
        );
        Doc { buf }
    }

    fn open(&mut self, id: &str) {
        let _ = writeln!(self.buf, "<g id=\"{id}\">");
    }

    fn close(&mut self) {
        self.buf.push_str("</g>\n");
    }

    fn line(&mut self, (x1, y1): (f64, f64), (x2, y2): (f64, f64), color: &str) {
        let _ = writeln!(
            self.buf,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" style=\"stroke:{};stroke-width:1\"/>",
            num(x1),
            num(y1),
            num(x2),
            num(y2),
            escape(color)
        );
    }

    fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, style: &str) {
        let _ = writeln!(
            self.buf,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" style=\"{}\"/>",
            num(x),
            num(y),
            num(w),
            num(h),
            escape(style)
        );
    }

    fn polyline(&mut self, points: impl Iterator<Item = (f64, f64)>, color: &str, width: f64) {
        let coords: Vec<String> = points.map(|(x, y)| format!("{},{}", num(x), num(y))).collect();
        let _ = writeln!(
            self.buf,
            "<polyline points=\"{}\" style=\"fill:none;stroke:{};stroke-width:{}\"/>",
            coords.join(" "),
            escape(color),
            num(width)
        );
    }

    fn finish(mut self) -> String {
        self.buf.push_str("</svg>\n");
        self.buf
    }
}

fn require_univariate(s1: &Series, s2: &Series) -> Result<()> {
    for s in [s1, s2] {
        if !s.is_univariate() {
            return Err(DswError::NotUnivariate(s.dim()));
        }
    }
    Ok(())
}

fn value_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn title_for(s1: &Series, s2: &Series, kind: &str) -> String {
    format!(
        "{kind}: {} vs {}",
        s1.name().unwrap_or("series 1"),
        s2.name().unwrap_or("series 2")
    )
}

fn draw_series(doc: &mut Doc, layout: &SeriesLayout, s1: &Series, s2: &Series, spec: &RenderSpec) {
    doc.open("series-1");
    doc.polyline(
        s1.as_slice()
            .iter()
            .enumerate()
            .map(|(k, &v)| (layout.x(k as f64 + 1.0), layout.y_upper(v))),
        &spec.palette.series1,
        1.5,
    );
    doc.close();
    doc.open("series-2");
    doc.polyline(
        s2.as_slice()
            .iter()
            .enumerate()
            .map(|(k, &v)| (layout.x(k as f64 + 1.0), layout.y_lower(v))),
        &spec.palette.series2,
        1.5,
    );
    doc.close();
}

fn connector(doc: &mut Doc, layout: &SeriesLayout, s1: &Series, s2: &Series, q: Point, color: &str) {
    doc.line(
        (layout.x(q.i as f64), layout.y_upper(s1.value(q.i))),
        (layout.x(q.j as f64), layout.y_lower(s2.value(q.j))),
        color,
    );
}

/// Segmented matching view. Connectors join the matched samples at each key
/// point. Each segment with `K != 0` gets a block `|K|` samples wide in the
/// gap, centered on the midpoint of the shorter side of the segment. The band,
/// when given, is shaded around series 1 with one rectangle per index.
pub fn render_segmented(
    s1: &Series,
    s2: &Series,
    simplified: &SimplifiedPath,
    reports: &[SegmentReport],
    band: Option<&AmplitudeBand>,
    spec: &RenderSpec,
) -> Result<String> {
    require_univariate(s1, s2)?;
    let keys = simplified.key_points();
    match keys.last() {
        Some(end) if (end.i, end.j) == (s1.len(), s2.len()) => {}
        _ => {
            return Err(DswError::Inconsistent(format!(
                "simplified path does not end at ({}, {})",
                s1.len(),
                s2.len()
            )))
        }
    }
    if reports.len() != simplified.segment_count() {
        return Err(DswError::Inconsistent(format!(
            "{} reports for {} segments",
            reports.len(),
            simplified.segment_count()
        )));
    }
    for (r, seg) in reports.iter().zip(simplified.segments()) {
        if (r.b, r.b2, r.e, r.e2) != (seg.begin.i, seg.begin.j, seg.end.i, seg.end.j) {
            return Err(DswError::Inconsistent(format!(
                "report ({}, {})-({}, {}) does not match segment {}-{}",
                r.b, r.b2, r.e, r.e2, seg.begin, seg.end
            )));
        }
    }
    if let Some(band) = band {
        if band.alpha.len() != s1.len() || band.beta.len() != s1.len() {
            return Err(DswError::Inconsistent(format!(
                "band covers {} indices, series 1 has {}",
                band.alpha.len(),
                s1.len()
            )));
        }
    }

    let (mut lo, mut hi) = value_range(s1.as_slice().iter().chain(s2.as_slice()).copied());
    if let Some(band) = band {
        for i in 1..=s1.len() {
            let (a, b) = band.interval(s1, i);
            lo = lo.min(a);
            hi = hi.max(b);
        }
    }
    let layout = SeriesLayout::new(spec, s1.len(), s2.len(), lo, hi);
    let mut doc = Doc::new(spec, &title_for(s1, s2, "segmented matching"));

    if let Some(band) = band {
        doc.open("band");
        let style = format!("fill:{};stroke:none", spec.palette.shade);
        for i in 1..=s1.len() {
            let (low, high) = band.interval(s1, i);
            let (top, bottom) = (layout.y_upper(high), layout.y_upper(low));
            doc.rect(
                layout.x(i as f64) - layout.unit() / 2.0,
                top,
                layout.unit(),
                bottom - top,
                &style,
            );
        }
        doc.close();
    }

    draw_series(&mut doc, &layout, s1, s2, spec);

    doc.open("blocks");
    let (strip_top, strip_height) = layout.gap_strip();
    let style = format!("fill:{};stroke:none", spec.palette.block);
    for r in reports.iter().filter(|r| r.k != 0) {
        let mid = if r.k < 0 {
            (r.b2 + r.e2) as f64 / 2.0
        } else {
            (r.b + r.e) as f64 / 2.0
        };
        let width = r.k.unsigned_abs() as f64 * layout.unit();
        doc.rect(
            layout.x(mid) - width / 2.0,
            strip_top + strip_height / 3.0,
            width,
            strip_height / 3.0,
            &style,
        );
    }
    doc.close();

    doc.open("connectors");
    for &q in keys {
        connector(&mut doc, &layout, s1, s2, q, &spec.palette.connector);
    }
    doc.close();
    Ok(doc.finish())
}

/// Path positions (1-based) drawn by the point-to-point view: every
/// `stride`-th pair starting from the first, plus the final pair.
pub fn thinned_positions(len: usize, stride: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..=len).step_by(stride.max(1)).collect();
    if len > 0 && out.last() != Some(&len) {
        out.push(len);
    }
    out
}

/// Point-to-point matching view with one connector per (thinned) path pair.
pub fn render_point_to_point(s1: &Series, s2: &Series, path: &WarpingPath, spec: &RenderSpec) -> Result<String> {
    require_univariate(s1, s2)?;
    if path.shape() != (s1.len(), s2.len()) {
        let (rows, cols) = path.shape();
        return Err(DswError::ShapeMismatch {
            expected_rows: s1.len(),
            expected_cols: s2.len(),
            rows,
            cols,
        });
    }
    let (lo, hi) = value_range(s1.as_slice().iter().chain(s2.as_slice()).copied());
    let layout = SeriesLayout::new(spec, s1.len(), s2.len(), lo, hi);
    let mut doc = Doc::new(spec, &title_for(s1, s2, "point-to-point matching"));
    draw_series(&mut doc, &layout, s1, s2, spec);
    doc.open("connectors");
    for k in thinned_positions(path.len(), spec.stride) {
        connector(&mut doc, &layout, s1, s2, path.at(k), &spec.palette.connector);
    }
    doc.close();
    Ok(doc.finish())
}

/// A polyline drawn over the cost matrix.
#[derive(Debug, Clone, Copy)]
pub struct Overlay<'a> {
    points: &'a [Point],
    role: ColorRole,
}

impl<'a> Overlay<'a> {
    /// Every pair of a warping path.
    pub fn path(path: &'a WarpingPath, role: ColorRole) -> Self {
        Overlay {
            points: path.points(),
            role,
        }
    }

    /// Only the key points of a simplified path.
    pub fn key_points(simplified: &'a SimplifiedPath, role: ColorRole) -> Self {
        Overlay {
            points: simplified.key_points(),
            role,
        }
    }

    pub fn points(&self) -> &[Point] {
        self.points
    }
}

fn check_overlay(points: &[Point], rows: usize, cols: usize) -> Result<()> {
    let (first, last) = match (points.first(), points.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Err(DswError::TooFewKeyPoints),
    };
    if first != Point::new(1, 1) || last.i != rows || last.j != cols {
        return Err(DswError::ShapeMismatch {
            expected_rows: rows,
            expected_cols: cols,
            rows: last.i,
            cols: last.j,
        });
    }
    for w in points.windows(2) {
        if w[1].i < w[0].i || w[1].j < w[0].j {
            return Err(DswError::NonMonotoneEndpoints {
                i0: w[0].i,
                j0: w[0].j,
                i1: w[1].i,
                j1: w[1].j,
            });
        }
    }
    Ok(())
}

/// Light-to-dark blue, linear in `t` clamped to `[0, 1]`.
fn heat(t: f64) -> String {
    const LIGHT: [f64; 3] = [247.0, 251.0, 255.0];
    const DARK: [f64; 3] = [8.0, 48.0, 107.0];
    let t = t.clamp(0.0, 1.0);
    let c: Vec<u8> = LIGHT
        .iter()
        .zip(DARK)
        .map(|(&a, b)| (a + (b - a) * t).round() as u8)
        .collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

/// Cost matrix as a heat map with index `i` running down and `j` running
/// right, overdrawn with polylines through cell centers.
pub fn render_matrix_paths(cost: &CostMatrix, overlays: &[Overlay<'_>], spec: &RenderSpec) -> Result<String> {
    let (rows, cols) = (cost.rows(), cost.cols());
    for o in overlays {
        check_overlay(o.points, rows, cols)?;
    }
    let cw = (spec.width - 2.0 * spec.margin) / cols as f64;
    let ch = (spec.height - 2.0 * spec.margin) / rows as f64;
    let (lo, hi) = cost.range();
    let scale = |c: f64| if hi > lo { (c - lo) / (hi - lo) } else { 0.0 };
    let center = |q: Point| {
        (
            spec.margin + (q.j as f64 - 0.5) * cw,
            spec.margin + (q.i as f64 - 0.5) * ch,
        )
    };

    let mut doc = Doc::new(spec, &format!("cost matrix {rows}x{cols}"));
    doc.open("matrix");
    for i in 1..=rows {
        for j in 1..=cols {
            let style = format!("fill:{};stroke:none", heat(scale(cost.get(i, j))));
            doc.rect(
                spec.margin + (j - 1) as f64 * cw,
                spec.margin + (i - 1) as f64 * ch,
                cw,
                ch,
                &style,
            );
        }
    }
    doc.close();
    doc.open("paths");
    for o in overlays {
        doc.polyline(o.points.iter().map(|&q| center(q)), spec.palette.color(o.role), 2.0);
    }
    doc.close();
    Ok(doc.finish())
}
