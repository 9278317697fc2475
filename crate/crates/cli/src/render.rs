//! Text serializations of boundary curves.

use std::fmt::Write;

use qheine_core::geomtest::BoundaryCurve;

/// Canvas side in pixels.
pub const SVG_SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;

/// `theta,re,im` rows with 17 significant digits.
pub fn curve_csv(curve: &BoundaryCurve) -> String {
    let mut out = String::from("theta,re,im\n");
    for (k, w) in curve.samples.iter().enumerate() {
        writeln!(out, "{:.16e},{:.16e},{:.16e}", curve.theta(k), w.re, w.im).unwrap();
    }
    out
}

/// Parses the output of [`curve_csv`] back into `(theta, re, im)` rows.
pub fn parse_curve_csv(text: &str) -> Result<Vec<[f64; 3]>, String> {
    let mut lines = text.lines();
    if lines.next() != Some("theta,re,im") {
        return Err("missing header".into());
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let fields: Vec<f64> = line
                .split(',')
                .map(str::parse)
                .collect::<Result<_, _>>()
                .map_err(|e| format!("row {i}: {e}"))?;
            <[f64; 3]>::try_from(fields).map_err(|_| format!("row {i}: expected 3 fields"))
        })
        .collect()
}

/// One closed polyline with both axes, equal-aspect scaled into 800×800.
pub fn curve_svg(curve: &BoundaryCurve, title: &str) -> String {
    let (mut x0, mut x1, mut y0, mut y1) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for w in &curve.samples {
        x0 = x0.min(w.re);
        x1 = x1.max(w.re);
        y0 = y0.min(w.im);
        y1 = y1.max(w.im);
    }
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let scale = (SVG_SIZE - 2.0 * MARGIN) / span;
    // center the data box
    let ox = MARGIN + (SVG_SIZE - 2.0 * MARGIN - (x1 - x0) * scale) / 2.0;
    let oy = MARGIN + (SVG_SIZE - 2.0 * MARGIN - (y1 - y0) * scale) / 2.0;
    let px = |x: f64| ox + (x - x0) * scale;
    let py = |y: f64| SVG_SIZE - (oy + (y - y0) * scale);

    let mut points = String::new();
    for w in curve.samples.iter().chain(curve.samples.first()) {
        write!(points, "{:.3},{:.3} ", px(w.re), py(w.im)).unwrap();
    }
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = SVG_SIZE
    )
    .unwrap();
    writeln!(out, "<title>{}</title>", escape(title)).unwrap();
    writeln!(
        out,
        r#"<rect width="{s}" height="{s}" fill="white"/>"#,
        s = SVG_SIZE
    )
    .unwrap();
    writeln!(
        out,
        r#"<line class="axis" x1="0" y1="{y:.3}" x2="{s}" y2="{y:.3}" stroke="gray" stroke-width="1"/>"#,
        y = py(0.0),
        s = SVG_SIZE
    )
    .unwrap();
    writeln!(
        out,
        r#"<line class="axis" x1="{x:.3}" y1="0" x2="{x:.3}" y2="{s}" stroke="gray" stroke-width="1"/>"#,
        x = px(0.0),
        s = SVG_SIZE
    )
    .unwrap();
    writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        points.trim_end()
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use qheine_core::geomtest::{boundary_curve, CurveMap};

    #[test]
    fn csv_round_trips() {
        let c = boundary_curve(&CurveMap::Identity, 0.5, 256).unwrap();
        let rows = parse_curve_csv(&curve_csv(&c)).unwrap();
        assert_eq!(rows.len(), 256);
        for (row, w) in rows.iter().zip(&c.samples) {
            assert_eq!(row[1], w.re);
            assert_eq!(row[2], w.im);
        }
    }

    #[test]
    fn svg_has_one_closed_polyline_and_axes() {
        let c = boundary_curve(&CurveMap::Identity, 0.5, 256).unwrap();
        let svg = curve_svg(&c, "circle <r=0.5>");
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches(r#"class="axis""#).count(), 2);
        assert!(svg.contains(r#"width="800" height="800""#));
        let pts: Vec<&str> = svg
            .split("points=\"")
            .nth(1)
            .unwrap()
            .split('"')
            .next()
            .unwrap()
            .split(' ')
            .collect();
        assert_eq!(pts.len(), 257);
        assert_eq!(pts[0], pts[256]);
        assert!(svg.contains("&lt;r=0.5&gt;"));
    }

    #[test]
    fn svg_keeps_aspect() {
        let c = boundary_curve(&CurveMap::Identity, 0.5, 256).unwrap();
        let stretched = c.map(|w| qheine_core::Complex64::new(4.0 * w.re, w.im));
        let svg = curve_svg(&stretched, "ellipse");
        // x spans the drawable width, y a quarter of it
        let coords: Vec<(f64, f64)> = svg
            .split("points=\"")
            .nth(1)
            .unwrap()
            .split('"')
            .next()
            .unwrap()
            .split(' ')
            .map(|p| {
                let (x, y) = p.split_once(',').unwrap();
                (x.parse().unwrap(), y.parse().unwrap())
            })
            .collect();
        let w = coords.iter().map(|p| p.0).fold(f64::MIN, f64::max)
            - coords.iter().map(|p| p.0).fold(f64::MAX, f64::min);
        let h = coords.iter().map(|p| p.1).fold(f64::MIN, f64::max)
            - coords.iter().map(|p| p.1).fold(f64::MAX, f64::min);
        assert!((w / h - 4.0).abs() < 0.01);
    }
}
