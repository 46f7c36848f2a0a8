//! CSV and SVG emission for sampled leaves.

use crate::error::{Error, Result};
use std::io::Write;
use std::path::Path;

/// One sampled leaf, labelled by its parameters.
#[derive(Debug, Clone)]
pub struct LeafCurve {
    pub t: f64,
    pub c: f64,
    pub points: Vec<(f64, f64)>,
}

/// Decimal text with 17 significant digits: enough to round-trip any f64.
pub fn format_value(v: f64) -> String {
    // Normalize the sign of zero so identical values print identically.
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

/// Writes leaves as CSV with header `t,c,x,y`, rows in (t, c, x) order,
/// comma-separated, LF line endings, UTF-8.
pub fn write_leaves_csv(path: &Path, curves: &[LeafCurve]) -> Result<()> {
    let mut body = String::from("t,c,x,y\n");
    for curve in curves {
        for &(x, y) in &curve.points {
            body.push_str(&format!(
                "{},{},{},{}\n",
                format_value(curve.t),
                format_value(curve.c),
                format_value(x),
                format_value(y)
            ));
        }
    }
    write_file(path, body.as_bytes())
}

/// Writes a minimal static SVG polyline plot: one path per leaf, viewbox
/// fitted to the data with a small margin.
pub fn write_leaves_svg(path: &Path, curves: &[LeafCurve]) -> Result<()> {
    const WIDTH: f64 = 800.0;
    const HEIGHT: f64 = 600.0;
    const PALETTE: [&str; 6] = [
        "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
    ];

    let all: Vec<(f64, f64)> = curves
        .iter()
        .flat_map(|c| c.points.iter().copied())
        .collect();
    let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &all {
        x_min = x_min.min(x);
        x_max = x_max.max(x);
        y_min = y_min.min(y);
        y_max = y_max.max(y);
    }
    if all.is_empty() {
        (x_min, x_max, y_min, y_max) = (0.0, 1.0, 0.0, 1.0);
    }
    let x_span = (x_max - x_min).max(f64::MIN_POSITIVE);
    let y_span = (y_max - y_min).max(f64::MIN_POSITIVE);
    let margin = 0.05;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         fill=\"white\"/>\n"
    ));
    for (i, curve) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut points = String::new();
        for &(x, y) in &curve.points {
            let px = (margin + (1.0 - 2.0 * margin) * (x - x_min) / x_span) * WIDTH;
            // SVG y grows downward.
            let py = (1.0 - margin - (1.0 - 2.0 * margin) * (y - y_min) / y_span) * HEIGHT;
            points.push_str(&format!("{px:.2},{py:.2} "));
        }
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" \
             points=\"{}\"/>\n",
            points.trim_end()
        ));
    }
    svg.push_str("</svg>\n");
    write_file(path, svg.as_bytes())
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut file = std::fs::File::create(path)
        .map_err(|e| Error::domain(format!("cannot write {}: {e}", path.display())))?;
    file.write_all(bytes)
        .map_err(|e| Error::domain(format!("cannot write {}: {e}", path.display())))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(format_value(1.0 / 750.0), "1.3333333333333333e-3");
        assert_eq!(format_value(0.0), "0.0000000000000000e0");
        assert_eq!(format_value(-0.0), "0.0000000000000000e0");
        // Round trip.
        for &v in &[1.0 / 3.0, 2.5e-14, -7.75, 6.02e23] {
            let parsed: f64 = format_value(v).parse().unwrap();
            assert_eq!(parsed, v);
        }
    }

    #[test]
    fn csv_layout() {
        let dir = std::env::temp_dir().join("cantorfield_export_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("leaves.csv");
        let curves = vec![LeafCurve {
            t: 0.0,
            c: 0.0,
            points: vec![(0.0, 0.0), (1.0, 2.0)],
        }];
        write_leaves_csv(&path, &curves).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("t,c,x,y"));
        assert_eq!(
            lines.next(),
            Some("0.0000000000000000e0,0.0000000000000000e0,0.0000000000000000e0,0.0000000000000000e0")
        );
        assert!(text.ends_with('\n'));
        // Header-only when no curves are given.
        write_leaves_csv(&path, &[]).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "t,c,x,y\n");
    }

    #[test]
    fn svg_contains_a_polyline_per_leaf() {
        let dir = std::env::temp_dir().join("cantorfield_export_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("leaves.svg");
        let curves = vec![
            LeafCurve {
                t: 0.0,
                c: 0.0,
                points: vec![(0.0, 0.0), (1.0, 1.0)],
            },
            LeafCurve {
                t: 1.0,
                c: 0.5,
                points: vec![(0.0, 0.5), (1.0, 0.7)],
            },
        ];
        write_leaves_svg(&path, &curves).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.matches("<polyline").count(), 2);
        assert!(text.starts_with("<svg"));
    }
}
