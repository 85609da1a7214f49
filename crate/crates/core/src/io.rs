//! File formats: trajectory and error CSVs, polynomial coefficient CSV, and
//! single-series SVG line charts.
//!
//! Floating-point fields in CSV output carry 17 significant digits so every
//! value reads back bit-exactly.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::poly::Polynomial;
use crate::rolle::{GuardBand, Reconstruction, ReconstructionRow};

pub const TRAJECTORY_HEADER: &str = "x,xi,delta_reconstructed,delta_true,abs_diff";
pub const ERROR_HEADER: &str = "x,err_before,err_after";
pub const POLYNOMIAL_HEADER: &str = "power,coefficient";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: expected header `{expected}`, found `{found}`")]
    Header {
        line: usize,
        expected: String,
        found: String,
    },
    #[error("line {line}: expected {expected} fields, found {found}")]
    FieldCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: cannot parse `{text}` as a number")]
    Number { line: usize, text: String },
}

/// `v` with 17 significant digits.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes the trajectory table. Guard bands show up as a
/// `# guard node=<v> [a,b]` comment between the rows on either side.
pub fn write_trajectory_csv<W: Write>(
    mut w: W,
    recon: &Reconstruction,
    guard_bands: &[GuardBand],
) -> io::Result<()> {
    writeln!(w, "{TRAJECTORY_HEADER}")?;
    let mut bands = guard_bands.iter().peekable();
    for row in &recon.rows {
        while let Some(band) = bands.peek() {
            if row.x > band.node {
                writeln!(
                    w,
                    "# guard node={} [{},{}]",
                    fmt17(band.node),
                    fmt17(band.lo),
                    fmt17(band.hi)
                )?;
                bands.next();
            } else {
                break;
            }
        }
        writeln!(
            w,
            "{},{},{},{},{}",
            fmt17(row.x),
            fmt17(row.xi),
            fmt17(row.delta_reconstructed),
            fmt17(row.delta_true),
            fmt17(row.abs_diff)
        )?;
    }
    Ok(())
}

/// A parsed trajectory CSV: rows plus the guard comments in file order.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryTable {
    pub rows: Vec<ReconstructionRow>,
    pub guard_nodes: Vec<f64>,
}

pub fn read_trajectory_csv<R: BufRead>(r: R) -> Result<TrajectoryTable, FormatError> {
    let mut rows = Vec::new();
    let mut guard_nodes = Vec::new();
    for (_, fields) in read_table(r, TRAJECTORY_HEADER, 5, |comment| {
        if let Some(rest) = comment.strip_prefix("# guard node=") {
            if let Some(value) = rest.split_whitespace().next() {
                if let Ok(v) = value.parse() {
                    guard_nodes.push(v);
                }
            }
        }
    })? {
        rows.push(ReconstructionRow {
            x: fields[0],
            xi: fields[1],
            delta_reconstructed: fields[2],
            delta_true: fields[3],
            abs_diff: fields[4],
        });
    }
    Ok(TrajectoryTable { rows, guard_nodes })
}

pub fn write_error_csv<W: Write>(mut w: W, rows: &[(f64, f64, f64)]) -> io::Result<()> {
    writeln!(w, "{ERROR_HEADER}")?;
    for &(x, before, after) in rows {
        writeln!(w, "{},{},{}", fmt17(x), fmt17(before), fmt17(after))?;
    }
    Ok(())
}

pub fn read_error_csv<R: BufRead>(r: R) -> Result<Vec<(f64, f64, f64)>, FormatError> {
    Ok(read_table(r, ERROR_HEADER, 3, |_| {})?
        .into_iter()
        .map(|(_, f)| (f[0], f[1], f[2]))
        .collect())
}

/// Ascending coefficients, one `power,coefficient` row each.
pub fn write_polynomial_csv<W: Write>(mut w: W, p: &Polynomial) -> io::Result<()> {
    writeln!(w, "{POLYNOMIAL_HEADER}")?;
    for (k, c) in p.coeffs().iter().enumerate() {
        writeln!(w, "{k},{}", fmt17(*c))?;
    }
    Ok(())
}

pub fn read_polynomial_csv<R: BufRead>(r: R) -> Result<Polynomial, FormatError> {
    let table = read_table(r, POLYNOMIAL_HEADER, 2, |_| {})?;
    let mut coeffs = vec![0.0; table.len()];
    for (line, f) in table {
        let k = f[0] as usize;
        if f[0] != k as f64 || k >= coeffs.len() {
            return Err(FormatError::Number {
                line,
                text: f[0].to_string(),
            });
        }
        coeffs[k] = f[1];
    }
    Ok(Polynomial::new(coeffs))
}

fn read_table<R: BufRead>(
    r: R,
    header: &str,
    width: usize,
    mut on_comment: impl FnMut(&str),
) -> Result<Vec<(usize, Vec<f64>)>, FormatError> {
    let mut out = Vec::new();
    let mut seen_header = false;
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        if text.starts_with('#') {
            on_comment(text);
            continue;
        }
        if !seen_header {
            if text != header {
                return Err(FormatError::Header {
                    line: lineno,
                    expected: header.into(),
                    found: text.into(),
                });
            }
            seen_header = true;
            continue;
        }
        let fields: Vec<&str> = text.split(',').collect();
        if fields.len() != width {
            return Err(FormatError::FieldCount {
                line: lineno,
                expected: width,
                found: fields.len(),
            });
        }
        let values = fields
            .iter()
            .map(|s| {
                s.trim().parse::<f64>().map_err(|_| FormatError::Number {
                    line: lineno,
                    text: (*s).into(),
                })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        out.push((lineno, values));
    }
    Ok(out)
}

/// Vertical axis scaling for [`line_chart_svg`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log10,
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 420.0;
const MARGIN_L: f64 = 80.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 50.0;
const MAX_PLOT_POINTS: usize = 2000;

/// A static single-series line chart. Each slice in `pieces` is drawn as its
/// own polyline, so gaps (guard bands) stay visible. Non-positive values are
/// dropped on a log axis.
pub fn line_chart_svg(
    title: &str,
    x_label: &str,
    y_label: &str,
    pieces: &[Vec<(f64, f64)>],
    scale: Scale,
) -> String {
    let map_y = |y: f64| match scale {
        Scale::Linear => Some(y),
        Scale::Log10 if y > 0.0 => Some(y.log10()),
        Scale::Log10 => None,
    };
    let total: usize = pieces.iter().map(Vec::len).sum();
    let stride = total.div_ceil(MAX_PLOT_POINTS).max(1);
    let lines: Vec<Vec<(f64, f64)>> = pieces
        .iter()
        .map(|piece| {
            piece
                .iter()
                .enumerate()
                .filter(|(i, _)| i % stride == 0 || *i == piece.len() - 1)
                .filter_map(|(_, &(x, y))| map_y(y).map(|my| (x, my)))
                .filter(|(x, y)| x.is_finite() && y.is_finite())
                .collect()
        })
        .filter(|v: &Vec<(f64, f64)>| !v.is_empty())
        .collect();

    let (mut x_lo, mut x_hi, mut y_lo, mut y_hi) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in lines.iter().flatten() {
        x_lo = x_lo.min(x);
        x_hi = x_hi.max(x);
        y_lo = y_lo.min(y);
        y_hi = y_hi.max(y);
    }
    if !x_lo.is_finite() {
        (x_lo, x_hi, y_lo, y_hi) = (0.0, 1.0, 0.0, 1.0);
    }
    if x_hi == x_lo {
        x_hi = x_lo + 1.0;
    }
    if y_hi == y_lo {
        y_lo -= 0.5;
        y_hi += 0.5;
    }
    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = HEIGHT - MARGIN_T - MARGIN_B;
    let px = |x: f64| MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let py = |y: f64| MARGIN_T + (y_hi - y) / (y_hi - y_lo) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">{}</text>\n",
        WIDTH / 2.0,
        escape(title)
    ));
    svg.push_str(&format!(
        "<rect x=\"{MARGIN_L}\" y=\"{MARGIN_T}\" width=\"{plot_w}\" height=\"{plot_h}\" fill=\"none\" stroke=\"#444\"/>\n"
    ));
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let xv = x_lo + t * (x_hi - x_lo);
        let yv = y_lo + t * (y_hi - y_lo);
        let y_text = match scale {
            Scale::Linear => format!("{yv:.4}"),
            Scale::Log10 => format!("1e{yv:.1}"),
        };
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{xv:.3}</text>\n",
            px(xv),
            HEIGHT - MARGIN_B + 16.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{y_text}</text>\n",
            MARGIN_L - 6.0,
            py(yv) + 4.0
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">{}</text>\n",
        MARGIN_L + plot_w / 2.0,
        HEIGHT - 10.0,
        escape(x_label)
    ));
    svg.push_str(&format!(
        "<text x=\"16\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{}</text>\n",
        MARGIN_T + plot_h / 2.0,
        MARGIN_T + plot_h / 2.0,
        escape(y_label)
    ));
    for line in &lines {
        let pts: Vec<String> = line
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            pts.join(" ")
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Splits `(x, y)` points at guard bands so plots leave a gap there.
pub fn split_at_bands(points: &[(f64, f64)], bands: &[GuardBand]) -> Vec<Vec<(f64, f64)>> {
    let mut pieces = vec![Vec::new()];
    let mut next_band = 0;
    for &(x, y) in points {
        while next_band < bands.len() && x > bands[next_band].node {
            next_band += 1;
            if !pieces.last().unwrap().is_empty() {
                pieces.push(Vec::new());
            }
        }
        pieces.last_mut().unwrap().push((x, y));
    }
    pieces
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_recon() -> Reconstruction {
        let rows = [0.1, 0.2, 0.4, 0.5]
            .iter()
            .map(|&x| ReconstructionRow {
                x,
                xi: 1.0 / 3.0 + x,
                delta_reconstructed: x * 1e-7,
                delta_true: x * 1e-7 + 1e-20,
                abs_diff: 1e-20,
            })
            .collect();
        Reconstruction {
            rows,
            max_abs_diff: 1e-20,
        }
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt17(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt17(-2.0), "-2.0000000000000000e0");
        let v = 1.0 / 3.0;
        assert_eq!(fmt17(v).parse::<f64>().unwrap(), v);
    }

    #[test]
    fn trajectory_csv_with_guard_comment() {
        let band = GuardBand {
            node: 0.3,
            lo: 0.25,
            hi: 0.35,
        };
        let mut buf = Vec::new();
        write_trajectory_csv(&mut buf, &sample_recon(), &[band]).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], TRAJECTORY_HEADER);
        assert!(lines[3].starts_with("# guard node=2.9999999999999999e-1 ["));
        let table = read_trajectory_csv(buf.as_slice()).unwrap();
        assert_eq!(table.rows, sample_recon().rows);
        assert_eq!(table.guard_nodes, vec![0.3]);
    }

    #[test]
    fn rejects_wrong_header_and_width() {
        let bad = "x,y\n1,2\n";
        assert!(matches!(
            read_error_csv(bad.as_bytes()),
            Err(FormatError::Header { line: 1, .. })
        ));
        let bad = "x,err_before,err_after\n1,2\n";
        assert!(matches!(
            read_error_csv(bad.as_bytes()),
            Err(FormatError::FieldCount { line: 2, expected: 3, found: 2 })
        ));
        let bad = "x,err_before,err_after\n1,2,abc\n";
        assert!(matches!(
            read_error_csv(bad.as_bytes()),
            Err(FormatError::Number { line: 2, .. })
        ));
    }

    #[test]
    fn polynomial_csv_round_trip() {
        let p = Polynomial::new(vec![0.1, -1.0 / 7.0, 0.0, 3e-200]);
        let mut buf = Vec::new();
        write_polynomial_csv(&mut buf, &p).unwrap();
        assert_eq!(read_polynomial_csv(buf.as_slice()).unwrap(), p);
    }

    #[test]
    fn svg_has_one_polyline_per_piece() {
        let pts: Vec<(f64, f64)> = (0..100).map(|i| (i as f64, (i as f64 + 1.0) * 1e-12)).collect();
        let bands = [GuardBand {
            node: 49.5,
            lo: 49.0,
            hi: 50.0,
        }];
        let pieces = split_at_bands(&pts, &bands);
        assert_eq!(pieces.len(), 2);
        let svg = line_chart_svg("err <x>", "x", "|diff|", &pieces, Scale::Log10);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("err &lt;x&gt;"));
    }

    #[test]
    fn svg_survives_empty_and_flat_data() {
        let svg = line_chart_svg("t", "x", "y", &[vec![(0.0, 0.0), (1.0, 0.0)]], Scale::Log10);
        assert_eq!(svg.matches("<polyline").count(), 0);
        let svg = line_chart_svg("t", "x", "y", &[vec![(0.0, 2.0), (1.0, 2.0)]], Scale::Linear);
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(!svg.contains("NaN"));
    }
}
