//! Bracketed root finding: grid scan for sign changes, bisection, then a
//! safeguarded Newton polish that never leaves the bracket.

/// Controls for [`find_all_roots`].
#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    /// Number of grid points (inclusive of both ends).
    pub grid_count: usize,
    /// Bracket width at which bisection hands over to Newton.
    pub bisect_tol: f64,
    /// Roots closer than this are merged.
    pub dedup_tol: f64,
    pub max_newton: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            grid_count: 2000,
            bisect_tol: 1e-6,
            dedup_tol: 1e-8,
            max_newton: 60,
        }
    }
}

/// All roots of `g` strictly inside `(lo, hi)` that show up as sign changes
/// (or exact zeros) on a uniform grid, sorted ascending.
///
/// `dg` is the derivative of `g` and is only used for the polishing stage.
pub fn find_all_roots<G, D, E>(
    mut g: G,
    mut dg: D,
    lo: f64,
    hi: f64,
    opts: &ScanOptions,
) -> Result<Vec<f64>, E>
where
    G: FnMut(f64) -> Result<f64, E>,
    D: FnMut(f64) -> Result<f64, E>,
{
    let count = opts.grid_count.max(2);
    let width = hi - lo;
    let grid = |i: usize| {
        if i == count - 1 {
            hi
        } else {
            lo + width * i as f64 / (count - 1) as f64
        }
    };

    let mut roots = Vec::new();
    let mut prev_x = grid(0);
    let mut prev_g = g(prev_x)?;
    for i in 1..count {
        let x = grid(i);
        let gx = g(x)?;
        if gx == 0.0 {
            if i < count - 1 {
                roots.push(x);
            }
        } else if prev_g != 0.0 && (prev_g < 0.0) != (gx < 0.0) {
            roots.push(refine(&mut g, &mut dg, prev_x, prev_g, x, opts)?);
        }
        prev_x = x;
        prev_g = gx;
    }

    roots.retain(|r| *r > lo && *r < hi);
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|b, a| (*b - *a).abs() < opts.dedup_tol);
    Ok(roots)
}

fn refine<G, D, E>(
    g: &mut G,
    dg: &mut D,
    mut a: f64,
    ga: f64,
    mut b: f64,
    opts: &ScanOptions,
) -> Result<f64, E>
where
    G: FnMut(f64) -> Result<f64, E>,
    D: FnMut(f64) -> Result<f64, E>,
{
    let a_negative = ga < 0.0;
    while b - a > opts.bisect_tol {
        let m = 0.5 * (a + b);
        let gm = g(m)?;
        if gm == 0.0 {
            return Ok(m);
        }
        if (gm < 0.0) == a_negative {
            a = m;
        } else {
            b = m;
        }
    }

    let mut x = 0.5 * (a + b);
    let mut best = (f64::INFINITY, x);
    for _ in 0..opts.max_newton {
        let gx = g(x)?;
        if gx.abs() < best.0 {
            best = (gx.abs(), x);
        }
        if gx == 0.0 {
            break;
        }
        if (gx < 0.0) == a_negative {
            a = x;
        } else {
            b = x;
        }
        let slope = dg(x)?;
        let mut next = x - gx / slope;
        if !next.is_finite() || next <= a || next >= b {
            next = 0.5 * (a + b);
        }
        if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
            x = next;
            let gn = g(x)?;
            if gn.abs() < best.0 {
                best = (gn.abs(), x);
            }
            break;
        }
        x = next;
    }
    Ok(best.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::convert::Infallible;

    fn ok(v: f64) -> Result<f64, Infallible> {
        Ok(v)
    }

    #[test]
    fn finds_every_sine_root() {
        let roots = find_all_roots(
            |x: f64| ok(x.sin()),
            |x: f64| ok(x.cos()),
            0.5,
            10.0,
            &ScanOptions::default(),
        )
        .unwrap();
        let want = [std::f64::consts::PI, 2.0 * std::f64::consts::PI, 3.0 * std::f64::consts::PI];
        assert_eq!(roots.len(), 3);
        for (r, w) in roots.iter().zip(want) {
            assert!((r - w).abs() < 1e-14, "{r} vs {w}");
        }
    }

    #[test]
    fn endpoints_are_excluded() {
        let roots = find_all_roots(
            |x: f64| ok(x * (x - 1.0)),
            |x: f64| ok(2.0 * x - 1.0),
            0.0,
            1.0,
            &ScanOptions::default(),
        )
        .unwrap();
        assert!(roots.is_empty());
    }

    #[test]
    fn grid_hit_counts_once() {
        let opts = ScanOptions {
            grid_count: 5,
            ..ScanOptions::default()
        };
        let roots =
            find_all_roots(|x: f64| ok(x - 0.5), |_| ok(1.0), 0.0, 1.0, &opts).unwrap();
        assert_eq!(roots, vec![0.5]);
    }

    #[test]
    fn newton_stays_in_bracket_for_flat_function() {
        // derivative vanishes at the root; polishing falls back to bisection
        let roots = find_all_roots(
            |x: f64| ok((x - 0.3).powi(3)),
            |x: f64| ok(3.0 * (x - 0.3).powi(2)),
            0.0,
            1.0,
            &ScanOptions::default(),
        )
        .unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - 0.3).abs() < 1e-5);
    }

    #[test]
    fn errors_propagate() {
        let out: Result<Vec<f64>, &str> =
            find_all_roots(|_| Err("boom"), |_| Ok(1.0), 0.0, 1.0, &ScanOptions::default());
        assert_eq!(out, Err("boom"));
    }
}
