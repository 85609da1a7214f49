//! Classical fourth-order Runge-Kutta for scalar initial-value problems.

/// One RK4 step of size `h` from `(x, y)` for `y' = f(x, y)`.
pub fn rk4_step<F, E>(f: &mut F, x: f64, y: f64, h: f64) -> Result<f64, E>
where
    F: FnMut(f64, f64) -> Result<f64, E>,
{
    let half = 0.5 * h;
    let k1 = f(x, y)?;
    let k2 = f(x + half, y + half * k1)?;
    let k3 = f(x + half, y + half * k2)?;
    let k4 = f(x + h, y + h * k3)?;
    Ok(y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
}

/// Integrates from `x0` to `x1` with `n` equal steps, returning the
/// `n + 1` grid values including the start.
pub fn rk4_fixed<F, E>(mut f: F, x0: f64, y0: f64, x1: f64, n: usize) -> Result<Vec<(f64, f64)>, E>
where
    F: FnMut(f64, f64) -> Result<f64, E>,
{
    let mut out = Vec::with_capacity(n + 1);
    out.push((x0, y0));
    let h = (x1 - x0) / n.max(1) as f64;
    let (mut x, mut y) = (x0, y0);
    for i in 1..=n {
        let next = if i == n { x1 } else { x0 + i as f64 * h };
        y = rk4_step(&mut f, x, y, next - x)?;
        x = next;
        out.push((x, y));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::convert::Infallible;

    #[test]
    fn exponential_growth_is_fourth_order() {
        let err = |n: usize| {
            let path = rk4_fixed(|_, y| Ok::<_, Infallible>(y), 0.0, 1.0, 1.0, n).unwrap();
            (path[n].1 - 1f64.exp()).abs()
        };
        let ratio = err(20) / err(40);
        assert!((ratio - 16.0).abs() < 1.0, "ratio {ratio}");
        assert!(err(1000) < 1e-12);
    }

    #[test]
    fn zero_field_is_constant() {
        let path = rk4_fixed(|_, _| Ok::<_, Infallible>(0.0), 0.0, 2.5, -3.0, 7).unwrap();
        assert!(path.iter().all(|&(_, y)| y == 2.5));
        assert_eq!(path.last().unwrap().0, -3.0);
    }

    #[test]
    fn backward_integration() {
        let path = rk4_fixed(|x, _| Ok::<_, Infallible>(x.cos()), 1.0, 1f64.sin(), 0.0, 200).unwrap();
        assert!(path[200].1.abs() < 1e-12);
    }
}
