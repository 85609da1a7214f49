//! Fit polynomials of increasing degree to noisy samples of cos(x) and show
//! the residual sum of squares shrinking.

use rollekit::poly::{least_squares_fit, residual_sum_of_squares};

fn main() {
    let samples: Vec<(f64, f64)> = (0..200)
        .map(|i| {
            let x = -3.0 + 6.0 * i as f64 / 199.0;
            // deterministic wobble in place of noise
            (x, x.cos() + 1e-3 * (37.0 * x).sin())
        })
        .collect();

    for d in 0..=8 {
        let p = least_squares_fit(&samples, d).expect("enough distinct abscissae");
        println!("d = {d}: RSS = {:.3e}", residual_sum_of_squares(&p, &samples));
    }
    let p = least_squares_fit(&samples, 6).unwrap();
    println!("degree-6 fit: {p}");
}
