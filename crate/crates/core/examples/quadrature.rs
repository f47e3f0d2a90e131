//! Adaptive Gauss-Legendre quadrature on intervals and the half line.

use riesz_matvar::quadrature::{integrate, integrate_endpoint_smoothed, integrate_half_line};

fn main() {
    let q = integrate(|x| x.sin(), 0.0, std::f64::consts::PI, 1e-12);
    println!("∫ sin on [0, π] = {:.15} ({} evaluations)", q.value, q.evaluations);

    let q = integrate_endpoint_smoothed(|x| x.powf(-0.7), 0.0, 1.0, 1e-10);
    println!("∫ x^-0.7 on [0, 1] = {:.12}, exact {:.12}", q.value, 1.0 / 0.3);

    let q = integrate_half_line(|x| (-x).exp() * x.powf(1.5), 0.0, 1e-10);
    println!("∫ x^1.5 e^-x on [0, ∞) = {:.12}, exact {:.12}", q.value, 0.75 * std::f64::consts::PI.sqrt());
}
