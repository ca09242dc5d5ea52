use std::f64::consts::TAU;

/// Wrap an angle into `[0, 2π)`.
pub fn normalize(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs.
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Argument of `z` in `[0, 2π)`.
pub fn arg(z: num_complex::Complex64) -> f64 {
    normalize(z.arg())
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = normalize(a - b);
    d.min(TAU - d)
}
