use sphtet::Complex;

/// Twelve significant digits, fixed notation for ordinary magnitudes.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        format!("{:.*}", (11 - exp) as usize, x)
    } else {
        format!("{x:.11e}")
    }
}

pub fn complex12(z: Complex<f64>) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}i", sig12(z.re), sig12(z.im.abs()))
}

pub fn join12(values: &[f64]) -> String {
    values.iter().map(|&v| sig12(v)).collect::<Vec<_>>().join(" ")
}
