//! Fixed-precision number rendering shared by every textual output.

/// Formats `x` with 12 significant digits, trimming trailing zeros.
/// Magnitudes below `1e-6` switch to exponent notation.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if rounded.abs() < 1e-6 || rounded.abs() >= 1e15 {
        format!("{rounded:e}")
    } else {
        format!("{rounded}")
    }
}
