/// Shortest decimal string that parses back to the same `f64`.
///
/// Never needs more than 17 significant digits; values with large or tiny
/// magnitude switch to exponent notation to keep fields short.
pub fn fmt_f64(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

#[cfg(test)]
mod tests {
    use super::fmt_f64;

    #[test]
    fn formatting() {
        assert_eq!(fmt_f64(0.0), "0");
        assert_eq!(fmt_f64(640.35), "640.35");
        assert_eq!(fmt_f64(0.1), "0.1");
        assert_eq!(fmt_f64(1e-8), "1e-8");
        assert_eq!(fmt_f64(2.5e20), "2.5e20");
        assert_eq!(fmt_f64(-3.0), "-3");
        let v = 2.5126048967691723;
        assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
    }
}
