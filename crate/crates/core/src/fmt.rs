//! Locale-free number formatting for CSV output.

/// `%.17g`: 17 significant digits, trailing zeros trimmed, fixed notation for
/// decimal exponents in `[-5, 17)`.
pub fn csv_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        trim_zeros(format!("{:.*}", (16 - exp) as usize, x))
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa.to_string()), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

/// Empty field for `None`.
pub fn csv_opt(x: Option<f64>) -> String {
    x.map(csv_float).unwrap_or_default()
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g17() {
        assert_eq!(csv_float(0.1), "0.10000000000000001");
        assert_eq!(csv_float(3.0), "3");
        assert_eq!(csv_float(-2.5), "-2.5");
        assert_eq!(csv_float(1e-7), "9.9999999999999995e-08");
        assert_eq!(csv_float(1e20), "1e+20");
        assert_eq!(csv_float(6.0 + 4.0 * 2f64.sqrt()), "11.65685424949238");
        assert_eq!(csv_opt(None), "");
    }

    #[test]
    fn round_trips() {
        for x in [0.1, 1.0 / 3.0, 2.0f64.sqrt(), 1e-300, 123456789.123, 7.0 / 3.0] {
            assert_eq!(csv_float(x).parse::<f64>().unwrap(), x);
        }
    }
}
