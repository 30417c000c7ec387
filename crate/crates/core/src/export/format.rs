/// C `printf("%.17g", x)`: 17 significant digits, trailing zeros removed,
/// exponent form when the decimal exponent is below −4 or at least 17.
pub fn format_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    const PRECISION: i32 = 17;
    // exact decimal rounding to 17 significant digits
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let mut out = String::from(sign);
    if !(-4..PRECISION).contains(&exp) {
        let rest = digits[1..].trim_end_matches('0');
        out.push_str(&digits[..1]);
        if !rest.is_empty() {
            out.push('.');
            out.push_str(rest);
        }
        out.push('e');
        out.push(if exp < 0 { '-' } else { '+' });
        out.push_str(&format!("{:02}", exp.abs()));
    } else if exp >= 0 {
        let split = exp as usize + 1;
        out.push_str(&digits[..split]);
        let frac = digits[split..].trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
    } else {
        out.push_str("0.");
        out.push_str(&"0".repeat((-exp - 1) as usize));
        out.push_str(digits.trim_end_matches('0'));
    }
    out
}

/// 64-bit FNV-1a hash.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0100_0000_01b3;
    bytes.iter().fold(OFFSET, |h, &b| (h ^ u64::from(b)).wrapping_mul(PRIME))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf() {
        // reference strings from C printf("%.17g")
        let cases = [
            (0.1, "0.10000000000000001"),
            (1.0, "1"),
            (1e-5, "1.0000000000000001e-05"),
            (1.2345678901234568e17, "1.2345678901234568e+17"),
            (1e17, "1e+17"),
            (1e16, "10000000000000000"),
            (-0.0, "-0"),
            (0.0, "0"),
            (2.5e-300, "2.5e-300"),
            (3.0, "3"),
            (1.0 / 3.0, "0.33333333333333331"),
            (1e22, "1e+22"),
            (0.0001, "0.0001"),
            (1.234e-5, "1.234e-05"),
            (1.2345678901234568e16, "12345678901234568"),
            (-2.75, "-2.75"),
        ];
        for (x, want) in cases {
            assert_eq!(format_g17(x), want, "{x:e}");
        }
        assert_eq!(format_g17(f64::INFINITY), "inf");
        assert_eq!(format_g17(f64::NAN), "nan");
    }

    #[test]
    fn round_trips() {
        for x in [0.1, 1.0 / 3.0, 6.02214076e23, -1.602176634e-19, f64::MAX, f64::MIN_POSITIVE, 5e-324] {
            assert_eq!(format_g17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn fnv_reference_values() {
        assert_eq!(fnv1a64(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a64(b"a"), 0xaf63dc4c8601ec8c);
        assert_eq!(fnv1a64(b"foobar"), 0x85944171f73967e8);
    }
}
