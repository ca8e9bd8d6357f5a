//! C99-style hexadecimal float literals (`0x1.921fb54442d18p+1`), so plan
//! angles survive a text round trip bit for bit.

/// Formats a finite `f64` as a hexadecimal float literal.
pub fn format(x: f64) -> String {
    assert!(x.is_finite(), "hex float formatting needs a finite value");
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { "-" } else { "" };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let mant = bits & ((1u64 << 52) - 1);
    if exp == 0 && mant == 0 {
        return format!("{sign}0x0p+0");
    }
    let (lead, e) = if exp == 0 {
        (0, -1022)
    } else {
        (1, exp - 1023)
    };
    let digits = format!("{mant:013x}");
    let digits = digits.trim_end_matches('0');
    if digits.is_empty() {
        format!("{sign}0x{lead}p{e:+}")
    } else {
        format!("{sign}0x{lead}.{digits}p{e:+}")
    }
}

/// Parses a hexadecimal float literal; falls back to decimal notation.
pub fn parse(s: &str) -> Option<f64> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let Some(hex) = body.strip_prefix("0x").or_else(|| body.strip_prefix("0X")) else {
        return s.parse().ok();
    };
    let (mantissa, exp) = hex.split_once(['p', 'P'])?;
    let exp: i32 = exp.parse().ok()?;
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() || int_part.len() + frac_part.len() > 14 {
        return None;
    }
    let mut acc: u64 = 0;
    for c in int_part.chars().chain(frac_part.chars()) {
        acc = acc.checked_mul(16)? + u64::from(c.to_digit(16)?);
    }
    if acc >= 1u64 << 53 {
        return None;
    }
    let value = scale(acc as f64, exp - 4 * frac_part.len() as i32);
    Some(if neg { -value } else { value })
}

/// `x * 2^e` without intermediate overflow or underflow of the factor.
fn scale(mut x: f64, mut e: i32) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e)
}
