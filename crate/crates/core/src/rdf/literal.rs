//! Canonical lexical forms for the numeric and boolean XSD datatypes.
//!
//! Invalid lexical forms are returned unchanged so they still compare by
//! exact text.

use super::term::Literal;
use super::vocab::{XSD_BOOLEAN, XSD_DECIMAL, XSD_DOUBLE, XSD_INTEGER};

pub fn canonical_literal(lit: &Literal) -> Literal {
    let lexical = match lit.datatype.as_str() {
        XSD_INTEGER => canonical_integer(&lit.lexical),
        XSD_DECIMAL => canonical_decimal(&lit.lexical),
        XSD_DOUBLE => canonical_double(&lit.lexical),
        XSD_BOOLEAN => canonical_boolean(&lit.lexical),
        _ => None,
    };
    match lexical {
        Some(lexical) => Literal {
            lexical,
            datatype: lit.datatype.clone(),
            language: None,
        },
        None => lit.clone(),
    }
}

fn split_sign(s: &str) -> (bool, &str) {
    match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    }
}

fn all_digits(s: &str) -> bool {
    s.bytes().all(|b| b.is_ascii_digit())
}

/// `"+007"` → `"7"`, `"-0"` → `"0"`.
pub fn canonical_integer(lexical: &str) -> Option<String> {
    let (negative, digits) = split_sign(lexical);
    if digits.is_empty() || !all_digits(digits) {
        return None;
    }
    let trimmed = digits.trim_start_matches('0');
    Some(match (trimmed.is_empty(), negative) {
        (true, _) => "0".to_string(),
        (false, true) => format!("-{trimmed}"),
        (false, false) => trimmed.to_string(),
    })
}

/// Decimal point always present with at least one digit on each side:
/// `"01.50"` → `"1.5"`, `"2"` → `"2.0"`, `"-.0"` → `"0.0"`.
pub fn canonical_decimal(lexical: &str) -> Option<String> {
    let (negative, body) = split_sign(lexical);
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if (int_part.is_empty() && frac_part.is_empty()) || !all_digits(int_part) || !all_digits(frac_part) {
        return None;
    }
    let int_part = match int_part.trim_start_matches('0') {
        "" => "0",
        s => s,
    };
    let frac_part = match frac_part.trim_end_matches('0') {
        "" => "0",
        s => s,
    };
    let zero = int_part == "0" && frac_part == "0";
    let sign = if negative && !zero { "-" } else { "" };
    Some(format!("{sign}{int_part}.{frac_part}"))
}

fn valid_double_lexical(s: &str) -> bool {
    let (_, body) = split_sign(s);
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], Some(&body[i + 1..])),
        None => (body, None),
    };
    let mantissa_ok = match mantissa.split_once('.') {
        Some((i, f)) => !(i.is_empty() && f.is_empty()) && all_digits(i) && all_digits(f),
        None => !mantissa.is_empty() && all_digits(mantissa),
    };
    let exponent_ok = exponent.is_none_or(|e| {
        let (_, digits) = split_sign(e);
        !digits.is_empty() && all_digits(digits)
    });
    mantissa_ok && exponent_ok
}

/// Scientific notation with one leading digit: `"150"` → `"1.5E2"`,
/// `"1e0"` → `"1.0E0"`, plus `INF`, `-INF`, `NaN`.
pub fn canonical_double(lexical: &str) -> Option<String> {
    match lexical {
        "INF" | "+INF" => return Some("INF".into()),
        "-INF" => return Some("-INF".into()),
        "NaN" => return Some("NaN".into()),
        _ => {}
    }
    if !valid_double_lexical(lexical) {
        return None;
    }
    let value: f64 = lexical.parse().ok()?;
    if value.is_infinite() {
        return Some(if value > 0.0 { "INF" } else { "-INF" }.into());
    }
    let formatted = format!("{value:e}");
    let (mantissa, exponent) = formatted.split_once('e').expect("{:e} always has an exponent");
    let mantissa = if mantissa.contains('.') {
        mantissa.to_string()
    } else {
        format!("{mantissa}.0")
    };
    Some(format!("{mantissa}E{exponent}"))
}

pub fn canonical_boolean(lexical: &str) -> Option<String> {
    match lexical {
        "true" | "1" => Some("true".into()),
        "false" | "0" => Some("false".into()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers() {
        assert_eq!(canonical_integer("01").as_deref(), Some("1"));
        assert_eq!(canonical_integer("+0042").as_deref(), Some("42"));
        assert_eq!(canonical_integer("-0").as_deref(), Some("0"));
        assert_eq!(canonical_integer("-010").as_deref(), Some("-10"));
        assert_eq!(
            canonical_integer("000123456789012345678901234567890").as_deref(),
            Some("123456789012345678901234567890")
        );
        assert_eq!(canonical_integer("1.0"), None);
        assert_eq!(canonical_integer(""), None);
        assert_eq!(canonical_integer("+"), None);
    }

    #[test]
    fn decimals() {
        assert_eq!(canonical_decimal("01.50").as_deref(), Some("1.5"));
        assert_eq!(canonical_decimal("2").as_deref(), Some("2.0"));
        assert_eq!(canonical_decimal(".5").as_deref(), Some("0.5"));
        assert_eq!(canonical_decimal("-0.00").as_deref(), Some("0.0"));
        assert_eq!(canonical_decimal("+3.").as_deref(), Some("3.0"));
        assert_eq!(canonical_decimal("1e3"), None);
        assert_eq!(canonical_decimal("."), None);
    }

    #[test]
    fn doubles() {
        assert_eq!(canonical_double("1e0").as_deref(), Some("1.0E0"));
        assert_eq!(canonical_double("150").as_deref(), Some("1.5E2"));
        assert_eq!(canonical_double("1.50E2").as_deref(), Some("1.5E2"));
        assert_eq!(canonical_double("-0.001").as_deref(), Some("-1.0E-3"));
        assert_eq!(canonical_double("0").as_deref(), Some("0.0E0"));
        assert_eq!(canonical_double("+INF").as_deref(), Some("INF"));
        assert_eq!(canonical_double("inf"), None);
        assert_eq!(canonical_double("1e"), None);
    }

    #[test]
    fn booleans() {
        assert_eq!(canonical_boolean("1").as_deref(), Some("true"));
        assert_eq!(canonical_boolean("false").as_deref(), Some("false"));
        assert_eq!(canonical_boolean("TRUE"), None);
    }
}
