//! Text conventions shared by reports and file formats.

/// Formats a double like C's `%.17g`: 17 significant digits, trailing zeros
/// stripped, scientific notation outside `1e-4 <= |x| < 1e17`.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (16 - exp) as usize;
        trim_fraction(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `e` for the empty word, otherwise 1-based indices joined by dashes.
pub fn fmt_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    word.iter().map(|s| (s + 1).to_string()).collect::<Vec<_>>().join("-")
}

/// Inverse of [`fmt_word`]; returns 0-based indices. Range checks against a
/// rank happen where the word is used.
pub fn parse_word(text: &str) -> Result<Vec<usize>, String> {
    let text = text.trim();
    if text == "e" {
        return Ok(Vec::new());
    }
    text.split('-')
        .map(|tok| match tok.parse::<usize>() {
            Ok(0) => Err("generator indices are 1-based".to_string()),
            Ok(i) => Ok(i - 1),
            Err(_) => Err(format!("invalid word `{text}`")),
        })
        .collect()
}
