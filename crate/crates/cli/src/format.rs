//! Number and record formatting. Text output uses 12 significant digits,
//! CSV uses 17; JSON numbers are shortest round-trip.

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// `v` with `digits` significant digits, plain notation where it stays short.
pub fn sig(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".into();
    }
    let exp = v.abs().log10().floor() as i32;
    if (-4..12).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        let s = format!("{v:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{v:.*e}", digits - 1)
    }
}

pub fn text(v: f64) -> String {
    sig(v, 12)
}

pub fn machine(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(1.6449340668482264, 12), "1.64493406685");
        assert_eq!(sig(-0.033413, 12), "-0.033413");
        assert_eq!(sig(1e-20, 3), "1.00e-20");
        assert_eq!(sig(0.0, 12), "0");
        assert_eq!(machine(0.1), "1.0000000000000001e-1");
        assert_eq!(machine(0.1).parse::<f64>().unwrap(), 0.1);
    }
}
