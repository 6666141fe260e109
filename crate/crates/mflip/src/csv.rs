//! Sweep CSV output.

use std::fmt::Write as _;

use mflip_core::families::SweepRow;

pub const HEADER: &str = "alpha,I,E12,E13,E23,E2,E3,R,C2sq,C3sq";

/// Formats like C's `%.12g`. Negative zero prints as `0`.
pub fn fmt_g12(x: f64) -> String {
    const P: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if !(-4..P).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let fixed = format!("{:.*}", (P - 1 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn render(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for r in rows {
        let cols = [r.alpha, r.local_info, r.e12, r.e13, r.e23, r.e2_total, r.e3, r.residual, r.c2_sq, r.c3_sq];
        for (i, v) in cols.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{}", fmt_g12(*v));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (1.0, "1"),
            (-0.0, "0"),
            (3.0, "3"),
            (8.0 / 3.0, "2.66666666667"),
            (std::f64::consts::PI, "3.14159265359"),
            (1e-5, "1e-05"),
            (1.5e-17, "1.5e-17"),
            (-2.5e-10, "-2.5e-10"),
            (0.0001, "0.0001"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (0.999999999999999, "1"),
            (9.9999999999996, "10"),
        ];
        for (x, want) in cases {
            assert_eq!(fmt_g12(x), want, "{x:e}");
        }
    }
}
