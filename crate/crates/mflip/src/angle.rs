//! Angle literals for the command line.
//!
//! Accepts plain decimals (`0.5`, `-1e-3`) and multiples of pi written as
//! `pi`, `-pi`, `pi/3`, `2pi/3`, `2*pi/3` or `3pi`. Pi forms are evaluated
//! as `(k * PI) / n`, so `pi/3` is bit-identical to `PI / 3.0`.

use std::f64::consts::PI;

pub fn parse_angle(text: &str) -> Result<f64, String> {
    let s = text.trim();
    let bad = || format!("invalid angle `{text}` (expected a number or a pi fraction like 2pi/3)");
    let Some(at) = s.find("pi") else {
        let v: f64 = s.parse().map_err(|_| bad())?;
        return if v.is_finite() { Ok(v) } else { Err(bad()) };
    };
    let (head, tail) = (&s[..at], &s[at + 2..]);
    let head = head.strip_suffix('*').unwrap_or(head);
    let k: f64 = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<i64>().map_err(|_| bad())? as f64,
    };
    let n: f64 = match tail {
        "" => 1.0,
        t => {
            let d = t.strip_prefix('/').ok_or_else(bad)?;
            let d: u64 = d.parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            d as f64
        }
    };
    Ok(if n == 1.0 { k * PI } else { (k * PI) / n })
}
