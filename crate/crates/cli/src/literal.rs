//! Complex literal syntax: `a+bi` with optional signs and no whitespace.
//!
//! Accepted forms: `2`, `-0.5`, `2i`, `-i`, `1+2i`, `1e-3-2.5e-4i`. The split
//! between real and imaginary part is the last sign that does not follow an
//! exponent marker.

use num_complex::Complex64;

pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty complex literal".to_string());
    }
    if s.contains(char::is_whitespace) {
        return Err(format!("whitespace inside complex literal '{s}'"));
    }
    let bytes = s.as_bytes();
    let mut split = None;
    for (index, &b) in bytes.iter().enumerate().skip(1) {
        if b == b'+' || b == b'-' {
            let prev = bytes[index - 1];
            if prev != b'e' && prev != b'E' {
                split = Some(index);
            }
        }
    }
    let parse_part = |part: &str, what: &str| -> Result<f64, String> {
        part.parse::<f64>()
            .map_err(|_| format!("cannot parse {what} part '{part}' of '{s}'"))
            .and_then(|x| {
                if x.is_finite() {
                    Ok(x)
                } else {
                    Err(format!("non-finite {what} part in '{s}'"))
                }
            })
    };
    let parse_imag_coeff = |part: &str| -> Result<f64, String> {
        match part {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            other => parse_part(other, "imaginary"),
        }
    };
    if let Some(stripped) = s.strip_suffix(['i', 'I']) {
        match split {
            Some(p) if p < stripped.len() + 1 => {
                let re = parse_part(&s[..p], "real")?;
                let im = parse_imag_coeff(&stripped[p..])?;
                Ok(Complex64::new(re, im))
            }
            _ => Ok(Complex64::new(0.0, parse_imag_coeff(stripped)?)),
        }
    } else {
        if split.is_some() {
            return Err(format!("'{s}' has two parts but no trailing 'i'"));
        }
        Ok(Complex64::new(parse_part(s, "real")?, 0.0))
    }
}

/// Two comma-separated complex literals.
pub fn parse_lattice(text: &str) -> Result<(Complex64, Complex64), String> {
    let mut parts = text.splitn(2, ',');
    let first = parts.next().unwrap_or_default();
    let second = parts
        .next()
        .ok_or_else(|| format!("lattice '{text}' needs two comma-separated generators"))?;
    Ok((parse_complex(first)?, parse_complex(second)?))
}

/// Fixed 17-significant-digit rendering, `a+bi` shaped like the input syntax.
pub fn format_complex(z: Complex64) -> String {
    let re = format!("{:.16e}", z.re);
    if z.im.is_sign_negative() {
        format!("{re}-{:.16e}i", -z.im)
    } else {
        format!("{re}+{:.16e}i", z.im)
    }
}
