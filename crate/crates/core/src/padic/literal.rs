//! Text syntax for exact elements: `x`, `x/y`, `x + y*s`, where `s` is √p.

use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use super::exact_int::ExactInt;
use super::QuadraticElement;
use crate::error::{Error, Result};

impl<I: ExactInt> fmt::Display for QuadraticElement<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = (self.x(), self.y());
        match (x.is_zero(), y.is_zero()) {
            (true, true) => f.write_str("0"),
            (_, true) => write!(f, "{}", x),
            (true, false) => write_sqrt_term(f, y),
            (false, false) => {
                write!(f, "{} {} ", x, if y.is_negative() { '-' } else { '+' })?;
                write_sqrt_term(f, &y.abs())
            }
        }
    }
}

fn write_sqrt_term<I: ExactInt>(f: &mut fmt::Formatter<'_>, y: &Ratio<I>) -> fmt::Result {
    if y.is_one() {
        f.write_str("s")
    } else if (-y.clone()).is_one() {
        f.write_str("-s")
    } else {
        write!(f, "{}*s", y)
    }
}

/// Parses an element literal over the prime `p`.
pub fn parse_element(p: u64, text: &str) -> Result<QuadraticElement<BigInt>> {
    let err = |msg: &str| Error::Parse(format!("{msg} in element literal `{text}`"));
    let operand = |c: char| c.is_ascii_digit() || c == 's';
    let mut prev: Option<char> = None;
    let mut gap = false;
    for c in text.chars() {
        if c.is_whitespace() {
            gap = true;
            continue;
        }
        if gap && prev.is_some_and(operand) && operand(c) {
            return Err(err("missing operator"));
        }
        prev = Some(c);
        gap = false;
    }
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty input"));
    }
    let mut x = Ratio::<BigInt>::zero();
    let mut y = Ratio::<BigInt>::zero();
    let bytes = compact.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let mut sign = 1i32;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            if bytes[pos] == b'-' {
                sign = -1;
            }
            pos += 1;
        } else if pos != 0 {
            return Err(err("expected `+` or `-`"));
        }
        let end = compact[pos..].find(['+', '-']).map(|i| pos + i).unwrap_or(bytes.len());
        let term = &compact[pos..end];
        if term.is_empty() {
            return Err(err("missing term"));
        }
        let (coeff, is_sqrt) = if term == "s" {
            (Ratio::one(), true)
        } else if let Some(c) = term.strip_suffix("*s") {
            (parse_rational(c).ok_or_else(|| err("bad coefficient"))?, true)
        } else {
            (parse_rational(term).ok_or_else(|| err("bad rational"))?, false)
        };
        let coeff = if sign < 0 { -coeff } else { coeff };
        if is_sqrt {
            y += coeff;
        } else {
            x += coeff;
        }
        pos = end;
    }
    Ok(QuadraticElement::new(p, x, y))
}

fn parse_rational(s: &str) -> Option<Ratio<BigInt>> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits(n) || !digits(d) {
        return None;
    }
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Ratio::new(n.parse().ok()?, d))
}
