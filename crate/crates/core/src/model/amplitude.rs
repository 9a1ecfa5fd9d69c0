//! Textual amplitudes.
//!
//! Grammar accepted by [`parse_amplitude`]:
//!
//! ```text
//! amplitude      := signedCoef | signedCoef "*" phase | phase | complexLiteral
//! signedCoef     := ["-"] ( int | int "/" int | "sqrt(" rational ")" | int "/sqrt(" int ")" | decimal )
//! phase          := "omega(" int "," int ")"          # e^{2πik/N}
//! complexLiteral := "(" decimal "," decimal ")"       # decimals may carry a leading "-"
//! ```
//!
//! Whitespace between tokens is ignored.

use std::f64::consts::TAU;

use num_complex::Complex64;
use thiserror::Error;

/// A transition amplitude (or, for probabilistic machines, a probability stored in `re`).
pub type Amplitude = Complex64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed amplitude at offset {position}: {message}")]
pub struct AmplitudeError {
    /// Zero-based character offset into the token.
    pub position: usize,
    pub message: String,
}

/// `e^{2πik/n}`. Multiples of a quarter turn are returned exactly.
pub fn omega(k: i64, n: i64) -> Complex64 {
    assert!(n != 0, "omega with zero period");
    let (k, n) = if n < 0 { (-k, -n) } else { (k, n) };
    let k = k.rem_euclid(n);
    if (4 * k) % n == 0 {
        return match 4 * k / n {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let angle = TAU * k as f64 / n as f64;
    Complex64::new(angle.cos(), angle.sin())
}

/// `k / sqrt(n)` evaluated as `k * sqrt(1/n)`.
pub fn scaled_inv_sqrt(k: i64, n: i64) -> f64 {
    k as f64 * (1.0 / n as f64).sqrt()
}

pub fn parse_amplitude(token: &str) -> Result<Amplitude, AmplitudeError> {
    let mut p = Parser { chars: token.chars().collect(), pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty amplitude"));
    }
    let value = p.amplitude()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(AmplitudeError { position: 0, message: "amplitude is not finite".into() });
    }
    Ok(value)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: &str) -> AmplitudeError {
        AmplitudeError { position: self.pos, message: message.to_string() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn looking_at(&self, word: &str) -> bool {
        word.chars().enumerate().all(|(k, c)| self.chars.get(self.pos + k) == Some(&c))
    }

    fn expect(&mut self, word: &str) -> Result<(), AmplitudeError> {
        self.skip_ws();
        if self.looking_at(word) {
            self.pos += word.chars().count();
            Ok(())
        } else {
            Err(self.error(&format!("expected `{word}`")))
        }
    }

    fn amplitude(&mut self) -> Result<Complex64, AmplitudeError> {
        if self.looking_at("omega(") {
            return self.phase();
        }
        if self.peek() == Some('(') {
            return self.complex_literal();
        }
        let coef = self.signed_coef()?;
        self.skip_ws();
        if self.peek() == Some('*') {
            self.pos += 1;
            self.skip_ws();
            let phase = self.phase()?;
            return Ok(phase * coef);
        }
        Ok(Complex64::new(coef, 0.0))
    }

    fn phase(&mut self) -> Result<Complex64, AmplitudeError> {
        self.expect("omega(")?;
        let k = self.signed_int()?;
        self.expect(",")?;
        let start = self.pos;
        let n = self.signed_int()?;
        if n == 0 {
            return Err(AmplitudeError { position: start, message: "omega period must be nonzero".into() });
        }
        self.expect(")")?;
        Ok(omega(k, n))
    }

    fn complex_literal(&mut self) -> Result<Complex64, AmplitudeError> {
        self.expect("(")?;
        let re = self.signed_decimal()?;
        self.expect(",")?;
        let im = self.signed_decimal()?;
        self.expect(")")?;
        Ok(Complex64::new(re, im))
    }

    fn signed_coef(&mut self) -> Result<f64, AmplitudeError> {
        let negative = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let magnitude = if self.looking_at("sqrt(") {
            self.pos += "sqrt(".len();
            let (num, den) = self.rational()?;
            self.expect(")")?;
            (num / den).sqrt()
        } else {
            let start = self.pos;
            let (text, is_int) = self.number_text()?;
            if is_int && self.looking_at("/sqrt(") {
                self.pos += "/sqrt(".len();
                let n = self.unsigned_int()?;
                if n == 0 {
                    return Err(self.error("division by sqrt(0)"));
                }
                self.expect(")")?;
                let k: i64 = text.parse().map_err(|_| AmplitudeError { position: start, message: "integer out of range".into() })?;
                scaled_inv_sqrt(k, n)
            } else if is_int && self.peek() == Some('/') {
                self.pos += 1;
                let den = self.unsigned_int()?;
                if den == 0 {
                    return Err(self.error("division by zero"));
                }
                let num: f64 = text.parse().unwrap_or(f64::NAN);
                num / den as f64
            } else {
                text.parse::<f64>().map_err(|_| AmplitudeError { position: start, message: "bad number".into() })?
            }
        };
        Ok(if negative { -magnitude } else { magnitude })
    }

    /// `int` or `int/int` inside `sqrt(...)`.
    fn rational(&mut self) -> Result<(f64, f64), AmplitudeError> {
        self.skip_ws();
        let start = self.pos;
        let (text, is_int) = self.number_text()?;
        let num: f64 = text.parse().map_err(|_| AmplitudeError { position: start, message: "bad number".into() })?;
        if is_int && self.peek() == Some('/') {
            self.pos += 1;
            let den = self.unsigned_int()?;
            if den == 0 {
                return Err(self.error("division by zero"));
            }
            Ok((num, den as f64))
        } else {
            Ok((num, 1.0))
        }
    }

    /// Digits with an optional fractional part; the flag reports whether it was a bare integer.
    fn number_text(&mut self) -> Result<(String, bool), AmplitudeError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let int_digits = self.pos - start;
        let mut is_int = true;
        if self.peek() == Some('.') {
            is_int = false;
            self.pos += 1;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        if int_digits == 0 && (is_int || text.len() == 1) {
            self.pos = start;
            return Err(self.error("expected a number"));
        }
        Ok((text, is_int))
    }

    fn unsigned_int(&mut self) -> Result<i64, AmplitudeError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| AmplitudeError { position: start, message: "integer out of range".into() })
    }

    fn signed_int(&mut self) -> Result<i64, AmplitudeError> {
        self.skip_ws();
        if self.peek() == Some('-') {
            self.pos += 1;
            Ok(-self.unsigned_int()?)
        } else {
            self.unsigned_int()
        }
    }

    fn signed_decimal(&mut self) -> Result<f64, AmplitudeError> {
        self.skip_ws();
        let negative = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        let (text, _) = self.number_text()?;
        let v: f64 = text.parse().map_err(|_| AmplitudeError { position: start, message: "bad number".into() })?;
        Ok(if negative { -v } else { v })
    }
}

const MAX_SYMBOLIC_DENOMINATOR: i64 = 64;

/// Renders an amplitude so that [`parse_amplitude`] returns the identical value.
///
/// Common closed forms (`1/sqrt(n)`, `1/sqrt(n)*omega(k,N)`) are used when they
/// reproduce the value bit for bit; everything else falls back to decimals.
pub fn format_amplitude(a: Amplitude) -> String {
    if a.re == 0.0 && a.im == 0.0 {
        return "0".to_string();
    }
    if a.im == 0.0 {
        return format_real(a.re);
    }
    if let Some(text) = symbolic_complex(a) {
        return text;
    }
    format!("({},{})", a.re, a.im)
}

fn format_real(x: f64) -> String {
    let mag = x.abs();
    let sign = if x < 0.0 { "-" } else { "" };
    if mag.fract() != 0.0 || mag > 1e15 {
        for n in (2..=MAX_SYMBOLIC_DENOMINATOR).filter(|n| !is_square(*n)) {
            if scaled_inv_sqrt(1, n) == mag {
                return format!("{sign}1/sqrt({n})");
            }
        }
    }
    format!("{x}")
}

fn is_square(n: i64) -> bool {
    (1..=n).take_while(|r| r * r <= n).any(|r| r * r == n)
}

fn symbolic_complex(a: Amplitude) -> Option<String> {
    let mag = a.norm();
    let n = (1..=MAX_SYMBOLIC_DENOMINATOR).find(|&n| (scaled_inv_sqrt(1, n) - mag).abs() < 1e-12)?;
    let turns = (a.im.atan2(a.re) / TAU).rem_euclid(1.0);
    for period in 1..=MAX_SYMBOLIC_DENOMINATOR {
        let k = (turns * period as f64).round();
        if (k / period as f64 - turns).abs() < 1e-12 {
            let k = (k as i64).rem_euclid(period);
            let text = if n == 1 {
                format!("omega({k},{period})")
            } else {
                format!("1/sqrt({n})*omega({k},{period})")
            };
            return match parse_amplitude(&text) {
                Ok(v) if v == a => Some(text),
                _ => None,
            };
        }
    }
    None
}
