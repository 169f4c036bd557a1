//! Text syntax for generators, monomials, and forms.
//!
//! Generators render as `dz1_3` (holomorphic) and `dzb2_1` (conjugated),
//! monomials as `^`-joined generators, and forms as signed sums with
//! rational coefficients, e.g. `dz1_1^dz2_1 - 3/2 dz2_2`. The zero form
//! renders as `0`. [`Form::parse`] accepts exactly this syntax.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{ExteriorError, Form, Generator, Level, Monomial};

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dz{}{}_{}",
            if self.conjugated { "b" } else { "" },
            self.component,
            self.index
        )
    }
}

impl FromStr for Generator {
    type Err = ExteriorError;

    fn from_str(s: &str) -> Result<Self, ExteriorError> {
        let bad = || ExteriorError::Parse(format!("bad generator `{s}`"));
        let rest = s.strip_prefix("dz").ok_or_else(bad)?;
        let (conjugated, rest) = match rest.strip_prefix('b') {
            Some(rest) => (true, rest),
            None => (false, rest),
        };
        let (component, index) = rest.split_once('_').ok_or_else(bad)?;
        let component: u8 = component.parse().map_err(|_| bad())?;
        let index: u64 = index.parse().map_err(|_| bad())?;
        Generator::new(conjugated, component, index)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for g in &self.generators {
            if !first {
                write!(f, "^")?;
            }
            write!(f, "{g}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = ExteriorError;

    fn from_str(s: &str) -> Result<Self, ExteriorError> {
        if s == "1" {
            return Ok(Monomial::unit());
        }
        let generators = s
            .split('^')
            .map(Generator::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        Monomial::new(generators)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (monomial, coeff) in &self.terms {
            let negative = coeff.is_negative();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let magnitude = coeff.abs();
            if monomial.degree() == 0 {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{monomial}")?;
            } else {
                write!(f, "{magnitude} {monomial}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl Form {
    /// Parses the rendered syntax back into a form at the given level.
    pub fn parse(input: &str, level: Level) -> Result<Form, ExteriorError> {
        let trimmed = input.trim();
        if trimmed.is_empty() {
            return Err(ExteriorError::Parse("empty input".into()));
        }
        if trimmed == "0" {
            return Ok(Form::zero(level));
        }
        let mut form = Form::zero(level);
        for (negative, segment) in split_signed_segments(trimmed)? {
            let (mut coeff, monomial) = parse_term(segment)?;
            if negative {
                coeff = -coeff;
            }
            if monomial.max_index() > level.get() {
                return Err(ExteriorError::IndexOutOfRange {
                    index: monomial.max_index(),
                    level: level.get(),
                });
            }
            form.add_term(monomial, coeff);
        }
        Ok(form)
    }
}

/// Splits `a - b + c` into `[(false, "a"), (true, "b"), (false, "c")]`.
/// Signs only occur between terms (or leading), never inside tokens.
fn split_signed_segments(input: &str) -> Result<Vec<(bool, &str)>, ExteriorError> {
    let mut segments = Vec::new();
    let mut negative = false;
    let mut start = 0;
    let bytes = input.as_bytes();
    let mut i = 0;
    if bytes[0] == b'-' || bytes[0] == b'+' {
        negative = bytes[0] == b'-';
        start = 1;
        i = 1;
    }
    while i < bytes.len() {
        if bytes[i] == b'+' || bytes[i] == b'-' {
            let segment = input[start..i].trim();
            if segment.is_empty() {
                return Err(ExteriorError::Parse("dangling sign".into()));
            }
            segments.push((negative, segment));
            negative = bytes[i] == b'-';
            start = i + 1;
        }
        i += 1;
    }
    let last = input[start..].trim();
    if last.is_empty() {
        return Err(ExteriorError::Parse("dangling sign".into()));
    }
    segments.push((negative, last));
    Ok(segments)
}

/// A term is `coeff monomial`, a bare monomial (coefficient 1), or a bare
/// coefficient (the unit monomial).
fn parse_term(segment: &str) -> Result<(BigRational, Monomial), ExteriorError> {
    let parts: Vec<&str> = segment.split_whitespace().collect();
    match parts.as_slice() {
        [single] => {
            if single.starts_with("dz") {
                Ok((BigRational::one(), single.parse()?))
            } else {
                let coeff = parse_coefficient(single)?;
                Ok((coeff, Monomial::unit()))
            }
        }
        [coeff, monomial] => Ok((parse_coefficient(coeff)?, monomial.parse()?)),
        _ => Err(ExteriorError::Parse(format!("bad term `{segment}`"))),
    }
}

fn parse_coefficient(token: &str) -> Result<BigRational, ExteriorError> {
    BigRational::from_str(token)
        .map_err(|_| ExteriorError::Parse(format!("bad coefficient `{token}`")))
}
