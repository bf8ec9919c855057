//! Cyclotomic literals: `1/2*z^0 + -1/2*z^3`, `-1`, `z^2`, `3*z`.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::number::{CyclotomicNumber, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LiteralError {
    #[error("empty cyclotomic literal")]
    Empty,
    #[error("bad rational `{0}`")]
    BadRational(String),
    #[error("bad term `{0}`")]
    BadTerm(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

pub fn parse_rational(s: &str) -> Result<Rational, LiteralError> {
    let s = s.trim();
    let bad = || LiteralError::BadRational(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(LiteralError::ZeroDenominator(s.to_string()));
    }
    Ok(Rational::new(n, d))
}

/// Parse one literal at the given conductor.
pub fn parse_cyclotomic(s: &str, conductor: u32) -> Result<CyclotomicNumber, LiteralError> {
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(LiteralError::Empty);
    }
    // Split into signed terms; a sign directly after '+', '/', '*' or '^' belongs to the term.
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut prev: Option<char> = None;
    for ch in text.chars() {
        let splits = match ch {
            '+' => true,
            '-' => !matches!(prev, None | Some('+') | Some('*') | Some('/') | Some('^')),
            _ => false,
        };
        if splits {
            if cur.is_empty() {
                return Err(LiteralError::BadTerm(text.clone()));
            }
            terms.push(std::mem::take(&mut cur));
            if ch == '-' {
                cur.push('-');
            }
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    if cur.is_empty() {
        return Err(LiteralError::BadTerm(text));
    }
    terms.push(cur);

    let mut raw: Vec<Rational> = Vec::new();
    for term in terms {
        let (coef, exp) = parse_term(&term)?;
        if raw.len() <= exp {
            raw.resize(exp + 1, Rational::zero());
        }
        raw[exp] += coef;
    }
    Ok(CyclotomicNumber::reduce(&raw, conductor))
}

fn parse_term(term: &str) -> Result<(Rational, usize), LiteralError> {
    let bad = || LiteralError::BadTerm(term.to_string());
    let (coef_part, z_part) = match term.find('z') {
        None => (term, None),
        Some(pos) => {
            let (c, zp) = term.split_at(pos);
            let c = c.strip_suffix('*').unwrap_or(c);
            (c, Some(zp))
        }
    };
    let coef = match coef_part {
        "" | "+" => Rational::from_integer(1.into()),
        "-" => Rational::from_integer((-1).into()),
        c => parse_rational(c)?,
    };
    let exp = match z_part {
        None => 0,
        Some("z") => 1,
        Some(zp) => zp
            .strip_prefix("z^")
            .ok_or_else(bad)?
            .parse::<usize>()
            .map_err(|_| bad())?,
    };
    Ok((coef, exp))
}

#[cfg(test)]
mod tests {
    use super::super::number::{int, rat};
    use super::*;

    #[test]
    fn parses_spec_grammar() {
        let x = parse_cyclotomic("1/2*z^0 + -1/2*z^3", 6).unwrap();
        let expect = CyclotomicNumber::reduce(&[rat(1, 2), int(0), int(0), rat(-1, 2)], 6);
        assert_eq!(x, expect);
        // ζ_6^3 = -1 so this is the rational 1
        assert_eq!(x.to_rational(), Some(int(1)));
    }

    #[test]
    fn parses_shorthand() {
        assert_eq!(parse_cyclotomic("-1", 1).unwrap().to_rational(), Some(int(-1)));
        assert_eq!(parse_cyclotomic("z", 3).unwrap(), CyclotomicNumber::zeta_pow(1, 3));
        assert_eq!(parse_cyclotomic("-z^2", 3).unwrap(), -CyclotomicNumber::zeta_pow(2, 3));
        assert_eq!(parse_cyclotomic("1 - z", 4).unwrap(), &CyclotomicNumber::one(4) - &CyclotomicNumber::zeta_pow(1, 4));
        assert_eq!(parse_cyclotomic("-3/4*z^1", 4).unwrap(), CyclotomicNumber::zeta_pow(1, 4).scale(&rat(-3, 4)));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_cyclotomic("", 3).is_err());
        assert!(parse_cyclotomic("1/0", 3).is_err());
        assert!(parse_cyclotomic("2*y^2", 3).is_err());
        assert!(parse_cyclotomic("1 +", 3).is_err());
    }
}
