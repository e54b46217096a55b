//! Reading and writing sparse polynomials such as `v^-2 + 3 + v^5` or
//! `1/2*z^3 - 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

use super::ArithError;

/// Parses a sum of monomials in `symbol` with rational coefficients.
///
/// Whitespace is ignored. Repeated exponents are added together and zero
/// coefficients are dropped from the returned map.
pub fn parse_terms(text: &str, symbol: char) -> Result<BTreeMap<i64, BigRational>, ArithError> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |msg: &str| ArithError::Parse(format!("{msg} in {text:?}"));
    if chars.is_empty() {
        return Err(err("empty polynomial"));
    }
    let mut out: BTreeMap<i64, BigRational> = BTreeMap::new();
    let mut pos = 0;
    let mut first = true;
    while pos < chars.len() {
        let mut negative = false;
        match chars[pos] {
            '+' => pos += 1,
            '-' => {
                negative = true;
                pos += 1;
            }
            _ if first => {}
            _ => return Err(err("expected '+' or '-'")),
        }
        first = false;

        let coeff_start = pos;
        let numerator = take_digits(&chars, &mut pos);
        let mut coeff = match numerator {
            Some(digits) => BigRational::from_integer(digits),
            None => BigRational::one(),
        };
        if numerator_present(coeff_start, pos) && pos < chars.len() && chars[pos] == '/' {
            pos += 1;
            let denom = take_digits(&chars, &mut pos).ok_or_else(|| err("missing denominator"))?;
            if denom.is_zero() {
                return Err(err("zero denominator"));
            }
            coeff /= BigRational::from_integer(denom);
        }
        let had_coeff = numerator_present(coeff_start, pos);
        if had_coeff && pos < chars.len() && chars[pos] == '*' {
            pos += 1;
            if pos >= chars.len() || chars[pos] != symbol {
                return Err(err("expected symbol after '*'"));
            }
        }

        let mut exponent = 0i64;
        if pos < chars.len() && chars[pos] == symbol {
            pos += 1;
            exponent = 1;
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                let mut exp_negative = false;
                if pos < chars.len() && (chars[pos] == '-' || chars[pos] == '+') {
                    exp_negative = chars[pos] == '-';
                    pos += 1;
                }
                let digits = take_digits(&chars, &mut pos).ok_or_else(|| err("missing exponent"))?;
                let value: i64 = digits
                    .try_into()
                    .map_err(|_| err("exponent out of range"))?;
                exponent = if exp_negative { -value } else { value };
            }
        } else if !had_coeff {
            return Err(err("expected coefficient or symbol"));
        }
        if negative {
            coeff = -coeff;
        }
        let slot = out.entry(exponent).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            out.remove(&exponent);
        }
    }
    Ok(out)
}

fn numerator_present(start: usize, pos: usize) -> bool {
    pos > start
}

fn take_digits(chars: &[char], pos: &mut usize) -> Option<BigInt> {
    let start = *pos;
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if *pos == start {
        return None;
    }
    let s: String = chars[start..*pos].iter().collect();
    s.parse().ok()
}

/// Writes `terms` (exponent, coefficient) in the given order, e.g.
/// `1/2*z^3 - z + 1`. An empty list renders as `0`.
pub fn format_terms<'a, I>(terms: I, symbol: char) -> String
where
    I: IntoIterator<Item = (i64, &'a BigRational)>,
{
    let mut out = String::new();
    for (exp, coeff) in terms {
        if coeff.is_zero() {
            continue;
        }
        let negative = coeff.is_negative();
        let magnitude = coeff.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let monomial = match exp {
            0 => String::new(),
            1 => symbol.to_string(),
            e => format!("{symbol}^{e}"),
        };
        if monomial.is_empty() {
            out.push_str(&magnitude.to_string());
        } else if magnitude.is_one() {
            out.push_str(&monomial);
        } else {
            out.push_str(&format!("{magnitude}*{monomial}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_mixed_terms() {
        let t = parse_terms(" v^-2 + 3 +v^5 - 2*v", 'v').unwrap();
        assert_eq!(t.get(&-2), Some(&q(1, 1)));
        assert_eq!(t.get(&0), Some(&q(3, 1)));
        assert_eq!(t.get(&1), Some(&q(-2, 1)));
        assert_eq!(t.get(&5), Some(&q(1, 1)));
    }

    #[test]
    fn parses_rational_coefficients() {
        let t = parse_terms("1/2*z^3 - 1", 'z').unwrap();
        assert_eq!(t.get(&3), Some(&q(1, 2)));
        assert_eq!(t.get(&0), Some(&q(-1, 1)));
        let t = parse_terms("-3/4z", 'z').unwrap();
        assert_eq!(t.get(&1), Some(&q(-3, 4)));
    }

    #[test]
    fn cancelling_terms_vanish() {
        let t = parse_terms("z - z", 'z').unwrap();
        assert!(t.is_empty());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_terms("", 'v').is_err());
        assert!(parse_terms("v^", 'v').is_err());
        assert!(parse_terms("2v3", 'v').is_err());
        assert!(parse_terms("1/0", 'v').is_err());
        assert!(parse_terms("x", 'v').is_err());
    }

    #[test]
    fn round_trip_format() {
        let t = parse_terms("1/2*z^3 - 1", 'z').unwrap();
        let s = format_terms(t.iter().rev().map(|(e, c)| (*e, c)), 'z');
        assert_eq!(s, "1/2*z^3 - 1");
    }
}
