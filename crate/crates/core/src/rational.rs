//! Text helpers for exact rationals and signed term lists.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{parse_err, Result};

/// Serialized form `"num/den"`, always with an explicit denominator.
pub fn to_fraction_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let numer: BigInt = n
        .parse()
        .map_err(|_| parse_err("rational", s, format!("{n:?} is not an integer")))?;
    let denom: BigInt = d
        .parse()
        .map_err(|_| parse_err("rational", s, format!("{d:?} is not an integer")))?;
    if denom.is_zero() {
        return Err(parse_err("rational", s, "zero denominator"));
    }
    Ok(BigRational::new(numer, denom))
}

/// Joins `(coefficient, monomial)` pairs as `a - 2b + (1/3)c`.
///
/// An empty monomial string stands for the constant term. With `spaced`
/// false the output is `a-2b+(1/3)c`. `gap` goes between a non-unit
/// coefficient and its monomial.
pub(crate) fn format_terms<'a, I>(terms: I, spaced: bool, gap: &str) -> String
where
    I: IntoIterator<Item = (&'a BigRational, String)>,
{
    let mut out = String::new();
    for (i, (c, mono)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let sep = match (i == 0, neg, spaced) {
            (true, true, _) => "-",
            (true, false, _) => "",
            (false, true, true) => " - ",
            (false, false, true) => " + ",
            (false, true, false) => "-",
            (false, false, false) => "+",
        };
        out.push_str(sep);
        let a = c.abs();
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else {
            if !a.is_one() {
                if a.is_integer() {
                    out.push_str(&a.to_string());
                } else {
                    out.push_str(&format!("({a})"));
                }
                out.push_str(gap);
            }
            out.push_str(&mono);
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

    #[test]
    fn fractions_round_trip() {
        let q = parse_rational("-691/5460").unwrap();
        assert_eq!(to_fraction_string(&q), "-691/5460");
        assert_eq!(to_fraction_string(&parse_rational("3").unwrap()), "3/1");
        assert_eq!(to_fraction_string(&parse_rational("4/2").unwrap()), "2/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
