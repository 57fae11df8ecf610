//! Exact rational coefficients.
//!
//! Coefficients throughout the crate are `Ratio<i128>`: numerators stay tiny
//! (products of small structure constants and factorials up to 4!), so i128
//! headroom is enormous, and overflow checks stay on in every build profile.

use crate::error::AlgebraError;

pub type Rational = num_rational::Ratio<i128>;

pub fn rat(n: i128) -> Rational {
    Rational::from_integer(n)
}

pub fn ratio(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: i128 = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("4").unwrap(), rat(4));
        assert_eq!(parse_rational("-1/2").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
