//! Exact rational arithmetic used by every evaluator.

use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Rat = Ratio<i64>;

/// Parses an integer literal or a `p/q` fraction. Decimal literals are
/// rejected so that ties stay exact.
pub fn parse_rational(text: &str) -> Result<Rat> {
    let s = text.trim();
    if s.is_empty() || s.contains(['.', 'e', 'E']) {
        return Err(Error::InvalidArgument(format!(
            "`{text}` is not an exact rational (use an integer or p/q)"
        )));
    }
    let parsed = match s.split_once('/') {
        Some((num, den)) => {
            let num: i64 = num.trim().parse().map_err(|_| bad(text))?;
            let den: i64 = den.trim().parse().map_err(|_| bad(text))?;
            if den == 0 {
                return Err(Error::InvalidArgument(format!("`{text}` has a zero denominator")));
            }
            Rat::new(num, den)
        }
        None => Rat::from_integer(s.parse().map_err(|_| bad(text))?),
    };
    Ok(parsed)
}

fn bad(text: &str) -> Error {
    Error::InvalidArgument(format!(
        "`{text}` is not an exact rational (use an integer or p/q)"
    ))
}

pub fn format_rational(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}
