//! Exact rational scalars.
//!
//! All core math runs over `Q = BigRational`; no floating point anywhere.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// The scalar field used throughout the crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `p/q` or a plain integer. Floats are rejected.
pub fn parse_q(s: &str) -> Result<Q, String> {
    let s = s.trim();
    if s.contains('.') || s.contains(['e', 'E']) {
        return Err(format!("`{s}` is not an exact rational; write p/q or an integer"));
    }
    match s.split_once('/') {
        None => s
            .parse::<BigInt>()
            .map(BigRational::from_integer)
            .map_err(|_| format!("`{s}` is not an integer")),
        Some((num, den)) => {
            let num = num.trim().parse::<BigInt>().map_err(|_| format!("bad numerator in `{s}`"))?;
            let den = den.trim().parse::<BigInt>().map_err(|_| format!("bad denominator in `{s}`"))?;
            if den.is_zero() {
                return Err(format!("zero denominator in `{s}`"));
            }
            Ok(BigRational::new(num, den))
        }
    }
}

/// Render as `p/q`, or just `p` when the denominator is one.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// The first `n` primes, used as the surrogate for algebraically
/// independent parameters.
pub fn primes(n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    let mut candidate: u64 = 2;
    while out.len() < n {
        if out.iter().all(|p| candidate % p != 0) {
            out.push(candidate);
        }
        candidate += 1;
    }
    out
}

pub fn is_negative(x: &Q) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rejects_floats() {
        assert!(parse_q("1.5").is_err());
        assert!(parse_q("1e3").is_err());
        assert!(parse_q("3/0").is_err());
    }

    #[test]
    fn parse_format_round_trip() {
        for s in ["0", "-7", "5/3", "-22/7"] {
            assert_eq!(format_q(&parse_q(s).unwrap()), s);
        }
        assert_eq!(format_q(&parse_q("4/2").unwrap()), "2");
    }

    #[test]
    fn small_primes() {
        assert_eq!(primes(5), vec![2, 3, 5, 7, 11]);
    }
}
