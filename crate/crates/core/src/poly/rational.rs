use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Exact m-th root of a rational, if it exists in the rationals.
pub fn rational_root(q: &Rational, m: u32) -> Option<Rational> {
    if m == 0 {
        return None;
    }
    if m == 1 || q.is_zero() || q.is_one() {
        return Some(q.clone());
    }
    let negative = q.is_negative();
    if negative && m.is_multiple_of(2) {
        return None;
    }
    let root_of = |n: &BigInt| -> Option<BigInt> {
        let r = n.nth_root(m);
        (num_traits::pow(r.clone(), m as usize) == *n).then_some(r)
    };
    let num = root_of(&q.numer().abs())?;
    let den = root_of(q.denom())?;
    let r = Rational::new(num, den);
    Some(if negative { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rational("-7"), Some(int(-7)));
        assert_eq!(parse_rational(" 4 / -8 "), Some(rat(-1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn roots() {
        assert_eq!(rational_root(&rat(8, 27), 3), Some(rat(2, 3)));
        assert_eq!(rational_root(&rat(-8, 27), 3), Some(rat(-2, 3)));
        assert_eq!(rational_root(&int(-4), 2), None);
        assert_eq!(rational_root(&int(2), 2), None);
        assert_eq!(rational_root(&rat(9, 4), 2), Some(rat(3, 2)));
    }
}
