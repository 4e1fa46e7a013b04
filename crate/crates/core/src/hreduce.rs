//! H-reduction: a homogeneous `P` commuting with a homogeneous `H` that is
//! not a power is a scalar multiple of a power of `H`, and any `P` commuting
//! with such an `H` lies in `K[H]`.

use num_traits::Zero;

use crate::bracket::poisson_bracket;
use crate::error::{Error, Result};
use crate::poly::{is_power_up_to_constant, Degree, HomogeneousPoly, Poly, Rational};

fn check_h(h: &HomogeneousPoly) -> Result<u32> {
    let t = match h.as_poly().degree() {
        Degree::Finite(t) if t > 0 => t,
        _ => return Err(Error::ConstantInput),
    };
    if is_power_up_to_constant(h.as_poly())?.is_some() {
        return Err(Error::HIsProperPower);
    }
    Ok(t)
}

fn check_commuting(h: &Poly, p: &Poly) -> Result<()> {
    if !poisson_bracket(h, p)?.is_zero() {
        return Err(Error::NotCommuting);
    }
    Ok(())
}

/// `a H^k = P` for a homogeneous `P` with `[H, P] = 0`; the zero polynomial
/// gives `(0, 0)`.
///
/// `a` is the ratio of graded-lex leading coefficients of `P` and `H^k`, and
/// the identity is checked exactly afterwards.
pub fn h_reduce(h: &HomogeneousPoly, p: &HomogeneousPoly) -> Result<(Rational, u32)> {
    let t = check_h(h)?;
    check_commuting(h.as_poly(), p.as_poly())?;
    reduce_checked(h.as_poly(), t, p.as_poly())
}

fn reduce_checked(h: &Poly, t: u32, p: &Poly) -> Result<(Rational, u32)> {
    let dp = match p.degree() {
        Degree::NegInfinity => return Ok((Rational::zero(), 0)),
        Degree::Finite(d) => d,
    };
    if dp % t != 0 {
        return Err(Error::Inconsistent(format!(
            "deg H = {t} does not divide deg P = {dp} although [H, P] = 0"
        )));
    }
    let k = dp / t;
    let hk = h.pow(k);
    let a = p.leading_coefficient().expect("nonzero") / hk.leading_coefficient().expect("nonzero");
    if &hk.scale(&a) != p {
        return Err(Error::Inconsistent(format!(
            "P is not a scalar multiple of H^{k}"
        )));
    }
    Ok((a, k))
}

/// Coefficients `(a_0, ..., a_k)` with `P = sum a_l H^l`; empty for `P = 0`.
pub fn express_in_h(h: &HomogeneousPoly, p: &Poly) -> Result<Vec<Rational>> {
    let t = check_h(h)?;
    check_commuting(h.as_poly(), p)?;
    let mut coeffs: Vec<Rational> = Vec::new();
    for (deg, comp) in p.homogeneous_components() {
        if deg % t != 0 {
            return Err(Error::Inconsistent(format!(
                "nonzero component of degree {deg}, not a multiple of deg H = {t}"
            )));
        }
        let (a, l) = reduce_checked(h.as_poly(), t, comp.as_poly())?;
        let l = l as usize;
        if coeffs.len() <= l {
            coeffs.resize(l + 1, Rational::zero());
        }
        coeffs[l] = a;
    }
    Ok(coeffs)
}

/// Expansion of `p` in powers of an arbitrary nonconstant `q`, or `None`
/// when `p` is not in `K[q]`.
///
/// Peels off top forms: the top form of the remainder must be a scalar
/// multiple of the top form of `q^l`.
pub fn expand_in(q: &Poly, p: &Poly) -> Result<Option<Vec<Rational>>> {
    if q.nvars() != p.nvars() {
        return Err(Error::NvarsMismatch(q.nvars(), p.nvars()));
    }
    let e = match q.degree() {
        Degree::Finite(e) if e > 0 => e,
        _ => return Err(Error::ConstantInput),
    };
    let q_top = q.top_form();
    let mut rem = p.clone();
    let mut coeffs: Vec<Rational> = Vec::new();
    while let Degree::Finite(d) = rem.degree() {
        if d % e != 0 {
            return Ok(None);
        }
        let l = d / e;
        let top = rem.top_form();
        let qt = q_top.pow(l);
        let a = top.leading_coefficient().expect("nonzero")
            / qt.leading_coefficient().expect("nonzero");
        if qt.scale(&a) != top {
            return Ok(None);
        }
        rem = &rem - &q.pow(l).scale(&a);
        let l = l as usize;
        if coeffs.len() <= l {
            coeffs.resize(l + 1, Rational::zero());
        }
        coeffs[l] = a;
    }
    Ok(Some(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse_poly};

    fn hp(s: &str) -> HomogeneousPoly {
        HomogeneousPoly::new(parse_poly(s, 2).unwrap()).unwrap()
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, 2).unwrap()
    }

    #[test]
    fn linear_h() {
        assert_eq!(h_reduce(&hp("x1"), &hp("5*x1^3")).unwrap(), (int(5), 3));
    }

    #[test]
    fn product_h() {
        assert_eq!(
            h_reduce(&hp("x1*x2"), &hp("9*x1^2*x2^2")).unwrap(),
            (int(9), 2)
        );
    }

    #[test]
    fn not_commuting() {
        assert_eq!(
            h_reduce(&hp("x1*x2"), &hp("x1^3")),
            Err(Error::NotCommuting)
        );
    }

    #[test]
    fn zero_p() {
        let z = HomogeneousPoly::zero(2, 4);
        assert_eq!(h_reduce(&hp("x1*x2"), &z).unwrap(), (int(0), 0));
    }

    #[test]
    fn rejects_powers_and_constants() {
        assert_eq!(
            h_reduce(&hp("x1^2"), &hp("x1^4")),
            Err(Error::HIsProperPower)
        );
        assert_eq!(
            h_reduce(&hp("3*x2^2"), &hp("x2^4")),
            Err(Error::HIsProperPower)
        );
        assert_eq!(h_reduce(&hp("7"), &hp("x1")), Err(Error::ConstantInput));
    }

    #[test]
    fn express_examples() {
        let h = hp("x1 + x2");
        let target = p("(x1+x2)^2 + 3*(x1+x2) + 1");
        assert_eq!(
            express_in_h(&h, &target).unwrap(),
            vec![int(1), int(3), int(1)]
        );
        assert!(express_in_h(&h, &Poly::zero(2)).unwrap().is_empty());
        assert_eq!(
            express_in_h(&hp("x1*x2"), &p("2*(x1*x2)^3 - x1*x2")).unwrap(),
            vec![int(0), int(-1), int(0), int(2)]
        );
        assert_eq!(
            express_in_h(&hp("x1*x2"), &p("x1 + x1*x2")),
            Err(Error::NotCommuting)
        );
    }

    #[test]
    fn expansion_in_nonhomogeneous_q() {
        let q = p("x1*x2 + x1");
        let target = &(&q.pow(2).scale(&int(3)) - &q) + &Poly::one(2);
        assert_eq!(
            expand_in(&q, &target).unwrap(),
            Some(vec![int(1), int(-1), int(3)])
        );
        assert_eq!(expand_in(&q, &p("x1^2 + x2")).unwrap(), None);
    }
}
