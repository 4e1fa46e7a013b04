use num_traits::Zero;

use super::{rational_root, Degree, HomogeneousPoly, Poly, Rational};
use crate::error::{Error, Result};

/// Exact m-th root of `h` over the rationals, if one exists.
///
/// The root's leading term is the m-th root of `h`'s leading term; each
/// further term is read off the leading term of `h - g^m`, which must equal
/// `m * lt(g)^(m-1) * next`. The final candidate is re-powered and compared.
pub fn poly_root(h: &Poly, m: u32) -> Option<Poly> {
    if m == 0 {
        return None;
    }
    if m == 1 {
        return Some(h.clone());
    }
    let (lm, lc) = h.leading_term()?;
    let root_m = lm.root(m)?;
    let root_c = rational_root(lc, m)?;
    let n = h.nvars();
    let lead_pow = root_m.pow(m - 1);
    let lead_coeff =
        Rational::from_integer(m.into()) * num_traits::pow(root_c.clone(), (m - 1) as usize);

    let mut g = Poly::monomial(n, root_m, root_c);
    let mut smallest = g.terms().next().map(|(mm, _)| mm.clone())?;
    loop {
        let rem = h - &g.pow(m);
        let (rm, rc) = match rem.leading_term() {
            None => return Some(g),
            Some(t) => t,
        };
        let next_m = lead_pow.divide_into(rm)?;
        if next_m >= smallest {
            return None;
        }
        let next_c = rc / &lead_coeff;
        if next_c.is_zero() {
            return None;
        }
        smallest = next_m.clone();
        g.add_term(next_m, next_c);
    }
}

fn check_nonconstant(h: &Poly) -> Result<u32> {
    match h.degree() {
        Degree::Finite(d) if d > 0 => Ok(d),
        _ => Err(Error::ConstantInput),
    }
}

/// Largest `m >= 2` with `h = g^m` over the rationals, together with `g`.
///
/// Roots whose leading coefficient would be irrational are reported as
/// absent; use [`is_power_up_to_constant`] to ignore the scalar.
pub fn is_proper_power(h: &HomogeneousPoly) -> Result<Option<(HomogeneousPoly, u32)>> {
    let d = check_nonconstant(h.as_poly())?;
    for m in (2..=d).rev().filter(|m| d % m == 0) {
        if let Some(g) = poly_root(h.as_poly(), m) {
            return Ok(Some((HomogeneousPoly::new(g)?, m)));
        }
    }
    Ok(None)
}

/// Like [`is_proper_power`] but on the monic normalization of `h`, so
/// `2*x1^2` counts as a square. This matches powers over an algebraically
/// closed field: the monic m-th root of a monic rational polynomial is
/// rational whenever it exists at all.
pub fn is_power_up_to_constant(h: &Poly) -> Result<Option<(Poly, u32)>> {
    let d = check_nonconstant(h)?;
    let monic = h.monic();
    for m in (2..=d).rev().filter(|m| d % m == 0) {
        if let Some(g) = poly_root(&monic, m) {
            return Ok(Some((g, m)));
        }
    }
    Ok(None)
}
