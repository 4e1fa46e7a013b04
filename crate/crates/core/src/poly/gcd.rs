//! Multivariate gcd over the rationals by recursive content / primitive-part
//! splitting and primitive pseudo-remainder sequences in the main variable.

use super::{exact_divide, Monomial, Poly, Rational};
use crate::error::{Error, Result};

/// Greatest common divisor, normalized to graded-lex leading coefficient 1.
/// `gcd(0, 0)` is zero.
pub fn gcd(p: &Poly, q: &Poly) -> Result<Poly> {
    if p.nvars() != q.nvars() {
        return Err(Error::NvarsMismatch(p.nvars(), q.nvars()));
    }
    Ok(gcd_inner(p, q).monic())
}

pub fn gcd_many<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> Result<Option<Poly>> {
    let mut acc: Option<Poly> = None;
    for p in polys {
        acc = Some(match acc {
            None => p.monic(),
            Some(g) => gcd(&g, p)?,
        });
    }
    Ok(acc)
}

/// Square-free part `h / gcd(h, dh/dx_1, ..., dh/dx_n)`, monic.
pub fn sqrf(h: &Poly) -> Result<Poly> {
    if h.is_constant() {
        return Err(Error::ConstantInput);
    }
    let g = derivative_gcd(h)?;
    let q = exact_divide(&g, h)?.expect("gcd divides its argument");
    Ok(q.monic())
}

/// True when no irreducible factor of `h` repeats. Constants count as
/// square-free.
pub fn is_square_free(h: &Poly) -> Result<bool> {
    if h.is_constant() {
        return Ok(true);
    }
    Ok(derivative_gcd(h)?.is_constant())
}

fn derivative_gcd(h: &Poly) -> Result<Poly> {
    let mut g = h.monic();
    for var in 0..h.nvars() {
        if g.is_constant() {
            break;
        }
        let dh = h.partial_derivative(var)?;
        g = gcd(&g, &dh)?;
    }
    Ok(g)
}

fn main_var(p: &Poly, q: &Poly) -> Option<usize> {
    (0..p.nvars())
        .rev()
        .find(|&v| p.involves(v) || q.involves(v))
}

fn gcd_inner(p: &Poly, q: &Poly) -> Poly {
    if p.is_zero() {
        return q.clone();
    }
    if q.is_zero() {
        return p.clone();
    }
    if p.is_constant() || q.is_constant() {
        return Poly::one(p.nvars());
    }
    let v = main_var(p, q).expect("nonconstant inputs involve a variable");
    if !p.involves(v) {
        return gcd_inner(p, &content(q, v));
    }
    if !q.involves(v) {
        return gcd_inner(&content(p, v), q);
    }
    let cp = content(p, v);
    let cq = content(q, v);
    let pp = divide(&cp, p);
    let qq = divide(&cq, q);
    let gc = gcd_inner(&cp, &cq);

    let (mut a, mut b) = if pp.degree_in(v) >= qq.degree_in(v) {
        (pp, qq)
    } else {
        (qq, pp)
    };
    let gp = loop {
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            break b;
        }
        if !r.involves(v) {
            break Poly::one(p.nvars());
        }
        a = b;
        b = primitive_part(&r, v);
    };
    (&gc * &primitive_part(&gp, v)).monic()
}

fn divide(d: &Poly, p: &Poly) -> Poly {
    exact_divide(d, p)
        .expect("same ring")
        .expect("content divides the polynomial")
}

/// gcd of the coefficients of `p` viewed in `K[others][v]`.
fn content(p: &Poly, v: usize) -> Poly {
    let mut g = Poly::zero(p.nvars());
    for c in p.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd_inner(&g, &c).monic();
        if g.is_constant() {
            return Poly::one(p.nvars());
        }
    }
    g
}

fn primitive_part(p: &Poly, v: usize) -> Poly {
    let c = content(p, v);
    divide(&c, p).monic()
}

fn leading_in(p: &Poly, v: usize) -> (u32, Poly) {
    let d = p.degree_in(v).unwrap_or(0);
    let lc = p.coefficients_in(v).swap_remove(d as usize);
    (d, lc)
}

fn pseudo_remainder(a: &Poly, b: &Poly, v: usize) -> Poly {
    let (db, lcb) = leading_in(b, v);
    let n = a.nvars();
    let mut r = a.clone();
    while !r.is_zero() {
        let (dr, lcr) = leading_in(&r, v);
        if dr < db {
            break;
        }
        let shift = Monomial::var(n, v).pow(dr - db);
        let shifted = (&lcr * b).mul_monomial(&shift, &Rational::from_integer(1.into()));
        r = &(&lcb * &r) - &shifted;
    }
    r
}
