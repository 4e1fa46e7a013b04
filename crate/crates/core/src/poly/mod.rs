//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], so iteration runs in
//! increasing graded-lex order and the leading term is the last entry.

mod gcd;
mod monomial;
mod parse;
mod power;
mod rational;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use gcd::{gcd, gcd_many, is_square_free, sqrf};
pub use monomial::Monomial;
pub use parse::parse_poly;
pub use power::{is_power_up_to_constant, is_proper_power, poly_root};
pub use rational::{int, parse_rational, rat, rational_root, Rational};

/// Total degree with the convention `deg 0 = -inf`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    pub fn is_neg_infinity(self) -> bool {
        self == Degree::NegInfinity
    }

    /// `self + k`, with `-inf + k = -inf`.
    pub fn shift(self, k: u32) -> Degree {
        match self {
            Degree::NegInfinity => Degree::NegInfinity,
            Degree::Finite(d) => Degree::Finite(d + k),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, var: usize) -> Self {
        Self::monomial(nvars, Monomial::var(nvars, var), Rational::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.nvars(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    /// Builds a polynomial from (possibly repeated or zero) terms.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.terms.keys().next_back() {
            None => Degree::NegInfinity,
            Some(m) => Degree::Finite(m.degree()),
        }
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.nvars))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.leading_term().map(|(_, c)| c)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::NvarsMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.nvars));
        }
        let mut acc: std::collections::HashMap<Monomial, Rational> =
            std::collections::HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                acc.entry(ma.mul(mb)).and_modify(|v| *v += &c).or_insert(c);
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Poly {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to the 0-based variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Result<Poly> {
        if var >= self.nvars {
            return Err(Error::VarOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.differentiate(var) {
                out.add_term(dm, c * Rational::from_integer(e.into()));
            }
        }
        Ok(out)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// The degree-`deg` graded part.
    pub fn homogeneous_component(&self, deg: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == deg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Nonzero graded parts in increasing degree order.
    pub fn homogeneous_components(&self) -> Vec<(u32, HomogeneousPoly)> {
        let mut out: Vec<(u32, Poly)> = Vec::new();
        for (m, c) in &self.terms {
            let d = m.degree();
            match out.last_mut() {
                Some((last, p)) if *last == d => {
                    p.terms.insert(m.clone(), c.clone());
                }
                _ => out.push((d, Poly::monomial(self.nvars, m.clone(), c.clone()))),
            }
        }
        out.into_iter()
            .map(|(d, p)| {
                (
                    d,
                    HomogeneousPoly {
                        inner: p,
                        degree: d,
                    },
                )
            })
            .collect()
    }

    /// Highest-degree graded part; zero for the zero polynomial.
    pub fn top_form(&self) -> Poly {
        match self.degree() {
            Degree::NegInfinity => self.clone(),
            Degree::Finite(d) => self.homogeneous_component(d),
        }
    }

    /// Scales so the graded-lex leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    /// Coefficients with respect to `var`: entry `e` is the coefficient of
    /// `var^e`, a polynomial not involving `var`.
    pub(crate) fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Poly::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            out[e].terms.insert(m.with_exponent(var, 0), c.clone());
        }
        out
    }

    /// Substitutes `subs[i]` for the variable `x_{i+1}`.
    pub fn compose(&self, subs: &[Poly]) -> Result<Poly> {
        if subs.len() != self.nvars {
            return Err(Error::NvarsMismatch(self.nvars, subs.len()));
        }
        let target = match subs.first() {
            Some(p) => p.nvars,
            None => return Ok(self.clone()),
        };
        if let Some(bad) = subs.iter().find(|p| p.nvars != target) {
            return Err(Error::NvarsMismatch(target, bad.nvars));
        }
        let mut powers: Vec<Vec<Poly>> = subs
            .iter()
            .map(|p| vec![Poly::one(target), p.clone()])
            .collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &subs[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Evaluates at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::NvarsMismatch(self.nvars, point.len()));
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }
}

/// `P / divisor` if the division is exact, `None` otherwise.
///
/// Runs the graded-lex division algorithm; a leading term of the running
/// remainder that the divisor's leading term does not divide certifies
/// non-divisibility.
pub fn exact_divide(divisor: &Poly, p: &Poly) -> Result<Option<Poly>> {
    divisor.check_ring(p)?;
    let (lm, lc) = match divisor.leading_term() {
        None => return Err(Error::ZeroDivisor),
        Some((m, c)) => (m.clone(), c.clone()),
    };
    if divisor.len() == 1 {
        let mut q = Poly::zero(p.nvars);
        let inv = lc.recip();
        for (m, c) in &p.terms {
            match lm.divide_into(m) {
                Some(qm) => {
                    q.terms.insert(qm, c * &inv);
                }
                None => return Ok(None),
            }
        }
        return Ok(Some(q));
    }
    if let (Degree::Finite(dp), Degree::Finite(dd)) = (p.degree(), divisor.degree()) {
        if dd > dp {
            return Ok(None);
        }
    }
    let mut rem = p.clone();
    let mut quotient = Poly::zero(p.nvars);
    while let Some((rm, rc)) = rem.leading_term() {
        let qm = match lm.divide_into(rm) {
            Some(qm) => qm,
            None => return Ok(None),
        };
        let qc = rc / &lc;
        for (m, c) in &divisor.terms {
            rem.add_term(m.mul(&qm), -(c * &qc));
        }
        quotient.add_term(qm, qc);
    }
    Ok(Some(quotient))
}

/// The arithmetic operations exposed by [`arith`].
#[derive(Clone, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Scale(Rational),
    Pow(u32),
}

/// Applies `op` to the operands, checking that they share a ring.
///
/// `Add` and `Mul` fold over all operands, `Sub` subtracts the rest from the
/// first, and `Scale`/`Pow` take exactly one operand.
pub fn arith(op: &ArithOp, operands: &[Poly]) -> Result<Poly> {
    let first = operands
        .first()
        .ok_or_else(|| Error::params("arith needs at least one operand"))?;
    match op {
        ArithOp::Add => operands[1..]
            .iter()
            .try_fold(first.clone(), |acc, p| acc.checked_add(p)),
        ArithOp::Sub => operands[1..]
            .iter()
            .try_fold(first.clone(), |acc, p| acc.checked_sub(p)),
        ArithOp::Mul => operands[1..]
            .iter()
            .try_fold(first.clone(), |acc, p| acc.checked_mul(p)),
        ArithOp::Scale(c) if operands.len() == 1 => Ok(first.scale(c)),
        ArithOp::Pow(e) if operands.len() == 1 => Ok(first.pow(*e)),
        _ => Err(Error::params("scale and pow take exactly one operand")),
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomial ring mismatch")
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// A polynomial whose terms all share one total degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomogeneousPoly {
    inner: Poly,
    degree: u32,
}

impl HomogeneousPoly {
    pub fn new(p: Poly) -> Result<Self> {
        if !p.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let degree = p.degree().finite().unwrap_or(0);
        Ok(HomogeneousPoly { inner: p, degree })
    }

    /// Zero polynomial tagged with a nominal degree.
    pub fn zero(nvars: usize, degree: u32) -> Self {
        HomogeneousPoly {
            inner: Poly::zero(nvars),
            degree,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn as_poly(&self) -> &Poly {
        &self.inner
    }

    pub fn into_poly(self) -> Poly {
        self.inner
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }
}

impl fmt::Display for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Poly {
        parse_poly(s, n).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = p("x1 + x2", 2);
        let b = p("x1 - x2", 2);
        assert_eq!(&a * &b, p("x1^2 - x2^2", 2));
    }

    #[test]
    fn additive_inverse_has_neg_infinite_degree() {
        let a = p("3/2*x1^2*x2 - x3 + 7", 3);
        let z = arith(&ArithOp::Add, &[a.clone(), a.scale(&int(-1))]).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), Degree::NegInfinity);
    }

    #[test]
    fn cube_by_repeated_multiplication() {
        let a = p("x1 + 1", 1);
        let by_hand = &(&a * &a) * &a;
        assert_eq!(a.pow(3), by_hand);
        assert_eq!(by_hand, p("x1^3 + 3*x1^2 + 3*x1 + 1", 1));
    }

    #[test]
    fn ring_mismatch() {
        let a = p("x1", 1);
        let b = p("x1", 2);
        assert_eq!(a.checked_add(&b), Err(Error::NvarsMismatch(1, 2)));
        assert!(arith(&ArithOp::Mul, &[a, b]).is_err());
    }

    #[test]
    fn partials() {
        assert_eq!(
            p("x1^2*x2", 2).partial_derivative(0).unwrap(),
            p("2*x1*x2", 2)
        );
        assert!(p("x2^3", 2).partial_derivative(0).unwrap().is_zero());
        // inner polynomial of the Nagata automorphism, z = x3, x = x1, y = x2
        assert_eq!(
            p("x2^2 + x3*x1", 3).partial_derivative(2).unwrap(),
            p("x1", 3)
        );
        assert!(matches!(
            p("x1", 2).partial_derivative(2),
            Err(Error::VarOutOfRange { .. })
        ));
    }

    #[test]
    fn components() {
        let comps = p("x1^2 + x2", 2).homogeneous_components();
        assert_eq!(comps.len(), 2);
        assert_eq!((comps[0].0, comps[0].1.as_poly()), (1, &p("x2", 2)));
        assert_eq!((comps[1].0, comps[1].1.as_poly()), (2, &p("x1^2", 2)));
        assert!(Poly::zero(2).homogeneous_components().is_empty());

        let sq = p("x1 + 1", 1).pow(2);
        let comps: Vec<_> = sq
            .homogeneous_components()
            .into_iter()
            .map(|(d, h)| (d, h.into_poly()))
            .collect();
        assert_eq!(
            comps,
            vec![(0, p("1", 1)), (1, p("2*x1", 1)), (2, p("x1^2", 1))]
        );
    }

    #[test]
    fn exact_division() {
        assert_eq!(
            exact_divide(&p("x1", 2), &p("x1^2*x2", 2)).unwrap(),
            Some(p("x1*x2", 2))
        );
        assert_eq!(
            exact_divide(&p("x1 + x2", 2), &p("x1^2 - x2^2", 2)).unwrap(),
            Some(p("x1 - x2", 2))
        );
        assert_eq!(
            exact_divide(&p("x1*x2", 2), &p("x1^2 + x2^2", 2)).unwrap(),
            None
        );
        assert_eq!(
            exact_divide(&Poly::zero(2), &p("x1", 2)),
            Err(Error::ZeroDivisor)
        );
    }

    #[test]
    fn compose_and_evaluate() {
        let f = p("x1^2 + x2", 2);
        let g = p("x1*x2", 2);
        let pp = p("x1*x2 - 1", 2);
        let composed = pp.compose(&[f.clone(), g.clone()]).unwrap();
        assert_eq!(composed, &(&f * &g) - &Poly::one(2));
        assert_eq!(f.evaluate(&[int(2), int(3)]).unwrap(), int(7));
    }
}
