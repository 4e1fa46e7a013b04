//! Poisson brackets as elements of the free module on the symbols
//! `[x_i, x_j]`, `i < j`, each of degree 2.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::One;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Degree, Poly, Rational};

/// `sum_{i<j} c_ij [x_i, x_j]`. Keys are 0-based pairs `(i, j)` with `i < j`;
/// zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketElement {
    nvars: usize,
    coeffs: BTreeMap<(usize, usize), Poly>,
}

impl BracketElement {
    pub fn zero(nvars: usize) -> Self {
        BracketElement {
            nvars,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn insert(&mut self, key: (usize, usize), p: Poly) {
        if p.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, p);
        }
    }

    /// Coefficient of `[x_i, x_j]` (0-based), using `[x_j, x_i] = -[x_i, x_j]`.
    pub fn coefficient(&self, i: usize, j: usize) -> Poly {
        let zero = || Poly::zero(self.nvars);
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.coeffs.get(&(i, j)).cloned().unwrap_or_else(zero),
            std::cmp::Ordering::Greater => {
                self.coeffs.get(&(j, i)).map(|p| -p).unwrap_or_else(zero)
            }
            std::cmp::Ordering::Equal => zero(),
        }
    }

    /// Stored `(i, j, c_ij)` entries, 0-based, in key order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        self.coeffs.iter().map(|(&(i, j), p)| (i, j, p))
    }

    /// `2 + max deg c_ij`, or `-inf` for the zero element.
    pub fn degree(&self) -> Degree {
        self.coeffs
            .values()
            .map(Poly::degree)
            .max()
            .unwrap_or(Degree::NegInfinity)
            .shift(2)
    }

    /// For two variables the bracket is `J [x_1, x_2]` with `J` the Jacobian
    /// determinant; returns `J`.
    pub fn jacobian(&self) -> Option<Poly> {
        (self.nvars == 2).then(|| self.coefficient(0, 1))
    }

    /// The part of bracket degree exactly `deg` (coefficients of degree
    /// `deg - 2`).
    pub fn component(&self, deg: u32) -> BracketElement {
        let mut out = BracketElement::zero(self.nvars);
        if deg < 2 {
            return out;
        }
        for (&k, p) in &self.coeffs {
            out.insert(k, p.homogeneous_component(deg - 2));
        }
        out
    }

    pub fn checked_add(&self, other: &BracketElement) -> Result<BracketElement> {
        if self.nvars != other.nvars {
            return Err(Error::NvarsMismatch(self.nvars, other.nvars));
        }
        let mut out = self.clone();
        for (&k, p) in &other.coeffs {
            let sum = match out.coeffs.get(&k) {
                Some(q) => q + p,
                None => p.clone(),
            };
            out.insert(k, sum);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> BracketElement {
        let mut out = BracketElement::zero(self.nvars);
        for (&k, p) in &self.coeffs {
            out.insert(k, p.scale(c));
        }
        out
    }

    /// Multiplication by a polynomial scalar of the module.
    pub fn mul_poly(&self, q: &Poly) -> Result<BracketElement> {
        if self.nvars != q.nvars() {
            return Err(Error::NvarsMismatch(self.nvars, q.nvars()));
        }
        let mut out = BracketElement::zero(self.nvars);
        for (&k, p) in &self.coeffs {
            out.insert(k, p * q);
        }
        Ok(out)
    }

    pub fn neg(&self) -> BracketElement {
        self.scale(&-Rational::one())
    }
}

fn check_pair(f: &Poly, g: &Poly) -> Result<usize> {
    if f.nvars() != g.nvars() {
        return Err(Error::NvarsMismatch(f.nvars(), g.nvars()));
    }
    if f.nvars() < 2 {
        return Err(Error::TooFewVars);
    }
    Ok(f.nvars())
}

/// `[F, G] = sum_{i<j} (dF/dx_i dG/dx_j - dF/dx_j dG/dx_i) [x_i, x_j]`.
pub fn poisson_bracket(f: &Poly, g: &Poly) -> Result<BracketElement> {
    let n = check_pair(f, g)?;
    let df: Vec<Poly> = (0..n)
        .map(|i| f.partial_derivative(i))
        .collect::<Result<_>>()?;
    let dg: Vec<Poly> = (0..n)
        .map(|i| g.partial_derivative(i))
        .collect::<Result<_>>()?;
    let mut out = BracketElement::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            if (df[i].is_zero() || dg[j].is_zero()) && (df[j].is_zero() || dg[i].is_zero()) {
                continue;
            }
            out.insert((i, j), &(&df[i] * &dg[j]) - &(&df[j] * &dg[i]));
        }
    }
    Ok(out)
}

pub fn bracket_degree(f: &Poly, g: &Poly) -> Result<Degree> {
    Ok(poisson_bracket(f, g)?.degree())
}

/// Inputs and outputs of the Shestakov-Umirbaev / Makar-Limanov-Yu estimate
/// `deg P(f, g) >= D(f, g) * w(P)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuBoundData {
    pub gcd_degs: u32,
    /// `D(f,g) = 1 - (gcd(deg f, deg g) - (deg fg - deg [f,g])) / (deg f deg g)`.
    #[serde(serialize_with = "crate::serde_util::rational")]
    pub deficiency: Rational,
    /// `w(P)` with weights `w(x) = deg f`, `w(y) = deg g`.
    pub weighted_degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuBound {
    pub data: SuBoundData,
    pub bracket_degree: u32,
    /// `D(f,g) * w(P)`.
    #[serde(serialize_with = "crate::serde_util::rational")]
    pub lower_bound: Rational,
    /// `deg P(f, g)`, computed by substitution.
    pub composed_degree: Degree,
}

impl SuBound {
    pub fn holds(&self) -> bool {
        match self.composed_degree {
            Degree::NegInfinity => false,
            Degree::Finite(d) => Rational::from_integer(d.into()) >= self.lower_bound,
        }
    }
}

/// Evaluates the bound for `f`, `g` and a bivariate `p` (variables `x1`, `x2`
/// stand for the formal `x`, `y`).
pub fn su_bound(f: &Poly, g: &Poly, p: &Poly) -> Result<SuBound> {
    check_pair(f, g)?;
    if p.nvars() != 2 {
        return Err(Error::params("P must be a polynomial in two variables"));
    }
    if p.is_zero() {
        return Err(Error::params("P must be nonzero"));
    }
    let (df, dg) = match (f.degree(), g.degree()) {
        (Degree::Finite(a), Degree::Finite(b)) if a > 0 && b > 0 => (a, b),
        _ => return Err(Error::ConstantInput),
    };
    let bracket = match bracket_degree(f, g)? {
        Degree::Finite(b) => b,
        Degree::NegInfinity => {
            return Err(Error::NotApplicable(
                "[f, g] = 0, so f and g are algebraically dependent".into(),
            ))
        }
    };
    let gcd_degs = df.gcd(&dg);
    let numerator = i64::from(gcd_degs) - (i64::from(df + dg) - i64::from(bracket));
    let deficiency =
        Rational::one() - Rational::new(numerator.into(), (i64::from(df) * i64::from(dg)).into());
    let weighted_degree = p
        .terms()
        .map(|(m, _)| m.exponent(0) * df + m.exponent(1) * dg)
        .max()
        .unwrap_or(0);
    let composed = p.compose(&[f.clone(), g.clone()])?;
    Ok(SuBound {
        lower_bound: &deficiency * Rational::from_integer(weighted_degree.into()),
        data: SuBoundData {
            gcd_degs,
            deficiency,
            weighted_degree,
        },
        bracket_degree: bracket,
        composed_degree: composed.degree(),
    })
}
