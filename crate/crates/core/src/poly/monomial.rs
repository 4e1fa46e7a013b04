use std::fmt;

use smallvec::SmallVec;

/// Exponent vector of a monomial.
///
/// Field order matters: the derived `Ord` compares total degree first and
/// then the exponents lexicographically with `x1 > x2 > ...`, which is the
/// graded-lex order used everywhere in the crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    deg: u32,
    exps: SmallVec<[u32; 4]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            deg: 0,
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn var(nvars: usize, var: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[var] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial {
            deg: exps.iter().sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    /// All monomials of total degree `deg` in `nvars` variables, in
    /// ascending graded-lex order.
    pub fn all_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
        fn walk(var: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if var + 1 == cur.len() {
                cur[var] = left;
                out.push(Monomial::from_exponents(cur));
                return;
            }
            for e in 0..=left {
                cur[var] = e;
                walk(var + 1, left - e, cur, out);
            }
            cur[var] = 0;
        }
        if nvars == 0 {
            return if deg == 0 {
                vec![Monomial::one(0)]
            } else {
                Vec::new()
            };
        }
        let mut out = Vec::new();
        walk(0, deg, &mut vec![0; nvars], &mut out);
        out.sort();
        out
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            deg: self.deg + other.deg,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial {
            deg: self.deg * e,
            exps: self.exps.iter().map(|a| a * e).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if exact.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            deg: other.deg - self.deg,
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Exact m-th root, if every exponent is divisible by `m`.
    pub fn root(&self, m: u32) -> Option<Monomial> {
        if m == 0 || self.exps.iter().any(|e| e % m != 0) {
            return None;
        }
        Some(Monomial {
            deg: self.deg / m,
            exps: self.exps.iter().map(|e| e / m).collect(),
        })
    }

    /// Lowers the exponent of `var` by one, returning the old exponent.
    pub(crate) fn differentiate(&self, var: usize) -> Option<(u32, Monomial)> {
        let e = self.exps[var];
        if e == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exps[var] -= 1;
        m.deg -= 1;
        Some((e, m))
    }

    pub(crate) fn with_exponent(&self, var: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.deg = m.deg - m.exps[var] + e;
        m.exps[var] = e;
        m
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x1sq = Monomial::from_exponents(&[2, 0]);
        let x1x2 = Monomial::from_exponents(&[1, 1]);
        let x2cube = Monomial::from_exponents(&[0, 3]);
        let x1 = Monomial::from_exponents(&[1, 0]);
        assert!(x1sq > x1x2);
        assert!(x2cube > x1sq);
        assert!(x1x2 > x1);
        assert!(x1 > Monomial::one(2));
    }

    #[test]
    fn division_and_roots() {
        let a = Monomial::from_exponents(&[2, 4]);
        let b = Monomial::from_exponents(&[1, 1]);
        assert_eq!(b.divide_into(&a), Some(Monomial::from_exponents(&[1, 3])));
        assert_eq!(a.divide_into(&b), None);
        assert_eq!(a.root(2), Some(Monomial::from_exponents(&[1, 2])));
        assert_eq!(a.root(4), None);
    }

    #[test]
    fn enumerate_by_degree() {
        let all = Monomial::all_of_degree(3, 2);
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|m| m.degree() == 2));
        assert_eq!(Monomial::all_of_degree(2, 0), vec![Monomial::one(2)]);
    }
}
