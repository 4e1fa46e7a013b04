//! Checks of the structural consequences of a small bracket degree:
//! divisibility of `F_s` by powers of `h`, the quadratic relation between
//! `F_{s-1}` and `F_s`, the binomial pattern of the coefficients, and an
//! independent linear-algebra oracle for the least bracket degree reachable
//! by any `G` with a fixed top form.

use std::collections::BTreeMap;

use num_integer::binomial;
use num_traits::Zero;
use rayon::prelude::*;

use crate::bracket::{bracket_degree, poisson_bracket};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::{coeff_c, FamilySpec, FormulaParams, IndexAlpha};
use crate::linalg::linear_solve;
use crate::poly::{exact_divide, is_square_free, Degree, Monomial, Poly, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
}

fn hyp(name: impl Into<String>, holds: bool) -> Hypothesis {
    Hypothesis {
        name: name.into(),
        holds,
    }
}

/// `((s - k) / (d - k)) N`.
pub fn divisibility_threshold(d: u32, n: u32, k: u32) -> Result<Rational> {
    if d <= k + 1 {
        return Err(Error::params(format!("need k < s, got d = {d}, k = {k}")));
    }
    Ok(Rational::new(
        (i64::from(d - 1 - k) * i64::from(n)).into(),
        i64::from(d - k).into(),
    ))
}

/// Least `i >= 1` with `deg [F, G] < d + i`.
pub fn bracket_level(bracket: Degree, d: u32) -> u32 {
    match bracket {
        Degree::NegInfinity => 1,
        Degree::Finite(b) => (b + 1).saturating_sub(d).max(1),
    }
}

fn top_forms_match(spec: &FamilySpec, f: &Poly, g: &Poly) -> bool {
    f.nvars() == spec.nvars
        && g.nvars() == spec.nvars
        && f.degree() == Degree::Finite(spec.d())
        && g.degree() == Degree::Finite(spec.n())
        && f.top_form() == spec.f_top()
        && g.top_form() == spec.g_top()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub k: u32,
    pub bracket_degree: Degree,
    /// Least `i` with `deg [F, G] < d + i`.
    pub i: u32,
    #[serde(serialize_with = "crate::serde_util::rational")]
    pub threshold: Rational,
    pub hypotheses: Vec<Hypothesis>,
    /// `h^(k+1) | F_s`.
    pub conclusion: bool,
    /// `F_s / h^(k+1)` when the division is exact.
    pub cofactor: Option<Poly>,
}

impl DivisibilityReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    /// The implication "hypotheses => conclusion".
    pub fn consistent(&self) -> bool {
        !self.hypotheses_hold() || self.conclusion
    }
}

/// Evaluates the hypotheses `N != 0 mod d`, `2kt < d`,
/// `i < ((s - k)/(d - k)) N`, `h` square-free, and the conclusion
/// `h^(k+1) | F_s`.
pub fn check_divisibility(
    spec: &FamilySpec,
    f: &Poly,
    g: &Poly,
    k: u32,
) -> Result<DivisibilityReport> {
    let (d, n, t) = (spec.d(), spec.n(), spec.t());
    let bracket = bracket_degree(f, g)?;
    let i = bracket_level(bracket, d);
    let threshold = divisibility_threshold(d, n, k)?;
    let hypotheses = vec![
        hyp(
            "top forms are h^(d/t) and a_N h^(N/t)",
            top_forms_match(spec, f, g),
        ),
        hyp("N is not divisible by d", n % d != 0),
        hyp("2kt < d", 2 * k * t < d),
        hyp(
            "i < ((s - k)/(d - k)) N",
            Rational::from_integer(i.into()) < threshold,
        ),
        hyp("h is square-free", is_square_free(spec.h())?),
    ];
    let f_s = f.homogeneous_component(d - 1);
    let cofactor = exact_divide(&spec.h().pow(k + 1), &f_s)?;
    Ok(DivisibilityReport {
        k,
        bracket_degree: bracket,
        i,
        threshold,
        hypotheses,
        conclusion: cofactor.is_some(),
        cofactor,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DependenceReport {
    pub d1: u32,
    pub k: u32,
    pub bracket_degree: Degree,
    /// `d + N - 2k - 2`.
    pub bound: u32,
    pub hypotheses: Vec<Hypothesis>,
    /// `F_s / h^(d_1/t)`, when exact. Its sign is whatever the division
    /// gives; `-F~` satisfies the same relation.
    pub f_tilde: Option<Poly>,
    /// `(4 F_{s-1} - F~^2) / h`, when exact.
    pub f_hat: Option<Poly>,
    pub relation_holds: bool,
}

impl DependenceReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    pub fn consistent(&self) -> bool {
        !self.hypotheses_hold() || self.relation_holds
    }
}

/// `(d_1, k)` with `d = 2 d_1`, `N = d_1 (2k + 1)`, `d_1 >= 2`, `k >= 1`.
pub fn dependence_shape(d: u32, n: u32) -> Option<(u32, u32)> {
    if !d.is_multiple_of(2) || d < 4 {
        return None;
    }
    let d1 = d / 2;
    let q = n / d1;
    (n.is_multiple_of(d1) && q % 2 == 1 && q >= 3).then(|| (d1, (q - 1) / 2))
}

/// Extracts `F~ = F_s / h^(d_1/t)` and `F^ = (4 F_{s-1} - F~^2) / h`, so that
/// `F_{s-1} = (F~^2 + h F^) / 4`.
pub fn check_dependence(spec: &FamilySpec, f: &Poly, g: &Poly) -> Result<DependenceReport> {
    let (d, n, t) = (spec.d(), spec.n(), spec.t());
    let (d1, k) = dependence_shape(d, n).ok_or_else(|| {
        Error::NotApplicable(format!(
            "need d = 2 d_1 with d_1 >= 2 and N = d_1 (2k + 1) with k >= 1, got d = {d}, N = {n}"
        ))
    })?;
    let rtilde = spec
        .rtilde()
        .ok_or_else(|| Error::NotApplicable(format!("deg h = {t} must divide d_1 = {d1}")))?;
    let bracket = bracket_degree(f, g)?;
    let bound = d + n - 2 * k - 2;
    let hypotheses = vec![
        hyp(
            "top forms are h^(d/t) and a_N h^(N/t)",
            top_forms_match(spec, f, g),
        ),
        hyp(
            "deg [F, G] < d + N - 2k - 2",
            bracket < Degree::Finite(bound),
        ),
        hyp("h is square-free", is_square_free(spec.h())?),
    ];
    let h = spec.h();
    let f_s = f.homogeneous_component(d - 1);
    let f_s1 = f.homogeneous_component(d - 2);
    let f_tilde = exact_divide(&h.pow(rtilde), &f_s)?;
    let f_hat = match &f_tilde {
        Some(ft) => {
            let four = Rational::from_integer(4.into());
            exact_divide(h, &(&f_s1.scale(&four) - &ft.pow(2)))?
        }
        None => None,
    };
    Ok(DependenceReport {
        d1,
        k,
        bracket_degree: bracket,
        bound,
        hypotheses,
        relation_holds: f_hat.is_some(),
        f_tilde,
        f_hat,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialRow {
    pub l: u32,
    pub index: IndexAlpha,
    #[serde(serialize_with = "crate::serde_util::rational")]
    pub lhs: Rational,
    #[serde(serialize_with = "crate::serde_util::rational")]
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialReport {
    pub d1: u32,
    pub k: u32,
    pub t: u32,
    /// `N - 2k - 2`.
    pub j: u32,
    #[serde(serialize_with = "crate::serde_util::rational")]
    pub base: Rational,
    pub rows: Vec<BinomialRow>,
}

impl BinomialReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.lhs == r.rhs)
    }
}

/// `c^(N-2k-2)` at `((-2k-3+2l) r~, 0, ..., 0, l, 2k+2-2l)` against
/// `(-4)^l C(k+1, l)` times its value at `l = 0`, for `l = 0..=k+1`.
pub fn binomial_identity(d1: u32, k: u32, t: u32, a_n: &Rational) -> Result<BinomialReport> {
    if d1 < 2 || k < 1 || t == 0 || !d1.is_multiple_of(t) {
        return Err(Error::params(format!(
            "need d_1 >= 2, k >= 1 and t | d_1, got d_1 = {d1}, k = {k}, t = {t}"
        )));
    }
    if a_n.is_zero() {
        return Err(Error::params("a_N must be nonzero"));
    }
    let d = 2 * d1;
    let n = d1 * (2 * k + 1);
    let j = n - 2 * k - 2;
    let rt = i64::from(d1 / t);
    let params = FormulaParams::new(d, n, t, [(n, a_n.clone())].into_iter().collect())?;
    let s = (d - 1) as usize;
    let index = |l: u32| {
        let mut alphas = vec![0; s];
        alphas[s - 2] = l;
        alphas[s - 1] = 2 * k + 2 - 2 * l;
        IndexAlpha::new((-2 * i64::from(k) - 3 + 2 * i64::from(l)) * rt, alphas)
    };
    let base = coeff_c(j, &index(0), &params)?;
    let mut rows = Vec::new();
    for l in 0..=k + 1 {
        let alpha = index(l);
        let lhs = coeff_c(j, &alpha, &params)?;
        let factor = num_traits::pow(Rational::from_integer((-4).into()), l as usize)
            * Rational::from_integer(binomial(i64::from(k) + 1, i64::from(l)).into());
        rows.push(BinomialRow {
            l,
            index: alpha,
            lhs,
            rhs: factor * &base,
        });
    }
    Ok(BinomialReport {
        d1,
        k,
        t,
        j,
        base,
        rows,
    })
}

pub const DEFAULT_UNKNOWN_CAP: usize = 5000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleLevel {
    pub i: u32,
    pub feasible: bool,
    pub unknowns: usize,
    pub equations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub d: u32,
    pub n: u32,
    /// Levels from `N` down to the floor.
    pub levels: Vec<OracleLevel>,
    /// Least feasible `i`.
    pub best_i: u32,
    /// Witness `G` with `deg [F, G] < d + best_i`: the particular solution
    /// with every free unknown set to zero.
    pub witness: Poly,
}

impl OracleReport {
    /// `d + best_i`, the smallest strict upper bound on `deg [F, G]`.
    pub fn bound(&self) -> u32 {
        self.d + self.best_i
    }

    pub fn feasible_at(&self, i: u32) -> Option<bool> {
        self.levels.iter().find(|l| l.i == i).map(|l| l.feasible)
    }
}

type Key = ((usize, usize), Monomial);

fn bracket_entries(f: &Poly, g: &Poly) -> Result<BTreeMap<Key, Rational>> {
    let b = poisson_bracket(f, g)?;
    let mut out = BTreeMap::new();
    for (i, j, p) in b.entries() {
        for (m, c) in p.terms() {
            out.insert(((i, j), m.clone()), c.clone());
        }
    }
    Ok(out)
}

/// For each `i` from `N` down to `floor`, decides exactly whether some
/// `G = G_1 + ... + G_{N-1} + a_N h^(N/t)` has `deg [F, G] < d + i`.
///
/// Bracket degree `< d + i` means every coefficient monomial of degree
/// `>= d + i - 2` vanishes; each such coefficient is linear in the unknown
/// coefficients of `G`, and only unknowns of degree `>= i` enter.
pub fn min_bracket_degree_over_g(
    f: &Poly,
    n: u32,
    h: &Poly,
    a_n: &Rational,
    floor: u32,
    cap: usize,
) -> Result<OracleReport> {
    let nvars = f.nvars();
    if h.nvars() != nvars {
        return Err(Error::NvarsMismatch(nvars, h.nvars()));
    }
    let t = match h.degree() {
        Degree::Finite(t) if t > 0 && h.is_homogeneous() => t,
        _ => return Err(Error::params("h must be homogeneous and nonconstant")),
    };
    let d = f.degree().finite().unwrap_or(0);
    if d == 0 || !d.is_multiple_of(t) || f.top_form() != h.pow(d / t) {
        return Err(Error::params("the top form of F must be h^(d/t)"));
    }
    if !n.is_multiple_of(t) || n < 1 {
        return Err(Error::params(format!("deg h = {t} must divide N = {n}")));
    }
    if a_n.is_zero() {
        return Err(Error::params("a_N must be nonzero"));
    }
    let floor = floor.max(1);
    let unknowns: Vec<Monomial> = (1..n)
        .flat_map(|deg| Monomial::all_of_degree(nvars, deg))
        .collect();
    if unknowns.len() > cap {
        return Err(Error::TooLarge(format!(
            "{} unknown coefficients exceed the cap of {cap}",
            unknowns.len()
        )));
    }
    let g_top = h.pow(n / t).scale(a_n);
    let fixed = bracket_entries(f, &g_top)?;
    let columns: Vec<BTreeMap<Key, Rational>> = unknowns
        .par_iter()
        .map(|m| {
            bracket_entries(
                f,
                &Poly::monomial(nvars, m.clone(), Rational::from_integer(1.into())),
            )
        })
        .collect::<Result<_>>()?;

    let solve_level = |i: u32| -> Result<(OracleLevel, Option<Poly>)> {
        let min_deg = (d + i).saturating_sub(2);
        let cols: Vec<usize> = (0..unknowns.len())
            .filter(|&c| unknowns[c].degree() >= i)
            .collect();
        let mut rows: BTreeMap<&Key, usize> = BTreeMap::new();
        let keys = fixed
            .keys()
            .chain(cols.iter().flat_map(|&c| columns[c].keys()))
            .filter(|k| k.1.degree() >= min_deg);
        for key in keys {
            let next = rows.len();
            rows.entry(key).or_insert(next);
        }
        let mut a = vec![vec![Rational::zero(); cols.len()]; rows.len()];
        let mut b = vec![Rational::zero(); rows.len()];
        for (ci, &c) in cols.iter().enumerate() {
            for (key, v) in &columns[c] {
                if let Some(&r) = rows.get(key) {
                    a[r][ci] = v.clone();
                }
            }
        }
        for (key, v) in &fixed {
            if let Some(&r) = rows.get(key) {
                b[r] = -v.clone();
            }
        }
        let level = OracleLevel {
            i,
            feasible: false,
            unknowns: cols.len(),
            equations: rows.len(),
        };
        let Some(sol) = linear_solve(&a, &b)? else {
            return Ok((level, None));
        };
        let mut g = g_top.clone();
        for (ci, &c) in cols.iter().enumerate() {
            if !sol.particular[ci].is_zero() {
                g = &g + &Poly::monomial(nvars, unknowns[c].clone(), sol.particular[ci].clone());
            }
        }
        Ok((
            OracleLevel {
                feasible: true,
                ..level
            },
            Some(g),
        ))
    };

    let results: Vec<(OracleLevel, Option<Poly>)> = (floor..=n)
        .rev()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&i| solve_level(i))
        .collect::<Result<_>>()?;
    let mut best: Option<(u32, Poly)> = None;
    for (level, g) in &results {
        if let Some(g) = g {
            if best.as_ref().is_none_or(|(bi, _)| level.i < *bi) {
                best = Some((level.i, g.clone()));
            }
        }
    }
    let (best_i, witness) =
        best.ok_or_else(|| Error::Inconsistent("no level is feasible, not even i = N".into()))?;
    debug_assert!(bracket_degree(f, &witness)? < Degree::Finite(d + best_i));
    Ok(OracleReport {
        d,
        n,
        levels: results.into_iter().map(|(l, _)| l).collect(),
        best_i,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::build_g;
    use crate::poly::{int, parse_poly, rat};

    fn p(s: &str) -> Poly {
        parse_poly(s, 2).unwrap()
    }

    /// d = 4, t = 1, N = 6, h = x1 with `F_3 = h^2 F~`, `F_2 = (F~^2 + h F^)/4`.
    fn dependent_family(f_hat: &str) -> FamilySpec {
        let h = p("x1");
        let ft = p("x1 + 2*x2");
        let fh = p(f_hat);
        let f3 = &h.pow(2) * &ft;
        let f2 = (&ft.pow(2) + &(&h * &fh)).scale(&rat(1, 4));
        FamilySpec::new(
            2,
            4,
            6,
            h,
            vec![p("3*x2"), f2, f3],
            [(6, int(2)), (4, rat(1, 3))].into_iter().collect(),
        )
        .unwrap()
    }

    #[test]
    fn threshold_values() {
        assert_eq!(divisibility_threshold(4, 6, 0).unwrap(), rat(9, 2));
        assert_eq!(divisibility_threshold(4, 6, 1).unwrap(), int(4));
        assert_eq!(bracket_level(Degree::Finite(7), 4), 4);
        assert_eq!(bracket_level(Degree::NegInfinity, 4), 1);
    }

    #[test]
    fn dependence_forward_construction() {
        let spec = dependent_family("x2 - x1");
        let g = build_g(&spec, 2, None).unwrap();
        let f = spec.f();
        let rep = check_dependence(&spec, &f, &g).unwrap();
        assert!(rep.hypotheses_hold(), "{rep:?}");
        assert!(rep.relation_holds);
        assert_eq!(rep.f_tilde, Some(p("x1 + 2*x2")));
        assert_eq!(rep.f_hat, Some(p("x2 - x1")));

        let div = check_divisibility(&spec, &f, &g, 1).unwrap();
        assert!(div.conclusion);
        assert_eq!(div.cofactor, Some(p("x1 + 2*x2")));
    }

    #[test]
    fn perturbed_relation_fails_and_oracle_agrees() {
        let spec = dependent_family("x2");
        let mut comps = spec.f_components.clone();
        comps[1] = &comps[1] + &p("x2^2");
        let spec2 =
            FamilySpec::new(2, 4, 6, spec.h().clone(), comps, spec.params.a.clone()).unwrap();
        let f = spec2.f();
        let rep = check_dependence(&spec2, &f, &spec2.g_top()).unwrap();
        assert!(!rep.relation_holds);
        let oracle =
            min_bracket_degree_over_g(&f, 6, spec2.h(), spec2.params.a_n(), 1, DEFAULT_UNKNOWN_CAP)
                .unwrap();
        assert!(oracle.bound() >= rep.bound, "{oracle:?}");

        let f_ok = spec.f();
        let oracle = min_bracket_degree_over_g(
            &f_ok,
            6,
            spec.h(),
            spec.params.a_n(),
            1,
            DEFAULT_UNKNOWN_CAP,
        )
        .unwrap();
        assert!(oracle.bound() <= rep.bound);
        assert!(bracket_degree(&f_ok, &oracle.witness).unwrap() < Degree::Finite(oracle.bound()));
    }

    #[test]
    fn zero_f_s_degenerates() {
        let h = p("x1");
        let spec = FamilySpec::new(
            2,
            4,
            6,
            h.clone(),
            vec![p("x2"), &h * &p("x2"), Poly::zero(2)],
            [(6, int(1))].into_iter().collect(),
        )
        .unwrap();
        let f = spec.f();
        let rep = check_dependence(&spec, &f, &spec.g_top()).unwrap();
        assert_eq!(rep.f_tilde, Some(Poly::zero(2)));
        assert_eq!(rep.f_hat, Some(p("4*x2")));
    }

    #[test]
    fn divisibility_flags() {
        let spec = FamilySpec::new(
            2,
            4,
            8,
            p("x1"),
            vec![p("x2"), p("x2^2"), p("x2^3")],
            [(8, int(1))].into_iter().collect(),
        )
        .unwrap();
        let rep = check_divisibility(&spec, &spec.f(), &spec.g_top(), 0).unwrap();
        assert!(!rep.hypotheses[1].holds);
        assert!(!rep.conclusion);
        assert!(rep.consistent());
    }

    #[test]
    fn binomial_examples() {
        let rep = binomial_identity(2, 1, 1, &int(3)).unwrap();
        assert!(rep.all_hold(), "{rep:?}");
        assert_eq!(rep.rows[1].index, IndexAlpha::new(-6, vec![0, 1, 2]));
        assert_eq!(rep.rows[1].rhs, &rep.base * int(-8));
        assert_eq!(rep.rows[0].lhs, rep.rows[0].rhs);
        assert!(binomial_identity(2, 2, 2, &rat(-1, 2)).unwrap().all_hold());
    }

    #[test]
    fn oracle_trivial_top() {
        // F = h^2 + x2, N = 3 with h = x1: G = x1^3 + ... ; the bracket of F
        // with F-powers vanishes, so levels near N are feasible
        let f = p("x1^2 + x2");
        let rep = min_bracket_degree_over_g(&f, 3, &p("x1"), &int(1), 1, 100).unwrap();
        assert_eq!(rep.feasible_at(3), Some(true));
        assert!(bracket_degree(&f, &rep.witness).unwrap() < Degree::Finite(rep.bound()));
        assert!(matches!(
            min_bracket_degree_over_g(&f, 3, &p("x1"), &int(1), 1, 2),
            Err(Error::TooLarge(_))
        ));
    }
}
