//! Closed-form homogeneous components of `G`.
//!
//! With `F = F_1 + ... + F_s + h^r` (`s = d - 1`, `t = deg h`, `r = d / t`)
//! and `G_N = a_N h^(N/t)`, a small bracket degree forces
//!
//! ```text
//! G_j = sum_{alpha in Z^(t)_{j,N,d}} c^(j)_alpha F_1^alpha_1 ... F_s^alpha_s h^alpha_0
//!
//! c^(j)_alpha = prod_{k=1}^{|alpha|} (alpha_0 + r k)
//!               / prod_{l=1}^{s} prod_{i=1}^{alpha_l} (r i)
//!               * a_{t alpha_0 + d |alpha|}
//! ```
//!
//! where `|alpha| = alpha_1 + ... + alpha_s` and the index set is cut out by
//! `t alpha_0 + sum l alpha_l = j` and `t alpha_0 + d |alpha| <= N`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{exact_divide, is_power_up_to_constant, HomogeneousPoly, Poly, Rational};

/// `(alpha_0, alpha_1, ..., alpha_s)` with `alpha_0` any integer. The derived
/// order is lexicographic on the tuple.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexAlpha {
    pub alpha0: i64,
    pub alphas: Vec<u32>,
}

impl IndexAlpha {
    pub fn new(alpha0: i64, alphas: Vec<u32>) -> Self {
        IndexAlpha { alpha0, alphas }
    }

    /// Builds from a full tuple `[alpha_0, alpha_1, ..., alpha_s]`.
    pub fn from_tuple(tuple: &[i64]) -> Result<Self> {
        let (&a0, rest) = tuple
            .split_first()
            .ok_or_else(|| Error::params("empty index tuple"))?;
        let alphas = rest
            .iter()
            .map(|&x| {
                u32::try_from(x).map_err(|_| Error::params("alpha_1..alpha_s must be non-negative"))
            })
            .collect::<Result<_>>()?;
        Ok(IndexAlpha::new(a0, alphas))
    }

    pub fn to_tuple(&self) -> Vec<i64> {
        std::iter::once(self.alpha0)
            .chain(self.alphas.iter().map(|&a| i64::from(a)))
            .collect()
    }

    pub fn s(&self) -> usize {
        self.alphas.len()
    }

    /// `alpha_1 + ... + alpha_s`.
    pub fn total(&self) -> u32 {
        self.alphas.iter().sum()
    }

    /// `t alpha_0 + sum l alpha_l`.
    pub fn weighted_degree(&self, t: u32) -> i64 {
        i64::from(t) * self.alpha0
            + self
                .alphas
                .iter()
                .enumerate()
                .map(|(l, &a)| (l as i64 + 1) * i64::from(a))
                .sum::<i64>()
    }

    /// `t alpha_0 + d |alpha|`, the subscript of the free constant.
    pub fn budget(&self, t: u32, d: u32) -> i64 {
        i64::from(t) * self.alpha0 + i64::from(d) * i64::from(self.total())
    }

    pub fn shift0(&self, by: i64) -> IndexAlpha {
        IndexAlpha::new(self.alpha0 + by, self.alphas.clone())
    }

    /// `alpha + e_k` for `k` in `1..=s`.
    pub fn plus(&self, k: usize) -> IndexAlpha {
        let mut a = self.clone();
        a.alphas[k - 1] += 1;
        a
    }

    /// `alpha - e_k` for `k` in `1..=s`, if it stays in `Z x N^s`.
    pub fn minus(&self, k: usize) -> Option<IndexAlpha> {
        let mut a = self.clone();
        let slot = &mut a.alphas[k - 1];
        *slot = slot.checked_sub(1)?;
        Some(a)
    }
}

impl fmt::Display for IndexAlpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.alpha0)?;
        for a in &self.alphas {
            write!(f, ",{a}")?;
        }
        write!(f, ")")
    }
}

/// Degrees and free constants entering the coefficient formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaParams {
    /// `d = deg F`.
    pub deg_f: u32,
    /// `N = deg G`.
    pub deg_g: u32,
    /// `t = deg h`.
    pub deg_h: u32,
    /// `a_j`; missing entries are zero.
    pub a: BTreeMap<u32, Rational>,
}

impl FormulaParams {
    pub fn new(deg_f: u32, deg_g: u32, deg_h: u32, a: BTreeMap<u32, Rational>) -> Result<Self> {
        check_degrees(deg_f, deg_g, deg_h)?;
        let mut a = a;
        a.retain(|_, v| !v.is_zero());
        if let Some((&j, _)) = a.iter().find(|(&j, _)| j % deg_h != 0) {
            return Err(Error::params(format!(
                "a_{j} must be zero because deg h = {deg_h} does not divide {j}"
            )));
        }
        if let Some((&j, _)) = a.iter().find(|(&j, _)| j == 0 || j > deg_g) {
            return Err(Error::params(format!("a_{j} is outside 1..=N = {deg_g}")));
        }
        if !a.contains_key(&deg_g) {
            return Err(Error::params("a_N must be nonzero"));
        }
        Ok(FormulaParams {
            deg_f,
            deg_g,
            deg_h,
            a,
        })
    }

    pub fn s(&self) -> u32 {
        self.deg_f - 1
    }

    /// `r = d / t`.
    pub fn r(&self) -> u32 {
        self.deg_f / self.deg_h
    }

    pub fn a_n(&self) -> &Rational {
        &self.a[&self.deg_g]
    }

    pub fn a_at(&self, j: i64) -> Rational {
        u32::try_from(j)
            .ok()
            .and_then(|j| self.a.get(&j).cloned())
            .unwrap_or_else(Rational::zero)
    }

    pub fn contains(&self, j: u32, alpha: &IndexAlpha) -> bool {
        alpha.s() == self.s() as usize
            && alpha.weighted_degree(self.deg_h) == i64::from(j)
            && alpha.budget(self.deg_h, self.deg_f) <= i64::from(self.deg_g)
    }
}

fn check_degrees(d: u32, n: u32, t: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::params("deg F must be at least 2"));
    }
    if t == 0 || !d.is_multiple_of(t) || !n.is_multiple_of(t) {
        return Err(Error::params(format!(
            "deg h = {t} must divide both deg F = {d} and N = {n}"
        )));
    }
    Ok(())
}

/// Members of `Z^(t)_{j,N,d}` in lexicographic order.
pub fn enumerate_indices(j: u32, n: u32, d: u32, t: u32) -> Result<Vec<IndexAlpha>> {
    check_degrees(d, n, t)?;
    if j == 0 || j > n {
        return Err(Error::params(format!("j = {j} must lie in 1..=N = {n}")));
    }
    // sum (d - l) alpha_l <= N - j is the budget constraint after
    // eliminating alpha_0
    struct Walk {
        d: u32,
        j: u32,
        t: u32,
        alphas: Vec<u32>,
        out: Vec<IndexAlpha>,
    }
    impl Walk {
        fn step(&mut self, l: usize, budget: u32, weighted: u32) {
            if l == 0 {
                let rest = i64::from(self.j) - i64::from(weighted);
                let t = i64::from(self.t);
                if rest.rem_euclid(t) == 0 {
                    self.out
                        .push(IndexAlpha::new(rest.div_euclid(t), self.alphas.clone()));
                }
                return;
            }
            let cost = self.d - l as u32;
            let mut a = 0;
            while a * cost <= budget {
                self.alphas[l - 1] = a;
                self.step(l - 1, budget - a * cost, weighted + a * l as u32);
                a += 1;
            }
            self.alphas[l - 1] = 0;
        }
    }
    let s = (d - 1) as usize;
    let mut walk = Walk {
        d,
        j,
        t,
        alphas: vec![0u32; s],
        out: Vec::new(),
    };
    walk.step(s, n - j, 0);
    let mut out = walk.out;
    out.sort();
    Ok(out)
}

/// `c^(j)_alpha` from the closed form.
pub fn coeff_c(j: u32, alpha: &IndexAlpha, params: &FormulaParams) -> Result<Rational> {
    if !params.contains(j, alpha) {
        return Err(Error::NotInIndexSet(format!("{alpha} for j = {j}")));
    }
    Ok(closed_form(alpha, params))
}

fn closed_form(alpha: &IndexAlpha, params: &FormulaParams) -> Rational {
    let a = params.a_at(alpha.budget(params.deg_h, params.deg_f));
    if a.is_zero() {
        return a;
    }
    let r = i64::from(params.r());
    let mut num = Rational::one();
    for k in 1..=i64::from(alpha.total()) {
        let factor = alpha.alpha0 + r * k;
        if factor == 0 {
            return Rational::zero();
        }
        num *= Rational::from_integer(factor.into());
    }
    let mut den = Rational::one();
    for &al in &alpha.alphas {
        for i in 1..=i64::from(al) {
            den *= Rational::from_integer((r * i).into());
        }
    }
    num / den * a
}

/// All parameters of a family `F = F_1 + ... + F_s + h^(d/t)`,
/// `G_N = a_N h^(N/t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub nvars: usize,
    pub params: FormulaParams,
    pub h: HomogeneousPoly,
    /// `F_1, ..., F_s` in order; entry `l - 1` is `F_l`.
    pub f_components: Vec<Poly>,
}

impl FamilySpec {
    pub fn new(
        nvars: usize,
        deg_f: u32,
        deg_g: u32,
        h: Poly,
        f_components: Vec<Poly>,
        a: BTreeMap<u32, Rational>,
    ) -> Result<Self> {
        if deg_g < deg_f {
            return Err(Error::params(format!(
                "N = {deg_g} must be at least d = {deg_f}"
            )));
        }
        if h.nvars() != nvars {
            return Err(Error::NvarsMismatch(nvars, h.nvars()));
        }
        let h = HomogeneousPoly::new(h).map_err(|_| Error::params("h must be homogeneous"))?;
        let t = h.as_poly().degree().finite().unwrap_or(0);
        if t == 0 {
            return Err(Error::params("h must be nonconstant"));
        }
        let params = FormulaParams::new(deg_f, deg_g, t, a)?;
        if is_power_up_to_constant(h.as_poly())?.is_some() {
            return Err(Error::params(
                "h must not be a power of a lower-degree polynomial",
            ));
        }
        let s = (deg_f - 1) as usize;
        if f_components.len() > s {
            return Err(Error::params(format!(
                "got {} lower components of F but s = {s}",
                f_components.len()
            )));
        }
        let mut comps = f_components;
        comps.resize(s, Poly::zero(nvars));
        for (idx, c) in comps.iter().enumerate() {
            if c.nvars() != nvars {
                return Err(Error::NvarsMismatch(nvars, c.nvars()));
            }
            if !c.is_zero() && !(c.is_homogeneous() && c.degree().finite() == Some(idx as u32 + 1))
            {
                return Err(Error::params(format!(
                    "F_{} must be homogeneous of degree {} or zero",
                    idx + 1,
                    idx + 1
                )));
            }
        }
        Ok(FamilySpec {
            nvars,
            params,
            h,
            f_components: comps,
        })
    }

    pub fn d(&self) -> u32 {
        self.params.deg_f
    }

    pub fn n(&self) -> u32 {
        self.params.deg_g
    }

    pub fn t(&self) -> u32 {
        self.params.deg_h
    }

    pub fn s(&self) -> u32 {
        self.params.s()
    }

    pub fn r(&self) -> u32 {
        self.params.r()
    }

    /// `d_1 / t` when `d = 2 d_1` and `t | d_1`.
    pub fn rtilde(&self) -> Option<u32> {
        let d = self.d();
        (d.is_multiple_of(2) && (d / 2).is_multiple_of(self.t())).then(|| d / 2 / self.t())
    }

    pub fn h(&self) -> &Poly {
        self.h.as_poly()
    }

    /// `F_l` for `l` in `1..=s`.
    pub fn f_component(&self, l: u32) -> &Poly {
        &self.f_components[(l - 1) as usize]
    }

    pub fn f_top(&self) -> Poly {
        self.h().pow(self.r())
    }

    pub fn g_top(&self) -> Poly {
        self.h().pow(self.n() / self.t()).scale(self.params.a_n())
    }

    pub fn f(&self) -> Poly {
        self.f_components
            .iter()
            .fold(self.f_top(), |acc, c| &acc + c)
    }
}

/// Assembles the components `G_j` for one family, caching powers of the
/// `h`-reduced lower components of `F`.
pub struct GBuilder<'a> {
    spec: &'a FamilySpec,
    /// `(v_l, F_l / h^v_l)` with `v_l` maximal; `None` for `F_l = 0`.
    reduced: Vec<Option<(u32, Poly)>>,
    powers: Vec<Vec<Poly>>,
}

impl<'a> GBuilder<'a> {
    pub fn new(spec: &'a FamilySpec) -> Result<Self> {
        let h = spec.h();
        let mut reduced = Vec::with_capacity(spec.f_components.len());
        for c in &spec.f_components {
            if c.is_zero() {
                reduced.push(None);
                continue;
            }
            let mut v = 0;
            let mut cur = c.clone();
            while let Some(q) = exact_divide(h, &cur)? {
                cur = q;
                v += 1;
            }
            reduced.push(Some((v, cur)));
        }
        let powers = reduced
            .iter()
            .map(|r| match r {
                Some((_, p)) => vec![Poly::one(spec.nvars), p.clone()],
                None => Vec::new(),
            })
            .collect();
        Ok(GBuilder {
            spec,
            reduced,
            powers,
        })
    }

    fn power(&mut self, l: usize, e: u32) -> Poly {
        let table = &mut self.powers[l];
        while table.len() <= e as usize {
            let next = &table[table.len() - 1] * &table[1];
            table.push(next);
        }
        table[e as usize].clone()
    }

    /// `G_j` for `1 <= j <= N`.
    ///
    /// Terms are grouped by their total power `e` of `h`. Negative powers are
    /// cleared from the bottom up, `acc <- (acc + S_e) / h`, which is exact
    /// precisely when the whole sum is a polynomial.
    pub fn component(&mut self, j: u32) -> Result<Poly> {
        let spec = self.spec;
        let params = &spec.params;
        let n = spec.nvars;
        let mut by_power: BTreeMap<i64, Poly> = BTreeMap::new();
        'terms: for alpha in enumerate_indices(j, params.deg_g, params.deg_f, params.deg_h)? {
            let c = closed_form(&alpha, params);
            if c.is_zero() {
                continue;
            }
            let mut e = alpha.alpha0;
            let mut term = Poly::constant(n, c);
            for (l, &al) in alpha.alphas.iter().enumerate() {
                if al == 0 {
                    continue;
                }
                match &self.reduced[l] {
                    None => continue 'terms,
                    Some((v, _)) => e += i64::from(*v) * i64::from(al),
                }
                term = &term * &self.power(l, al);
            }
            let slot = by_power.entry(e).or_insert_with(|| Poly::zero(n));
            *slot = &*slot + &term;
        }

        let h = spec.h();
        let mut acc = Poly::zero(n);
        let mut out = Poly::zero(n);
        for (&e, part) in &by_power {
            if e < 0 {
                let num = &acc + part;
                acc = exact_divide(h, &num)?.ok_or_else(|| {
                    Error::NonDivisible(format!(
                        "terms of G_{j} with h-power {e} are not divisible by h"
                    ))
                })?;
                // any gap between consecutive negative powers needs more division
                let next = by_power.range(e + 1..).next().map_or(0, |(&k, _)| k.min(0));
                for _ in (e + 1)..next {
                    acc = exact_divide(h, &acc)?
                        .ok_or_else(|| Error::NonDivisible(format!("G_{j} has a pole along h")))?;
                }
            } else {
                out = &out + &(part * &h.pow(e as u32));
            }
        }
        out = &out + &acc;
        debug_assert!(out.is_zero() || out.degree().finite() == Some(j));
        Ok(out)
    }
}

/// `G_j` of the family.
pub fn build_gj(spec: &FamilySpec, j: u32) -> Result<Poly> {
    GBuilder::new(spec)?.component(j)
}

/// The components `(j, G_j)` for `j = i..=N`.
pub fn build_g_components(spec: &FamilySpec, i: u32) -> Result<Vec<(u32, Poly)>> {
    if i == 0 || i > spec.n() {
        return Err(Error::params(format!(
            "threshold i = {i} must lie in 1..=N = {}",
            spec.n()
        )));
    }
    let mut builder = GBuilder::new(spec)?;
    (i..=spec.n())
        .map(|j| Ok((j, builder.component(j)?)))
        .collect()
}

/// `G = G_1 + ... + G_{i-1} + sum_{j >= i} G_j` with the lower components
/// taken from `lower` (default zero).
pub fn build_g(spec: &FamilySpec, i: u32, lower: Option<&[Poly]>) -> Result<Poly> {
    let mut g = Poly::zero(spec.nvars);
    if let Some(lower) = lower {
        if lower.len() >= i as usize {
            return Err(Error::params(format!(
                "expected at most {} lower components, got {}",
                i - 1,
                lower.len()
            )));
        }
        for (idx, p) in lower.iter().enumerate() {
            if p.nvars() != spec.nvars {
                return Err(Error::NvarsMismatch(spec.nvars, p.nvars()));
            }
            if !p.is_zero() && !(p.is_homogeneous() && p.degree().finite() == Some(idx as u32 + 1))
            {
                return Err(Error::params(format!(
                    "lower component G_{} must be homogeneous of degree {}",
                    idx + 1,
                    idx + 1
                )));
            }
            g = &g + p;
        }
    }
    for (_, gj) in build_g_components(spec, i)? {
        g = &g + &gj;
    }
    Ok(g)
}

/// Lowest `i` for which every `G_j`, `j >= i`, is a polynomial.
pub fn lowest_buildable_threshold(spec: &FamilySpec) -> Result<u32> {
    let mut builder = GBuilder::new(spec)?;
    let mut lowest = spec.n();
    for j in (1..spec.n()).rev() {
        match builder.component(j) {
            Ok(_) => lowest = j,
            Err(Error::NonDivisible(_)) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(lowest)
}

/// Sparse table `(j, alpha) -> c^(j)_alpha`; absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable {
    pub deg_f: u32,
    pub deg_g: u32,
    pub deg_h: u32,
    entries: BTreeMap<(u32, IndexAlpha), Rational>,
}

impl CoefficientTable {
    pub fn empty(deg_f: u32, deg_g: u32, deg_h: u32) -> Self {
        CoefficientTable {
            deg_f,
            deg_g,
            deg_h,
            entries: BTreeMap::new(),
        }
    }

    /// Closed-form coefficients for `j = i..=N`.
    pub fn from_formulas(params: &FormulaParams, i: u32) -> Result<Self> {
        let mut table = CoefficientTable::empty(params.deg_f, params.deg_g, params.deg_h);
        for j in i..=params.deg_g {
            for alpha in enumerate_indices(j, params.deg_g, params.deg_f, params.deg_h)? {
                let c = closed_form(&alpha, params);
                table.insert(j, alpha, c)?;
            }
        }
        Ok(table)
    }

    pub fn s(&self) -> u32 {
        self.deg_f - 1
    }

    pub fn r(&self) -> u32 {
        self.deg_f / self.deg_h
    }

    /// Stores an entry; zero values remove it. Indices outside
    /// `Z^(t)_{j,N,d}` are rejected.
    pub fn insert(&mut self, j: u32, alpha: IndexAlpha, c: Rational) -> Result<()> {
        let ok = alpha.s() == self.s() as usize
            && alpha.weighted_degree(self.deg_h) == i64::from(j)
            && alpha.budget(self.deg_h, self.deg_f) <= i64::from(self.deg_g);
        if !ok {
            return Err(Error::NotInIndexSet(format!("{alpha} for j = {j}")));
        }
        if c.is_zero() {
            self.entries.remove(&(j, alpha));
        } else {
            self.entries.insert((j, alpha), c);
        }
        Ok(())
    }

    pub fn get(&self, j: i64, alpha: &IndexAlpha) -> Rational {
        let Ok(j) = u32::try_from(j) else {
            return Rational::zero();
        };
        // lookups by reference into a tuple key need an owned probe
        self.entries
            .get(&(j, alpha.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, &IndexAlpha, &Rational)> {
        self.entries.iter().map(|((j, a), c)| (*j, a, c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// First counterexample to one of the identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub alpha: IndexAlpha,
    pub k: usize,
    pub l: usize,
    /// The level `i` of the identity (C1, C2) or the degree of the
    /// left-hand coefficient (P1).
    pub level: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionOutcome {
    pub holds: bool,
    pub checked: usize,
    pub witness: Option<Witness>,
}

impl ConditionOutcome {
    fn new() -> Self {
        ConditionOutcome {
            holds: true,
            checked: 0,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, w: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !ok && self.holds {
            self.holds = false;
            self.witness = Some(w());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub c1: ConditionOutcome,
    pub c2: ConditionOutcome,
    pub p1: ConditionOutcome,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.c1.holds && self.c2.holds && self.p1.holds
    }
}

/// Checks (C1), (C2) and (P1) on a table holding `G_i, ..., G_N` (with
/// `G_{N+1} = ... = G_{N+s} = 0`).
///
/// * (C1) at every level `i' in [i, N]`:
///   `(alpha_k + 1) c^(i'+s-l)_{alpha+e_k} = (alpha_l + 1) c^(i'+s-k)_{alpha+e_l}`.
/// * (P1) for every left-hand degree `j in [i, N-1]` and (C2) for every
///   `j in [i, N+s-1]`: if `alpha_k > 0` then
///   `c^(j)_{alpha - r e_0} = alpha_0 / (r alpha_k) c^(j+1+s-k)_{alpha - e_k}`.
///
/// Quantifiers range over every `alpha` that makes one side reference a
/// stored entry; all other instances are `0 = 0`.
pub fn check_conditions(table: &CoefficientTable, i: u32) -> ConditionReport {
    let s = table.s() as usize;
    let r = i64::from(table.r());
    let top = i64::from(table.deg_g);
    let lo = i64::from(i);

    let mut c1 = ConditionOutcome::new();
    for (j, beta, _) in table.entries() {
        for k in 1..=s {
            let Some(alpha) = beta.minus(k) else { continue };
            for l in 1..=s {
                if l == k {
                    continue;
                }
                // beta sits at degree i' + s - l
                let level = i64::from(j) - s as i64 + l as i64;
                if level < lo || level > top {
                    continue;
                }
                let lhs = Rational::from_integer((alpha.alphas[k - 1] + 1).into())
                    * table.get(i64::from(j), &alpha.plus(k));
                let rhs = Rational::from_integer((alpha.alphas[l - 1] + 1).into())
                    * table.get(level + s as i64 - k as i64, &alpha.plus(l));
                c1.record(lhs == rhs, || Witness {
                    alpha: alpha.clone(),
                    k,
                    l,
                    level,
                });
            }
        }
    }

    let mut c2 = ConditionOutcome::new();
    let mut p1 = ConditionOutcome::new();
    let recursion_holds = |j: i64, alpha: &IndexAlpha, k: usize| -> bool {
        let lhs = table.get(j, &alpha.shift0(-r));
        let ak = i64::from(alpha.alphas[k - 1]);
        let rhs = Rational::new(alpha.alpha0.into(), (r * ak).into())
            * table.get(
                j + 1 + s as i64 - k as i64,
                &alpha.minus(k).expect("alpha_k > 0"),
            );
        lhs == rhs
    };
    let mut visit = |j: i64, alpha: &IndexAlpha, k: usize| {
        if j < lo {
            return;
        }
        let ok = recursion_holds(j, alpha, k);
        let w = || Witness {
            alpha: alpha.clone(),
            k,
            l: 0,
            level: j,
        };
        if j < top + s as i64 {
            c2.record(ok, w);
        }
        if j < top {
            p1.record(ok, w);
        }
    };
    for (j, beta, _) in table.entries() {
        // beta as the left-hand index alpha - r e_0
        let alpha = beta.shift0(r);
        for k in 1..=s {
            if alpha.alphas[k - 1] > 0 {
                visit(i64::from(j), &alpha, k);
            }
        }
        // beta as the right-hand index alpha - e_k
        for k in 1..=s {
            let alpha = beta.plus(k);
            let lhs_deg = i64::from(j) - 1 - s as i64 + k as i64;
            visit(lhs_deg, &alpha, k);
        }
    }

    ConditionReport { c1, c2, p1 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::bracket_degree;
    use crate::poly::{int, parse_poly, rat, Degree};

    fn tuple(v: &[i64]) -> IndexAlpha {
        IndexAlpha::from_tuple(v).unwrap()
    }

    fn params(d: u32, n: u32, t: u32, a: &[(u32, Rational)]) -> FormulaParams {
        FormulaParams::new(d, n, t, a.iter().cloned().collect()).unwrap()
    }

    #[test]
    fn small_index_set() {
        let got = enumerate_indices(2, 3, 2, 1).unwrap();
        assert_eq!(got, vec![tuple(&[1, 1]), tuple(&[2, 0])]);
    }

    #[test]
    fn top_degree_has_single_index() {
        for (d, n, t) in [(2, 3, 1), (4, 6, 2), (3, 9, 3), (5, 7, 1)] {
            let got = enumerate_indices(n, n, d, t).unwrap();
            let mut expect = vec![0; d as usize];
            expect[0] = i64::from(n / t);
            assert_eq!(got, vec![tuple(&expect)]);
        }
    }

    #[test]
    fn negative_alpha0_member() {
        let got = enumerate_indices(4, 6, 4, 1).unwrap();
        assert!(got.contains(&tuple(&[-2, 0, 0, 2])));
        assert!(got
            .iter()
            .all(|a| a.weighted_degree(1) == 4 && a.budget(1, 4) <= 6));
    }

    #[test]
    fn enumeration_rejects_bad_parameters() {
        assert!(enumerate_indices(0, 6, 4, 1).is_err());
        assert!(enumerate_indices(7, 6, 4, 1).is_err());
        assert!(enumerate_indices(2, 6, 4, 4).is_err());
        assert!(enumerate_indices(2, 6, 1, 1).is_err());
    }

    #[test]
    fn pure_power_coefficient() {
        let p = params(4, 6, 1, &[(3, rat(2, 5)), (6, int(1))]);
        assert_eq!(coeff_c(3, &tuple(&[3, 0, 0, 0]), &p).unwrap(), rat(2, 5));
    }

    #[test]
    fn worked_coefficients() {
        let p = params(4, 6, 1, &[(6, int(2))]);
        assert_eq!(
            coeff_c(5, &tuple(&[2, 0, 0, 1]), &p).unwrap(),
            rat(3, 2) * int(2)
        );
        assert_eq!(
            coeff_c(4, &tuple(&[-2, 0, 0, 2]), &p).unwrap(),
            rat(3, 8) * int(2)
        );
        assert!(matches!(
            coeff_c(4, &tuple(&[-2, 0, 0, 3]), &p),
            Err(Error::NotInIndexSet(_))
        ));
    }

    #[test]
    fn a_j_must_vanish_off_multiples_of_t() {
        let err = FormulaParams::new(4, 6, 2, [(3, int(1)), (6, int(1))].into_iter().collect());
        assert!(matches!(err, Err(Error::InvalidParameters(_))));
        let err = FormulaParams::new(4, 6, 2, [(4, int(1))].into_iter().collect());
        assert!(matches!(err, Err(Error::InvalidParameters(_))));
    }

    fn worked_spec(a2: Rational) -> FamilySpec {
        let n = 2;
        FamilySpec::new(
            n,
            2,
            3,
            parse_poly("x2", n).unwrap(),
            vec![parse_poly("x1", n).unwrap()],
            [(2, a2), (3, int(1))].into_iter().collect(),
        )
        .unwrap()
    }

    #[test]
    fn worked_g2() {
        let spec = worked_spec(int(5));
        assert_eq!(
            build_gj(&spec, 2).unwrap(),
            parse_poly("5*x2^2 + 3/2*x1*x2", 2).unwrap()
        );
        assert_eq!(build_gj(&spec, 3).unwrap(), parse_poly("x2^3", 2).unwrap());
        let g = build_g(&spec, 2, None).unwrap();
        assert_eq!(g, parse_poly("x2^3 + 5*x2^2 + 3/2*x1*x2", 2).unwrap());
        let b = bracket_degree(&spec.f(), &g).unwrap();
        assert!(b < Degree::Finite(spec.d() + 2), "bracket degree {b}");
    }

    #[test]
    fn pole_at_lowest_degree() {
        // Z_{1,3,2} = {(-1,2), (0,1), (1,0)} and only c_(-1,2) = 3/8 a_3
        // survives, leaving 3/8 x1^2 / x2
        let spec = worked_spec(int(0));
        assert!(matches!(build_gj(&spec, 1), Err(Error::NonDivisible(_))));
        assert_eq!(lowest_buildable_threshold(&spec).unwrap(), 2);
        let g = build_g(&spec, 2, None).unwrap();
        let b = bracket_degree(&spec.f(), &g).unwrap();
        assert!(b < Degree::Finite(spec.d() + 2), "bracket degree {b}");
    }

    #[test]
    fn top_component() {
        let spec = worked_spec(int(1));
        assert_eq!(build_gj(&spec, 3).unwrap(), spec.g_top());
    }

    #[test]
    fn non_divisible_family() {
        // d = 4, N = 6, h = x1, F_3 not divisible by h: G_4 has the term
        // c F_3^2 h^-2 which cannot clear
        let n = 2;
        let p = |s: &str| parse_poly(s, n).unwrap();
        let spec = FamilySpec::new(
            n,
            4,
            6,
            p("x1"),
            vec![p("0"), p("x2^2"), p("x2^3")],
            [(6, int(1))].into_iter().collect(),
        )
        .unwrap();
        assert!(build_gj(&spec, 5).is_ok());
        assert!(matches!(build_gj(&spec, 4), Err(Error::NonDivisible(_))));
        assert_eq!(lowest_buildable_threshold(&spec).unwrap(), 5);
    }

    #[test]
    fn family_validation() {
        let n = 2;
        let p = |s: &str| parse_poly(s, n).unwrap();
        let a: BTreeMap<u32, Rational> = [(6, int(1))].into_iter().collect();
        assert!(FamilySpec::new(n, 4, 6, p("x1^2"), vec![], a.clone()).is_err());
        assert!(FamilySpec::new(n, 4, 6, p("x1 + 1"), vec![], a.clone()).is_err());
        assert!(FamilySpec::new(n, 4, 6, p("x1"), vec![p("x1^2")], a.clone()).is_err());
        assert!(FamilySpec::new(n, 4, 3, p("x1"), vec![], a.clone()).is_err());
        let spec = FamilySpec::new(n, 4, 6, p("x1*x2"), vec![], a).unwrap();
        assert_eq!((spec.t(), spec.r(), spec.rtilde()), (2, 2, Some(1)));
    }

    #[test]
    fn start_configuration_satisfies_c1_c2() {
        for (d, n, t) in [(3, 6, 3), (4, 6, 2), (5, 7, 1)] {
            let p = params(d, n, t, &[(n, rat(-3, 2))]);
            let mut table = CoefficientTable::empty(d, n, t);
            let mut top = vec![0; d as usize];
            top[0] = i64::from(n / t);
            table.insert(n, tuple(&top), p.a_n().clone()).unwrap();
            let rep = check_conditions(&table, n);
            assert!(rep.c1.holds && rep.c2.holds, "{rep:?}");
        }
    }

    #[test]
    fn formula_tables_satisfy_conditions() {
        let p = params(
            4,
            6,
            1,
            &[(2, int(3)), (4, rat(1, 2)), (5, int(-1)), (6, int(2))],
        );
        let table = CoefficientTable::from_formulas(&p, 1).unwrap();
        let rep = check_conditions(&table, 1);
        assert!(rep.all_hold(), "{rep:?}");
        assert!(rep.c1.checked > 0 && rep.p1.checked > 0);
    }

    #[test]
    fn perturbed_table_fails_c1() {
        let p = params(4, 6, 1, &[(6, int(1))]);
        let mut table = CoefficientTable::from_formulas(&p, 1).unwrap();
        let alpha = tuple(&[-2, 0, 0, 2]);
        let old = table.get(4, &alpha);
        table.insert(4, alpha, old + int(1)).unwrap();
        let rep = check_conditions(&table, 1);
        assert!(!rep.c1.holds);
        assert!(rep.c1.witness.is_some());
    }
}
