//! Randomized search over pairs `(F, G)` whose top forms are powers of a
//! common `h`, comparing `deg [F, G]` with `min(deg F, deg G)`.
//!
//! The requirement that `F` and `G` generate their own centralizers has no
//! effective test here. [`heuristic_centralizer_filter`] only rejects
//! polynomials that are visibly polynomials in a lower-degree one; its
//! verdict is reported separately from the certified flags.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bracket::{bracket_degree, poisson_bracket};
use crate::error::{Error, Result};
use crate::formulas::{build_g, lowest_buildable_threshold};
use crate::hreduce::expand_in;
use crate::poly::{is_power_up_to_constant, poly_root, Degree, Poly, Rational};
use crate::random::{random_coefficient, random_family, random_h, random_homogeneous, rng_for};

pub const CENTRALIZER_NOTE: &str = "the centralizer hypothesis is not decided: the heuristic only \
rejects polynomials that are a power, or a polynomial in a lower-degree candidate built from their \
own components";

/// How pairs are sampled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Sparse random lower components, independent linear parts.
    #[default]
    Random,
    /// As `Random` but with proportional linear parts.
    Degenerate,
    /// `G` assembled from the closed-form components for a random family.
    Structured,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateConfig {
    pub nvars: usize,
    /// `(deg F, deg G)` pairs, cycled through by sample index.
    pub degree_pairs: Vec<(u32, u32)>,
    /// `deg h`.
    pub t: u32,
    /// Upper bound on the number of terms of each random lower component.
    #[serde(default = "default_terms")]
    pub max_terms: usize,
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub mode: SearchMode,
}

fn default_terms() -> usize {
    2
}

pub const MAX_SAMPLES: usize = 1_000_000;
pub const MAX_DEGREE: u32 = 16;

impl CandidateConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nvars < 2 {
            return Err(Error::params("need at least two variables"));
        }
        if self.degree_pairs.is_empty() {
            return Err(Error::params("need at least one (d, N) pair"));
        }
        if self.samples > MAX_SAMPLES {
            return Err(Error::TooLarge(format!("at most {MAX_SAMPLES} samples")));
        }
        if self.t == 0 || (self.nvars < 2 && self.t > 1) {
            return Err(Error::params("deg h must be positive"));
        }
        for &(d, n) in &self.degree_pairs {
            if d < 2 || n < 2 || d > MAX_DEGREE || n > MAX_DEGREE {
                return Err(Error::params(format!(
                    "degrees must lie in 2..={MAX_DEGREE}, got ({d}, {n})"
                )));
            }
            if n % d == 0 || d % n == 0 {
                return Err(Error::params(format!(
                    "need deg F not dividing deg G and vice versa, got ({d}, {n})"
                )));
            }
            if d % self.t != 0 || n % self.t != 0 {
                return Err(Error::params(format!(
                    "deg h = {} must divide gcd({d}, {n})",
                    self.t
                )));
            }
        }
        Ok(())
    }
}

fn linear_part(p: &Poly) -> Vec<Rational> {
    let n = p.nvars();
    let lin = p.homogeneous_component(1);
    (0..n)
        .map(|i| {
            let m = crate::poly::Monomial::var(n, i);
            lin.coefficient(&m)
        })
        .collect()
}

fn independent(a: &[Rational], b: &[Rational]) -> bool {
    (0..a.len()).any(|i| (i + 1..a.len()).any(|j| &a[i] * &b[j] != &a[j] * &b[i]))
}

fn random_linear(rng: &mut impl Rng, nvars: usize) -> Poly {
    loop {
        let p = random_homogeneous(rng, nvars, 1, nvars);
        if !p.is_zero() {
            return p;
        }
    }
}

fn lower_part(rng: &mut impl Rng, nvars: usize, deg: u32, max_terms: usize) -> Poly {
    let mut p = Poly::zero(nvars);
    for l in 2..deg {
        if rng.gen_bool(0.5) {
            p = &p + &random_homogeneous(rng, nvars, l, max_terms);
        }
    }
    p
}

/// The pair for sample `index`; a pure function of `(config, index)`.
pub fn generate_pair(config: &CandidateConfig, index: u64) -> Result<(Poly, Poly)> {
    config.validate()?;
    let mut rng = rng_for(config.seed, index);
    let (d, n) = config.degree_pairs[(index % config.degree_pairs.len() as u64) as usize];
    let nvars = config.nvars;
    let t = config.t;
    if config.mode == SearchMode::Structured {
        let spec = random_family(&mut rng, nvars, d, t, n)?;
        let i = lowest_buildable_threshold(&spec)?;
        let g = build_g(&spec, i, None)?;
        return Ok((spec.f(), g));
    }
    let h = random_h(&mut rng, nvars, t)?;
    let a = random_coefficient(&mut rng);
    let b = random_coefficient(&mut rng);
    let l1 = random_linear(&mut rng, nvars);
    let l2 = if config.mode == SearchMode::Degenerate {
        l1.scale(&random_coefficient(&mut rng))
    } else {
        loop {
            let l2 = random_linear(&mut rng, nvars);
            if independent(&linear_part(&l1), &linear_part(&l2)) {
                break l2;
            }
        }
    };
    let f = &(&h.pow(d / t).scale(&a) + &lower_part(&mut rng, nvars, d, config.max_terms)) + &l1;
    let g = &(&h.pow(n / t).scale(&b) + &lower_part(&mut rng, nvars, n, config.max_terms)) + &l2;
    Ok((f, g))
}

/// Heuristic necessary condition for generating one's own centralizer:
/// rejects `F` when it is a power up to a constant, or when
/// `F in K[Q]` for one of the candidates `Q` built from an `m`-th root `q`
/// of the top form (`m | deg F`, `m >= 2`): `q` itself, and `q` plus the
/// components of `F` of degree below `deg q`.
pub fn heuristic_centralizer_filter(f: &Poly) -> Result<bool> {
    let deg = match f.degree() {
        Degree::Finite(d) if d >= 2 => d,
        _ => return Ok(true),
    };
    if is_power_up_to_constant(f)?.is_some() {
        return Ok(false);
    }
    let top = f.top_form().monic();
    for m in (2..=deg).filter(|m| deg % m == 0) {
        let Some(q) = poly_root(&top, m) else {
            continue;
        };
        let e = deg / m;
        let mut with_lower = q.clone();
        for l in 1..e {
            with_lower = &with_lower + &f.homogeneous_component(l);
        }
        for cand in [q, with_lower] {
            if expand_in(&cand, f)?.is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub deg_f: Degree,
    pub deg_g: Degree,
    pub bracket_degree: Degree,
    pub min_degree: Degree,
    /// `deg [F, G] / min(deg F, deg G)`; absent when the bracket vanishes
    /// or a polynomial is constant.
    #[serde(serialize_with = "crate::serde_util::opt_rational")]
    pub ratio: Option<Rational>,
    /// `F(0) = G(0) = 0`.
    pub constant_free: bool,
    pub linear_parts_independent: bool,
    /// Linear parts dependent.
    pub makar_limanov: bool,
    /// Both top forms are constant multiples of powers of one `h`.
    pub top_forms_common_power: bool,
    /// `[F_d, G_N] != 0`, certifying algebraic independence of top forms.
    pub top_forms_independent: bool,
    /// With independent top forms the bracket degree must be `d + N`.
    pub independence_shortcut_ok: Option<bool>,
    pub degrees_coprime_divisibility: bool,
    /// Heuristic, not certified.
    pub centralizer_heuristic: bool,
    pub hypotheses_hold: bool,
    /// `deg [F, G] > min(deg F, deg G)`.
    pub inequality_holds: Option<bool>,
}

impl PairReport {
    /// Passes every hypothesis yet has ratio at most one.
    pub fn is_candidate(&self) -> bool {
        self.hypotheses_hold && self.ratio.as_ref().is_some_and(|r| r <= &Rational::one())
    }
}

fn base_of(top: &Poly) -> Result<Poly> {
    Ok(match is_power_up_to_constant(top)? {
        Some((g, _)) => g.monic(),
        None => top.monic(),
    })
}

pub fn evaluate_pair(f: &Poly, g: &Poly) -> Result<PairReport> {
    if f.nvars() != g.nvars() {
        return Err(Error::NvarsMismatch(f.nvars(), g.nvars()));
    }
    let (deg_f, deg_g) = (f.degree(), g.degree());
    let bracket = bracket_degree(f, g)?;
    let min_degree = deg_f.min(deg_g);
    let nonconstant = matches!(min_degree, Degree::Finite(m) if m > 0);
    let ratio = match (bracket, min_degree) {
        (Degree::Finite(b), Degree::Finite(m)) if m > 0 => Some(Rational::new(b.into(), m.into())),
        _ => None,
    };
    let constant_free = f.constant_term().is_zero() && g.constant_term().is_zero();
    let (lf, lg) = (linear_part(f), linear_part(g));
    let linear_parts_independent = independent(&lf, &lg);
    let (top_f, top_g) = (f.top_form(), g.top_form());
    let top_forms_common_power = nonconstant && base_of(&top_f)? == base_of(&top_g)?;
    let top_forms_independent = nonconstant && !poisson_bracket(&top_f, &top_g)?.is_zero();
    let independence_shortcut_ok = match (top_forms_independent, deg_f, deg_g) {
        (true, Degree::Finite(a), Degree::Finite(b)) => Some(bracket == Degree::Finite(a + b)),
        _ => None,
    };
    let degrees_coprime_divisibility = match (deg_f, deg_g) {
        (Degree::Finite(a), Degree::Finite(b)) if a > 0 && b > 0 => a % b != 0 && b % a != 0,
        _ => false,
    };
    let centralizer_heuristic =
        heuristic_centralizer_filter(f)? && heuristic_centralizer_filter(g)?;
    let hypotheses_hold = nonconstant
        && constant_free
        && linear_parts_independent
        && top_forms_common_power
        && degrees_coprime_divisibility
        && centralizer_heuristic;
    let inequality_holds = ratio.as_ref().map(|r| r > &Rational::one());
    Ok(PairReport {
        deg_f,
        deg_g,
        bracket_degree: bracket,
        min_degree,
        ratio,
        constant_free,
        linear_parts_independent,
        makar_limanov: !linear_parts_independent,
        top_forms_common_power,
        top_forms_independent,
        independence_shortcut_ok,
        degrees_coprime_divisibility,
        centralizer_heuristic,
        hypotheses_hold,
        inequality_holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateDump {
    pub index: u64,
    pub f: Poly,
    pub g: Poly,
    pub report: PairReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub note: &'static str,
    pub config: CandidateConfig,
    pub evaluated: usize,
    /// Samples whose bracket vanished (no ratio).
    pub inapplicable: usize,
    pub makar_limanov_flagged: usize,
    pub hypotheses_passed: usize,
    #[serde(serialize_with = "crate::serde_util::opt_rational")]
    pub min_ratio: Option<Rational>,
    /// Ratio rendered as `p/q` to count.
    pub histogram: BTreeMap<String, usize>,
    /// Pairs passing every hypothesis with ratio at most one.
    pub candidates: Vec<CandidateDump>,
}

/// Evaluates samples `0..samples` in parallel and merges them in index
/// order, so the summary does not depend on the worker count.
pub fn run_search(config: &CandidateConfig) -> Result<SearchSummary> {
    config.validate()?;
    let results: Vec<(u64, Poly, Poly, PairReport)> = (0..config.samples as u64)
        .into_par_iter()
        .map(|idx| {
            let (f, g) = generate_pair(config, idx)?;
            let rep = evaluate_pair(&f, &g)?;
            Ok((idx, f, g, rep))
        })
        .collect::<Result<_>>()?;
    let mut summary = SearchSummary {
        note: CENTRALIZER_NOTE,
        config: config.clone(),
        evaluated: results.len(),
        inapplicable: 0,
        makar_limanov_flagged: 0,
        hypotheses_passed: 0,
        min_ratio: None,
        histogram: BTreeMap::new(),
        candidates: Vec::new(),
    };
    for (index, f, g, report) in results {
        if report.makar_limanov {
            summary.makar_limanov_flagged += 1;
        }
        if report.hypotheses_hold {
            summary.hypotheses_passed += 1;
        }
        match &report.ratio {
            None => summary.inapplicable += 1,
            Some(r) => {
                *summary.histogram.entry(r.to_string()).or_default() += 1;
                if summary.min_ratio.as_ref().is_none_or(|m| r < m) {
                    summary.min_ratio = Some(r.clone());
                }
            }
        }
        if report.is_candidate() {
            summary.candidates.push(CandidateDump {
                index,
                f,
                g,
                report,
            });
        }
    }
    Ok(summary)
}

/// Byte-stable rendering: sorted keys, rationals as strings.
pub fn summary_json(summary: &SearchSummary) -> Result<String> {
    let value = serde_json::to_value(summary).map_err(|e| Error::Config(e.to_string()))?;
    serde_json::to_string_pretty(&value).map_err(|e| Error::Config(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, rat};

    fn p(s: &str) -> Poly {
        parse_poly(s, 2).unwrap()
    }

    fn config(mode: SearchMode, samples: usize) -> CandidateConfig {
        CandidateConfig {
            nvars: 3,
            degree_pairs: vec![(2, 3)],
            t: 1,
            max_terms: 2,
            samples,
            seed: 42,
            mode,
        }
    }

    #[test]
    fn independent_top_forms() {
        let r = evaluate_pair(&p("x1^2"), &p("x2^3")).unwrap();
        assert_eq!(r.bracket_degree, Degree::Finite(5));
        assert_eq!(r.ratio, Some(rat(5, 2)));
        assert_eq!(r.independence_shortcut_ok, Some(true));
        assert_eq!(r.inequality_holds, Some(true));
    }

    #[test]
    fn equal_pair_is_inapplicable() {
        let f = p("x1^2 + x2");
        let r = evaluate_pair(&f, &f).unwrap();
        assert_eq!(r.bracket_degree, Degree::NegInfinity);
        assert_eq!(r.ratio, None);
        assert!(!r.is_candidate());
    }

    #[test]
    fn centralizer_heuristic_examples() {
        assert!(!heuristic_centralizer_filter(&p("(x1*x2)^2 + x1*x2")).unwrap());
        assert!(heuristic_centralizer_filter(&p("x1^2 + x2")).unwrap());
        assert!(heuristic_centralizer_filter(&p("3*x1 - x2")).unwrap());
        assert!(!heuristic_centralizer_filter(&p("(x1 + x2 + 1)^3")).unwrap());
    }

    #[test]
    fn generated_pairs() {
        let cfg = config(SearchMode::Random, 1);
        let (f, g) = generate_pair(&cfg, 0).unwrap();
        assert_eq!(generate_pair(&cfg, 0).unwrap(), (f.clone(), g.clone()));
        let r = evaluate_pair(&f, &g).unwrap();
        assert!(r.constant_free && r.linear_parts_independent && r.top_forms_common_power);

        let cfg = config(SearchMode::Degenerate, 1);
        let (f, g) = generate_pair(&cfg, 0).unwrap();
        assert!(evaluate_pair(&f, &g).unwrap().makar_limanov);
    }

    #[test]
    fn config_validation() {
        let mut cfg = config(SearchMode::Random, 1);
        cfg.degree_pairs = vec![(2, 4)];
        assert!(cfg.validate().is_err());
        cfg.degree_pairs = vec![(4, 6)];
        cfg.t = 4;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn empty_search() {
        let s = run_search(&config(SearchMode::Random, 0)).unwrap();
        assert!(s.histogram.is_empty());
        assert_eq!(s.evaluated, 0);
    }
}
