//! The invariant suite behind `pbracket selftest`. Each check is seeded,
//! exact, and parametrized by its sample count so the same code serves a
//! quick smoke run and the full-size verification.

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::bracket::{bracket_degree, poisson_bracket};
use crate::conjecture::{run_search, summary_json, CandidateConfig, SearchMode};
use crate::error::{Error, Result};
use crate::formulas::{
    build_g, check_conditions, lowest_buildable_threshold, CoefficientTable, FamilySpec,
};
use crate::hreduce::{express_in_h, h_reduce};
use crate::lattice::sweep_grid;
use crate::poly::{
    exact_divide, is_power_up_to_constant, Degree, HomogeneousPoly, Monomial, Poly, Rational,
};
use crate::random::{
    random_coefficient, random_family, random_h, random_homogeneous, random_poly, rng_for,
};
use crate::structure::{
    binomial_identity, check_dependence, min_bracket_degree_over_g, DEFAULT_UNKNOWN_CAP,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Number of cases examined.
    pub cases: usize,
    /// First failure, or a short summary.
    pub detail: String,
}

impl CheckOutcome {
    fn from_failures(
        name: &'static str,
        cases: usize,
        failures: Vec<String>,
        summary: String,
    ) -> Self {
        CheckOutcome {
            name,
            passed: failures.is_empty(),
            cases,
            detail: match failures.first() {
                None => summary,
                Some(f) => format!("{} failure(s); first: {f}", failures.len()),
            },
        }
    }

    fn errored(name: &'static str, e: Error) -> Self {
        CheckOutcome {
            name,
            passed: false,
            cases: 0,
            detail: format!("error: {e}"),
        }
    }
}

fn outcome(name: &'static str, r: Result<CheckOutcome>) -> CheckOutcome {
    r.unwrap_or_else(|e| CheckOutcome::errored(name, e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelftestSize {
    Quick,
    Full,
}

/// Antisymmetry, bilinearity, the Leibniz rule and the degree bound on
/// random triples with `n <= 4`, degrees `<= 5`.
pub fn bracket_axioms(seed: u64, samples: usize) -> CheckOutcome {
    const NAME: &str = "bracket axioms";
    outcome(
        NAME,
        (|| {
            let mut failures = Vec::new();
            for idx in 0..samples {
                let mut rng = rng_for(seed, idx as u64);
                let n = rng.gen_range(2..=4);
                let f = random_poly(&mut rng, n, 5, 4);
                let g = random_poly(&mut rng, n, 5, 4);
                let h = random_poly(&mut rng, n, 5, 4);
                let (a, b) = (random_coefficient(&mut rng), random_coefficient(&mut rng));
                let fg = poisson_bracket(&f, &g)?;
                if fg != poisson_bracket(&g, &f)?.neg() {
                    failures.push(format!("antisymmetry, sample {idx}"));
                }
                let lhs = poisson_bracket(&(&f.scale(&a) + &g.scale(&b)), &h)?;
                let rhs = poisson_bracket(&f, &h)?
                    .scale(&a)
                    .checked_add(&poisson_bracket(&g, &h)?.scale(&b))?;
                if lhs != rhs {
                    failures.push(format!("bilinearity, sample {idx}"));
                }
                let lhs = poisson_bracket(&f, &(&g * &h))?;
                let rhs = poisson_bracket(&f, &h)?
                    .mul_poly(&g)?
                    .checked_add(&fg.mul_poly(&h)?)?;
                if lhs != rhs {
                    failures.push(format!("Leibniz rule, sample {idx}"));
                }
                let bound_ok = match (fg.degree(), f.degree(), g.degree()) {
                    (Degree::NegInfinity, _, _) => true,
                    (Degree::Finite(b), Degree::Finite(x), Degree::Finite(y)) => b <= x + y,
                    _ => false,
                };
                if !bound_ok {
                    failures.push(format!("degree bound, sample {idx}"));
                }
            }
            Ok(CheckOutcome::from_failures(
                NAME,
                samples,
                failures,
                format!("{samples} triples"),
            ))
        })(),
    )
}

/// `h_reduce(H, a H^k) = (a, k)` and `express_in_h` inverts
/// `(c_0, ..., c_m) -> sum c_l H^l`, for random non-power `H`, `k <= 6`.
pub fn h_reduction_roundtrip(seed: u64, samples: usize) -> CheckOutcome {
    const NAME: &str = "H-reduction round-trip";
    outcome(
        NAME,
        (|| {
            let mut failures = Vec::new();
            for idx in 0..samples {
                let mut rng = rng_for(seed, idx as u64);
                let n = rng.gen_range(2..=3);
                let t = rng.gen_range(1..=3);
                let h = loop {
                    let h = random_homogeneous(&mut rng, n, t, 3);
                    if is_power_up_to_constant(&h)?.is_none() {
                        break HomogeneousPoly::new(h)?;
                    }
                };
                let k = rng.gen_range(0..=6u32);
                let a = random_coefficient(&mut rng);
                let p = HomogeneousPoly::new(h.as_poly().pow(k).scale(&a))?;
                if h_reduce(&h, &p)? != (a.clone(), k) {
                    failures.push(format!(
                        "h_reduce, sample {idx} (H = {h}, k = {k}, a = {a})"
                    ));
                }
                let m = rng.gen_range(0..=4usize);
                let mut coeffs: Vec<Rational> = (0..=m)
                    .map(|_| {
                        if rng.gen_bool(0.3) {
                            Rational::zero()
                        } else {
                            random_coefficient(&mut rng)
                        }
                    })
                    .collect();
                coeffs[m] = random_coefficient(&mut rng);
                let mut p = Poly::zero(n);
                for (l, c) in coeffs.iter().enumerate() {
                    p = &p + &h.as_poly().pow(l as u32).scale(c);
                }
                if express_in_h(&h, &p)? != coeffs {
                    failures.push(format!("express_in_h, sample {idx} (H = {h})"));
                }
            }
            Ok(CheckOutcome::from_failures(
                NAME,
                samples,
                failures,
                format!("{samples} cases"),
            ))
        })(),
    )
}

/// The shapes `(d, t, N)` of the constructive check.
pub const CONVERSE_SHAPES: [(u32, u32, u32); 5] =
    [(2, 1, 3), (4, 1, 6), (4, 2, 6), (6, 2, 10), (6, 3, 9)];

/// For random families: `G` assembled from the closed forms at the lowest
/// threshold `i` satisfies `deg [F, G] < d + i`, and (C1), (C2), (P1) hold
/// on the coefficient table.
pub fn constructive_converse(seed: u64, per_shape: usize) -> CheckOutcome {
    const NAME: &str = "constructive converse";
    outcome(
        NAME,
        (|| {
            let mut failures = Vec::new();
            let mut cases = 0;
            let mut thresholds = Vec::new();
            for (si, &(d, t, n)) in CONVERSE_SHAPES.iter().enumerate() {
                for sample in 0..per_shape {
                    let mut rng = rng_for(seed, (si * 1000 + sample) as u64);
                    let nvars = 2 + sample % 2;
                    let spec = random_family(&mut rng, nvars, d, t, n)?;
                    let i = lowest_buildable_threshold(&spec)?;
                    let g = build_g(&spec, i, None)?;
                    let deg = bracket_degree(&spec.f(), &g)?;
                    if deg >= Degree::Finite(d + i) {
                        failures.push(format!(
                        "(d,t,N) = ({d},{t},{n}) sample {sample}: deg = {deg} not below d + i = {}",
                        d + i
                    ));
                    }
                    let table = CoefficientTable::from_formulas(&spec.params, i)?;
                    let report = check_conditions(&table, i);
                    if !report.all_hold() {
                        failures.push(format!(
                        "(d,t,N) = ({d},{t},{n}) sample {sample}: conditions fail at i = {i}: {report:?}"
                    ));
                    }
                    thresholds.push(i);
                    cases += 1;
                }
            }
            let lo = thresholds.iter().min().copied().unwrap_or(0);
            let hi = thresholds.iter().max().copied().unwrap_or(0);
            Ok(CheckOutcome::from_failures(
                NAME,
                cases,
                failures,
                format!("{cases} families, thresholds i in {lo}..={hi}"),
            ))
        })(),
    )
}

/// Closed-form lattice minima against brute force on the full grid.
pub fn lattice_oracle(max_d: u32, max_n: u32) -> CheckOutcome {
    const NAME: &str = "lattice lemmas";
    outcome(
        NAME,
        (|| {
            let rep = sweep_grid(max_d, max_n)?;
            Ok(CheckOutcome::from_failures(
            NAME,
            rep.total(),
            rep.mismatches.clone(),
            format!(
                "d <= {max_d}, N <= {max_n}: {} alpha_0, {} k, {} t, {} tie, {} simplex, {} bijection checks",
                rep.alpha0_checks, rep.k_checks, rep.t_checks, rep.tie_checks, rep.simplex_checks, rep.bijection_checks
            ),
        ))
        })(),
    )
}

/// The binomial identity for `d_1 in {2,3,4}`, `k in {1,2,3}`, `t | d_1`,
/// with `a_N = 1` and a random `a_N`.
pub fn binomial_identities(seed: u64) -> CheckOutcome {
    const NAME: &str = "binomial identity";
    outcome(
        NAME,
        (|| {
            let mut rng = rng_for(seed, 0);
            let mut failures = Vec::new();
            let mut rows = 0;
            for d1 in 2..=4u32 {
                for k in 1..=3u32 {
                    for t in (1..=d1).filter(|t| d1 % t == 0) {
                        for a_n in [
                            Rational::from_integer(1.into()),
                            random_coefficient(&mut rng),
                        ] {
                            let r = binomial_identity(d1, k, t, &a_n)?;
                            rows += r.rows.len();
                            if !r.all_hold() {
                                failures.push(format!("d_1 = {d1}, k = {k}, t = {t}, a_N = {a_n}"));
                            }
                        }
                    }
                }
            }
            Ok(CheckOutcome::from_failures(
                NAME,
                rows,
                failures,
                format!("{rows} rows"),
            ))
        })(),
    )
}

fn monomial_poly(n: usize, m: Monomial) -> Poly {
    Poly::monomial(n, m, Rational::from_integer(1.into()))
}

/// A family with `d = 4`, `N = 6` satisfying `F_3 = h^(2/t) F~` and
/// `4 F_2 = F~^2 + h F^`.
///
/// Then `F = P^2 + h F^ / 4 + F_1` with `P = h^(2/t) + F~ / 2`, so only the
/// half-integer powers `F^(m/2)` expand without poles down to degree 2; the
/// constants `a_j` are therefore restricted to even `j`.
pub fn dependent_family(rng: &mut impl Rng, nvars: usize, t: u32) -> Result<FamilySpec> {
    let (d, n) = (4, 6);
    let h = random_h(rng, nvars, t)?;
    let rtilde = 2 / t;
    let f_tilde = random_homogeneous(rng, nvars, 1, nvars);
    let f_hat = random_homogeneous(rng, nvars, 2 - t, 2);
    let f3 = &h.pow(rtilde) * &f_tilde;
    let f2 = (&f_tilde.pow(2) + &(&h * &f_hat)).scale(&Rational::new(1.into(), 4.into()));
    let f1 = if rng.gen_bool(0.8) {
        random_homogeneous(rng, nvars, 1, nvars)
    } else {
        Poly::zero(nvars)
    };
    let mut a = std::collections::BTreeMap::new();
    for j in (2..n).step_by(2) {
        if rng.gen_bool(0.5) {
            a.insert(j, random_coefficient(rng));
        }
    }
    a.insert(n, random_coefficient(rng));
    FamilySpec::new(nvars, d, n, h, vec![f1, f2, f3], a)
}

/// Forward construction passes the dependence check; perturbing one
/// coefficient of `F_{s-1}` breaks the relation, and the oracle certifies
/// that no `G` reaches the bracket-degree bound `d + N - 2k - 2`.
pub fn dependence_end_to_end(seed: u64, per_t: usize) -> CheckOutcome {
    const NAME: &str = "dependence theorem";
    outcome(
        NAME,
        (|| {
            let mut failures = Vec::new();
            let mut cases = 0;
            for t in [1u32, 2] {
                for sample in 0..per_t {
                    let mut rng = rng_for(seed, u64::from(t) * 1000 + sample as u64);
                    let nvars = 2 + sample % 2;
                    let spec = dependent_family(&mut rng, nvars, t)?;
                    let label = format!("t = {t}, sample {sample}");
                    // bound d + N - 2k - 2 = 6 = d + 2
                    let g = build_g(&spec, 2, None)?;
                    let f = spec.f();
                    let rep = check_dependence(&spec, &f, &g)?;
                    if !(rep.hypotheses_hold() && rep.relation_holds) {
                        failures.push(format!("{label}: forward construction rejected: {rep:?}"));
                    }
                    let (Some(ft), Some(fh)) = (&rep.f_tilde, &rep.f_hat) else {
                        continue;
                    };
                    let four = Rational::from_integer(4.into());
                    if (&f.homogeneous_component(2).scale(&four) - &ft.pow(2)) != (spec.h() * fh) {
                        failures.push(format!("{label}: 4 F_(s-1) - F~^2 != h F^"));
                    }
                    // perturb F_2 by a monomial that h does not divide
                    let m = Monomial::all_of_degree(nvars, 2)
                        .into_iter()
                        .find(|m| {
                            exact_divide(spec.h(), &monomial_poly(nvars, m.clone()))
                                .ok()
                                .flatten()
                                .is_none()
                        })
                        .expect("h divides at most one monomial up to scalars");
                    let f_pert = &f + &monomial_poly(nvars, m);
                    let g_bracket = bracket_degree(&f_pert, &g)?;
                    let rep_pert = check_dependence(&spec, &f_pert, &g)?;
                    if rep_pert.relation_holds {
                        failures.push(format!("{label}: perturbation kept the relation"));
                    }
                    let oracle = min_bracket_degree_over_g(
                        &f_pert,
                        spec.n(),
                        spec.h(),
                        spec.params.a_n(),
                        2,
                        DEFAULT_UNKNOWN_CAP,
                    )?;
                    if oracle.feasible_at(2) != Some(false) || oracle.bound() <= rep.bound {
                        failures.push(format!(
                            "{label}: oracle finds bracket degree {} < {} after perturbation",
                            oracle.bound(),
                            rep.bound
                        ));
                    }
                    if g_bracket < Degree::Finite(rep.bound) {
                        failures.push(format!("{label}: original G still below the bound"));
                    }
                    cases += 1;
                }
            }
            Ok(CheckOutcome::from_failures(
                NAME,
                cases,
                failures,
                format!("{cases} families"),
            ))
        })(),
    )
}

/// `d = 4`, `N = 6`, `t = 1`: when `h` does not divide `F_3` no `G` has
/// `deg [F, G] < d + i` for any `i < (3/4) N`; when `h` divides `F_3`
/// exactly once, the least feasible level is the predicted `i = 4`.
pub fn divisibility_contrapositive(seed: u64, per_side: usize) -> CheckOutcome {
    const NAME: &str = "divisibility contrapositive";
    outcome(
        NAME,
        (|| {
            let (d, n, t) = (4u32, 6u32, 1u32);
            let mut failures = Vec::new();
            let mut cases = 0;
            for divisible in [false, true] {
                for sample in 0..per_side {
                    let mut rng = rng_for(seed, u64::from(divisible) * 1000 + sample as u64);
                    let nvars = 2 + sample % 2;
                    let h = random_h(&mut rng, nvars, t)?;
                    let f3 = loop {
                        let f3 = if divisible {
                            &h * &random_homogeneous(&mut rng, nvars, 2, 3)
                        } else {
                            random_homogeneous(&mut rng, nvars, 3, 4)
                        };
                        let once = exact_divide(&h, &f3)?.is_some();
                        let twice = exact_divide(&h.pow(2), &f3)?.is_some();
                        if once == divisible && !twice {
                            break f3;
                        }
                    };
                    let f = &(&(&h.pow(d) + &f3) + &random_homogeneous(&mut rng, nvars, 2, 3))
                        + &random_homogeneous(&mut rng, nvars, 1, 2);
                    let a_n = random_coefficient(&mut rng);
                    let oracle =
                        min_bracket_degree_over_g(&f, n, &h, &a_n, 1, DEFAULT_UNKNOWN_CAP)?;
                    let label = format!(
                        "{} sample {sample}",
                        if divisible { "h | F_s" } else { "h !| F_s" }
                    );
                    if divisible {
                        // h^2 !| F_s rules out every i < ((s-1)/(d-1)) N = 4
                        let ok = (1..4).all(|i| oracle.feasible_at(i) == Some(false))
                            && oracle.feasible_at(4) == Some(true);
                        if !ok {
                            failures.push(format!(
                                "{label}: least feasible level {} instead of 4",
                                oracle.best_i
                            ));
                        }
                    } else if !(1..=4).all(|i| oracle.feasible_at(i) == Some(false)) {
                        failures.push(format!(
                            "{label}: feasible at level {} < 4.5",
                            oracle.best_i
                        ));
                    }
                    cases += 1;
                }
            }
            Ok(CheckOutcome::from_failures(
                NAME,
                cases,
                failures,
                format!("{cases} polynomials"),
            ))
        })(),
    )
}

/// The default search configuration of the determinism check.
pub fn determinism_config(seed: u64, samples: usize, mode: SearchMode) -> CandidateConfig {
    CandidateConfig {
        nvars: 3,
        degree_pairs: vec![(2, 3)],
        t: 1,
        max_terms: 2,
        samples,
        seed,
        mode,
    }
}

/// Identical summaries across repeated runs and worker counts; every
/// degenerate-mode pair is flagged.
pub fn search_determinism(seed: u64, samples: usize) -> CheckOutcome {
    const NAME: &str = "search determinism";
    outcome(
        NAME,
        (|| {
            let cfg = determinism_config(seed, samples, SearchMode::Random);
            let mut outputs = Vec::new();
            for threads in [1, 4, 4] {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build()
                    .map_err(|e| Error::Config(e.to_string()))?;
                outputs.push(pool.install(|| run_search(&cfg).and_then(|s| summary_json(&s)))?);
            }
            let mut failures = Vec::new();
            if outputs.windows(2).any(|w| w[0] != w[1]) {
                failures.push("summaries differ between runs".to_string());
            }
            let degenerate =
                run_search(&determinism_config(seed, samples, SearchMode::Degenerate))?;
            if degenerate.makar_limanov_flagged != degenerate.evaluated {
                failures.push(format!(
                    "degenerate mode: {} of {} pairs flagged",
                    degenerate.makar_limanov_flagged, degenerate.evaluated
                ));
            }
            Ok(CheckOutcome::from_failures(
                NAME,
                2 * samples,
                failures,
                format!(
                    "{samples} samples, 1 and 4 workers, {} bytes",
                    outputs[0].len()
                ),
            ))
        })(),
    )
}

pub fn run_selftest(seed: u64, size: SelftestSize) -> Vec<CheckOutcome> {
    let full = size == SelftestSize::Full;
    let pick = |quick: usize, full_n: usize| if full { full_n } else { quick };
    vec![
        bracket_axioms(seed, pick(20, 200)),
        h_reduction_roundtrip(seed, pick(10, 100)),
        constructive_converse(seed, pick(2, 10)),
        if full {
            lattice_oracle(8, 16)
        } else {
            lattice_oracle(5, 10)
        },
        binomial_identities(seed),
        dependence_end_to_end(seed, pick(1, 5)),
        divisibility_contrapositive(seed, pick(1, 10)),
        search_determinism(seed, pick(10, 100)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes() {
        for c in run_selftest(5, SelftestSize::Quick) {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
