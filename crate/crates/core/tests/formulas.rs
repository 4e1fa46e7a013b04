use pbracket::bracket::bracket_degree;
use pbracket::formulas::{
    build_g, build_g_components, check_conditions, coeff_c, enumerate_indices,
    lowest_buildable_threshold, CoefficientTable, FormulaParams, IndexAlpha,
};
use pbracket::poly::{int, Degree, Rational};
use pbracket::random::{random_coefficient, random_family, rng_for};
use std::collections::{BTreeMap, HashMap};

#[test]
fn constructive_converse_on_random_families() {
    let shapes = [
        (2, 1, 3),
        (3, 1, 4),
        (4, 1, 6),
        (4, 2, 6),
        (6, 2, 10),
        (6, 3, 9),
        (3, 1, 7),
    ];
    for (idx, &(d, t, n)) in shapes.iter().enumerate() {
        for sample in 0..6u64 {
            let mut rng = rng_for(11, (idx as u64) << 16 | sample);
            let nvars = if sample % 2 == 0 { 2 } else { 3 };
            let spec = random_family(&mut rng, nvars, d, t, n).unwrap();
            let i = lowest_buildable_threshold(&spec).unwrap();
            let g = build_g(&spec, i, None).unwrap();
            let b = bracket_degree(&spec.f(), &g).unwrap();
            assert!(
                b < Degree::Finite(d + i),
                "d={d} t={t} N={n} i={i} bracket {b}"
            );
            for (j, gj) in build_g_components(&spec, i).unwrap() {
                assert!(gj.is_zero() || (gj.is_homogeneous() && gj.degree() == Degree::Finite(j)));
            }
        }
    }
}

/// The coefficients by downward recursion: with `q` the first index where
/// `alpha_q > 0`, `c^(j)_alpha = (alpha_0 + r)/(r alpha_q) c^(j+1+s-q)_{alpha + r e_0 - e_q}`;
/// for `alpha = (alpha_0, 0, ..., 0)` the value is `a_{t alpha_0}`.
fn recursive_c(
    j: i64,
    alpha: &IndexAlpha,
    p: &FormulaParams,
    memo: &mut HashMap<(i64, IndexAlpha), Rational>,
) -> Rational {
    if let Some(v) = memo.get(&(j, alpha.clone())) {
        return v.clone();
    }
    let r = i64::from(p.r());
    let s = p.s() as usize;
    let v = match alpha.alphas.iter().position(|&a| a > 0) {
        None => p.a_at(i64::from(p.deg_h) * alpha.alpha0),
        Some(q0) => {
            let q = q0 + 1;
            let prev = alpha.minus(q).unwrap().shift0(r);
            let factor = Rational::new(
                (alpha.alpha0 + r).into(),
                (r * i64::from(alpha.alphas[q0])).into(),
            );
            factor * recursive_c(j + 1 + s as i64 - q as i64, &prev, p, memo)
        }
    };
    memo.insert((j, alpha.clone()), v.clone());
    v
}

#[test]
fn closed_form_matches_recursion() {
    let mut rng = rng_for(5, 0);
    for &(d, n, t) in &[
        (2, 5, 1),
        (3, 7, 1),
        (4, 6, 2),
        (4, 9, 1),
        (6, 9, 3),
        (5, 10, 5),
    ] {
        let mut a = BTreeMap::new();
        for j in (t..=n).step_by(t as usize) {
            a.insert(j, random_coefficient(&mut rng));
        }
        let p = FormulaParams::new(d, n, t, a).unwrap();
        let mut memo = HashMap::new();
        for j in 1..=n {
            for alpha in enumerate_indices(j, n, d, t).unwrap() {
                assert_eq!(
                    coeff_c(j, &alpha, &p).unwrap(),
                    recursive_c(i64::from(j), &alpha, &p, &mut memo),
                    "j={j} alpha={alpha}"
                );
            }
        }
        let table = CoefficientTable::from_formulas(&p, 1).unwrap();
        assert!(check_conditions(&table, 1).all_hold());
    }
}

#[test]
fn linear_h_agrees_with_integer_rate_formula() {
    // with deg h = 1 the rate is d itself
    let d = 5u32;
    let n = 12u32;
    let a: BTreeMap<u32, Rational> = (1..=n).map(|j| (j, int(i64::from(j) + 1))).collect();
    let p = FormulaParams::new(d, n, 1, a).unwrap();
    for j in 1..=n {
        for alpha in enumerate_indices(j, n, d, 1).unwrap() {
            let total = i64::from(alpha.total());
            let mut num = Rational::from_integer(1.into());
            for k in 1..=total {
                num *= Rational::from_integer((alpha.alpha0 + i64::from(d) * k).into());
            }
            let mut den = Rational::from_integer(1.into());
            for &al in &alpha.alphas {
                for i in 1..=i64::from(al) {
                    den *= Rational::from_integer((i64::from(d) * i).into());
                }
            }
            let expected = num / den * p.a_at(alpha.alpha0 + i64::from(d) * total);
            assert_eq!(coeff_c(j, &alpha, &p).unwrap(), expected);
        }
    }
}
