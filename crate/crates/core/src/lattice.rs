//! Minimization of linear functionals over the index sets
//! `Z^(t)_{j,N,d}` and the simplex
//! `Delta_{j,N,d} = { a in R_+^s : sum (d - l) a_l <= N - j }`, by exhaustive
//! enumeration and by closed form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::{enumerate_indices, IndexAlpha};
use crate::poly::Rational;

/// Minimize `sum w_l alpha_l` over `Z^(t)_{j,N,d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeProblem {
    pub j: u32,
    pub n: u32,
    pub d: u32,
    pub t: u32,
    /// `(w_0, w_1, ..., w_s)`.
    pub weight: Vec<Rational>,
}

impl LatticeProblem {
    pub fn new(j: u32, n: u32, d: u32, t: u32, weight: Vec<Rational>) -> Result<Self> {
        if d < 2 || d > n {
            return Err(Error::params(format!(
                "need 2 <= d <= N, got d = {d}, N = {n}"
            )));
        }
        if j == 0 || j > n {
            return Err(Error::params(format!("j = {j} must lie in 1..=N = {n}")));
        }
        if t == 0 || !d.is_multiple_of(t) || !n.is_multiple_of(t) {
            return Err(Error::params(format!("t = {t} must divide gcd(d, N)")));
        }
        if weight.len() != d as usize {
            return Err(Error::params(format!(
                "weight needs s + 1 = {d} entries, got {}",
                weight.len()
            )));
        }
        Ok(LatticeProblem { j, n, d, t, weight })
    }

    /// The functional `alpha_0 + c alpha_s`.
    pub fn alpha0_plus(j: u32, n: u32, d: u32, t: u32, c: Rational) -> Result<Self> {
        let mut w = vec![Rational::zero(); d as usize];
        w[0] = Rational::one();
        w[d as usize - 1] += c;
        LatticeProblem::new(j, n, d, t, w)
    }

    pub fn s(&self) -> u32 {
        self.d - 1
    }

    pub fn feasible(&self) -> Result<Vec<IndexAlpha>> {
        enumerate_indices(self.j, self.n, self.d, self.t)
    }

    pub fn value(&self, alpha: &IndexAlpha) -> Rational {
        let mut v = &self.weight[0] * Rational::from_integer(alpha.alpha0.into());
        for (w, &a) in self.weight[1..].iter().zip(&alpha.alphas) {
            if a != 0 {
                v += w * Rational::from_integer(a.into());
            }
        }
        v
    }
}

/// Minimum value and every point attaining it, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinResult {
    #[serde(serialize_with = "crate::serde_util::rational")]
    pub value: Rational,
    pub argmins: Vec<IndexAlpha>,
}

impl MinResult {
    fn single(value: Rational, at: IndexAlpha) -> Self {
        MinResult {
            value,
            argmins: vec![at],
        }
    }
}

/// Exhaustive minimization. Weights are scaled to integers so the scan runs
/// on machine integers.
pub fn brute_force_min(p: &LatticeProblem) -> Result<MinResult> {
    let points = p.feasible()?;
    if points.is_empty() {
        return Err(Error::params("the feasible set is empty"));
    }
    let den = p
        .weight
        .iter()
        .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let scaled: Vec<i128> = p
        .weight
        .iter()
        .map(|w| {
            let v = w.numer() * (&den / w.denom());
            i128::try_from(v).map_err(|_| Error::TooLarge("weight out of range".into()))
        })
        .collect::<Result<_>>()?;
    let eval = |a: &IndexAlpha| -> i128 {
        scaled[0] * i128::from(a.alpha0)
            + scaled[1..]
                .iter()
                .zip(&a.alphas)
                .map(|(w, &x)| w * i128::from(x))
                .sum::<i128>()
    };
    let best = points.iter().map(eval).min().expect("nonempty");
    let argmins = points.into_iter().filter(|a| eval(a) == best).collect();
    Ok(MinResult {
        value: Rational::new(best.into(), den),
        argmins,
    })
}

fn check_j(j: u32, n: u32, d: u32) -> Result<()> {
    if d < 2 || d > n {
        return Err(Error::params(format!(
            "need 2 <= d <= N, got d = {d}, N = {n}"
        )));
    }
    if j == 0 || j >= n {
        return Err(Error::params(format!(
            "need 1 <= j < N, got j = {j}, N = {n}"
        )));
    }
    Ok(())
}

fn corner(d: u32, alpha0: i64, l: u32, last: u32) -> IndexAlpha {
    let s = (d - 1) as usize;
    let mut alphas = vec![0; s];
    alphas[s - 1] = last;
    if s >= 2 {
        alphas[s - 2] = l;
    }
    IndexAlpha::new(alpha0, alphas)
}

/// `min alpha_0` over `Z_{j,N,d}`: `dj - sN`, attained only at
/// `(dj - sN, 0, ..., 0, N - j)`.
pub fn predicted_min_alpha0(j: u32, n: u32, d: u32) -> Result<MinResult> {
    predicted_min_alpha0_k_alphas(j, n, d, 0)
}

/// `min alpha_0 + k alpha_s` over `Z_{j,N,d}` for `d > 2k`:
/// `(d - k) j - (s - k) N` at the same single point.
pub fn predicted_min_alpha0_k_alphas(j: u32, n: u32, d: u32, k: u32) -> Result<MinResult> {
    predicted_min_t(j, n, d, 1, k)
}

/// `min alpha_0 + k alpha_s` over `Z^(t)_{j,N,d}` for `d > 2kt`:
/// `((d - kt) j - (s - kt) N) / t` at `((dj - sN) / t, 0, ..., 0, N - j)`.
pub fn predicted_min_t(j: u32, n: u32, d: u32, t: u32, k: u32) -> Result<MinResult> {
    check_j(j, n, d)?;
    if t == 0 || !d.is_multiple_of(t) || !n.is_multiple_of(t) {
        return Err(Error::params(format!("t = {t} must divide gcd(d, N)")));
    }
    if d <= 2 * k * t {
        return Err(Error::params(format!(
            "need d > 2kt, got d = {d}, k = {k}, t = {t}"
        )));
    }
    let (d, n, j, s, k, t) = (
        i64::from(d),
        i64::from(n),
        i64::from(j),
        i64::from(d) - 1,
        i64::from(k),
        i64::from(t),
    );
    let value = Rational::new(((d - k * t) * j - (s - k * t) * n).into(), t.into());
    let alpha0 = (d * j - s * n) / t;
    Ok(MinResult::single(
        value,
        corner(d as u32, alpha0, 0, (n - j) as u32),
    ))
}

/// The boundary case `d = 2 d_1`, `N = d_1 (2k + 1)`: with `r~ = d_1 / t`,
/// `min alpha_0 + r~ alpha_s` over `Z^(t)_{j,N,d}` is
/// `r~ j - (d_1 - 1) r~ (2k + 1)`, attained exactly at
/// `(r j - s r~ (2k + 1) + r l, 0, ..., 0, l, N - j - 2l)`, `0 <= 2l <= N - j`.
pub fn predicted_min_tie(j: u32, n: u32, d1: u32, t: u32) -> Result<MinResult> {
    if d1 < 2 {
        return Err(Error::params("need d_1 >= 2"));
    }
    if t == 0 || !d1.is_multiple_of(t) {
        return Err(Error::params(format!("t = {t} must divide d_1 = {d1}")));
    }
    if !n.is_multiple_of(d1) || (n / d1) % 2 != 1 || n / d1 < 3 {
        return Err(Error::params(format!(
            "N = {n} must be d_1 (2k + 1) with k >= 1 for d_1 = {d1}"
        )));
    }
    let d = 2 * d1;
    check_j(j, n, d)?;
    let k2 = i64::from(n / d1); // 2k + 1
    let (j64, n64, s) = (i64::from(j), i64::from(n), i64::from(d) - 1);
    let rt = i64::from(d1 / t);
    let r = 2 * rt;
    let value = Rational::from_integer((rt * j64 - (i64::from(d1) - 1) * rt * k2).into());
    let argmins = (0..=(n64 - j64) / 2)
        .map(|l| {
            corner(
                d,
                r * j64 - s * rt * k2 + r * l,
                l as u32,
                (n64 - j64 - 2 * l) as u32,
            )
        })
        .collect::<Vec<_>>();
    let mut argmins = argmins;
    argmins.sort();
    Ok(MinResult { value, argmins })
}

/// Vertices of `Delta_{j,N,d}`: the origin and `(N - j)/(d - l) e_l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplexData {
    pub j: u32,
    pub n: u32,
    pub d: u32,
    #[serde(serialize_with = "crate::serde_util::rational_vecs")]
    pub vertices: Vec<Vec<Rational>>,
}

/// Clause outcome for `f_{0,...,0,beta_s}` on the simplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplexMin {
    #[serde(serialize_with = "crate::serde_util::rational")]
    pub value: Rational,
    /// Indices into [`SimplexData::vertices`] attaining the minimum.
    pub vertices: Vec<usize>,
}

pub fn simplex_data(j: u32, n: u32, d: u32) -> Result<SimplexData> {
    check_j(j, n, d)?;
    let s = (d - 1) as usize;
    let mut vertices = vec![vec![Rational::zero(); s]];
    for l in 1..=s {
        let mut v = vec![Rational::zero(); s];
        v[l - 1] = Rational::new((n - j).into(), (d - l as u32).into());
        vertices.push(v);
    }
    Ok(SimplexData { j, n, d, vertices })
}

impl SimplexData {
    pub fn s(&self) -> usize {
        (self.d - 1) as usize
    }

    /// `f_beta(a) = j - sum (l - beta_l) a_l`.
    pub fn f_value(&self, beta: &[u32], point: &[Rational]) -> Rational {
        let mut v = Rational::from_integer(self.j.into());
        for (l, (b, a)) in beta.iter().zip(point).enumerate() {
            let coeff = l as i64 + 1 - i64::from(*b);
            v -= Rational::from_integer(coeff.into()) * a;
        }
        v
    }

    /// Minimum of a linear function on the simplex, read off its vertices.
    pub fn vertex_min(&self, beta: &[u32]) -> SimplexMin {
        let values: Vec<Rational> = self
            .vertices
            .iter()
            .map(|v| self.f_value(beta, v))
            .collect();
        let value = values.iter().min().expect("nonempty").clone();
        let vertices = (0..values.len()).filter(|&i| values[i] == value).collect();
        SimplexMin { value, vertices }
    }

    /// The lattice points `Delta_{j,N,d} cap N^s`.
    pub fn lattice_points(&self) -> Vec<Vec<u32>> {
        let s = self.s();
        let mut out = Vec::new();
        let mut cur = vec![0u32; s];
        fn walk(l: usize, budget: u32, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if l == 0 {
                out.push(cur.clone());
                return;
            }
            let cost = d - l as u32;
            let mut a = 0;
            while a * cost <= budget {
                cur[l - 1] = a;
                walk(l - 1, budget - a * cost, d, cur, out);
                a += 1;
            }
            cur[l - 1] = 0;
        }
        walk(s, self.n - self.j, self.d, &mut cur, &mut out);
        out
    }

    /// `phi_j(a) = (j - sum l a_l, a_1, ..., a_s)`.
    pub fn phi(&self, point: &[u32]) -> IndexAlpha {
        let weighted: i64 = point
            .iter()
            .enumerate()
            .map(|(l, &a)| (l as i64 + 1) * i64::from(a))
            .sum();
        IndexAlpha::new(i64::from(self.j) - weighted, point.to_vec())
    }
}

/// Closed-form minimum of `f_{0,...,0,beta_s}` on the simplex:
/// `j - (s - beta_s)(N - j)`, at the single vertex `(N - j) e_s` when
/// `2 beta_s < d`, and on the segment from `(N - j)/2 e_{s-1}` to
/// `(N - j) e_s` when `2 beta_s = d`.
pub fn predicted_simplex_min(j: u32, n: u32, d: u32, beta_s: u32) -> Result<SimplexMin> {
    check_j(j, n, d)?;
    if 2 * beta_s > d {
        return Err(Error::params(format!(
            "need 2 beta_s <= d, got beta_s = {beta_s}"
        )));
    }
    if 2 * beta_s == d && d < 4 {
        return Err(Error::params("the segment case 2 beta_s = d needs d >= 4"));
    }
    let s = i64::from(d) - 1;
    let value =
        Rational::from_integer((i64::from(j) - (s - i64::from(beta_s)) * i64::from(n - j)).into());
    let vertices = if 2 * beta_s < d {
        vec![s as usize]
    } else {
        vec![s as usize - 1, s as usize]
    };
    Ok(SimplexMin { value, vertices })
}

/// `phi_j` maps the lattice points of the simplex bijectively onto
/// `Z_{j,N,d}`.
pub fn check_phi_bijection(j: u32, n: u32, d: u32) -> Result<bool> {
    let data = simplex_data(j, n, d)?;
    let mut image: Vec<IndexAlpha> = data.lattice_points().iter().map(|p| data.phi(p)).collect();
    image.sort();
    let distinct = image.windows(2).all(|w| w[0] != w[1]);
    Ok(distinct && image == enumerate_indices(j, n, d, 1)?)
}

/// `psi` (divide `alpha_0` by `t`) maps `Z_{j,N,d} cap (tZ x N^s)`
/// bijectively onto `Z^(t)_{j,N,d}`.
pub fn check_psi_bijection(j: u32, n: u32, d: u32, t: u32) -> Result<bool> {
    let ti = i64::from(t);
    let mut image: Vec<IndexAlpha> = enumerate_indices(j, n, d, 1)?
        .into_iter()
        .filter(|a| a.alpha0.rem_euclid(ti) == 0)
        .map(|a| IndexAlpha::new(a.alpha0 / ti, a.alphas))
        .collect();
    image.sort();
    let distinct = image.windows(2).all(|w| w[0] != w[1]);
    Ok(distinct && image == enumerate_indices(j, n, d, t)?)
}

/// Outcome of comparing closed forms against brute force over a grid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GridReport {
    pub alpha0_checks: usize,
    pub k_checks: usize,
    pub t_checks: usize,
    pub tie_checks: usize,
    pub simplex_checks: usize,
    pub bijection_checks: usize,
    pub mismatches: Vec<String>,
}

impl GridReport {
    pub fn total(&self) -> usize {
        self.alpha0_checks
            + self.k_checks
            + self.t_checks
            + self.tie_checks
            + self.simplex_checks
            + self.bijection_checks
    }

    fn merge(mut self, other: GridReport) -> GridReport {
        self.alpha0_checks += other.alpha0_checks;
        self.k_checks += other.k_checks;
        self.t_checks += other.t_checks;
        self.tie_checks += other.tie_checks;
        self.simplex_checks += other.simplex_checks;
        self.bijection_checks += other.bijection_checks;
        self.mismatches.extend(other.mismatches);
        self
    }
}

fn divisors(n: u32) -> impl Iterator<Item = u32> {
    (1..=n).filter(move |t| n.is_multiple_of(*t))
}

fn check_case(d: u32, n: u32, j: u32) -> Result<GridReport> {
    let mut rep = GridReport::default();
    let mut expect =
        |label: String, predicted: MinResult, p: LatticeProblem, unique: bool| -> Result<()> {
            let brute = brute_force_min(&p)?;
            if brute != predicted || (unique && brute.argmins.len() != 1) {
                rep.mismatches.push(format!(
                    "{label}: predicted {} at {:?}, brute force {} at {:?}",
                    predicted.value,
                    predicted
                        .argmins
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>(),
                    brute.value,
                    brute
                        .argmins
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                ));
            }
            Ok(())
        };
    let gcd = d.gcd(&n);

    expect(
        format!("min alpha_0 (d={d}, N={n}, j={j})"),
        predicted_min_alpha0(j, n, d)?,
        LatticeProblem::alpha0_plus(j, n, d, 1, Rational::zero())?,
        true,
    )?;
    let alpha0_checks = 1;
    let mut k_checks = 0;
    let mut t_checks = 0;
    for k in 1.. {
        if d <= 2 * k {
            break;
        }
        expect(
            format!("min alpha_0 + {k} alpha_s (d={d}, N={n}, j={j})"),
            predicted_min_alpha0_k_alphas(j, n, d, k)?,
            LatticeProblem::alpha0_plus(j, n, d, 1, Rational::from_integer(k.into()))?,
            true,
        )?;
        k_checks += 1;
    }
    for t in divisors(gcd) {
        for k in 0.. {
            if d <= 2 * k * t {
                break;
            }
            expect(
                format!("t-min alpha_0 + {k} alpha_s (d={d}, N={n}, j={j}, t={t})"),
                predicted_min_t(j, n, d, t, k)?,
                LatticeProblem::alpha0_plus(j, n, d, t, Rational::from_integer(k.into()))?,
                true,
            )?;
            t_checks += 1;
        }
    }
    let mut tie_checks = 0;
    if d.is_multiple_of(2) && d >= 4 {
        let d1 = d / 2;
        if n.is_multiple_of(d1) && (n / d1) % 2 == 1 && n / d1 >= 3 {
            for t in divisors(d1) {
                expect(
                    format!("tie (d_1={d1}, N={n}, j={j}, t={t})"),
                    predicted_min_tie(j, n, d1, t)?,
                    LatticeProblem::alpha0_plus(
                        j,
                        n,
                        d,
                        t,
                        Rational::from_integer((d1 / t).into()),
                    )?,
                    false,
                )?;
                tie_checks += 1;
            }
        }
    }

    let mut simplex_checks = 0;
    let data = simplex_data(j, n, d)?;
    let points = data.lattice_points();
    let s = data.s();
    // the segment clause needs s >= 2
    let top_beta = if d >= 4 { d / 2 } else { (d - 1) / 2 };
    for beta_s in 0..=top_beta {
        let mut beta = vec![0; s];
        beta[s - 1] = beta_s;
        let predicted = predicted_simplex_min(j, n, d, beta_s)?;
        let by_vertex = data.vertex_min(&beta);
        // lattice minimizers must be exactly the lattice points of the
        // predicted vertex or segment
        let values: Vec<Rational> = points
            .iter()
            .map(|p| {
                let p: Vec<Rational> = p
                    .iter()
                    .map(|&x| Rational::from_integer(x.into()))
                    .collect();
                data.f_value(&beta, &p)
            })
            .collect();
        let lattice_min = values
            .iter()
            .min()
            .expect("origin is a lattice point")
            .clone();
        let mut lattice_arg: Vec<&Vec<u32>> = points
            .iter()
            .zip(&values)
            .filter(|(_, v)| **v == lattice_min)
            .map(|(p, _)| p)
            .collect();
        lattice_arg.sort();
        let on_segment = |p: &Vec<u32>| {
            p[..s.saturating_sub(2)].iter().all(|&x| x == 0)
                && if 2 * beta_s < d {
                    p[s - 1] == n - j && (s < 2 || p[s - 2] == 0)
                } else {
                    s >= 2 && 2 * p[s - 2] + p[s - 1] == n - j
                }
        };
        let mut expected_arg: Vec<&Vec<u32>> = points.iter().filter(|p| on_segment(p)).collect();
        expected_arg.sort();
        if by_vertex != predicted || lattice_min != predicted.value || lattice_arg != expected_arg {
            rep.mismatches.push(format!(
                "simplex (d={d}, N={n}, j={j}, beta_s={beta_s}): predicted {}, vertices give {}, lattice gives {}",
                predicted.value, by_vertex.value, lattice_min
            ));
        }
        simplex_checks += 1;
    }

    let mut bijection_checks = 0;
    if !check_phi_bijection(j, n, d)? {
        rep.mismatches
            .push(format!("phi not bijective (d={d}, N={n}, j={j})"));
    }
    bijection_checks += 1;
    for t in divisors(gcd) {
        if !check_psi_bijection(j, n, d, t)? {
            rep.mismatches
                .push(format!("psi not bijective (d={d}, N={n}, j={j}, t={t})"));
        }
        bijection_checks += 1;
    }

    rep.alpha0_checks = alpha0_checks;
    rep.k_checks = k_checks;
    rep.t_checks = t_checks;
    rep.tie_checks = tie_checks;
    rep.simplex_checks = simplex_checks;
    rep.bijection_checks = bijection_checks;
    Ok(rep)
}

/// Checks every closed form against brute force for `2 <= d <= max_d`,
/// `d <= N <= max_n`, `1 <= j < N`, all admissible `t` and `k`.
pub fn sweep_grid(max_d: u32, max_n: u32) -> Result<GridReport> {
    let cases: Vec<(u32, u32, u32)> = (2..=max_d)
        .flat_map(|d| (d..=max_n).flat_map(move |n| (1..n).map(move |j| (d, n, j))))
        .collect();
    let reports: Vec<GridReport> = cases
        .par_iter()
        .map(|&(d, n, j)| check_case(d, n, j))
        .collect::<Result<_>>()?;
    Ok(reports
        .into_iter()
        .fold(GridReport::default(), GridReport::merge))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn tuple(v: &[i64]) -> IndexAlpha {
        IndexAlpha::from_tuple(v).unwrap()
    }

    #[test]
    fn brute_force_small() {
        let p = LatticeProblem::alpha0_plus(2, 3, 2, 1, int(0)).unwrap();
        let m = brute_force_min(&p).unwrap();
        assert_eq!(m.value, int(1));
        assert_eq!(m.argmins, vec![tuple(&[1, 1])]);
    }

    #[test]
    fn brute_force_negative_minimum() {
        let p = LatticeProblem::alpha0_plus(4, 6, 4, 1, int(0)).unwrap();
        let m = brute_force_min(&p).unwrap();
        assert_eq!(m, MinResult::single(int(-2), tuple(&[-2, 0, 0, 2])));
        assert_eq!(predicted_min_alpha0(4, 6, 4).unwrap(), m);
    }

    #[test]
    fn zero_weight_selects_everything() {
        let p = LatticeProblem::new(3, 6, 4, 1, vec![int(0); 4]).unwrap();
        let m = brute_force_min(&p).unwrap();
        assert_eq!(m.value, int(0));
        assert_eq!(m.argmins, p.feasible().unwrap());
    }

    #[test]
    fn rational_weights() {
        let p = LatticeProblem::new(2, 3, 2, 1, vec![rat(1, 2), rat(1, 3)]).unwrap();
        // (2,0) -> 1, (1,1) -> 5/6
        let m = brute_force_min(&p).unwrap();
        assert_eq!(m, MinResult::single(rat(5, 6), tuple(&[1, 1])));
    }

    #[test]
    fn closed_forms_examples() {
        assert_eq!(
            predicted_min_alpha0(2, 3, 2).unwrap(),
            MinResult::single(int(1), tuple(&[1, 1]))
        );
        // j = N - 1 gives N - d at (N - d, 0, ..., 0, 1)
        assert_eq!(
            predicted_min_alpha0(8, 9, 4).unwrap(),
            MinResult::single(int(5), tuple(&[5, 0, 0, 1]))
        );
        assert_eq!(
            predicted_min_alpha0_k_alphas(4, 6, 4, 1).unwrap(),
            MinResult::single(int(0), tuple(&[-2, 0, 0, 2]))
        );
        assert!(predicted_min_alpha0_k_alphas(4, 6, 4, 2).is_err());
        assert_eq!(
            predicted_min_t(2, 6, 4, 2, 0).unwrap(),
            MinResult::single(int(-5), tuple(&[-5, 0, 0, 4]))
        );
        let m = predicted_min_t(8, 10, 6, 2, 1).unwrap();
        assert_eq!(m.value, int(1));
        let brute =
            brute_force_min(&LatticeProblem::alpha0_plus(8, 10, 6, 2, int(1)).unwrap()).unwrap();
        assert_eq!(brute, m);
    }

    #[test]
    fn tie_segment() {
        let m = predicted_min_tie(2, 6, 2, 1).unwrap();
        assert_eq!(m.value, int(-2));
        assert_eq!(
            m.argmins,
            vec![
                tuple(&[-10, 0, 0, 4]),
                tuple(&[-6, 0, 1, 2]),
                tuple(&[-2, 0, 2, 0])
            ]
        );
        let brute =
            brute_force_min(&LatticeProblem::alpha0_plus(2, 6, 4, 1, int(2)).unwrap()).unwrap();
        assert_eq!(brute, m);
        // N - j odd: last l is (N - j - 1) / 2
        let m = predicted_min_tie(3, 6, 2, 1).unwrap();
        assert_eq!(m.argmins.len(), 2);
        assert!(predicted_min_tie(2, 4, 2, 1).is_err());
    }

    #[test]
    fn simplex_examples() {
        let data = simplex_data(4, 6, 4).unwrap();
        assert_eq!(
            data.vertices,
            vec![
                vec![int(0), int(0), int(0)],
                vec![rat(2, 3), int(0), int(0)],
                vec![int(0), int(1), int(0)],
                vec![int(0), int(0), int(2)],
            ]
        );
        let m = data.vertex_min(&[0, 0, 1]);
        assert_eq!(
            m,
            SimplexMin {
                value: int(0),
                vertices: vec![3]
            }
        );
        assert_eq!(predicted_simplex_min(4, 6, 4, 1).unwrap(), m);
        let m = data.vertex_min(&[0, 0, 2]);
        assert_eq!(m.vertices, vec![2, 3]);
        assert!(check_phi_bijection(3, 5, 3).unwrap());
        assert!(check_psi_bijection(2, 6, 4, 2).unwrap());
    }

    #[test]
    fn small_grid_agrees() {
        let rep = sweep_grid(5, 10).unwrap();
        assert!(rep.mismatches.is_empty(), "{:?}", rep.mismatches);
        assert!(rep.tie_checks > 0 && rep.t_checks > rep.k_checks);
    }

    #[test]
    fn monotone_in_j() {
        for (d, n) in [(3, 7), (4, 9), (5, 12)] {
            let mins: Vec<Rational> = (1..n)
                .map(|j| {
                    brute_force_min(
                        &LatticeProblem::new(j, n, d, 1, vec![int(1); d as usize]).unwrap(),
                    )
                    .unwrap()
                    .value
                })
                .collect();
            assert!(mins.windows(2).all(|w| w[0] <= w[1]), "{mins:?}");
        }
    }
}
