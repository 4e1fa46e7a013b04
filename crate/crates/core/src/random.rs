//! Seeded generators for polynomials and families. Every sampler takes an
//! explicit RNG; [`rng_for`] derives an independent stream per index so
//! parallel runs reproduce sequential ones.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::formulas::FamilySpec;
use crate::poly::{is_power_up_to_constant, is_square_free, Monomial, Poly, Rational};

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Numerator in `{-9..9} \ {0}`, denominator in `{1..4}`.
pub fn random_coefficient(rng: &mut impl Rng) -> Rational {
    let mut num = rng.gen_range(1..=9i64);
    if rng.gen_bool(0.5) {
        num = -num;
    }
    Rational::new(num.into(), rng.gen_range(1..=4i64).into())
}

/// Small nonzero integer in `{-5..5} \ {0}`.
pub fn random_small_int(rng: &mut impl Rng) -> Rational {
    let n = rng.gen_range(1..=5i64);
    Rational::from_integer(if rng.gen_bool(0.5) { n } else { -n }.into())
}

/// Nonzero homogeneous polynomial of degree `deg` with up to `max_terms`
/// distinct terms.
pub fn random_homogeneous(rng: &mut impl Rng, nvars: usize, deg: u32, max_terms: usize) -> Poly {
    let mut monos = Monomial::all_of_degree(nvars, deg);
    monos.shuffle(rng);
    let count = rng.gen_range(1..=max_terms.max(1).min(monos.len()));
    Poly::from_terms(
        nvars,
        monos
            .into_iter()
            .take(count)
            .map(|m| (m, random_coefficient(rng)))
            .collect::<Vec<_>>(),
    )
}

/// Polynomial of degree at most `max_deg` with up to `max_terms` terms.
pub fn random_poly(rng: &mut impl Rng, nvars: usize, max_deg: u32, max_terms: usize) -> Poly {
    let count = rng.gen_range(0..=max_terms);
    let mut p = Poly::zero(nvars);
    for _ in 0..count {
        let deg = rng.gen_range(0..=max_deg);
        p = &p + &random_homogeneous(rng, nvars, deg, 1);
    }
    p
}

/// Homogeneous `h` of degree `t` that is square-free and not a power of a
/// lower-degree polynomial.
pub fn random_h(rng: &mut impl Rng, nvars: usize, t: u32) -> Result<Poly> {
    if t == 0 || (nvars < 2 && t > 1) {
        return Err(Error::params(format!(
            "no homogeneous non-power of degree {t} in {nvars} variables"
        )));
    }
    loop {
        let h = random_homogeneous(rng, nvars, t, 3);
        if h.degree().finite() != Some(t) {
            continue;
        }
        if is_power_up_to_constant(&h)?.is_none() && is_square_free(&h)? {
            return Ok(h);
        }
    }
}

/// Random family `F = F_1 + ... + F_s + h^(d/t)`, `G_N = a_N h^(N/t)`.
///
/// Each `F_l` is `h^v` times a random form with `v` uniform in
/// `0..=l/t`, which makes many of the lower components `G_j` polynomial;
/// the constants `a_j` are random on multiples of `t` (half of them zero).
pub fn random_family(
    rng: &mut impl Rng,
    nvars: usize,
    d: u32,
    t: u32,
    n: u32,
) -> Result<FamilySpec> {
    let h = random_h(rng, nvars, t)?;
    let mut comps = Vec::new();
    for l in 1..d {
        if rng.gen_bool(0.2) {
            comps.push(Poly::zero(nvars));
            continue;
        }
        let v = rng.gen_range(0..=l / t);
        let rest = random_homogeneous(rng, nvars, l - v * t, 3);
        comps.push(&h.pow(v) * &rest);
    }
    let mut a = std::collections::BTreeMap::new();
    for j in (t..n).step_by(t as usize) {
        if rng.gen_bool(0.5) {
            a.insert(j, random_coefficient(rng));
        }
    }
    a.insert(n, random_coefficient(rng));
    FamilySpec::new(nvars, d, n, h, comps, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<u32> = (0..5).map(|_| rng_for(3, 7).gen()).collect();
        let b: Vec<u32> = (0..5).map(|_| rng_for(3, 7).gen()).collect();
        assert_eq!(a, b);
        assert_ne!(rng_for(3, 7).gen::<u64>(), rng_for(3, 8).gen::<u64>());
    }

    #[test]
    fn generated_shapes() {
        let mut rng = rng_for(1, 0);
        for deg in 1..5 {
            let p = random_homogeneous(&mut rng, 3, deg, 4);
            assert!(p.is_homogeneous());
            assert_eq!(p.degree().finite(), Some(deg));
        }
        let h = random_h(&mut rng, 2, 2).unwrap();
        assert!(is_square_free(&h).unwrap());
        let spec = random_family(&mut rng, 2, 4, 2, 6).unwrap();
        assert_eq!((spec.d(), spec.t(), spec.n()), (4, 2, 6));
    }
}
