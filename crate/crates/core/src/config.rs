//! TOML input files: family specifications and search configurations.
//!
//! A family specification looks like
//!
//! ```toml
//! n = 2        # number of variables
//! d = 2        # deg F
//! N = 3        # deg G
//! t = 1        # deg h
//! h = "x2"
//!
//! [F]          # lower components F_1 .. F_s, absent ones are zero
//! 1 = "x1"
//!
//! [a]          # a_j, absent ones are zero; a_N is required
//! 3 = "1"
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::conjecture::CandidateConfig;
use crate::error::{Error, Result};
use crate::formulas::FamilySpec;
use crate::poly::{parse_poly, parse_rational, Poly, Rational};

/// Largest number of variables accepted from files.
pub const MAX_NVARS: usize = 9;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    n: usize,
    d: u32,
    #[serde(rename = "N")]
    big_n: u32,
    t: u32,
    h: String,
    #[serde(default, rename = "F")]
    f: BTreeMap<String, String>,
    #[serde(default)]
    a: BTreeMap<String, Scalar>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn to_rational(&self, what: &str) -> Result<Rational> {
        match self {
            Scalar::Int(v) => Ok(Rational::from_integer((*v).into())),
            Scalar::Text(s) => parse_rational(s)
                .ok_or_else(|| Error::Config(format!("{what}: {s:?} is not a rational number"))),
        }
    }
}

/// `line:column` (both 1-based) of a byte offset.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn toml_error(text: &str, e: toml::de::Error) -> Error {
    let msg = e.message().trim().to_string();
    match e.span() {
        Some(span) => {
            let (line, col) = line_col(text, span.start);
            Error::Config(format!("line {line}, column {col}: {msg}"))
        }
        None => Error::Config(msg),
    }
}

fn index(key: &str, table: &str) -> Result<u32> {
    key.trim().parse::<u32>().map_err(|_| {
        Error::Config(format!(
            "[{table}] keys must be nonnegative integers, got {key:?}"
        ))
    })
}

fn poly_field(text: &str, nvars: usize, what: &str) -> Result<Poly> {
    parse_poly(text, nvars).map_err(|e| Error::Config(format!("{what}: {e}")))
}

/// Parses and validates a family specification.
pub fn parse_spec(text: &str) -> Result<FamilySpec> {
    let raw: RawSpec = toml::from_str(text).map_err(|e| toml_error(text, e))?;
    let (n, d, big_n, t) = (raw.n, raw.d, raw.big_n, raw.t);
    if n == 0 || n > MAX_NVARS {
        return Err(Error::params(format!(
            "n must lie in 1..={MAX_NVARS}, got {n}"
        )));
    }
    if d < 2 {
        return Err(Error::params(format!("d must be at least 2, got {d}")));
    }
    if t == 0 || d % t != 0 || big_n % t != 0 {
        return Err(Error::params(format!(
            "t must divide gcd(d, N): t = {t}, d = {d}, N = {big_n}"
        )));
    }
    let h = poly_field(&raw.h, n, "h")?;
    if h.degree().finite() != Some(t) {
        return Err(Error::params(format!("deg h = {} but t = {t}", h.degree())));
    }
    let s = d - 1;
    let mut comps = vec![Poly::zero(n); s as usize];
    for (key, text) in &raw.f {
        let l = index(key, "F")?;
        if l == 0 || l > s {
            return Err(Error::params(format!("F_{l} is outside 1..=s = {s}")));
        }
        comps[(l - 1) as usize] = poly_field(text, n, &format!("F_{l}"))?;
    }
    let mut a = BTreeMap::new();
    for (key, value) in &raw.a {
        let j = index(key, "a")?;
        let v = value.to_rational(&format!("a_{j}"))?;
        if j % t != 0 && v != Rational::from_integer(0.into()) {
            return Err(Error::params(format!(
                "a_{j} must be zero when deg h = {t} does not divide j = {j}"
            )));
        }
        a.insert(j, v);
    }
    FamilySpec::new(n, d, big_n, h, comps, a)
}

pub fn load_spec(path: &Path) -> Result<FamilySpec> {
    parse_spec(&read(path)?)
}

pub fn parse_search_config(text: &str) -> Result<CandidateConfig> {
    let cfg: CandidateConfig = toml::from_str(text).map_err(|e| toml_error(text, e))?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_search_config(path: &Path) -> Result<CandidateConfig> {
    parse_search_config(&read(path)?)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

/// Renders a specification back into the file format.
pub fn render_spec(spec: &FamilySpec) -> String {
    let mut out = format!(
        "n = {}\nd = {}\nN = {}\nt = {}\nh = \"{}\"\n\n[F]\n",
        spec.nvars,
        spec.d(),
        spec.n(),
        spec.t(),
        spec.h()
    );
    for l in 1..=spec.s() {
        let c = spec.f_component(l);
        if !c.is_zero() {
            out += &format!("{l} = \"{c}\"\n");
        }
    }
    out += "\n[a]\n";
    for (j, v) in &spec.params.a {
        out += &format!("{j} = \"{v}\"\n");
    }
    out
}
