//! JSON rendering conventions: polynomials as text in the input grammar,
//! rationals as `"p/q"` strings (integers as `"n"`), degrees as integers
//! or `"-inf"`, bracket elements as `{i, j, poly}` entries with 1-based
//! indices.

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::bracket::BracketElement;
use crate::formulas::IndexAlpha;
use crate::poly::{Degree, HomogeneousPoly, Poly, Rational};

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for HomogeneousPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Degree::NegInfinity => s.serialize_str("-inf"),
            Degree::Finite(d) => s.serialize_u32(*d),
        }
    }
}

impl Serialize for IndexAlpha {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let tuple = self.to_tuple();
        let mut seq = s.serialize_seq(Some(tuple.len()))?;
        for x in &tuple {
            seq.serialize_element(x)?;
        }
        seq.end()
    }
}

struct Entry<'a> {
    i: usize,
    j: usize,
    poly: &'a Poly,
}

impl Serialize for Entry<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Entry", 3)?;
        st.serialize_field("i", &self.i)?;
        st.serialize_field("j", &self.j)?;
        st.serialize_field("poly", self.poly)?;
        st.end()
    }
}

impl Serialize for BracketElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.entries().map(|(i, j, poly)| Entry {
            i: i + 1,
            j: j + 1,
            poly,
        }))
    }
}

pub fn rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(q)
}

pub fn opt_rational<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.collect_str(q),
        None => s.serialize_none(),
    }
}

pub fn rationals<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(qs.iter().map(ToString::to_string))
}

pub fn rational_vecs<S: Serializer>(qs: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(
        qs.iter()
            .map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::poisson_bracket;
    use crate::poly::{parse_poly, rat};

    #[derive(Serialize)]
    struct Probe {
        #[serde(serialize_with = "rational")]
        q: Rational,
        deg: Degree,
        neg: Degree,
        alpha: IndexAlpha,
    }

    #[test]
    fn rendering() {
        let v = serde_json::to_value(Probe {
            q: rat(-3, 6),
            deg: Degree::Finite(4),
            neg: Degree::NegInfinity,
            alpha: IndexAlpha::new(-2, vec![0, 0, 2]),
        })
        .unwrap();
        assert_eq!(
            v.to_string(),
            r#"{"alpha":[-2,0,0,2],"deg":4,"neg":"-inf","q":"-1/2"}"#
        );
        let b = poisson_bracket(
            &parse_poly("x1^2", 2).unwrap(),
            &parse_poly("x1*x2", 2).unwrap(),
        )
        .unwrap();
        assert_eq!(
            serde_json::to_string(&b).unwrap(),
            r#"[{"i":1,"j":2,"poly":"2*x1^2"}]"#
        );
    }
}
