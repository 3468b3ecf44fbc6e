//! JSON form: `{"num": [...], "den": [...]}` with terms
//! `{"coeff": "<decimal>", "exps": {"a": 1, "g": -2}}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::poly::LaurentPolynomial;
use super::rational::RationalFunction;
use super::var::Var;
use crate::error::Error;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: BTreeMap<String, i32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: Vec<TermJson>,
    pub den: Vec<TermJson>,
}

impl From<&LaurentPolynomial> for Vec<TermJson> {
    fn from(p: &LaurentPolynomial) -> Self {
        p.terms()
            .iter()
            .map(|(m, c)| TermJson {
                coeff: c.to_string(),
                exps: m.exponents().iter().map(|&(v, e)| (v.name(), e)).collect(),
            })
            .collect()
    }
}

impl TryFrom<&[TermJson]> for LaurentPolynomial {
    type Error = Error;

    fn try_from(terms: &[TermJson]) -> Result<Self, Error> {
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{}`", t.coeff)))?;
            let m = Monomial::from_pairs(t.exps.iter().map(|(name, &e)| (Var::named(name), e)));
            out.push((m, c));
        }
        Ok(LaurentPolynomial::from_terms(out))
    }
}

impl From<&RationalFunction> for RationalJson {
    fn from(r: &RationalFunction) -> Self {
        RationalJson {
            num: r.num().into(),
            den: r.den().into(),
        }
    }
}

impl From<RationalFunction> for RationalJson {
    fn from(r: RationalFunction) -> Self {
        (&r).into()
    }
}

impl TryFrom<RationalJson> for RationalFunction {
    type Error = Error;

    fn try_from(j: RationalJson) -> Result<Self, Error> {
        let num = LaurentPolynomial::try_from(j.num.as_slice())?;
        let den = LaurentPolynomial::try_from(j.den.as_slice())?;
        RationalFunction::new(num, den)
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Vec::<TermJson>::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(d)?;
        LaurentPolynomial::try_from(terms.as_slice()).map_err(serde::de::Error::custom)
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RationalJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = RationalJson::deserialize(d)?;
        RationalFunction::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::var::abg;

    #[test]
    fn shape() {
        let (a, _, g) = abg();
        let m = Monomial::from_pairs([(a, 1), (g, 2)]);
        let r = RationalFunction::recip_of(LaurentPolynomial::minus_one(m)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["num"][0]["coeff"], "1");
        let den = v["den"].as_array().unwrap();
        assert_eq!(den.len(), 2);
        assert_eq!(den[1]["exps"]["a"], 1);
        assert_eq!(den[1]["exps"]["g"], 2);
        assert_eq!(den[0]["coeff"], "-1");
    }

    #[test]
    fn bad_coefficient_is_rejected() {
        let text = r#"{"num":[{"coeff":"x1","exps":{}}],"den":[{"coeff":"1","exps":{}}]}"#;
        assert!(serde_json::from_str::<RationalFunction>(text).is_err());
        let text = r#"{"num":[{"coeff":"1","exps":{}}],"den":[]}"#;
        assert!(serde_json::from_str::<RationalFunction>(text).is_err());
    }
}
