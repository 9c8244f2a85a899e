//! JSON encodings: scalars as arrays of `"p/q"` strings, Laurent elements as
//! `{denom, terms: [{num, scalar}]}`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclotomic::{default_field, parse_rational, rational_to_string, Scalar};
use super::laurent::{Exponent, Laurent};

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.coefficients().iter().map(rational_to_string).collect();
        parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(d)?;
        let field = default_field();
        if parts.len() > field.degree() {
            return Err(D::Error::custom(format!("scalar has {} coordinates, field degree is {}", parts.len(), field.degree())));
        }
        let coeffs = parts
            .iter()
            .map(|p| parse_rational(p).ok_or_else(|| D::Error::custom(format!("bad rational {p:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Scalar::from_coeffs(field, coeffs))
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentTerm {
    num: i64,
    scalar: Scalar,
}

#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    denom: u32,
    terms: Vec<LaurentTerm>,
}

impl Serialize for Laurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self.raw_terms().map(|(num, c)| LaurentTerm { num, scalar: c.clone() }).collect();
        LaurentRepr { denom: self.denom(), terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Laurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = LaurentRepr::deserialize(d)?;
        if r.denom == 0 {
            return Err(D::Error::custom("denominator must be positive"));
        }
        Ok(Laurent::from_terms(r.terms.into_iter().map(|t| (Exponent::new(t.num, r.denom as i64), t.scalar))))
    }
}
