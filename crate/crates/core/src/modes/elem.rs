use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};

use crate::conformal::{ConfElem, GenId};
use crate::error::{Error, Result};
use crate::scalars::laurent::fmt_exponent;
use crate::scalars::{falling, parse_exponent, Exponent, Laurent, Scalar};

pub(crate) fn exp_to_rational(k: Exponent) -> BigRational {
    BigRational::new(BigInt::from(*k.numer()), BigInt::from(*k.denom()))
}

pub(crate) fn falling_at(k: Exponent, n: u32) -> Scalar {
    Scalar::from_rational(falling(&exp_to_rational(k), n))
}

pub(crate) fn minus_one() -> Exponent {
    Exponent::from_integer(-1)
}

/// An element of `L(𝒜,σ)/∂̂L(𝒜,σ)`: a finite sum of `v ⊗ t^k` with no `∂`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ModeElem {
    terms: BTreeMap<(GenId, Exponent), Scalar>,
}

impl ModeElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(g: GenId, k: Exponent, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(g, k, c);
        e
    }

    pub fn gen(g: GenId, k: Exponent) -> Self {
        Self::term(g, k, Scalar::one())
    }

    /// The central mode `C ⊗ t^{−1}`.
    pub fn central() -> Self {
        Self::gen(GenId::C, minus_one())
    }

    /// Adds `c · g ⊗ t^k`; central modes away from `t^{−1}` vanish.
    pub fn add_term(&mut self, g: GenId, k: Exponent, c: Scalar) {
        if c.is_zero() || (g == GenId::C && k != minus_one()) {
            return;
        }
        let slot = self.terms.entry((g, k)).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&(g, k));
        }
    }

    pub fn add_assign_ref(&mut self, other: &ModeElem) {
        for ((g, k), c) in &other.terms {
            self.add_term(*g, *k, c.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (GenId, Exponent, &Scalar)> + '_ {
        self.terms.iter().map(|((g, k), c)| (*g, *k, c))
    }

    pub fn coeff(&self, g: GenId, k: Exponent) -> Scalar {
        self.terms.get(&(g, k)).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Scalar) -> ModeElem {
        if c.is_zero() {
            return ModeElem::zero();
        }
        ModeElem { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// `Some(true)` for odd, `Some(false)` for even, `None` for zero.
    pub fn parity(&self) -> Result<Option<bool>> {
        let mut it = self.terms.keys().map(|(g, _)| g.is_odd());
        let Some(first) = it.next() else { return Ok(None) };
        if it.all(|p| p == first) {
            Ok(Some(first))
        } else {
            Err(Error::MixedParity(self.to_string()))
        }
    }

    /// The canonical lift `Σ c · v ⊗ t^k` into the loop algebra.
    pub fn lift(&self) -> ConfElem {
        let mut out = ConfElem::zero();
        for ((g, k), c) in &self.terms {
            out.add_term(*g, 0, Laurent::monomial(c.clone(), *k));
        }
        out
    }
}

/// Canonical coset representative: `∂^ℓ v ⊗ f ↦ v ⊗ (−δ_t)^ℓ f`, then central
/// modes at exponents other than `−1` are dropped.
pub fn reduce(x: &ConfElem) -> ModeElem {
    let mut out = ModeElem::zero();
    for (g, d, f) in x.terms() {
        for (k, c) in f.terms() {
            let mut coef = c * &falling_at(k, d);
            if d % 2 == 1 {
                coef = -coef;
            }
            out.add_term(g, k - Exponent::from_integer(d as i64), coef);
        }
    }
    out
}

impl fmt::Display for ModeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, ((g, k), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{g}⊗t^{}", fmt_exponent(*k))?;
            } else {
                write!(f, "({c}){g}⊗t^{}", fmt_exponent(*k))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ModeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModeElem({self})")
    }
}

impl<'a> Add<&'a ModeElem> for &'a ModeElem {
    type Output = ModeElem;
    fn add(self, r: &ModeElem) -> ModeElem {
        let mut out = self.clone();
        out.add_assign_ref(r);
        out
    }
}

impl<'a> Sub<&'a ModeElem> for &'a ModeElem {
    type Output = ModeElem;
    fn sub(self, r: &ModeElem) -> ModeElem {
        let mut out = self.clone();
        out.add_assign_ref(&-r);
        out
    }
}

impl Neg for &ModeElem {
    type Output = ModeElem;
    fn neg(self) -> ModeElem {
        self.scale(&-Scalar::one())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    gen: GenId,
    exponent: String,
    coeff: Scalar,
}

impl Serialize for ModeElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermRepr> =
            self.terms().map(|(gen, k, c)| TermRepr { gen, exponent: k.to_string(), coeff: c.clone() }).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ModeElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<TermRepr>::deserialize(d)?;
        let mut out = ModeElem::zero();
        for t in v {
            let k = parse_exponent(&t.exponent).map_err(serde::de::Error::custom)?;
            out.add_term(t.gen, k, t.coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use GenId::*;

    fn e(n: i64) -> Exponent {
        Exponent::from_integer(n)
    }

    #[test]
    fn reduce_examples() {
        let x = ConfElem::term(L, 1, Laurent::t());
        assert_eq!(reduce(&x), ModeElem::term(L, e(0), -Scalar::one()));
        assert!(reduce(&ConfElem::term(C, 0, Laurent::t_pow(2))).is_zero());
        let y = ConfElem::term(L, 0, Laurent::t_pow(5));
        assert_eq!(reduce(&y), ModeElem::gen(L, e(5)));
        assert_eq!(reduce(&ConfElem::term(C, 0, Laurent::t_pow(-1))), ModeElem::central());
    }

    fn arb_elem() -> impl Strategy<Value = ConfElem> {
        prop::collection::vec((0usize..17, 0u32..3, -4i64..5, 0i64..2, -5i64..6), 0..5).prop_map(|ts| {
            let mut x = ConfElem::zero();
            for (g, d, num, half, c) in ts {
                let k = Exponent::new(2 * num + half, 2);
                x.add_term(GenId::ALL[g], d, Laurent::monomial(Scalar::from_integer(c), k));
            }
            x
        })
    }

    proptest! {
        #[test]
        fn reduce_is_linear_and_kills_derivatives(x in arb_elem(), y in arb_elem()) {
            prop_assert_eq!(reduce(&(&x + &y)), &reduce(&x) + &reduce(&y));
            prop_assert!(reduce(&x.partial_hat()).is_zero());
            let r = reduce(&x);
            prop_assert_eq!(reduce(&r.lift()), r);
        }
    }

    #[test]
    fn serde_round_trip() {
        let x = &ModeElem::term(G2, Exponent::new(1, 2), Scalar::from_ratio(-3, 2)) + &ModeElem::central();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(serde_json::from_str::<ModeElem>(&s).unwrap(), x);
    }
}
