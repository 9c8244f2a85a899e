use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gen::GenId;
use crate::error::{Error, Result};
use crate::scalars::{Laurent, Scalar};

/// An element of `𝒜(γ) ⊗ D̂`: a finite sum of `∂^d g ⊗ f`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ConfElem {
    terms: BTreeMap<(GenId, u32), Laurent>,
}

impl ConfElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn gen(g: GenId) -> Self {
        Self::term(g, 0, Laurent::one())
    }

    pub fn term(g: GenId, dpow: u32, f: Laurent) -> Self {
        let mut e = Self::zero();
        e.add_term(g, dpow, f);
        e
    }

    /// `c · g` with a scalar coefficient.
    pub fn scaled_gen(g: GenId, c: Scalar) -> Self {
        Self::term(g, 0, Laurent::constant(c))
    }

    pub fn add_term(&mut self, g: GenId, dpow: u32, f: Laurent) {
        if f.is_zero() || (g == GenId::C && dpow > 0) {
            return;
        }
        match self.terms.entry((g, dpow)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() + &f;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &ConfElem) {
        for ((g, d), f) in &other.terms {
            self.add_term(*g, *d, f.clone());
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

    pub fn terms(&self) -> impl Iterator<Item = (GenId, u32, &Laurent)> + '_ {
        self.terms.iter().map(|((g, d), f)| (*g, *d, f))
    }

    pub fn get(&self, g: GenId, dpow: u32) -> Laurent {
        self.terms.get(&(g, dpow)).cloned().unwrap_or_default()
    }

    pub fn max_dpow(&self) -> u32 {
        self.terms.keys().map(|(_, d)| *d).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> ConfElem {
        if c.is_zero() {
            return ConfElem::zero();
        }
        ConfElem { terms: self.terms.iter().map(|(k, f)| (*k, f.scale(c))).collect() }
    }

    pub fn mul_laurent(&self, h: &Laurent) -> ConfElem {
        let mut out = ConfElem::zero();
        for ((g, d), f) in &self.terms {
            out.add_term(*g, *d, f * h);
        }
        out
    }

    /// `∂ ⊗ 1`.
    pub fn partial(&self) -> ConfElem {
        let mut out = ConfElem::zero();
        for ((g, d), f) in &self.terms {
            out.add_term(*g, d + 1, f.clone());
        }
        out
    }

    pub fn partial_pow(&self, k: u32) -> ConfElem {
        if k == 0 {
            return self.clone();
        }
        let mut out = ConfElem::zero();
        for ((g, d), f) in &self.terms {
            out.add_term(*g, d + k, f.clone());
        }
        out
    }

    /// `1 ⊗ δ_t`.
    pub fn coeff_derivative(&self) -> ConfElem {
        let mut out = ConfElem::zero();
        for ((g, d), f) in &self.terms {
            out.add_term(*g, *d, f.derivative());
        }
        out
    }

    /// `∂̂ = ∂ ⊗ 1 + 1 ⊗ δ_t`.
    pub fn partial_hat(&self) -> ConfElem {
        let mut out = self.partial();
        out.add_assign_ref(&self.coeff_derivative());
        out
    }

    pub fn partial_hat_pow(&self, k: u32) -> ConfElem {
        (0..k).fold(self.clone(), |acc, _| acc.partial_hat())
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

    pub fn is_constant(&self) -> bool {
        self.terms.values().all(Laurent::is_constant)
    }

    /// Coordinates in the generator basis when the element is a constant
    /// combination of generators with no `∂`.
    pub fn coordinates(&self) -> Option<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); 17];
        for ((g, d), f) in &self.terms {
            if *d != 0 || !f.is_constant() {
                return None;
            }
            v[g.index()] = f.constant_term();
        }
        Some(v)
    }

    pub fn from_coordinates(v: &[Scalar]) -> ConfElem {
        let mut out = ConfElem::zero();
        for (i, c) in v.iter().enumerate() {
            out.add_term(GenId::ALL[i], 0, Laurent::constant(c.clone()));
        }
        out
    }

    /// The part supported on generators satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(GenId) -> bool) -> ConfElem {
        ConfElem { terms: self.terms.iter().filter(|((g, _), _)| keep(*g)).map(|(k, f)| (*k, f.clone())).collect() }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Laurent) -> Laurent) -> ConfElem {
        let mut out = ConfElem::zero();
        for ((g, d), c) in &self.terms {
            out.add_term(*g, *d, f(c));
        }
        out
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, ((g, d), f)) in self.terms.iter().enumerate() {
            let coeff = f.to_string();
            let (sign, body) = match coeff.strip_prefix('-') {
                Some(rest) if f.len() == 1 => ("-", rest.to_string()),
                _ => ("+", coeff),
            };
            if n > 0 {
                out.push_str(&format!(" {sign} "));
            } else if sign == "-" {
                out.push('-');
            }
            let body = latexify_coeff(&body);
            let body = if body == "1" {
                String::new()
            } else if f.len() > 1 {
                format!("\\left({body}\\right)")
            } else {
                body
            };
            let dp = match d {
                0 => String::new(),
                1 => "\\partial ".into(),
                k => format!("\\partial^{{{k}}}"),
            };
            out.push_str(&format!("{body}{dp}{}", g.latex()));
        }
        out
    }
}

fn latexify_coeff(s: &str) -> String {
    let mut out = String::new();
    let mut in_exp = false;
    for ch in s.replace('*', " ").chars() {
        match ch {
            '(' if out.ends_with('^') => {
                in_exp = true;
                out.push('{');
            }
            ')' if in_exp => {
                in_exp = false;
                out.push('}');
            }
            _ => out.push(ch),
        }
    }
    out
}

impl fmt::Display for ConfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, ((g, d), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let dp = match d {
                0 => String::new(),
                1 => "∂".into(),
                k => format!("∂^{k} "),
            };
            if c.is_one() {
                write!(f, "{dp}{g}")?;
            } else if c.len() == 1 {
                write!(f, "{c}*{dp}{g}")?;
            } else {
                write!(f, "({c})*{dp}{g}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ConfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConfElem({self})")
    }
}

impl<'a> Add<&'a ConfElem> for &'a ConfElem {
    type Output = ConfElem;
    fn add(self, rhs: &ConfElem) -> ConfElem {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<'a> Sub<&'a ConfElem> for &'a ConfElem {
    type Output = ConfElem;
    fn sub(self, rhs: &ConfElem) -> ConfElem {
        let mut out = self.clone();
        out.add_assign_ref(&-rhs);
        out
    }
}

impl Neg for &ConfElem {
    type Output = ConfElem;
    fn neg(self) -> ConfElem {
        ConfElem { terms: self.terms.iter().map(|(k, f)| (*k, -f)).collect() }
    }
}

impl Add for ConfElem {
    type Output = ConfElem;
    fn add(mut self, rhs: ConfElem) -> ConfElem {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for ConfElem {
    type Output = ConfElem;
    fn sub(self, rhs: ConfElem) -> ConfElem {
        &self - &rhs
    }
}

impl Neg for ConfElem {
    type Output = ConfElem;
    fn neg(self) -> ConfElem {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    gen: GenId,
    dpow: u32,
    laurent: Laurent,
}

impl Serialize for ConfElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermRepr> =
            self.terms.iter().map(|((g, d), f)| TermRepr { gen: *g, dpow: *d, laurent: f.clone() }).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConfElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<TermRepr>::deserialize(d)?;
        let mut out = ConfElem::zero();
        for t in v {
            out.add_term(t.gen, t.dpow, t.laurent);
        }
        Ok(out)
    }
}

/// A polynomial in λ with [`ConfElem`] coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LambdaPoly {
    coeffs: BTreeMap<u32, ConfElem>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(deg: u32, e: ConfElem) -> Self {
        let mut p = Self::zero();
        p.add_at(deg, &e);
        p
    }

    pub fn constant(e: ConfElem) -> Self {
        Self::monomial(0, e)
    }

    pub fn add_at(&mut self, deg: u32, e: &ConfElem) {
        if e.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(deg).or_default();
        slot.add_assign_ref(e);
        if slot.is_zero() {
            self.coeffs.remove(&deg);
        }
    }

    pub fn add_assign_ref(&mut self, other: &LambdaPoly) {
        for (d, e) in &other.coeffs {
            self.add_at(*d, e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, deg: u32) -> ConfElem {
        self.coeffs.get(&deg).cloned().unwrap_or_default()
    }

    pub fn coeff_ref(&self, deg: u32) -> Option<&ConfElem> {
        self.coeffs.get(&deg)
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &ConfElem)> + '_ {
        self.coeffs.iter().map(|(d, e)| (*d, e))
    }

    pub fn scale(&self, c: &Scalar) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (d, e) in &self.coeffs {
            out.add_at(*d, &e.scale(c));
        }
        out
    }

    pub fn map(&self, f: impl Fn(&ConfElem) -> ConfElem) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (d, e) in &self.coeffs {
            out.add_at(*d, &f(e));
        }
        out
    }

    /// Multiplies by `λ^k`.
    pub fn shift(&self, k: u32) -> LambdaPoly {
        LambdaPoly { coeffs: self.coeffs.iter().map(|(d, e)| (d + k, e.clone())).collect() }
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(d, e)| {
                let lam = match d {
                    0 => String::new(),
                    1 => "\\lambda ".into(),
                    k => format!("\\lambda^{{{k}}}"),
                };
                if *d == 0 {
                    e.to_latex()
                } else {
                    format!("{lam}\\left({}\\right)", e.to_latex())
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (d, e)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            match d {
                0 => write!(f, "[{e}]")?,
                1 => write!(f, "λ[{e}]")?,
                k => write!(f, "λ^{k}[{e}]")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LambdaPoly({self})")
    }
}

impl<'a> Add<&'a LambdaPoly> for &'a LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<'a> Sub<&'a LambdaPoly> for &'a LambdaPoly {
    type Output = LambdaPoly;
    fn sub(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        out.add_assign_ref(&-rhs);
        out
    }
}

impl Neg for &LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        self.map(|e| -e)
    }
}

#[derive(Serialize, Deserialize)]
struct LambdaTerm {
    lambda_deg: u32,
    elem: ConfElem,
}

impl Serialize for LambdaPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<LambdaTerm> =
            self.coeffs.iter().map(|(d, e)| LambdaTerm { lambda_deg: *d, elem: e.clone() }).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LambdaPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<LambdaTerm>::deserialize(d)?;
        let mut out = LambdaPoly::zero();
        for t in v {
            out.add_at(t.lambda_deg, &t.elem);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let mut e = ConfElem::gen(GenId::L);
        e.add_term(GenId::L, 0, Laurent::from_integer(-1));
        assert!(e.is_zero());
        assert!(ConfElem::term(GenId::C, 2, Laurent::one()).is_zero());
        assert!(ConfElem::gen(GenId::C).partial().is_zero());
    }

    #[test]
    fn partial_hat_on_monomial() {
        let x = ConfElem::term(GenId::U, 0, Laurent::t_pow(3));
        let y = x.partial_hat();
        let expect = &ConfElem::term(GenId::U, 1, Laurent::t_pow(3)) + &ConfElem::term(GenId::U, 0, Laurent::t_pow(2).scale(&Scalar::from_integer(3)));
        assert_eq!(y, expect);
    }

    #[test]
    fn parity_detection() {
        let even = &ConfElem::gen(GenId::L) + &ConfElem::gen(GenId::U);
        assert_eq!(even.parity().unwrap(), Some(false));
        let mixed = &ConfElem::gen(GenId::L) + &ConfElem::gen(GenId::G1);
        assert!(matches!(mixed.parity(), Err(Error::MixedParity(_))));
        assert_eq!(ConfElem::zero().parity().unwrap(), None);
    }

    #[test]
    fn json_round_trip() {
        let x = &ConfElem::term(GenId::G2, 1, Laurent::t()) + &ConfElem::scaled_gen(GenId::Q4, Scalar::i());
        let p = LambdaPoly::monomial(2, x.clone());
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"lambda_deg\":2") && s.contains("\"gen\":\"G2\""));
        assert_eq!(serde_json::from_str::<LambdaPoly>(&s).unwrap(), p);
    }
}
