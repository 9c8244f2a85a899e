//! Laurent polynomials in fractional powers of `t` with cyclotomic coefficients.
//!
//! A [`Laurent`] is `Σ c_k t^{k/m}` stored as numerators `k` over a shared
//! denominator `m`. The denominator is always reduced to the smallest value
//! that represents every exponent, so structural equality is ring equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::integer::Integer;
use num::rational::Ratio;
use num::{BigRational, One, Zero};

use super::cyclotomic::{binomial, falling, Scalar};

/// A rational exponent of `t`.
pub type Exponent = Ratio<i64>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent {
    denom: u32,
    terms: BTreeMap<i64, Scalar>,
}

impl Default for Laurent {
    fn default() -> Self {
        Laurent::zero()
    }
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { denom: 1, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, Exponent::zero())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::constant(Scalar::from_integer(n))
    }

    /// `t` itself.
    pub fn t() -> Self {
        Self::monomial(Scalar::one(), Exponent::one())
    }

    pub fn monomial(c: Scalar, exp: Exponent) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let denom = u32::try_from(*exp.denom()).expect("exponent denominator out of range");
        let mut terms = BTreeMap::new();
        terms.insert(*exp.numer(), c);
        Laurent { denom, terms }
    }

    /// `t^e` for an integer `e`.
    pub fn t_pow(e: i64) -> Self {
        Self::monomial(Scalar::one(), Exponent::from_integer(e))
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (Exponent, Scalar)>>(it: I) -> Self {
        it.into_iter().fold(Self::zero(), |acc, (e, c)| acc + Self::monomial(c, e))
    }

    pub fn denom(&self) -> u32 {
        self.denom
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

    /// Terms as `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &Scalar)> + '_ {
        let m = self.denom as i64;
        self.terms.iter().map(move |(k, c)| (Exponent::new(*k, m), c))
    }

    /// Raw `(numerator, coefficient)` pairs over [`Laurent::denom`].
    pub fn raw_terms(&self) -> impl Iterator<Item = (i64, &Scalar)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, exp: Exponent) -> Scalar {
        let m = self.denom as i64;
        if m % exp.denom() != 0 {
            return Scalar::zero();
        }
        let k = exp.numer() * (m / exp.denom());
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(Scalar::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|k| *k == 0)
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&0).cloned().unwrap_or_default()
    }

    /// Units of the Laurent ring are exactly the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn unit_inverse(&self) -> Option<Laurent> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = self.terms().next()?;
        Some(Self::monomial(c.inv()?, -e))
    }

    pub fn lowest_exponent(&self) -> Option<Exponent> {
        self.terms().next().map(|(e, _)| e)
    }

    pub fn highest_exponent(&self) -> Option<Exponent> {
        let m = self.denom as i64;
        self.terms.keys().next_back().map(|k| Exponent::new(*k, m))
    }

    fn normalize(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        if self.terms.is_empty() {
            self.denom = 1;
            return self;
        }
        let g = self.terms.keys().fold(self.denom as i64, |g, k| g.gcd(k));
        if g > 1 {
            self.denom /= g as u32;
            self.terms = std::mem::take(&mut self.terms).into_iter().map(|(k, c)| (k / g, c)).collect();
        }
        self
    }

    /// Re-expresses over denominator `m` (which must be a multiple of the current one).
    fn rescaled(&self, m: u32) -> BTreeMap<i64, Scalar> {
        debug_assert_eq!(m % self.denom, 0);
        let f = (m / self.denom) as i64;
        self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect()
    }

    pub fn scale(&self, c: &Scalar) -> Laurent {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(k, x)| (*k, x * c)).collect();
        Laurent { denom: self.denom, terms }.normalize()
    }

    /// Multiplication by `t^e`.
    pub fn shift(&self, e: Exponent) -> Laurent {
        self * &Self::monomial(Scalar::one(), e)
    }

    /// `δ_t`, the ordinary derivative.
    pub fn derivative(&self) -> Laurent {
        self.divided_derivative(1)
    }

    /// `δ_t^{(j)} = δ_t^j / j!`; on `t^q` this is `C(q, j) t^{q−j}`.
    pub fn divided_derivative(&self, j: u32) -> Laurent {
        self.derivative_with(j, binomial)
    }

    /// `δ_t^j`; on `t^q` this is `q(q−1)…(q−j+1) t^{q−j}`.
    pub fn nth_derivative(&self, j: u32) -> Laurent {
        self.derivative_with(j, falling)
    }

    fn derivative_with(&self, j: u32, coef: fn(&BigRational, u32) -> BigRational) -> Laurent {
        if j == 0 {
            return self.clone();
        }
        let m = self.denom as i64;
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            let q = BigRational::new((*k).into(), m.into());
            let b = coef(&q, j);
            if b.is_zero() {
                continue;
            }
            out.insert(k - j as i64 * m, c * &Scalar::from_rational(b));
        }
        Laurent { denom: self.denom, terms: out }.normalize()
    }

    pub fn pow(&self, e: u32) -> Laurent {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Laurent) -> Option<Laurent> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(inv) = divisor.unit_inverse() {
            return Some(self * &inv);
        }
        let m = self.denom.lcm(&divisor.denom);
        let (a, b) = (self.rescaled(m), divisor.rescaled(m));
        let (a0, b0) = (*a.keys().next().unwrap(), *b.keys().next().unwrap());
        // Dense polynomials in u = t^{1/m}, lowest term first.
        let dense = |p: &BTreeMap<i64, Scalar>, base: i64| {
            let top = *p.keys().next_back().unwrap() - base;
            let mut v = vec![Scalar::zero(); top as usize + 1];
            for (k, c) in p {
                v[(k - base) as usize] = c.clone();
            }
            v
        };
        let mut r = dense(&a, a0);
        let d = dense(&b, b0);
        if r.len() < d.len() {
            return None;
        }
        let lead_inv = d.last().unwrap().inv()?;
        let mut q = vec![Scalar::zero(); r.len() - d.len() + 1];
        for s in (0..q.len()).rev() {
            let c = &r[s + d.len() - 1] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, y) in d.iter().enumerate() {
                r[s + j] = &r[s + j] - &(&c * y);
            }
            q[s] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let terms = q.into_iter().enumerate().map(|(k, c)| (a0 - b0 + k as i64, c)).collect();
        Some(Laurent { denom: m, terms }.normalize())
    }

    /// Writes `self = c · s²` where `s` has leading (highest-exponent)
    /// coefficient 1. Returns `None` when no such `s` exists.
    pub fn sqrt_up_to_constant(&self) -> Option<(Scalar, Laurent)> {
        if self.is_zero() {
            return None;
        }
        let m = 2 * self.denom;
        let p = self.rescaled(m);
        let (lo, hi) = (*p.keys().next().unwrap(), *p.keys().next_back().unwrap());
        let lead = p[&hi].clone();
        let lead_inv = lead.inv()?;
        let deg = (hi - lo) / 2;
        // p/lead = (u^{lo/2} · Σ s_k u^k)^2, s_deg = 1, solved from the top down.
        let coeff = |k: i64| p.get(&(lo + k)).map(|c| c * &lead_inv).unwrap_or_default();
        let mut s = vec![Scalar::zero(); deg as usize + 1];
        s[deg as usize] = Scalar::one();
        let half = Scalar::from_ratio(1, 2);
        for k in (0..deg).rev() {
            // coefficient of u^{deg + k} in (Σ s)^2
            let target = coeff(deg + k);
            let mut acc = Scalar::zero();
            for a in (k + 1)..=deg {
                let b = deg + k - a;
                if b > k && b <= deg {
                    acc = &acc + &(&s[a as usize] * &s[b as usize]);
                }
            }
            s[k as usize] = &(&target - &acc) * &half;
        }
        let root = Laurent {
            denom: m,
            terms: s.into_iter().enumerate().map(|(k, c)| (lo / 2 + k as i64, c)).collect(),
        }
        .normalize();
        let check = &root * &root;
        if check.scale(&lead) == *self {
            Some((lead, root))
        } else {
            None
        }
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Laurent {
        let terms = self.terms.iter().map(|(k, c)| (*k, f(c))).collect();
        Laurent { denom: self.denom, terms }.normalize()
    }
}

fn combine(a: &Laurent, b: &Laurent, negate_b: bool) -> Laurent {
    let m = a.denom.lcm(&b.denom);
    let mut terms = a.rescaled(m);
    let f = (m / b.denom) as i64;
    for (k, c) in &b.terms {
        let c = if negate_b { -c } else { c.clone() };
        let e = terms.entry(k * f).or_insert_with(Scalar::zero);
        *e += &c;
    }
    Laurent { denom: m, terms }.normalize()
}

impl<'a> Add<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        combine(self, rhs, false)
    }
}

impl<'a> Sub<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        combine(self, rhs, true)
    }
}

impl<'a> Mul<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        let m = self.denom.lcm(&rhs.denom);
        let (fa, fb) = ((m / self.denom) as i64, (m / rhs.denom) as i64);
        let mut terms: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let e = terms.entry(ka * fa + kb * fb).or_insert_with(Scalar::zero);
                *e += &(ca * cb);
            }
        }
        Laurent { denom: m, terms }.normalize()
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { denom: self.denom, terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Laurent> for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: Laurent) -> Laurent { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Laurent> for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: &Laurent) -> Laurent { (&self).$m(rhs) }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl From<Scalar> for Laurent {
    fn from(c: Scalar) -> Self {
        Laurent::constant(c)
    }
}

pub fn fmt_exponent(e: Exponent) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("({}/{})", e.numer(), e.denom())
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let mono = if e.is_zero() {
                String::new()
            } else if e.is_one() {
                "t".to_string()
            } else {
                format!("t^{}", fmt_exponent(e))
            };
            let cs = c.to_string();
            let compound = cs.contains(' ');
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            if !first {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{mono}")?;
            } else if compound {
                write!(f, "({body})*{mono}")?;
            } else {
                write!(f, "{body}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: i64, d: i64) -> Exponent {
        Exponent::new(n, d)
    }

    // Independent oracle for δ^{(j)}: apply the plain derivative j times on a
    // single monomial by hand, then divide by j!.
    fn monomial_divided_derivative_oracle(q: Exponent, j: u32) -> (BigRational, Exponent) {
        let mut c = BigRational::one();
        let mut exp = q;
        for _ in 0..j {
            c *= BigRational::new((*exp.numer()).into(), (*exp.denom()).into());
            exp -= Exponent::one();
        }
        let fact: i64 = (1..=j as i64).product();
        (c / BigRational::from_integer(fact.into()), exp)
    }

    #[test]
    fn divided_derivative_examples() {
        assert_eq!(Laurent::t().divided_derivative(1), Laurent::one());
        let f = Laurent::monomial(Scalar::one(), e(5, 2));
        assert_eq!(f.divided_derivative(2), Laurent::monomial(Scalar::from_ratio(15, 8), e(1, 2)));
        assert!(Laurent::from_integer(7).divided_derivative(3).is_zero());
    }

    #[test]
    fn divided_derivative_matches_oracle() {
        for q in [e(5, 2), e(-3, 1), e(7, 3), e(2, 1), e(-1, 2)] {
            for j in 0..5 {
                let (c, exp) = monomial_divided_derivative_oracle(q, j);
                let got = Laurent::monomial(Scalar::one(), q).divided_derivative(j);
                assert_eq!(got, Laurent::monomial(Scalar::from_rational(c), exp), "q={q} j={j}");
            }
        }
    }

    #[test]
    fn divided_power_composition() {
        use super::super::cyclotomic::binomial;
        for q in [e(5, 2), e(-4, 1), e(1, 3), e(6, 1)] {
            let f = Laurent::monomial(Scalar::one(), q);
            for i in 0..=6u32 {
                for j in 0..=(6 - i) {
                    let lhs = f.divided_derivative(j).divided_derivative(i);
                    let c = binomial(&BigRational::from_integer((i + j).into()), i);
                    let rhs = f.divided_derivative(i + j).scale(&Scalar::from_rational(c));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn denominators_normalize() {
        let a = Laurent::monomial(Scalar::one(), e(2, 4));
        let b = Laurent::monomial(Scalar::one(), e(1, 2));
        assert_eq!(a, b);
        assert_eq!(a.denom(), 2);
        let s = &Laurent::monomial(Scalar::one(), e(1, 2)) * &Laurent::monomial(Scalar::one(), e(1, 2));
        assert_eq!(s, Laurent::t());
        assert_eq!(s.denom(), 1);
        let z = &b - &b;
        assert!(z.is_zero());
        assert_eq!(z.denom(), 1);
    }

    #[test]
    fn units_are_monomials() {
        assert!(Laurent::t_pow(-3).is_unit());
        assert!(!(Laurent::t() + Laurent::one()).is_unit());
        let u = Laurent::monomial(Scalar::from_integer(3), e(2, 3));
        assert_eq!(&u * &u.unit_inverse().unwrap(), Laurent::one());
    }

    #[test]
    fn exact_division() {
        let a = Laurent::t() + Laurent::one();
        let b = Laurent::t() - Laurent::t_pow(-1);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        assert_eq!(a.div_exact(&b), None);
    }

    #[test]
    fn square_root_up_to_constant() {
        let s = Laurent::t() + Laurent::from_integer(2) + Laurent::monomial(Scalar::from_integer(5), e(-1, 2));
        let p = (&s * &s).scale(&Scalar::from_integer(3));
        let (c, r) = p.sqrt_up_to_constant().unwrap();
        assert_eq!(c, Scalar::from_integer(3));
        assert_eq!(r, s);
        assert!((Laurent::t() + Laurent::one()).sqrt_up_to_constant().is_none());
        let (c, r) = Laurent::t().sqrt_up_to_constant().unwrap();
        assert!(c.is_one());
        assert_eq!(r, Laurent::monomial(Scalar::one(), e(1, 2)));
    }

    #[test]
    fn display() {
        let x = Laurent::t() - Laurent::from_integer(2) + Laurent::monomial(Scalar::from_ratio(1, 2), e(-1, 2));
        assert_eq!(x.to_string(), "1/2*t^(-1/2) - 2 + t");
    }
}
