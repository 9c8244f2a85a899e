//! The cyclotomic field ℚ(ζ_N) and its elements.
//!
//! Fields are interned: [`field`] hands out a `&'static CyclotomicField`, so a
//! [`Scalar`] carries a pointer to its field and arithmetic never locks.
//! Rational scalars (no ζ-part) are compatible with every field.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};
use std::sync::{Mutex, OnceLock};

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use super::poly::{self, QPoly};

pub struct CyclotomicField {
    order: u32,
    modulus: QPoly,
    degree: usize,
    /// `x^(degree + k) mod Φ_N` for `k < degree - 1`.
    overflow: Vec<QPoly>,
}

impl CyclotomicField {
    fn new(order: u32) -> Self {
        let modulus = poly::cyclotomic_polynomial(order);
        let degree = modulus.len() - 1;
        let mut overflow = Vec::new();
        for k in 0..degree.saturating_sub(1) {
            let mut mono = vec![BigRational::zero(); degree + k + 1];
            mono[degree + k] = BigRational::one();
            overflow.push(poly::div_rem(&mono, &modulus).1);
        }
        CyclotomicField { order, modulus, degree, overflow }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// φ(N), the dimension over ℚ.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &QPoly {
        &self.modulus
    }

    fn reduce(&self, mut p: QPoly) -> Vec<BigRational> {
        if p.len() > self.degree {
            let high = p.split_off(self.degree);
            for (k, c) in high.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (j, r) in self.overflow[k].iter().enumerate() {
                    p[j] += &c * r;
                }
            }
        }
        poly::trim(&mut p);
        p
    }

    /// Whether a primitive `m`-th root of unity lies in this field.
    pub fn contains_root_of_unity(&self, m: u32) -> bool {
        m >= 1 && (self.order % m == 0 || (self.order % 2 == 1 && (2 * self.order) % m == 0))
    }

    /// `e^{2πi/m}` under the embedding ζ_N ↦ e^{2πi/N}, if present.
    pub fn root_of_unity(&'static self, m: u32) -> Option<Scalar> {
        if !self.contains_root_of_unity(m) {
            return None;
        }
        let zeta = Scalar::zeta(self);
        if self.order % m == 0 {
            Some(zeta.pow(self.order / m))
        } else {
            // N odd: −ζ_N^{(N+1)/2} is e^{2πi/(2N)}.
            let zeta2n = -zeta.pow(self.order.div_ceil(2));
            Some(zeta2n.pow(2 * self.order / m))
        }
    }
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order)
    }
}

static DEFAULT_ORDER: AtomicU32 = AtomicU32::new(4);

fn registry() -> &'static Mutex<HashMap<u32, &'static CyclotomicField>> {
    static REG: OnceLock<Mutex<HashMap<u32, &'static CyclotomicField>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The interned field ℚ(ζ_n).
pub fn field(n: u32) -> &'static CyclotomicField {
    assert!(n >= 1, "cyclotomic order must be positive");
    let mut reg = registry().lock().expect("field registry poisoned");
    reg.entry(n).or_insert_with(|| Box::leak(Box::new(CyclotomicField::new(n))))
}

/// The process-wide field used by `Scalar::from_*` constructors.
pub fn default_field() -> &'static CyclotomicField {
    field(DEFAULT_ORDER.load(AtomicOrdering::Relaxed))
}

/// Changes the default cyclotomic order. Intended for program start-up only.
pub fn set_default_order(n: u32) {
    assert!(n >= 1, "cyclotomic order must be positive");
    DEFAULT_ORDER.store(n, AtomicOrdering::Relaxed);
}

/// An element of ℚ(ζ_N), stored as a polynomial in ζ_N of degree < φ(N).
#[derive(Clone)]
pub struct Scalar {
    field: &'static CyclotomicField,
    coeffs: Vec<BigRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { field: default_field(), coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let coeffs = if q.is_zero() { Vec::new() } else { vec![q] };
        Scalar { field: default_field(), coeffs }
    }

    /// Builds an element of `field` from power-basis coordinates.
    pub fn from_coeffs(field: &'static CyclotomicField, coeffs: Vec<BigRational>) -> Self {
        Scalar { field, coeffs: field.reduce(coeffs) }
    }

    /// ζ_N of the given field.
    pub fn zeta(field: &'static CyclotomicField) -> Self {
        Self::from_coeffs(field, vec![BigRational::zero(), BigRational::one()])
    }

    /// √−1 in the default field; requires 4 | N.
    pub fn i() -> Self {
        Self::imaginary_unit(default_field()).expect("the default cyclotomic field must contain i (4 | N)")
    }

    pub fn imaginary_unit(field: &'static CyclotomicField) -> Option<Self> {
        if field.order % 4 == 0 {
            Some(Self::zeta(field).pow(field.order / 4))
        } else {
            None
        }
    }

    pub fn field(&self) -> &'static CyclotomicField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Power-basis coordinates padded to length φ(N).
    pub fn coefficients(&self) -> Vec<BigRational> {
        let mut c = self.coeffs.clone();
        c.resize(self.field.degree, BigRational::zero());
        c
    }

    /// Sparse view: the trimmed coordinate vector.
    pub fn raw_coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn join_field(&self, other: &Scalar) -> &'static CyclotomicField {
        if std::ptr::eq(self.field, other.field) || other.is_rational() {
            self.field
        } else if self.is_rational() {
            other.field
        } else {
            panic!("mixing elements of {:?} and {:?}", self.field, other.field)
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar { field: self.field, coeffs: vec![BigRational::one()] };
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents allowed for nonzero elements.
    pub fn powi(&self, e: i64) -> Scalar {
        if e >= 0 {
            self.pow(e as u32)
        } else {
            self.inv().expect("negative power of zero").pow((-e) as u32)
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            return Some(Scalar { field: self.field, coeffs: vec![self.coeffs[0].recip()] });
        }
        let (g, s) = poly::ext_gcd_left(&self.coeffs, &self.field.modulus);
        debug_assert_eq!(g.len(), 1);
        Some(Scalar { field: self.field, coeffs: self.field.reduce(s) })
    }

    /// A square root inside the field when one exists and the search is
    /// supported: rationals anywhere (using i when 4 | N) and all of ℚ(i).
    pub fn sqrt(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if let Some(q) = self.as_rational() {
            if let Some(r) = rational_sqrt(&q) {
                return Some(Scalar { field: self.field, coeffs: vec![r] });
            }
            if let (Some(r), Some(i)) = (rational_sqrt(&-q), Scalar::imaginary_unit(self.field)) {
                return Some(i * Scalar::from_rational(r));
            }
            return None;
        }
        if self.field.order == 4 {
            // (a + b i)^2 = c0 + c1 i  ⇒  a^2 = (c0 + |c|)/2, b = c1 / 2a.
            let c = self.coefficients();
            let norm = rational_sqrt(&(&c[0] * &c[0] + &c[1] * &c[1]))?;
            let two = BigRational::from_integer(2.into());
            for cand in [(&c[0] + &norm) / &two, (&c[0] - &norm) / &two] {
                if let Some(a) = rational_sqrt(&cand) {
                    if a.is_zero() {
                        continue;
                    }
                    let b = &c[1] / (&two * &a);
                    let s = Scalar::from_coeffs(self.field, vec![a, b]);
                    if &(&s * &s) == self {
                        return Some(s);
                    }
                }
            }
        }
        None
    }

    /// Sign used by the canonical-form rule: the sign of the first nonzero
    /// power-basis coordinate (rational part first, then the ζ-parts).
    pub fn leading_sign(&self) -> Ordering {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            None => Ordering::Equal,
            Some(c) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    pub fn to_f64_parts(&self) -> Vec<f64> {
        self.coefficients().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

fn bigint_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    let n = bigint_sqrt(q.numer())?;
    let d = bigint_sqrt(q.denom())?;
    Some(BigRational::new(n, d))
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && (self.is_rational() || std::ptr::eq(self.field, other.field))
    }
}

impl Eq for Scalar {}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

fn add_coeffs(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (x, y) in out.iter_mut().zip(b) {
        *x += y;
    }
    poly::trim(&mut out);
    out
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { field: self.join_field(rhs), coeffs: add_coeffs(&self.coeffs, &rhs.coeffs) }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let neg: Vec<BigRational> = rhs.coeffs.iter().map(|c| -c).collect();
        Scalar { field: self.join_field(rhs), coeffs: add_coeffs(&self.coeffs, &neg) }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let field = self.join_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Scalar { field, coeffs: Vec::new() };
        }
        if rhs.coeffs.len() == 1 {
            let c = &rhs.coeffs[0];
            return Scalar { field, coeffs: self.coeffs.iter().map(|x| x * c).collect() };
        }
        if self.coeffs.len() == 1 {
            let c = &self.coeffs[0];
            return Scalar { field, coeffs: rhs.coeffs.iter().map(|x| c * x).collect() };
        }
        Scalar { field, coeffs: field.reduce(poly::mul(&self.coeffs, &rhs.coeffs)) }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(mut self) -> Scalar {
        for c in self.coeffs.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.field = self.join_field(rhs);
        self.coeffs = add_coeffs(&self.coeffs, &rhs.coeffs);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let unit = if self.field.order == 4 { "i" } else { "z" };
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => unit.to_string(),
                _ => format!("{unit}^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}{}{}", fmt_rational(&a), if self.field.order == 4 { "" } else { "*" }, mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

/// Parses `"p/q"` or `"p"` into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn rational_to_string(q: &BigRational) -> String {
    fmt_rational(q)
}

/// Generalized binomial coefficient `C(q, j) = q(q−1)…(q−j+1)/j!`.
pub fn binomial(q: &BigRational, j: u32) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..j {
        acc *= q - BigRational::from_integer(i.into());
        acc /= BigRational::from_integer((i + 1).into());
    }
    acc
}

/// Falling factorial `q(q−1)…(q−j+1)`.
pub fn falling(q: &BigRational, j: u32) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..j {
        acc *= q - BigRational::from_integer(i.into());
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_scalar(rng: &mut ChaCha8Rng, f: &'static CyclotomicField) -> Scalar {
        let coeffs = (0..f.degree())
            .map(|_| BigRational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=7).into()))
            .collect();
        Scalar::from_coeffs(f, coeffs)
    }

    #[test]
    fn i_squares_to_minus_one() {
        let i = Scalar::imaginary_unit(field(4)).unwrap();
        assert_eq!(&i * &i, Scalar::from_integer(-1));
        let i12 = Scalar::imaginary_unit(field(12)).unwrap();
        assert_eq!(&i12 * &i12, Scalar::from_integer(-1));
        assert!(Scalar::imaginary_unit(field(6)).is_none());
    }

    #[test]
    fn multiplicative_inverses() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [4u32, 3, 12, 8] {
            let f = field(n);
            for _ in 0..250 {
                let a = random_scalar(&mut rng, f);
                if a.is_zero() {
                    continue;
                }
                let inv = a.inv().unwrap();
                assert!((&a * &inv).is_one(), "n={n} a={a}");
            }
        }
    }

    #[test]
    fn field_laws_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = field(12);
        for _ in 0..200 {
            let (a, b, c) = (random_scalar(&mut rng, f), random_scalar(&mut rng, f), random_scalar(&mut rng, f));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&a * &b, &b * &a);
            assert!((&a - &a).is_zero());
        }
    }

    #[test]
    fn zeta_has_exact_order() {
        for n in [3u32, 4, 5, 12] {
            let z = Scalar::zeta(field(n));
            assert!(z.pow(n).is_one());
            for k in 1..n {
                assert!(!z.pow(k).is_one());
            }
        }
    }

    #[test]
    fn roots_of_unity_available() {
        let f4 = field(4);
        assert_eq!(f4.root_of_unity(2).unwrap(), Scalar::from_integer(-1));
        assert_eq!(f4.root_of_unity(4).unwrap(), Scalar::imaginary_unit(f4).unwrap());
        assert!(f4.root_of_unity(3).is_none());
        let f3 = field(3);
        let z6 = f3.root_of_unity(6).unwrap();
        assert!(z6.pow(6).is_one() && !z6.pow(3).is_one() && !z6.pow(2).is_one());
    }

    #[test]
    fn square_roots_in_gaussian_rationals() {
        let f = field(4);
        let i = Scalar::imaginary_unit(f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a = random_scalar(&mut rng, f);
            let s = (&a * &a).sqrt().expect("perfect square");
            assert_eq!(&s * &s, &a * &a);
        }
        assert!(Scalar::from_integer(2).sqrt().is_none());
        assert_eq!(Scalar::from_integer(-4).sqrt().unwrap(), &i * &Scalar::from_integer(2));
        assert!((&i + &Scalar::one()).sqrt().is_none());
    }

    #[test]
    fn binomials() {
        let q = BigRational::new(5.into(), 2.into());
        assert_eq!(binomial(&q, 2), BigRational::new(15.into(), 8.into()));
        assert_eq!(binomial(&BigRational::from_integer(6.into()), 3), BigRational::from_integer(20.into()));
        assert_eq!(binomial(&q, 0), BigRational::one());
    }

    #[test]
    fn display_gaussian() {
        let i = Scalar::imaginary_unit(field(4)).unwrap();
        let x = &Scalar::from_ratio(3, 2) - &(&i * &Scalar::from_integer(2));
        assert_eq!(x.to_string(), "3/2 - 2i");
        assert_eq!((-&i).to_string(), "-i");
    }
}
