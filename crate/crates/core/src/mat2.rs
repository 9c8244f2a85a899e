//! 2×2 matrices over the Laurent ring.
//!
//! Constant matrices (entries in ℚ(ζ_N)) are the special case where every
//! entry is a constant; see [`Mat2::is_constant`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalars::{parse_laurent, Laurent, Scalar};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Mat2 {
    /// Row-major: `[u11, u12, u21, u22]`.
    pub entries: [Laurent; 4],
}

impl Mat2 {
    pub fn new(u11: Laurent, u12: Laurent, u21: Laurent, u22: Laurent) -> Self {
        Mat2 { entries: [u11, u12, u21, u22] }
    }

    pub fn from_scalars(u11: Scalar, u12: Scalar, u21: Scalar, u22: Scalar) -> Self {
        Self::new(u11.into(), u12.into(), u21.into(), u22.into())
    }

    pub fn from_ints(u: [i64; 4]) -> Self {
        Self::new(
            Laurent::from_integer(u[0]),
            Laurent::from_integer(u[1]),
            Laurent::from_integer(u[2]),
            Laurent::from_integer(u[3]),
        )
    }

    pub fn identity() -> Self {
        Self::from_ints([1, 0, 0, 1])
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The matrix unit `E_{ij}` (1-based indices).
    pub fn unit(i: usize, j: usize) -> Self {
        let mut m = Self::zero();
        m.entries[2 * (i - 1) + (j - 1)] = Laurent::one();
        m
    }

    /// The sl₂ basis `e = E12`, `h = diag(1, −1)`, `f = E21`.
    pub fn sl2_basis() -> [Mat2; 3] {
        [Self::unit(1, 2), Self::from_ints([1, 0, 0, -1]), Self::unit(2, 1)]
    }

    /// `E11, E12, E21, E22`.
    pub fn matrix_units() -> [Mat2; 4] {
        [Self::unit(1, 1), Self::unit(1, 2), Self::unit(2, 1), Self::unit(2, 2)]
    }

    pub fn u11(&self) -> &Laurent {
        &self.entries[0]
    }
    pub fn u12(&self) -> &Laurent {
        &self.entries[1]
    }
    pub fn u21(&self) -> &Laurent {
        &self.entries[2]
    }
    pub fn u22(&self) -> &Laurent {
        &self.entries[3]
    }

    pub fn get(&self, i: usize, j: usize) -> &Laurent {
        &self.entries[2 * (i - 1) + (j - 1)]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Laurent::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(Laurent::is_constant)
    }

    pub fn det(&self) -> Laurent {
        self.u11() * self.u22() - self.u12() * self.u21()
    }

    pub fn trace(&self) -> Laurent {
        self.u11() + self.u22()
    }

    /// `M^† = (−u22, u12; u21, −u11)`.
    pub fn dagger(&self) -> Mat2 {
        Mat2::new(-self.u22(), self.u12().clone(), self.u21().clone(), -self.u11())
    }

    pub fn adjugate(&self) -> Mat2 {
        Mat2::new(self.u22().clone(), -self.u12(), -self.u21(), self.u11().clone())
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det();
        let inv = det.unit_inverse().ok_or_else(|| Error::NonInvertible(det.to_string()))?;
        Ok(self.adjugate().scale(&inv))
    }

    pub fn scale(&self, c: &Laurent) -> Mat2 {
        Mat2 { entries: self.entries.clone().map(|e| &e * c) }
    }

    pub fn scale_scalar(&self, c: &Scalar) -> Mat2 {
        Mat2 { entries: self.entries.clone().map(|e| e.scale(c)) }
    }

    /// Entry-wise `δ_t`.
    pub fn derivative(&self) -> Mat2 {
        Mat2 { entries: self.entries.clone().map(|e| e.derivative()) }
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.u11().clone(), self.u21().clone(), self.u12().clone(), self.u22().clone())
    }

    /// `[X, Y] = XY − YX`.
    pub fn commutator(&self, other: &Mat2) -> Mat2 {
        &(self * other) - &(other * self)
    }

    pub fn map(&self, f: impl Fn(&Laurent) -> Laurent) -> Mat2 {
        Mat2 { entries: [f(&self.entries[0]), f(&self.entries[1]), f(&self.entries[2]), f(&self.entries[3])] }
    }

    pub fn parse(src: &str) -> Result<Mat2> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = s
            .strip_prefix("[[")
            .and_then(|r| r.strip_suffix("]]"))
            .ok_or_else(|| Error::Parse(format!("matrix literal must look like [[a,b],[c,d]]: {src:?}")))?;
        let rows: Vec<&str> = inner.split("],[").collect();
        if rows.len() != 2 {
            return Err(Error::Parse(format!("expected two rows in {src:?}")));
        }
        let mut entries = Vec::with_capacity(4);
        for row in rows {
            let cells = split_top_level(row);
            if cells.len() != 2 {
                return Err(Error::Parse(format!("expected two entries per row in {src:?}")));
            }
            for c in cells {
                entries.push(parse_laurent(c)?);
            }
        }
        let [a, b, c, d]: [Laurent; 4] = entries.try_into().expect("four entries");
        Ok(Mat2::new(a, b, c, d))
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut depth = 0i32;
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl<'a> Mul<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;
    fn mul(self, r: &Mat2) -> Mat2 {
        let a = &self.entries;
        let b = &r.entries;
        Mat2::new(
            &a[0] * &b[0] + &a[1] * &b[2],
            &a[0] * &b[1] + &a[1] * &b[3],
            &a[2] * &b[0] + &a[3] * &b[2],
            &a[2] * &b[1] + &a[3] * &b[3],
        )
    }
}

impl<'a> Add<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;
    fn add(self, r: &Mat2) -> Mat2 {
        Mat2::new(
            &self.entries[0] + &r.entries[0],
            &self.entries[1] + &r.entries[1],
            &self.entries[2] + &r.entries[2],
            &self.entries[3] + &r.entries[3],
        )
    }
}

impl<'a> Sub<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;
    fn sub(self, r: &Mat2) -> Mat2 {
        Mat2::new(
            &self.entries[0] - &r.entries[0],
            &self.entries[1] - &r.entries[1],
            &self.entries[2] - &r.entries[2],
            &self.entries[3] - &r.entries[3],
        )
    }
}

impl Neg for &Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.map(|e| -e)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, r: Mat2) -> Mat2 {
        &self * &r
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.entries[0], self.entries[1], self.entries[2], self.entries[3])
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat2{self}")
    }
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Mat2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Mat2::parse(&s).map_err(serde::de::Error::custom)
    }
}
