//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored lowest degree first and kept trimmed (no trailing
//! zeros), so the zero polynomial is the empty vector.

use num::{BigRational, One, Zero};

pub type QPoly = Vec<BigRational>;

pub fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn from_i64(coeffs: &[i64]) -> QPoly {
    let mut p: QPoly = coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect();
    trim(&mut p);
    p
}

pub fn degree(p: &QPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn add(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        };
        out.push(x);
    }
    trim(&mut out);
    out
}

pub fn sub(a: &QPoly, b: &QPoly) -> QPoly {
    let neg: QPoly = b.iter().map(|c| -c).collect();
    add(a, &neg)
}

pub fn mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Euclidean division `a = q·b + r` with `deg r < deg b`. Panics on `b = 0`.
pub fn div_rem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut r = a.clone();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lead;
        let shift = dr - db;
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Returns `(g, s)` with `g = gcd(a, b)` monic and `s·a ≡ g (mod b)`.
pub fn ext_gcd_left(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (QPoly, QPoly) = (vec![BigRational::one()], Vec::new());
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if let Some(d) = degree(&r0) {
        let inv = r0[d].recip();
        for c in r0.iter_mut() {
            *c *= &inv;
        }
        for c in s0.iter_mut() {
            *c *= &inv;
        }
    }
    (r0, s0)
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// The `n`-th cyclotomic polynomial, obtained by dividing `x^n - 1` by every
/// `Φ_d` with `d` a proper divisor of `n`.
pub fn cyclotomic_polynomial(n: u32) -> QPoly {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    let mut p = vec![BigRational::zero(); n as usize + 1];
    p[0] = -BigRational::one();
    p[n as usize] = BigRational::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let (q, r) = div_rem(&p, &cyclotomic_polynomial(d));
        debug_assert!(r.is_empty());
        p = q;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: multiply the claimed factors back together.
    fn product(polys: &[QPoly]) -> QPoly {
        polys.iter().fold(from_i64(&[1]), |acc, p| mul(&acc, p))
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), from_i64(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi12_times_proper_divisor_factors_is_x12_minus_1() {
        let phi12 = from_i64(&[1, 0, -1, 0, 1]);
        let factors = [
            from_i64(&[-1, 1]),
            from_i64(&[1, 1]),
            from_i64(&[1, 1, 1]),
            from_i64(&[1, 0, 1]),
            from_i64(&[1, -1, 1]),
            phi12,
        ];
        let mut expected = vec![0i64; 13];
        expected[0] = -1;
        expected[12] = 1;
        assert_eq!(product(&factors), from_i64(&expected));
    }

    #[test]
    fn degree_is_euler_phi() {
        for (n, phi) in [(1, 1), (3, 2), (5, 4), (8, 4), (9, 6), (10, 4), (15, 8), (16, 8)] {
            assert_eq!(degree(&cyclotomic_polynomial(n)), Some(phi), "n = {n}");
        }
    }

    #[test]
    fn ext_gcd_inverts_modulo() {
        let m = cyclotomic_polynomial(5);
        let a = from_i64(&[2, -1, 0, 3]);
        let (g, s) = ext_gcd_left(&a, &m);
        assert_eq!(g, from_i64(&[1]));
        let (_, r) = div_rem(&mul(&a, &s), &m);
        assert_eq!(r, from_i64(&[1]));
    }
}
