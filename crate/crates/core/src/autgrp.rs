//! Automorphisms `θ_{A,B} ∘ τ_f ∘ ω^ε` of `𝒜 ⊗ D̂` in normal form.
//!
//! An [`AutSpec`] is kept canonical: the pair `(A, B)` is identified with
//! `(−A, −B)`, and the sign is chosen so that the lowest-exponent coefficient
//! of the first nonzero entry of `A` (scan order `u11, u12, u21, u22`) has
//! positive [`Scalar::leading_sign`]. Projective specs, where `det A = det B`
//! is a constant that is not a square in the scalar field, are normalized so
//! that the same coefficient equals 1.

use std::cmp::Ordering;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::axioms::{check_homomorphism, ImageMap};
use crate::conformal::{expand_matrix_form, generator_matrix, matrix_preimage, ConfElem, ConformalAlgebra, GenId, MatrixKind};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::mat2::Mat2;
use crate::scalars::{default_field, parse_laurent, Laurent, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AutSpec {
    pub a: Mat2,
    pub b: Mat2,
    #[serde(with = "laurent_str")]
    pub f: Laurent,
    pub eps: bool,
    /// `A`, `B` are only determined up to a common constant factor.
    #[serde(default)]
    pub projective: bool,
}

mod laurent_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::scalars::{parse_laurent, Laurent};

    pub fn serialize<S: Serializer>(f: &Laurent, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&f.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Laurent, D::Error> {
        let s = String::deserialize(d)?;
        parse_laurent(&s).map_err(serde::de::Error::custom)
    }
}

fn first_coefficient(m: &Mat2) -> Option<Scalar> {
    let e = m.entries.iter().find(|e| !e.is_zero())?;
    let lo = e.lowest_exponent()?;
    Some(e.coeff(lo))
}

impl AutSpec {
    fn canonical(mut self) -> AutSpec {
        let Some(lead) = first_coefficient(&self.a) else { return self };
        if self.projective {
            let inv = lead.inv().expect("nonzero coefficient");
            self.a = self.a.scale_scalar(&inv);
            self.b = self.b.scale_scalar(&inv);
            if self.a.det().is_one() && self.b.det().is_one() {
                self.projective = false;
            }
        } else if lead.leading_sign() == Ordering::Less {
            self.a = -&self.a;
            self.b = -&self.b;
        }
        self
    }

    /// `θ_{A,B} ∘ τ_f ∘ ω^ε`; `A` and `B` must have determinant 1.
    pub fn new(a: Mat2, b: Mat2, f: Laurent, eps: bool) -> Result<AutSpec> {
        for (name, m) in [("A", &a), ("B", &b)] {
            if !m.det().is_one() {
                return Err(Error::Invalid(format!("det {name} = {} but must be 1", m.det())));
            }
        }
        Ok(AutSpec { a, b, f, eps, projective: false }.canonical())
    }

    /// A spec whose `A`, `B` share a constant determinant `d ≠ 0`.
    pub fn new_projective(a: Mat2, b: Mat2, f: Laurent, eps: bool) -> Result<AutSpec> {
        let (da, db) = (a.det(), b.det());
        if da != db || !da.is_constant() || da.is_zero() {
            return Err(Error::Invalid(format!("projective pair needs equal constant determinants, got {da} and {db}")));
        }
        Ok(AutSpec { a, b, f, eps, projective: true }.canonical())
    }

    pub fn identity() -> AutSpec {
        AutSpec { a: Mat2::identity(), b: Mat2::identity(), f: Laurent::zero(), eps: false, projective: false }
    }

    pub fn omega() -> AutSpec {
        AutSpec { eps: true, ..Self::identity() }
    }

    pub fn tau(f: Laurent) -> AutSpec {
        AutSpec { f, ..Self::identity() }
    }

    pub fn theta(a: Mat2, b: Mat2) -> Result<AutSpec> {
        Self::new(a, b, Laurent::zero(), false)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Whether `A`, `B` and `f` are constants.
    pub fn is_constant(&self) -> bool {
        self.a.is_constant() && self.b.is_constant() && self.f.is_constant()
    }

    /// A random spec with `A, B ∈ SL₂(D̂)` of entry degree at most 2.
    pub fn random<R: Rng>(rng: &mut R) -> AutSpec {
        let a = random_sl2(rng);
        let b = random_sl2(rng);
        let f = random_laurent(rng, 2);
        AutSpec::new(a, b, f, rng.gen_bool(0.5)).expect("unimodular by construction")
    }

    /// `s^k`.
    pub fn pow(&self, k: u32) -> AutSpec {
        (0..k).fold(Self::identity(), |acc, _| compose(&acc, self))
    }
}

/// Splits at `sep` outside brackets and parentheses.
fn split_outside(s: &str, sep: char) -> Vec<&str> {
    let mut depth = 0i32;
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn call_args<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    s.strip_prefix(name)?.trim().strip_prefix('(')?.strip_suffix(')')
}

fn parse_factor(s: &str) -> Result<AutSpec> {
    let s = s.trim();
    match s {
        "id" | "identity" => return Ok(AutSpec::identity()),
        "omega" | "ω" => return Ok(AutSpec::omega()),
        _ => {}
    }
    if let Some(f) = call_args(s, "tau") {
        return Ok(AutSpec::tau(parse_laurent(f)?));
    }
    if let Some(args) = call_args(s, "theta") {
        let parts = split_outside(args, ',');
        if parts.len() != 2 {
            return Err(Error::Parse(format!("theta takes two matrices: {s:?}")));
        }
        return AutSpec::theta(Mat2::parse(parts[0])?, Mat2::parse(parts[1])?);
    }
    Err(Error::Parse(format!("unknown automorphism {s:?}; expected id, omega, tau(f), theta(A,B) or a product of these")))
}

/// Accepts a JSON object, or factors `id`, `omega`, `tau(f)`, `theta(A,B)`
/// joined by `*` (composition, rightmost applied first).
impl FromStr for AutSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<AutSpec> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()));
        }
        split_outside(s, '*').into_iter().try_fold(AutSpec::identity(), |acc, f| Ok(compose(&acc, &parse_factor(f)?)))
    }
}

fn random_scalar<R: Rng>(rng: &mut R) -> Scalar {
    let c = Scalar::from_ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2));
    if rng.gen_bool(0.25) {
        &c * &Scalar::i()
    } else {
        c
    }
}

/// A random Laurent polynomial with exponents in `[−deg, deg]`.
pub fn random_laurent<R: Rng>(rng: &mut R, deg: i64) -> Laurent {
    let mut f = Laurent::zero();
    for _ in 0..rng.gen_range(0..=2) {
        f = &f + &Laurent::t_pow(rng.gen_range(-deg..=deg)).scale(&random_scalar(rng));
    }
    f
}

/// `(1, a; 0, 1)(1, 0; b, 1)` with monomials `a`, `b` of degree at most 1,
/// optionally conjugated into lower-triangular-first order.
pub fn random_sl2<R: Rng>(rng: &mut R) -> Mat2 {
    let mono = |rng: &mut R| Laurent::t_pow(rng.gen_range(-1..=1)).scale(&random_scalar(rng));
    let (a, b) = (mono(rng), mono(rng));
    let upper = Mat2::new(Laurent::one(), a, Laurent::zero(), Laurent::one());
    let lower = Mat2::new(Laurent::one(), Laurent::zero(), b, Laurent::one());
    if rng.gen_bool(0.5) {
        &upper * &lower
    } else {
        &lower * &upper
    }
}

fn expand(kind: MatrixKind, m: &Mat2) -> ConfElem {
    expand_matrix_form(kind, m).expect("traceless by construction")
}

fn theta_images(a: &Mat2, b: &Mat2) -> ImageMap {
    let a_inv = a.inverse().expect("unit determinant");
    let b_inv = b.inverse().expect("unit determinant");
    let b_inv_d = b_inv.derivative();
    let da = a.derivative();
    ImageMap::from_fn(|g| match g {
        GenId::L => {
            let mut e = ConfElem::gen(GenId::L);
            e.add_assign_ref(&expand(MatrixKind::TPlus, &(&da * &a_inv)));
            e.add_assign_ref(&expand(MatrixKind::TMinus, &(&b.derivative() * &b_inv)));
            e
        }
        GenId::U | GenId::C => ConfElem::gen(g),
        _ => {
            let (kind, m) = generator_matrix(g).expect("matrix family");
            match kind {
                MatrixKind::TPlus => expand(kind, &(&(a * &m) * &a_inv)),
                MatrixKind::TMinus => expand(kind, &(&(b * &m) * &b_inv)),
                MatrixKind::Q => expand(kind, &(&(a * &m) * &b_inv)),
                MatrixKind::G => {
                    let main = expand(kind, &(&(a * &m) * &b_inv));
                    let corr = &(&(&da * &m) * &b_inv) - &(&(a * &m) * &b_inv_d);
                    &main - &expand(MatrixKind::Q, &corr)
                }
            }
        }
    })
}

fn tau_images(f: &Laurent) -> ImageMap {
    ImageMap::from_fn(|g| {
        let mut e = ConfElem::gen(g);
        if g == GenId::L {
            e.add_term(GenId::U, 0, f.clone());
        } else if let Some(p) = GenId::G.iter().position(|x| *x == g) {
            e.add_term(GenId::Q[p], 0, f.clone());
        }
        e
    })
}

fn omega_images() -> ImageMap {
    ImageMap::from_fn(|g| match g {
        GenId::L | GenId::C => ConfElem::gen(g),
        GenId::U => -&ConfElem::gen(g),
        _ => {
            let (kind, m) = generator_matrix(g).expect("matrix family");
            match kind {
                MatrixKind::TPlus => expand(MatrixKind::TMinus, &m),
                MatrixKind::TMinus => expand(MatrixKind::TPlus, &m),
                MatrixKind::G => expand(kind, &m.dagger()),
                MatrixKind::Q => -&expand(kind, &m.dagger()),
            }
        }
    })
}

/// `φ ∘ ψ` on generator images.
pub fn compose_maps(phi: &ImageMap, psi: &ImageMap) -> ImageMap {
    ImageMap::from_fn(|g| phi.apply(&psi.image(g)))
}

/// Generator images of `s`.
pub fn image_map(s: &AutSpec) -> ImageMap {
    let mut m = theta_images(&s.a, &s.b);
    if !s.f.is_zero() {
        m = compose_maps(&m, &tau_images(&s.f));
    }
    if s.eps {
        m = compose_maps(&m, &omega_images());
    }
    m
}

/// The image of `x` under `s`, extended `∂`- and Laurent-linearly.
pub fn apply_auto(s: &AutSpec, x: &ConfElem) -> ConfElem {
    image_map(s).apply(x)
}

/// Normal form of `s1 ∘ s2`.
pub fn compose(s1: &AutSpec, s2: &AutSpec) -> AutSpec {
    let (a, b, f) = if s1.eps {
        (&s1.a * &s2.b, &s1.b * &s2.a, &s1.f - &s2.f)
    } else {
        (&s1.a * &s2.a, &s1.b * &s2.b, &s1.f + &s2.f)
    };
    AutSpec { a, b, f, eps: s1.eps ^ s2.eps, projective: s1.projective || s2.projective }.canonical()
}

/// Least `k ≤ max` with `s^k = id`.
pub fn order_of(s: &AutSpec, max: u32) -> Option<u32> {
    let mut acc = s.clone();
    for k in 1..=max {
        if acc.is_identity() {
            return Some(k);
        }
        acc = compose(&acc, s);
    }
    None
}

fn only_on(x: &ConfElem, gens: &[GenId]) -> bool {
    !x.is_zero() && x.terms().all(|(g, d, _)| d == 0 && gens.contains(&g))
}

/// Recovers the normal form of an automorphism from its generator images.
pub fn recognize(images: &ImageMap) -> Result<AutSpec> {
    let alg = ConformalAlgebra::centreless();
    let report = check_homomorphism(&alg, images)?;
    if !report.passed {
        let w = report.first_witness().unwrap_or_default().join(", ");
        return Err(Error::NotAnAutomorphism(format!("bracket of ({w}) is not preserved")));
    }
    let t1 = images.image(GenId::Tp1);
    let eps = if only_on(&t1, &GenId::T_PLUS) {
        false
    } else if only_on(&t1, &GenId::T_MINUS) {
        true
    } else {
        return Err(Error::NotAnAutomorphism(format!("T+1 maps to {t1}, outside both sl2 spans")));
    };
    let phi = if eps { compose_maps(images, &omega_images()) } else { images.clone() };

    let t_image = |x: &Mat2| matrix_preimage(MatrixKind::TPlus, &phi.apply(&expand(MatrixKind::TPlus, x)));
    let [_, h, f] = Mat2::sl2_basis();
    let (yh, yf) = (t_image(&h), t_image(&f));
    // (I + A h A⁻¹)/2 = A E11 A⁻¹ has column space spanned by A e1.
    let p1 = (&Mat2::identity() + &yh).scale_scalar(&Scalar::from_ratio(1, 2));
    let col = if !p1.u11().is_zero() || !p1.u21().is_zero() { 1 } else { 2 };
    let v = [p1.get(1, col).clone(), p1.get(2, col).clone()];
    if v.iter().all(Laurent::is_zero) {
        return Err(Error::NotAnAutomorphism("the image of T+(h) is not a conjugate of h".into()));
    }
    // A E21 A⁻¹ sends A e1 to A e2.
    let w = [&(yf.u11() * &v[0]) + &(yf.u12() * &v[1]), &(yf.u21() * &v[0]) + &(yf.u22() * &v[1])];
    let a0 = Mat2::new(v[0].clone(), w[0].clone(), v[1].clone(), w[1].clone());
    let det = a0.det();
    let (c, s) = det
        .sqrt_up_to_constant()
        .ok_or_else(|| Error::NotAnAutomorphism(format!("det {det} is not a constant times a square")))?;
    let divide = |m: &Mat2| -> Result<Mat2> {
        let e: Option<Vec<Laurent>> = m.entries.iter().map(|x| x.div_exact(&s)).collect();
        let e = e.ok_or_else(|| Error::NotAnAutomorphism(format!("{m} is not divisible by {s}")))?;
        Ok(Mat2::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()))
    };
    let a1 = divide(&a0)?;
    let (a, projective) = match c.sqrt().and_then(|r| r.inv()) {
        Some(r) => (a1.scale_scalar(&r), false),
        None => (a1, true),
    };
    let q_i = expand(MatrixKind::Q, &Mat2::identity());
    let y = matrix_preimage(MatrixKind::Q, &phi.apply(&q_i));
    let y_inv = y.inverse().map_err(|_| Error::NotAnAutomorphism(format!("image of Q(I) gives singular {y}")))?;
    let b = &y_inv * &a;
    let fcoef = phi.image(GenId::L).get(GenId::U, 0);
    let spec = AutSpec { a, b, f: fcoef, eps, projective }.canonical();
    let rebuilt = image_map(&spec);
    for g in GenId::V {
        if rebuilt.image(g) != images.image(g) {
            return Err(Error::NotAnAutomorphism(format!(
                "reconstruction differs on {g}: expected {}, rebuilt {}",
                images.image(g),
                rebuilt.image(g)
            )));
        }
    }
    Ok(spec)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eigenspace {
    /// `i` in `ζ_m^i`.
    pub index: u32,
    pub eigenvalue: Scalar,
    pub basis: Vec<ConfElem>,
}

/// The 16×16 matrix of `s` on the generator span `V` (columns are images).
pub fn action_matrix(s: &AutSpec) -> Result<Matrix> {
    if !s.is_constant() {
        return Err(Error::Invalid("eigenspaces need constant A, B and f".into()));
    }
    let m = image_map(s);
    let mut out = vec![vec![Scalar::zero(); 16]; 16];
    for (j, g) in GenId::V.iter().enumerate() {
        let coords = m.image(*g).coordinates().expect("constant data preserves V");
        for (i, row) in out.iter_mut().enumerate() {
            row[j] = coords[i].clone();
        }
    }
    Ok(out)
}

/// Eigenspaces of `s` on `V` for the eigenvalues `ζ_m^i`, `i = 0..m−1`.
pub fn eigenspaces(s: &AutSpec, m: u32) -> Result<Vec<Eigenspace>> {
    let field = default_field();
    let zeta = field.root_of_unity(m).ok_or(Error::ScalarFieldTooSmall { m, n: field.order() })?;
    if m == 0 || !s.pow(m).is_identity() {
        return Err(Error::OrderMismatch { expected: m, detail: format!("s^{m} is not the identity") });
    }
    let mat = action_matrix(s)?;
    let mut out = Vec::new();
    let mut total = 0;
    for i in 0..m {
        let ev = zeta.pow(i);
        let mut shifted = mat.clone();
        for (k, row) in shifted.iter_mut().enumerate() {
            row[k] = &row[k] - &ev;
        }
        let basis: Vec<ConfElem> = linalg::nullspace(&shifted, 16).iter().map(|v| ConfElem::from_coordinates(v)).collect();
        total += basis.len();
        out.push(Eigenspace { index: i, eigenvalue: ev, basis });
    }
    debug_assert_eq!(total, 16);
    Ok(out)
}

/// `τ̂_f` on `𝒜(γ)`: `L ↦ L + fU − (f²/6)c`, `U ↦ U − (f/3)c`, `G(M) ↦ G(M) + Q(fM)`.
pub fn tau_hat(f: &Laurent) -> ImageMap {
    let mut m = tau_images(f);
    let mut l = m.image(GenId::L);
    l.add_term(GenId::C, 0, (f * f).scale(&Scalar::from_ratio(-1, 6)));
    m.set(GenId::L, l);
    let mut u = ConfElem::gen(GenId::U);
    u.add_term(GenId::C, 0, f.scale(&Scalar::from_ratio(-1, 3)));
    m.set(GenId::U, u);
    m
}

/// `ω̂` on `𝒜(γ)`: the formulas of `ω` with `c ↦ c`.
pub fn omega_hat() -> ImageMap {
    omega_images()
}

/// Solves for constant central corrections `x_g · c` (on even generators)
/// making `base` a homomorphism of `alg`. Requires images with constant
/// coefficients.
pub fn derive_central_lift(alg: &ConformalAlgebra, base: &ImageMap) -> Option<ImageMap> {
    const EVEN: [GenId; 8] = [GenId::L, GenId::Tp1, GenId::Tp2, GenId::Tp3, GenId::Tm1, GenId::Tm2, GenId::Tm3, GenId::U];
    let mut rows: Matrix = Vec::new();
    let mut rhs = Vec::new();
    for x in GenId::V {
        for y in GenId::V {
            let br = alg.generator_bracket(x, y);
            let mapped = base.apply_poly(br);
            let target = alg.lambda_bracket_unchecked(&base.image(x), &base.image(y));
            let top = br.degree().unwrap_or(0).max(mapped.degree().unwrap_or(0)).max(target.degree().unwrap_or(0));
            for n in 0..=top {
                let coeff = br.coeff(n);
                let row: Vec<Scalar> = EVEN
                    .iter()
                    .map(|g| {
                        let c = coeff.get(*g, 0);
                        c.is_constant().then(|| c.constant_term()).unwrap_or_default()
                    })
                    .collect();
                let diff = &target.coeff(n) - &mapped.coeff(n);
                let central = diff.get(GenId::C, 0);
                if !central.is_constant() || !diff.filter(|g| g != GenId::C).is_empty() {
                    return None;
                }
                rows.push(row);
                rhs.push(central.constant_term());
            }
        }
    }
    let sol = linalg::solve(&rows, &rhs)?;
    let mut out = ImageMap::from_fn(|g| base.image(g));
    for (g, x) in EVEN.iter().zip(sol) {
        let mut e = out.image(*g);
        e.add_term(GenId::C, 0, Laurent::constant(x));
        out.set(*g, e);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::GammaParam;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use GenId::*;

    fn m(s: &str) -> Mat2 {
        Mat2::parse(s).unwrap()
    }

    fn gen(g: GenId) -> ConfElem {
        ConfElem::gen(g)
    }

    #[test]
    fn apply_examples() {
        let x = &gen(G3) + &ConfElem::term(Tp2, 1, Laurent::t());
        assert_eq!(apply_auto(&AutSpec::identity(), &x), x);
        assert_eq!(apply_auto(&AutSpec::omega(), &gen(U)), -&gen(U));
        let s = AutSpec::theta(m("[[1,t],[0,1]]"), Mat2::identity()).unwrap();
        let mut expect = gen(L);
        expect.add_term(Tp1, 0, Laurent::constant(-Scalar::i()));
        expect.add_term(Tp2, 0, Laurent::one());
        assert_eq!(apply_auto(&s, &gen(L)), expect);
    }

    #[test]
    fn parse_specs() {
        assert_eq!("omega".parse::<AutSpec>().unwrap(), AutSpec::omega());
        assert_eq!("tau(t+t^-1)".parse::<AutSpec>().unwrap(), AutSpec::tau(parse_laurent("t+t^-1").unwrap()));
        let th = "theta([[1,t],[0,1]], [[1,0],[0,1]])".parse::<AutSpec>().unwrap();
        assert_eq!(th, AutSpec::theta(m("[[1,t],[0,1]]"), Mat2::identity()).unwrap());
        let prod = "omega * tau(1)".parse::<AutSpec>().unwrap();
        assert_eq!(prod, compose(&AutSpec::omega(), &AutSpec::tau(Laurent::one())));
        let json = serde_json::to_string(&prod).unwrap();
        assert_eq!(json.parse::<AutSpec>().unwrap(), prod);
        assert!("sigma".parse::<AutSpec>().is_err());
        assert!("theta([[2,0],[0,1]], [[1,0],[0,1]])".parse::<AutSpec>().is_err());
    }

    #[test]
    fn omega_on_generators() {
        let w = AutSpec::omega();
        assert_eq!(apply_auto(&w, &gen(Tp2)), gen(Tm2));
        for (p, sign) in [(G1, 1), (G2, 1), (G3, 1), (G4, -1)] {
            assert_eq!(apply_auto(&w, &gen(p)), gen(p).scale(&Scalar::from_integer(sign)));
        }
        for (p, sign) in [(Q1, -1), (Q2, -1), (Q3, -1), (Q4, 1)] {
            assert_eq!(apply_auto(&w, &gen(p)), gen(p).scale(&Scalar::from_integer(sign)));
        }
    }

    #[test]
    fn compose_examples() {
        let w = AutSpec::omega();
        assert!(compose(&w, &w).is_identity());
        let a = m("[[1,t],[0,1]]");
        let b = m("[[1,0],[t^-1,1]]");
        let th = AutSpec::theta(a.clone(), b.clone()).unwrap();
        assert_eq!(compose(&compose(&w, &th), &w), AutSpec::theta(b, a).unwrap());
        let f = Laurent::t();
        assert_eq!(compose(&compose(&w, &AutSpec::tau(f.clone())), &w), AutSpec::tau(-f));
    }

    #[test]
    fn sign_identification() {
        let minus = Mat2::from_ints([-1, 0, 0, -1]);
        assert!(AutSpec::theta(minus.clone(), minus.clone()).unwrap().is_identity());
        let s = AutSpec::theta(Mat2::identity(), minus).unwrap();
        assert!(!s.is_identity());
        assert_eq!(apply_auto(&s, &gen(Q1)), -&gen(Q1));
    }

    #[test]
    fn orders() {
        assert_eq!(order_of(&AutSpec::identity(), 10), Some(1));
        assert_eq!(order_of(&AutSpec::omega(), 10), Some(2));
        let i = Scalar::i();
        let d = Mat2::from_scalars(i.clone(), Scalar::zero(), Scalar::zero(), -i);
        let s = AutSpec::theta(d, Mat2::identity()).unwrap();
        assert_eq!(order_of(&s, 10), Some(4));
        assert_eq!(order_of(&AutSpec::tau(Laurent::one()), 20), None);
    }

    #[test]
    fn functoriality_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let (s1, s2) = (AutSpec::random(&mut rng), AutSpec::random(&mut rng));
            let s12 = compose(&s1, &s2);
            for g in GenId::V {
                assert_eq!(apply_auto(&s12, &gen(g)), apply_auto(&s1, &apply_auto(&s2, &gen(g))), "{s1:?} {s2:?} {g}");
            }
        }
    }

    #[test]
    fn random_specs_are_homomorphisms() {
        let alg = ConformalAlgebra::centreless();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..4 {
            let s = AutSpec::random(&mut rng);
            let r = check_homomorphism(&alg, &image_map(&s)).unwrap();
            assert!(r.passed, "{s:?}: {:?}", r.failures.first());
        }
    }

    #[test]
    fn recognize_examples() {
        assert!(recognize(&image_map(&AutSpec::identity())).unwrap().is_identity());
        assert_eq!(recognize(&image_map(&AutSpec::tau(Laurent::t()))).unwrap(), AutSpec::tau(Laurent::t()));
        assert_eq!(recognize(&image_map(&AutSpec::omega())).unwrap(), AutSpec::omega());
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..5 {
            let s = AutSpec::random(&mut rng);
            assert_eq!(recognize(&image_map(&s)).unwrap(), s);
        }
    }

    #[test]
    fn recognize_projective() {
        // diag(2, 1) and diag(1, 1/2) conjugate like diag(√2, 1/√2).
        let a = m("[[2,0],[0,1]]");
        let s = AutSpec::new_projective(a.clone(), a.clone(), Laurent::zero(), false).unwrap();
        assert!(s.projective);
        let r = recognize(&image_map(&s)).unwrap();
        assert!(r.projective);
        assert_eq!(r, s);
    }

    #[test]
    fn recognize_rejects_non_automorphism() {
        let mut phi = ImageMap::identity();
        phi.set(U, gen(U).scale(&Scalar::from_integer(2)));
        assert!(matches!(recognize(&phi), Err(Error::NotAnAutomorphism(_))));
    }

    #[test]
    fn eigenspace_examples() {
        let id = eigenspaces(&AutSpec::identity(), 1).unwrap();
        assert_eq!(id.len(), 1);
        assert_eq!(id[0].basis.len(), 16);
        let w = eigenspaces(&AutSpec::omega(), 2).unwrap();
        assert_eq!((w[0].basis.len(), w[1].basis.len()), (8, 8));
        assert!(matches!(eigenspaces(&AutSpec::omega(), 3), Err(Error::ScalarFieldTooSmall { .. })));
        assert!(matches!(eigenspaces(&AutSpec::omega(), 1), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn central_lifts() {
        let half = ConformalAlgebra::new(GammaParam::ratio(1, 2));
        for f in [Laurent::one(), Laurent::t(), &Laurent::t() + &Laurent::t_pow(-1)] {
            assert!(check_homomorphism(&half, &tau_hat(&f)).unwrap().passed, "{f}");
        }
        assert!(check_homomorphism(&half, &omega_hat()).unwrap().passed);
        let third = ConformalAlgebra::new(GammaParam::ratio(1, 3));
        let r = check_homomorphism(&third, &omega_hat()).unwrap();
        assert_eq!(r.first_witness().unwrap(), ["L".to_string(), "U".to_string()]);
    }

    #[test]
    fn derived_lift_matches() {
        let half = ConformalAlgebra::new(GammaParam::ratio(1, 2));
        for k in [1, 2, -3] {
            let f = Laurent::from_integer(k);
            let lift = derive_central_lift(&half, &tau_images(&f)).unwrap();
            assert_eq!(lift.image(L), tau_hat(&f).image(L));
            assert_eq!(lift.image(U), tau_hat(&f).image(U));
        }
    }
}
