//! The 17×17 generator λ-bracket table of `𝒜` and `𝒜(γ)`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num::{BigRational, One, Zero};
use serde::{Deserialize, Serialize};

use super::bracket::substitute_neg_lambda_minus_partial;
use super::elem::{ConfElem, LambdaPoly};
use super::gen::GenId;
use super::matrix_form::{expand_matrix_form, generator_matrix, MatrixKind};
use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::scalars::cyclotomic::{parse_rational, rational_to_string};
use crate::scalars::Scalar;

/// The central-extension parameter; `Centreless` drops every `c` term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GammaParam {
    Centreless,
    Value(BigRational),
}

impl GammaParam {
    pub fn value(gamma: BigRational) -> Result<Self> {
        if gamma.is_zero() || gamma.is_one() {
            return Err(Error::InvalidGamma(rational_to_string(&gamma)));
        }
        Ok(GammaParam::Value(gamma))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::value(BigRational::new(num.into(), den.into())).expect("γ ∉ {0, 1}")
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            GammaParam::Centreless => None,
            GammaParam::Value(g) => Some(g),
        }
    }
}

impl FromStr for GammaParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("centreless") || s.eq_ignore_ascii_case("centerless") || s == "none" {
            return Ok(GammaParam::Centreless);
        }
        let q = parse_rational(s).ok_or_else(|| Error::InvalidGamma(s.to_string()))?;
        GammaParam::value(q)
    }
}

impl fmt::Display for GammaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaParam::Centreless => f.write_str("centreless"),
            GammaParam::Value(g) => f.write_str(&rational_to_string(g)),
        }
    }
}

/// One central λ-term `(const + gamma_coeff·γ) λ^lambda_deg c` of `[a_λ b]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralTerm {
    pub a: GenId,
    pub b: GenId,
    pub lambda_deg: u32,
    #[serde(rename = "const")]
    pub constant: String,
    pub gamma_coeff: String,
}

impl CentralTerm {
    pub fn at(&self, gamma: &BigRational) -> BigRational {
        let c = parse_rational(&self.constant).expect("central constant");
        let g = parse_rational(&self.gamma_coeff).expect("central γ-coefficient");
        c + g * gamma
    }

    /// The same term written with `a ≤ b`, using `[b_λ a] = −(−1)^{p(a)p(b)} [a_{−λ−∂} b]`.
    pub fn canonical(&self) -> CentralTerm {
        if self.a.index() <= self.b.index() {
            return self.clone();
        }
        let flip = ((self.a.is_odd() && self.b.is_odd()) as u32 + self.lambda_deg) % 2 == 0;
        let adjust = |s: &str| {
            let q = parse_rational(s).expect("central term");
            rational_to_string(&if flip { -q } else { q })
        };
        CentralTerm {
            a: self.b,
            b: self.a,
            lambda_deg: self.lambda_deg,
            constant: adjust(&self.constant),
            gamma_coeff: adjust(&self.gamma_coeff),
        }
    }
}

const CENTRAL_TERMS_JSON: &str = include_str!("../../data/central_terms.json");

/// The central terms shipped with the crate.
pub fn central_terms() -> &'static [CentralTerm] {
    static TERMS: OnceLock<Vec<CentralTerm>> = OnceLock::new();
    TERMS.get_or_init(|| serde_json::from_str(CENTRAL_TERMS_JSON).expect("central_terms.json is well formed"))
}

#[derive(Clone)]
enum Kind {
    L,
    U,
    C,
    Tp(Mat2),
    Tm(Mat2),
    G(Mat2),
    Q(Mat2),
}

fn kind_of(g: GenId) -> Kind {
    match g {
        GenId::L => Kind::L,
        GenId::U => Kind::U,
        GenId::C => Kind::C,
        _ => match generator_matrix(g).expect("matrix family") {
            (MatrixKind::TPlus, m) => Kind::Tp(m),
            (MatrixKind::TMinus, m) => Kind::Tm(m),
            (MatrixKind::G, m) => Kind::G(m),
            (MatrixKind::Q, m) => Kind::Q(m),
        },
    }
}

fn form(kind: MatrixKind, m: &Mat2) -> ConfElem {
    expand_matrix_form(kind, m).expect("traceless by construction")
}

/// `(∂ + cλ) x`.
fn d_plus(c: Scalar, x: ConfElem) -> LambdaPoly {
    let mut p = LambdaPoly::constant(x.partial());
    p.add_at(1, &x.scale(&c));
    p
}

fn r(n: i64, d: i64) -> Scalar {
    Scalar::from_ratio(n, d)
}

/// The printed matrix-form table, in the orientation it is printed; `None`
/// for orientations obtained by skew-symmetry.
fn printed_bracket(a: &Kind, b: &Kind) -> Option<LambdaPoly> {
    use Kind::*;
    let tr = |m: &Mat2| m.trace().constant_term();
    Some(match (a, b) {
        (C, _) | (_, C) => LambdaPoly::zero(),
        (L, L) => d_plus(r(2, 1), ConfElem::gen(GenId::L)),
        (L, U) => d_plus(r(1, 1), ConfElem::gen(GenId::U)),
        (L, Tp(x)) => d_plus(r(1, 1), form(MatrixKind::TPlus, x)),
        (L, Tm(x)) => d_plus(r(1, 1), form(MatrixKind::TMinus, x)),
        (L, G(m)) => d_plus(r(3, 2), form(MatrixKind::G, m)),
        (L, Q(m)) => d_plus(r(1, 2), form(MatrixKind::Q, m)),
        (Tp(x), Tp(y)) => LambdaPoly::constant(form(MatrixKind::TPlus, &x.commutator(y))),
        (Tm(x), Tm(y)) => LambdaPoly::constant(form(MatrixKind::TMinus, &x.commutator(y))),
        (Tp(_), Tm(_)) | (Tm(_), Tp(_)) => LambdaPoly::zero(),
        (Tp(_), U) | (Tm(_), U) | (U, U) => LambdaPoly::zero(),
        (U, G(m)) => LambdaPoly::monomial(1, form(MatrixKind::Q, m)),
        (U, Q(_)) | (Q(_), Q(_)) => LambdaPoly::zero(),
        (Tp(x), G(m)) => {
            let xm = x * m;
            let mut p = LambdaPoly::constant(form(MatrixKind::G, &xm));
            p.add_at(1, &-form(MatrixKind::Q, &xm));
            p
        }
        (Tp(x), Q(m)) => LambdaPoly::constant(form(MatrixKind::Q, &(x * m))),
        (Tm(x), G(m)) => {
            let mx = m * x;
            let mut p = LambdaPoly::constant(-form(MatrixKind::G, &mx));
            p.add_at(1, &-form(MatrixKind::Q, &mx));
            p
        }
        (Tm(x), Q(m)) => LambdaPoly::constant(-form(MatrixKind::Q, &(m * x))),
        (G(m), G(n)) => {
            let (md, nd) = (m.dagger(), n.dagger());
            let tp = form(MatrixKind::TPlus, &(&(m * &nd) - &(n * &md)));
            let tm = form(MatrixKind::TMinus, &(&(&md * n) - &(&nd * m)));
            let mut p = d_plus(r(2, 1), &tp + &tm);
            p.add_at(0, &ConfElem::gen(GenId::L).scale(&(Scalar::from_integer(4) * tr(&(m * &nd)))));
            p
        }
        (Q(m), G(n)) => {
            let (md, nd) = (m.dagger(), n.dagger());
            let tp = form(MatrixKind::TPlus, &(&(m * &nd) - &(n * &md)));
            let tm = form(MatrixKind::TMinus, &(&(&md * n) - &(&nd * m)));
            let mut e = ConfElem::gen(GenId::U).scale(&(Scalar::from_integer(2) * tr(&(m * &nd))));
            e = &(&e - &tp) + &tm;
            LambdaPoly::constant(e)
        }
        _ => return None,
    })
}

/// The conformal superalgebra `𝒜` (centreless) or `𝒜(γ)` with its
/// precomputed generator table.
#[derive(Clone)]
pub struct ConformalAlgebra {
    gamma: GammaParam,
    table: Vec<LambdaPoly>,
}

impl ConformalAlgebra {
    pub fn new(gamma: GammaParam) -> Self {
        let kinds: Vec<Kind> = GenId::ALL.iter().map(|g| kind_of(*g)).collect();
        let mut table = vec![None; 17 * 17];
        for a in GenId::ALL {
            for b in GenId::ALL {
                table[a.index() * 17 + b.index()] = printed_bracket(&kinds[a.index()], &kinds[b.index()]);
            }
        }
        if let GammaParam::Value(g) = &gamma {
            for t in central_terms() {
                let slot = table[t.a.index() * 17 + t.b.index()].as_mut().expect("central term on a printed pair");
                let c = Scalar::from_rational(t.at(g));
                slot.add_at(t.lambda_deg, &ConfElem::scaled_gen(GenId::C, c));
            }
        }
        let mut filled = vec![LambdaPoly::zero(); 17 * 17];
        for a in GenId::ALL {
            for b in GenId::ALL {
                let idx = a.index() * 17 + b.index();
                filled[idx] = match &table[idx] {
                    Some(p) => p.clone(),
                    None => {
                        let flipped = table[b.index() * 17 + a.index()]
                            .as_ref()
                            .unwrap_or_else(|| panic!("neither [{a}λ{b}] nor [{b}λ{a}] is printed"));
                        let sign = if a.is_odd() && b.is_odd() { Scalar::one() } else { -Scalar::one() };
                        substitute_neg_lambda_minus_partial(flipped, false).scale(&sign)
                    }
                };
            }
        }
        ConformalAlgebra { gamma, table: filled }
    }

    pub fn centreless() -> Self {
        Self::new(GammaParam::Centreless)
    }

    pub fn gamma(&self) -> &GammaParam {
        &self.gamma
    }

    /// `[a_λ b]` for two basis generators.
    pub fn generator_bracket(&self, a: GenId, b: GenId) -> &LambdaPoly {
        &self.table[a.index() * 17 + b.index()]
    }

    /// A copy with one table entry replaced (used for mutation testing).
    pub fn with_entry(&self, a: GenId, b: GenId, p: LambdaPoly) -> ConformalAlgebra {
        let mut out = self.clone();
        out.table[a.index() * 17 + b.index()] = p;
        out
    }

    pub fn bracket_latex(&self, a: GenId, b: GenId) -> String {
        format!("[{}{{}}_\\lambda {}] = {}", a.latex(), b.latex(), self.generator_bracket(a, b).to_latex())
    }
}

impl fmt::Debug for ConformalAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConformalAlgebra(γ = {})", self.gamma)
    }
}
