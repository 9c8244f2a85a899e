//! The matrix parametrizations `T^±(X)`, `G(M)`, `Q(M)` and their inverses.

use serde::{Deserialize, Serialize};

use super::elem::ConfElem;
use super::gen::GenId;
use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::scalars::{Laurent, Scalar};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatrixKind {
    #[serde(rename = "T+")]
    TPlus,
    #[serde(rename = "T-")]
    TMinus,
    G,
    Q,
}

impl MatrixKind {
    fn gens(self) -> &'static [GenId] {
        match self {
            MatrixKind::TPlus => &GenId::T_PLUS,
            MatrixKind::TMinus => &GenId::T_MINUS,
            MatrixKind::G => &GenId::G,
            MatrixKind::Q => &GenId::Q,
        }
    }

    pub fn parse(s: &str) -> Result<MatrixKind> {
        match s.trim() {
            "T+" => Ok(MatrixKind::TPlus),
            "T-" | "T−" => Ok(MatrixKind::TMinus),
            "G" => Ok(MatrixKind::G),
            "Q" => Ok(MatrixKind::Q),
            other => Err(Error::Parse(format!("unknown matrix kind {other:?}"))),
        }
    }
}

fn half() -> Scalar {
    Scalar::from_ratio(1, 2)
}

/// Coefficients of the generators of `kind` in the expansion of `M`.
pub fn matrix_coords(kind: MatrixKind, m: &Mat2) -> Vec<Laurent> {
    let i = Scalar::i();
    let (u11, u12, u21, u22) = (m.u11(), m.u12(), m.u21(), m.u22());
    match kind {
        MatrixKind::TPlus | MatrixKind::TMinus => vec![
            (u12 + u21).scale(&-&i),
            u12 - u21,
            u11.scale(&(&i * &Scalar::from_integer(2))),
        ],
        MatrixKind::G | MatrixKind::Q => vec![
            u12 + u21,
            (u12 - u21).scale(&i),
            -(u11 - u22),
            (u11 + u22).scale(&-&i),
        ],
    }
}

/// Expands `T^±(X)`, `G(M)` or `Q(M)` over the generators; entries may be
/// Laurent polynomials, giving an element of `𝒜 ⊗ D̂`.
pub fn expand_matrix_form(kind: MatrixKind, m: &Mat2) -> Result<ConfElem> {
    if matches!(kind, MatrixKind::TPlus | MatrixKind::TMinus) && !m.trace().is_zero() {
        return Err(Error::NotTraceless(m.to_string()));
    }
    let mut out = ConfElem::zero();
    for (g, c) in kind.gens().iter().zip(matrix_coords(kind, m)) {
        out.add_term(*g, 0, c);
    }
    Ok(out)
}

/// Inverse of [`expand_matrix_form`] on the `∂`-free part of `x` supported on
/// the generators of `kind`.
pub fn matrix_preimage(kind: MatrixKind, x: &ConfElem) -> Mat2 {
    let i = Scalar::i();
    let h = half();
    let c: Vec<Laurent> = kind.gens().iter().map(|g| x.get(*g, 0)).collect();
    match kind {
        MatrixKind::TPlus | MatrixKind::TMinus => {
            // c1 = −i(x12+x21), c2 = x12−x21, c3 = 2i x11
            let sum = c[0].scale(&i);
            let x12 = (&sum + &c[1]).scale(&h);
            let x21 = (&sum - &c[1]).scale(&h);
            let x11 = c[2].scale(&(-&i * &h));
            Mat2::new(x11.clone(), x12, x21, -x11)
        }
        MatrixKind::G | MatrixKind::Q => {
            // d1 = u12+u21, d2 = i(u12−u21), d3 = u22−u11, d4 = −i(u11+u22)
            let diff = c[1].scale(&-&i);
            let u12 = (&c[0] + &diff).scale(&h);
            let u21 = (&c[0] - &diff).scale(&h);
            let sum = c[3].scale(&i);
            let u11 = (&sum - &c[2]).scale(&h);
            let u22 = (&sum + &c[2]).scale(&h);
            Mat2::new(u11, u12, u21, u22)
        }
    }
}

/// For a generator of a matrix family, its kind and the constant matrix it
/// is the image of.
pub fn generator_matrix(g: GenId) -> Option<(MatrixKind, Mat2)> {
    let kind = if GenId::T_PLUS.contains(&g) {
        MatrixKind::TPlus
    } else if GenId::T_MINUS.contains(&g) {
        MatrixKind::TMinus
    } else if GenId::G.contains(&g) {
        MatrixKind::G
    } else if GenId::Q.contains(&g) {
        MatrixKind::Q
    } else {
        return None;
    };
    Some((kind, matrix_preimage(kind, &ConfElem::gen(g))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Mat2 {
        Mat2::parse(s).unwrap()
    }

    #[test]
    fn spec_examples() {
        let h = m("[[1,0],[0,-1]]");
        let x = expand_matrix_form(MatrixKind::TPlus, &h).unwrap();
        assert_eq!(x, ConfElem::scaled_gen(GenId::Tp3, Scalar::from_integer(2) * Scalar::i()));
        let g = expand_matrix_form(MatrixKind::G, &Mat2::unit(1, 2)).unwrap();
        assert_eq!(g, &ConfElem::gen(GenId::G1) + &ConfElem::scaled_gen(GenId::G2, Scalar::i()));
        assert!(expand_matrix_form(MatrixKind::Q, &Mat2::zero()).unwrap().is_zero());
        assert!(matches!(expand_matrix_form(MatrixKind::TMinus, &Mat2::identity()), Err(Error::NotTraceless(_))));
    }

    #[test]
    fn generator_preimages() {
        let i = Scalar::i();
        let half_i = &i * &Scalar::from_ratio(1, 2);
        // T+1 = (i/2)(T^+(e) + T^+(f)), T+3 = −(i/2)T^+(h)
        assert_eq!(generator_matrix(GenId::Tp1).unwrap().1, m("[[0,1],[1,0]]").scale_scalar(&half_i));
        assert_eq!(generator_matrix(GenId::Tp3).unwrap().1, m("[[1,0],[0,-1]]").scale_scalar(&-&half_i));
        assert_eq!(generator_matrix(GenId::G4).unwrap().1, Mat2::identity().scale_scalar(&half_i));
        for g in GenId::V {
            if let Some((kind, mat)) = generator_matrix(g) {
                assert_eq!(expand_matrix_form(kind, &mat).unwrap(), ConfElem::gen(g), "{g}");
            }
        }
    }
}
