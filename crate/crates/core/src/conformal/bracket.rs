//! λ-brackets and n-products on `𝒜(γ) ⊗ D̂`.

use num::BigRational;

use super::elem::{ConfElem, LambdaPoly};
use super::table::ConformalAlgebra;
use crate::error::Result;
use crate::scalars::{binomial, Scalar};

fn binom(n: u32, k: u32) -> Scalar {
    Scalar::from_rational(binomial(&BigRational::from_integer(n.into()), k))
}

fn sign(n: u32) -> Scalar {
    if n % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// `P(−λ−D)` where `D` is `∂` (`hat = false`) or `∂̂` (`hat = true`) acting on
/// the coefficients.
pub fn substitute_neg_lambda_minus_partial(p: &LambdaPoly, hat: bool) -> LambdaPoly {
    let mut out = LambdaPoly::zero();
    for (n, e) in p.iter() {
        for k in 0..=n {
            let c = &sign(n) * &binom(n, k);
            let d = if hat { e.partial_hat_pow(n - k) } else { e.partial_pow(n - k) };
            out.add_at(k, &d.scale(&c));
        }
    }
    out
}

/// `(λ + ∂)^k P(λ)` with `∂` acting on coefficients.
fn lambda_plus_partial(p: &LambdaPoly, k: u32) -> LambdaPoly {
    if k == 0 {
        return p.clone();
    }
    let mut out = LambdaPoly::zero();
    for (n, e) in p.iter() {
        for j in 0..=k {
            out.add_at(n + k - j, &e.partial_pow(j).scale(&binom(k, j)));
        }
    }
    out
}

impl ConformalAlgebra {
    /// `[∂^i u _λ ∂^k v]` in `𝒜(γ)` for generators `u`, `v`.
    fn sesqui(&self, u: super::gen::GenId, i: u32, v: super::gen::GenId, k: u32) -> LambdaPoly {
        let base = self.generator_bracket(u, v);
        if i == 0 && k == 0 {
            return base.clone();
        }
        lambda_plus_partial(base, k).shift(i).scale(&sign(i))
    }

    /// The λ-bracket, without the parity check.
    pub fn lambda_bracket_unchecked(&self, a: &ConfElem, b: &ConfElem) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (u, i, f) in a.terms() {
            for (v, k, g) in b.terms() {
                let p = self.sesqui(u, i, v, k);
                if p.is_zero() {
                    continue;
                }
                if f.is_constant() {
                    let fg = f * g;
                    for (n, e) in p.iter() {
                        out.add_at(n, &e.mul_laurent(&fg));
                    }
                    continue;
                }
                // Σ_N P_N ⊗ (λ + δ_f)^N f·g
                for (n, e) in p.iter() {
                    let mut df = f.clone();
                    for j in 0..=n {
                        if df.is_zero() {
                            break;
                        }
                        let coeff = &df * g;
                        out.add_at(n - j, &e.mul_laurent(&coeff).scale(&binom(n, j)));
                        df = df.derivative();
                    }
                }
            }
        }
        out
    }

    /// `[a_λ b]`; both operands must be parity-homogeneous.
    pub fn lambda_bracket(&self, a: &ConfElem, b: &ConfElem) -> Result<LambdaPoly> {
        a.parity()?;
        b.parity()?;
        Ok(self.lambda_bracket_unchecked(a, b))
    }

    /// `a_{(n)} b = n! · [λ^n] [a_λ b]`.
    pub fn n_product(&self, a: &ConfElem, n: u32, b: &ConfElem) -> Result<ConfElem> {
        let p = self.lambda_bracket(a, b)?;
        let fact = Scalar::from_rational(BigRational::from_integer(crate::scalars::cyclotomic::factorial(n)));
        Ok(p.coeff(n).scale(&fact))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::{GammaParam, GenId};
    use crate::error::Error;
    use crate::scalars::Laurent;
    use GenId::*;

    fn g(x: GenId) -> ConfElem {
        ConfElem::gen(x)
    }

    #[test]
    fn sesquilinearity_example() {
        // [∂L_λ L] = −λ(∂ + 2λ)L
        let a = ConformalAlgebra::centreless();
        let p = a.lambda_bracket(&g(L).partial(), &g(L)).unwrap();
        assert_eq!(p.coeff(1), -g(L).partial());
        assert_eq!(p.coeff(2), g(L).scale(&Scalar::from_integer(-2)));
        assert!(p.coeff(0).is_zero());
    }

    #[test]
    fn loop_n_products() {
        let a = ConformalAlgebra::centreless();
        let lt = ConfElem::term(L, 0, Laurent::t());
        let p1 = a.n_product(&lt, 1, &g(L)).unwrap();
        assert_eq!(p1, ConfElem::term(L, 0, Laurent::t().scale(&Scalar::from_integer(2))));
        let p0 = a.n_product(&lt, 0, &g(L)).unwrap();
        let expect = &ConfElem::term(L, 1, Laurent::t()) + &g(L).scale(&Scalar::from_integer(2));
        assert_eq!(p0, expect);
    }

    #[test]
    fn n_product_examples() {
        let a = ConformalAlgebra::centreless();
        assert_eq!(a.n_product(&g(L), 1, &g(L)).unwrap(), g(L).scale(&Scalar::from_integer(2)));
        assert!(a.n_product(&g(U), 0, &g(U)).unwrap().is_zero());
        let b = ConformalAlgebra::new(GammaParam::ratio(1, 2));
        assert_eq!(b.n_product(&g(L), 3, &g(L)).unwrap(), ConfElem::scaled_gen(C, Scalar::from_ratio(1, 2)));
    }

    #[test]
    fn mixed_parity_rejected() {
        let a = ConformalAlgebra::centreless();
        let mixed = &g(L) + &g(Q1);
        assert!(matches!(a.lambda_bracket(&mixed, &g(L)), Err(Error::MixedParity(_))));
    }

    #[test]
    fn substitution_on_ll() {
        // (∂+2λ)L at λ ↦ −λ−∂ is (−∂ − 2λ)L, so skew-symmetry holds for (L, L).
        let a = ConformalAlgebra::centreless();
        let s = substitute_neg_lambda_minus_partial(a.generator_bracket(L, L), false);
        assert_eq!(s, a.generator_bracket(L, L).scale(&-Scalar::one()));
    }
}
