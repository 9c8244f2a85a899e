//! Mode algebras `Alg(𝒜,σ) = L(𝒜,σ)/∂̂L(𝒜,σ)` for `σ ∈ {id, ω}`.
//!
//! Elements are kept in the canonical form produced by [`reduce`]. The
//! bracket is the reduced 0-th product of canonical lifts; [`ModeAlgebra::bracket`]
//! evaluates it directly from the generator table, while
//! [`ModeAlgebra::bracket_general`] goes through the loop algebra.

pub mod dsl;
pub mod elem;
pub mod export;
pub mod named;
pub mod verify;

use num::BigRational;

use crate::conformal::{ConformalAlgebra, GammaParam, GenId};
use crate::error::{Error, Result};
use crate::scalars::{Exponent, Scalar};

pub use elem::{reduce, ModeElem};
pub use export::{export_table, render_named, ExportFormat};
pub use named::{decompose, named_to_elem, window_modes, Family, NamedMode, TableKind};
pub use verify::{
    check_rule, derive_central_terms, super_jacobi_window, super_jacobi_with, table_rules, verify_table, TableMismatch,
    TableReport,
};

use elem::falling_at;

/// The Lie superalgebra attached to one of the three tables.
#[derive(Clone, Debug)]
pub struct ModeAlgebra {
    kind: TableKind,
    alg: ConformalAlgebra,
}

impl ModeAlgebra {
    /// `Alg(𝒜(γ), id)` needs a value of `γ`; the other two ignore it.
    pub fn new(kind: TableKind, gamma: &GammaParam) -> Result<Self> {
        let alg = match (kind, gamma) {
            (TableKind::UntwistedGamma, GammaParam::Centreless) => {
                return Err(Error::Invalid("the untwisted-gamma table needs a value of gamma".into()))
            }
            (TableKind::UntwistedGamma, g) => ConformalAlgebra::new(g.clone()),
            _ => ConformalAlgebra::centreless(),
        };
        Ok(ModeAlgebra { kind, alg })
    }

    /// Uses `alg` as the underlying conformal algebra (e.g. a mutated table).
    pub fn with_algebra(kind: TableKind, alg: ConformalAlgebra) -> Self {
        ModeAlgebra { kind, alg }
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn algebra(&self) -> &ConformalAlgebra {
        &self.alg
    }

    pub fn gamma(&self) -> Option<&BigRational> {
        self.alg.gamma().as_rational()
    }

    pub fn named(&self, x: &NamedMode) -> Result<ModeElem> {
        named_to_elem(self.kind, x)
    }

    /// `[x, y]`; both operands must be parity-homogeneous.
    pub fn bracket(&self, x: &ModeElem, y: &ModeElem) -> Result<ModeElem> {
        x.parity()?;
        y.parity()?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &ModeElem, y: &ModeElem) -> ModeElem {
        let mut out = ModeElem::zero();
        for (g, k, a) in x.terms() {
            for (h, l, b) in y.terms() {
                let ab = a * b;
                out.add_assign_ref(&self.monomial_bracket(g, k, h, l).scale(&ab));
            }
        }
        out
    }

    /// `[g ⊗ t^k, h ⊗ t^l] = Σ_N P_N · k(k−1)⋯(k−N+1) t^{k+l−N}`, reduced.
    pub fn monomial_bracket(&self, g: GenId, k: Exponent, h: GenId, l: Exponent) -> ModeElem {
        let mut out = ModeElem::zero();
        for (n, e) in self.alg.generator_bracket(g, h).iter() {
            let fk = falling_at(k, n);
            if fk.is_zero() {
                continue;
            }
            let base = k + l - Exponent::from_integer(n as i64);
            for (u, d, f) in e.terms() {
                for (e0, c) in f.terms() {
                    let p = base + e0;
                    let mut coef = &(c * &fk) * &falling_at(p, d);
                    if d % 2 == 1 {
                        coef = -coef;
                    }
                    out.add_term(u, p - Exponent::from_integer(d as i64), coef);
                }
            }
        }
        out
    }

    /// The bracket computed as `reduce(lift(x)_(0) lift(y))` in the loop algebra.
    pub fn bracket_general(&self, x: &ModeElem, y: &ModeElem) -> Result<ModeElem> {
        x.parity()?;
        y.parity()?;
        Ok(reduce(&self.alg.n_product(&x.lift(), 0, &y.lift())?))
    }

    pub fn bracket_named(&self, x: &NamedMode, y: &NamedMode) -> Result<ModeElem> {
        self.bracket(&self.named(x)?, &self.named(y)?)
    }

    /// Super sign `(−1)^{|x||y|}` of two homogeneous elements.
    pub(crate) fn super_sign(x: &ModeElem, y: &ModeElem) -> Scalar {
        match (x.parity(), y.parity()) {
            (Ok(Some(true)), Ok(Some(true))) => -Scalar::one(),
            _ => Scalar::one(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::ConfElem;
    use crate::scalars::Laurent;
    use proptest::prelude::*;
    use Family::*;

    fn e(n: i64, d: i64) -> Exponent {
        Exponent::new(n, d)
    }

    fn nm(f: Family, c: u8, n: i64, d: i64) -> NamedMode {
        NamedMode::new(f, c, e(n, d))
    }

    fn twisted() -> ModeAlgebra {
        ModeAlgebra::new(TableKind::TwistedOmega, &GammaParam::Centreless).unwrap()
    }

    #[test]
    fn phi_phi_and_psi_psi() {
        let a = twisted();
        for (m, n) in [(0, 0), (2, -1), (-3, 1)] {
            let b = a.bracket_named(&nm(Phi, 0, m, 1), &nm(Phi, 0, n, 1)).unwrap();
            let l = a.named(&nm(L, 0, m + n, 1)).unwrap();
            assert_eq!(b, l.scale(&Scalar::from_integer(2)));
        }
        for (r, s) in [(1, 1), (1, -3), (5, -1)] {
            assert!(a.bracket_named(&nm(Psi, 0, r, 2), &nm(Psi, 0, s, 2)).unwrap().is_zero());
        }
    }

    #[test]
    fn virasoro_central_term_at_half() {
        let a = ModeAlgebra::new(TableKind::UntwistedGamma, &GammaParam::ratio(1, 2)).unwrap();
        let b = a.bracket_named(&nm(L, 0, 2, 1), &nm(L, 0, -2, 1)).unwrap();
        let expect = &a.named(&nm(L, 0, 0, 1)).unwrap().scale(&Scalar::from_integer(4))
            + &ModeElem::central().scale(&Scalar::from_ratio(1, 2));
        assert_eq!(b, expect);
    }

    #[test]
    fn central_element_is_central() {
        let a = ModeAlgebra::new(TableKind::UntwistedGamma, &GammaParam::ratio(1, 3)).unwrap();
        for x in window_modes(TableKind::UntwistedGamma, 1, true) {
            let b = a.bracket(&ModeElem::central(), &a.named(&x).unwrap()).unwrap();
            assert!(b.is_zero(), "[c, {x}] = {b}");
        }
    }

    #[test]
    fn mixed_parity_is_rejected() {
        let a = twisted();
        let mixed = &ModeElem::gen(GenId::L, e(1, 1)) + &ModeElem::gen(GenId::G1, e(1, 2));
        assert!(matches!(a.bracket(&mixed, &ModeElem::gen(GenId::L, e(0, 1))), Err(Error::MixedParity(_))));
    }

    #[test]
    fn fast_path_matches_loop_product() {
        for kind in TableKind::ALL {
            let a = ModeAlgebra::new(kind, &GammaParam::ratio(1, 3)).unwrap();
            let modes = window_modes(kind, 1, false);
            for x in &modes {
                for y in &modes {
                    let (p, q) = (a.named(x).unwrap(), a.named(y).unwrap());
                    assert_eq!(a.bracket(&p, &q).unwrap(), a.bracket_general(&p, &q).unwrap(), "{kind}: [{x}, {y}]");
                }
            }
        }
    }

    fn arb_gen_exp() -> impl Strategy<Value = (GenId, Exponent)> {
        (0usize..16, -3i64..4, 0i64..2).prop_map(|(g, n, h)| (GenId::V[g], e(2 * n + h, 2)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn bracket_ignores_choice_of_lift(
            (g, k) in arb_gen_exp(),
            (h, l) in arb_gen_exp(),
            (u, j) in arb_gen_exp(),
            d in 0u32..3,
        ) {
            prop_assume!(g.is_odd() == u.is_odd());
            let alg = ConformalAlgebra::new(GammaParam::ratio(1, 3));
            let x = ModeElem::gen(g, k);
            let y = ModeElem::gen(h, l);
            let shift = ConfElem::term(u, d, Laurent::monomial(Scalar::one(), j)).partial_hat();
            let other_lift = &x.lift() + &shift;
            let via_other = reduce(&alg.n_product(&other_lift, 0, &y.lift()).unwrap());
            let a = ModeAlgebra::with_algebra(TableKind::UntwistedGamma, alg);
            prop_assert_eq!(a.bracket(&x, &y).unwrap(), via_other);
        }

        #[test]
        fn bracket_is_graded((g, k) in arb_gen_exp(), (h, l) in arb_gen_exp()) {
            let deg = |u: GenId, p: Exponent| p - u.weight() + Exponent::from_integer(1);
            let a = ModeAlgebra::new(TableKind::UntwistedGamma, &GammaParam::ratio(2, 1)).unwrap();
            let b = a.bracket(&ModeElem::gen(g, k), &ModeElem::gen(h, l)).unwrap();
            let total = deg(g, k) + deg(h, l);
            for (u, p, _) in b.terms() {
                if u == GenId::C {
                    prop_assert_eq!(total, Exponent::from_integer(0));
                } else {
                    prop_assert_eq!(deg(u, p), total);
                }
            }
        }
    }
}
