//! Twisted loop conformal superalgebras `L(𝒜,σ) = ⊕ 𝒜_i ⊗ t^{i/m}`.

use std::collections::BTreeMap;

use num::Integer;
use serde::Serialize;

use crate::autgrp::{action_matrix, eigenspaces, order_of, AutSpec, Eigenspace};
use crate::conformal::{ConfElem, ConformalAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalars::{default_field, Exponent, Laurent, Scalar};

#[derive(Clone, Debug)]
pub struct LoopAlgebra {
    pub sigma: AutSpec,
    pub m: u32,
    pub eigenbases: Vec<Eigenspace>,
    action: Matrix,
    zeta: Scalar,
    alg: ConformalAlgebra,
}

/// A basis vector `v ⊗ t^k` of the loop, with `v` in the eigenspace of `ζ_m^{km}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopBasisElem {
    pub eigenspace: u32,
    pub exponent: String,
    pub elem: ConfElem,
}

/// Builds `L(𝒜,σ)`; `σ` must have constant data and order exactly `m`.
pub fn build_loop(sigma: &AutSpec, m: u32) -> Result<LoopAlgebra> {
    if !sigma.is_constant() {
        return Err(Error::Invalid("twisting needs an automorphism with constant data".into()));
    }
    match order_of(sigma, m) {
        Some(k) if k == m => {}
        found => {
            let detail = match found {
                Some(k) => format!("the order is {k}"),
                None => format!("the order exceeds {m}"),
            };
            return Err(Error::OrderMismatch { expected: m, detail });
        }
    }
    let eigenbases = eigenspaces(sigma, m)?;
    let field = default_field();
    let zeta = field.root_of_unity(m).ok_or(Error::ScalarFieldTooSmall { m, n: field.order() })?;
    Ok(LoopAlgebra { sigma: sigma.clone(), m, eigenbases, action: action_matrix(sigma)?, zeta, alg: ConformalAlgebra::centreless() })
}

impl LoopAlgebra {
    /// The eigenspace index `km mod m` of exponent `k`, if `km` is an integer.
    pub fn grade(&self, k: Exponent) -> Option<u32> {
        let km = k * Exponent::from_integer(self.m as i64);
        km.is_integer().then(|| km.to_integer().mod_floor(&(self.m as i64)) as u32)
    }

    /// Whether every `(∂^d, t^k)`-component of `x` lies in `𝒜_{km mod m} ⊗ t^k`.
    pub fn contains(&self, x: &ConfElem) -> bool {
        let mut parts: BTreeMap<(u32, Exponent), Vec<Scalar>> = BTreeMap::new();
        for (g, d, f) in x.terms() {
            for (k, c) in f.terms() {
                let v = parts.entry((d, k)).or_insert_with(|| vec![Scalar::zero(); 17]);
                v[g.index()] = c.clone();
            }
        }
        parts.into_iter().all(|((_, k), v)| {
            let Some(i) = self.grade(k) else { return false };
            if !v[16].is_zero() && i != 0 {
                return false;
            }
            let ev = self.zeta.pow(i);
            let image = linalg::mat_vec(&self.action, &v[..16]);
            image.iter().zip(&v[..16]).all(|(a, b)| *a == b * &ev)
        })
    }

    /// Members `v ⊗ t^k` for eigenbasis vectors `v` and `|k| ≤ window`.
    pub fn basis_window(&self, window: i64) -> Vec<LoopBasisElem> {
        let m = self.m as i64;
        let mut out = Vec::new();
        for space in &self.eigenbases {
            for num in -window * m..=window * m {
                if num.mod_floor(&m) != space.index as i64 {
                    continue;
                }
                let k = Exponent::new(num, m);
                for v in &space.basis {
                    out.push(LoopBasisElem {
                        eigenspace: space.index,
                        exponent: crate::scalars::laurent::fmt_exponent(k),
                        elem: v.mul_laurent(&Laurent::monomial(Scalar::one(), k)),
                    });
                }
            }
        }
        out
    }

    /// `x_(n) y` for loop members.
    pub fn n_product(&self, x: &ConfElem, n: u32, y: &ConfElem) -> Result<ConfElem> {
        for e in [x, y] {
            if !self.contains(e) {
                return Err(Error::Invalid(format!("{e} is not in the loop algebra")));
            }
        }
        self.alg.n_product(x, n, y)
    }

    pub fn algebra(&self) -> &ConformalAlgebra {
        &self.alg
    }
}

/// Whether `x` lies in `loop`.
pub fn loop_membership(lp: &LoopAlgebra, x: &ConfElem) -> bool {
    x.is_zero() || lp.contains(x)
}
