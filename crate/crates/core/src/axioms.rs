//! Machine checks of skew-symmetry, the Jacobi identity, homomorphism claims
//! and the primary-vector identities.

use std::collections::BTreeMap;

use num::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conformal::{substitute_neg_lambda_minus_partial, ConfElem, ConformalAlgebra, GenId, LambdaPoly};
use crate::error::{Error, Result};
use crate::scalars::{binomial, Laurent, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub witness: Vec<String>,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn new(checked: usize, failures: Vec<Failure>) -> Self {
        CheckReport { passed: failures.is_empty(), checked, failures }
    }

    pub fn pass(checked: usize) -> Self {
        Self::new(checked, Vec::new())
    }

    pub fn merge(reports: impl IntoIterator<Item = CheckReport>) -> Self {
        let (mut checked, mut failures) = (0, Vec::new());
        for r in reports {
            checked += r.checked;
            failures.extend(r.failures);
        }
        Self::new(checked, failures)
    }

    pub fn first_witness(&self) -> Option<&[String]> {
        self.failures.first().map(|f| f.witness.as_slice())
    }
}

fn sign_for(a: Option<bool>, b: Option<bool>) -> Scalar {
    if a == Some(true) && b == Some(true) {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

/// Verifies `[b_λ a] = −(−1)^{p(a)p(b)} [a_{−λ−∂̂} b]`.
pub fn check_skew_symmetry(alg: &ConformalAlgebra, a: &ConfElem, b: &ConfElem) -> Result<CheckReport> {
    let (pa, pb) = (a.parity()?, b.parity()?);
    let left = alg.lambda_bracket_unchecked(b, a);
    let ab = alg.lambda_bracket_unchecked(a, b);
    let right = substitute_neg_lambda_minus_partial(&ab, true).scale(&-sign_for(pa, pb));
    Ok(if left == right {
        CheckReport::pass(1)
    } else {
        CheckReport::new(1, vec![Failure { witness: vec![a.to_string(), b.to_string()], left: left.to_string(), right: right.to_string() }])
    })
}

/// A polynomial in two formal variables `λ`, `μ`.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct BiPoly(BTreeMap<(u32, u32), ConfElem>);

impl BiPoly {
    fn add_at(&mut self, l: u32, m: u32, e: &ConfElem) {
        if e.is_zero() {
            return;
        }
        let slot = self.0.entry((l, m)).or_default();
        slot.add_assign_ref(e);
        if slot.is_zero() {
            self.0.remove(&(l, m));
        }
    }

    fn scale(&self, c: &Scalar) -> BiPoly {
        let mut out = BiPoly::default();
        for ((l, m), e) in &self.0 {
            out.add_at(*l, *m, &e.scale(c));
        }
        out
    }

    fn add(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for ((l, m), e) in &other.0 {
            out.add_at(*l, *m, e);
        }
        out
    }
}

impl std::fmt::Display for BiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|((l, m), e)| format!("λ^{l}μ^{m}[{e}]")).collect();
        f.write_str(&parts.join(" + "))
    }
}

fn binom(n: u32, k: u32) -> Scalar {
    Scalar::from_rational(binomial(&BigRational::from_integer(n.into()), k))
}

/// `[x_λ [y_μ z]]` as a bi-degree map.
fn nested(alg: &ConformalAlgebra, x: &ConfElem, y: &ConfElem, z: &ConfElem, swap: bool) -> BiPoly {
    let mut out = BiPoly::default();
    for (m, r) in alg.lambda_bracket_unchecked(y, z).iter() {
        for (n, s) in alg.lambda_bracket_unchecked(x, r).iter() {
            if swap {
                out.add_at(m, n, s);
            } else {
                out.add_at(n, m, s);
            }
        }
    }
    out
}

/// Verifies `[a_λ[b_μ c]] = [[a_λ b]_{λ+μ} c] + (−1)^{p(a)p(b)} [b_μ[a_λ c]]`.
pub fn check_jacobi(alg: &ConformalAlgebra, a: &ConfElem, b: &ConfElem, c: &ConfElem) -> Result<CheckReport> {
    let (pa, pb) = (a.parity()?, b.parity()?);
    c.parity()?;
    let left = nested(alg, a, b, c, false);
    let mut first = BiPoly::default();
    for (n, p) in alg.lambda_bracket_unchecked(a, b).iter() {
        for (k, w) in alg.lambda_bracket_unchecked(p, c).iter() {
            for j in 0..=k {
                first.add_at(n + j, k - j, &w.scale(&binom(k, j)));
            }
        }
    }
    // [b_μ [a_λ c]]: inner degree is in λ, outer in μ.
    let second = nested(alg, b, a, c, true).scale(&sign_for(pa, pb));
    let right = first.add(&second);
    Ok(if left == right {
        CheckReport::pass(1)
    } else {
        CheckReport::new(
            1,
            vec![Failure {
                witness: vec![a.to_string(), b.to_string(), c.to_string()],
                left: left.to_string(),
                right: right.to_string(),
            }],
        )
    })
}

/// Images of generators; generators without an entry map to themselves.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageMap(pub BTreeMap<GenId, ConfElem>);

impl ImageMap {
    pub fn identity() -> Self {
        ImageMap::default()
    }

    pub fn from_fn(f: impl Fn(GenId) -> ConfElem) -> Self {
        ImageMap(GenId::V.iter().map(|g| (*g, f(*g))).collect())
    }

    pub fn image(&self, g: GenId) -> ConfElem {
        self.0.get(&g).cloned().unwrap_or_else(|| ConfElem::gen(g))
    }

    pub fn set(&mut self, g: GenId, e: ConfElem) {
        self.0.insert(g, e);
    }

    /// Extension commuting with `∂̂` and linear over `D̂`:
    /// `φ(∂^k v ⊗ f) = Σ_i C(k,i)(−1)^{k−i} ∂̂^i(φ(v)·δ_t^{k−i} f)`.
    pub fn apply(&self, x: &ConfElem) -> ConfElem {
        let mut out = ConfElem::zero();
        for (g, k, f) in x.terms() {
            let img = self.image(g);
            if k == 0 {
                out.add_assign_ref(&img.mul_laurent(f));
                continue;
            }
            let mut derivs: Vec<Laurent> = vec![f.clone()];
            for _ in 0..k {
                let next = derivs.last().unwrap().derivative();
                derivs.push(next);
            }
            for i in 0..=k {
                let base = img.mul_laurent(&derivs[(k - i) as usize]);
                if base.is_zero() {
                    continue;
                }
                let mut c = binom(k, i);
                if (k - i) % 2 == 1 {
                    c = -c;
                }
                out.add_assign_ref(&base.partial_hat_pow(i).scale(&c));
            }
        }
        out
    }

    pub fn apply_poly(&self, p: &LambdaPoly) -> LambdaPoly {
        p.map(|e| self.apply(e))
    }
}

/// Verifies `φ([ξ_λ η]) = [φ(ξ)_λ φ(η)]` on all generator pairs, in generator
/// order, so the first failure is the first offending pair.
pub fn check_homomorphism(alg: &ConformalAlgebra, phi: &ImageMap) -> Result<CheckReport> {
    let gens: Vec<GenId> = if alg.gamma().as_rational().is_some() { GenId::ALL.to_vec() } else { GenId::V.to_vec() };
    for g in &gens {
        phi.image(*g).parity()?;
    }
    let results: Vec<Option<Failure>> = gens
        .par_iter()
        .flat_map_iter(|x| gens.iter().map(move |y| (*x, *y)))
        .map(|(x, y)| {
            let left = phi.apply_poly(alg.generator_bracket(x, y));
            let right = alg.lambda_bracket_unchecked(&phi.image(x), &phi.image(y));
            (left != right).then(|| Failure {
                witness: vec![x.to_string(), y.to_string()],
                left: left.to_string(),
                right: right.to_string(),
            })
        })
        .collect();
    let checked = results.len();
    Ok(CheckReport::new(checked, results.into_iter().flatten().collect()))
}

/// Verifies `v_(0)L = (Δ−1)∂v`, `v_(1)L = Δv` and `v_(k)L = 0` for `k ≥ 2` in
/// the centreless algebra.
pub fn check_primary(v: GenId) -> Result<CheckReport> {
    if v == GenId::C {
        return Err(Error::Invalid("the central element has no conformal weight".into()));
    }
    let alg = ConformalAlgebra::centreless();
    let delta = v.weight();
    let dw = Scalar::from_rational(BigRational::new((*delta.numer()).into(), (*delta.denom()).into()));
    let x = ConfElem::gen(v);
    let l = ConfElem::gen(GenId::L);
    let p = alg.lambda_bracket(&x, &l)?;
    let top = p.degree().unwrap_or(0).max(2);
    let mut failures = Vec::new();
    let mut check = |k: u32, expected: ConfElem| -> Result<()> {
        let got = alg.n_product(&x, k, &l)?;
        if got != expected {
            failures.push(Failure { witness: vec![v.to_string(), format!("n = {k}")], left: got.to_string(), right: expected.to_string() });
        }
        Ok(())
    };
    check(0, x.partial().scale(&(&dw - &Scalar::one())))?;
    check(1, x.scale(&dw))?;
    for k in 2..=top + 1 {
        check(k, ConfElem::zero())?;
    }
    Ok(CheckReport::new(top as usize + 2, failures))
}

pub(crate) fn pool(jobs: usize) -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if jobs > 0 {
        b = b.num_threads(jobs);
    }
    b.build().expect("thread pool")
}

/// Skew-symmetry on all 16² generator pairs.
pub fn skew_sweep(alg: &ConformalAlgebra, jobs: usize) -> CheckReport {
    pool(jobs).install(|| {
        let reports: Vec<CheckReport> = GenId::V
            .par_iter()
            .flat_map_iter(|a| GenId::V.iter().map(move |b| (*a, *b)))
            .map(|(a, b)| check_skew_symmetry(alg, &ConfElem::gen(a), &ConfElem::gen(b)).expect("generators are homogeneous"))
            .collect();
        CheckReport::merge(reports)
    })
}

/// The Jacobi identity on all 16³ generator triples.
pub fn jacobi_sweep(alg: &ConformalAlgebra, jobs: usize) -> CheckReport {
    pool(jobs).install(|| {
        let reports: Vec<CheckReport> = GenId::V
            .par_iter()
            .flat_map_iter(|a| GenId::V.iter().flat_map(move |b| GenId::V.iter().map(move |c| (*a, *b, *c))))
            .map(|(a, b, c)| {
                check_jacobi(alg, &ConfElem::gen(a), &ConfElem::gen(b), &ConfElem::gen(c)).expect("generators are homogeneous")
            })
            .collect();
        CheckReport::merge(reports)
    })
}

/// Both sweeps.
pub fn axiom_sweep(alg: &ConformalAlgebra, jobs: usize) -> CheckReport {
    CheckReport::merge([skew_sweep(alg, jobs), jacobi_sweep(alg, jobs)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::GammaParam;
    use GenId::*;

    fn g(x: GenId) -> ConfElem {
        ConfElem::gen(x)
    }

    #[test]
    fn skew_examples() {
        let a = ConformalAlgebra::centreless();
        assert!(check_skew_symmetry(&a, &g(U), &g(U)).unwrap().passed);
        assert!(check_skew_symmetry(&a, &g(L), &g(L)).unwrap().passed);
        assert!(check_skew_symmetry(&a, &g(Q1), &g(G1)).unwrap().passed);
        assert!(check_skew_symmetry(&a, &g(G1), &g(Q1)).unwrap().passed);
    }

    #[test]
    fn jacobi_examples() {
        let a = ConformalAlgebra::centreless();
        assert!(check_jacobi(&a, &g(U), &g(U), &g(G2)).unwrap().passed);
        assert!(check_jacobi(&a, &g(L), &g(L), &g(L)).unwrap().passed);
        assert!(check_jacobi(&a, &g(G1), &g(G2), &g(Q3)).unwrap().passed);
    }

    #[test]
    fn loop_elements_satisfy_axioms() {
        let a = ConformalAlgebra::new(GammaParam::ratio(1, 3));
        let x = ConfElem::term(L, 1, Laurent::t_pow(2));
        let y = &ConfElem::term(G3, 0, Laurent::t_pow(-1)) + &ConfElem::term(Q1, 2, Laurent::t());
        let z = ConfElem::term(Tp2, 0, Laurent::t_pow(3));
        assert!(check_skew_symmetry(&a, &x, &y).unwrap().passed);
        assert!(check_jacobi(&a, &x, &y, &z).unwrap().passed);
        assert!(check_jacobi(&a, &y, &y, &z).unwrap().passed);
    }

    #[test]
    fn primary_vectors() {
        for v in GenId::V {
            let r = check_primary(v).unwrap();
            assert!(r.passed, "{v}: {:?}", r.failures);
        }
    }

    #[test]
    fn identity_is_a_homomorphism() {
        let a = ConformalAlgebra::new(GammaParam::ratio(1, 2));
        assert!(check_homomorphism(&a, &ImageMap::identity()).unwrap().passed);
    }

    #[test]
    fn mutation_is_detected() {
        let a = ConformalAlgebra::centreless();
        let bad = a.generator_bracket(Tp1, Tp2).scale(&-Scalar::one());
        let m = a.with_entry(Tp1, Tp2, bad);
        let r = axiom_sweep(&m, 0);
        assert!(!r.passed);
    }
}
