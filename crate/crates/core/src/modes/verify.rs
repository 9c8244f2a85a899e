//! Diffing machine-computed brackets against transcribed tables, and the
//! super Jacobi identity on windows of named modes.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::RwLock;

use num::{BigInt, BigRational, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::dsl::{parse_rule, parse_table, Env, Rule};
use super::elem::{falling_at, minus_one, ModeElem};
use super::export::render_named;
use super::named::{decompose, window_modes, Family, NamedMode, TableKind};
use super::ModeAlgebra;
use crate::axioms::{pool, CheckReport, Failure};
use crate::conformal::{CentralTerm, GammaParam, GenId};
use crate::error::{Error, Result};
use crate::scalars::cyclotomic::rational_to_string;
use crate::scalars::{Exponent, Scalar};

const TWISTED_TABLE: &str = include_str!("../../data/twisted_omega_table.txt");
const G_GAMMA_TABLE: &str = include_str!("../../data/g_gamma_table.txt");

/// The transcribed rules for `kind`; both untwisted kinds share one file.
pub fn table_rules(kind: TableKind) -> Result<Vec<Rule>> {
    parse_table(match kind {
        TableKind::TwistedOmega => TWISTED_TABLE,
        _ => G_GAMMA_TABLE,
    })
}

/// One bracket where the printed rule and the engine disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableMismatch {
    pub line: usize,
    pub provenance: String,
    pub rule: String,
    pub suspect: bool,
    pub left: String,
    pub right: String,
    pub printed: String,
    pub computed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub kind: TableKind,
    pub window: u32,
    pub gamma: Option<String>,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<TableMismatch>,
    /// Ordered family pairs for which no rule (in either orientation) exists.
    pub uncovered: Vec<String>,
    /// Lines of rules flagged `@suspect`.
    pub suspected: Vec<usize>,
}

impl TableReport {
    pub fn failing_lines(&self) -> BTreeSet<usize> {
        self.failures.iter().map(|f| f.line).collect()
    }

    /// Every failure sits on a suspect line and every suspect line fails.
    pub fn only_suspects_fail(&self) -> bool {
        self.uncovered.is_empty() && self.failing_lines() == self.suspected.iter().copied().collect()
    }

    /// No failure lies outside the suspect lines.
    pub fn failures_confined_to_suspects(&self) -> bool {
        self.uncovered.is_empty() && self.failures.iter().all(|f| f.suspect)
    }

    /// The first failure on each line.
    pub fn first_per_line(&self) -> Vec<&TableMismatch> {
        let mut seen = BTreeSet::new();
        self.failures.iter().filter(|f| seen.insert(f.line)).collect()
    }

    pub fn to_check_report(&self) -> CheckReport {
        let mut failures: Vec<Failure> = self
            .failures
            .iter()
            .map(|f| Failure {
                witness: vec![f.left.clone(), f.right.clone(), format!("line {}", f.line)],
                left: f.printed.clone(),
                right: f.computed.clone(),
            })
            .collect();
        failures.extend(self.uncovered.iter().map(|u| Failure {
            witness: vec![u.clone()],
            left: "no rule".into(),
            right: String::new(),
        }));
        CheckReport::new(self.checked, failures)
    }
}

struct Lookup<'a> {
    rules: &'a [Rule],
}

impl<'a> Lookup<'a> {
    /// The rule for `[a, b]`, and whether it is stated as `[b, a]`.
    fn find(&self, a: Family, b: Family) -> Option<(&'a Rule, bool)> {
        self.rules
            .iter()
            .find(|r| r.left.family == a && r.right.family == b)
            .map(|r| (r, false))
            .or_else(|| self.rules.iter().find(|r| r.left.family == b && r.right.family == a).map(|r| (r, true)))
    }
}

fn exp_rational(k: Exponent) -> BigRational {
    BigRational::new(BigInt::from(*k.numer()), BigInt::from(*k.denom()))
}

fn bind(vars: &mut BTreeMap<String, BigRational>, pat: &super::dsl::Pattern, x: &NamedMode) {
    if let Some(c) = &pat.comp {
        vars.insert(c.clone(), BigRational::from_integer(BigInt::from(x.comp)));
    }
    vars.insert(pat.index.clone(), exp_rational(x.index));
}

/// What `rule` prints for `[x, y]` (with `x`, `y` in the rule's own order).
fn eval_rule(rule: &Rule, kind: TableKind, gamma: Option<&BigRational>, x: &NamedMode, y: &NamedMode) -> Result<ModeElem> {
    let mut vars = BTreeMap::new();
    bind(&mut vars, &rule.left, x);
    bind(&mut vars, &rule.right, y);
    Env { kind, gamma, vars }.eval_elem(&rule.rhs)
}

/// `[x, y]` according to `rules` with the rule's line, using graded
/// antisymmetry for rules stated as `[y, x]`.
fn printed(rules: &Lookup, alg: &ModeAlgebra, x: &NamedMode, y: &NamedMode) -> Option<Result<(ModeElem, usize)>> {
    let (rule, reversed) = rules.find(x.family, y.family)?;
    let (kind, gamma) = (alg.kind(), alg.gamma());
    if !reversed {
        return Some(eval_rule(rule, kind, gamma, x, y).map(|v| (v, rule.line)));
    }
    let sign = if x.is_odd() && y.is_odd() { Scalar::one() } else { -Scalar::one() };
    Some(eval_rule(rule, kind, gamma, y, x).map(|v| (v.scale(&sign), rule.line)))
}

fn check_rules(alg: &ModeAlgebra, rules: &[Rule], window: u32, coverage: bool, jobs: usize) -> Result<TableReport> {
    let kind = alg.kind();
    let lookup = Lookup { rules };
    let modes = window_modes(kind, window, false);
    let families: BTreeSet<(Family, Family)> = rules.iter().map(|r| (r.left.family, r.right.family)).collect();
    let pairs: Vec<(NamedMode, NamedMode)> = modes
        .iter()
        .flat_map(|x| modes.iter().map(move |y| (*x, *y)))
        .filter(|(x, y)| {
            coverage || families.contains(&(x.family, y.family)) || families.contains(&(y.family, x.family))
        })
        .collect();
    let results: Vec<Result<Option<TableMismatch>>> = pool(jobs).install(|| {
        pairs
            .par_iter()
            .map(|(x, y)| {
                let Some((rule, _)) = lookup.find(x.family, y.family) else { return Ok(None) };
                let got = alg.bracket_named(x, y)?;
                let want = match printed(&lookup, alg, x, y).expect("rule exists") {
                    Ok((want, _)) if want == got => return Ok(None),
                    Ok((want, _)) => render_named(kind, &want, super::dsl::Style::Text)?,
                    Err(e) => format!("undefined ({e})"),
                };
                Ok(Some(TableMismatch {
                    line: rule.line,
                    provenance: rule.provenance.clone(),
                    rule: rule.source.clone(),
                    suspect: rule.suspect,
                    left: x.to_string(),
                    right: y.to_string(),
                    printed: want,
                    computed: render_named(kind, &got, super::dsl::Style::Text)?,
                }))
            })
            .collect()
    });
    let mut failures = Vec::new();
    for r in results {
        if let Some(f) = r? {
            failures.push(f);
        }
    }
    let mut uncovered = Vec::new();
    if coverage {
        for &a in kind.families() {
            for &b in kind.families() {
                if lookup.find(a, b).is_none() {
                    uncovered.push(format!("[{a:?}, {b:?}]"));
                }
            }
        }
    }
    let suspected = rules.iter().filter(|r| r.suspect).map(|r| r.line).collect();
    let passed = failures.is_empty() && uncovered.is_empty();
    Ok(TableReport {
        kind,
        window,
        gamma: alg.gamma().map(rational_to_string),
        passed,
        checked: pairs.len(),
        failures,
        uncovered,
        suspected,
    })
}

/// Computes every bracket of named modes with indices in `[−W, W]` and diffs
/// it against the transcribed table.
pub fn verify_table(kind: TableKind, window: u32, gamma: &GammaParam, jobs: usize) -> Result<TableReport> {
    let alg = ModeAlgebra::new(kind, gamma)?;
    check_rules(&alg, &table_rules(kind)?, window, true, jobs)
}

/// Checks a single rule written in the table language.
pub fn check_rule(kind: TableKind, gamma: &GammaParam, text: &str, window: u32) -> Result<TableReport> {
    let alg = ModeAlgebra::new(kind, gamma)?;
    let mut rule = parse_rule(text)?;
    rule.line = 1;
    check_rules(&alg, &[rule], window, false, 0)
}

type MonoKey = (GenId, Exponent, GenId, Exponent);

/// Monomial brackets memoised across threads.
struct Cached<'a> {
    alg: &'a ModeAlgebra,
    memo: RwLock<HashMap<MonoKey, ModeElem>>,
}

impl Cached<'_> {
    fn mono(&self, key: MonoKey) -> ModeElem {
        if let Some(v) = self.memo.read().expect("memo lock").get(&key) {
            return v.clone();
        }
        let v = self.alg.monomial_bracket(key.0, key.1, key.2, key.3);
        self.memo.write().expect("memo lock").insert(key, v.clone());
        v
    }

    fn bracket(&self, x: &ModeElem, y: &ModeElem) -> ModeElem {
        let mut out = ModeElem::zero();
        for (g, k, a) in x.terms() {
            for (h, l, b) in y.terms() {
                out.add_assign_ref(&self.mono((g, k, h, l)).scale(&(a * b)));
            }
        }
        out
    }
}

/// Graded antisymmetry and the super Jacobi identity on all named modes with
/// indices in `[−W, W]`.
pub fn super_jacobi_window(kind: TableKind, window: u32, gamma: &GammaParam, jobs: usize) -> Result<CheckReport> {
    super_jacobi_with(&ModeAlgebra::new(kind, gamma)?, window, jobs)
}

/// [`super_jacobi_window`] for an explicit algebra.
pub fn super_jacobi_with(alg: &ModeAlgebra, window: u32, jobs: usize) -> Result<CheckReport> {
    let modes = window_modes(alg.kind(), window, false);
    let elems: Vec<ModeElem> = modes.iter().map(|x| alg.named(x)).collect::<Result<_>>()?;
    let n = elems.len();
    let cache = Cached { alg, memo: RwLock::new(HashMap::new()) };
    let sign = |a: usize, b: usize| ModeAlgebra::super_sign(&elems[a], &elems[b]);
    let fmt = |x: &ModeElem| render_named(alg.kind(), x, super::dsl::Style::Text).unwrap_or_else(|_| x.to_string());
    pool(jobs).install(|| {
        let pair: Vec<ModeElem> =
            (0..n * n).into_par_iter().map(|ij| cache.bracket(&elems[ij / n], &elems[ij % n])).collect();
        let mut failures: Vec<Failure> = (0..n * n)
            .into_par_iter()
            .filter_map(|ij| {
                let (i, j) = (ij / n, ij % n);
                let lhs = &pair[j * n + i];
                let rhs = pair[ij].scale(&-sign(i, j));
                (lhs != &rhs).then(|| Failure {
                    witness: vec![modes[j].to_string(), modes[i].to_string()],
                    left: fmt(lhs),
                    right: fmt(&rhs),
                })
            })
            .collect();
        let jacobi: Vec<Failure> = (0..n * n * n)
            .into_par_iter()
            .filter_map(|ijk| {
                let (i, j, k) = (ijk / (n * n), (ijk / n) % n, ijk % n);
                let lhs = cache.bracket(&elems[i], &pair[j * n + k]);
                let a = cache.bracket(&pair[i * n + j], &elems[k]);
                let b = cache.bracket(&elems[j], &pair[i * n + k]).scale(&sign(i, j));
                let rhs = &a + &b;
                (lhs != rhs).then(|| Failure {
                    witness: vec![modes[i].to_string(), modes[j].to_string(), modes[k].to_string()],
                    left: fmt(&lhs),
                    right: fmt(&rhs),
                })
            })
            .collect();
        failures.extend(jacobi);
        Ok(CheckReport::new(n * n + n * n * n, failures))
    })
}

/// The named mode of `g ⊗ t^k` in the untwisted basis.
fn untwisted_label(g: GenId, k: Exponent) -> Result<NamedMode> {
    let d = decompose(TableKind::UntwistedGamma, &ModeElem::gen(g, k))?;
    Ok(d[0].0)
}

/// Recovers the central λ-terms of `𝒜(γ)` from the printed `g(γ)` table.
///
/// For generators `a`, `b` the central term sits in λ-degree `d = Δ_a+Δ_b−1`.
/// The central part of `[a ⊗ t^{d+1}, b ⊗ t^{−2}]` equals `(d+1)! x_{ab}`; the
/// table is read at two values of `γ` to split `x_{ab}` into its constant and
/// `γ`-linear parts.
pub fn derive_central_terms() -> Result<Vec<CentralTerm>> {
    let rules = table_rules(TableKind::UntwistedGamma)?;
    let lookup = Lookup { rules: &rules };
    let at = |g: i64| ModeAlgebra::new(TableKind::UntwistedGamma, &GammaParam::ratio(g, 1));
    let (a2, a3) = (at(2)?, at(3)?);
    let mut out = Vec::new();
    for a in GenId::V {
        for b in GenId::V {
            if a.index() > b.index() {
                continue;
            }
            let d = a.weight() + b.weight() - Exponent::from_integer(1);
            if !d.is_integer() || d < Exponent::zero() {
                continue;
            }
            let n = d.to_integer() as u32;
            let x = untwisted_label(a, Exponent::from_integer(n as i64 + 1))?;
            let y = untwisted_label(b, Exponent::from_integer(-2))?;
            let scale = falling_at(Exponent::from_integer(n as i64 + 1), n);
            let central = |alg: &ModeAlgebra| -> Result<BigRational> {
                let (v, _) = printed(&lookup, alg, &x, &y)
                    .ok_or_else(|| Error::Invalid(format!("no rule for [{x}, {y}]")))??;
                let c = v.coeff(GenId::C, minus_one());
                let q = (&c * &scale.inv().expect("nonzero factorial")).as_rational().expect("rational table");
                Ok(q)
            };
            let (v2, v3) = (central(&a2)?, central(&a3)?);
            let slope = &v3 - &v2;
            let constant = &v2 - &slope * BigRational::from_integer(2.into());
            if slope.is_zero() && constant.is_zero() {
                continue;
            }
            out.push(CentralTerm {
                a,
                b,
                lambda_deg: n,
                constant: rational_to_string(&constant),
                gamma_coeff: rational_to_string(&slope),
            });
        }
    }
    Ok(out)
}
