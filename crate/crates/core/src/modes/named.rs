use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::elem::ModeElem;
use crate::conformal::GenId;
use crate::error::{Error, Result};
use crate::scalars::{Exponent, Scalar};

/// Which mode algebra a table describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableKind {
    /// `Alg(𝒜, id)` without central terms.
    UntwistedCentreless,
    /// `Alg(𝒜(γ), id)`, the algebra `g(γ)`.
    UntwistedGamma,
    /// `Alg(𝒜, ω)`.
    TwistedOmega,
}

impl TableKind {
    pub const ALL: [TableKind; 3] = [TableKind::UntwistedCentreless, TableKind::UntwistedGamma, TableKind::TwistedOmega];

    pub fn name(self) -> &'static str {
        match self {
            TableKind::UntwistedCentreless => "untwisted-centreless",
            TableKind::UntwistedGamma => "untwisted-gamma",
            TableKind::TwistedOmega => "twisted-omega",
        }
    }

    pub fn is_twisted(self) -> bool {
        self == TableKind::TwistedOmega
    }

    /// The named families, in display order.
    pub fn families(self) -> &'static [Family] {
        use Family::*;
        if self.is_twisted() {
            &[L, T, J, U, G, Phi, Q, Psi]
        } else {
            &[L, TPlus, TMinus, U, G, Q]
        }
    }

    /// Component labels `1..=n` of a family (0 for families without one).
    pub fn components(self, f: Family) -> u8 {
        use Family::*;
        match f {
            L | U | Phi | Psi | Central => 0,
            T | J | TPlus | TMinus => 3,
            G | Q => {
                if self.is_twisted() {
                    3
                } else {
                    4
                }
            }
        }
    }

    /// Whether the family is indexed by `1/2 + ℤ` (otherwise by `ℤ`).
    pub fn half_integer_index(self, f: Family) -> bool {
        use Family::*;
        match f {
            J | Psi | G => true,
            U => self.is_twisted(),
            Q => !self.is_twisted(),
            _ => false,
        }
    }

    pub fn has_central(self) -> bool {
        self == TableKind::UntwistedGamma
    }
}

impl FromStr for TableKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "untwisted-centreless" | "untwisted-centerless" => Ok(TableKind::UntwistedCentreless),
            "untwisted-gamma" => Ok(TableKind::UntwistedGamma),
            "twisted-omega" => Ok(TableKind::TwistedOmega),
            _ => Err(Error::Parse(format!("unknown table {s:?}; expected untwisted-centreless, untwisted-gamma or twisted-omega"))),
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    L,
    T,
    J,
    U,
    G,
    Phi,
    Q,
    Psi,
    TPlus,
    TMinus,
    Central,
}

impl Family {
    /// Parses the ASCII spelling used in table files.
    pub fn parse(s: &str) -> Option<Family> {
        Some(match s {
            "L" => Family::L,
            "T" => Family::T,
            "J" => Family::J,
            "U" => Family::U,
            "G" => Family::G,
            "Phi" | "Φ" => Family::Phi,
            "Q" => Family::Q,
            "Psi" | "Ψ" => Family::Psi,
            "Tp" => Family::TPlus,
            "Tm" => Family::TMinus,
            _ => return None,
        })
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Family::G | Family::Phi | Family::Q | Family::Psi)
    }

    /// The symbol with a placeholder component, e.g. `T^{+i}` becomes `("T", "+")`.
    pub fn text_parts(self) -> (&'static str, &'static str) {
        match self {
            Family::L => ("L", ""),
            Family::T => ("T", ""),
            Family::J => ("J", ""),
            Family::U => ("U", ""),
            Family::G => ("G", ""),
            Family::Phi => ("Φ", ""),
            Family::Q => ("Q", ""),
            Family::Psi => ("Ψ", ""),
            Family::TPlus => ("T", "+"),
            Family::TMinus => ("T", "-"),
            Family::Central => ("c", ""),
        }
    }

    pub fn latex(self) -> &'static str {
        match self {
            Family::L => "\\mathrm{L}",
            Family::T | Family::TPlus | Family::TMinus => "\\mathrm{T}",
            Family::J => "\\mathrm{J}",
            Family::U => "\\mathrm{U}",
            Family::G => "\\mathrm{G}",
            Family::Phi => "\\Phi",
            Family::Q => "\\mathrm{Q}",
            Family::Psi => "\\Psi",
            Family::Central => "c",
        }
    }
}

/// A labelled basis vector such as `Φ_m` or `J^i_r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NamedMode {
    pub family: Family,
    pub comp: u8,
    pub index: Exponent,
}

pub(crate) fn fmt_index(k: Exponent) -> String {
    let s = if k.is_integer() { k.numer().to_string() } else { format!("{}/{}", k.numer(), k.denom()) };
    let s = s.replace('-', "−");
    if s.chars().count() == 1 {
        s
    } else {
        format!("{{{s}}}")
    }
}

impl NamedMode {
    pub fn new(family: Family, comp: u8, index: Exponent) -> Self {
        NamedMode { family, comp, index }
    }

    pub fn central() -> Self {
        NamedMode { family: Family::Central, comp: 0, index: Exponent::from_integer(0) }
    }

    pub fn is_odd(&self) -> bool {
        self.family.is_odd()
    }

    pub fn latex(&self) -> String {
        if self.family == Family::Central {
            return "c".into();
        }
        let sup = match (self.family, self.comp) {
            (_, 0) => String::new(),
            (Family::TPlus, i) => format!("^{{+{i}}}"),
            (Family::TMinus, i) => format!("^{{-{i}}}"),
            (_, i) => format!("^{{{i}}}"),
        };
        let idx = if self.index.is_integer() {
            self.index.numer().to_string()
        } else {
            format!("{}/{}", self.index.numer(), self.index.denom())
        };
        format!("{}{sup}_{{{idx}}}", self.family.latex())
    }
}

impl fmt::Display for NamedMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family == Family::Central {
            return f.write_str("c");
        }
        let (name, sign) = self.family.text_parts();
        if self.comp > 0 {
            if sign.is_empty() {
                write!(f, "{name}^{}", self.comp)?;
            } else {
                write!(f, "{name}^{{{sign}{}}}", self.comp)?;
            }
        } else {
            f.write_str(name)?;
        }
        write!(f, "_{}", fmt_index(self.index))
    }
}

fn half() -> Exponent {
    Exponent::new(1, 2)
}

/// The element of the mode algebra a named mode stands for.
pub fn named_to_elem(kind: TableKind, x: &NamedMode) -> Result<ModeElem> {
    use Family::*;
    if x.family == Central {
        return if kind.has_central() {
            Ok(ModeElem::central())
        } else {
            Err(Error::Invalid(format!("the {kind} table has no central element")))
        };
    }
    if !kind.families().contains(&x.family) {
        return Err(Error::Invalid(format!("{x} is not a mode of the {kind} table")));
    }
    let n = kind.components(x.family);
    if (n == 0 && x.comp != 0) || (n > 0 && !(1..=n).contains(&x.comp)) {
        return Err(Error::Invalid(format!("component {} out of range for {x}", x.comp)));
    }
    let want_half = kind.half_integer_index(x.family);
    let is_half = (x.index + half()).is_integer() && !x.index.is_integer();
    if !(x.index.is_integer() || is_half) || want_half != is_half {
        return Err(Error::Invalid(format!("index {} has the wrong type for {x}", x.index)));
    }
    let i = x.comp as usize;
    let k = x.index;
    let one = Scalar::one();
    Ok(match x.family {
        L => ModeElem::gen(GenId::L, k + 1),
        T => &ModeElem::gen(GenId::t_plus(i), k) + &ModeElem::gen(GenId::t_minus(i), k),
        J => &ModeElem::gen(GenId::t_plus(i), k) - &ModeElem::gen(GenId::t_minus(i), k),
        U => ModeElem::gen(GenId::U, k),
        TPlus => ModeElem::gen(GenId::t_plus(i), k),
        TMinus => ModeElem::gen(GenId::t_minus(i), k),
        G => ModeElem::term(GenId::g(i), k + half(), one),
        Phi => ModeElem::gen(GenId::G4, k + half()),
        Q => ModeElem::gen(GenId::q(i), k - half()),
        Psi => ModeElem::gen(GenId::Q4, k - half()),
        Central => unreachable!(),
    })
}

/// Writes `x` in the named basis of `kind`, sorted by label.
pub fn decompose(kind: TableKind, x: &ModeElem) -> Result<Vec<(NamedMode, Scalar)>> {
    use Family::*;
    let mut out = Vec::new();
    let bad = |g: GenId, k: Exponent| Error::Invalid(format!("{g}⊗t^{k} is not in the {kind} mode algebra"));
    for (g, k, c) in x.terms() {
        let label = match g {
            GenId::C => {
                if !kind.has_central() {
                    return Err(bad(g, k));
                }
                NamedMode::central()
            }
            GenId::L => NamedMode::new(L, 0, k - 1),
            GenId::U => NamedMode::new(U, 0, k),
            GenId::G4 if kind.is_twisted() => NamedMode::new(Phi, 0, k - half()),
            GenId::Q4 if kind.is_twisted() => NamedMode::new(Psi, 0, k + half()),
            _ => {
                let fi = g.family_index().expect("matrix family") as u8;
                if GenId::G.contains(&g) {
                    NamedMode::new(G, fi, k - half())
                } else if GenId::Q.contains(&g) {
                    NamedMode::new(Q, fi, k + half())
                } else if !kind.is_twisted() {
                    NamedMode::new(if GenId::T_PLUS.contains(&g) { TPlus } else { TMinus }, fi, k)
                } else {
                    // T^{±i} ⊗ t^k is half of T^i_k ± J^i_k; only one of them exists.
                    let plus = GenId::T_PLUS.contains(&g);
                    let (fam, sign) = if k.is_integer() { (T, 1) } else { (J, -1) };
                    if plus {
                        let partner = x.coeff(GenId::t_minus(fi as usize), k);
                        if partner != c * &Scalar::from_integer(sign) {
                            return Err(bad(g, k));
                        }
                        NamedMode::new(fam, fi, k)
                    } else {
                        let partner = x.coeff(GenId::t_plus(fi as usize), k);
                        if *c != &partner * &Scalar::from_integer(sign) {
                            return Err(bad(g, k));
                        }
                        continue;
                    }
                }
            }
        };
        if named_to_elem(kind, &label).is_err() {
            return Err(bad(g, k));
        }
        out.push((label, c.clone()));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// All named modes of `kind` with index in `[−w, w]`, sorted.
pub fn window_modes(kind: TableKind, w: u32, with_central: bool) -> Vec<NamedMode> {
    let mut out = Vec::new();
    let w = w as i64;
    for &f in kind.families() {
        let comps: Vec<u8> = match kind.components(f) {
            0 => vec![0],
            n => (1..=n).collect(),
        };
        let indices: Vec<Exponent> = if kind.half_integer_index(f) {
            (-w..w).map(|n| Exponent::new(2 * n + 1, 2)).collect()
        } else {
            (-w..=w).map(Exponent::from_integer).collect()
        };
        for &c in &comps {
            for &k in &indices {
                out.push(NamedMode::new(f, c, k));
            }
        }
    }
    if with_central && kind.has_central() {
        out.push(NamedMode::central());
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: i64, d: i64) -> Exponent {
        Exponent::new(n, d)
    }

    #[test]
    fn twisted_labels() {
        let kind = TableKind::TwistedOmega;
        let phi = named_to_elem(kind, &NamedMode::new(Family::Phi, 0, k(2, 1))).unwrap();
        assert_eq!(phi, ModeElem::gen(GenId::G4, k(5, 2)));
        let q = named_to_elem(kind, &NamedMode::new(Family::Q, 3, k(1, 1))).unwrap();
        assert_eq!(q, ModeElem::gen(GenId::Q3, k(1, 2)));
        assert!(named_to_elem(kind, &NamedMode::new(Family::J, 1, k(1, 1))).is_err());
        assert!(named_to_elem(kind, &NamedMode::new(Family::G, 4, k(1, 2))).is_err());
    }

    #[test]
    fn decompose_round_trip() {
        for kind in TableKind::ALL {
            for x in window_modes(kind, 2, true) {
                let e = named_to_elem(kind, &x).unwrap();
                assert_eq!(decompose(kind, &e).unwrap(), vec![(x, Scalar::one())], "{kind} {x}");
            }
        }
        let stray = ModeElem::gen(GenId::Tp1, k(0, 1));
        assert!(decompose(TableKind::TwistedOmega, &stray).is_err());
    }

    #[test]
    fn window_sizes() {
        assert_eq!(window_modes(TableKind::TwistedOmega, 2, false).len(), 72);
        assert_eq!(window_modes(TableKind::UntwistedGamma, 1, true).len(), 8 * 3 + 8 * 2 + 1);
    }

    #[test]
    fn display() {
        assert_eq!(NamedMode::new(Family::J, 2, k(-1, 2)).to_string(), "J^2_{−1/2}");
        assert_eq!(NamedMode::new(Family::Phi, 0, k(0, 1)).to_string(), "Φ_0");
        assert_eq!(NamedMode::new(Family::TPlus, 1, k(3, 1)).to_string(), "T^{+1}_3");
    }
}
