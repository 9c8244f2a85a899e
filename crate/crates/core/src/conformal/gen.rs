use std::fmt;
use std::str::FromStr;

use num::rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// The 17 basis generators: the 16 of `V` followed by the central `C`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenId {
    L,
    Tp1,
    Tp2,
    Tp3,
    Tm1,
    Tm2,
    Tm3,
    U,
    G1,
    G2,
    G3,
    G4,
    Q1,
    Q2,
    Q3,
    Q4,
    C,
}

use GenId::*;

impl GenId {
    pub const ALL: [GenId; 17] = [L, Tp1, Tp2, Tp3, Tm1, Tm2, Tm3, U, G1, G2, G3, G4, Q1, Q2, Q3, Q4, C];

    /// The generators of `V` (everything except `C`).
    pub const V: [GenId; 16] = [L, Tp1, Tp2, Tp3, Tm1, Tm2, Tm3, U, G1, G2, G3, G4, Q1, Q2, Q3, Q4];

    pub const T_PLUS: [GenId; 3] = [Tp1, Tp2, Tp3];
    pub const T_MINUS: [GenId; 3] = [Tm1, Tm2, Tm3];
    pub const G: [GenId; 4] = [G1, G2, G3, G4];
    pub const Q: [GenId; 4] = [Q1, Q2, Q3, Q4];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<GenId> {
        Self::ALL.get(i).copied()
    }

    pub fn is_odd(self) -> bool {
        matches!(self, G1 | G2 | G3 | G4 | Q1 | Q2 | Q3 | Q4)
    }

    /// Conformal weight Δ.
    pub fn weight(self) -> Ratio<i64> {
        match self {
            L => Ratio::from_integer(2),
            Tp1 | Tp2 | Tp3 | Tm1 | Tm2 | Tm3 | U => Ratio::from_integer(1),
            G1 | G2 | G3 | G4 => Ratio::new(3, 2),
            Q1 | Q2 | Q3 | Q4 => Ratio::new(1, 2),
            C => Ratio::from_integer(0),
        }
    }

    /// The family index: `i` for `T^{±i}`, `p` for `G^p`, `Q^p`.
    pub fn family_index(self) -> Option<usize> {
        match self {
            Tp1 | Tm1 | G1 | Q1 => Some(1),
            Tp2 | Tm2 | G2 | Q2 => Some(2),
            Tp3 | Tm3 | G3 | Q3 => Some(3),
            G4 | Q4 => Some(4),
            _ => None,
        }
    }

    pub fn t_plus(i: usize) -> GenId {
        Self::T_PLUS[i - 1]
    }
    pub fn t_minus(i: usize) -> GenId {
        Self::T_MINUS[i - 1]
    }
    pub fn g(p: usize) -> GenId {
        Self::G[p - 1]
    }
    pub fn q(p: usize) -> GenId {
        Self::Q[p - 1]
    }

    pub fn name(self) -> &'static str {
        match self {
            L => "L",
            Tp1 => "T+1",
            Tp2 => "T+2",
            Tp3 => "T+3",
            Tm1 => "T-1",
            Tm2 => "T-2",
            Tm3 => "T-3",
            U => "U",
            G1 => "G1",
            G2 => "G2",
            G3 => "G3",
            G4 => "G4",
            Q1 => "Q1",
            Q2 => "Q2",
            Q3 => "Q3",
            Q4 => "Q4",
            C => "C",
        }
    }

    pub fn latex(self) -> String {
        match self {
            L => "\\mathrm{L}".into(),
            U => "\\mathrm{U}".into(),
            C => "c".into(),
            g if GenId::T_PLUS.contains(&g) => format!("\\mathrm{{T}}^{{+{}}}", g.family_index().unwrap()),
            g if GenId::T_MINUS.contains(&g) => format!("\\mathrm{{T}}^{{-{}}}", g.family_index().unwrap()),
            g if g.is_odd() => {
                let letter = if GenId::G.contains(&g) { "G" } else { "Q" };
                format!("\\mathrm{{{letter}}}^{{{}}}", g.family_index().unwrap())
            }
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Debug for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim().replace('−', "-");
        GenId::ALL
            .iter()
            .copied()
            .find(|g| g.name() == s || (s == "c" && *g == C))
            .ok_or_else(|| Error::Parse(format!("unknown generator {s:?}")))
    }
}

impl Serialize for GenId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for GenId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_generators() {
        assert_eq!(GenId::ALL.len(), 17);
        for (i, g) in GenId::ALL.iter().enumerate() {
            assert_eq!(g.index(), i);
            assert_eq!(g.name().parse::<GenId>().unwrap(), *g);
        }
        assert_eq!(GenId::ALL.iter().filter(|g| g.is_odd()).count(), 8);
    }

    #[test]
    fn weights() {
        assert_eq!(L.weight(), Ratio::from_integer(2));
        assert_eq!(Q3.weight(), Ratio::new(1, 2));
        assert_eq!(G2.weight(), Ratio::new(3, 2));
        assert_eq!(Tm2.weight(), Ratio::from_integer(1));
    }
}
