//! Kodaira fiber types of y² = x³ + a x + b from vanishing orders.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::FibrationError;
use crate::lattices::{IntegerLattice, LatticeName};

/// A t-adic valuation; `None` stands for an identically vanishing coefficient.
pub type Order = Option<u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    /// I_n, n ≥ 0 (I₀ is a smooth fiber).
    I(u32),
    II,
    III,
    IV,
    /// I_n*, n ≥ 0.
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    /// Topological Euler number of the fiber.
    pub fn euler_number(&self) -> u32 {
        match *self {
            KodairaType::I(n) => n,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IStar(n) => n + 6,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }

    /// Root-lattice label of the components missing the zero section, negated.
    pub fn lattice_label(&self) -> Option<(LatticeName, usize)> {
        match *self {
            KodairaType::I(n) if n >= 2 => Some((LatticeName::A, n as usize - 1)),
            KodairaType::I(_) | KodairaType::II => None,
            KodairaType::III => Some((LatticeName::A, 1)),
            KodairaType::IV => Some((LatticeName::A, 2)),
            KodairaType::IStar(n) => Some((LatticeName::D, n as usize + 4)),
            KodairaType::IVStar => Some((LatticeName::E, 6)),
            KodairaType::IIIStar => Some((LatticeName::E, 7)),
            KodairaType::IIStar => Some((LatticeName::E, 8)),
        }
    }

    /// The negative definite lattice spanned by non-identity fiber components.
    pub fn lattice_contribution(&self) -> Option<IntegerLattice> {
        self.lattice_label().map(|(name, n)| {
            IntegerLattice::named(name, n).and_then(|l| l.rescale_i64(-1)).expect("valid root lattice")
        })
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
        }
    }
}

impl FromStr for KodairaType {
    type Err = FibrationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FibrationError::UnknownFiberType(s.to_string());
        Ok(match s {
            "II" => KodairaType::II,
            "III" => KodairaType::III,
            "IV" => KodairaType::IV,
            "IV*" => KodairaType::IVStar,
            "III*" => KodairaType::IIIStar,
            "II*" => KodairaType::IIStar,
            _ => {
                let rest = s.strip_prefix('I').ok_or_else(bad)?;
                match rest.strip_suffix('*') {
                    Some(n) => KodairaType::IStar(n.parse().map_err(|_| bad())?),
                    None => KodairaType::I(rest.parse().map_err(|_| bad())?),
                }
            }
        })
    }
}

impl Serialize for KodairaType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for KodairaType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

fn show(o: Order) -> String {
    o.map_or_else(|| "inf".to_string(), |v| v.to_string())
}

/// Kodaira type from (ord a, ord b, ord Δ), Δ = 4a³ + 27b².
///
/// The orders must be consistent: ord Δ = min(3·ord a, 2·ord b) when the
/// two differ, and ord Δ ≥ that common value otherwise.
pub fn kodaira_type(ord_a: Order, ord_b: Order, ord_disc: u32) -> Result<KodairaType, FibrationError> {
    let inconsistent = || FibrationError::InconsistentOrders { ord_a: show(ord_a), ord_b: show(ord_b), ord_disc };
    let a3 = ord_a.map(|v| 3 * v);
    let b2 = ord_b.map(|v| 2 * v);
    match (a3, b2) {
        (None, None) => return Err(inconsistent()),
        (Some(x), Some(y)) if x == y => {
            if ord_disc < x {
                return Err(inconsistent());
            }
        }
        _ => {
            let m = match (a3, b2) {
                (Some(x), Some(y)) => x.min(y),
                (Some(x), None) | (None, Some(x)) => x,
                (None, None) => unreachable!(),
            };
            if ord_disc != m {
                return Err(inconsistent());
            }
        }
    }
    let a = ord_a.unwrap_or(u32::MAX);
    let b = ord_b.unwrap_or(u32::MAX);
    if a >= 4 && b >= 6 {
        return Err(FibrationError::NonMinimal { ord_a: show(ord_a), ord_b: show(ord_b) });
    }
    Ok(if a == 0 || b == 0 {
        KodairaType::I(ord_disc)
    } else if b == 1 {
        KodairaType::II
    } else if a == 1 {
        KodairaType::III
    } else if b == 2 {
        KodairaType::IV
    } else if a == 2 && b == 3 {
        KodairaType::IStar(ord_disc - 6)
    } else if b == 3 || a == 2 {
        KodairaType::IStar(0)
    } else if b == 4 {
        KodairaType::IVStar
    } else if a == 3 {
        KodairaType::IIIStar
    } else {
        // b == 5, a ≥ 4
        KodairaType::IIStar
    })
}
