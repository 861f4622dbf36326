//! The numerical lattice `Num(X)` of a hyperelliptic surface.
//!
//! Every hyperelliptic surface `X = (A × B)/G` falls in one of seven types.
//! With `γ = |G|` and `μ` the lcm of the multiplicities of the singular fibres
//! of `Ψ: X → B/G`, the classes `e1 = A/μ` and `e2 = (μ/γ)B` form a basis of
//! `Num(X)`. Since `A² = B² = 0` and `A·B = γ`, the form in this basis is the
//! hyperbolic plane: `e1² = e2² = 0`, `e1·e2 = 1`.

use std::fmt;

use num::{BigRational, Integer, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One row of the classification table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurfaceType {
    pub type_id: u8,
    pub group_name: &'static str,
    /// Order of the group `G`.
    pub gamma: u32,
    /// lcm of the singular fibre multiplicities.
    pub mu: u32,
    /// Multiplicities of the singular fibres of `Ψ`.
    pub sing_mults: &'static [u32],
}

const SURFACE_TABLE: [SurfaceType; 7] = [
    SurfaceType {
        type_id: 1,
        group_name: "Z2",
        gamma: 2,
        mu: 2,
        sing_mults: &[2, 2, 2, 2],
    },
    SurfaceType {
        type_id: 2,
        group_name: "Z2×Z2",
        gamma: 4,
        mu: 2,
        sing_mults: &[2, 2, 2, 2],
    },
    SurfaceType {
        type_id: 3,
        group_name: "Z4",
        gamma: 4,
        mu: 4,
        sing_mults: &[2, 4, 4],
    },
    SurfaceType {
        type_id: 4,
        group_name: "Z4×Z2",
        gamma: 8,
        mu: 4,
        sing_mults: &[2, 4, 4],
    },
    SurfaceType {
        type_id: 5,
        group_name: "Z3",
        gamma: 3,
        mu: 3,
        sing_mults: &[3, 3, 3],
    },
    SurfaceType {
        type_id: 6,
        group_name: "Z3×Z3",
        gamma: 9,
        mu: 3,
        sing_mults: &[3, 3, 3],
    },
    SurfaceType {
        type_id: 7,
        group_name: "Z6",
        gamma: 6,
        mu: 6,
        sing_mults: &[2, 3, 6],
    },
];

/// Looks up the surface type `1..=7`.
pub fn surface_params(type_id: u8) -> Result<SurfaceType> {
    match type_id {
        1..=7 => Ok(SURFACE_TABLE[type_id as usize - 1]),
        _ => Err(Error::domain(format!(
            "surface type must be in 1..=7, got {type_id}"
        ))),
    }
}

/// All seven surface types in table order.
pub fn all_surfaces() -> &'static [SurfaceType; 7] {
    &SURFACE_TABLE
}

impl SurfaceType {
    /// `γ/μ`, always an integer (1, 2 or 3).
    pub fn gamma_over_mu(&self) -> u32 {
        self.gamma / self.mu
    }

    /// Types 1, 3, 5 and 7, where `γ = μ`.
    pub fn is_odd(&self) -> bool {
        self.type_id % 2 == 1
    }

    /// Distinct multiplicities of the singular fibres, ascending.
    pub fn distinct_mults(&self) -> Vec<u32> {
        let mut v = self.sing_mults.to_vec();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Class of a smooth fibre `A` of `Ψ` and of a fibre `B` of `Φ`.
    pub fn fibre_classes(&self) -> (DivisorClass, DivisorClass) {
        (
            DivisorClass::new(self.mu as i64, 0),
            DivisorClass::new(0, self.gamma_over_mu() as i64),
        )
    }

    /// Whether `(0,b)`, i.e. `b·(μ/γ)B`, is effective: `b·μ/γ ∈ N`.
    pub fn is_effective_vertical(&self, b: &BigRational) -> bool {
        let scaled = b * BigRational::new(self.mu.into(), self.gamma.into());
        scaled.is_integer() && !scaled.is_negative()
    }

    fn self_check(&self) -> bool {
        let lcm = self.sing_mults.iter().fold(1u32, |acc, &m| acc.lcm(&m));
        let max = self.sing_mults.iter().copied().max().unwrap_or(0);
        lcm == self.mu && max == self.mu && self.gamma.is_multiple_of(self.mu)
    }
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "type {} (G = {}, γ = {}, μ = {}, mults {:?})",
            self.type_id, self.group_name, self.gamma, self.mu, self.sing_mults
        )
    }
}

/// Verifies the hard-coded table against its structural invariants.
pub fn table_self_check() -> bool {
    SURFACE_TABLE
        .iter()
        .enumerate()
        .all(|(i, s)| s.type_id as usize == i + 1 && s.self_check())
}

/// A class `a·e1 + b·e2` in `Num(X)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass {
    pub a: i64,
    pub b: i64,
}

impl DivisorClass {
    pub const fn new(a: i64, b: i64) -> Self {
        DivisorClass { a, b }
    }

    /// `L² = 2ab`.
    pub fn self_intersection(&self) -> i128 {
        intersect(*self, *self)
    }

    pub fn is_ample(&self) -> bool {
        is_ample(*self)
    }

    pub fn scaled(&self, k: i64) -> Self {
        DivisorClass::new(self.a * k, self.b * k)
    }

    pub(crate) fn require_ample(&self) -> Result<()> {
        if self.is_ample() {
            Ok(())
        } else {
            Err(Error::NotAmple {
                a: self.a,
                b: self.b,
            })
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl std::str::FromStr for DivisorClass {
    type Err = Error;

    /// Parses `a,b` (optionally parenthesised). Rational coordinates are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = t
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected a,b but got {s:?}")))?;
        let coord = |x: &str| {
            x.trim().parse::<i64>().map_err(|_| {
                Error::Parse(format!("divisor coordinates must be integers, got {x:?}"))
            })
        };
        Ok(DivisorClass::new(coord(a)?, coord(b)?))
    }
}

/// Intersection number `D1·D2 = a1·b2 + a2·b1`.
pub fn intersect(d1: DivisorClass, d2: DivisorClass) -> i128 {
    d1.a as i128 * d2.b as i128 + d2.a as i128 * d1.b as i128
}

/// A class is ample iff both coordinates are positive.
pub fn is_ample(l: DivisorClass) -> bool {
    l.a > 0 && l.b > 0
}

/// `L·A` and `L·B` for the smooth fibre classes of `Ψ` and `Φ`.
pub fn fibre_degrees(s: &SurfaceType, l: DivisorClass) -> (i128, i128) {
    let (psi, phi) = s.fibre_classes();
    (intersect(l, psi), intersect(l, phi))
}

pub(crate) fn to_u64(x: i128) -> u64 {
    x.to_u64().expect("value out of u64 range")
}
