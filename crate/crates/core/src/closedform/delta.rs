//! Which `δ` make the Hodge-index argument go through.
//!
//! If a curve of multiplicity `m` had `L·C/m < δ√(L²)`, Hodge index would give
//! `C² < δ²m²`. Against the genus lower bounds this is impossible exactly when
//!
//! * very general point: `(1-δ²)m² - m + 2 > 0` for every `m ≥ 2`,
//! * arbitrary point: `(1-δ²)m² - m ≥ 0` for every `m ≥ 2`.
//!
//! Both are quadratics in `m`, positive for `m > 1/(1-δ²)`, so the violating
//! set is an integer interval located by bisection in exact arithmetic.

use std::ops::RangeInclusive;

use num::{BigInt, BigRational, One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenusConstraint {
    /// `C² ≥ m² - m + 2` through a very general point.
    VeryGeneral,
    /// `C² ≥ m² - m` through any point.
    General,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaFeasibility {
    pub feasible: bool,
    /// The violating multiplicities, always a contiguous range.
    pub violating: Option<RangeInclusive<u64>>,
}

impl DeltaFeasibility {
    pub fn violating_m(&self) -> Vec<u64> {
        self.violating
            .clone()
            .map(|r| r.collect())
            .unwrap_or_default()
    }

    pub fn violating_count(&self) -> u64 {
        self.violating
            .as_ref()
            .map_or(0, |r| r.end() - r.start() + 1)
    }
}

pub(crate) fn validate_delta(delta: &BigRational) -> Result<()> {
    if !delta.is_positive() || *delta >= BigRational::one() {
        return Err(Error::domain(format!(
            "δ must lie strictly between 0 and 1, got {delta}"
        )));
    }
    Ok(())
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Value of the constraint quadratic at `m`; a violation is `< 0` for the
/// general bound and `≤ 0` for the very general one.
pub(crate) fn constraint_value(
    c: &BigRational,
    m: u64,
    constraint: GenusConstraint,
) -> BigRational {
    let m = BigRational::from_integer(m.into());
    let base = c * &m * &m - &m;
    match constraint {
        GenusConstraint::VeryGeneral => base + int(2),
        GenusConstraint::General => base,
    }
}

fn to_m(x: BigInt) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| Error::domain("violating range exceeds 64-bit multiplicities"))
}

/// Largest `m` in `lo..=hi` with `pred(m)`, given `pred` holds at `lo` and is
/// monotone (true then false) on the range.
fn last_true(mut lo: u64, mut hi: u64, pred: impl Fn(u64) -> bool) -> u64 {
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// Checks `δ` against the chosen genus bound.
pub fn delta_feasibility(
    delta: &BigRational,
    constraint: GenusConstraint,
) -> Result<DeltaFeasibility> {
    validate_delta(delta)?;
    let c = BigRational::one() - delta * delta;
    // Both quadratics are positive for m > 1/c.
    let beyond = to_m((BigRational::one() / &c).floor().to_integer())?
        .saturating_add(1)
        .max(2);
    let violates = |m: u64| {
        let v = constraint_value(&c, m, constraint);
        match constraint {
            GenusConstraint::VeryGeneral => !v.is_positive(),
            GenusConstraint::General => v.is_negative(),
        }
    };
    let violating = match constraint {
        GenusConstraint::VeryGeneral => {
            // Convex in m with its minimum at 1/2c; the violations, if any,
            // form an interval around the best integer there.
            let vertex = to_m((BigRational::one() / (int(2) * &c)).floor().to_integer())?.max(2);
            let centre = [vertex, vertex + 1]
                .into_iter()
                .min_by_key(|&m| constraint_value(&c, m, constraint))
                .expect("two candidates");
            if violates(centre) {
                let hi = last_true(centre, beyond, violates);
                let lo = if violates(2) {
                    2
                } else {
                    // first violation: one past the last non-violating m below centre
                    last_true(2, centre, |m| !violates(m)) + 1
                };
                Some(lo..=hi)
            } else {
                None
            }
        }
        // m(c·m - 1) < 0 exactly for m < 1/c.
        GenusConstraint::General => violates(2).then(|| 2..=last_true(2, beyond, violates)),
    };
    Ok(DeltaFeasibility {
        feasible: violating.is_none(),
        violating,
    })
}

/// `sup δ²` over feasible `δ`, i.e. the minimum over integers `m ≥ 2` of the
/// genus bound divided by `m²`, with the smallest minimizing `m`.
pub fn max_feasible_delta(constraint: GenusConstraint) -> (BigRational, u64) {
    let h = |m: u64| {
        let mm = BigRational::from_integer((m * m).into());
        let genus = match constraint {
            GenusConstraint::VeryGeneral => m * m - m + 2,
            GenusConstraint::General => m * m - m,
        };
        BigRational::from_integer(genus.into()) / mm
    };
    // 1 - t + 2t² (resp. 1 - t) in t = 1/m is unimodal, so the integer scan
    // stops at the first increase.
    let mut best = (h(2), 2);
    let mut m = 3;
    loop {
        let v = h(m);
        if v < best.0 {
            best = (v, m);
        } else if v > best.0 {
            return best;
        }
        m += 1;
    }
}
