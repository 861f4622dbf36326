//! `ε(L,1)`: the Seshadri constant at a very general point.
//!
//! A curve with `α·β ≠ 0` through a very general point has ratio at least
//! `δ·√(L²)` whenever `δ` passes [`delta_feasibility`]. Below that threshold
//! only the two smooth fibres through the point can compute the constant, so
//! `ε(L,1)` is either `min(L·A, L·B)` or at least `δ·√(L²)`. The per-type
//! regimes below spell out when the fibre minimum falls under the threshold.

use num::{BigInt, BigRational};

use super::delta::{delta_feasibility, GenusConstraint};
use super::{EstimateKind, SeshadriEstimate};
use crate::exactnum::ExactValue;
use crate::numlattice::{to_u64, DivisorClass, SurfaceType};
use crate::{Error, Result};

/// The default `δ = 93/100`.
pub const DEFAULT_DELTA: (i64, i64) = (93, 100);

pub fn default_delta() -> BigRational {
    BigRational::new(DEFAULT_DELTA.0.into(), DEFAULT_DELTA.1.into())
}

/// `ε(L,1)` with the default `δ`.
pub fn epsilon_one(s: &SurfaceType, l: DivisorClass) -> Result<SeshadriEstimate> {
    epsilon_one_with_delta(s, l, &default_delta())
}

/// `ε(L,1)` with a caller-chosen `δ`, which must be feasible for curves
/// through a very general point.
pub fn epsilon_one_with_delta(
    s: &SurfaceType,
    l: DivisorClass,
    delta: &BigRational,
) -> Result<SeshadriEstimate> {
    l.require_ample()?;
    let feas = delta_feasibility(delta, GenusConstraint::VeryGeneral)?;
    if !feas.feasible {
        let (lo, hi) = feas.violating.map(|r| r.into_inner()).unwrap_or_default();
        return Err(Error::domain(format!(
            "δ = {delta} is not feasible: the very-general genus bound fails for m = {lo}..={hi}"
        )));
    }
    let d2 = delta * delta;
    let int = |n: i64| BigRational::from_integer(BigInt::from(n));
    let (a, b) = (int(l.a), int(l.b));
    let (lo, hi) = if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };

    // (exact value if the fibre minimum is below δ√(L²), branch label, fibre minimum)
    let (exact, branch, fibre_min) = match s.type_id {
        1 => {
            let v = (&a).min(&(int(2) * &b)).clone();
            (Some(v.clone()), "type1", v)
        }
        2 => {
            let v = int(2) * &lo;
            if int(2) * &lo <= &d2 * &hi {
                (Some(v.clone()), "type2(1)", v)
            } else {
                (None, "type2(2)", v)
            }
        }
        6 => {
            let v = int(3) * &lo;
            if int(9) * &lo <= int(2) * &d2 * &hi {
                (Some(v.clone()), "type6(1)", v)
            } else {
                (None, "type6(2)", v)
            }
        }
        t => {
            // L·A = μb through a smooth Ψ-fibre, L·B = (γ/μ)a through a Φ-fibre.
            let psi = int(s.mu as i64) * &b;
            let phi = int(s.gamma_over_mu() as i64) * &a;
            let fibre_min = (&psi).min(&phi).clone();
            // b ≤ (lower threshold)·a gives ε = μb; b ≥ (upper threshold)·a gives ε = (γ/μ)a.
            let (low_cut, high_cut) = match t {
                3 => (&d2 / int(8), int(1) / (int(2) * &d2)),
                4 => (&d2 / int(8), int(2) / &d2),
                5 => (int(2) * &d2 / int(9), int(1) / (int(2) * &d2)),
                7 => (&d2 / int(18), int(1) / (int(2) * &d2)),
                _ => unreachable!("surface types are 1..=7"),
            };
            let labels = match t {
                3 => ["type3(1)", "type3(2)", "type3(3)"],
                4 => ["type4(1)", "type4(2)", "type4(3)"],
                5 => ["type5(1)", "type5(2)", "type5(3)"],
                _ => ["type7(1)", "type7(2)", "type7(3)"],
            };
            if b <= low_cut * &a {
                (Some(psi), labels[0], fibre_min)
            } else if b >= high_cut * &a {
                (Some(phi), labels[2], fibre_min)
            } else {
                (None, labels[1], fibre_min)
            }
        }
    };

    match exact {
        Some(v) => Ok(SeshadriEstimate::exact(v, branch)),
        None => {
            let lower = ExactValue::make_surd(delta.clone(), to_u64(l.self_intersection()));
            let upper = ExactValue::rational(fibre_min);
            Ok(SeshadriEstimate::bounded(
                EstimateKind::BoundedBelow,
                lower,
                upper,
                branch,
            ))
        }
    }
}
