//! Closed-form Seshadri constants and bounds.
//!
//! Each query returns a [`SeshadriEstimate`] tagged with the case analysis
//! that produced it. Thresholds are compared in exact rational arithmetic.

mod delta;
pub(crate) mod general;

use std::fmt;

use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};

use crate::exactnum::ExactValue;
use crate::numlattice::{DivisorClass, SurfaceType};
use crate::{Error, Result};

pub use delta::{delta_feasibility, max_feasible_delta, DeltaFeasibility, GenusConstraint};
pub use general::{epsilon_one, epsilon_one_with_delta, DEFAULT_DELTA};

/// Provenance label for estimates obtained by meeting fibre upper bounds with
/// Bezout lower bounds at a point, rather than from a named theorem.
pub const FIBRE_BEZOUT: &str = "fibre-bezout";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateKind {
    Exact,
    CertifiedRational,
    BoundedBelow,
    UnknownWithBound,
}

impl fmt::Display for EstimateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EstimateKind::Exact => "exact",
            EstimateKind::CertifiedRational => "certified rational",
            EstimateKind::BoundedBelow => "bounded below",
            EstimateKind::UnknownWithBound => "unknown with bound",
        })
    }
}

/// Outcome of a closed-form query.
///
/// * `Exact` carries `value`.
/// * `CertifiedRational` proves rationality without a value; `upper` is the
///   sub-maximal fibre ratio witnessing it.
/// * `BoundedBelow` and `UnknownWithBound` carry `lower` and usually `upper`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeshadriEstimate {
    pub kind: EstimateKind,
    #[serde(with = "rational_opt")]
    pub value: Option<BigRational>,
    pub lower: Option<ExactValue>,
    pub upper: Option<ExactValue>,
    pub provenance: String,
}

impl SeshadriEstimate {
    pub(crate) fn exact(value: BigRational, provenance: &str) -> Self {
        SeshadriEstimate {
            kind: EstimateKind::Exact,
            value: Some(value),
            lower: None,
            upper: None,
            provenance: provenance.to_owned(),
        }
    }

    pub(crate) fn exact_int(value: i128, provenance: &str) -> Self {
        Self::exact(BigRational::from_integer(BigInt::from(value)), provenance)
    }

    pub(crate) fn certified_rational(upper: ExactValue, provenance: &str) -> Self {
        SeshadriEstimate {
            kind: EstimateKind::CertifiedRational,
            value: None,
            lower: None,
            upper: Some(upper),
            provenance: provenance.to_owned(),
        }
    }

    pub(crate) fn bounded(
        kind: EstimateKind,
        lower: ExactValue,
        upper: ExactValue,
        provenance: &str,
    ) -> Self {
        debug_assert!(lower < upper, "{lower} < {upper}");
        SeshadriEstimate {
            kind,
            value: None,
            lower: Some(lower),
            upper: Some(upper),
            provenance: provenance.to_owned(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.kind == EstimateKind::Exact
    }

    /// Best known lower bound: the value itself when exact.
    pub fn lower_bound(&self) -> Option<ExactValue> {
        match &self.value {
            Some(v) => Some(ExactValue::rational(v.clone())),
            None => self.lower.clone(),
        }
    }
}

/// Where the point `x` sits relative to the fibrations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    /// Off the singular fibres and off every countable exceptional locus.
    VeryGeneral,
    /// On a singular fibre of `Ψ` of multiplicity `n`.
    OnSingularFibre(u32),
    /// Any point whatsoever: lower bounds hold at every point and upper bounds
    /// at the worst one, so the estimate bounds `ε(L)`.
    Arbitrary,
}

impl PointClass {
    pub fn validate(&self, s: &SurfaceType) -> Result<()> {
        match *self {
            PointClass::OnSingularFibre(n) if !s.sing_mults.contains(&n) => {
                Err(Error::InvalidPoint(format!(
                    "type {} has no singular fibre of multiplicity {n} (multiplicities {:?})",
                    s.type_id, s.sing_mults
                )))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointClass::VeryGeneral => f.write_str("very general point"),
            PointClass::OnSingularFibre(n) => {
                write!(f, "point on a singular fibre of multiplicity {n}")
            }
            PointClass::Arbitrary => f.write_str("arbitrary point"),
        }
    }
}

pub(crate) fn sqrt_l2(l: DivisorClass) -> ExactValue {
    ExactValue::make_surd(
        BigRational::from_integer(1.into()),
        crate::numlattice::to_u64(l.self_intersection()),
    )
}

fn ratio(n: i128, d: i128) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Least Seshadri constant `ε(L) = inf_x ε(L,x)`.
pub fn epsilon_min(s: &SurfaceType, l: DivisorClass) -> Result<SeshadriEstimate> {
    l.require_ample()?;
    let (a, b) = (l.a as i128, l.b as i128);
    if s.is_odd() {
        return Ok(SeshadriEstimate::exact_int(a.min(b), "odd types"));
    }
    // Fibre of Φ through any point: ratio (γ/μ)a. Singular fibre of Ψ of
    // maximal multiplicity: ratio b.
    let phi = s.gamma_over_mu() as i128 * a;
    let fibre_min = ExactValue::rational(ratio(phi.min(b), 1));
    let est = match s.type_id {
        2 if b <= a => SeshadriEstimate::exact_int(b, "even-1(1)"),
        2 if b >= 3 * a => SeshadriEstimate::exact_int(2 * a, "even-2(1)"),
        2 => SeshadriEstimate::certified_rational(fibre_min, "rational (type 2)"),
        4 if 2 * b <= a => SeshadriEstimate::exact_int(b, "even-1(2)"),
        4 if 2 * b >= 7 * a => SeshadriEstimate::exact_int(2 * a, "even-2(2)"),
        4 => SeshadriEstimate::certified_rational(fibre_min, "rational (type 4)"),
        6 if 2 * b <= a => SeshadriEstimate::exact_int(b, "even-1(2)"),
        6 if b >= 8 * a => SeshadriEstimate::exact_int(3 * a, "even-2(3)"),
        // b ∉ (2a, 9a/2); at both endpoints L² is a perfect square.
        6 if b <= 2 * a || 2 * b >= 9 * a => {
            SeshadriEstimate::certified_rational(fibre_min, "type6-rational")
        }
        6 => {
            let root = sqrt_l2(l);
            let lower = root.scale(&ratio(7, 10));
            SeshadriEstimate::bounded(EstimateKind::UnknownWithBound, lower, root, "type6-bound")
        }
        _ => unreachable!("even types are 2, 4 and 6"),
    };
    Ok(est)
}

/// Regimes where `ε(L,x)` is the same at every point.
fn uniform_regime(s: &SurfaceType, l: DivisorClass) -> Option<SeshadriEstimate> {
    let (a, b) = (l.a as i128, l.b as i128);
    match s.type_id {
        2 if b >= 3 * a => Some(SeshadriEstimate::exact_int(2 * a, "even-2(1)")),
        4 if 2 * b >= 7 * a => Some(SeshadriEstimate::exact_int(2 * a, "even-2(2)")),
        6 if b >= 8 * a => Some(SeshadriEstimate::exact_int(3 * a, "even-2(3)")),
        _ => None,
    }
}

/// Smallest Seshadri ratio of a fibre through a point whose `Ψ`-fibre has
/// multiplicity `n`: the `Φ`-fibre gives `(γ/μ)a`, the reduced `Ψ`-fibre `μb/n`.
pub(crate) fn fibre_ratio(s: &SurfaceType, l: DivisorClass, n: u32) -> BigRational {
    let phi = ratio(s.gamma_over_mu() as i128 * l.a as i128, 1);
    let psi = ratio(s.mu as i128 * l.b as i128, n as i128);
    phi.min(psi)
}

/// Bezout bound for a non-fibre curve `(α,β)` of multiplicity `m` at the point:
/// `(γ/μ)α ≥ m` and `μβ ≥ mn` give `L·C/m ≥ bμ/γ + an/μ`.
fn non_fibre_bound(s: &SurfaceType, l: DivisorClass, n: u32) -> BigRational {
    ratio(l.b as i128 * s.mu as i128, s.gamma as i128)
        + ratio(l.a as i128 * n as i128, s.mu as i128)
}

/// `ε(L,x)` for a point of the given class.
pub fn epsilon_at_point(
    s: &SurfaceType,
    l: DivisorClass,
    x: PointClass,
) -> Result<SeshadriEstimate> {
    l.require_ample()?;
    x.validate(s)?;
    let mults = match x {
        PointClass::VeryGeneral => return epsilon_one(s, l),
        PointClass::OnSingularFibre(n) => vec![n],
        PointClass::Arbitrary => {
            let mut v = vec![1];
            v.extend(s.distinct_mults());
            v
        }
    };
    if let Some(est) = uniform_regime(s, l) {
        return Ok(est);
    }
    if s.is_odd() && x == PointClass::OnSingularFibre(s.mu) {
        return Ok(SeshadriEstimate::exact_int(
            l.a.min(l.b) as i128,
            "odd types",
        ));
    }

    let upper = mults
        .iter()
        .map(|&n| fibre_ratio(s, l, n))
        .min()
        .expect("nonempty");
    let bezout = mults
        .iter()
        .map(|&n| fibre_ratio(s, l, n).min(non_fibre_bound(s, l, n)))
        .min()
        .expect("nonempty");

    let mut lower = ExactValue::rational(bezout);
    let mut provenance = FIBRE_BEZOUT.to_owned();
    // ε(L,x) ≥ ε(L) at every point.
    let global = epsilon_min(s, l)?;
    if let Some(g) = global.lower_bound() {
        if g > lower {
            lower = g;
            provenance = global.provenance;
        }
    }
    let upper = ExactValue::rational(upper);
    debug_assert!(lower <= upper);
    if lower == upper {
        let value = upper
            .as_rational()
            .expect("fibre ratios are rational")
            .clone();
        return Ok(SeshadriEstimate::exact(value, &provenance));
    }
    Ok(SeshadriEstimate::bounded(
        EstimateKind::BoundedBelow,
        lower,
        upper,
        &provenance,
    ))
}

mod rational_opt {
    use num::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.serialize_some(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        use serde::de::Error as _;
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(D::Error::custom))
            .transpose()
    }
}
