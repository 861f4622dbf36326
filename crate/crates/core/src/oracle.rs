//! Independent certification of Seshadri constants by exhaustive minimization.
//!
//! For a point `x` whose `Ψ`-fibre has multiplicity `n`, every irreducible
//! curve through `x` is either one of the two fibres through `x`, or a class
//! `(α,β)` with `αβ ≠ 0` and multiplicity `m` at `x` subject to
//!
//! * Bezout against the `Φ`-fibre: `(γ/μ)·α ≥ m`,
//! * Bezout against the `Ψ`-fibre: `μ·β ≥ m·n`,
//! * the genus bound `2αβ ≥ m² - m`, or `m² - m + 2` for `m ≥ 2` at a very
//!   general point.
//!
//! Minimizing `(aβ + bα)/m` over this relaxation for `m ≤ M`, and bounding all
//! `m > M` by Hodge index (`L·C/m ≥ √(2ab(1 - 1/M))`) or by the two Bezout
//! inequalities alone (`L·C/m ≥ an/μ + bμ/γ`), yields a certified lower bound. The fibre ratios are attained, hence upper bounds. When the two meet
//! the Seshadri constant is certified.
//!
//! Multiples `k·F` of a fibre are not separate candidates: their ratio is
//! `k·L·F / m` with `m ≤ k·mult_x F`, never below the ratio of `F` itself.

use std::cmp::Ordering;

use num::{BigInt, BigRational};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closedform::{
    epsilon_at_point, epsilon_min, epsilon_one, EstimateKind, PointClass, SeshadriEstimate,
};
use crate::exactnum::ExactValue;
use crate::numlattice::{intersect, DivisorClass, SurfaceType};
use crate::{Error, Result};

/// Default scan limit `M`, overridable by `SESHADRI_SCAN_LIMIT` in the CLI.
pub const DEFAULT_SCAN_LIMIT: u32 = 200;

/// A numerical class `(α,β)` with multiplicity `m` at a point on a `Ψ`-fibre
/// of multiplicity `fibre_mult`. Ordered lexicographically by `(m, α, β, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CurveCandidate {
    pub m: u32,
    pub alpha: u64,
    pub beta: u64,
    pub fibre_mult: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub point: PointClass,
    /// Certified lower bound: `min(upper, scan_min, max(tail_bound, bezout_floor))`.
    pub lower: ExactValue,
    /// Smallest fibre ratio through the point (through the worst point for
    /// [`PointClass::Arbitrary`]).
    pub upper: ExactValue,
    /// Minimum of `L·C/m` over non-fibre candidates with `m ≤ scan_limit`.
    pub scan_min: ExactValue,
    pub witnesses: Vec<CurveCandidate>,
    pub scan_limit: u32,
    /// Hodge-index bound `√(2ab(1 - 1/M))` for candidates with `m > M`.
    pub tail_bound: ExactValue,
    /// Bezout bound `an/μ + bμ/γ` on any non-fibre candidate, minimized over
    /// the fibre multiplicities `n` in play.
    pub bezout_floor: ExactValue,
}

impl OracleReport {
    pub fn is_tight(&self) -> bool {
        self.lower == self.upper
    }
}

fn div_ceil(n: u128, d: u128) -> u128 {
    n.div_ceil(d)
}

/// One fibre configuration to scan: multiplicity `n` of the `Ψ`-fibre through
/// the point and whether the very-general genus bound applies.
#[derive(Clone, Copy)]
struct Scan {
    a: u128,
    b: u128,
    gamma: u128,
    mu: u128,
    n: u128,
    very_general: bool,
}

impl Scan {
    fn genus_bound(&self, m: u128) -> u128 {
        let base = m * m - m;
        if self.very_general && m >= 2 {
            base + 2
        } else {
            base
        }
    }

    /// Minimum cost `aβ + bα` at multiplicity `m`, with every minimizing `(α,β)`
    /// in increasing `α`.
    ///
    /// For fixed `α` the cheapest admissible `β` is `max(β0, ⌈G/α⌉)`. Once
    /// `α ≥ ⌈G/β0⌉` that is `β0` and the cost only grows, so the scan over `α`
    /// is finite and exact.
    fn min_cost(&self, m: u128) -> (u128, Vec<(u128, u128)>) {
        let alpha0 = div_ceil(m * self.mu, self.gamma).max(1);
        let beta0 = div_ceil(m * self.n, self.mu).max(1);
        let g = div_ceil(self.genus_bound(m), 2);
        let alpha_hi = alpha0.max(div_ceil(g, beta0));
        let mut best = u128::MAX;
        let mut args = Vec::new();
        for alpha in alpha0..=alpha_hi {
            let beta = beta0.max(div_ceil(g, alpha));
            let cost = self.a * beta + self.b * alpha;
            match cost.cmp(&best) {
                Ordering::Less => {
                    best = cost;
                    args.clear();
                    args.push((alpha, beta));
                }
                Ordering::Equal => args.push((alpha, beta)),
                Ordering::Greater => {}
            }
        }
        (best, args)
    }
}

/// Running minimum of `cost/m` with its witnesses.
struct RatioMin {
    cost: u128,
    m: u128,
    witnesses: Vec<CurveCandidate>,
}

impl RatioMin {
    fn offer(&mut self, cost: u128, m: u128, args: &[(u128, u128)], n: u128) {
        let order = if self.witnesses.is_empty() {
            Ordering::Less
        } else {
            (cost * self.m).cmp(&(self.cost * m))
        };
        if order == Ordering::Greater {
            return;
        }
        if order == Ordering::Less {
            self.cost = cost;
            self.m = m;
            self.witnesses.clear();
        }
        self.witnesses
            .extend(args.iter().map(|&(alpha, beta)| CurveCandidate {
                m: m as u32,
                alpha: alpha as u64,
                beta: beta as u64,
                fibre_mult: n as u32,
            }));
    }
}

fn rational(n: i128, d: i128) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Bounds `ε(L,x)` for the given point class by exhaustive minimization.
pub fn certify_point(
    s: &SurfaceType,
    l: DivisorClass,
    x: PointClass,
    scan_limit: u32,
) -> Result<OracleReport> {
    l.require_ample()?;
    x.validate(s)?;
    if scan_limit < 2 {
        return Err(Error::domain(format!(
            "scan limit must be at least 2, got {scan_limit}"
        )));
    }
    let (fibre_mults, very_general) = match x {
        PointClass::VeryGeneral => (vec![1], true),
        PointClass::OnSingularFibre(n) => (vec![n], false),
        PointClass::Arbitrary => {
            let mut v = vec![1];
            v.extend(s.distinct_mults());
            (v, false)
        }
    };

    let (psi, phi) = s.fibre_classes();
    let upper = fibre_mults
        .iter()
        .map(|&n| {
            let through_phi = rational(intersect(l, phi), 1);
            let through_psi = rational(intersect(l, psi), n as i128);
            through_phi.min(through_psi)
        })
        .min()
        .expect("at least one fibre configuration");

    let mut best = RatioMin {
        cost: 0,
        m: 1,
        witnesses: Vec::new(),
    };
    for &n in &fibre_mults {
        let scan = Scan {
            a: l.a as u128,
            b: l.b as u128,
            gamma: s.gamma as u128,
            mu: s.mu as u128,
            n: n as u128,
            very_general,
        };
        for m in 1..=scan_limit as u128 {
            let (cost, args) = scan.min_cost(m);
            best.offer(cost, m, &args, n as u128);
        }
    }
    best.witnesses.sort_unstable();
    best.witnesses.dedup();

    let l2 = l.self_intersection();
    let m = scan_limit as i128;
    let tail_bound = ExactValue::sqrt_of(&rational(l2 * (m - 1), m))?;
    let scan_min = ExactValue::rational(rational(best.cost as i128, best.m as i128));
    let bezout_floor = fibre_mults
        .iter()
        .map(|&n| {
            rational(l.a as i128 * n as i128, s.mu as i128)
                + rational(l.b as i128 * s.mu as i128, s.gamma as i128)
        })
        .min()
        .map(ExactValue::rational)
        .expect("at least one fibre configuration");
    let upper = ExactValue::rational(upper);
    let beyond_scan = tail_bound.clone().max(bezout_floor.clone());
    let lower = upper.clone().min(scan_min.clone()).min(beyond_scan);

    Ok(OracleReport {
        point: x,
        lower,
        upper,
        scan_min,
        witnesses: best.witnesses,
        scan_limit,
        tail_bound,
        bezout_floor,
    })
}

/// Which closed-form query a check exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Query {
    /// `ε(L)`, checked against the oracle at an arbitrary point.
    EpsilonMin,
    /// `ε(L,1)`, checked against the oracle at a very general point.
    EpsilonOne,
    AtPoint(PointClass),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub query: Query,
    pub estimate: SeshadriEstimate,
    pub report: OracleReport,
    pub pass: bool,
    /// An exact estimate with `lower = upper = value` from the oracle.
    pub certified: bool,
}

/// All checks for one bundle of the grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub type_id: u8,
    pub bundle: DivisorClass,
    pub pass: bool,
    pub checks: Vec<Check>,
}

/// Compares a closed-form estimate with an oracle report. Returns
/// `(pass, certified)`.
///
/// An exact value must lie in `[lower, upper]` and equal both when they meet.
/// A lower bound must not exceed the oracle's lower bound, and any upper bound
/// must not undercut it.
pub fn verdict(est: &SeshadriEstimate, report: &OracleReport) -> (bool, bool) {
    match est.kind {
        EstimateKind::Exact => {
            let v = ExactValue::rational(est.value.clone().expect("exact estimates carry a value"));
            let inside = report.lower <= v && v <= report.upper;
            let tight = report.is_tight();
            let certified = tight && v == report.lower;
            (inside && (!tight || certified), certified)
        }
        EstimateKind::CertifiedRational => {
            let ok = est.upper.as_ref().is_none_or(|u| *u >= report.lower);
            (ok, false)
        }
        EstimateKind::BoundedBelow | EstimateKind::UnknownWithBound => {
            let lower_ok = est.lower.as_ref().is_some_and(|lo| report.lower >= *lo);
            let upper_ok = est.upper.as_ref().is_none_or(|u| *u >= report.lower);
            (lower_ok && upper_ok, false)
        }
    }
}

fn check(query: Query, estimate: SeshadriEstimate, report: OracleReport) -> Check {
    let (pass, certified) = verdict(&estimate, &report);
    Check {
        query,
        estimate,
        report,
        pass,
        certified,
    }
}

/// Runs every closed-form query for one bundle against the oracle.
pub fn cross_check_cell(s: &SurfaceType, l: DivisorClass, scan_limit: u32) -> Result<CellReport> {
    let arbitrary = certify_point(s, l, PointClass::Arbitrary, scan_limit)?;
    let very_general = certify_point(s, l, PointClass::VeryGeneral, scan_limit)?;
    let mut checks = vec![
        check(Query::EpsilonMin, epsilon_min(s, l)?, arbitrary.clone()),
        check(Query::EpsilonOne, epsilon_one(s, l)?, very_general),
        check(
            Query::AtPoint(PointClass::Arbitrary),
            epsilon_at_point(s, l, PointClass::Arbitrary)?,
            arbitrary,
        ),
    ];
    for n in s.distinct_mults() {
        let x = PointClass::OnSingularFibre(n);
        checks.push(check(
            Query::AtPoint(x),
            epsilon_at_point(s, l, x)?,
            certify_point(s, l, x, scan_limit)?,
        ));
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(CellReport {
        type_id: s.type_id,
        bundle: l,
        pass,
        checks,
    })
}

/// Cross-checks every ample `(a,b)` with `a ≤ a_max`, `b ≤ b_max`, in
/// row-major order. Cells run in parallel; the output order is fixed.
pub fn cross_check_region(
    s: &SurfaceType,
    a_max: i64,
    b_max: i64,
    scan_limit: u32,
) -> Result<Vec<CellReport>> {
    if a_max < 1 || b_max < 1 {
        return Err(Error::domain(format!(
            "grid bounds must be positive, got {a_max}×{b_max}"
        )));
    }
    let cells: Vec<DivisorClass> = (1..=a_max)
        .flat_map(|a| (1..=b_max).map(move |b| DivisorClass::new(a, b)))
        .collect();
    cells
        .par_iter()
        .map(|&l| cross_check_cell(s, l, scan_limit))
        .collect()
}
