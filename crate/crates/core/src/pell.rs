//! Pell equations and the Pell-type lower bound on `ε(L,1)`.
//!
//! For `d = L²` not a square and a solution `(p,q)` of `q² - d·p² = 1`, the
//! Seshadri constant at a very general point satisfies `ε(L,1) ≥ p·d/q` unless
//! it lies in a finite exceptional set. [`ExcSet`] models that set in the form
//! `{1, …, ⌊√d⌋} ∪ {r/s : 1 ≤ r/s < pd/q, 2 ≤ s < q²}`, counting reduced
//! fractions `r/s` only.

use std::cmp::Ordering;

use num::integer::Roots;
use num::{BigInt, BigRational, Integer, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::closedform::{epsilon_one, EstimateKind};
use crate::exactnum::ExactValue;
use crate::numlattice::{to_u64, DivisorClass, SurfaceType};
use crate::{Error, Result};

/// A solution of `q² - d·p² = 1`: `p` is the x-value, `q` the y-value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellSolution {
    #[serde(with = "bigint_str")]
    pub p: BigInt,
    #[serde(with = "bigint_str")]
    pub q: BigInt,
}

impl PellSolution {
    pub fn satisfies(&self, d: u64) -> bool {
        &self.q * &self.q - BigInt::from(d) * &self.p * &self.p == BigInt::one()
    }
}

fn check_radicand(d: u64) -> Result<u64> {
    let root = d.sqrt();
    if d < 2 || root * root == d {
        return Err(Error::domain(format!(
            "Pell equation needs a non-square d ≥ 2, got {d}"
        )));
    }
    Ok(root)
}

/// Partial quotients `a1, …, ar` of one period of the continued fraction of `√d`.
pub fn sqrt_period(d: u64) -> Result<Vec<u64>> {
    let a0 = check_radicand(d)?;
    let (mut m, mut den, mut a) = (0u64, 1u64, a0);
    let mut period = Vec::new();
    while a != 2 * a0 {
        m = den * a - m;
        den = (d - m * m) / den;
        a = (a0 + m) / den;
        period.push(a);
    }
    Ok(period)
}

/// Fundamental solution of `q² - d·p² = 1`, read off the convergent at the end
/// of the first period (or the second, when the period is odd).
pub fn pell_fundamental(d: u64) -> Result<PellSolution> {
    let a0 = check_radicand(d)?;
    let period = sqrt_period(d)?;
    let r = period.len();
    let count = if r % 2 == 0 { r - 1 } else { 2 * r - 1 };
    // h_k / k_k convergents, seeded with h_{-1} = 1, h_{-2} = 0, k_{-1} = 0, k_{-2} = 1.
    let (mut h_prev, mut h) = (BigInt::one(), BigInt::from(a0));
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    for i in 0..count {
        let a = BigInt::from(period[i % r]);
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        (h_prev, h) = (h, h_next);
        (k_prev, k) = (k, k_next);
    }
    let sol = PellSolution { p: k, q: h };
    assert!(sol.satisfies(d), "convergent fails q² - {d}p² = 1");
    Ok(sol)
}

/// The Pell-type lower bound `p·d/q` from the fundamental solution.
pub fn fsst_lower_bound(d: u64) -> Result<ExactValue> {
    let sol = pell_fundamental(d)?;
    Ok(ExactValue::rational(BigRational::new(
        &sol.p * BigInt::from(d),
        sol.q,
    )))
}

/// Exceptional set attached to `(d, p, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcSet {
    pub d: u64,
    pub p: BigInt,
    pub q: BigInt,
}

impl ExcSet {
    pub fn new(d: u64, sol: &PellSolution) -> Self {
        ExcSet {
            d,
            p: sol.p.clone(),
            q: sol.q.clone(),
        }
    }

    pub fn from_fundamental(d: u64) -> Result<Self> {
        Ok(Self::new(d, &pell_fundamental(d)?))
    }

    /// `pd/q`, the strict upper end of the fraction part.
    pub fn pell_bound(&self) -> BigRational {
        BigRational::new(&self.p * BigInt::from(self.d), self.q.clone())
    }

    /// `⌊√d⌋`: the integer part is `1..=integer_max`.
    pub fn integer_max(&self) -> u64 {
        self.d.sqrt()
    }

    /// `q²`: denominators in the fraction part are below this.
    pub fn denominator_bound(&self) -> BigInt {
        &self.q * &self.q
    }

    /// Membership of `r/s`, reduced first.
    pub fn contains(&self, r: i64, s: i64) -> Result<bool> {
        if s == 0 {
            return Err(Error::domain("zero denominator"));
        }
        let x = BigRational::new(r.into(), s.into());
        let (num, den) = (x.numer(), x.denom());
        if den.is_one() {
            return Ok(*num >= BigInt::one() && *num <= BigInt::from(self.integer_max()));
        }
        Ok(*den < self.denominator_bound() && x >= BigRational::one() && x < self.pell_bound())
    }

    /// Number of reduced fractions in the fraction part, or `None` when
    /// `q²` exceeds `max_denominator`.
    pub fn reduced_fraction_count(&self, max_denominator: u64) -> Option<u64> {
        let q2 = self
            .denominator_bound()
            .to_u64()
            .filter(|&q2| q2 <= max_denominator)?;
        let p = self.p.to_u128()?;
        let q = self.q.to_u128()?;
        let pd = p * self.d as u128;
        let mut total = 0u64;
        for s in 2..q2 {
            // s ≤ r and r·q < s·pd
            let hi = (s as u128 * pd - 1) / q;
            if hi < s as u128 {
                continue;
            }
            total += coprime_in_range(s, s, hi as u64);
        }
        Some(total)
    }
}

fn distinct_primes(mut n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            primes.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

/// Count of `r` in `lo..=hi` coprime to `s`, by inclusion-exclusion.
fn coprime_in_range(s: u64, lo: u64, hi: u64) -> u64 {
    let primes = distinct_primes(s);
    let upto = |x: u64| -> i128 {
        let mut count = 0i128;
        for mask in 0u32..(1 << primes.len()) {
            let prod: u64 = (0..primes.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| primes[i])
                .product();
            let term = (x / prod) as i128;
            count += if mask.count_ones() % 2 == 0 {
                term
            } else {
                -term
            };
        }
        count
    };
    (upto(hi) - upto(lo - 1)) as u64
}

/// Default cap on `q²` for counting exceptional fractions.
pub const EXC_COUNT_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PellComparison {
    pub solution: PellSolution,
    pub pell_bound: ExactValue,
    /// `pell` when `pd/q` exceeds our bound, `ours` when below, `equal` otherwise.
    pub which_larger: String,
    pub exc_integer_count: u64,
    /// `None` when `q²` is beyond [`EXC_COUNT_LIMIT`].
    pub exc_reduced_fraction_count: Option<u64>,
}

/// Our `ε(L,1)` bound set against the Pell-type bound for `d = L²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundComparison {
    pub type_id: u8,
    pub bundle: DivisorClass,
    pub d: u64,
    pub our_bound: ExactValue,
    /// Whether `our_bound` is the exact value or a lower bound.
    pub our_bound_exact: bool,
    pub our_provenance: String,
    pub pell_applicable: bool,
    pub pell: Option<PellComparison>,
}

pub fn compare_bounds(s: &SurfaceType, l: DivisorClass) -> Result<BoundComparison> {
    let est = epsilon_one(s, l)?;
    let d = to_u64(l.self_intersection());
    let our_bound = est
        .lower_bound()
        .expect("ε(L,1) estimates carry a value or lower bound");
    let pell = match check_radicand(d) {
        Err(_) => None,
        Ok(_) => {
            let solution = pell_fundamental(d)?;
            let exc = ExcSet::new(d, &solution);
            let pell_bound = ExactValue::rational(exc.pell_bound());
            let which_larger = match pell_bound.compare(&our_bound) {
                Ordering::Greater => "pell",
                Ordering::Less => "ours",
                Ordering::Equal => "equal",
            };
            Some(PellComparison {
                exc_integer_count: exc.integer_max(),
                exc_reduced_fraction_count: exc.reduced_fraction_count(EXC_COUNT_LIMIT),
                solution,
                pell_bound,
                which_larger: which_larger.to_owned(),
            })
        }
    };
    Ok(BoundComparison {
        type_id: s.type_id,
        bundle: l,
        d,
        our_bound,
        our_bound_exact: est.kind == EstimateKind::Exact,
        our_provenance: est.provenance,
        pell_applicable: pell.is_some(),
        pell,
    })
}

/// `r/s` in lowest terms with a positive denominator.
pub fn reduce(r: i64, s: i64) -> (i64, i64) {
    let g = r.gcd(&s).max(1);
    let (r, s) = (r / g, s / g);
    if s < 0 {
        (-r, -s)
    } else {
        (r, s)
    }
}

mod bigint_str {
    use num::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        use serde::de::Error as _;
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}
