//! Exact real numbers of the form `q + r√d` with `q, r ∈ Q` and `d ∈ N`.
//!
//! Values are kept canonical: when `r = 0` or `d` is a perfect square the value
//! collapses to a plain rational with `r = 0, d = 0`. Radicands are not reduced
//! to squarefree form, so `√8` and `2√2` are distinct representations of the
//! same number; comparisons are numeric and treat them as equal.
//!
//! Ordering never touches floating point. Over a shared radicand the sign of
//! `q + r√d` is decided by comparing `q²` with `r²d`; across two different
//! irrational radicands both sides are squared once more with sign bookkeeping.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::integer::Roots;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct ExactValue {
    q: BigRational,
    r: BigRational,
    d: u64,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `Some(k)` if `n = k²`.
fn exact_sqrt(n: u64) -> Option<u64> {
    let k = n.sqrt();
    (k * k == n).then_some(k)
}

/// Sign of `q + r√d`.
fn sign_qr(q: &BigRational, r: &BigRational, d: u64) -> Ordering {
    let zero = BigRational::zero();
    let sq = q.cmp(&zero);
    let sr = if d == 0 {
        Ordering::Equal
    } else {
        r.cmp(&zero)
    };
    match (sq, sr) {
        (s, Ordering::Equal) => s,
        (Ordering::Equal, s) => s,
        (a, b) if a == b => a,
        _ => {
            // Opposite signs: the term of larger magnitude wins.
            let q2 = q * q;
            let r2d = r * r * BigRational::from_integer(d.into());
            match q2.cmp(&r2d) {
                Ordering::Greater => sq,
                Ordering::Less => sr,
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}

/// Largest trial prime for square extraction from radicands.
const SQUARE_TRIAL_LIMIT: u64 = 1 << 16;

/// Writes `d = k²·c` by trial division, so `√d = k√c`. `c` is squarefree
/// unless `d` has a repeated prime factor above the trial limit.
fn pull_squares(mut d: u64) -> (u64, u64) {
    let mut k = 1;
    let mut p = 2;
    while p <= SQUARE_TRIAL_LIMIT && p * p <= d {
        while d.is_multiple_of(p * p) {
            d /= p * p;
            k *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (k, d)
}

impl ExactValue {
    /// Builds `q + r√d` in canonical form.
    pub fn new(q: BigRational, r: BigRational, d: u64) -> Self {
        if r.is_zero() || d == 0 {
            return ExactValue {
                q,
                r: BigRational::zero(),
                d: 0,
            };
        }
        if let Some(k) = exact_sqrt(d) {
            let q = q + r * BigRational::from_integer(k.into());
            return ExactValue {
                q,
                r: BigRational::zero(),
                d: 0,
            };
        }
        let (k, d) = pull_squares(d);
        ExactValue {
            q,
            r: r * BigRational::from_integer(k.into()),
            d,
        }
    }

    pub fn rational(q: BigRational) -> Self {
        ExactValue {
            q,
            r: BigRational::zero(),
            d: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    /// The rational `p/q`.
    pub fn make_rational(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::domain("zero denominator"));
        }
        Ok(Self::rational(rat(p, q)))
    }

    /// `r√d`, collapsed to a rational when `d` is a perfect square.
    pub fn make_surd(r: BigRational, d: u64) -> Self {
        Self::new(BigRational::zero(), r, d)
    }

    /// `√x` for a nonnegative rational `x = n/m`, written as `(1/m)·√(n·m)`.
    pub fn sqrt_of(x: &BigRational) -> Result<Self> {
        if x.is_negative() {
            return Err(Error::domain(format!(
                "square root of negative rational {x}"
            )));
        }
        let radicand = (x.numer() * x.denom())
            .to_u64()
            .ok_or_else(|| Error::domain(format!("radicand of √({x}) exceeds 64 bits")))?;
        let coeff = BigRational::new(BigInt::one(), x.denom().clone());
        Ok(Self::make_surd(coeff, radicand))
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn r(&self) -> &BigRational {
        &self.r
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.q)
    }

    pub fn signum(&self) -> Ordering {
        sign_qr(&self.q, &self.r, self.d)
    }

    /// Exact three-way comparison.
    pub fn compare(&self, other: &Self) -> Ordering {
        let dq = &self.q - &other.q;
        if self.d == other.d || self.d == 0 || other.d == 0 {
            let d = self.d.max(other.d);
            return sign_qr(&dq, &(&self.r - &other.r), d);
        }
        // u = (q1 - q2) + r1√d1 against v = r2√d2.
        let su = sign_qr(&dq, &self.r, self.d);
        let sv = other.r.cmp(&BigRational::zero());
        if su != sv {
            return su.cmp(&sv);
        }
        if su == Ordering::Equal {
            return Ordering::Equal;
        }
        let d1 = BigRational::from_integer(self.d.into());
        let d2 = BigRational::from_integer(other.d.into());
        // u² - v² = (Q² + r1²d1 - r2²d2) + 2Q·r1·√d1
        let rational_part = &dq * &dq + &self.r * &self.r * d1 - &other.r * &other.r * d2;
        let surd_part = BigRational::from_integer(2.into()) * &dq * &self.r;
        let s = sign_qr(&rational_part, &surd_part, self.d);
        if su == Ordering::Greater {
            s
        } else {
            s.reverse()
        }
    }

    fn common_radicand(&self, other: &Self) -> Result<u64> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (d1, d2) if d1 == d2 => Ok(d1),
            (d1, d2) => Err(Error::MixedRadicands(d1.to_string(), d2.to_string())),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::new(&self.q + &other.q, &self.r + &other.r, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other.clone())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        let dr = BigRational::from_integer(d.into());
        let q = &self.q * &other.q + &self.r * &other.r * dr;
        let r = &self.q * &other.r + &other.q * &self.r;
        Ok(Self::new(q, r, d))
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.q * k, &self.r * k, self.d)
    }

    pub fn square(&self) -> Self {
        self.try_mul(self).expect("a value shares its own radicand")
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        let base = self.q.floor().to_integer();
        let surd = if self.d == 0 {
            BigInt::zero()
        } else {
            // |r|√d = √(n·m)/m with r²d = n/m; integer sqrt gives the value to within 1.
            let r2d = &self.r * &self.r * BigRational::from_integer(self.d.into());
            let est = (r2d.numer() * r2d.denom()).sqrt() / r2d.denom();
            if self.r.is_negative() {
                -est
            } else {
                est
            }
        };
        let mut c = base + surd;
        let as_value = |c: &BigInt| Self::rational(BigRational::from_integer(c.clone()));
        while as_value(&c) > *self {
            c -= 1;
        }
        while as_value(&(&c + 1)) <= *self {
            c += 1;
        }
        c
    }

    /// Decimal rendering with `digits` places, rounded half away from zero.
    pub fn to_decimal(&self, digits: u32) -> String {
        let negative = self.signum() == Ordering::Less;
        let magnitude = if negative {
            -self.clone()
        } else {
            self.clone()
        };
        let pow = BigInt::from(10).pow(digits);
        let shifted = magnitude.scale(&BigRational::from_integer(pow.clone()));
        let half = Self::rational(rat(1, 2));
        let n = shifted.try_add(&half).expect("rational shift").floor();
        let sign = if negative && !n.is_zero() { "-" } else { "" };
        if digits == 0 {
            return format!("{sign}{n}");
        }
        let int_part = &n / &pow;
        let frac_part = (&n % &pow).to_string();
        format!(
            "{sign}{int_part}.{frac_part:0>width$}",
            width = digits as usize
        )
    }
}

impl PartialEq for ExactValue {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for ExactValue {}

impl PartialOrd for ExactValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl std::ops::Neg for ExactValue {
    type Output = ExactValue;

    fn neg(self) -> Self::Output {
        ExactValue {
            q: -self.q,
            r: -self.r,
            d: self.d,
        }
    }
}

impl From<BigRational> for ExactValue {
    fn from(q: BigRational) -> Self {
        Self::rational(q)
    }
}

impl From<i64> for ExactValue {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

fn fmt_surd(r: &BigRational, d: u64) -> String {
    if r.is_one() {
        format!("√{d}")
    } else if (-r).is_one() {
        format!("-√{d}")
    } else {
        format!("{r}·√{d}")
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 0 {
            return write!(f, "{}", self.q);
        }
        if self.q.is_zero() {
            return f.write_str(&fmt_surd(&self.r, self.d));
        }
        if self.r.is_negative() {
            write!(f, "{} - {}", self.q, fmt_surd(&-self.r.clone(), self.d))
        } else {
            write!(f, "{} + {}", self.q, fmt_surd(&self.r, self.d))
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let err = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let negative = int.starts_with('-');
        let digits = format!("{}{frac}", int.trim_start_matches(['-', '+']));
        let n: BigInt = digits.parse().map_err(|_| err())?;
        let v = BigRational::new(n, BigInt::from(10).pow(frac.len() as u32));
        return Ok(if negative { -v } else { v });
    }
    let v: BigRational = s.trim_start_matches('+').parse().map_err(|_| err())?;
    Ok(v)
}

/// Parses one signed term: a rational, or a rational coefficient times a root.
fn parse_term(term: &str) -> Result<ExactValue> {
    let (coef, radicand) = if let Some((c, d)) = term.split_once('√') {
        (c, Some(d))
    } else if let Some((c, rest)) = term.split_once("sqrt(") {
        let d = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("unclosed sqrt( in {term:?}")))?;
        (c, Some(d))
    } else {
        (term, None)
    };
    let Some(radicand) = radicand else {
        return Ok(ExactValue::rational(parse_rational(coef)?));
    };
    let coef = coef.trim_end_matches(['*', '·']);
    let r = match coef {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        c => parse_rational(c)?,
    };
    let d: u64 = radicand.parse().map_err(|_| {
        Error::Parse(format!(
            "radicand must be a nonnegative integer: {radicand:?}"
        ))
    })?;
    Ok(ExactValue::make_surd(r, d))
}

impl FromStr for ExactValue {
    type Err = Error;

    /// Accepts `p/q`, decimals like `0.93`, `r√d`, `r*sqrt(d)` and a sum
    /// `q + r√d` of one rational and one surd term.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty value".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, c) in compact.char_indices() {
            if i > start && (c == '+' || c == '-') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        terms
            .into_iter()
            .map(parse_term)
            .try_fold(ExactValue::zero(), |acc, t| acc.try_add(&t?))
    }
}

#[derive(Serialize, Deserialize)]
struct ExactRepr {
    q: String,
    r: String,
    d: u64,
}

impl Serialize for ExactValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ExactRepr {
            q: self.q.to_string(),
            r: self.r.to_string(),
            d: self.d,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ExactRepr::deserialize(deserializer)?;
        let q = parse_rational(&repr.q).map_err(D::Error::custom)?;
        let r = parse_rational(&repr.r).map_err(D::Error::custom)?;
        Ok(ExactValue::new(q, r, repr.d))
    }
}
