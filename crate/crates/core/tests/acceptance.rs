//! Acceptance gate: one PASS/FAIL line per criterion.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use num::integer::Roots;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use seshadri::closedform::FIBRE_BEZOUT;
use seshadri::oracle::CellReport;
use seshadri::pell::fsst_lower_bound;
use seshadri::{
    certify_point, cross_check_region, delta_feasibility, epsilon_min, epsilon_one,
    max_feasible_delta, pell_fundamental, surface_params, DivisorClass, EstimateKind, ExactValue,
    GenusConstraint, PointClass,
};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Collects failures for one criterion.
#[derive(Default)]
struct Findings(Vec<String>);

impl Findings {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.0.push(what());
        }
    }
}

fn criterion_1(f: &mut Findings) {
    let s = surface_params(6).unwrap();
    let l = DivisorClass::new(5, 11);
    f.check(l.self_intersection() == 110, || "L² != 110".into());
    let e = epsilon_one(&s, l).unwrap();
    let lower: ExactValue = "93/100√110".parse().unwrap();
    f.check(e.kind == EstimateKind::BoundedBelow, || {
        format!("kind {}", e.kind)
    });
    f.check(e.lower.as_ref() == Some(&lower), || {
        format!("lower {:?}", e.lower)
    });
    f.check(e.upper == Some(ExactValue::from_int(15)), || {
        format!("upper {:?}", e.upper)
    });
    let root = ExactValue::make_surd(int(1), 110);
    let pell_bound = ExactValue::make_rational(220, 21).unwrap();
    for (v, want) in [(&root, "10.49"), (&lower, "9.75"), (&pell_bound, "10.48")] {
        f.check(v.to_decimal(2) == want, || {
            format!("{v} renders {} not {want}", v.to_decimal(2))
        });
    }
    let sol = pell_fundamental(110).unwrap();
    f.check(
        sol.p == BigInt::from(2) && sol.q == BigInt::from(21),
        || format!("pell(110) = {sol:?}"),
    );
    let fsst = fsst_lower_bound(110).unwrap();
    f.check(fsst == pell_bound, || format!("fsst(110) = {fsst}"));
    f.check(fsst > lower, || "220/21 not above 93/100·√110".into());
}

fn criterion_2(f: &mut Findings) {
    let e = epsilon_one(&surface_params(6).unwrap(), DivisorClass::new(5, 27)).unwrap();
    f.check(e.is_exact() && e.value == Some(int(15)), || {
        format!("type 6 (5,27): {e:?}")
    });
    let s = surface_params(1).unwrap();
    for a in 1..=50 {
        for b in 1..=50 {
            let l = DivisorClass::new(a, b);
            let one = epsilon_one(&s, l).unwrap();
            f.check(
                one.is_exact() && one.value == Some(int(a.min(2 * b))),
                || format!("ε({l},1) = {one:?}"),
            );
            let min = epsilon_min(&s, l).unwrap();
            f.check(min.is_exact() && min.value == Some(int(a.min(b))), || {
                format!("ε({l}) = {min:?}")
            });
        }
    }
}

fn criterion_3(f: &mut Findings) -> String {
    let vg = GenusConstraint::VeryGeneral;
    let d93 = delta_feasibility(&rat(93, 100), vg).unwrap();
    f.check(d93.feasible, || "0.93 infeasible".into());
    let d94 = delta_feasibility(&rat(94, 100), vg).unwrap();
    f.check(!d94.feasible && d94.violating_m() == vec![4, 5], || {
        format!("0.94 violates {:?}", d94.violating)
    });
    f.check(max_feasible_delta(vg) == (rat(7, 8), 4), || {
        format!("sup δ² = {:?}", max_feasible_delta(vg))
    });
    let d99 = delta_feasibility(&rat(99, 100), vg).unwrap();
    let stated: Vec<u64> = (2..=48).collect();
    let computed = d99.violating_m();
    f.check(computed == (3..=48).collect::<Vec<_>>(), || {
        format!("0.99 violates {:?}", d99.violating)
    });
    let missing: Vec<u64> = stated
        .iter()
        .copied()
        .filter(|m| !computed.contains(m))
        .collect();
    format!(
        "0.99 violates m = {}..={}; published range 2..=48 differs at m = {missing:?}",
        d99.violating.as_ref().unwrap().start(),
        d99.violating.as_ref().unwrap().end()
    )
}

fn sweep(f: &mut Findings, type_id: u8, a_max: i64, b_max: i64, scan_limit: u32) -> (usize, usize) {
    let s = surface_params(type_id).unwrap();
    let cells: Vec<CellReport> = cross_check_region(&s, a_max, b_max, scan_limit).unwrap();
    let mut theorem_exact = 0;
    for cell in &cells {
        for c in &cell.checks {
            f.check(c.pass, || {
                format!(
                    "type {type_id} {} {:?}: {:?}",
                    cell.bundle, c.query, c.estimate
                )
            });
            if c.estimate.kind == EstimateKind::Exact && c.estimate.provenance != FIBRE_BEZOUT {
                theorem_exact += 1;
                f.check(c.certified, || {
                    format!(
                        "type {type_id} {} {:?}: {} not certified, oracle [{}, {}]",
                        cell.bundle, c.query, c.estimate.provenance, c.report.lower, c.report.upper
                    )
                });
            }
        }
    }
    (cells.len(), theorem_exact)
}

fn criterion_4(f: &mut Findings) -> String {
    let mut cells = 0;
    let mut certified = 0;
    let plan: [(u8, i64, i64, u32); 8] = [
        (1, 20, 20, 200),
        (2, 20, 20, 200),
        (3, 20, 20, 200),
        (5, 20, 20, 200),
        (7, 20, 20, 200),
        (4, 15, 15, 200),
        (6, 15, 15, 200),
        (6, 10, 45, 200),
    ];
    for (t, a, b, m) in plan {
        let (n, e) = sweep(f, t, a, b, m);
        cells += n;
        certified += e;
    }
    // ε(L,1) = 3a, ε(L,1) = 3b and the bounded middle all occur on the 10×45 grid
    let s = surface_params(6).unwrap();
    let mut regimes: Vec<&str> = (1..=10)
        .flat_map(|a| (1..=45).map(move |b| DivisorClass::new(a, b)))
        .map(|l| {
            let e = epsilon_one(&s, l).unwrap();
            match &e.value {
                Some(v) if *v == int(3 * l.a) => "3a",
                Some(_) => "3b",
                None => "bounded",
            }
        })
        .collect();
    regimes.sort();
    regimes.dedup();
    f.check(regimes == ["3a", "3b", "bounded"], || {
        format!("type 6 regimes {regimes:?}")
    });
    format!("{cells} cells, {certified} theorem-exact values certified")
}

/// `⌊x·10^digits⌋` up to an error of 2 units, for `x = q + r√d`.
fn fixed_point(x: &ExactValue, digits: u32) -> BigInt {
    let scale = BigInt::from(10).pow(digits);
    let q = x.q();
    let q_part = (q.numer() * &scale).div_floor(q.denom());
    if x.is_rational() {
        return q_part;
    }
    let root = (BigInt::from(x.d()) * &scale * &scale).sqrt();
    let r = x.r();
    let r_part = (r.numer() * root).div_floor(r.denom());
    q_part + r_part
}

fn random_value(rng: &mut ChaCha8Rng) -> ExactValue {
    let q = rat(rng.random_range(-2000..=2000), rng.random_range(1..=150));
    let r = rat(rng.random_range(-300..=300), rng.random_range(1..=60));
    let d = rng.random_range(0..=400u64);
    ExactValue::new(q, r, d)
}

fn criterion_5(f: &mut Findings) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e5ad71);

    // (i) and (ii)
    let mut bundles = Vec::new();
    for _ in 0..1000 {
        let t = rng.random_range(1..=7u8);
        let l = DivisorClass::new(rng.random_range(1..=60), rng.random_range(1..=60));
        bundles.push((t, l));
    }
    for (i, &(t, l)) in bundles.iter().enumerate() {
        let s = surface_params(t).unwrap();
        let mut points = vec![PointClass::VeryGeneral, PointClass::Arbitrary];
        points.extend(
            s.distinct_mults()
                .into_iter()
                .map(PointClass::OnSingularFibre),
        );
        for x in points {
            let r = certify_point(&s, l, x, 200).unwrap();
            f.check(r.lower <= r.upper, || {
                format!("(i) type {t} {l} {x}: lower > upper")
            });
            if i < 200 {
                let r50 = certify_point(&s, l, x, 50).unwrap();
                let r100 = certify_point(&s, l, x, 100).unwrap();
                f.check(r50.lower <= r100.lower && r100.lower <= r.lower, || {
                    format!(
                        "(ii) type {t} {l} {x}: {} {} {}",
                        r50.lower, r100.lower, r.lower
                    )
                });
            }
        }
    }

    // (iii) against 60-digit fixed point, deciding only beyond 50 digits
    let mut ties = 0;
    for i in 0..10_000 {
        let x = random_value(&mut rng);
        let y = match i % 4 {
            // a close rational approximation of x
            0 => {
                let k = rng.random_range(1..=12u32);
                let scaled = fixed_point(&x, k);
                ExactValue::rational(BigRational::new(scaled, BigInt::from(10).pow(k)))
            }
            // same radicand
            1 => ExactValue::new(
                rat(rng.random_range(-2000..=2000), rng.random_range(1..=150)),
                rat(rng.random_range(-300..=300), rng.random_range(1..=60)),
                x.d(),
            ),
            // the same value written differently
            2 => ExactValue::new(x.q().clone(), x.r() / int(2), x.d() * 4),
            _ => random_value(&mut rng),
        };
        let diff = fixed_point(&x, 60) - fixed_point(&y, 60);
        let tol = BigInt::from(10).pow(10);
        let decimal = if diff.abs() <= tol {
            ties += 1;
            Ordering::Equal
        } else if diff.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        };
        f.check(x.compare(&y) == decimal, || {
            format!(
                "(iii) {x} vs {y}: exact {:?}, decimal {decimal:?}",
                x.compare(&y)
            )
        });
    }

    // (iv) and (v)
    let mut brute_checked = 0;
    for d in 2..=500u64 {
        let root = d.sqrt();
        if root * root == d {
            continue;
        }
        let sol = pell_fundamental(d).unwrap();
        f.check(sol.satisfies(d), || format!("(iv) d = {d}: {sol:?} fails"));
        let chak = chakravala(d);
        f.check(chak == (sol.p.clone(), sol.q.clone()), || {
            format!("(iv) d = {d}: chakravala {chak:?}")
        });
        if let Some(p) = sol.p.to_u64().filter(|&p| p <= 20_000) {
            brute_checked += 1;
            let smaller = (1..p).find(|&x| {
                let v = d as u128 * (x as u128) * (x as u128) + 1;
                let y = v.sqrt();
                y * y == v
            });
            f.check(smaller.is_none(), || {
                format!("(iv) d = {d}: smaller solution at p = {smaller:?}")
            });
        }
        let bound = fsst_lower_bound(d).unwrap();
        f.check(bound < ExactValue::make_surd(int(1), d), || {
            format!("(v) d = {d}: pd/q ≥ √d")
        });
    }
    format!("10000 compares ({ties} exact ties), minimality by enumeration for {brute_checked} d")
}

/// Fundamental solution of `q² - d·p² = 1` by the cyclic method.
fn chakravala(d: u64) -> (BigInt, BigInt) {
    let n = BigInt::from(d);
    let mut a = BigInt::from(d.sqrt());
    if (&a + 1u32) * (&a + 1u32) - &n < &n - &a * &a {
        a += 1u32;
    }
    let mut b = BigInt::one();
    let mut k = &a * &a - &n;
    while k != BigInt::one() {
        let kk = k.abs();
        // m > 0 with k | a + b·m, minimizing |m² - d|
        let centre = d.sqrt() as i64;
        let span = kk.to_i64().unwrap() + 1;
        let m = (1.max(centre - span)..=centre + span)
            .filter(|&m| ((&a + &b * m) % &kk).is_zero())
            .min_by_key(|&m| (m as i128 * m as i128 - d as i128).abs())
            .unwrap();
        let m = BigInt::from(m);
        let a2 = (&a * &m + &n * &b) / &kk;
        let b2 = (&a + &b * &m) / &kk;
        k = (&m * &m - &n) / &k;
        a = a2.abs();
        b = b2.abs();
    }
    (b, a)
}

fn criterion_6(f: &mut Findings) {
    for t in 1..=7u8 {
        let s = surface_params(t).unwrap();
        for a in 1..=30i64 {
            for b in 1..=30i64 {
                let e = epsilon_min(&s, DivisorClass::new(a, b)).unwrap();
                let unknown = e.kind == EstimateKind::UnknownWithBound;
                let expected = t == 6 && 2 * a < b && 2 * b < 9 * a;
                f.check(unknown == expected, || {
                    format!("type {t} ({a},{b}): {}", e.kind)
                });
                if t == 6 && (b == 2 * a || 2 * b == 9 * a) {
                    f.check(e.kind == EstimateKind::CertifiedRational, || {
                        format!("type 6 ({a},{b}) boundary: {}", e.kind)
                    });
                }
            }
        }
    }
}

fn main() {
    type Run = fn(&mut Findings) -> String;
    let criteria: [(&str, Duration, Run); 6] = [
        (
            "1 ε(L,1) and Pell comparison for type 6, L = (5,11)",
            Duration::from_secs(1),
            |f| {
                criterion_1(f);
                String::new()
            },
        ),
        (
            "2 exact values for type 6 (5,27) and type 1",
            Duration::from_secs(1),
            |f| {
                criterion_2(f);
                String::new()
            },
        ),
        ("3 δ-feasibility", Duration::from_secs(1), criterion_3),
        (
            "4 oracle certification sweeps",
            Duration::from_secs(60),
            criterion_4,
        ),
        ("5 property suites", Duration::MAX, criterion_5),
        ("6 rationality classifier", Duration::MAX, |f| {
            criterion_6(f);
            String::new()
        }),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let mut findings = Findings::default();
        let start = Instant::now();
        let note = run(&mut findings);
        let elapsed = start.elapsed();
        if elapsed > budget {
            findings
                .0
                .push(format!("took {elapsed:.2?}, budget {budget:.0?}"));
        }
        let verdict = if findings.0.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        let note = if note.is_empty() {
            String::new()
        } else {
            format!("; {note}")
        };
        println!("criterion {name}: {verdict} ({elapsed:.2?}{note})");
        for line in findings.0.iter().take(40) {
            println!("    {line}");
        }
        if findings.0.len() > 40 {
            println!("    ... {} more", findings.0.len() - 40);
        }
        failed += usize::from(!findings.0.is_empty());
    }
    if failed > 0 {
        println!("acceptance: {failed} criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all criteria pass");
}
