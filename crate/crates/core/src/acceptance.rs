//! The twelve acceptance suites, each run against an independent oracle or
//! against known exact values.

use std::fmt;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::angular::{clebsch_gordan, wigner_3j, AngularData};
use crate::binary::{BinaryForm, SymbolicForm};
use crate::characters::{ideal_character, plethysm, regularity_m0};
use crate::covariants::{
    c_e, compound_coefficients, compound_d, cubic_discriminant, j_quotient, membership, psi,
    quartic_pairs, wronskian_d,
};
use crate::emap::{e_bruteforce, e_closedform, verify_cases, EParams};
use crate::error::{Error, Result};
use crate::oracle::quotient_hessian_numerator;
use crate::poly::MultiPoly;
use crate::rational::{factorial_q, format_rational, int, ratio, Rational};
use crate::sample::{self, Sampler};
use crate::ternary::verify_quintic_lists;
use crate::transvectant::{bracket_monomial, letters, n_coeff, transvectant, u_bracket, MonomialSpec};
use crate::{BinForm, Coeff};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Reduced bounds for quick runs.
    Quick,
    /// The bounds the criteria are stated with.
    Full,
}

#[derive(Clone, Copy, Debug)]
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub limit: Duration,
}

pub const CRITERIA: [Criterion; 12] = [
    Criterion { id: 1, name: "monomial transvectant law", limit: Duration::from_secs(60) },
    Criterion { id: 2, name: "U operator identity", limit: Duration::from_secs(60) },
    Criterion { id: 3, name: "E-map oracle equivalence", limit: Duration::from_secs(600) },
    Criterion { id: 4, name: "nine-case sweep", limit: Duration::from_secs(300) },
    Criterion { id: 5, name: "J(P,Q) identity", limit: Duration::from_secs(120) },
    Criterion { id: 6, name: "Gordan series identity", limit: Duration::from_secs(60) },
    Criterion { id: 7, name: "D consistency", limit: Duration::from_secs(120) },
    Criterion { id: 8, name: "membership", limit: Duration::from_secs(180) },
    Criterion { id: 9, name: "characters", limit: Duration::from_secs(60) },
    Criterion { id: 10, name: "m0", limit: Duration::from_secs(1) },
    Criterion { id: 11, name: "ternary quintics", limit: Duration::from_secs(900) },
    Criterion { id: 12, name: "3j sanity", limit: Duration::from_secs(1) },
];

#[derive(Clone, Debug)]
pub struct Outcome {
    pub criterion: Criterion,
    pub mode: Mode,
    pub passed: bool,
    pub elapsed: Duration,
    pub detail: String,
}

impl Outcome {
    pub fn over_time(&self) -> bool {
        self.elapsed > self.criterion.limit
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} criterion {:>2} {:<28} {:>9.3}s / {}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.criterion.id,
            self.criterion.name,
            self.elapsed.as_secs_f64(),
            self.criterion.limit.as_secs(),
            self.detail
        )
    }
}

pub fn criterion(id: u8) -> Result<Criterion> {
    CRITERIA
        .iter()
        .find(|c| c.id == id)
        .copied()
        .ok_or_else(|| Error::InvalidParameter(format!("no criterion {id}")))
}

/// Runs one criterion. A criterion passes when its checks all hold and it
/// finishes within its time limit.
pub fn run(id: u8, mode: Mode) -> Result<Outcome> {
    let criterion = criterion(id)?;
    let start = Instant::now();
    let quick = mode == Mode::Quick;
    let result = match id {
        1 => monomial_law(if quick { 3 } else { 5 }, 10),
        2 => u_identity(3),
        3 => emap_equivalence(if quick { 5 } else { 6 }, if quick { 2 } else { 3 }),
        4 => nine_cases(if quick { 6 } else { 8 }, if quick { 4 } else { 5 }, if quick { 5 } else { 6 }),
        5 => j_identity(if quick { 2 } else { 3 }, if quick { 10 } else { 50 }),
        6 => gordan_series(if quick { 4 } else { 6 }),
        7 => d_consistency(if quick { 5 } else { 7 }),
        8 => membership_suite(if quick { 5 } else { 6 }, 10),
        9 => characters_suite(if quick { 6 } else { 8 }),
        10 => m0_suite(),
        11 => ternary_suite(if quick { 1 } else { 5 }),
        12 => angular_suite(),
        _ => unreachable!("criterion ids are checked above"),
    };
    let elapsed = start.elapsed();
    let (ok, detail) = match result {
        Ok(detail) => (true, detail),
        Err(e) => (false, e.to_string()),
    };
    let mut outcome = Outcome {
        criterion,
        mode,
        passed: ok,
        elapsed,
        detail,
    };
    if ok && outcome.over_time() {
        outcome.passed = false;
        outcome.detail = format!("over time limit; {}", outcome.detail);
    }
    Ok(outcome)
}

pub fn run_all(mode: Mode) -> Vec<Outcome> {
    CRITERIA
        .iter()
        .map(|c| run(c.id, mode).expect("listed criterion"))
        .collect()
}

const SEED: u64 = 20240611;

fn fail(msg: String) -> Error {
    Error::Verification(msg)
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(fail(msg()))
    }
}

fn same<C: Coeff>(a: &BinForm<C>, b: &BinForm<C>) -> bool {
    a.degree() == b.degree() && a.try_sub(b).is_ok_and(|d| d.is_zero())
}

/// `Some(c)` with `b = c a`, for symbolic forms with `a != 0`.
fn symbolic_ratio(a: &SymbolicForm, b: &SymbolicForm) -> Option<Rational> {
    if a.degree() != b.degree() {
        return None;
    }
    let i = a.coeffs().iter().position(|c| !c.is_zero())?;
    let (_, ca) = a.coeffs()[i].leading()?;
    let c = match b.coeffs()[i].leading() {
        Some((_, cb)) => cb / ca,
        None => Rational::zero(),
    };
    same(&a.scale(&c), b).then_some(c)
}

fn linear_pairs(rng: &mut Sampler, n: usize) -> Vec<(BinaryForm, BinaryForm)> {
    (0..n).map(|_| sample::independent_linear_pair(rng, 5)).collect()
}

fn monomial_law(max: u32, samples: usize) -> Result<String> {
    let mut rng = sample::sampler(SEED);
    let pairs = linear_pairs(&mut rng, samples);
    let specs = MonomialSpec::all_up_to(max);
    specs.par_iter().try_for_each(|spec| -> Result<()> {
        let bm = bracket_monomial(spec).scale(&n_coeff(spec));
        let deg = spec.deg_a() + spec.deg_b() - 2 * spec.k;
        for (l1, l2) in &pairs {
            let a = &l1.pow(spec.alpha1) * &l2.pow(spec.alpha2);
            let b = &l1.pow(spec.beta1) * &l2.pow(spec.beta2);
            let t = transvectant(&a, &b, spec.k)?;
            let v = bm.evaluate_set("a", l1.coeffs())?.evaluate_set("b", l2.coeffs())?;
            let expect = BinaryForm::from_poly(&v, "x", Some(deg))?;
            check(t == expect, || format!("{spec} with L1 = {l1}, L2 = {l2}"))?;
        }
        Ok(())
    })?;
    Ok(format!("{} specs x {} pairs", specs.len(), samples))
}

fn u_identity(max: u32) -> Result<String> {
    let (a, b, x) = letters();
    let l1 = SymbolicForm::new(vec![MultiPoly::var(&a, 0)?, MultiPoly::var(&a, 1)?])?;
    let l2 = SymbolicForm::new(vec![MultiPoly::var(&b, 0)?, MultiPoly::var(&b, 1)?])?;
    let specs = MonomialSpec::all_up_to(max);
    specs.par_iter().try_for_each(|spec| -> Result<()> {
        let fa = &l1.pow(spec.alpha1) * &l2.pow(spec.alpha2);
        let fb = &l1.pow(spec.beta1) * &l2.pow(spec.beta2);
        let scale = factorial_q(spec.deg_a()) * factorial_q(spec.deg_b());
        let t = transvectant(&fa, &fb, spec.k)?.to_poly(&x).scale(&scale);
        let u = u_bracket(spec);
        check((&u - &t).is_zero(), || format!("U-lemma fails at {spec}"))
    })?;
    Ok(format!("{} specs", specs.len()))
}

fn de_pairs(d_max: u32) -> Vec<(u32, u32)> {
    (3..=d_max)
        .flat_map(|d| (1..d).filter(move |e| 2 * e < d).map(move |e| (d, e)))
        .collect()
}

fn emap_equivalence(d_max: u32, r_max: u32) -> Result<String> {
    let params: Vec<EParams> = de_pairs(d_max)
        .into_iter()
        .flat_map(|(d, e)| (2..=r_max).flat_map(move |r| EParams::all(d, e, r)))
        .collect();
    params.par_iter().try_for_each(|p| -> Result<()> {
        let brute = e_bruteforce(p)?;
        let closed = e_closedform(p)?;
        check((&brute - &closed).is_zero(), || format!("E differs at {p}"))
    })?;
    Ok(format!("{} parameter tuples", params.len()))
}

fn nine_cases(d_max: u32, r_max: u32, literal_d_max: u32) -> Result<String> {
    let report = verify_cases(d_max, r_max, literal_d_max);
    if !report.passed() {
        let first: Vec<&str> = report.failures.iter().take(3).map(String::as_str).collect();
        return Err(fail(format!("{} failures: {}", report.failures.len(), first.join("; "))));
    }
    Ok(format!("{} rows, {} literal checks", report.rows.len(), report.literal_checks))
}

fn j_holds<C: Coeff>(p: &BinForm<C>, q: &BinForm<C>) -> bool {
    same(&(&j_quotient(p, q) * &(q * q)), &quotient_hessian_numerator(p, q))
}

fn j_identity(sym_max: u32, random: usize) -> Result<String> {
    let mut checked = 0;
    for p in 0..=sym_max {
        for q in 1..=sym_max {
            if p + q < 2 {
                continue;
            }
            let (pf, qf) = (SymbolicForm::generic("p", p), SymbolicForm::generic("q", q));
            check(j_holds(&pf, &qf), || format!("J identity fails for generic p = {p}, q = {q}"))?;
            if p == q + 1 {
                check(j_quotient(&pf, &qf).is_zero(), || format!("J != 0 for generic p = {p}, q = {q}"))?;
            }
            checked += 1;
        }
    }
    let mut rng = sample::sampler(SEED + 5);
    for n in 0..random {
        let (p, q) = loop {
            let (p, q) = (rng.gen_range(0..=5u32), rng.gen_range(1..=5u32));
            if p + q >= 2 {
                break (p, q);
            }
        };
        let pf = sample::form(&mut rng, p, 6);
        let qf = sample::form(&mut rng, q, 6);
        check(j_holds(&pf, &qf), || format!("J identity fails on random instance {n}: P = {pf}, Q = {qf}"))?;
    }
    for q in 1..=4 {
        let pf = sample::form(&mut rng, q + 1, 6);
        let qf = sample::form(&mut rng, q, 6);
        check(j_quotient(&pf, &qf).is_zero(), || format!("J != 0 for P = {pf}, Q = {qf}"))?;
    }
    Ok(format!("{checked} generic degree pairs, {random} random instances"))
}

fn gordan_series(q_max: u32) -> Result<String> {
    (2..=q_max).into_par_iter().try_for_each(|q| -> Result<()> {
        let f = SymbolicForm::generic("q", q);
        let lhs = transvectant(&(&f * &f), &f, 2)?;
        let c = ratio(3 * q as i64 - 2, 2 * (2 * q as i64 - 1));
        let rhs = (&f * &transvectant(&f, &f, 2)?).scale(&c);
        check(same(&lhs, &rhs), || format!("Gordan identity fails for q = {q}"))
    })?;
    Ok(format!("q = 2..{q_max}"))
}

fn d_consistency(d_max: u32) -> Result<String> {
    let scalars: Vec<(u32, Rational)> = (3..=d_max)
        .into_par_iter()
        .map(|d| -> Result<(u32, Rational)> {
            let f = SymbolicForm::generic("c", d);
            let w = wronskian_d(&f)?;
            let c = compound_d(&f)?;
            check(!w.is_zero(), || format!("wronskian vanishes identically for d = {d}"))?;
            let r = symbolic_ratio(&w, &c)
                .filter(|r| !r.is_zero())
                .ok_or_else(|| fail(format!("compound and wronskian are not proportional for d = {d}")))?;
            Ok((d, r))
        })
        .collect::<Result<_>>()?;
    let z = Rational::zero();
    let expected = [
        (3, [int(1), z.clone(), z.clone()]),
        (4, [int(7), int(-5), z.clone()]),
        (5, [int(129), int(-250), z]),
    ];
    for (d, xi) in expected {
        check(compound_coefficients(d)? == xi, || format!("coefficients for d = {d}"))?;
    }
    let mut rng = sample::sampler(SEED + 7);
    let mut cubic_ratio: Option<Rational> = None;
    for _ in 0..10 {
        let f = sample::form(&mut rng, 3, 6);
        let disc = cubic_discriminant(&f)?;
        let w = wronskian_d(&f)?.coeffs()[0].clone();
        if disc.is_zero() {
            check(w.is_zero(), || format!("D nonzero on singular cubic {f}"))?;
            continue;
        }
        let r = w / disc;
        check(!r.is_zero() && cubic_ratio.as_ref().is_none_or(|c| *c == r), || {
            format!("D(F)/disc(F) is not constant on {f}")
        })?;
        cubic_ratio = Some(r);
    }
    let shown: Vec<String> = scalars
        .iter()
        .map(|(d, r)| format!("d={d}:{}", format_rational(r)))
        .collect();
    Ok(format!(
        "compound/wronskian {}; D/disc = {}",
        shown.join(" "),
        cubic_ratio.map_or("-".into(), |r| format_rational(&r))
    ))
}

fn membership_suite(d_max: u32, samples: usize) -> Result<String> {
    let tasks: Vec<(u32, u32)> = (3..=d_max)
        .flat_map(|d| (1..=d / 2).map(move |e| (d, e)))
        .collect();
    let psi_counts: Vec<usize> = tasks
        .par_iter()
        .map(|&(d, e)| -> Result<usize> {
            let mut rng = sample::sampler(SEED + 100 * d as u64 + e as u64);
            let pairs = quartic_pairs(d);
            for _ in 0..samples {
                let (l1, l2) = sample::independent_linear_pair(&mut rng, 5);
                let f = &l1.pow(d - e) * &l2.pow(e);
                check(wronskian_d(&f)?.is_zero(), || format!("D({f}) != 0"))?;
                check(c_e(&f, e)?.is_zero(), || format!("C_{e}({f}) != 0"))?;
                for (w, w2) in &pairs {
                    check(psi(&f, w, w2, e)?.is_zero(), || format!("Psi_{w},{w2}({f}) != 0 for e = {e}"))?;
                }
            }
            for f in 1..d {
                let r = membership(&BinaryForm::x_monomial(d, f), &[e])?;
                let expect = f == e || f == d - e;
                check(r.in_x(e) == Some(expect), || {
                    format!("x0^{}*x1^{f} classified {:?} for e = {e}", d - f, r.in_x(e))
                })?;
            }
            Ok(pairs.len())
        })
        .collect::<Result<_>>()?;
    let mut rng = sample::sampler(SEED + 9);
    for d in 3..=d_max {
        for _ in 0..samples {
            let f = sample::form(&mut rng, d, 6);
            check(!wronskian_d(&f)?.is_zero(), || format!("D vanishes on random {f}"))?;
        }
    }
    Ok(format!(
        "{} (d,e) pairs, {} Psi pairs per sample",
        tasks.len(),
        psi_counts.iter().sum::<usize>()
    ))
}

fn characters_suite(max: u32) -> Result<String> {
    for r in 1..=max {
        for d in 1..=max {
            check(plethysm(r, d) == plethysm(d, r), || format!("S_{r}(S_{d}) != S_{d}(S_{r})"))?;
        }
    }
    for (d, e) in de_pairs(max) {
        for r in [3, 4] {
            let c = ideal_character(d, e, r)?;
            check(c.is_nonnegative(), || format!("negative ideal character at d = {d}, e = {e}, r = {r}"))?;
        }
        let zero = ideal_character(d, e, 2)?.is_zero();
        let exceptional = d % 2 == 1 && e == (d - 1) / 2;
        check(zero == exceptional, || format!("r = 2 character at d = {d}, e = {e}"))?;
    }
    Ok(format!("r, d <= {max}"))
}

fn m0_suite() -> Result<String> {
    for (d, e) in de_pairs(12) {
        check(regularity_m0(1, d, e)? == 4, || format!("m0(1, {d}, {e}) != 4"))?;
    }
    // ceil(max{4, n+2+(1-n)/d, 2n+1-n/e}) by hand
    let spots = [(2, 5, 2, 4), (2, 3, 1, 4), (2, 7, 3, 5), (3, 3, 1, 5), (3, 5, 2, 6), (3, 7, 3, 6)];
    for (n, d, e, m) in spots {
        check(regularity_m0(n, d, e)? == m, || format!("m0({n}, {d}, {e}) != {m}"))?;
    }
    Ok(format!("{} spot values", spots.len()))
}

fn ternary_suite(samples: usize) -> Result<String> {
    let report = verify_quintic_lists(samples, SEED)?;
    let want = |v: &Option<Rational>, r: Rational| v.as_ref() == Some(&r);
    check(want(&report.psi1_value, ratio(57, 2500)), || format!("Psi1 value {:?}", report.psi1_value))?;
    check(want(&report.psi2_value, ratio(3, 50)), || format!("Psi2 value {:?}", report.psi2_value))?;
    check(report.eta == Some((int(50), int(-19))), || format!("eta ratio {:?}", report.eta))?;
    check(report.passed(), || report.failures.join("; "))?;
    Ok(format!("eta1:eta2 = 50:-19, {samples} samples"))
}

fn angular_suite() -> Result<String> {
    let mut zeros = 0;
    for j1 in 0..=12i64 {
        for j2 in 0..=12i64 {
            for j in 0..=12i64 {
                if (j1 + j2 + j) % 2 != 0 {
                    continue;
                }
                let triangle = j <= j1 + j2 && j >= (j1 - j2).abs();
                if !triangle {
                    for m1 in (-j1..=j1).step_by(2) {
                        for m2 in (-j2..=j2).step_by(2) {
                            let ad = AngularData::coupled(j1, j2, j, m1, m2);
                            check(clebsch_gordan(&ad).is_zero() && wigner_3j(&ad).is_zero(), || {
                                format!("nonzero outside the triangle: {ad:?}")
                            })?;
                            zeros += 1;
                        }
                    }
                }
                if j1 % 2 == 0 && j2 % 2 == 0 && j % 2 == 0 && (j1 + j2 + j) % 4 == 2 {
                    let ad = AngularData::coupled(j1, j2, j, 0, 0);
                    check(wigner_3j(&ad).is_zero() && clebsch_gordan(&ad).is_zero(), || {
                        format!("odd j1+j2+j with m = 0 nonzero: {ad:?}")
                    })?;
                    zeros += 1;
                }
            }
        }
    }
    for j1 in 0..=12i64 {
        for j2 in 0..=12i64 {
            let ad = AngularData::coupled(j1, j2, j1 + j2, j1, j2);
            let c = clebsch_gordan(&ad);
            check(c.sign() == 1 && c.square().is_one(), || format!("stretched coefficient {c} for {ad:?}"))?;
        }
    }
    let c = clebsch_gordan(&AngularData::coupled(2, 2, 4, 0, 0));
    check(c.square() == &ratio(2, 3), || format!("C^(1,1,2)_(0,0,0) = {c}"))?;
    Ok(format!("{zeros} forced zeros, C^(1,1,2)_(0,0,0) = {c}"))
}
