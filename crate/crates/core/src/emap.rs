//! The integrand `E(r; p, p')` of the maps `u_r^(p,p')`, computed literally and
//! in closed form, and the nine-case choice of `p` that keeps it nonzero.

use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::a_set;
use crate::error::{Error, Result};
use crate::poly::{bracket2, identify, linear_form, omega_power, MultiPoly, VarSet};
use crate::rational::{factorial, format_rational, sign_power, Rational};
use crate::transvectant::{letters, s_sum, s_sum_terms, u_bracket_closed, MonomialSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EParams {
    pub d: u32,
    pub e: u32,
    pub r: u32,
    pub p: u32,
    pub p_prime: u32,
}

impl EParams {
    pub fn new(d: u32, e: u32, r: u32, p: u32, p_prime: u32) -> Result<Self> {
        let params = EParams { d, e, r, p, p_prime };
        params.validate()?;
        Ok(params)
    }

    fn validate(&self) -> Result<()> {
        let EParams { d, e, r, p, p_prime } = *self;
        if e == 0 || 2 * e >= d {
            return Err(Error::InvalidParameter(format!("need 1 <= e < d/2, got d = {d}, e = {e}")));
        }
        if r < 2 {
            return Err(Error::InvalidParameter(format!("need r >= 2, got {r}")));
        }
        if p == 1 || p > r * e {
            return Err(Error::InvalidParameter(format!("p = {p} is not in A_{r}")));
        }
        if p_prime == 1 || p_prime > (r + 1) * e {
            return Err(Error::InvalidParameter(format!("p' = {p_prime} is not in A_{}", r + 1)));
        }
        Ok(())
    }

    /// `[r(d-e)-p, d-e; re-p, e; p'-p]`, defined when `p <= p'`.
    pub fn spec(&self) -> Option<MonomialSpec> {
        let EParams { d, e, r, p, p_prime } = *self;
        if p > p_prime {
            return None;
        }
        MonomialSpec::new(r * (d - e) - p, d - e, r * e - p, e, p_prime - p).ok()
    }

    /// Every admissible tuple with `p in A_r`, `p' in A_(r+1)`.
    pub fn all(d: u32, e: u32, r: u32) -> Vec<EParams> {
        let mut out = Vec::new();
        for p in a_set(e, r) {
            for p_prime in a_set(e, r + 1) {
                out.push(EParams { d, e, r, p, p_prime });
            }
        }
        out
    }
}

impl fmt::Display for EParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(d,e,r,p,p')=({},{},{},{},{})",
            self.d, self.e, self.r, self.p, self.p_prime
        )
    }
}

/// `{Omega^p' (x y)^p a_x^(r(d-e)-p) b_x^(d-e) a_y^(re-p) b_y^e}|_(y:=x)` by
/// literal operator application, in the letters `a`, `b` and variables `x`.
pub fn e_bruteforce(params: &EParams) -> Result<MultiPoly> {
    params.validate()?;
    let EParams { d, e, r, p, p_prime } = *params;
    let (a, b, x) = letters();
    let y = VarSet::binary("y");
    let vars = vec![a.clone(), b.clone(), x.clone(), y.clone()];
    let ax = linear_form(&a, &x)?;
    let bx = linear_form(&b, &x)?;
    let ay = linear_form(&a, &y)?;
    let by = linear_form(&b, &y)?;
    let xy = bracket2(&x, &y)?;
    let integrand = &(&(&(&xy.pow(p) * &ax.pow(r * (d - e) - p)) * &bx.pow(d - e))
        * &ay.pow(r * e - p))
        * &by.pow(e);
    let integrand = integrand.embed(vars)?;
    let applied = omega_power(&integrand, "x", "y", p_prime)?;
    identify(&applied, "y", "x")
}

/// `p'! ((r+1)d-p'+1)! / ((p'-p)! ((r+1)(d-e)-p')! ((r+1)e-p')! ((r+1)d-p'-p+1)!)`.
pub fn closed_prefactor(params: &EParams) -> Rational {
    let EParams { d, e, r, p, p_prime: pp } = *params;
    let num = factorial(pp) * factorial((r + 1) * d - pp + 1);
    let den = factorial(pp - p)
        * factorial((r + 1) * (d - e) - pp)
        * factorial((r + 1) * e - pp)
        * factorial((r + 1) * d - pp - p + 1);
    Rational::new(num, den)
}

/// `1_{p <= p'} U[r(d-e)-p, d-e; re-p, e; p'-p]` times [`closed_prefactor`].
pub fn e_closedform(params: &EParams) -> Result<MultiPoly> {
    params.validate()?;
    let (a, b, x) = letters();
    match params.spec() {
        None => Ok(MultiPoly::zero(vec![a, b, x])),
        Some(spec) => Ok(u_bracket_closed(&spec).scale(&closed_prefactor(params))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LhBounds {
    pub low: i64,
    pub high: i64,
}

impl LhBounds {
    pub fn is_empty(&self) -> bool {
        self.low > self.high
    }

    pub fn len(&self) -> i64 {
        (self.high - self.low + 1).max(0)
    }
}

/// `L = max{0, p'-p-(d-e), p'-re}`, `H = min{p'-p, e, r(d-e)-p}`.
pub fn lh_bounds(params: &EParams) -> LhBounds {
    let (d, e, r, p, pp) = (
        params.d as i64,
        params.e as i64,
        params.r as i64,
        params.p as i64,
        params.p_prime as i64,
    );
    LhBounds {
        low: 0.max(pp - p - (d - e)).max(pp - r * e),
        high: (pp - p).min(e).min(r * (d - e) - p),
    }
}

/// Outcome of the case analysis for one `(d, e, r, p')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub d: u32,
    pub e: u32,
    pub r: u32,
    pub p_prime: u32,
    pub case_id: u8,
    pub p: u32,
    pub bounds: LhBounds,
    /// `S` from the general alternating sum.
    pub s_value: Rational,
    /// `S` from the case's own closed form.
    pub s_closed: Rational,
    /// `(L, H)` the case asserts.
    pub claimed: LhBounds,
    pub terms: u32,
}

impl CaseResult {
    /// All claims of the case hold for this tuple.
    pub fn consistent(&self) -> bool {
        !self.s_value.is_zero()
            && self.s_value == self.s_closed
            && self.bounds == self.claimed
            && self.terms <= 2
            && self.p != 1
            && self.p <= self.r * self.e
            && (self.r != 2 || self.p.is_multiple_of(2))
    }

    pub fn tsv_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.d,
            self.e,
            self.r,
            self.p_prime,
            self.case_id,
            self.p,
            self.bounds.low,
            self.bounds.high,
            self.s_value.numer(),
            self.s_value.denom()
        )
    }
}

pub const CASE_TSV_HEADER: &str = "d\te\tr\tp'\tcase\tp\tL\tH\ts_num\ts_den";

fn fact_i(n: i64) -> Rational {
    assert!(n >= 0, "factorial of a negative number in a case formula");
    Rational::from_integer(factorial(n as u32))
}

/// The case number, chosen `p`, claimed bounds and closed-form `S`; `None`
/// outside all nine cases. Overlapping ranges go to the lowest-numbered case.
fn dispatch(d: u32, e: u32, r: u32, pp: u32) -> Option<(u8, u32, LhBounds, Rational)> {
    let (di, ei, ri, ppi) = (d as i64, e as i64, r as i64, pp as i64);
    let f = fact_i;
    let one = |x: i64| Rational::from_integer(x.into());
    let lh = |low: i64, high: i64| LhBounds { low, high };
    let even = pp.is_multiple_of(2);
    if r == 2 {
        if pp <= 2 * e && even {
            let s = one(1) / (f(ei) * f(2 * (di - ei) - ppi) * f(2 * ei - ppi) * f(di - ei));
            return Some((1, pp, lh(0, 0), s));
        }
        if pp <= 2 * e && !even {
            let s = one((1 - ppi) * (di - 2 * ei))
                / (f(ei) * f(2 * (di - ei) - ppi + 1) * f(2 * ei - ppi + 1) * f(di - ei));
            return Some((2, pp - 1, lh(0, 1), s));
        }
        if pp > 2 * e && pp <= (2 * (d - e)).min(3 * e) {
            let s = sign_power(ppi - 2 * ei)
                / (f(ppi - 2 * ei) * f(3 * ei - ppi) * f(2 * (di - ei) - ppi) * f(di - ei));
            return Some((3, 2 * e, lh(ppi - 2 * ei, ppi - 2 * ei), s));
        }
        if pp > 2 * (d - e) && pp <= 3 * e && even {
            let s = sign_power(ppi - 2 * ei)
                / (f(ppi - 2 * ei)
                    * f(3 * ei - ppi)
                    * f(ppi - 2 * (di - ei))
                    * f(3 * (di - ei) - ppi));
            return Some((4, 2 * d - pp, lh(ppi - 2 * ei, ppi - 2 * ei), s));
        }
        if pp > 2 * (d - e) && pp < 3 * e && !even {
            let s = sign_power(ppi - 2 * ei) * one((di - 2 * ei) * (ppi + 3))
                / (f(ppi - 2 * ei + 1)
                    * f(3 * ei - ppi)
                    * f(ppi - 2 * (di - ei) + 1)
                    * f(3 * (di - ei) - ppi));
            return Some((5, 2 * d - pp - 1, lh(ppi - 2 * ei, ppi - 2 * ei + 1), s));
        }
        if pp == 3 * e && !even {
            let s = one(-1) / (f(ei) * f(5 * ei - 2 * di + 1) * f(3 * di - 6 * ei - 1));
            return Some((6, 2 * d - pp - 1, lh(ei, ei), s));
        }
        return None;
    }
    if pp <= r * e && pp != 1 {
        let s = one(1) / (f(ei) * f(ri * (di - ei) - ppi) * f(ri * ei - ppi) * f(di - ei));
        return Some((7, pp, lh(0, 0), s));
    }
    if pp > r * e && pp <= (r * (d - e)).min((r + 1) * e) {
        let s = sign_power(ppi - ri * ei)
            / (f(ppi - ri * ei)
                * f((ri + 1) * ei - ppi)
                * f(ri * (di - ei) - ppi)
                * f(di - ei));
        return Some((8, r * e, lh(ppi - ri * ei, ppi - ri * ei), s));
    }
    if pp > r * (d - e) && pp <= (r + 1) * e {
        let s = sign_power(ppi - ri * ei)
            / (f(ppi - ri * ei)
                * f((ri + 1) * ei - ppi)
                * f(ppi - ri * (di - ei))
                * f((ri + 1) * (di - ei) - ppi));
        return Some((9, r * d - pp, lh(ppi - ri * ei, ppi - ri * ei), s));
    }
    None
}

/// Picks `p` for `(d, e, r, p')` following the nine cases and evaluates `S`.
pub fn choose_p(d: u32, e: u32, r: u32, p_prime: u32) -> Result<CaseResult> {
    if e == 0 || 2 * e >= d || r < 2 || p_prime == 1 || p_prime > (r + 1) * e {
        return Err(Error::InvalidParameter(format!(
            "(d, e, r, p') = ({d}, {e}, {r}, {p_prime}) is outside the admissible range"
        )));
    }
    let (case_id, p, claimed, s_closed) = dispatch(d, e, r, p_prime).ok_or(Error::CaseGap {
        d,
        e,
        r,
        p_prime,
    })?;
    let params = EParams { d, e, r, p, p_prime };
    let spec = params.spec().ok_or_else(|| {
        Error::Verification(format!("case {case_id} chose p = {p} > p' for {params}"))
    })?;
    Ok(CaseResult {
        d,
        e,
        r,
        p_prime,
        case_id,
        p,
        bounds: lh_bounds(&params),
        s_value: s_sum(&spec),
        s_closed,
        claimed,
        terms: s_sum_terms(&spec),
    })
}

#[derive(Clone, Debug, Default)]
pub struct CaseReport {
    pub rows: Vec<CaseResult>,
    pub failures: Vec<String>,
    /// Tuples for which the literal integrand was also checked to be nonzero.
    pub literal_checks: usize,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from(CASE_TSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.tsv_row());
            out.push('\n');
        }
        out
    }
}

/// Every `(d, e, r, p')` with `3 <= d <= d_max`, `1 <= e < d/2`,
/// `2 <= r <= r_max`, `p' in A_(r+1)`, in lexicographic order. The literal
/// integrand is additionally checked for `d <= literal_d_max`, `r <= 3`.
pub fn verify_cases(d_max: u32, r_max: u32, literal_d_max: u32) -> CaseReport {
    let mut tuples = Vec::new();
    for d in 3..=d_max {
        for e in 1..d {
            if 2 * e >= d {
                break;
            }
            for r in 2..=r_max {
                for pp in a_set(e, r + 1) {
                    tuples.push((d, e, r, pp));
                }
            }
        }
    }
    let results: Vec<(Option<CaseResult>, Vec<String>, bool)> = tuples
        .par_iter()
        .map(|&(d, e, r, pp)| {
            let mut failures = Vec::new();
            let row = match choose_p(d, e, r, pp) {
                Ok(row) => row,
                Err(err) => return (None, vec![err.to_string()], false),
            };
            if !row.consistent() {
                failures.push(format!(
                    "case {} at (d,e,r,p')=({d},{e},{r},{pp}): p={}, S={}, closed form {}, (L,H)=({},{}) vs claimed ({},{}), {} terms",
                    row.case_id,
                    row.p,
                    format_rational(&row.s_value),
                    format_rational(&row.s_closed),
                    row.bounds.low,
                    row.bounds.high,
                    row.claimed.low,
                    row.claimed.high,
                    row.terms
                ));
            }
            let literal = d <= literal_d_max && r <= 3;
            if literal {
                let params = EParams { d, e, r, p: row.p, p_prime: pp };
                match e_bruteforce(&params) {
                    Ok(poly) if poly.is_zero() => {
                        failures.push(format!("literal integrand vanishes for {params}"))
                    }
                    Ok(_) => {}
                    Err(err) => failures.push(err.to_string()),
                }
            }
            (Some(row), failures, literal)
        })
        .collect();
    let mut report = CaseReport::default();
    for (row, failures, literal) in results {
        report.rows.extend(row);
        report.failures.extend(failures);
        report.literal_checks += literal as usize;
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use num_traits::Signed;

    #[test]
    fn brute_matches_closed_small() {
        for params in EParams::all(5, 2, 2) {
            let b = e_bruteforce(&params).unwrap();
            let c = e_closedform(&params).unwrap();
            assert_eq!(b, c, "{params}");
        }
    }

    #[test]
    fn vanishes_below_diagonal() {
        let params = EParams::new(5, 2, 2, 4, 3).unwrap();
        assert!(e_bruteforce(&params).unwrap().is_zero());
        assert!(e_closedform(&params).unwrap().is_zero());
    }

    #[test]
    fn trivial_integrand() {
        let params = EParams::new(5, 2, 2, 0, 0).unwrap();
        let v = e_bruteforce(&params).unwrap();
        assert_eq!(v.len(), v.terms().filter(|(_, c)| c.is_positive()).count());
        let nonzero = EParams::new(5, 2, 2, 0, 2).unwrap();
        assert!(!e_bruteforce(&nonzero).unwrap().is_zero());
    }

    #[test]
    fn case_examples() {
        let c = choose_p(5, 2, 2, 0).unwrap();
        assert_eq!((c.case_id, c.p), (1, 0));
        let den = factorial(2) * factorial(6) * factorial(4) * factorial(3);
        assert_eq!(c.s_value, Rational::new(1.into(), den));
        let c = choose_p(5, 2, 2, 3).unwrap();
        assert_eq!((c.case_id, c.p), (2, 2));
        assert!(c.consistent());
        let c = choose_p(7, 3, 3, 5).unwrap();
        assert_eq!((c.case_id, c.p), (7, 5));
        assert!(c.consistent());
        assert_eq!(lh_bounds(&EParams::new(5, 2, 2, 0, 0).unwrap()), LhBounds { low: 0, high: 0 });
    }

    #[test]
    fn case_six_needs_odd_e() {
        let report = verify_cases(8, 2, 0);
        for row in report.rows.iter().filter(|r| r.case_id == 6) {
            assert_eq!(row.e % 2, 1);
            assert_eq!(row.p_prime, 3 * row.e);
        }
        assert!(report.rows.iter().any(|r| r.case_id == 6));
    }

    #[test]
    fn small_sweep_passes() {
        let report = verify_cases(6, 3, 4);
        assert!(report.passed(), "{:?}", report.failures);
        assert!(report.to_tsv().starts_with(CASE_TSV_HEADER));
        assert_ne!(report.rows[0].s_value, ratio(0, 1));
    }
}
