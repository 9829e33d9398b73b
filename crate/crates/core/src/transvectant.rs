//! Transvectants of binary forms and the closed-form coefficients of
//! transvectants of monomials in two linear forms.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::binary::{BinForm, Coeff};
use crate::error::{Error, Result};
use crate::poly::{bracket2, differentiate, linear_form, MultiPoly, VarSet};
use crate::rational::{binomial, factorial, factorial_q, Rational};

/// `(A, B)_k`, computed from the binomial expansion of `Omega^k`.
pub fn transvectant<C: Coeff>(a: &BinForm<C>, b: &BinForm<C>, k: u32) -> Result<BinForm<C>> {
    let (m, n) = (a.degree(), b.degree());
    if k > m.min(n) {
        return Err(Error::TransvectantOrder {
            k,
            deg_a: m,
            deg_b: n,
        });
    }
    let norm = Rational::new(
        factorial(m - k) * factorial(n - k),
        factorial(m) * factorial(n),
    );
    let mut acc = BinForm::zero(m + n - 2 * k);
    for i in 0..=k {
        let da = a.partial(k - i, i);
        let db = b.partial(i, k - i);
        let mut c = Rational::from_integer(binomial(k, i));
        if i % 2 == 1 {
            c = -c;
        }
        let term = (&da * &db).scale(&c);
        acc = &acc + &term;
    }
    Ok(acc.scale(&norm))
}

/// Exponent data `[alpha1, alpha2; beta1, beta2; k]` of the transvectant
/// `(L1^alpha1 L2^alpha2, L1^beta1 L2^beta2)_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialSpec {
    pub alpha1: u32,
    pub alpha2: u32,
    pub beta1: u32,
    pub beta2: u32,
    pub k: u32,
}

impl MonomialSpec {
    pub fn new(alpha1: u32, alpha2: u32, beta1: u32, beta2: u32, k: u32) -> Result<Self> {
        let s = MonomialSpec {
            alpha1,
            alpha2,
            beta1,
            beta2,
            k,
        };
        if k > s.deg_a().min(s.deg_b()) {
            return Err(Error::TransvectantOrder {
                k,
                deg_a: s.deg_a(),
                deg_b: s.deg_b(),
            });
        }
        Ok(s)
    }

    pub fn deg_a(&self) -> u32 {
        self.alpha1 + self.alpha2
    }

    pub fn deg_b(&self) -> u32 {
        self.beta1 + self.beta2
    }

    /// Inclusive range of the summation index of [`s_sum`]; empty when `lo > hi`.
    pub fn sum_range(&self) -> (i64, i64) {
        let (a1, a2, b1, b2, k) = self.as_i64();
        let lo = 0.max(k - a2).max(k - b1);
        let hi = k.min(a1).min(b2);
        (lo, hi)
    }

    fn as_i64(&self) -> (i64, i64, i64, i64, i64) {
        (
            self.alpha1 as i64,
            self.alpha2 as i64,
            self.beta1 as i64,
            self.beta2 as i64,
            self.k as i64,
        )
    }

    /// Every spec with entries up to `max` and a valid `k`.
    pub fn all_up_to(max: u32) -> Vec<MonomialSpec> {
        let mut out = Vec::new();
        for a1 in 0..=max {
            for a2 in 0..=max {
                for b1 in 0..=max {
                    for b2 in 0..=max {
                        for k in 0..=(a1 + a2).min(b1 + b2) {
                            out.push(MonomialSpec {
                                alpha1: a1,
                                alpha2: a2,
                                beta1: b1,
                                beta2: b2,
                                k,
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for MonomialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{};{},{};{}]",
            self.alpha1, self.alpha2, self.beta1, self.beta2, self.k
        )
    }
}

/// The alternating sum
/// `sum_i (-1)^i / (i! (k-i)! (a1-i)! (b2-i)! (a2-k+i)! (b1-k+i)!)`.
pub fn s_sum(spec: &MonomialSpec) -> Rational {
    let (a1, a2, b1, b2, k) = spec.as_i64();
    let (lo, hi) = spec.sum_range();
    let mut acc = Rational::zero();
    for i in lo..=hi {
        let den = factorial(i as u32)
            * factorial((k - i) as u32)
            * factorial((a1 - i) as u32)
            * factorial((b2 - i) as u32)
            * factorial((a2 - k + i) as u32)
            * factorial((b1 - k + i) as u32);
        let term = Rational::new(num_bigint::BigInt::one(), den);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Number of nonzero summands in [`s_sum`].
pub fn s_sum_terms(spec: &MonomialSpec) -> u32 {
    let (lo, hi) = spec.sum_range();
    if lo > hi {
        0
    } else {
        (hi - lo + 1) as u32
    }
}

/// The factor turning `S` into `N`: `(-1)^k (A-k)! (B-k)! k! a1! a2! b1! b2! / (A! B!)`.
pub fn n_over_s(spec: &MonomialSpec) -> Rational {
    let MonomialSpec {
        alpha1,
        alpha2,
        beta1,
        beta2,
        k,
    } = *spec;
    let num = factorial(spec.deg_a() - k)
        * factorial(spec.deg_b() - k)
        * factorial(k)
        * factorial(alpha1)
        * factorial(alpha2)
        * factorial(beta1)
        * factorial(beta2);
    let den = factorial(spec.deg_a()) * factorial(spec.deg_b());
    let r = Rational::new(num, den);
    if k % 2 == 0 {
        r
    } else {
        -r
    }
}

/// The coefficient `N` in
/// `(L1^a1 L2^a2, L1^b1 L2^b2)_k = N (a b)^k a_x^(a1+b1-k) b_x^(a2+b2-k)`.
pub fn n_coeff(spec: &MonomialSpec) -> Rational {
    s_sum(spec) * n_over_s(spec)
}

/// Standard symbolic sets used for monomial transvectants.
pub fn letters() -> (VarSet, VarSet, VarSet) {
    (VarSet::binary("a"), VarSet::binary("b"), VarSet::binary("x"))
}

/// `(a b)^k a_x^(a1+b1-k) b_x^(a2+b2-k)` in the letters `a`, `b`; zero when an
/// exponent would be negative.
pub fn bracket_monomial(spec: &MonomialSpec) -> MultiPoly {
    let (a, b, x) = letters();
    if spec.alpha1 + spec.beta1 < spec.k || spec.alpha2 + spec.beta2 < spec.k {
        // N vanishes here: the sum range is empty
        return MultiPoly::zero(vec![a, b, x]);
    }
    let ab = bracket2(&a, &b).expect("binary letters");
    let ax = linear_form(&a, &x).expect("binary letters");
    let bx = linear_form(&b, &x).expect("binary letters");
    let p = &(&ab.pow(spec.k) * &ax.pow(spec.alpha1 + spec.beta1 - spec.k))
        * &bx.pow(spec.alpha2 + spec.beta2 - spec.k);
    p.embed(vec![a, b, x]).expect("same letters")
}

/// `(c0 d/ds0 + c1 d/ds1)^n p` for binary sets `c` and `s`.
pub(crate) fn directional_power(p: &MultiPoly, c: &VarSet, s: &str, n: u32) -> Result<MultiPoly> {
    if n == 0 {
        return Ok(p.clone());
    }
    let c0 = MultiPoly::var(c, 0)?;
    let c1 = MultiPoly::var(c, 1)?;
    let mut acc = MultiPoly::zero_in(p.vars_arc().clone());
    for j in 0..=n {
        let dp = differentiate(&differentiate(p, s, 0, n - j)?, s, 1, j)?;
        if dp.is_zero() {
            continue;
        }
        let w = (&c0.pow(n - j) * &c1.pow(j)).scale(&Rational::from_integer(binomial(n, j)));
        acc = &acc + &(&w * &dp);
    }
    Ok(acc)
}

/// Evaluates
/// `{a.du}^a1 {b.du}^a2 {a.dv}^b1 {b.dv}^b2 (u v)^k u_x^(a1+a2-k) v_x^(b1+b2-k)`
/// by applying the operators literally.
pub fn u_bracket(spec: &MonomialSpec) -> MultiPoly {
    let (a, b, x) = letters();
    let (u, v) = (VarSet::binary("u"), VarSet::binary("v"));
    let k = spec.k;
    let vars = vec![a.clone(), b.clone(), u.clone(), v.clone(), x.clone()];
    let uv = bracket2(&u, &v).expect("binary sets");
    let ux = linear_form(&u, &x).expect("binary sets");
    let vx = linear_form(&v, &x).expect("binary sets");
    let mut p = (&(&uv.pow(k) * &ux.pow(spec.deg_a() - k)) * &vx.pow(spec.deg_b() - k))
        .embed(vars)
        .expect("declared sets");
    let steps = [
        (&b, "v", spec.beta2),
        (&a, "v", spec.beta1),
        (&b, "u", spec.alpha2),
        (&a, "u", spec.alpha1),
    ];
    for (c, s, n) in steps {
        p = directional_power(&p, c, s, n).expect("declared sets");
    }
    p.embed(vec![a, b, x])
        .expect("u and v are fully consumed by the operators")
}

/// `N (A)! (B)! (a b)^k a_x^.. b_x^..`, the closed form of [`u_bracket`].
pub fn u_bracket_closed(spec: &MonomialSpec) -> MultiPoly {
    let c = n_coeff(spec) * factorial_q(spec.deg_a()) * factorial_q(spec.deg_b());
    bracket_monomial(spec).scale(&c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::BinaryForm;
    use crate::rational::{int, ratio};

    #[test]
    fn transvectant_of_squares() {
        let a = BinaryForm::x_monomial(2, 0);
        let b = BinaryForm::x_monomial(2, 2);
        assert_eq!(transvectant(&a, &b, 1).unwrap(), BinaryForm::x_monomial(2, 1));
        assert!(transvectant(&a, &b, 3).is_err());
    }

    #[test]
    fn zeroth_transvectant_is_product() {
        let a = BinaryForm::from_ints(&[1, -3, 2, 7]);
        let b = BinaryForm::from_ints(&[0, 5, -1]);
        assert_eq!(transvectant(&a, &b, 0).unwrap(), &a * &b);
    }

    #[test]
    fn odd_self_transvectants_vanish() {
        let a = BinaryForm::from_ints(&[3, -1, 4, 1, -5, 9, 2]);
        for k in (1..=6).step_by(2) {
            assert!(transvectant(&a, &a, k).unwrap().is_zero());
        }
    }

    #[test]
    fn s_sum_values() {
        // single term i = 1
        assert_eq!(s_sum(&MonomialSpec::new(2, 0, 0, 2, 1).unwrap()), int(-1));
        // k = 0 gives 1 / (a1! a2! b1! b2!)
        let s = MonomialSpec::new(3, 1, 2, 2, 0).unwrap();
        assert_eq!(s_sum(&s), ratio(1, 6 * 2 * 2));
        // empty range
        let s = MonomialSpec::new(2, 0, 2, 0, 1).unwrap();
        assert_eq!(s.sum_range(), (1, 0));
        assert_eq!(s_sum(&s), int(0));
    }

    #[test]
    fn s_sum_case_one_value() {
        // (d, e, r, p', p) = (5, 2, 2, 0, 0) -> [6, 3; 4, 2; 0]
        let (d, e) = (5u32, 2u32);
        let s = MonomialSpec::new(2 * (d - e), d - e, 2 * e, e, 0).unwrap();
        let expected = Rational::new(
            1.into(),
            factorial(e) * factorial(2 * (d - e)) * factorial(2 * e) * factorial(d - e),
        );
        assert_eq!(s_sum(&s), expected);
    }

    #[test]
    fn n_coeff_values() {
        assert_eq!(n_coeff(&MonomialSpec::new(2, 0, 0, 2, 1).unwrap()), int(1));
        assert_eq!(n_coeff(&MonomialSpec::new(3, 1, 0, 4, 0).unwrap()), int(1));
        for spec in MonomialSpec::all_up_to(3) {
            assert_eq!(n_coeff(&spec).is_zero(), s_sum(&spec).is_zero());
        }
    }

    #[test]
    fn u_bracket_trivial_case() {
        // k = 0, alpha2 = beta1 = 0: alpha1! beta2! a_x^alpha1 b_x^beta2
        let (a, b, x) = letters();
        let spec = MonomialSpec::new(3, 0, 0, 2, 0).unwrap();
        let expected = (&linear_form(&a, &x).unwrap().pow(3) * &linear_form(&b, &x).unwrap().pow(2))
            .scale(&int(6 * 2));
        assert_eq!(u_bracket(&spec), expected);
    }

    #[test]
    fn u_bracket_matches_closed_form() {
        for spec in MonomialSpec::all_up_to(2) {
            assert_eq!(u_bracket(&spec), u_bracket_closed(&spec), "{spec}");
        }
    }
}
