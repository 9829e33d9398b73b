//! Covariants cutting out the loci of binary forms with few distinct roots.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::binary::{BinForm, BinaryForm, Coeff};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::transvectant::{n_coeff, transvectant, MonomialSpec};

/// `He(A) = A_00 A_11 - A_01^2`; degree `max(2d - 4, 0)`, zero for `d < 2`.
pub fn hessian<C: Coeff>(a: &BinForm<C>) -> BinForm<C> {
    let d = a.degree();
    if d < 2 {
        return BinForm::zero(0);
    }
    let a01 = a.partial(1, 1);
    &(&a.partial(2, 0) * &a.partial(0, 2)) - &(&a01 * &a01)
}

/// `gcd(F_x0, F_x1)`, the product of `l_i^(alpha_i - 1)` over the factorization
/// `F = prod l_i^alpha_i`.
pub fn repeated_part(f: &BinaryForm) -> Result<BinaryForm> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    if hessian(f).is_zero() {
        return Err(Error::PowerOfLinearForm);
    }
    Ok(f.partial(1, 0).gcd(&f.partial(0, 1)))
}

fn x_times<C: Coeff>(f: &BinForm<C>, which: u32) -> BinForm<C> {
    &BinForm::monomial(1, which, C::one_coeff()) * f
}

fn det4<C: Coeff>(m: &[Vec<BinForm<C>>]) -> BinForm<C> {
    let deg = 4 * m[0][0].degree();
    let mut acc = BinForm::zero(deg);
    let mut perm = [0usize, 1, 2, 3];
    permute(&mut perm, 0, &mut |p: &[usize; 4], sign: bool| {
        let mut term = m[0][p[0]].clone();
        for (row, &col) in p.iter().enumerate().skip(1) {
            term = &term * &m[row][col];
        }
        acc = if sign { &acc - &term } else { &acc + &term };
    }, false);
    acc
}

fn permute(p: &mut [usize; 4], start: usize, f: &mut impl FnMut(&[usize; 4], bool), odd: bool) {
    if start == p.len() {
        f(p, odd);
        return;
    }
    for i in start..p.len() {
        p.swap(start, i);
        permute(p, start + 1, f, odd ^ (i != start));
        p.swap(start, i);
    }
}

/// The Wronskian `D(F)`: the determinant of third-order partials of
/// `x0 F_x0, x0 F_x1, x1 F_x0, x1 F_x1`. Degree `4d - 12`.
pub fn wronskian_d<C: Coeff>(f: &BinForm<C>) -> Result<BinForm<C>> {
    let d = f.degree();
    if d < 3 {
        return Err(Error::DegreeTooSmall { found: d, min: 3 });
    }
    let (f0, f1) = (f.partial(1, 0), f.partial(0, 1));
    let gens = [x_times(&f0, 0), x_times(&f1, 0), x_times(&f0, 1), x_times(&f1, 1)];
    let rows: Vec<Vec<BinForm<C>>> = gens
        .iter()
        .map(|g| (0..4).map(|j| g.partial(3 - j, j)).collect())
        .collect();
    Ok(det4(&rows))
}

/// Coefficients of `(F^2,F^2)_6`, `(F^2,(F,F)_2)_4` and `(F^2,(F,F)_4)_2` in
/// the transvectant expression for `D(F)`.
pub fn compound_coefficients(d: u32) -> Result<[Rational; 3]> {
    let z = Rational::zero();
    match d {
        0..=2 => Err(Error::DegreeTooSmall { found: d, min: 3 }),
        3 => Ok([int(1), z.clone(), z]),
        4 => Ok([int(7), int(-5), z]),
        5 => Ok([int(129), int(-250), z]),
        _ => {
            let d = d as i64;
            Ok([
                int((2 * d - 1) * (2 * d - 3) * (2 * d - 5).pow(3)),
                int(-9 * (d - 3) * (2 * d - 5) * (2 * d - 7) * (2 * d - 3).pow(2)),
                int(4 * (d - 1) * (d - 3) * (d - 4) * (2 * d - 9) * (4 * d - 7)),
            ])
        }
    }
}

/// `D(F)` as a combination of iterated transvectants; proportional to
/// [`wronskian_d`] with a constant depending only on `d`.
pub fn compound_d<C: Coeff>(f: &BinForm<C>) -> Result<BinForm<C>> {
    let d = f.degree();
    let xi = compound_coefficients(d)?;
    let f2 = f * f;
    let mut acc = transvectant(&f2, &f2, 6)?.scale(&xi[0]);
    for (idx, order) in [(1usize, 2u32), (2, 4)] {
        if xi[idx].is_zero() {
            continue;
        }
        let inner = transvectant(f, f, order)?;
        let outer = transvectant(&f2, &inner, 6 - order)?;
        acc = &acc + &outer.scale(&xi[idx]);
    }
    Ok(acc)
}

/// The weights `z1, z2, z3` of `J(P, Q)` for degrees `p`, `q`.
///
/// `z2 = q^2 (q-1)(2p-2q+1)(q-p+1) / (2(2q-1))`; the factor `q-p+1` makes
/// `J = Q^4 He(P/Q)` hold exactly.
pub fn j_weights(p: u32, q: u32) -> [Rational; 3] {
    let (p, q) = (p as i64, q as i64);
    let z1 = if p == 0 {
        Rational::zero()
    } else {
        Rational::new(
            (p * p * (p - 1) * (2 * p - 2 * q - 1) * (p - q - 1)).into(),
            (2 * (2 * p - 1)).into(),
        )
    };
    let z2 = if q == 0 {
        Rational::zero()
    } else {
        Rational::new(
            (q * q * (q - 1) * (2 * p - 2 * q + 1) * (q - p + 1)).into(),
            (2 * (2 * q - 1)).into(),
        )
    };
    [z1, z2, int(p * q * (p - q - 1))]
}

/// `J(P,Q) = z1 Q^2 (P,P)_2 + z2 P^2 (Q,Q)_2 + z3 (P^2,Q^2)_2`, the numerator of
/// `Q^4 He(P/Q)`. Terms whose transvectant order exceeds the degree carry a
/// vanishing weight and are skipped.
pub fn j_quotient<C: Coeff>(p: &BinForm<C>, q: &BinForm<C>) -> BinForm<C> {
    let (dp, dq) = (p.degree(), q.degree());
    let z = j_weights(dp, dq);
    let out_deg = (2 * dp + 2 * dq).saturating_sub(4);
    let mut acc = BinForm::zero(out_deg);
    if dp + dq < 2 {
        return acc;
    }
    let (p2, q2) = (p * p, q * q);
    if dp >= 2 && !z[0].is_zero() {
        let t = transvectant(p, p, 2).expect("order checked");
        acc = &acc + &(&q2 * &t).scale(&z[0]);
    }
    if dq >= 2 && !z[1].is_zero() {
        let t = transvectant(q, q, 2).expect("order checked");
        acc = &acc + &(&p2 * &t).scale(&z[1]);
    }
    if dp >= 1 && dq >= 1 && !z[2].is_zero() {
        let t = transvectant(&p2, &q2, 2).expect("order checked");
        acc = &acc + &t.scale(&z[2]);
    }
    acc
}

fn check_e(d: u32, e: u32) -> Result<()> {
    if e == 0 || 2 * e > d {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= e <= d/2, got d = {d}, e = {e}"
        )));
    }
    Ok(())
}

/// `C_e(F) = J(F^(2d-2e-2), He(F)^(d-e))`.
pub fn c_e(f: &BinaryForm, e: u32) -> Result<BinaryForm> {
    let d = f.degree();
    check_e(d, e)?;
    let he = hessian(f);
    if he.is_zero() {
        return Err(Error::PowerOfLinearForm);
    }
    Ok(j_quotient(&f.pow(2 * d - 2 * e - 2), &he.pow(d - e)))
}

/// The rational covariant `F^(2d-2e-2) / He(F)^(d-e)` in lowest terms, as
/// (numerator, denominator) with a monic denominator.
pub fn a_e(f: &BinaryForm, e: u32) -> Result<(BinaryForm, BinaryForm)> {
    let d = f.degree();
    check_e(d, e)?;
    let he = hessian(f);
    if he.is_zero() {
        return Err(Error::PowerOfLinearForm);
    }
    let (p, q) = (f.pow(2 * d - 2 * e - 2), he.pow(d - e));
    let g = p.gcd(&q);
    let num = p.div_exact(&g)?;
    let den = q.div_exact(&g)?;
    let lead = den.coeffs().iter().find(|c| !c.is_zero()).expect("nonzero").clone();
    Ok((num.scale(&lead.recip()), den.scale(&lead.recip())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub e: u32,
    #[serde(rename = "in_X_e")]
    pub in_x_e: bool,
    pub c_e: Option<String>,
}

/// Classification of a form against `Y` and the loci `X^(d-e,e)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub form: String,
    pub degree: u32,
    pub is_power_of_linear: bool,
    pub in_y: bool,
    pub components: Vec<ComponentReport>,
    pub hessian: String,
    pub wronskian: Option<String>,
}

impl MembershipReport {
    pub fn in_x(&self, e: u32) -> Option<bool> {
        self.components.iter().find(|c| c.e == e).map(|c| c.in_x_e)
    }
}

/// Classifies `f` for each requested `e` (all `1 <= e <= d/2` when empty).
/// Powers of a linear form are flagged and counted in every `X^(d-e,e)`.
pub fn membership(f: &BinaryForm, es: &[u32]) -> Result<MembershipReport> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let d = f.degree();
    let es: Vec<u32> = if es.is_empty() { (1..=d / 2).collect() } else { es.to_vec() };
    for &e in &es {
        check_e(d, e)?;
    }
    let he = hessian(f);
    let power = he.is_zero();
    let wr = if d >= 3 { Some(wronskian_d(f)?) } else { None };
    let in_y = power || wr.as_ref().is_none_or(|w| w.is_zero());
    let mut components = Vec::new();
    for e in es {
        let (in_x_e, ce) = if power {
            (true, None)
        } else {
            let ce = c_e(f, e)?;
            (in_y && ce.is_zero(), Some(ce.to_string()))
        };
        components.push(ComponentReport { e, in_x_e, c_e: ce });
    }
    Ok(MembershipReport {
        form: f.to_string(),
        degree: d,
        is_power_of_linear: power,
        in_y,
        components,
        hessian: he.to_string(),
        wronskian: wr.map(|w| w.to_string()),
    })
}

/// The triple `I = (i, j, k)` naming `(((F,F)_2i, F)_j, F)_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TransvectantWord {
    pub i: u32,
    pub j: u32,
    pub k: u32,
}

impl TransvectantWord {
    pub fn new(i: u32, j: u32, k: u32) -> Self {
        TransvectantWord { i, j, k }
    }

    pub fn is_valid(&self, d: u32) -> bool {
        let TransvectantWord { i, j, k } = *self;
        2 * i <= d
            && j <= (2 * d - 4 * i).min(d)
            && 3 * d >= 4 * i + 2 * j
            && k <= (3 * d - 4 * i - 2 * j).min(d)
    }

    /// Total order `2i + j + k` removed from the quartic `F^4`.
    pub fn weight(&self) -> u32 {
        2 * self.i + self.j + self.k
    }

    /// Every valid word for degree `d`, sorted.
    pub fn all(d: u32) -> Vec<TransvectantWord> {
        let mut out = Vec::new();
        for i in 0..=d / 2 {
            for j in 0..=d {
                for k in 0..=d {
                    let w = TransvectantWord::new(i, j, k);
                    if w.is_valid(d) {
                        out.push(w);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for TransvectantWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

/// `E_I(F) = (((F,F)_2i, F)_j, F)_k`.
pub fn e_cov<C: Coeff>(f: &BinForm<C>, w: &TransvectantWord) -> Result<BinForm<C>> {
    if !w.is_valid(f.degree()) {
        return Err(Error::InvalidParameter(format!(
            "word {w} is not valid in degree {}",
            f.degree()
        )));
    }
    let t = transvectant(f, f, 2 * w.i)?;
    let t = transvectant(&t, f, w.j)?;
    transvectant(&t, f, w.k)
}

fn n_or_zero(a1: i64, a2: i64, b1: i64, b2: i64, k: u32) -> Rational {
    if [a1, a2, b1, b2].iter().any(|&x| x < 0) {
        return Rational::zero();
    }
    match MonomialSpec::new(a1 as u32, a2 as u32, b1 as u32, b2 as u32, k) {
        Ok(spec) => n_coeff(&spec),
        Err(_) => Rational::zero(),
    }
}

/// `omega_I`, with `E_I(x0^(d-e) x1^e) = omega_I x0^(4(d-e)-|I|) x1^(4e-|I|)`.
pub fn omega_i(d: u32, e: u32, w: &TransvectantWord) -> Result<Rational> {
    if !w.is_valid(d) || e > d {
        return Err(Error::InvalidParameter(format!("word {w} or e = {e} invalid for d = {d}")));
    }
    let (de, e) = ((d - e) as i64, e as i64);
    let (i2, j) = (2 * w.i as i64, w.j as i64);
    let n1 = n_or_zero(de, e, de, e, w.i * 2);
    let n2 = n_or_zero(2 * de - i2, 2 * e - i2, de, e, w.j);
    let n3 = n_or_zero(3 * de - (i2 + j), 3 * e - (i2 + j), de, e, w.k);
    Ok(n1 * n2 * n3)
}

/// `Psi_{I,I'}(F) = omega_I E_I'(F) - omega_I' E_I(F)`.
pub fn psi(
    f: &BinaryForm,
    w: &TransvectantWord,
    w2: &TransvectantWord,
    e: u32,
) -> Result<BinaryForm> {
    if w.weight() != w2.weight() {
        return Err(Error::InvalidParameter(format!(
            "words {w} and {w2} have different weights"
        )));
    }
    let d = f.degree();
    let a = e_cov(f, w2)?.scale(&omega_i(d, e, w)?);
    let b = e_cov(f, w)?.scale(&omega_i(d, e, w2)?);
    Ok(&a - &b)
}

/// Pairs of distinct valid words of equal weight, each pair listed once.
pub fn quartic_pairs(d: u32) -> Vec<(TransvectantWord, TransvectantWord)> {
    let words = TransvectantWord::all(d);
    let mut out = Vec::new();
    for (n, w) in words.iter().enumerate() {
        for w2 in &words[n + 1..] {
            if w.weight() == w2.weight() {
                out.push((*w, *w2));
            }
        }
    }
    out
}

/// `(F,F)_2i` for `e + 1 <= i <= d/2`.
pub fn quadratic_generators(f: &BinaryForm, e: u32) -> Result<Vec<(u32, BinaryForm)>> {
    let d = f.degree();
    check_e(d, e)?;
    ((e + 1)..=d / 2)
        .map(|i| Ok((i, transvectant(f, f, 2 * i)?)))
        .collect()
}

/// The discriminant `b^2c^2 - 4ac^3 - 4b^3d - 27a^2d^2 + 18abcd` of a cubic.
pub fn cubic_discriminant(f: &BinaryForm) -> Result<Rational> {
    if f.degree() != 3 {
        return Err(Error::InvalidParameter("cubic discriminant needs degree 3".into()));
    }
    let c = f.coeffs();
    let (a, b, cc, d) = (&c[0], &c[1], &c[2], &c[3]);
    Ok(b * b * cc * cc - int(4) * a * cc * cc * cc - int(4) * b * b * b * d
        - int(27) * a * a * d * d
        + int(18) * a * b * cc * d)
}

/// The scalar `c` with `compound_d(F) = c wronskian_d(F)`, solved on one form.
pub fn compound_ratio(f: &BinaryForm) -> Result<Option<Rational>> {
    let w = wronskian_d(f)?;
    let c = compound_d(f)?;
    Ok(c.proportionality(&w))
}

/// `true` when every coefficient is zero; shorthand for reports.
pub fn vanishes(f: &BinaryForm) -> bool {
    f.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::sample;

    fn mono(d: u32, f: u32) -> BinaryForm {
        BinaryForm::x_monomial(d, f)
    }

    #[test]
    fn hessian_examples() {
        assert!(hessian(&mono(5, 0)).is_zero());
        let q = BinaryForm::from_ints(&[2, 3, 5]);
        assert_eq!(hessian(&q), BinaryForm::from_ints(&[4 * 2 * 5 - 9]));
        for (a, b) in [(3, 2), (4, 1), (2, 2)] {
            let h = hessian(&mono(a + b, b));
            let c = -((a * b * (a + b - 1)) as i64);
            assert_eq!(h, BinaryForm::monomial(2 * (a + b) - 4, 2 * b - 2, int(c)));
        }
        assert_eq!(hessian(&mono(1, 0)), BinaryForm::zero(0));
    }

    #[test]
    fn repeated_part_examples() {
        assert_eq!(repeated_part(&mono(3, 1)).unwrap(), mono(1, 0));
        let l = BinaryForm::from_ints(&[1, 1]);
        let f = &mono(3, 0) * &l.pow(2);
        assert_eq!(repeated_part(&f).unwrap(), (&mono(2, 0) * &l).monic());
        let sq = &(&BinaryForm::from_ints(&[1, 1]) * &BinaryForm::from_ints(&[1, -2]))
            * &BinaryForm::from_ints(&[3, 1]);
        assert_eq!(repeated_part(&sq).unwrap(), BinaryForm::from_ints(&[1]));
        assert_eq!(repeated_part(&mono(4, 4)), Err(Error::PowerOfLinearForm));
    }

    #[test]
    fn wronskian_vanishes_on_two_root_forms() {
        for d in 3..=7 {
            for e in 0..=d {
                assert!(wronskian_d(&mono(d, e)).unwrap().is_zero(), "d={d} e={e}");
            }
        }
        let f = BinaryForm::from_ints(&[1, 0, 1, 0, 1]);
        assert!(!wronskian_d(&f).unwrap().is_zero());
        assert!(wronskian_d(&mono(2, 1)).is_err());
    }

    #[test]
    fn compound_low_degrees() {
        assert_eq!(compound_coefficients(4).unwrap()[..2], [int(7), int(-5)]);
        assert_eq!(compound_coefficients(5).unwrap()[..2], [int(129), int(-250)]);
        let xi = compound_coefficients(6).unwrap();
        assert_eq!(xi[0], int(11 * 9 * 343));
    }

    #[test]
    fn j_on_monomials() {
        for (p, q) in [(3u32, 1u32), (4, 2), (2, 3), (5, 2)] {
            let j = j_quotient(&mono(p, 0), &mono(q, q));
            let z3 = int((p * q) as i64 * (p as i64 - q as i64 - 1));
            let expect = BinaryForm::monomial(2 * p + 2 * q - 4, 2 * q - 2, z3);
            assert_eq!(j, expect, "p={p} q={q}");
        }
    }

    #[test]
    fn c_e_monomial_classification() {
        for d in 3..=6u32 {
            for e in 1..=d / 2 {
                for f in 1..d {
                    let ce = c_e(&mono(d, f), e).unwrap();
                    assert_eq!(ce.is_zero(), f == e || f == d - e, "d={d} e={e} f={f}");
                }
            }
        }
    }

    #[test]
    fn a_e_monomial() {
        for d in 3..=6u32 {
            for e in 1..=d / 2 {
                for f in 1..d {
                    let (num, den) = a_e(&mono(d, f), e).unwrap();
                    // x0^(2f-2e) x1^(2d-2e-2f) once signs of exponents are sorted out
                    let top0 = (2 * f as i64 - 2 * e as i64).max(0) as u32;
                    let top1 = (2 * d as i64 - 2 * e as i64 - 2 * f as i64).max(0) as u32;
                    let bot0 = (2 * e as i64 - 2 * f as i64).max(0) as u32;
                    let bot1 = (2 * e as i64 + 2 * f as i64 - 2 * d as i64).max(0) as u32;
                    assert!(num.proportional(&mono(top0 + top1, top1)), "d={d} e={e} f={f}");
                    assert_eq!(den, mono(bot0 + bot1, bot1), "d={d} e={e} f={f}");
                }
            }
        }
    }

    #[test]
    fn membership_examples() {
        let l1 = BinaryForm::from_ints(&[1, 1]);
        let l2 = BinaryForm::from_ints(&[1, -2]);
        let f = &l1.pow(3) * &l2.pow(2);
        assert_eq!(membership(&f, &[2]).unwrap().in_x(2), Some(true));
        let g = BinaryForm::from_ints(&[1, 0, 0, 0, 0, 1]);
        assert!(!membership(&g, &[2]).unwrap().in_y);
        let h = mono(5, 1);
        let r = membership(&h, &[2]).unwrap();
        assert!(r.in_y);
        assert_eq!(r.in_x(2), Some(false));
        let p = membership(&l1.pow(4), &[]).unwrap();
        assert!(p.is_power_of_linear && p.in_y && p.in_x(2) == Some(true));
        assert_eq!(membership(&BinaryForm::zero(3), &[1]), Err(Error::ZeroForm));
    }

    #[test]
    fn omega_matches_e_cov_on_monomial() {
        let (d, e) = (5, 2);
        for w in TransvectantWord::all(d) {
            if w.weight() > 8 {
                continue;
            }
            let v = e_cov(&mono(d, e), &w).unwrap();
            let n = w.weight();
            let expect = BinaryForm::monomial(4 * d - 2 * n, 4 * e - n, omega_i(d, e, &w).unwrap());
            assert_eq!(v, expect, "{w}");
        }
    }

    #[test]
    fn psi_vanishes_on_member() {
        let (d, e) = (5, 2);
        let mut rng = sample::sampler(11);
        let (l1, l2) = sample::independent_linear_pair(&mut rng, 4);
        let f = &l1.pow(d - e) * &l2.pow(e);
        for (w, w2) in quartic_pairs(d).into_iter().take(40) {
            assert!(psi(&mono(d, e), &w, &w2, e).unwrap().is_zero());
            assert!(psi(&f, &w, &w2, e).unwrap().is_zero(), "{w} {w2}");
        }
        let bad = psi(&f, &TransvectantWord::new(0, 0, 0), &TransvectantWord::new(0, 0, 1), e);
        assert!(bad.is_err());
    }

    #[test]
    fn quadratic_generators_vanish_on_member() {
        let mut rng = sample::sampler(12);
        for (d, e) in [(5, 1), (6, 1), (6, 2), (7, 2)] {
            let (l1, l2) = sample::independent_linear_pair(&mut rng, 4);
            let f = &l1.pow(d - e) * &l2.pow(e);
            for (_, g) in quadratic_generators(&f, e).unwrap() {
                assert!(g.is_zero());
            }
        }
    }

    #[test]
    fn cubic_d_is_discriminant() {
        let f = BinaryForm::from_ints(&[1, -2, 3, 5]);
        let w = wronskian_d(&f).unwrap();
        let disc = cubic_discriminant(&f).unwrap();
        assert!(!disc.is_zero());
        let g = BinaryForm::from_ints(&[2, 1, -1, 4]);
        let ratio_f = &w.coeffs()[0] / &disc;
        let ratio_g = &wronskian_d(&g).unwrap().coeffs()[0] / &cubic_discriminant(&g).unwrap();
        assert_eq!(ratio_f, ratio_g);
        assert_ne!(ratio_f, ratio(0, 1));
    }
}
